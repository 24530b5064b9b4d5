//! Capture-free residue classes modulo an odd composite N.
//!
//! Over Z_N the capture problem still makes sense: a set A of residues
//! is captured when some (x, y) has both L(x, y) and Q(x, y) in A.  The
//! field construction transfers prime by prime.  Fix an odd prime
//! p | N and reduce the instance mod p; if the reduction there has
//! r != 0 and some residue t satisfies `chi_p(D*t^2 + 4*r*t) = -1`,
//! then the class A = { a : a = t (mod p) } is capture-free in Z_N:
//! any solution of {L = a, Q = b} mod N would reduce to a solution mod
//! p, and for a = b = t (mod p) the mod-p solution count is
//! `1 + chi_p(D*t^2 + 4*r*t) = 0`.  That yields a capture-free set of
//! size N/p from the cheapest eligible prime, and intersecting classes
//! from several primes (CRT) trades size for slack.
//!
//! Primes where the instance degenerates (Q vanishes mod p, or L
//! divides Q mod p so r = 0) are skipped: the character criterion is
//! undefined there.  An invertible pivot coefficient of L modulo N is
//! required up front, swapping the roles of x and y if only the other
//! coefficient is coprime to N.
//!
//! Everything here is plain u64 residue arithmetic with reduction after
//! every step (wide intermediates go through u128), plus the prime
//! fields `F_p` borrowed from `field` for the per-prime reductions.

use crate::arith::{factorize, gcd};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::forms::{reduce, LinearForm, QuadraticForm};
use serde::Serialize;

/// Default refusal threshold for O(N^2) verification.
pub const DEFAULT_RING_MAX_N: u64 = 2000;

/// The ring Z_N for odd N >= 3, with its prime factorization cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl RingSpec {
    pub fn new(n: u64) -> Result<RingSpec> {
        if n < 3 || n % 2 == 0 {
            return Err(Error::BadRingModulus(n));
        }
        Ok(RingSpec { n, factors: factorize(n) })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Prime factorization, smallest prime first.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// The distinct primes dividing N, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    fn addmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.n as u128) as u64
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.n as u128) as u64
    }
}

/// a*X + b*Y with coefficients reduced mod N, not both zero.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingLinear {
    pub x: u64,
    pub y: u64,
}

impl RingLinear {
    pub fn new(ring: &RingSpec, x: u64, y: u64) -> Result<RingLinear> {
        for c in [x, y] {
            if c >= ring.n {
                return Err(Error::RingCoefficientRange(c, ring.n));
            }
        }
        if x == 0 && y == 0 {
            return Err(Error::ZeroRingForm);
        }
        Ok(RingLinear { x, y })
    }

    pub fn eval(&self, ring: &RingSpec, x: u64, y: u64) -> u64 {
        ring.addmod(ring.mulmod(self.x, x % ring.n), ring.mulmod(self.y, y % ring.n))
    }
}

/// a*X^2 + b*XY + c*Y^2 with coefficients reduced mod N, not all zero.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingQuadratic {
    pub xx: u64,
    pub xy: u64,
    pub yy: u64,
}

impl RingQuadratic {
    pub fn new(ring: &RingSpec, xx: u64, xy: u64, yy: u64) -> Result<RingQuadratic> {
        for c in [xx, xy, yy] {
            if c >= ring.n {
                return Err(Error::RingCoefficientRange(c, ring.n));
            }
        }
        if xx == 0 && xy == 0 && yy == 0 {
            return Err(Error::ZeroRingForm);
        }
        Ok(RingQuadratic { xx, xy, yy })
    }

    pub fn eval(&self, ring: &RingSpec, x: u64, y: u64) -> u64 {
        let (x, y) = (x % ring.n, y % ring.n);
        let xx = ring.mulmod(self.xx, ring.mulmod(x, x));
        let xy = ring.mulmod(self.xy, ring.mulmod(x, y));
        let yy = ring.mulmod(self.yy, ring.mulmod(y, y));
        ring.addmod(ring.addmod(xx, xy), yy)
    }
}

/// A prime p | N and residue t whose class {a = t mod p} is
/// capture-free, with the mod-p reduction data that certified it.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockingResidue {
    pub prime: u64,
    pub residue: u64,
    /// r of the reduction mod `prime`.
    pub r: u64,
    /// D of the reduction mod `prime`.
    pub d: u64,
    /// True when x and y were exchanged to obtain an invertible pivot.
    pub swapped: bool,
}

/// The ring-level pivot decision: keep (x, y) if L's x-coefficient is
/// invertible mod N, swap if only the y-coefficient is.
fn pivot_swap(ring: &RingSpec, l: &RingLinear) -> Result<bool> {
    if gcd(l.x, ring.n) == 1 {
        Ok(false)
    } else if gcd(l.y, ring.n) == 1 {
        Ok(true)
    } else {
        Err(Error::NoCoprimePivot(ring.n))
    }
}

/// One blocking residue per eligible prime of N, ascending; primes
/// where Q vanishes or L divides Q mod p are skipped, as are primes
/// where no residue passes the character test (possible only for the
/// smallest primes, where chi takes few values).
pub fn blocking_residues(
    ring: &RingSpec,
    l: &RingLinear,
    q: &RingQuadratic,
) -> Result<Vec<BlockingResidue>> {
    let swapped = pivot_swap(ring, l)?;
    let (lx, ly) = if swapped { (l.y, l.x) } else { (l.x, l.y) };
    let (qxx, qxy, qyy) = if swapped { (q.yy, q.xy, q.xx) } else { (q.xx, q.xy, q.yy) };
    let mut out = Vec::new();
    for p in ring.primes() {
        let spec = FieldSpec::new(p, 1)?;
        if qxx % p == 0 && qxy % p == 0 && qyy % p == 0 {
            continue; // Q vanishes mod p
        }
        // The pivot is coprime to N, hence nonzero mod every p | N.
        let lf = LinearForm::new(&spec, spec.element(lx % p)?, spec.element(ly % p)?)?;
        let qf = QuadraticForm::new(
            &spec,
            spec.element(qxx % p)?,
            spec.element(qxy % p)?,
            spec.element(qyy % p)?,
        )?;
        let red = reduce(&spec, &lf, &qf);
        if red.r == spec.zero() {
            continue; // L divides Q mod p
        }
        let four_r = spec.mul(spec.from_int(4), red.r);
        for t in 0..p {
            let te = spec.element(t)?;
            let arg = spec.add(
                spec.mul(red.d, spec.mul(te, te)),
                spec.mul(four_r, te),
            );
            if spec.chi(arg) == -1 {
                out.push(BlockingResidue {
                    prime: p,
                    residue: t,
                    r: red.r.index(),
                    d: red.d.index(),
                    swapped,
                });
                break;
            }
        }
    }
    Ok(out)
}

/// The first blocking residue in prime order, or None when every prime
/// is degenerate or yields no residue.
pub fn find_blocking_residue(
    ring: &RingSpec,
    l: &RingLinear,
    q: &RingQuadratic,
) -> Result<Option<BlockingResidue>> {
    Ok(blocking_residues(ring, l, q)?.into_iter().next())
}

/// The residue class {a in Z_N : a = t (mod p)}, ascending; N/p
/// elements.
pub fn build_blocking_set(ring: &RingSpec, prime: u64, residue: u64) -> Result<Vec<u64>> {
    if prime == 0 || ring.n % prime != 0 {
        return Err(Error::NotARingPrime(prime, ring.n));
    }
    if residue >= prime {
        return Err(Error::RingCoefficientRange(residue, prime));
    }
    Ok((0..ring.n).filter(|a| a % prime == residue).collect())
}

/// Intersection of residue classes from several primes: all a with
/// a = t_i (mod p_i) for every i.  With distinct primes this has
/// N / prod(p_i) elements (CRT); repeating a prime with two different
/// residues legitimately yields the empty set.
pub fn build_blocking_set_multi(
    ring: &RingSpec,
    residues: &[(u64, u64)],
) -> Result<Vec<u64>> {
    for &(p, t) in residues {
        if p == 0 || ring.n % p != 0 {
            return Err(Error::NotARingPrime(p, ring.n));
        }
        if t >= p {
            return Err(Error::RingCoefficientRange(t, p));
        }
    }
    Ok((0..ring.n)
        .filter(|a| residues.iter().all(|&(p, t)| a % p == t))
        .collect())
}

/// Exhaustively confirm that no (x, y) in Z_N^2 lands both L(x, y) and
/// Q(x, y) inside `set`; O(N^2), guarded.
pub fn verify_no_solutions_with(
    ring: &RingSpec,
    l: &RingLinear,
    q: &RingQuadratic,
    set: &[u64],
    max_n: u64,
) -> Result<bool> {
    if ring.n > max_n {
        return Err(Error::RingGuard { n: ring.n, limit: max_n });
    }
    let mut member = vec![false; ring.n as usize];
    for &a in set {
        member[(a % ring.n) as usize] = true;
    }
    for x in 0..ring.n {
        for y in 0..ring.n {
            if member[l.eval(ring, x, y) as usize] && member[q.eval(ring, x, y) as usize] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// [`verify_no_solutions_with`] at the default guard.
pub fn verify_no_solutions(
    ring: &RingSpec,
    l: &RingLinear,
    q: &RingQuadratic,
    set: &[u64],
) -> Result<bool> {
    verify_no_solutions_with(ring, l, q, set, DEFAULT_RING_MAX_N)
}
