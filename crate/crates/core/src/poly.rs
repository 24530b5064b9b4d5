//! Univariate polynomials over F_q and squarefree structure.
//!
//! The character-sum bounds in `charsum` need two facts about a
//! polynomial `f`: the degree `m` of its radical (= the number of
//! distinct roots in the algebraic closure) and whether `f` is a
//! constant times a square, in which case `chi(f(x))` is constant off
//! the zero set and no square-root bound can hold.  Both come out of
//! the squarefree decomposition, which in characteristic p needs the
//! extra p-th-root branch: whenever the derivative vanishes, `f` is a
//! polynomial in `x^p` and `f = g(x)^p` with the coefficients of `g`
//! obtained as p-th roots (`c -> c^(q/p)`, Frobenius inverted).
//!
//! Polynomials are coefficient vectors, constant term first, always
//! trimmed; the zero polynomial is the empty vector.  As with the forms
//! in this crate, every operation takes the [`FieldSpec`] explicitly
//! and the caller keeps polynomials paired with their field.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Dense univariate polynomial, constant coefficient first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one(spec: &FieldSpec) -> Poly {
        Poly { coeffs: vec![spec.one()] }
    }

    pub fn constant(spec: &FieldSpec, c: FieldElement) -> Poly {
        Poly::from_coeffs(spec, vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(spec: &FieldSpec, c: FieldElement, k: usize) -> Poly {
        let mut coeffs = vec![spec.zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(spec, coeffs)
    }

    /// Build from coefficients (constant first), trimming zeros.
    pub fn from_coeffs(spec: &FieldSpec, mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last() == Some(&spec.zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Build from element indices (constant first); checked.
    pub fn from_indices(spec: &FieldSpec, indices: &[u64]) -> Result<Poly> {
        let coeffs = indices.iter().map(|&i| spec.element(i)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(spec, coeffs))
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    /// Horner evaluation.
    pub fn eval(&self, spec: &FieldSpec, x: FieldElement) -> FieldElement {
        let mut acc = spec.zero();
        for &c in self.coeffs.iter().rev() {
            acc = spec.add(spec.mul(acc, x), c);
        }
        acc
    }

    pub fn add(&self, spec: &FieldSpec, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![spec.zero(); n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] = c;
        }
        for (i, &c) in rhs.coeffs.iter().enumerate() {
            out[i] = spec.add(out[i], c);
        }
        Poly::from_coeffs(spec, out)
    }

    pub fn sub(&self, spec: &FieldSpec, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![spec.zero(); n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] = c;
        }
        for (i, &c) in rhs.coeffs.iter().enumerate() {
            out[i] = spec.sub(out[i], c);
        }
        Poly::from_coeffs(spec, out)
    }

    pub fn mul(&self, spec: &FieldSpec, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![spec.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == spec.zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = spec.add(out[i + j], spec.mul(a, b));
            }
        }
        Poly::from_coeffs(spec, out)
    }

    /// Quotient and remainder; panics on a zero divisor (programmer
    /// error -- callers in this crate always divide by known factors).
    pub fn divrem(&self, spec: &FieldSpec, rhs: &Poly) -> (Poly, Poly) {
        let db = rhs.deg().expect("division by the zero polynomial");
        if self.coeffs.len() < rhs.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = spec.inv(*rhs.coeffs.last().unwrap()).expect("nonzero leading coeff");
        let mut rem = self.coeffs.clone();
        let dq = rem.len() - rhs.coeffs.len();
        let mut quot = vec![spec.zero(); dq + 1];
        for k in (0..=dq).rev() {
            let c = spec.mul(rem[k + db], lead_inv);
            quot[k] = c;
            if c != spec.zero() {
                for (i, &b) in rhs.coeffs.iter().enumerate() {
                    rem[k + i] = spec.sub(rem[k + i], spec.mul(c, b));
                }
            }
        }
        rem.truncate(db);
        (Poly::from_coeffs(spec, quot), Poly::from_coeffs(spec, rem))
    }

    /// Scale to leading coefficient 1; zero stays zero.
    pub fn monic(&self, spec: &FieldSpec) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) if l == spec.one() => self.clone(),
            Some(l) => {
                let inv = spec.inv(l).expect("nonzero leading coeff");
                Poly {
                    coeffs: self.coeffs.iter().map(|&c| spec.mul(c, inv)).collect(),
                }
            }
        }
    }

    /// Formal derivative (coefficient arithmetic mod p, so e.g. the
    /// derivative of x^p is zero).
    pub fn derivative(&self, spec: &FieldSpec) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| spec.mul(spec.from_int(i as u64), c))
            .collect();
        Poly::from_coeffs(spec, out)
    }

    /// Plain-text rendering, highest degree first, e.g. `x^3 + 2x + 5`
    /// with coefficients shown as element indices.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.index() == 0 {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let part = match (i, c.index()) {
                (0, k) => format!("{k}"),
                (_, 1) => var,
                (_, k) => format!("{k}{var}"),
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(spec: &FieldSpec, a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let (_, r) = a.divrem(spec, &b);
        a = b;
        b = r;
    }
    a.monic(spec)
}

/// Inverse of Frobenius on a polynomial in x^p: if `f(x) = g(x)^p` then
/// this returns `g`, via `c -> c^(q/p)` on each surviving coefficient.
fn pth_root(spec: &FieldSpec, f: &Poly) -> Poly {
    let p = spec.p() as usize;
    let e = spec.q() / spec.p();
    let mut out = vec![spec.zero(); f.coeffs.len() / p + 1];
    for (i, &c) in f.coeffs.iter().enumerate() {
        if c == spec.zero() {
            continue;
        }
        debug_assert!(i % p == 0, "pth_root needs a polynomial in x^p");
        out[i / p] = spec.pow(c, e);
    }
    Poly::from_coeffs(spec, out)
}

/// Squarefree decomposition of a nonzero polynomial: pairwise-coprime
/// monic squarefree `f_i` with multiplicities `m_i` such that
/// `monic(f) = prod f_i^{m_i}`.  Constants decompose to the empty list.
/// Factors come back sorted by (multiplicity, degree, coefficients).
pub fn squarefree_decomposition(spec: &FieldSpec, f: &Poly) -> Result<Vec<(Poly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    decompose(spec, &f.monic(spec), 1, &mut out);
    out.sort_by(|(fa, ma), (fb, mb)| {
        let ka: Vec<u64> = fa.coeffs.iter().map(|c| c.index()).collect();
        let kb: Vec<u64> = fb.coeffs.iter().map(|c| c.index()).collect();
        (ma, fa.coeffs.len(), ka).cmp(&(mb, fb.coeffs.len(), kb))
    });
    Ok(out)
}

/// Yun-style loop with the characteristic-p branch; `scale` carries the
/// accumulated p-power from recursion into the recorded multiplicities.
fn decompose(spec: &FieldSpec, f: &Poly, scale: usize, out: &mut Vec<(Poly, usize)>) {
    if f.deg() == Some(0) {
        return;
    }
    let fp = f.derivative(spec);
    if fp.is_zero() {
        // f is a polynomial in x^p, i.e. a p-th power.
        decompose(spec, &pth_root(spec, f), scale * spec.p() as usize, out);
        return;
    }
    let mut c = gcd(spec, f, &fp);
    let mut w = f.divrem(spec, &c).0;
    let mut i = 1usize;
    while w.deg() != Some(0) {
        let y = gcd(spec, &w, &c);
        let z = w.divrem(spec, &y).0;
        if z.deg() != Some(0) {
            out.push((z, i * scale));
        }
        w = y;
        c = c.divrem(spec, &w).0;
        i += 1;
    }
    if c.deg() != Some(0) {
        // Whatever survives every gcd pass has multiplicity divisible
        // by p; recurse through its p-th root.
        decompose(spec, &pth_root(spec, &c), scale * spec.p() as usize, out);
    }
}

/// Radical data of a nonzero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalInfo {
    /// Monic product of the distinct irreducible factors.
    pub radical: Poly,
    /// deg(radical): the number of distinct roots in the closure.
    pub distinct_root_count: usize,
    /// True iff f is a constant times a perfect square, i.e. every
    /// multiplicity is even (nonzero constants count as squares).
    pub square_in_closure: bool,
}

/// Radical and squareness of `f`; errors only on the zero polynomial.
pub fn squarefree_radical(spec: &FieldSpec, f: &Poly) -> Result<RadicalInfo> {
    let parts = squarefree_decomposition(spec, f)?;
    let mut radical = Poly::one(spec);
    let mut square = true;
    for (factor, mult) in &parts {
        radical = radical.mul(spec, factor);
        if mult % 2 != 0 {
            square = false;
        }
    }
    let distinct_root_count = radical.deg().unwrap_or(0);
    Ok(RadicalInfo { radical, distinct_root_count, square_in_closure: square })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn poly(spec: &FieldSpec, idx: &[u64]) -> Poly {
        Poly::from_indices(spec, idx).unwrap()
    }

    /// Random polynomial with degree drawn uniformly from
    /// `min_deg..=max_deg` and a nonzero leading coefficient.
    fn random_poly(spec: &FieldSpec, rng: &mut SplitMix64, min_deg: u64, max_deg: u64) -> Poly {
        let deg = min_deg + rng.below(max_deg - min_deg + 1);
        let mut coeffs: Vec<FieldElement> = (0..deg)
            .map(|_| spec.element(rng.below(spec.q())).unwrap())
            .collect();
        coeffs.push(spec.element(rng.nonzero_below(spec.q())).unwrap());
        Poly::from_coeffs(spec, coeffs)
    }

    #[test]
    fn construction_and_degree() {
        let spec = FieldSpec::new(7, 1).unwrap();
        assert!(Poly::zero().is_zero());
        assert_eq!(Poly::zero().deg(), None);
        assert_eq!(poly(&spec, &[3, 0, 0]), poly(&spec, &[3]));
        assert_eq!(poly(&spec, &[0, 0, 5]).deg(), Some(2));
        assert_eq!(Poly::monomial(&spec, spec.element(2).unwrap(), 3), poly(&spec, &[0, 0, 0, 2]));
        assert_eq!(poly(&spec, &[1, 2, 3]).leading(), spec.element(3).ok());
    }

    #[test]
    fn eval_matches_power_expansion() {
        let mut rng = SplitMix64::new(41);
        for (p, n) in [(7u64, 1u32), (3, 2), (5, 2)] {
            let spec = FieldSpec::new(p, n).unwrap();
            for _ in 0..40 {
                let f = random_poly(&spec, &mut rng, 1, 5);
                let x = spec.element(rng.below(spec.q())).unwrap();
                let direct = f
                    .coeffs()
                    .iter()
                    .enumerate()
                    .fold(spec.zero(), |acc, (i, &c)| {
                        spec.add(acc, spec.mul(c, spec.pow(x, i as u64)))
                    });
                assert_eq!(f.eval(&spec, x), direct);
            }
        }
    }

    #[test]
    fn divrem_reconstructs() {
        let mut rng = SplitMix64::new(42);
        for (p, n) in [(5u64, 1u32), (3, 2), (7, 1)] {
            let spec = FieldSpec::new(p, n).unwrap();
            for _ in 0..200 {
                let a = random_poly(&spec, &mut rng, 0, 6);
                let b = random_poly(&spec, &mut rng, 0, 3);
                let (q, r) = a.divrem(&spec, &b);
                assert_eq!(q.mul(&spec, &b).add(&spec, &r), a);
                if let (Some(dr), Some(db)) = (r.deg(), b.deg()) {
                    assert!(dr < db);
                }
            }
        }
    }

    #[test]
    fn arithmetic_identities() {
        let mut rng = SplitMix64::new(43);
        let spec = FieldSpec::new(3, 2).unwrap();
        for _ in 0..100 {
            let f = random_poly(&spec, &mut rng, 0, 4);
            let g = random_poly(&spec, &mut rng, 0, 4);
            assert_eq!(f.sub(&spec, &f), Poly::zero());
            assert_eq!(f.add(&spec, &g), g.add(&spec, &f));
            assert_eq!(f.mul(&spec, &g), g.mul(&spec, &f));
            // Product rule.
            let lhs = f.mul(&spec, &g).derivative(&spec);
            let rhs = f
                .derivative(&spec)
                .mul(&spec, &g)
                .add(&spec, &f.mul(&spec, &g.derivative(&spec)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn derivative_of_x_to_the_p_vanishes() {
        for (p, n) in [(3u64, 1u32), (5, 1), (3, 2)] {
            let spec = FieldSpec::new(p, n).unwrap();
            let xp = Poly::monomial(&spec, spec.one(), p as usize);
            assert!(xp.derivative(&spec).is_zero());
        }
    }

    #[test]
    fn gcd_examples() {
        let spec = FieldSpec::new(7, 1).unwrap();
        // (x-1)(x-2) and (x-1)(x-3) share exactly (x-1).
        let a = poly(&spec, &[2, 4, 1]); // x^2 - 3x + 2
        let b = poly(&spec, &[3, 3, 1]); // x^2 - 4x + 3
        assert_eq!(gcd(&spec, &a, &b), poly(&spec, &[6, 1])); // x - 1
        assert_eq!(gcd(&spec, &a, &Poly::zero()), a.monic(&spec));
        assert_eq!(gcd(&spec, &Poly::zero(), &Poly::zero()), Poly::zero());
        // gcd is monic even when inputs are not.
        let a2 = a.mul(&spec, &Poly::constant(&spec, spec.element(3).unwrap()));
        assert_eq!(gcd(&spec, &a2, &b), poly(&spec, &[6, 1]));
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let mut rng = SplitMix64::new(44);
        for (p, n) in [(3u64, 1u32), (5, 1), (3, 2)] {
            let spec = FieldSpec::new(p, n).unwrap();
            for _ in 0..50 {
                let g = random_poly(&spec, &mut rng, 0, 3);
                // g^p by repeated multiplication.
                let mut gp = Poly::one(&spec);
                for _ in 0..p {
                    gp = gp.mul(&spec, &g);
                }
                assert_eq!(pth_root(&spec, &gp), g);
            }
        }
    }

    #[test]
    fn squarefree_decomposition_worked_examples() {
        // (x-1)^2 (x-2) over F_7.
        let spec7 = FieldSpec::new(7, 1).unwrap();
        let f = poly(&spec7, &[5, 5, 3, 1]);
        let parts = squarefree_decomposition(&spec7, &f).unwrap();
        assert_eq!(parts, vec![(poly(&spec7, &[5, 1]), 1), (poly(&spec7, &[6, 1]), 2)]);
        let rad = squarefree_radical(&spec7, &f).unwrap();
        assert_eq!(rad.radical, poly(&spec7, &[2, 4, 1]));
        assert_eq!(rad.distinct_root_count, 2);
        assert!(!rad.square_in_closure);

        // (x^2+1)^2 over F_3 (x^2+1 is irreducible there).
        let spec3 = FieldSpec::new(3, 1).unwrap();
        let f = poly(&spec3, &[1, 0, 2, 0, 1]);
        let parts = squarefree_decomposition(&spec3, &f).unwrap();
        assert_eq!(parts, vec![(poly(&spec3, &[1, 0, 1]), 2)]);
        let rad = squarefree_radical(&spec3, &f).unwrap();
        assert_eq!(rad.distinct_root_count, 2);
        assert!(rad.square_in_closure);

        // x^5 - 2 = (x - 2)^5 over F_5: pure p-th power branch.
        let spec5 = FieldSpec::new(5, 1).unwrap();
        let f = poly(&spec5, &[3, 0, 0, 0, 0, 1]);
        let parts = squarefree_decomposition(&spec5, &f).unwrap();
        assert_eq!(parts, vec![(poly(&spec5, &[3, 1]), 5)]);
        let rad = squarefree_radical(&spec5, &f).unwrap();
        assert_eq!(rad.distinct_root_count, 1);
        assert!(!rad.square_in_closure);

        // Constants: empty decomposition, radical 1, vacuously a square.
        let c = Poly::constant(&spec5, spec5.element(4).unwrap());
        assert!(squarefree_decomposition(&spec5, &c).unwrap().is_empty());
        let rad = squarefree_radical(&spec5, &c).unwrap();
        assert_eq!(rad.distinct_root_count, 0);
        assert!(rad.square_in_closure);

        assert_eq!(
            squarefree_decomposition(&spec5, &Poly::zero()).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn decomposition_reconstructs_and_factors_are_coprime() {
        let mut rng = SplitMix64::new(45);
        for (p, n) in [(3u64, 1u32), (5, 1), (7, 1), (3, 2)] {
            let spec = FieldSpec::new(p, n).unwrap();
            for trial in 0..60 {
                // Mix plain random polynomials with deliberately built
                // ones carrying square and p-th-power structure.
                let f = match trial % 3 {
                    0 => random_poly(&spec, &mut rng, 1, 6),
                    1 => {
                        let g = random_poly(&spec, &mut rng, 1, 3);
                        let h = random_poly(&spec, &mut rng, 1, 2);
                        g.mul(&spec, &g).mul(&spec, &h)
                    }
                    _ => {
                        let g = random_poly(&spec, &mut rng, 1, 2);
                        let mut gp = Poly::one(&spec);
                        for _ in 0..p {
                            gp = gp.mul(&spec, &g);
                        }
                        gp
                    }
                };
                let parts = squarefree_decomposition(&spec, &f).unwrap();
                let mut product = Poly::one(&spec);
                for (factor, mult) in &parts {
                    assert_eq!(factor.leading(), Some(spec.one()));
                    // Squarefree: coprime to its own derivative.
                    let d = factor.derivative(&spec);
                    assert!(!d.is_zero(), "factor {factor:?} over q = {}", spec.q());
                    assert_eq!(gcd(&spec, factor, &d).deg(), Some(0));
                    for _ in 0..*mult {
                        product = product.mul(&spec, factor);
                    }
                }
                assert_eq!(product, f.monic(&spec), "q = {}, f = {f:?}", spec.q());
                for i in 0..parts.len() {
                    for j in (i + 1)..parts.len() {
                        assert_eq!(
                            gcd(&spec, &parts[i].0, &parts[j].0).deg(),
                            Some(0),
                            "factors share a root"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn radical_has_the_same_zero_set() {
        let mut rng = SplitMix64::new(46);
        for (p, n) in [(7u64, 1u32), (3, 2), (13, 1)] {
            let spec = FieldSpec::new(p, n).unwrap();
            for _ in 0..40 {
                let g = random_poly(&spec, &mut rng, 1, 3);
                let h = random_poly(&spec, &mut rng, 1, 2);
                let f = g.mul(&spec, &g).mul(&spec, &h);
                let info = squarefree_radical(&spec, &f).unwrap();
                let mut roots = 0usize;
                for x in spec.elements() {
                    let fz = f.eval(&spec, x) == spec.zero();
                    let rz = info.radical.eval(&spec, x) == spec.zero();
                    assert_eq!(fz, rz, "zero sets differ at {x}");
                    if rz {
                        roots += 1;
                    }
                }
                assert!(roots <= info.distinct_root_count);
            }
        }
    }

    #[test]
    fn squareness_with_nonsquare_constant_factor() {
        // 3 * g(x)^2 over F_7: 3 is a nonsquare, but the polynomial is
        // still a square in the closure.
        let spec = FieldSpec::new(7, 1).unwrap();
        let g = poly(&spec, &[1, 2, 1]);
        let f = g.mul(&spec, &g).mul(&spec, &Poly::constant(&spec, spec.element(3).unwrap()));
        let info = squarefree_radical(&spec, &f).unwrap();
        assert!(info.square_in_closure);
        // Multiplying in one more distinct linear factor breaks it.
        let f2 = f.mul(&spec, &poly(&spec, &[4, 1]));
        assert!(!squarefree_radical(&spec, &f2).unwrap().square_in_closure);
    }

    #[test]
    fn render_examples() {
        let spec = FieldSpec::new(7, 1).unwrap();
        assert_eq!(Poly::zero().render(), "0");
        assert_eq!(poly(&spec, &[5]).render(), "5");
        assert_eq!(poly(&spec, &[0, 1]).render(), "x");
        assert_eq!(poly(&spec, &[3, 0, 1, 2]).render(), "2x^3 + x^2 + 3");
    }
}
