//! Arithmetic in GF(p^n) for odd p, with the quadratic character.
//!
//! A [`FieldSpec`] fixes the field: the characteristic p (an odd prime),
//! the extension degree n, and a monic irreducible modulus over Z/p.  When
//! no modulus is given, the canonical one is used: among monic degree-n
//! candidates X^n + c_{n-1} X^{n-1} + ... + c_0, the first irreducible one
//! in order of the integer c_0 + c_1 p + ... + c_{n-1} p^{n-1}.  This makes
//! GF(9) = Z/3[X]/(X^2 + 1) and GF(25) = Z/5[X]/(X^2 + 2).
//!
//! A [`FieldElement`] is an index in [0, q).  Its base-p digits, least
//! significant first, are the coefficients of the residue polynomial:
//! index c_0 + c_1 p + ... + c_{n-1} p^{n-1} represents
//! c_0 + c_1 a + ... + c_{n-1} a^{n-1} where a is the modulus root.  For
//! n = 1 the index is simply the residue mod p.  Elements carry no field
//! reference; every operation takes the `FieldSpec` as context, and mixing
//! elements from different specs is a caller error that is not detected.
//!
//! The supported range is q < 2^31, so all index arithmetic fits in u64
//! without overflow.  Fields of even order are rejected at construction.

use crate::arith;
use crate::error::{Error, Result};
use crate::zp_poly;
use serde::{Deserialize, Serialize};

/// Field orders must stay below this limit (2^31).
pub const MAX_Q: u64 = 1 << 31;

/// An element of GF(p^n), stored as its index in [0, q).
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub(crate) u64);

impl FieldElement {
    /// The index in [0, q); base-p digits are the residue coefficients.
    pub fn index(self) -> u64 {
        self.0
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A fixed field GF(p^n), q = p^n odd, q < 2^31.  Immutable once built;
/// all element operations are pure functions taking this as context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldSpec {
    p: u64,
    n: u32,
    q: u64,
    /// Monic irreducible modulus over Z/p, constant term first, length n+1.
    modulus: Vec<u64>,
}

impl FieldSpec {
    /// Build GF(p^n) with the canonical modulus.
    pub fn new(p: u64, n: u32) -> Result<Self> {
        let q = Self::validate_order(p, n)?;
        let modulus = zp_poly::find_irreducible(p, n);
        Ok(FieldSpec { p, n, q, modulus })
    }

    /// Build GF(p^n) with an explicit modulus (constant term first).  The
    /// modulus must be monic of degree n, reduced mod p, and irreducible;
    /// for n = 1 it must be the trivial polynomial X.
    pub fn with_modulus(p: u64, n: u32, modulus: Vec<u64>) -> Result<Self> {
        let q = Self::validate_order(p, n)?;
        if modulus.len() != n as usize + 1 {
            return Err(Error::BadModulus(format!(
                "expected degree {n}, got {} coefficients",
                modulus.len()
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadModulus(format!("coefficients must be reduced mod {p}")));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::BadModulus("modulus must be monic".into()));
        }
        if n == 1 {
            if modulus != [0, 1] {
                return Err(Error::BadModulus("for n = 1 the modulus must be X".into()));
            }
        } else if !zp_poly::is_irreducible(p, &modulus) {
            return Err(Error::BadModulus("modulus is reducible".into()));
        }
        Ok(FieldSpec { p, n, q, modulus })
    }

    fn validate_order(p: u64, n: u32) -> Result<u64> {
        if p == 2 || !arith::is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u128).pow(n);
        if q >= MAX_Q as u128 {
            return Err(Error::FieldTooLarge(q));
        }
        Ok(q as u64)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The modulus polynomial, constant term first (length n+1, monic).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Checked element construction from an index.
    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index < self.q {
            Ok(FieldElement(index))
        } else {
            Err(Error::IndexOutOfRange { index, q: self.q })
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The constant c mod p embedded as a field element.
    pub fn from_int(&self, c: u64) -> FieldElement {
        FieldElement(c % self.p)
    }

    /// All q elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    fn decode(&self, x: FieldElement) -> Vec<u64> {
        let mut digits = vec![0u64; self.n as usize];
        let mut rest = x.0;
        for d in &mut digits {
            *d = rest % self.p;
            rest /= self.p;
        }
        digits
    }

    fn encode(&self, digits: &[u64]) -> FieldElement {
        debug_assert!(digits.len() <= self.n as usize);
        let mut idx = 0u64;
        for &d in digits.iter().rev() {
            idx = idx * self.p + d;
        }
        FieldElement(idx)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement((x.0 + y.0) % self.p);
        }
        let (a, b) = (self.decode(x), self.decode(y));
        let sum: Vec<u64> = a.iter().zip(&b).map(|(&u, &v)| (u + v) % self.p).collect();
        self.encode(&sum)
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement((self.p - x.0) % self.p);
        }
        let a = self.decode(x);
        let neg: Vec<u64> = a.iter().map(|&u| (self.p - u) % self.p).collect();
        self.encode(&neg)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement(x.0 * y.0 % self.p);
        }
        let (a, b) = (self.decode(x), self.decode(y));
        let prod = zp_poly::rem(self.p, &zp_poly::mul(self.p, &a, &b), &self.modulus);
        self.encode(&prod)
    }

    /// x^e by square-and-multiply; x^0 = 1 for every x including zero.
    pub fn pow(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; inversion of zero is an error, never silent.
    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.0 == 0 {
            return Err(Error::ZeroInversion { q: self.q });
        }
        Ok(self.pow(x, self.q - 2))
    }

    /// The quadratic character: 0 at zero, +1 on nonzero squares, -1 on
    /// nonsquares, via Euler's criterion x^((q-1)/2).
    ///
    /// Panics if the power lands outside {1, -1}, which is impossible over
    /// a correctly constructed field and would indicate a modulus bug.
    pub fn chi(&self, x: FieldElement) -> i8 {
        if x.0 == 0 {
            return 0;
        }
        let y = self.pow(x, (self.q - 1) / 2);
        if y == self.one() {
            1
        } else if y.0 == self.p - 1 {
            // -1 is the constant polynomial p-1, hence index p-1.
            -1
        } else {
            panic!(
                "Euler criterion produced index {} in GF({}); the field construction is inconsistent",
                y.0, self.q
            );
        }
    }
}

/// Precomputed quadratic-character values for every element of a field.
/// Useful wherever chi is evaluated in bulk (graph construction, sums).
#[derive(Clone, Debug)]
pub struct CharTable {
    values: Vec<i8>,
}

impl CharTable {
    pub fn build(spec: &FieldSpec) -> Self {
        let values = spec.elements().map(|x| spec.chi(x)).collect();
        CharTable { values }
    }

    pub fn chi(&self, x: FieldElement) -> i8 {
        self.values[x.0 as usize]
    }

    /// (number of +1 entries, number of -1 entries); both equal (q-1)/2.
    pub fn counts(&self) -> (u64, u64) {
        let plus = self.values.iter().filter(|&&v| v == 1).count() as u64;
        let minus = self.values.iter().filter(|&&v| v == -1).count() as u64;
        (plus, minus)
    }
}

/// The canonical modulus for GF(p^n) without building the whole spec.
pub fn find_irreducible(p: u64, n: u32) -> Result<Vec<u64>> {
    FieldSpec::validate_order(p, n)?;
    Ok(zp_poly::find_irreducible(p, n))
}

/// All odd prime powers q = p^n <= max as (p, n, q), ascending in q.
pub fn odd_prime_powers(max: u64) -> Vec<(u64, u32, u64)> {
    let mut out = Vec::new();
    let mut p = 3u64;
    while p <= max {
        if arith::is_prime(p) {
            let mut q = p;
            let mut n = 1u32;
            while q <= max {
                out.push((p, n, q));
                match q.checked_mul(p) {
                    Some(next) if next <= max => {
                        q = next;
                        n += 1;
                    }
                    _ => break,
                }
            }
        }
        p += 2;
    }
    out.sort_by_key(|&(_, _, q)| q);
    out
}
