//! Binary linear and quadratic forms and their reduction.
//!
//! For a nonzero linear form `L = lx*X + ly*Y` and a nonzero quadratic
//! form `Q = qxx*X^2 + qxy*X*Y + qyy*Y^2`, substituting `L` for one
//! variable rewrites `Q` uniquely as
//!
//! ```text
//! Q = t*L^2 + s*L*Y' + r*Y'^2
//! ```
//!
//! where `Y'` is whichever variable is *not* eliminated.  When `lx != 0`
//! the pivot is `X` and `Y' = Y`; otherwise the roles of the variables are
//! swapped (recorded in [`ReducedForm::swapped`]).  The coefficients come
//! out of back-substitution in closed form:
//!
//! ```text
//! t = qxx / lx^2
//! s = (qxy - 2*t*lx*ly) / lx
//! r = qyy - s*ly - t*ly^2
//! ```
//!
//! (with `qxx`/`qyy` exchanged in the swapped frame).  The companion
//! discriminant is `D = s^2 - 4*r*t`; it satisfies `D * lx^2 = disc(Q)`
//! in the pivot frame, where `disc(Q) = qxy^2 - 4*qxx*qyy`.
//!
//! The tags in [`Divisibility`] read off divisibility of `Q` by `L`:
//! `r = 0` iff `L | Q`, and `r = s = 0` iff `L^2 | Q`.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use serde::Serialize;

/// Nonzero linear form `x*X + y*Y`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearForm {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl LinearForm {
    pub fn new(spec: &FieldSpec, x: FieldElement, y: FieldElement) -> Result<Self> {
        if x == spec.zero() && y == spec.zero() {
            return Err(Error::ZeroLinearForm);
        }
        Ok(LinearForm { x, y })
    }

    pub fn eval(&self, spec: &FieldSpec, at_x: FieldElement, at_y: FieldElement) -> FieldElement {
        spec.add(spec.mul(self.x, at_x), spec.mul(self.y, at_y))
    }
}

/// Nonzero quadratic form `xx*X^2 + xy*X*Y + yy*Y^2`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticForm {
    pub xx: FieldElement,
    pub xy: FieldElement,
    pub yy: FieldElement,
}

impl QuadraticForm {
    pub fn new(
        spec: &FieldSpec,
        xx: FieldElement,
        xy: FieldElement,
        yy: FieldElement,
    ) -> Result<Self> {
        if xx == spec.zero() && xy == spec.zero() && yy == spec.zero() {
            return Err(Error::ZeroQuadraticForm);
        }
        Ok(QuadraticForm { xx, xy, yy })
    }

    pub fn eval(&self, spec: &FieldSpec, at_x: FieldElement, at_y: FieldElement) -> FieldElement {
        let xx = spec.mul(self.xx, spec.mul(at_x, at_x));
        let xy = spec.mul(self.xy, spec.mul(at_x, at_y));
        let yy = spec.mul(self.yy, spec.mul(at_y, at_y));
        spec.add(spec.add(xx, xy), yy)
    }
}

/// How far `L` divides `Q`, read off the reduction.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Divisibility {
    /// r != 0: L does not divide Q.
    #[serde(rename = "NOT_DIVIDING")]
    NotDividing,
    /// r = 0, s != 0: L | Q but L^2 does not divide Q.
    #[serde(rename = "L_DIVIDES")]
    LDivides,
    /// r = s = 0: Q = t*L^2.
    #[serde(rename = "L_SQUARED_DIVIDES")]
    LSquaredDivides,
}

impl std::fmt::Display for Divisibility {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Divisibility::NotDividing => "NOT_DIVIDING",
            Divisibility::LDivides => "L_DIVIDES",
            Divisibility::LSquaredDivides => "L_SQUARED_DIVIDES",
        })
    }
}

/// The coefficients of `Q = t*L^2 + s*L*Y' + r*Y'^2` plus the companion
/// discriminant `D = s^2 - 4*r*t`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedForm {
    pub r: FieldElement,
    pub s: FieldElement,
    pub t: FieldElement,
    #[serde(rename = "D")]
    pub d: FieldElement,
    /// True when the variables were exchanged because `L.x = 0`.
    pub swapped: bool,
    /// The pivot coefficient actually used (`L.x`, or `L.y` if swapped).
    pub pivot: FieldElement,
}

impl ReducedForm {
    pub fn divisibility(&self, spec: &FieldSpec) -> Divisibility {
        if self.r != spec.zero() {
            Divisibility::NotDividing
        } else if self.s != spec.zero() {
            Divisibility::LDivides
        } else {
            Divisibility::LSquaredDivides
        }
    }
}

/// Rewrite `Q` in terms of `L`; see the module docs for the formulas.
///
/// The result is verified by re-expanding `t*L^2 + s*L*Y' + r*Y'^2` and
/// comparing coefficients; a mismatch is an internal bug and panics.
pub fn reduce(spec: &FieldSpec, l: &LinearForm, q: &QuadraticForm) -> ReducedForm {
    let zero = spec.zero();
    let swapped = l.x == zero;
    // In the swapped frame the roles of X and Y are exchanged, which also
    // exchanges the outer coefficients of Q.
    let (a1, a2, b1, b2, b3) = if swapped {
        (l.y, l.x, q.yy, q.xy, q.xx)
    } else {
        (l.x, l.y, q.xx, q.xy, q.yy)
    };
    let a1_inv = spec.inv(a1).expect("pivot coefficient is nonzero by the form invariant");
    let a1_inv_sq = spec.mul(a1_inv, a1_inv);
    let two = spec.from_int(2);
    let four = spec.from_int(4);

    let t = spec.mul(b1, a1_inv_sq);
    let s = spec.mul(spec.sub(b2, spec.mul(spec.mul(two, t), spec.mul(a1, a2))), a1_inv);
    let r = spec.sub(spec.sub(b3, spec.mul(s, a2)), spec.mul(t, spec.mul(a2, a2)));
    let d = spec.sub(spec.mul(s, s), spec.mul(four, spec.mul(r, t)));

    // Identity check: expand t*L^2 + s*L*Y' + r*Y'^2 in the pivot frame.
    let c1 = spec.mul(t, spec.mul(a1, a1));
    let c2 = spec.add(spec.mul(spec.mul(two, t), spec.mul(a1, a2)), spec.mul(s, a1));
    let c3 = spec.add(spec.add(spec.mul(t, spec.mul(a2, a2)), spec.mul(s, a2)), r);
    assert!(
        c1 == b1 && c2 == b2 && c3 == b3,
        "reduction identity failed for L = ({}, {}), Q = ({}, {}, {}) over q = {}",
        l.x,
        l.y,
        q.xx,
        q.xy,
        q.yy,
        spec.q()
    );

    ReducedForm { r, s, t, d, swapped, pivot: a1 }
}

/// The discriminant `disc(Q) = qxy^2 - 4*qxx*qyy` (invariant under the
/// variable swap).
pub fn disc(spec: &FieldSpec, q: &QuadraticForm) -> FieldElement {
    spec.sub(spec.mul(q.xy, q.xy), spec.mul(spec.from_int(4), spec.mul(q.xx, q.yy)))
}

/// Divisibility of `Q` by `L`, via the reduction.
pub fn divisibility(spec: &FieldSpec, l: &LinearForm, q: &QuadraticForm) -> Divisibility {
    reduce(spec, l, q).divisibility(spec)
}
