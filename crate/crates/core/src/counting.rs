//! Solution counts for the system {L = a, Q = b} and capture tests.
//!
//! Fix a nonzero linear form `L` and nonzero quadratic form `Q` over
//! `F_q` and reduce: `Q = t*L^2 + s*L*Y' + r*Y'^2`, `D = s^2 - 4*r*t`.
//! Eliminating the pivot variable turns `{L = a, Q = b}` into a single
//! quadratic in `Y'`, namely `r*y^2 + s*a*y + t*a^2 = b`, so the number
//! of solutions `(x, y)` is the number of roots of that quadratic.  When
//! `r != 0` completing the square gives the closed form
//!
//! ```text
//! count(a, b) = 1 + chi(D*a^2 + 4*r*b)
//! ```
//!
//! which is 0, 1, or 2.  When `r = 0` the system degenerates (see
//! [`CaseTag`]) and counting falls back to direct enumeration.
//!
//! A subset `A` of `F_q` is *captured* if some pair `(a, b)` in `A x A`
//! has `count(a, b) >= 1`; a set no pair of which is captured is
//! *capture-free*.  The capture number `N_q(L, Q)` is the least `k` such
//! that every `A` with `|A| >= k` is captured, i.e. one more than the
//! largest capture-free set.
//!
//! [`blocking_set`] returns the certified capture-free set of size
//! `(q-1)/2` that exists in the two degenerate cases:
//!
//! * `L^2 | Q` (so `Q = t*L^2`): a pair is captured iff `t*a^2 = b`,
//!   which never happens inside `t*NS` for `NS` the nonsquares, since
//!   `t*a^2 in t*NS` would make `a^2` a nonsquare.
//! * `r != 0, D = 0`: `count = 1 + chi(r)*chi(b)`, identically zero on
//!   the half of `F_q^*` where `chi(b) = -chi(r)`.

use crate::error::{Error, Result};
use crate::field::{CharTable, FieldElement, FieldSpec};
use crate::forms::{reduce, LinearForm, QuadraticForm, ReducedForm};
use serde::Serialize;

/// Default refusal threshold for O(q^2) enumeration.
pub const DEFAULT_BRUTE_MAX_Q: u64 = 10_000;

/// Which of the four structural cases an instance falls into, determined
/// by (r, D) of the reduction.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseTag {
    /// r != 0 and D != 0.
    Generic,
    /// r != 0 and D = 0.
    DegenerateDisc,
    /// r = 0, s != 0: L | Q but L^2 does not divide Q.
    LDivides,
    /// r = s = 0: Q = t*L^2.
    LSquared,
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CaseTag::Generic => "GENERIC",
            CaseTag::DegenerateDisc => "DEGENERATE_DISC",
            CaseTag::LDivides => "L_DIVIDES",
            CaseTag::LSquared => "L_SQUARED",
        })
    }
}

/// A fixed (field, L, Q) triple with its reduction and case tag cached.
#[derive(Clone, Debug)]
pub struct CaptureInstance {
    spec: FieldSpec,
    linear: LinearForm,
    quadratic: QuadraticForm,
    reduced: ReducedForm,
    case: CaseTag,
}

impl CaptureInstance {
    pub fn new(spec: FieldSpec, linear: LinearForm, quadratic: QuadraticForm) -> Self {
        let reduced = reduce(&spec, &linear, &quadratic);
        let case = classify(&spec, &reduced);
        CaptureInstance { spec, linear, quadratic, reduced, case }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn linear(&self) -> &LinearForm {
        &self.linear
    }

    pub fn quadratic(&self) -> &QuadraticForm {
        &self.quadratic
    }

    pub fn reduced(&self) -> &ReducedForm {
        &self.reduced
    }

    pub fn case(&self) -> CaseTag {
        self.case
    }

    pub fn q(&self) -> u64 {
        self.spec.q()
    }
}

/// Case tag from a reduction.
pub fn classify(spec: &FieldSpec, red: &ReducedForm) -> CaseTag {
    let zero = spec.zero();
    if red.r != zero {
        if red.d != zero {
            CaseTag::Generic
        } else {
            CaseTag::DegenerateDisc
        }
    } else if red.s != zero {
        CaseTag::LDivides
    } else {
        CaseTag::LSquared
    }
}

/// The character argument of the closed form: `D*a^2 + 4*r*b`.
pub(crate) fn closed_argument(
    inst: &CaptureInstance,
    a: FieldElement,
    b: FieldElement,
) -> FieldElement {
    let spec = &inst.spec;
    let red = &inst.reduced;
    let da2 = spec.mul(red.d, spec.mul(a, a));
    let rb4 = spec.mul(spec.from_int(4), spec.mul(red.r, b));
    spec.add(da2, rb4)
}

/// Closed-form solution count `1 + chi(D*a^2 + 4*r*b)`; requires `r != 0`.
pub fn count_closed(inst: &CaptureInstance, a: FieldElement, b: FieldElement) -> Result<u32> {
    if inst.reduced.r == inst.spec.zero() {
        return Err(Error::LDividesQ);
    }
    Ok((1 + inst.spec.chi(closed_argument(inst, a, b)) as i32) as u32)
}

/// Brute-force solution count by scanning all (x, y); the oracle the
/// closed form is checked against.  Refuses q above `max_q`.
pub fn count_brute_with(
    inst: &CaptureInstance,
    a: FieldElement,
    b: FieldElement,
    max_q: u64,
) -> Result<u64> {
    let spec = &inst.spec;
    if spec.q() > max_q {
        return Err(Error::BruteGuard { q: spec.q(), limit: max_q });
    }
    let mut count = 0u64;
    for x in spec.elements() {
        for y in spec.elements() {
            if inst.linear.eval(spec, x, y) == a && inst.quadratic.eval(spec, x, y) == b {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// [`count_brute_with`] at the default guard.
pub fn count_brute(inst: &CaptureInstance, a: FieldElement, b: FieldElement) -> Result<u64> {
    count_brute_with(inst, a, b, DEFAULT_BRUTE_MAX_Q)
}

/// All q^2 closed-form counts in one pass, row-major in (a, b): entry
/// `a.index() * q + b.index()`.  Shares the argument expression with
/// [`count_closed`] but evaluates chi through a precomputed table.
pub fn count_closed_table(inst: &CaptureInstance) -> Result<Vec<u32>> {
    if inst.reduced.r == inst.spec.zero() {
        return Err(Error::LDividesQ);
    }
    let spec = &inst.spec;
    let q = spec.q() as usize;
    let table = CharTable::build(spec);
    let mut out = vec![0u32; q * q];
    for a in spec.elements() {
        for b in spec.elements() {
            let idx = (a.index() as usize) * q + b.index() as usize;
            out[idx] = (1 + table.chi(closed_argument(inst, a, b)) as i32) as u32;
        }
    }
    Ok(out)
}

/// All q^2 brute-force counts in one pass over (x, y), same layout as
/// [`count_closed_table`].  Works in every case, including r = 0.
pub fn count_brute_table(inst: &CaptureInstance, max_q: u64) -> Result<Vec<u64>> {
    let spec = &inst.spec;
    if spec.q() > max_q {
        return Err(Error::BruteGuard { q: spec.q(), limit: max_q });
    }
    let q = spec.q() as usize;
    let mut out = vec![0u64; q * q];
    for x in spec.elements() {
        for y in spec.elements() {
            let a = inst.linear.eval(spec, x, y);
            let b = inst.quadratic.eval(spec, x, y);
            out[(a.index() as usize) * q + b.index() as usize] += 1;
        }
    }
    Ok(out)
}

/// A pair (a, b) in A x A witnessing capture, or the point (x, y) that
/// produced it when capture was established by enumeration.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaptureWitness {
    /// chi(D*a^2 + 4*r*b) != -1 for this pair, so {L = a, Q = b} has a
    /// solution.
    ValuePair { a: FieldElement, b: FieldElement },
    /// A concrete point with both L(x, y) and Q(x, y) in the set.
    Point { x: FieldElement, y: FieldElement },
}

/// Does some pair from `set x set` admit a solution?  Uses the closed
/// form when `r != 0`; otherwise enumerates (x, y) directly (guarded).
/// Duplicate elements in `set` are harmless.
pub fn capture_witness(
    inst: &CaptureInstance,
    set: &[FieldElement],
) -> Result<Option<CaptureWitness>> {
    let spec = &inst.spec;
    if inst.reduced.r != spec.zero() {
        for &a in set {
            for &b in set {
                if spec.chi(closed_argument(inst, a, b)) != -1 {
                    return Ok(Some(CaptureWitness::ValuePair { a, b }));
                }
            }
        }
        return Ok(None);
    }
    if spec.q() > DEFAULT_BRUTE_MAX_Q {
        return Err(Error::BruteGuard { q: spec.q(), limit: DEFAULT_BRUTE_MAX_Q });
    }
    let mut member = vec![false; spec.q() as usize];
    for &a in set {
        member[a.index() as usize] = true;
    }
    for x in spec.elements() {
        for y in spec.elements() {
            let a = inst.linear.eval(spec, x, y);
            let b = inst.quadratic.eval(spec, x, y);
            if member[a.index() as usize] && member[b.index() as usize] {
                return Ok(Some(CaptureWitness::Point { x, y }));
            }
        }
    }
    Ok(None)
}

/// True iff `set` is captured; see [`capture_witness`].
pub fn capture_exists(inst: &CaptureInstance, set: &[FieldElement]) -> Result<bool> {
    Ok(capture_witness(inst, set)?.is_some())
}

/// The certified capture-free set of size (q-1)/2 in the two degenerate
/// cases (see the module docs); errors in the GENERIC and L_DIVIDES
/// cases, where no such half-density construction exists.
pub fn blocking_set(inst: &CaptureInstance) -> Result<Vec<FieldElement>> {
    let spec = &inst.spec;
    let red = &inst.reduced;
    match inst.case {
        CaseTag::LSquared => {
            // Here Q = t*L^2 with t != 0 (t = 0 would make Q the zero
            // form, which is rejected at construction).
            let mut set: Vec<FieldElement> = spec
                .elements()
                .filter(|&x| spec.chi(x) == -1)
                .map(|x| spec.mul(red.t, x))
                .collect();
            set.sort_unstable();
            Ok(set)
        }
        CaseTag::DegenerateDisc => {
            // Need chi(r)*chi(b) = -1 throughout the set.
            let want: i8 = if spec.chi(red.r) == -1 { 1 } else { -1 };
            Ok(spec.elements().filter(|&x| spec.chi(x) == want).collect())
        }
        other => Err(Error::NoBlockingSet(other)),
    }
}
