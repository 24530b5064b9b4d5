//! Character-sum bounds and randomized verification experiments.
//!
//! Everything here revolves around sums of the quadratic character over
//! structured families:
//!
//! * Bilinear sums `sum_{a in A, b in B} chi(u*a^2 + v*b)`, bounded in
//!   absolute value by `2*sqrt(q*|A|*|B|)` for nonzero u, v.
//! * Complete sums `sum_x chi(f(x))` for a polynomial `f` that is not a
//!   constant times a square, bounded by `m*sqrt(q)` where `m` is the
//!   degree of the radical of `f` (its number of distinct roots in the
//!   closure).
//! * The sextic family: for a GENERIC instance and `b1 != +-b2`, the
//!   number of common neighbours of `b1`, `b2` in the capture graph
//!   expands into the complete sum of chi over
//!   `(D x^2 + 4 r b1)(D x^2 + 4 r b2)(D b1^2 + 4 r x)(D b2^2 + 4 r x)`,
//!   a degree-6 polynomial, so the generic bound specializes to
//!   `6*sqrt(q)`.  Pairs whose sextic degenerates to a constant times a
//!   square are *exceptional* and are skipped (and counted).
//! * Pair density: among `(a, b) in A x B` the fraction of solution-free
//!   ordered pairs sits near 1/4, with the deviation controlled by
//!   `|A| * sqrt(|B|) * q^(1/4)`.
//! * Good vertices: inside any `B` large enough (`|B| >= c*sqrt(q)`),
//!   some `a in B` is solution-free against at least `|B|/8` of `B`
//!   (the pair `(a, a)` itself included in the count).
//!
//! Every verdict that feeds a pass/fail decision is computed in exact
//! integer arithmetic -- `sum^2` against `bound^2` in wide integers --
//! so float rounding can never flip an outcome; the float `bound` and
//! `ratio` fields are for reporting only.  The `run_*` drivers repeat a
//! check over seeded random draws and return a serializable
//! [`ExperimentReport`]; identical seeds give identical reports.

use crate::counting::{closed_argument, CaptureInstance, CaseTag};
use crate::error::{Error, Result};
use crate::field::{CharTable, FieldElement, FieldSpec};
use crate::poly::{squarefree_radical, Poly};
use crate::rng::SplitMix64;
use serde::Serialize;

/// Deviation-ratio ceiling for the pair-density statistic.
pub const PAIR_DENSITY_RATIO_BOUND: f64 = 4.0;

/// Default size multiplier for the good-vertex threshold `c*sqrt(q)`.
pub const GOOD_VERTEX_DEFAULT_C: f64 = 8.0;

/// Degree of the common-neighbour polynomial family.
pub const SEXTIC_DEGREE: usize = 6;

/// How to evaluate the quadratic character inside a check.
#[derive(Copy, Clone)]
pub enum ChiEval<'a> {
    /// Precomputed table; O(1) per evaluation.
    Table(&'a CharTable),
    /// Recompute through [`FieldSpec::chi`] each time.
    Direct,
}

impl ChiEval<'_> {
    pub fn chi(&self, spec: &FieldSpec, x: FieldElement) -> i8 {
        match self {
            ChiEval::Table(t) => t.chi(x),
            ChiEval::Direct => spec.chi(x),
        }
    }
}

/// A bilinear character sum against its square-root bound.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct SumBound {
    pub sum: i64,
    /// `2*sqrt(q*|A|*|B|)`, for reporting.
    pub bound: f64,
    /// `|sum| / bound` (0 when the bound is 0).
    pub ratio: f64,
    /// Exact check `sum^2 <= 4*q*|A|*|B|`.
    pub holds: bool,
}

/// `sum_{a in A, b in B} chi(u*a^2 + v*b)` with its bound.  Duplicates
/// in the sets are summed as given; u and v must be nonzero.
pub fn vinogradov_check(
    spec: &FieldSpec,
    chi: &ChiEval,
    u: FieldElement,
    v: FieldElement,
    a_set: &[FieldElement],
    b_set: &[FieldElement],
) -> Result<SumBound> {
    if u == spec.zero() || v == spec.zero() {
        return Err(Error::ZeroParameter);
    }
    let ua2: Vec<FieldElement> = a_set.iter().map(|&a| spec.mul(u, spec.mul(a, a))).collect();
    let vb: Vec<FieldElement> = b_set.iter().map(|&b| spec.mul(v, b)).collect();
    let mut sum = 0i64;
    for &x in &ua2 {
        for &y in &vb {
            sum += chi.chi(spec, spec.add(x, y)) as i64;
        }
    }
    let q = spec.q();
    let cap = 4u128 * q as u128 * a_set.len() as u128 * b_set.len() as u128;
    let bound = (cap as f64).sqrt();
    Ok(SumBound {
        sum,
        bound,
        ratio: if cap == 0 { 0.0 } else { sum.unsigned_abs() as f64 / bound },
        holds: (sum as i128) * (sum as i128) <= cap as i128,
    })
}

/// A complete polynomial character sum against `m*sqrt(q)`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct WeilBound {
    pub sum: i64,
    /// Degree of the radical of `f`.
    pub m: usize,
    /// `m*sqrt(q)`, for reporting.
    pub bound: f64,
    /// `|sum| / bound` (0 when the bound is 0).
    pub ratio: f64,
    /// Exact check `sum^2 <= m^2*q`.
    pub holds: bool,
}

/// `sum_{x in F_q} chi(f(x))` with its root-count bound.  Rejects the
/// zero polynomial and any constant-times-a-square, where the sum has
/// size about q and no such bound exists.
pub fn weil_check(spec: &FieldSpec, chi: &ChiEval, f: &Poly) -> Result<WeilBound> {
    let info = squarefree_radical(spec, f)?;
    if info.square_in_closure {
        return Err(Error::SquareInClosure);
    }
    let mut sum = 0i64;
    for x in spec.elements() {
        sum += chi.chi(spec, f.eval(spec, x)) as i64;
    }
    let m = info.distinct_root_count;
    let cap = (m as u128) * (m as u128) * spec.q() as u128;
    let bound = (cap as f64).sqrt();
    Ok(WeilBound {
        sum,
        m,
        bound,
        ratio: if cap == 0 { 0.0 } else { sum.unsigned_abs() as f64 / bound },
        holds: (sum as i128) * (sum as i128) <= cap as i128,
    })
}

/// The degree-6 common-neighbour polynomial of `(b1, b2)`:
/// `(D x^2 + 4 r b1)(D x^2 + 4 r b2)(D b1^2 + 4 r x)(D b2^2 + 4 r x)`.
pub fn sextic_poly(
    inst: &CaptureInstance,
    b1: FieldElement,
    b2: FieldElement,
) -> Result<Poly> {
    if inst.case() != CaseTag::Generic {
        return Err(Error::NotGeneric(inst.case()));
    }
    let spec = inst.spec();
    let red = inst.reduced();
    let four_r = spec.mul(spec.from_int(4), red.r);
    let quad = |b: FieldElement| {
        Poly::from_coeffs(spec, vec![spec.mul(four_r, b), spec.zero(), red.d])
    };
    let lin = |b: FieldElement| {
        Poly::from_coeffs(spec, vec![spec.mul(red.d, spec.mul(b, b)), four_r])
    };
    Ok(quad(b1).mul(spec, &quad(b2)).mul(spec, &lin(b1)).mul(spec, &lin(b2)))
}

/// All ordered pairs `(b1, b2)` with `b1 != +-b2` whose sextic collapses
/// to a constant times a square (so the 6*sqrt(q) bound is vacuous for
/// them).  O(q^2) polynomial work, hence guarded.
pub fn sextic_exceptional_pairs(
    inst: &CaptureInstance,
    max_q: u64,
) -> Result<Vec<(FieldElement, FieldElement)>> {
    let spec = inst.spec();
    if spec.q() > max_q {
        return Err(Error::BruteGuard { q: spec.q(), limit: max_q });
    }
    let mut out = Vec::new();
    for b1 in spec.elements() {
        for b2 in spec.elements() {
            if b2 == b1 || b2 == spec.neg(b1) {
                continue;
            }
            let f = sextic_poly(inst, b1, b2)?;
            if squarefree_radical(spec, &f)?.square_in_closure {
                out.push((b1, b2));
            }
        }
    }
    Ok(out)
}

/// The solution-free pair count over `A x B` against its main term.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct PairDensity {
    /// Ordered pairs `(a, b)` in `A x B` that are solution-free both
    /// ways.
    pub count: u64,
    /// `|A|*|B|/4`.
    pub main: f64,
    /// `|count - main| / (|A| * sqrt(|B|) * q^(1/4))`.
    pub deviation_ratio: f64,
}

/// Count solution-free ordered pairs over `A x B` and compare to the
/// quarter-density main term.  GENERIC instances only; both sets must
/// exceed `sqrt(q)` in size for the normalization to mean anything.
pub fn pair_density_check(
    inst: &CaptureInstance,
    chi: &ChiEval,
    a_set: &[FieldElement],
    b_set: &[FieldElement],
) -> Result<PairDensity> {
    if inst.case() != CaseTag::Generic {
        return Err(Error::NotGeneric(inst.case()));
    }
    let spec = inst.spec();
    let q = spec.q();
    let (na, nb) = (a_set.len() as u64, b_set.len() as u64);
    if na * na <= q || nb * nb <= q {
        return Err(Error::SetsTooSmall { a: a_set.len(), b: b_set.len(), q });
    }
    let mut count = 0u64;
    for &a in a_set {
        for &b in b_set {
            let free = chi.chi(spec, closed_argument(inst, a, b)) == -1
                && chi.chi(spec, closed_argument(inst, b, a)) == -1;
            if free {
                count += 1;
            }
        }
    }
    let main = (na * nb) as f64 / 4.0;
    let denom = na as f64 * (nb as f64).sqrt() * (q as f64).powf(0.25);
    Ok(PairDensity {
        count,
        main,
        deviation_ratio: (count as f64 - main).abs() / denom,
    })
}

/// Outcome of the good-vertex scan over a set B.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct GoodVertex {
    /// Element of B solution-free against the most of B (smallest such
    /// on ties); None iff B is empty.
    pub witness: Option<FieldElement>,
    /// Its solution-free count against B, the pair (a, a) included.
    pub count: u64,
    /// `ceil(|B| / 8)`, the count needed for the eighth-density claim.
    pub required: u64,
    /// `c * sqrt(q)`.
    pub threshold: f64,
    /// `|B| >= threshold`.
    pub threshold_met: bool,
    /// Exact check `8 * count >= |B|`.
    pub holds: bool,
}

/// Scan `a in B` for the one solution-free against the largest part of
/// B.  The eighth-density claim `8*count >= |B|` is asserted to hold
/// whenever `|B| >= c*sqrt(q)`; both the verdict and the threshold flag
/// are reported so callers can see near-threshold behaviour too.
pub fn good_vertex_exists(
    inst: &CaptureInstance,
    chi: &ChiEval,
    b_set: &[FieldElement],
    c: f64,
) -> Result<GoodVertex> {
    if inst.case() != CaseTag::Generic {
        return Err(Error::NotGeneric(inst.case()));
    }
    let spec = inst.spec();
    let mut witness = None;
    let mut best = 0u64;
    for &a in b_set {
        let mut count = 0u64;
        for &b in b_set {
            let free = chi.chi(spec, closed_argument(inst, a, b)) == -1
                && chi.chi(spec, closed_argument(inst, b, a)) == -1;
            if free {
                count += 1;
            }
        }
        if witness.is_none() || count > best {
            witness = Some(a);
            best = count;
        }
    }
    let nb = b_set.len() as u64;
    let threshold = c * (spec.q() as f64).sqrt();
    Ok(GoodVertex {
        witness,
        count: best,
        required: nb.div_ceil(8),
        threshold,
        threshold_met: nb as f64 >= threshold,
        holds: 8 * best >= nb,
    })
}

/// One interval length of the short-sum probe.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct BurgessRow {
    pub length: u64,
    /// Largest |sum of chi| over all length-`length` intervals mod p.
    pub max_abs_sum: u64,
    /// `max_abs_sum / sqrt(length)`: square-root-cancellation scale.
    pub max_ratio: f64,
}

/// Exhaustive short-interval character sums over a prime field: for
/// each requested length, the largest `|sum_{x=t}^{t+len-1} chi(x)|`
/// over every start t (intervals wrap mod p).  Lengths outside `1..=p`
/// are skipped.  This is a probe -- it records observed cancellation
/// and asserts nothing.
pub fn burgess_probe(spec: &FieldSpec, lengths: &[u64]) -> Result<Vec<BurgessRow>> {
    if spec.n() != 1 {
        return Err(Error::PrimeFieldRequired(spec.n()));
    }
    let p = spec.p();
    let table = CharTable::build(spec);
    // prefix[i] = sum of chi over the first i residues of the doubled
    // window 0..2p, so any wrapped interval is one subtraction.
    let mut prefix = vec![0i64; 2 * p as usize + 1];
    for i in 0..(2 * p as usize) {
        let x = spec.element((i as u64) % p).unwrap();
        prefix[i + 1] = prefix[i] + table.chi(x) as i64;
    }
    let mut rows = Vec::new();
    for &len in lengths {
        if len == 0 || len > p {
            continue;
        }
        let mut max_abs = 0u64;
        for t in 0..p as usize {
            let s = (prefix[t + len as usize] - prefix[t]).unsigned_abs();
            max_abs = max_abs.max(s);
        }
        rows.push(BurgessRow {
            length: len,
            max_abs_sum: max_abs,
            max_ratio: max_abs as f64 / (len as f64).sqrt(),
        });
    }
    Ok(rows)
}

/// Serializable summary of one randomized verification run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub p: u64,
    pub n: u32,
    pub q: u64,
    pub seed: u64,
    pub trials: u64,
    /// Trials whose exact bound check failed.
    pub violations: u64,
    /// Largest observed |sum|/bound (or analogous) over all trials.
    pub max_ratio: f64,
    /// Per-length rows; present only for the short-interval probe.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<BurgessRow>>,
    /// Skipped degenerate draws; present only for the sextic family.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exceptional: Option<u64>,
}

fn base_report(name: &str, spec: &FieldSpec, seed: u64, trials: u64) -> ExperimentReport {
    ExperimentReport {
        experiment: name.to_string(),
        p: spec.p(),
        n: spec.n(),
        q: spec.q(),
        seed,
        trials,
        violations: 0,
        max_ratio: 0.0,
        table: None,
        exceptional: None,
    }
}

fn random_subset(spec: &FieldSpec, rng: &mut SplitMix64, size: u64) -> Vec<FieldElement> {
    rng.subset(spec.q(), size as usize)
        .into_iter()
        .map(|i| spec.element(i).unwrap())
        .collect()
}

/// Random-set trials of [`vinogradov_check`]: uniform nonempty subset
/// sizes, uniform nonzero u and v.
pub fn run_vinogradov(spec: &FieldSpec, seed: u64, trials: u64) -> Result<ExperimentReport> {
    let table = CharTable::build(spec);
    let chi = ChiEval::Table(&table);
    let mut rng = SplitMix64::new(seed);
    let q = spec.q();
    let mut report = base_report("vinogradov", spec, seed, trials);
    for _ in 0..trials {
        let na = 1 + rng.below(q);
        let nb = 1 + rng.below(q);
        let a_set = random_subset(spec, &mut rng, na);
        let b_set = random_subset(spec, &mut rng, nb);
        let u = spec.element(rng.nonzero_below(q)).unwrap();
        let v = spec.element(rng.nonzero_below(q)).unwrap();
        let out = vinogradov_check(spec, &chi, u, v, &a_set, &b_set)?;
        if !out.holds {
            report.violations += 1;
        }
        report.max_ratio = report.max_ratio.max(out.ratio);
    }
    Ok(report)
}

/// Random-polynomial trials of [`weil_check`]: uniform degree in
/// `1..=max_deg`, nonzero leading coefficient; draws that come out as a
/// constant times a square are resampled.
pub fn run_weil(
    spec: &FieldSpec,
    seed: u64,
    trials: u64,
    max_deg: u64,
) -> Result<ExperimentReport> {
    let table = CharTable::build(spec);
    let chi = ChiEval::Table(&table);
    let mut rng = SplitMix64::new(seed);
    let q = spec.q();
    let mut report = base_report("weil", spec, seed, trials);
    for _ in 0..trials {
        let out = loop {
            let deg = 1 + rng.below(max_deg);
            let mut coeffs: Vec<FieldElement> = (0..deg)
                .map(|_| spec.element(rng.below(q)).unwrap())
                .collect();
            coeffs.push(spec.element(rng.nonzero_below(q)).unwrap());
            let f = Poly::from_coeffs(spec, coeffs);
            match weil_check(spec, &chi, &f) {
                Err(Error::SquareInClosure) => continue,
                other => break other?,
            }
        };
        if !out.holds {
            report.violations += 1;
        }
        report.max_ratio = report.max_ratio.max(out.ratio);
    }
    Ok(report)
}

/// Random-pair trials of the sextic family bound: draw `b1 != +-b2`,
/// skip (and count) exceptional pairs, and check the complete sum
/// against `6*sqrt(q)` on the rest.
pub fn run_weil_sextic(
    inst: &CaptureInstance,
    seed: u64,
    trials: u64,
) -> Result<ExperimentReport> {
    let spec = inst.spec();
    if inst.case() != CaseTag::Generic {
        return Err(Error::NotGeneric(inst.case()));
    }
    let table = CharTable::build(spec);
    let chi = ChiEval::Table(&table);
    let mut rng = SplitMix64::new(seed);
    let q = spec.q();
    let mut report = base_report("weil_sextic", spec, seed, trials);
    let mut exceptional = 0u64;
    for _ in 0..trials {
        let (b1, b2) = loop {
            let b1 = spec.element(rng.below(q)).unwrap();
            let b2 = spec.element(rng.below(q)).unwrap();
            if b2 != b1 && b2 != spec.neg(b1) {
                break (b1, b2);
            }
        };
        let f = sextic_poly(inst, b1, b2)?;
        if squarefree_radical(spec, &f)?.square_in_closure {
            exceptional += 1;
            continue;
        }
        let mut sum = 0i64;
        for x in spec.elements() {
            sum += chi.chi(spec, f.eval(spec, x)) as i64;
        }
        let cap = (SEXTIC_DEGREE * SEXTIC_DEGREE) as u128 * q as u128;
        if (sum as i128) * (sum as i128) > cap as i128 {
            report.violations += 1;
        }
        report.max_ratio = report.max_ratio.max(sum.unsigned_abs() as f64 / (cap as f64).sqrt());
    }
    report.exceptional = Some(exceptional);
    Ok(report)
}

/// Random-set trials of [`pair_density_check`] with both sizes drawn
/// from `(sqrt(q), q]`; a violation is a deviation ratio above
/// [`PAIR_DENSITY_RATIO_BOUND`].
pub fn run_pair_density(
    inst: &CaptureInstance,
    seed: u64,
    trials: u64,
) -> Result<ExperimentReport> {
    let spec = inst.spec();
    let table = CharTable::build(spec);
    let chi = ChiEval::Table(&table);
    let mut rng = SplitMix64::new(seed);
    let q = spec.q();
    let min = crate::arith::isqrt(q) + 1;
    let mut report = base_report("pair_density", spec, seed, trials);
    for _ in 0..trials {
        let na = min + rng.below(q - min + 1);
        let nb = min + rng.below(q - min + 1);
        let a_set = random_subset(spec, &mut rng, na);
        let b_set = random_subset(spec, &mut rng, nb);
        let out = pair_density_check(inst, &chi, &a_set, &b_set)?;
        if out.deviation_ratio > PAIR_DENSITY_RATIO_BOUND {
            report.violations += 1;
        }
        report.max_ratio = report.max_ratio.max(out.deviation_ratio);
    }
    Ok(report)
}

/// Random-set trials of [`good_vertex_exists`].  Set sizes are drawn at
/// or above the threshold `c*sqrt(q)` whenever q admits it (otherwise
/// uniformly); a violation is a threshold-meeting set with no good
/// vertex.
pub fn run_good_vertex(
    inst: &CaptureInstance,
    seed: u64,
    trials: u64,
    c: f64,
) -> Result<ExperimentReport> {
    let spec = inst.spec();
    let table = CharTable::build(spec);
    let chi = ChiEval::Table(&table);
    let mut rng = SplitMix64::new(seed);
    let q = spec.q();
    let threshold_size = (c * (q as f64).sqrt()).ceil() as u64;
    let mut report = base_report("good_vertex", spec, seed, trials);
    for _ in 0..trials {
        let nb = if threshold_size >= 1 && threshold_size <= q {
            threshold_size + rng.below(q - threshold_size + 1)
        } else {
            1 + rng.below(q)
        };
        let b_set = random_subset(spec, &mut rng, nb);
        let out = good_vertex_exists(inst, &chi, &b_set, c)?;
        if out.threshold_met && !out.holds {
            report.violations += 1;
        }
        let ratio = if out.count == 0 {
            f64::INFINITY
        } else {
            nb as f64 / (8.0 * out.count as f64)
        };
        report.max_ratio = report.max_ratio.max(ratio);
    }
    Ok(report)
}

/// Deterministic short-interval probe packaged as a report; the row
/// table carries the substance, `max_ratio` its maximum.
pub fn run_burgess(spec: &FieldSpec, lengths: &[u64]) -> Result<ExperimentReport> {
    let rows = burgess_probe(spec, lengths)?;
    let mut report = base_report("burgess", spec, 0, rows.len() as u64);
    report.max_ratio = rows.iter().fold(0.0f64, |m, r| m.max(r.max_ratio));
    report.table = Some(rows);
    Ok(report)
}
