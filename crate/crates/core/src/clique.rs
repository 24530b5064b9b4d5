//! Clique search on the capture graph and the capture number N_q(L, Q).
//!
//! In the GENERIC case the capture-free sets are exactly the cliques of
//! the capture graph, so `N_q = omega + 1`.  Three routes to omega:
//!
//! * [`greedy_clique`]: repeatedly take the candidate with the most
//!   neighbours among the remaining candidates.  Fast, lower bound only.
//! * [`max_clique`]: branch and bound in the style of Tomita's MCQ --
//!   candidates are greedily coloured, and a branch is cut when the
//!   current clique plus the candidate's colour cannot beat the best.
//!   Exact when it finishes within the node budget; when truncated it
//!   still reports a certified interval (best found, root colour count).
//! * [`max_clique_brute`]: enumerate all vertex subsets.  Only for tiny
//!   graphs; exists to check the other two.
//!
//! [`nq`] dispatches on the case tag: L_DIVIDES pins N_q = 1 (every
//! singleton is captured), the two half-density cases carry certified
//! lower bounds from `counting::blocking_set`, and GENERIC goes through
//! the clique search.  [`nq_subset_oracle`] recomputes N_q for tiny q
//! straight from the definition -- all 2^q subsets against all q^2
//! value pairs -- and shares no code with the graph route.

use crate::bitset::{BitMatrix, BitSet};
use crate::counting::{CaptureInstance, CaseTag};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::graph::CaptureGraph;
use serde::Serialize;

/// Default branch-and-bound node budget.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Vertex-count ceiling for [`max_clique_brute`].
pub const BRUTE_CLIQUE_MAX_VERTICES: usize = 20;

/// Field-size ceiling for [`nq_subset_oracle`].
pub const SUBSET_ORACLE_MAX_Q: u64 = 13;

/// How a clique was obtained.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CliqueMethod {
    Greedy,
    Exact,
    SubsetOracle,
}

impl std::fmt::Display for CliqueMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CliqueMethod::Greedy => "GREEDY",
            CliqueMethod::Exact => "EXACT",
            CliqueMethod::SubsetOracle => "SUBSET_ORACLE",
        })
    }
}

/// A clique, as field elements in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueResult {
    pub members: Vec<FieldElement>,
    pub method: CliqueMethod,
    /// True iff the producing search proved no larger clique exists.
    pub certified_max: bool,
}

impl CliqueResult {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Knobs for the exact search.
#[derive(Copy, Clone, Debug, Serialize)]
pub struct CliqueConfig {
    /// Abort the branch-and-bound after this many expanded nodes.
    pub node_budget: u64,
}

impl Default for CliqueConfig {
    fn default() -> Self {
        CliqueConfig { node_budget: DEFAULT_NODE_BUDGET }
    }
}

/// Outcome of [`max_clique`]: the clique plus the certified bracket
/// `lower <= omega <= upper` (equal iff the search completed).
#[derive(Clone, Debug, Serialize)]
pub struct CliqueSearch {
    pub result: CliqueResult,
    pub lower: usize,
    pub upper: usize,
    /// Branch-and-bound nodes expanded.
    pub nodes: u64,
}

impl CliqueSearch {
    pub fn certified(&self) -> bool {
        self.lower == self.upper
    }
}

/// Greedy clique: start from all vertices, repeatedly pick the candidate
/// with the most neighbours among the current candidates (ties to the
/// smallest element), and keep only its neighbourhood.
pub fn greedy_clique(graph: &CaptureGraph) -> CliqueResult {
    let nv = graph.vertex_count();
    let adj = graph.adjacency();
    let mut candidates = BitSet::full(nv);
    let mut picked: Vec<usize> = Vec::new();
    while !candidates.is_empty() {
        let mut best_v = usize::MAX;
        let mut best_deg = usize::MAX;
        for v in candidates.iter() {
            let d = candidates.count_intersection(adj.row(v));
            if best_v == usize::MAX || d > best_deg {
                best_v = v;
                best_deg = d;
            }
        }
        picked.push(best_v);
        candidates.remove(best_v);
        candidates.intersect_words(adj.row(best_v));
    }
    picked.sort_unstable();
    CliqueResult {
        members: picked.iter().map(|&v| graph.vertices()[v]).collect(),
        method: CliqueMethod::Greedy,
        certified_max: false,
    }
}

/// Greedy colouring of the candidate set; returns (vertex, colour) with
/// colours 1-based and nondecreasing.  The colour count bounds the
/// largest clique inside `p`.
fn color_sort(adj: &BitMatrix, p: &BitSet) -> Vec<(usize, usize)> {
    let mut classes: Vec<BitSet> = Vec::new();
    let mut order: Vec<Vec<usize>> = Vec::new();
    for v in p.iter() {
        let mut c = 0;
        while c < classes.len() && classes[c].count_intersection(adj.row(v)) > 0 {
            c += 1;
        }
        if c == classes.len() {
            classes.push(BitSet::empty(adj.n()));
            order.push(Vec::new());
        }
        classes[c].insert(v);
        order[c].push(v);
    }
    let mut out = Vec::with_capacity(p.len());
    for (ci, class) in order.iter().enumerate() {
        for &v in class {
            out.push((v, ci + 1));
        }
    }
    out
}

struct Searcher<'a> {
    adj: &'a BitMatrix,
    budget: u64,
    nodes: u64,
    truncated: bool,
    best: Vec<usize>,
}

impl Searcher<'_> {
    fn expand(&mut self, r: &mut Vec<usize>, p: &BitSet) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.truncated = true;
            return;
        }
        if p.is_empty() {
            if r.len() > self.best.len() {
                self.best = r.clone();
            }
            return;
        }
        let colored = color_sort(self.adj, p);
        let mut avail = p.clone();
        for &(v, color) in colored.iter().rev() {
            // Colours are nondecreasing in `colored`, so once one fails
            // the bound every remaining candidate fails it too.
            if r.len() + color <= self.best.len() {
                return;
            }
            avail.remove(v);
            let mut next = avail.clone();
            next.intersect_words(self.adj.row(v));
            r.push(v);
            self.expand(r, &next);
            r.pop();
            if self.truncated {
                return;
            }
        }
    }
}

/// Exact maximum clique with the default configuration.
pub fn max_clique(graph: &CaptureGraph) -> CliqueSearch {
    max_clique_with(graph, &CliqueConfig::default())
}

/// Exact maximum clique via branch and bound.  Vertices are reordered by
/// descending degree first, the greedy clique seeds the incumbent, and a
/// root colouring supplies the upper bound reported on truncation.
pub fn max_clique_with(graph: &CaptureGraph, cfg: &CliqueConfig) -> CliqueSearch {
    let nv = graph.vertex_count();
    if nv == 0 {
        return CliqueSearch {
            result: CliqueResult {
                members: Vec::new(),
                method: CliqueMethod::Exact,
                certified_max: true,
            },
            lower: 0,
            upper: 0,
            nodes: 0,
        };
    }
    let adj = graph.adjacency();

    // Reorder by descending degree (ties to the lower slot): high-degree
    // vertices get coloured first, which tightens the colouring bound.
    let mut perm: Vec<usize> = (0..nv).collect();
    perm.sort_by_key(|&v| (std::cmp::Reverse(adj.degree(v)), v));
    let mut slot_of = vec![0usize; nv];
    for (new, &old) in perm.iter().enumerate() {
        slot_of[old] = new;
    }
    let mut radj = BitMatrix::new(nv);
    for i in 0..nv {
        for j in (i + 1)..nv {
            if adj.adjacent(perm[i], perm[j]) {
                radj.connect(i, j);
            }
        }
    }

    let seed: Vec<usize> =
        greedy_clique(graph).members.iter().map(|e| {
            let old = graph.vertices().iter().position(|v| v == e).expect("member is a vertex");
            slot_of[old]
        }).collect();

    let root = BitSet::full(nv);
    let root_colors = color_sort(&radj, &root).last().map_or(0, |&(_, c)| c);

    let mut searcher = Searcher {
        adj: &radj,
        budget: cfg.node_budget,
        nodes: 0,
        truncated: false,
        best: seed,
    };
    let mut r = Vec::new();
    searcher.expand(&mut r, &root);

    let lower = searcher.best.len();
    let upper = if searcher.truncated { root_colors.max(lower) } else { lower };
    let mut members: Vec<usize> = searcher.best.iter().map(|&v| perm[v]).collect();
    members.sort_unstable();
    CliqueSearch {
        result: CliqueResult {
            members: members.iter().map(|&v| graph.vertices()[v]).collect(),
            method: CliqueMethod::Exact,
            certified_max: !searcher.truncated,
        },
        lower,
        upper,
        nodes: searcher.nodes,
    }
}

/// Maximum clique by enumerating every subset of the vertex set.
pub fn max_clique_brute(graph: &CaptureGraph) -> Result<CliqueResult> {
    let nv = graph.vertex_count();
    if nv > BRUTE_CLIQUE_MAX_VERTICES {
        return Err(Error::CliqueOracleGuard { vertices: nv, limit: BRUTE_CLIQUE_MAX_VERTICES });
    }
    let adj = graph.adjacency();
    let mut best: u32 = 0;
    let mut best_mask: u32 = 0;
    for mask in 0u32..(1u32 << nv) {
        if mask.count_ones() <= best {
            continue;
        }
        let mut is_clique = true;
        'pairs: for i in 0..nv {
            if mask & (1 << i) == 0 {
                continue;
            }
            for j in (i + 1)..nv {
                if mask & (1 << j) != 0 && !adj.adjacent(i, j) {
                    is_clique = false;
                    break 'pairs;
                }
            }
        }
        if is_clique {
            best = mask.count_ones();
            best_mask = mask;
        }
    }
    let members = (0..nv)
        .filter(|&v| best_mask & (1 << v) != 0)
        .map(|v| graph.vertices()[v])
        .collect();
    Ok(CliqueResult { members, method: CliqueMethod::SubsetOracle, certified_max: true })
}

/// Whether an [`NqResult`] pins the capture number exactly.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NqStatus {
    Exact,
    LowerBoundOnly,
}

impl std::fmt::Display for NqStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NqStatus::Exact => "EXACT",
            NqStatus::LowerBoundOnly => "LOWER_BOUND_ONLY",
        })
    }
}

/// The capture number, or the sharpest certified bracket on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NqResult {
    pub case: CaseTag,
    pub status: NqStatus,
    /// Certified lower bound on N_q (the exact value when `status` is EXACT).
    pub lo: u64,
    /// Certified upper bound, when one is known.
    pub hi: Option<u64>,
}

impl NqResult {
    /// The exact capture number, if this result pins it.
    pub fn value(&self) -> Option<u64> {
        match self.status {
            NqStatus::Exact => Some(self.lo),
            NqStatus::LowerBoundOnly => None,
        }
    }
}

/// Capture number with default clique configuration.
pub fn nq(inst: &CaptureInstance) -> Result<NqResult> {
    nq_with(inst, &CliqueConfig::default())
}

/// Capture number by case:
///
/// * L_DIVIDES: every singleton is captured, so N_q = 1.
/// * L_SQUARED: the scaled-nonsquare blocking set certifies
///   N_q >= (q+1)/2; no matching upper bound is computed.
/// * DEGENERATE_DISC: the fixed-character-sign blocking set certifies
///   N_q >= (q-1)/2; no matching upper bound is computed.
/// * GENERIC: N_q = omega + 1 via clique search; a truncated search
///   yields the bracket [best+1, bound+1] instead.
pub fn nq_with(inst: &CaptureInstance, cfg: &CliqueConfig) -> Result<NqResult> {
    let q = inst.q();
    match inst.case() {
        CaseTag::LDivides => Ok(NqResult {
            case: CaseTag::LDivides,
            status: NqStatus::Exact,
            lo: 1,
            hi: Some(1),
        }),
        CaseTag::LSquared => Ok(NqResult {
            case: CaseTag::LSquared,
            status: NqStatus::LowerBoundOnly,
            lo: (q + 1) / 2,
            hi: None,
        }),
        CaseTag::DegenerateDisc => Ok(NqResult {
            case: CaseTag::DegenerateDisc,
            status: NqStatus::LowerBoundOnly,
            lo: (q - 1) / 2,
            hi: None,
        }),
        CaseTag::Generic => {
            let graph = CaptureGraph::build(inst)?;
            let search = max_clique_with(&graph, cfg);
            if search.certified() {
                Ok(NqResult {
                    case: CaseTag::Generic,
                    status: NqStatus::Exact,
                    lo: search.lower as u64 + 1,
                    hi: Some(search.lower as u64 + 1),
                })
            } else {
                Ok(NqResult {
                    case: CaseTag::Generic,
                    status: NqStatus::LowerBoundOnly,
                    lo: search.lower as u64 + 1,
                    hi: Some(search.upper as u64 + 1),
                })
            }
        }
    }
}

/// Recompute N_q for tiny fields straight from the definition: a subset
/// is captured iff some (x, y) lands both its values inside it, so scan
/// all 2^q subsets against the q^2 precomputed value-pair masks.  Valid
/// in every case.
pub fn nq_subset_oracle(inst: &CaptureInstance) -> Result<u64> {
    let spec = inst.spec();
    let q = spec.q();
    if q > SUBSET_ORACLE_MAX_Q {
        return Err(Error::OracleGuard { q, limit: SUBSET_ORACLE_MAX_Q });
    }
    let mut masks: Vec<u16> = Vec::with_capacity((q * q) as usize);
    for x in spec.elements() {
        for y in spec.elements() {
            let a = inst.linear().eval(spec, x, y).index();
            let b = inst.quadratic().eval(spec, x, y).index();
            masks.push((1u16 << a) | (1u16 << b));
        }
    }
    masks.sort_unstable();
    masks.dedup();
    let mut best: u32 = 0;
    for set in 0u16..(1u16 << q) {
        if set.count_ones() <= best {
            continue;
        }
        if masks.iter().all(|&m| m & set != m) {
            best = set.count_ones();
        }
    }
    Ok(best as u64 + 1)
}

/// The generic-case ceiling on N_q derived from the square-root bound on
/// clique size: N_q <= 2*sqrt(q) + 1.
#[derive(Copy, Clone, Debug, Serialize)]
pub struct NqUpperBound {
    /// 2*sqrt(q) + 1 as a float.
    pub real: f64,
    /// floor(2*sqrt(q)) + 1: the best integer consequence of `real`.
    pub int: u64,
}

/// See [`NqUpperBound`].
pub fn nq_bounds(q: u64) -> NqUpperBound {
    NqUpperBound {
        real: 2.0 * (q as f64).sqrt() + 1.0,
        int: crate::arith::isqrt(4 * q) + 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::forms::{LinearForm, QuadraticForm};

    fn inst(p: u64, n: u32, l: (u64, u64), q: (u64, u64, u64)) -> CaptureInstance {
        let spec = FieldSpec::new(p, n).unwrap();
        let lf = LinearForm::new(&spec, spec.element(l.0).unwrap(), spec.element(l.1).unwrap())
            .unwrap();
        let qf = QuadraticForm::new(
            &spec,
            spec.element(q.0).unwrap(),
            spec.element(q.1).unwrap(),
            spec.element(q.2).unwrap(),
        )
        .unwrap();
        CaptureInstance::new(spec, lf, qf)
    }

    fn canonical(p: u64, n: u32) -> CaptureInstance {
        inst(p, n, (1, 1), (0, 1, 0))
    }

    fn ids(r: &CliqueResult) -> Vec<u64> {
        r.members.iter().map(|e| e.index()).collect()
    }

    #[test]
    fn f7_greedy_and_exact() {
        let g = CaptureGraph::build(&canonical(7, 1)).unwrap();
        let greedy = greedy_clique(&g);
        assert_eq!(ids(&greedy), vec![2, 5]);
        assert_eq!(greedy.method, CliqueMethod::Greedy);
        assert!(!greedy.certified_max);

        let exact = max_clique(&g);
        assert_eq!(exact.lower, 2);
        assert_eq!(exact.upper, 2);
        assert!(exact.certified());
        assert!(exact.result.certified_max);
        assert_eq!(ids(&exact.result), vec![2, 5]);

        let brute = max_clique_brute(&g).unwrap();
        assert_eq!(brute.size(), 2);
        assert_eq!(brute.method, CliqueMethod::SubsetOracle);
    }

    #[test]
    fn tiny_canonical_capture_numbers() {
        for (p, expect) in [(3u64, 2u64), (5, 2), (7, 3)] {
            let r = nq(&canonical(p, 1)).unwrap();
            assert_eq!(r.status, NqStatus::Exact);
            assert_eq!(r.value(), Some(expect), "p = {p}");
            assert_eq!(r.hi, Some(expect));
            assert_eq!(nq_subset_oracle(&canonical(p, 1)).unwrap(), expect);
        }
    }

    #[test]
    fn empty_graph_gives_nq_one() {
        let i = inst(3, 1, (1, 0), (1, 1, 2));
        let g = CaptureGraph::build(&i).unwrap();
        assert_eq!(g.vertex_count(), 0);
        let s = max_clique(&g);
        assert_eq!((s.lower, s.upper, s.nodes), (0, 0, 0));
        assert!(s.result.members.is_empty());
        assert_eq!(nq(&i).unwrap().value(), Some(1));
        assert_eq!(nq_subset_oracle(&i).unwrap(), 1);
    }

    #[test]
    fn degenerate_cases_dispatch() {
        let ld = inst(7, 1, (1, 0), (0, 1, 0));
        let r = nq(&ld).unwrap();
        assert_eq!((r.case, r.value()), (CaseTag::LDivides, Some(1)));
        assert_eq!(nq_subset_oracle(&ld).unwrap(), 1);

        let lsq = inst(7, 1, (1, 0), (3, 0, 0));
        let r = nq(&lsq).unwrap();
        assert_eq!(r.case, CaseTag::LSquared);
        assert_eq!(r.status, NqStatus::LowerBoundOnly);
        assert_eq!((r.lo, r.hi), (4, None));
        assert!(nq_subset_oracle(&lsq).unwrap() >= 4);

        let dd = inst(7, 1, (1, 0), (0, 0, 1));
        let r = nq(&dd).unwrap();
        assert_eq!(r.case, CaseTag::DegenerateDisc);
        assert_eq!(r.status, NqStatus::LowerBoundOnly);
        assert_eq!((r.lo, r.hi), (3, None));
        // Exact value here is (q+1)/2 = 4: capture-freeness depends only
        // on chi of the second coordinate.
        assert_eq!(nq_subset_oracle(&dd).unwrap(), 4);
    }

    #[test]
    fn oracle_agrees_with_graph_route_exhaustively() {
        // Every (L, Q) pair over tiny fields: the subset oracle must
        // match EXACT results and respect LOWER_BOUND_ONLY brackets.
        for (p, n) in [(3u64, 1u32), (5, 1), (7, 1), (3, 2)] {
            let spec = FieldSpec::new(p, n).unwrap();
            let q = spec.q();
            for lx in 0..q {
                for ly in 0..q {
                    if lx == 0 && ly == 0 {
                        continue;
                    }
                    for qxx in 0..q {
                        for qxy in 0..q {
                            for qyy in 0..q {
                                if qxx == 0 && qxy == 0 && qyy == 0 {
                                    continue;
                                }
                                let i = inst(p, n, (lx, ly), (qxx, qxy, qyy));
                                let truth = nq_subset_oracle(&i).unwrap();
                                let r = nq(&i).unwrap();
                                match r.status {
                                    NqStatus::Exact => assert_eq!(
                                        truth,
                                        r.lo,
                                        "q={q} L=({lx},{ly}) Q=({qxx},{qxy},{qyy})"
                                    ),
                                    NqStatus::LowerBoundOnly => assert!(
                                        truth >= r.lo,
                                        "q={q} L=({lx},{ly}) Q=({qxx},{qxy},{qyy}): \
                                         oracle {truth} below claimed bound {}",
                                        r.lo
                                    ),
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn exact_matches_brute_on_midsize_primes() {
        for p in [11u64, 13, 17, 19, 23, 29, 31, 37, 41] {
            let g = CaptureGraph::build(&canonical(p, 1)).unwrap();
            if g.vertex_count() > BRUTE_CLIQUE_MAX_VERTICES {
                continue;
            }
            let exact = max_clique(&g);
            let brute = max_clique_brute(&g).unwrap();
            assert!(exact.certified(), "p = {p}");
            assert_eq!(exact.lower, brute.size(), "p = {p}");
        }
    }

    #[test]
    fn brute_guard_refuses_large_graphs() {
        let g = CaptureGraph::build(&canonical(101, 1)).unwrap();
        let err = max_clique_brute(&g).unwrap_err();
        assert_eq!(
            err,
            Error::CliqueOracleGuard {
                vertices: g.vertex_count(),
                limit: BRUTE_CLIQUE_MAX_VERTICES
            }
        );
        assert_eq!(
            nq_subset_oracle(&canonical(17, 1)).unwrap_err(),
            Error::OracleGuard { q: 17, limit: SUBSET_ORACLE_MAX_Q }
        );
    }

    #[test]
    fn budget_truncation_reports_interval() {
        let g = CaptureGraph::build(&canonical(101, 1)).unwrap();
        let full = max_clique(&g);
        assert!(full.certified());

        let cfg = CliqueConfig { node_budget: 1 };
        let cut = max_clique_with(&g, &cfg);
        assert!(!cut.certified());
        assert!(!cut.result.certified_max);
        assert!(cut.lower >= greedy_clique(&g).size());
        assert!(cut.lower <= full.lower, "lower bound must stay a lower bound");
        assert!(cut.upper >= full.lower, "upper bound must cover omega");

        let r = nq_with(&canonical(101, 1), &cfg).unwrap();
        assert_eq!(r.status, NqStatus::LowerBoundOnly);
        assert_eq!(r.lo, cut.lower as u64 + 1);
        assert_eq!(r.hi, Some(cut.upper as u64 + 1));
        assert_eq!(r.value(), None);
    }

    #[test]
    fn clique_members_really_are_cliques() {
        for p in [13u64, 29, 53, 101] {
            let g = CaptureGraph::build(&canonical(p, 1)).unwrap();
            for result in [greedy_clique(&g), max_clique(&g).result] {
                let slots: Vec<usize> = result
                    .members
                    .iter()
                    .map(|e| g.vertices().iter().position(|v| v == e).unwrap())
                    .collect();
                for (i, &a) in slots.iter().enumerate() {
                    for &b in &slots[i + 1..] {
                        assert!(g.adjacency().adjacent(a, b), "p = {p}: {a} !~ {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn nq_bounds_frozen_values() {
        for (q, int) in [(7u64, 6u64), (9, 7), (25, 11), (1009, 64), (4001, 127)] {
            let b = nq_bounds(q);
            assert_eq!(b.int, int, "q = {q}");
            assert!((b.real - (2.0 * (q as f64).sqrt() + 1.0)).abs() < 1e-12);
            assert!(b.int as f64 <= b.real + 1e-9);
        }
    }

    #[test]
    fn exact_nq_respects_sqrt_ceiling() {
        for p in [7u64, 11, 13, 31, 61, 101, 151, 199] {
            let r = nq(&canonical(p, 1)).unwrap();
            let v = r.value().expect("search should certify at these sizes");
            assert!(
                v <= nq_bounds(p).int,
                "p = {p}: N = {v} above {}",
                nq_bounds(p).int
            );
        }
    }
}
