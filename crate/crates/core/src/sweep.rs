//! Batch capture-number computation across a range of fields.
//!
//! A sweep walks every odd prime power q up to a ceiling, takes the
//! canonical instance plus a seeded corpus over each field, and records
//! one [`SweepRow`] per instance: the case tag, the certified N_q value
//! or bracket, the square-root ceiling, and the graph statistics where
//! a graph was built.  Row order is fixed -- fields ascending by q,
//! canonical first, then corpus draws in stream order -- and the
//! optional parallelism cannot change it, so two sweeps with the same
//! configuration produce byte-identical serialized output (timings are
//! opt-in precisely because they would break that).

use crate::clique::{greedy_clique, max_clique_with, nq, nq_bounds, CliqueConfig, NqStatus};
use crate::counting::{CaptureInstance, CaseTag};
use crate::error::Result;
use crate::field::{odd_prime_powers, FieldSpec};
use crate::graph::CaptureGraph;
use crate::instances::{canonical, corpus, InstanceFilter};
use rayon::prelude::*;
use serde::Serialize;

/// One instance's outcome inside a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub q: u64,
    pub p: u64,
    pub n: u32,
    /// Compact form description, `L=a:b;Q=c:d:e` (element indices).
    pub instance: String,
    pub case: CaseTag,
    pub status: NqStatus,
    /// Certified lower bound on N_q (exact value when status is EXACT).
    pub lo: u64,
    /// Certified upper bound, when one is known.
    pub hi: Option<u64>,
    /// The generic-case ceiling floor(2*sqrt(q)) + 1, for reference.
    pub upper_bound: u64,
    /// Greedy clique size, for GENERIC rows.
    pub greedy_size: Option<u64>,
    /// Capture-graph vertex count, for GENERIC rows.
    pub vertices: Option<u64>,
    /// Wall-clock milliseconds, only when the sweep records timings.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

/// Sweep shape and determinism knobs.
#[derive(Clone, Debug, Serialize)]
pub struct SweepConfig {
    /// Walk all odd prime powers q with 3 <= q <= qmax.
    pub qmax: u64,
    /// Random instances per field, in addition to the canonical one.
    pub per_q: usize,
    /// Corpus seed (mixed per field; see `instances::corpus`).
    pub seed: u64,
    pub clique: CliqueConfig,
    /// Process instances on the rayon pool; row order is unaffected.
    pub parallel: bool,
    /// Attach wall-clock timings to rows (breaks byte-reproducibility).
    pub record_runtime: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            qmax: 199,
            per_q: 2,
            seed: 1,
            clique: CliqueConfig::default(),
            parallel: true,
            record_runtime: false,
        }
    }
}

fn describe(inst: &CaptureInstance) -> String {
    let l = inst.linear();
    let q = inst.quadratic();
    format!(
        "L={}:{};Q={}:{}:{}",
        l.x.index(),
        l.y.index(),
        q.xx.index(),
        q.xy.index(),
        q.yy.index()
    )
}

fn sweep_row(inst: &CaptureInstance, cfg: &SweepConfig) -> Result<SweepRow> {
    let started = std::time::Instant::now();
    let spec = inst.spec();
    let (status, lo, hi, greedy_size, vertices) = match inst.case() {
        CaseTag::Generic => {
            let graph = CaptureGraph::build(inst)?;
            let greedy = greedy_clique(&graph);
            let search = max_clique_with(&graph, &cfg.clique);
            let status =
                if search.certified() { NqStatus::Exact } else { NqStatus::LowerBoundOnly };
            (
                status,
                search.lower as u64 + 1,
                Some(search.upper as u64 + 1),
                Some(greedy.size() as u64),
                Some(graph.vertex_count() as u64),
            )
        }
        _ => {
            let r = nq(inst)?;
            (r.status, r.lo, r.hi, None, None)
        }
    };
    Ok(SweepRow {
        q: spec.q(),
        p: spec.p(),
        n: spec.n(),
        instance: describe(inst),
        case: inst.case(),
        status,
        lo,
        hi,
        upper_bound: nq_bounds(spec.q()).int,
        greedy_size,
        vertices,
        runtime_ms: cfg
            .record_runtime
            .then(|| started.elapsed().as_millis().try_into().unwrap_or(u64::MAX)),
    })
}

/// Run the sweep described by `cfg`; rows come back in the fixed order
/// described in the module docs.
pub fn nq_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    let mut instances: Vec<CaptureInstance> = Vec::new();
    for (p, n, _) in odd_prime_powers(cfg.qmax) {
        let spec = FieldSpec::new(p, n)?;
        instances.push(canonical(&spec));
        instances.extend(corpus(&spec, cfg.seed, cfg.per_q, InstanceFilter::Any));
    }
    if cfg.parallel {
        instances.par_iter().map(|inst| sweep_row(inst, cfg)).collect()
    } else {
        instances.iter().map(|inst| sweep_row(inst, cfg)).collect()
    }
}
