//! Subcommand dispatch and report emission.
//!
//! Every JSON report is wrapped in one envelope: `{version, command,
//! seed, timestamp_unix?, config, payload}`.  The timestamp is the only
//! nondeterministic byte and `--reproducible` suppresses it; everything
//! else is a pure function of the parsed config.  The sweep's CSV path
//! embeds version and seed in a leading `#` comment instead.
//!
//! Exit codes: 0 success, 1 a verification ran and failed (bound
//! violations, a set that is not capture-free), 2 usage errors --
//! invalid parameters, guard refusals, malformed input.

use crate::args::{
    CharsumArgs, Command, CompositeArgs, CountArgs, CountMode, Experiment, FieldArgs, FormArgs,
    NqMode, RunConfig, SweepFormat,
};
use anyhow::{bail, Context};
use formlab_core::charsum::{
    run_burgess, run_good_vertex, run_pair_density, run_vinogradov, run_weil, run_weil_sextic,
};
use formlab_core::clique::{
    greedy_clique, max_clique_with, nq_bounds, nq_subset_oracle, nq_with, CliqueConfig,
    CliqueMethod, NqStatus, NqUpperBound,
};
use formlab_core::composite::{
    blocking_residues, build_blocking_set, build_blocking_set_multi, verify_no_solutions_with,
    BlockingResidue, RingLinear, RingQuadratic, RingSpec,
};
use formlab_core::counting::{
    capture_witness, count_brute_table, count_brute_with, count_closed, count_closed_table,
    CaptureWitness,
};
use formlab_core::field::{CharTable, FieldSpec};
use formlab_core::forms::{divisibility, LinearForm, QuadraticForm};
use formlab_core::graph::CaptureGraph;
use formlab_core::poly::Poly;
use formlab_core::sweep::{nq_sweep, SweepConfig, SweepRow};
use formlab_core::{CaptureInstance, CaseTag, Divisibility, FieldElement, ReducedForm};
use serde::Serialize;
use std::fmt::Write as _;
use std::io::Write as _;

/// Parse-to-exit driver; prints reports to stdout (or `--out`) and
/// usage errors to stderr.
pub fn run(cfg: &RunConfig) -> i32 {
    init_threads(cfg);
    match dispatch(cfg) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    }
}

/// FORMLAB_THREADS wins over --threads; with neither, rayon's default
/// (all cores) stands.  Thread count never changes emitted bytes.
fn init_threads(cfg: &RunConfig) {
    let chosen = std::env::var("FORMLAB_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .or(cfg.threads);
    if let Some(n) = chosen {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn dispatch(cfg: &RunConfig) -> anyhow::Result<i32> {
    match &cfg.command {
        Command::Field(args) => run_field(cfg, args),
        Command::Reduce(args) => run_reduce(cfg, args),
        Command::Count(args) => run_count(cfg, args),
        Command::Capture(args) => run_capture(cfg, args),
        Command::Graph(args) => run_graph(cfg, args),
        Command::Nq(args) => run_nq(cfg, args),
        Command::NqSweep(args) => run_sweep(cfg, args),
        Command::Charsum(args) => run_charsum(cfg, args),
        Command::Composite(args) => run_composite(cfg, args),
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    version: &'static str,
    command: &'static str,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp_unix: Option<u64>,
    config: &'a RunConfig,
    payload: T,
}

fn timestamp(cfg: &RunConfig) -> Option<u64> {
    (!cfg.reproducible).then(|| {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    })
}

/// Send finished report text to --out or stdout.
fn emit(cfg: &RunConfig, text: &str) -> anyhow::Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit_json<T: Serialize>(cfg: &RunConfig, payload: &T) -> anyhow::Result<()> {
    let envelope = Envelope {
        version: env!("CARGO_PKG_VERSION"),
        command: cfg.command.name(),
        seed: cfg.command.seed(),
        timestamp_unix: timestamp(cfg),
        config: cfg,
        payload,
    };
    let mut text = serde_json::to_string_pretty(&envelope)?;
    text.push('\n');
    emit(cfg, &text)
}

fn field_spec(args: &FieldArgs) -> anyhow::Result<FieldSpec> {
    Ok(FieldSpec::new(args.p, args.n)?)
}

/// Coefficient lists to a checked instance; lengths and index ranges
/// are usage constraints.
fn parse_instance(spec: &FieldSpec, form: &FormArgs) -> anyhow::Result<CaptureInstance> {
    if form.l.len() != 2 {
        bail!("--L takes exactly two comma-separated indices, got {}", form.l.len());
    }
    if form.q.len() != 3 {
        bail!("--Q takes exactly three comma-separated indices, got {}", form.q.len());
    }
    let lx = spec.element(form.l[0])?;
    let ly = spec.element(form.l[1])?;
    let qxx = spec.element(form.q[0])?;
    let qxy = spec.element(form.q[1])?;
    let qyy = spec.element(form.q[2])?;
    let lf = LinearForm::new(spec, lx, ly)?;
    let qf = QuadraticForm::new(spec, qxx, qxy, qyy)?;
    Ok(CaptureInstance::new(spec.clone(), lf, qf))
}

fn parse_set(spec: &FieldSpec, set: &[u64]) -> anyhow::Result<Vec<FieldElement>> {
    set.iter().map(|&i| Ok(spec.element(i)?)).collect()
}

// ---------------------------------------------------------------- field

#[derive(Serialize)]
struct FieldPayload {
    p: u64,
    n: u32,
    q: u64,
    /// Modulus coefficients over F_p, constant first.
    modulus: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    modulus_pretty: Option<String>,
    squares: u64,
    nonsquares: u64,
}

fn run_field(cfg: &RunConfig, args: &FieldArgs) -> anyhow::Result<i32> {
    let spec = field_spec(args)?;
    let (squares, nonsquares) = CharTable::build(&spec).counts();
    let modulus_pretty = if cfg.pretty {
        let prime = FieldSpec::new(spec.p(), 1)?;
        Some(Poly::from_indices(&prime, spec.modulus())?.render())
    } else {
        None
    };
    let payload = FieldPayload {
        p: spec.p(),
        n: spec.n(),
        q: spec.q(),
        modulus: spec.modulus().to_vec(),
        modulus_pretty,
        squares,
        nonsquares,
    };
    emit_json(cfg, &payload)?;
    Ok(0)
}

// --------------------------------------------------------------- reduce

#[derive(Serialize)]
struct ReducePayload<'a> {
    l: &'a LinearForm,
    q: &'a QuadraticForm,
    reduced: &'a ReducedForm,
    case: CaseTag,
    disc: FieldElement,
    divisibility: Divisibility,
}

fn run_reduce(cfg: &RunConfig, args: &FormArgs) -> anyhow::Result<i32> {
    let spec = field_spec(&args.field)?;
    let inst = parse_instance(&spec, args)?;
    let payload = ReducePayload {
        l: inst.linear(),
        q: inst.quadratic(),
        reduced: inst.reduced(),
        case: inst.case(),
        disc: formlab_core::forms::disc(&spec, inst.quadratic()),
        divisibility: divisibility(&spec, inst.linear(), inst.quadratic()),
    };
    emit_json(cfg, &payload)?;
    Ok(0)
}

// ---------------------------------------------------------------- count

#[derive(Serialize)]
struct CountPayload {
    case: CaseTag,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<u64>,
    /// Row-major in a then b; present under --table.
    #[serde(skip_serializing_if = "Option::is_none")]
    counts: Option<Vec<u64>>,
}

fn run_count(cfg: &RunConfig, args: &CountArgs) -> anyhow::Result<i32> {
    let spec = field_spec(&args.form.field)?;
    let inst = parse_instance(&spec, &args.form)?;
    let closed_ok = inst.case() == CaseTag::Generic || inst.case() == CaseTag::DegenerateDisc;
    let use_closed = match args.method {
        CountMode::Closed => true,
        CountMode::Brute => false,
        CountMode::Auto => closed_ok,
    };
    let method = if use_closed { "closed" } else { "brute" };

    let payload = if args.table {
        if spec.q() > args.brute_max_q {
            bail!(
                "--table materializes q^2 = {} counts; q must be at most --brute-max-q = {}",
                spec.q() * spec.q(),
                args.brute_max_q
            );
        }
        let counts: Vec<u64> = if use_closed {
            count_closed_table(&inst)?.into_iter().map(u64::from).collect()
        } else {
            count_brute_table(&inst, args.brute_max_q)?
        };
        CountPayload {
            case: inst.case(),
            method,
            a: None,
            b: None,
            count: None,
            counts: Some(counts),
        }
    } else {
        let (Some(a), Some(b)) = (args.a, args.b) else {
            bail!("provide --a and --b for a single pair, or --table for all pairs");
        };
        let ea = spec.element(a)?;
        let eb = spec.element(b)?;
        let count = if use_closed {
            u64::from(count_closed(&inst, ea, eb)?)
        } else {
            count_brute_with(&inst, ea, eb, args.brute_max_q)?
        };
        CountPayload {
            case: inst.case(),
            method,
            a: Some(a),
            b: Some(b),
            count: Some(count),
            counts: None,
        }
    };
    emit_json(cfg, &payload)?;
    Ok(0)
}

// -------------------------------------------------------------- capture

#[derive(Serialize)]
struct CapturePayload {
    case: CaseTag,
    set: Vec<u64>,
    captured: bool,
    witness: Option<CaptureWitness>,
}

fn run_capture(cfg: &RunConfig, args: &crate::args::CaptureArgs) -> anyhow::Result<i32> {
    let spec = field_spec(&args.form.field)?;
    let inst = parse_instance(&spec, &args.form)?;
    let set = parse_set(&spec, &args.set)?;
    let witness = capture_witness(&inst, &set)?;
    let payload = CapturePayload {
        case: inst.case(),
        set: args.set.clone(),
        captured: witness.is_some(),
        witness,
    };
    emit_json(cfg, &payload)?;
    Ok(0)
}

// ---------------------------------------------------------------- graph

#[derive(Serialize)]
struct GraphPayload {
    case: CaseTag,
    vertex_count: usize,
    edge_count: u64,
    density: f64,
    /// (q - 1) / 2, the first-order vertex-count prediction.
    expected_vertices: u64,
    vertices: Vec<FieldElement>,
}

fn run_graph(cfg: &RunConfig, args: &crate::args::GraphArgs) -> anyhow::Result<i32> {
    let spec = field_spec(&args.form.field)?;
    let inst = parse_instance(&spec, &args.form)?;
    let graph = CaptureGraph::build_with(&inst, args.max_q)?;
    if args.dimacs {
        let mut buf = Vec::new();
        graph.export_dimacs(&mut buf)?;
        emit(cfg, std::str::from_utf8(&buf)?)?;
    } else {
        let payload = GraphPayload {
            case: inst.case(),
            vertex_count: graph.vertex_count(),
            edge_count: graph.edge_count(),
            density: graph.density(),
            expected_vertices: (spec.q() - 1) / 2,
            vertices: graph.vertices().to_vec(),
        };
        emit_json(cfg, &payload)?;
    }
    Ok(0)
}

// ------------------------------------------------------------------- nq

#[derive(Serialize)]
struct NqPayload {
    case: CaseTag,
    status: NqStatus,
    /// The exact capture number, when certified.
    nq: Option<u64>,
    lo: u64,
    hi: Option<u64>,
    method: Option<CliqueMethod>,
    certified: bool,
    omega: Option<u64>,
    clique: Option<Vec<FieldElement>>,
    vertices: Option<usize>,
    edges: Option<u64>,
    nodes: Option<u64>,
    upper_bound: NqUpperBound,
}

fn run_nq(cfg: &RunConfig, args: &crate::args::NqArgs) -> anyhow::Result<i32> {
    let spec = field_spec(&args.form.field)?;
    let inst = parse_instance(&spec, &args.form)?;
    let bounds = nq_bounds(spec.q());

    let payload = if inst.case() == CaseTag::Generic {
        let graph = CaptureGraph::build_with(&inst, args.max_q)?;
        match args.mode {
            NqMode::Exact => {
                let search =
                    max_clique_with(&graph, &CliqueConfig { node_budget: args.node_budget });
                let certified = search.certified();
                NqPayload {
                    case: inst.case(),
                    status: if certified { NqStatus::Exact } else { NqStatus::LowerBoundOnly },
                    nq: certified.then(|| search.lower as u64 + 1),
                    lo: search.lower as u64 + 1,
                    hi: Some(search.upper as u64 + 1),
                    method: Some(CliqueMethod::Exact),
                    certified,
                    omega: certified.then(|| search.lower as u64),
                    clique: Some(search.result.members),
                    vertices: Some(graph.vertex_count()),
                    edges: Some(graph.edge_count()),
                    nodes: Some(search.nodes),
                    upper_bound: bounds,
                }
            }
            NqMode::Greedy => {
                let clique = greedy_clique(&graph);
                NqPayload {
                    case: inst.case(),
                    status: NqStatus::LowerBoundOnly,
                    nq: None,
                    lo: clique.size() as u64 + 1,
                    hi: None,
                    method: Some(CliqueMethod::Greedy),
                    certified: false,
                    omega: None,
                    clique: Some(clique.members),
                    vertices: Some(graph.vertex_count()),
                    edges: Some(graph.edge_count()),
                    nodes: None,
                    upper_bound: bounds,
                }
            }
            NqMode::Oracle => {
                let value = nq_subset_oracle(&inst)?;
                NqPayload {
                    case: inst.case(),
                    status: NqStatus::Exact,
                    nq: Some(value),
                    lo: value,
                    hi: Some(value),
                    method: Some(CliqueMethod::SubsetOracle),
                    certified: true,
                    omega: Some(value - 1),
                    clique: None,
                    vertices: Some(graph.vertex_count()),
                    edges: Some(graph.edge_count()),
                    nodes: None,
                    upper_bound: bounds,
                }
            }
        }
    } else {
        // The degenerate cases are resolved by formula; --mode applies
        // only to the GENERIC clique route.
        let r = nq_with(&inst, &CliqueConfig { node_budget: args.node_budget })?;
        NqPayload {
            case: r.case,
            status: r.status,
            nq: r.value(),
            lo: r.lo,
            hi: r.hi,
            method: None,
            certified: r.status == NqStatus::Exact,
            omega: None,
            clique: None,
            vertices: None,
            edges: None,
            nodes: None,
            upper_bound: bounds,
        }
    };
    emit_json(cfg, &payload)?;
    Ok(0)
}

// ---------------------------------------------------------------- sweep

fn csv_cell<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

/// Fixed-column CSV; `hi`, `greedy_size`, `vertices`, and `runtime_ms`
/// are empty where the row has no value.
fn sweep_csv(seed: u64, rows: &[SweepRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# formlab nq-sweep version={} seed={seed}",
        env!("CARGO_PKG_VERSION")
    );
    out.push_str(
        "q,p,n,instance,case,status,lo,hi,upper_bound,greedy_size,vertices,runtime_ms\n",
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.q,
            r.p,
            r.n,
            r.instance,
            r.case,
            r.status,
            r.lo,
            csv_cell(&r.hi),
            r.upper_bound,
            csv_cell(&r.greedy_size),
            csv_cell(&r.vertices),
            csv_cell(&r.runtime_ms),
        );
    }
    out
}

fn run_sweep(cfg: &RunConfig, args: &crate::args::SweepArgs) -> anyhow::Result<i32> {
    let sweep_cfg = SweepConfig {
        qmax: args.qmax,
        per_q: args.per_q,
        seed: args.seed,
        clique: CliqueConfig { node_budget: args.node_budget },
        parallel: !args.serial,
        record_runtime: args.timings && !cfg.reproducible,
    };
    let rows = nq_sweep(&sweep_cfg)?;
    match args.format {
        SweepFormat::Csv => emit(cfg, &sweep_csv(args.seed, &rows))?,
        SweepFormat::Json => emit_json(cfg, &rows)?,
    }
    Ok(0)
}

// -------------------------------------------------------------- charsum

fn run_charsum(cfg: &RunConfig, args: &CharsumArgs) -> anyhow::Result<i32> {
    let spec = field_spec(&args.form.field)?;
    let report = match args.experiment {
        Experiment::Vinogradov => run_vinogradov(&spec, args.seed, args.trials)?,
        Experiment::Weil => run_weil(&spec, args.seed, args.trials, args.max_deg)?,
        Experiment::WeilSextic => {
            run_weil_sextic(&parse_instance(&spec, &args.form)?, args.seed, args.trials)?
        }
        Experiment::PairDensity => {
            run_pair_density(&parse_instance(&spec, &args.form)?, args.seed, args.trials)?
        }
        Experiment::GoodVertex => {
            run_good_vertex(&parse_instance(&spec, &args.form)?, args.seed, args.trials, args.c)?
        }
        Experiment::Burgess => run_burgess(&spec, &args.lengths)?,
    };
    emit_json(cfg, &report)?;
    Ok(if report.violations > 0 { 1 } else { 0 })
}

// ------------------------------------------------------------ composite

#[derive(Serialize)]
struct CompositePayload {
    n: u64,
    factors: Vec<(u64, u32)>,
    /// One blocking class per eligible prime factor.
    residues: Vec<BlockingResidue>,
    /// The (prime, residue) classes the emitted set intersects.
    classes: Vec<(u64, u64)>,
    set: Vec<u64>,
    set_len: usize,
    density: f64,
    /// Present under --verify: full-enumeration confirmation.
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

fn parse_classes(ring: &RingSpec, raw: &[String]) -> anyhow::Result<Vec<(u64, u64)>> {
    raw.iter()
        .map(|s| {
            let (p, t) = s
                .split_once(':')
                .with_context(|| format!("--classes entries are PRIME:RESIDUE, got {s:?}"))?;
            let p: u64 = p.parse().with_context(|| format!("bad prime in {s:?}"))?;
            let t: u64 = t.parse().with_context(|| format!("bad residue in {s:?}"))?;
            let _ = ring; // validated by the set builder
            Ok((p, t))
        })
        .collect()
}

fn run_composite(cfg: &RunConfig, args: &CompositeArgs) -> anyhow::Result<i32> {
    let ring = RingSpec::new(args.modulus)?;
    if args.l.len() != 2 {
        bail!("--L takes exactly two comma-separated residues, got {}", args.l.len());
    }
    if args.q.len() != 3 {
        bail!("--Q takes exactly three comma-separated residues, got {}", args.q.len());
    }
    let l = RingLinear::new(&ring, args.l[0], args.l[1])?;
    let qf = RingQuadratic::new(&ring, args.q[0], args.q[1], args.q[2])?;
    let residues = blocking_residues(&ring, &l, &qf)?;

    let (classes, set) = if !args.classes.is_empty() {
        let classes = parse_classes(&ring, &args.classes)?;
        let set = build_blocking_set_multi(&ring, &classes)?;
        (classes, set)
    } else if let Some(first) = residues.first() {
        let set = build_blocking_set(&ring, first.prime, first.residue)?;
        (vec![(first.prime, first.residue)], set)
    } else {
        (Vec::new(), Vec::new())
    };

    let verified = if args.verify {
        Some(verify_no_solutions_with(&ring, &l, &qf, &set, args.max_n)?)
    } else {
        None
    };
    let payload = CompositePayload {
        n: ring.n(),
        factors: ring.factors().to_vec(),
        residues,
        classes,
        set_len: set.len(),
        density: set.len() as f64 / ring.n() as f64,
        set,
        verified,
    };
    emit_json(cfg, &payload)?;
    Ok(if verified == Some(false) { 1 } else { 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_renders_missing_cells_empty() {
        let rows = vec![SweepRow {
            q: 7,
            p: 7,
            n: 1,
            instance: "L=1:1;Q=0:1:0".into(),
            case: CaseTag::Generic,
            status: NqStatus::Exact,
            lo: 3,
            hi: Some(3),
            upper_bound: 6,
            greedy_size: Some(2),
            vertices: Some(3),
            runtime_ms: None,
        }];
        let text = sweep_csv(1, &rows);
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("# formlab nq-sweep version="));
        assert_eq!(
            lines.next().unwrap(),
            "q,p,n,instance,case,status,lo,hi,upper_bound,greedy_size,vertices,runtime_ms"
        );
        assert_eq!(lines.next().unwrap(), "7,7,1,L=1:1;Q=0:1:0,GENERIC,EXACT,3,3,6,2,3,");
        assert_eq!(lines.next(), None);
    }
}
