//! Command-line surface: every flag, default, and subcommand.
//!
//! The parsed [`RunConfig`] doubles as the config echo embedded in each
//! report, so it derives serde both ways and round-trips through JSON.
//! Coefficients travel as element indices (base-p digit encoding over
//! extension fields), the one wire format; `--pretty` adds rendered
//! polynomials next to the indices where a polynomial appears.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

/// Capture numbers, capture graphs, and character-sum experiments over
/// odd finite fields.
#[derive(Parser, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[command(name = "formlab", version, about)]
pub struct RunConfig {
    /// Write the report to this path instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Suppress the timestamp so identical runs emit identical bytes.
    #[arg(long, global = true)]
    pub reproducible: bool,

    /// Worker threads (default: all cores; FORMLAB_THREADS wins if set).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Render polynomials in human-readable form alongside the indices.
    #[arg(long, global = true)]
    pub pretty: bool,

    #[command(subcommand)]
    #[serde(flatten)]
    pub command: Command,
}

#[derive(Subcommand, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Describe GF(p^n): order, canonical modulus, character counts.
    Field(FieldArgs),
    /// Reduce (L, Q) to (r, s, t), with discriminant and case tag.
    Reduce(FormArgs),
    /// Count solutions of {L = a, Q = b}, one pair or the full table.
    Count(CountArgs),
    /// Test a set for capture and report a witness.
    Capture(CaptureArgs),
    /// Build the capture graph; JSON statistics or DIMACS export.
    Graph(GraphArgs),
    /// Compute N_q exactly or bracket it.
    Nq(NqArgs),
    /// Tabulate N_q over every odd prime power up to a ceiling.
    NqSweep(SweepArgs),
    /// Seeded character-sum experiments with exact bound checks.
    Charsum(CharsumArgs),
    /// Blocking residue classes modulo an odd composite.
    Composite(CompositeArgs),
}

impl Command {
    /// Stable name used in report envelopes.
    pub fn name(&self) -> &'static str {
        match self {
            Command::Field(_) => "field",
            Command::Reduce(_) => "reduce",
            Command::Count(_) => "count",
            Command::Capture(_) => "capture",
            Command::Graph(_) => "graph",
            Command::Nq(_) => "nq",
            Command::NqSweep(_) => "nq-sweep",
            Command::Charsum(_) => "charsum",
            Command::Composite(_) => "composite",
        }
    }

    /// The seed a subcommand draws from, zero for deterministic ones.
    pub fn seed(&self) -> u64 {
        match self {
            Command::NqSweep(a) => a.seed,
            Command::Charsum(a) => a.seed,
            _ => 0,
        }
    }
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldArgs {
    /// Field characteristic: an odd prime.
    #[arg(long)]
    pub p: u64,

    /// Extension degree n; the field is GF(p^n).
    #[arg(long, default_value_t = 1)]
    pub n: u32,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub field: FieldArgs,

    /// Linear form coefficients lx,ly as element indices.
    #[arg(long = "L", value_name = "LX,LY", value_delimiter = ',', default_value = "1,1")]
    pub l: Vec<u64>,

    /// Quadratic form coefficients qxx,qxy,qyy as element indices.
    #[arg(long = "Q", value_name = "QXX,QXY,QYY", value_delimiter = ',', default_value = "0,1,0")]
    pub q: Vec<u64>,
}

#[derive(ValueEnum, Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountMode {
    /// Closed form when L does not divide Q, brute force otherwise.
    Auto,
    Closed,
    Brute,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub form: FormArgs,

    /// Target value of L, as an element index (pairs with --b).
    #[arg(long, requires = "b")]
    pub a: Option<u64>,

    /// Target value of Q, as an element index (pairs with --a).
    #[arg(long, requires = "a")]
    pub b: Option<u64>,

    /// Emit all q^2 counts, row-major in a then b.
    #[arg(long, conflicts_with_all = ["a", "b"])]
    pub table: bool,

    #[arg(long, value_enum, default_value_t = CountMode::Auto)]
    pub method: CountMode,

    /// Refuse brute-force counting above this field order.
    #[arg(long, default_value_t = formlab_core::counting::DEFAULT_BRUTE_MAX_Q)]
    pub brute_max_q: u64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaptureArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub form: FormArgs,

    /// The candidate set, as comma-separated element indices.
    #[arg(long, value_name = "A1,A2,...", value_delimiter = ',', required = true)]
    pub set: Vec<u64>,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub form: FormArgs,

    /// Emit the graph in DIMACS format instead of JSON statistics.
    #[arg(long)]
    pub dimacs: bool,

    /// Refuse graph construction above this field order.
    #[arg(long, default_value_t = formlab_core::graph::DEFAULT_GRAPH_MAX_Q)]
    pub max_q: u64,
}

#[derive(ValueEnum, Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NqMode {
    /// Branch-and-bound clique search; exact unless the budget runs out.
    Exact,
    /// Greedy clique only: a lower bound, no certificate.
    Greedy,
    /// Enumerate all 2^q subsets (q <= 13): definitional ground truth.
    Oracle,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NqArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub form: FormArgs,

    /// How to resolve the GENERIC case (degenerate cases ignore this).
    #[arg(long, value_enum, default_value_t = NqMode::Exact)]
    pub mode: NqMode,

    /// Abort the exact search after this many branch-and-bound nodes.
    #[arg(long, default_value_t = formlab_core::clique::DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,

    /// Refuse graph construction above this field order.
    #[arg(long, default_value_t = formlab_core::graph::DEFAULT_GRAPH_MAX_Q)]
    pub max_q: u64,
}

#[derive(ValueEnum, Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepFormat {
    Csv,
    Json,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepArgs {
    /// Sweep every odd prime power q with 3 <= q <= qmax.
    #[arg(long, default_value_t = 199)]
    pub qmax: u64,

    /// Random instances per field, in addition to the canonical one.
    #[arg(long, default_value_t = 2)]
    pub per_q: usize,

    /// Corpus seed.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Output format (CSV is the sweep default).
    #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
    pub format: SweepFormat,

    /// Process fields on one thread (row order is identical either way).
    #[arg(long)]
    pub serial: bool,

    /// Record per-row wall-clock times (ignored under --reproducible).
    #[arg(long)]
    pub timings: bool,

    /// Abort each exact search after this many branch-and-bound nodes.
    #[arg(long, default_value_t = formlab_core::clique::DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
}

#[derive(ValueEnum, Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    /// Double character sum over A x B against 2*sqrt(q*|A|*|B|).
    Vinogradov,
    /// Complete sums of chi(f(x)) against m*sqrt(q), m = radical degree.
    Weil,
    /// The degree-6 common-neighbour family against 6*sqrt(q).
    WeilSextic,
    /// Capture-free pair counts against the quarter-density main term.
    PairDensity,
    /// High-degree vertex existence inside random candidate sets.
    GoodVertex,
    /// Maximum |partial sum| of chi over short initial intervals.
    Burgess,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharsumArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub form: FormArgs,

    #[arg(long, value_enum)]
    pub experiment: Experiment,

    /// Random trials (burgess is deterministic and ignores this).
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Maximum polynomial degree drawn by the weil experiment.
    #[arg(long, default_value_t = formlab_core::charsum::SEXTIC_DEGREE as u64)]
    pub max_deg: u64,

    /// Threshold coefficient for good-vertex: |B| >= c*sqrt(q).
    #[arg(long, default_value_t = formlab_core::charsum::GOOD_VERTEX_DEFAULT_C)]
    pub c: f64,

    /// Interval lengths probed by the burgess experiment.
    #[arg(
        long,
        value_name = "L1,L2,...",
        value_delimiter = ',',
        default_value = "1,2,4,8,16,32,64,128,256,512,1024"
    )]
    pub lengths: Vec<u64>,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompositeArgs {
    /// Ring modulus N: odd, at least 3, typically composite.
    #[arg(long)]
    pub modulus: u64,

    /// Linear form coefficients lx,ly as residues modulo N.
    #[arg(long = "L", value_name = "LX,LY", value_delimiter = ',', default_value = "1,1")]
    pub l: Vec<u64>,

    /// Quadratic form coefficients qxx,qxy,qyy as residues modulo N.
    #[arg(long = "Q", value_name = "QXX,QXY,QYY", value_delimiter = ',', default_value = "0,1,0")]
    pub q: Vec<u64>,

    /// Build the intersection of these prime:residue classes instead of
    /// the first discovered class.
    #[arg(long, value_name = "P:T,P:T,...", value_delimiter = ',')]
    pub classes: Vec<String>,

    /// Confirm the set capture-free by full N^2 enumeration.
    #[arg(long)]
    pub verify: bool,

    /// Refuse verification above this modulus.
    #[arg(long, default_value_t = formlab_core::composite::DEFAULT_RING_MAX_N)]
    pub max_n: u64,
}
