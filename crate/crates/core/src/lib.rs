//! Capture numbers over odd finite fields.
//!
//! For a linear form `L` and a quadratic form `Q` in two variables over
//! `F_q` (q odd), the capture number `N_q(L, Q)` is the least `k` such that
//! every subset `A` of `F_q` with `|A| >= k` contains both `L(x, y)` and
//! `Q(x, y)` for some point `(x, y)`.  This crate computes `N_q` exactly
//! where feasible and produces certified bounds otherwise:
//!
//! * [`field`] — arithmetic in `GF(p^n)` with a canonical modulus and the
//!   quadratic character.
//! * [`forms`] — form types and the reduction `Q = t*L^2 + s*L*Y' + r*Y'^2`.
//! * [`counting`] — solution counts for `{L = a, Q = b}`, capture tests,
//!   case classification, and half-density blocking sets.
//! * [`graph`] — the capture graph whose cliques are exactly the
//!   capture-free subsets, plus DIMACS export.
//! * [`clique`] — greedy and exact clique search, `N_q` evaluation, the
//!   small-`q` subset oracle, and the `2*sqrt(q) + 1` upper bound.
//! * [`charsum`] — character-sum instruments: complete-sum bounds,
//!   square-root cancellation checks, pair-density and max-degree
//!   experiments, short-interval probes.
//! * [`composite`] — blocking progressions modulo odd composite `N`.
//! * [`instances`], [`sweep`] — deterministic instance corpora and the
//!   `N_q` sweep over odd prime powers.
//!
//! All randomized procedures take an explicit 64-bit seed and use the
//! documented generator in [`rng`], so every run is reproducible bit for
//! bit.  Exact quantities (counts, character sums) are computed in integer
//! arithmetic; floating point appears only in bounds and ratios.

pub mod bitset;
pub mod charsum;
pub mod clique;
pub mod composite;
pub mod counting;
pub mod error;
pub mod field;
pub mod forms;
pub mod graph;
pub mod instances;
pub mod poly;
pub mod rng;
pub mod sweep;

mod arith;
mod zp_poly;

pub use charsum::ExperimentReport;
pub use clique::{CliqueConfig, CliqueMethod, CliqueResult, NqResult, NqStatus};
pub use counting::{CaptureInstance, CaseTag};
pub use error::{Error, Result};
pub use field::{CharTable, FieldElement, FieldSpec};
pub use forms::{Divisibility, LinearForm, QuadraticForm, ReducedForm};
pub use graph::CaptureGraph;
pub use sweep::{nq_sweep, SweepConfig, SweepRow};
