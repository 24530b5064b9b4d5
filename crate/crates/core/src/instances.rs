//! Instance construction: the canonical pair and seeded random corpora.
//!
//! The canonical instance L = X + Y, Q = XY is the running example used
//! throughout the crate's tests and the default subject of the
//! command-line experiments: its reduction is nondegenerate over every
//! odd field, so it exercises the GENERIC machinery end to end.
//!
//! Random instances are drawn by rejection sampling against a
//! [`InstanceFilter`], and corpora are seeded per field as
//! `SplitMix64::mix(seed, q)`: runs with the same seed agree across
//! processes, while different fields get decorrelated streams.

use crate::counting::{CaptureInstance, CaseTag};
use crate::field::FieldSpec;
use crate::forms::{LinearForm, QuadraticForm};
use crate::rng::SplitMix64;
use serde::Serialize;

/// Which instances a random draw may return.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum InstanceFilter {
    /// Any valid pair of nonzero forms.
    Any,
    /// Reject L | Q, keeping the closed count formula applicable.
    NonzeroR,
    /// Keep only the GENERIC case (r != 0 and D != 0).
    Generic,
}

impl InstanceFilter {
    fn admits(&self, inst: &CaptureInstance) -> bool {
        match self {
            InstanceFilter::Any => true,
            InstanceFilter::NonzeroR => inst.reduced().r != inst.spec().zero(),
            InstanceFilter::Generic => inst.case() == CaseTag::Generic,
        }
    }
}

impl std::fmt::Display for InstanceFilter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            InstanceFilter::Any => "ANY",
            InstanceFilter::NonzeroR => "NONZERO_R",
            InstanceFilter::Generic => "GENERIC",
        })
    }
}

/// The canonical instance L = X + Y, Q = XY over the given field.
pub fn canonical(spec: &FieldSpec) -> CaptureInstance {
    let l = LinearForm::new(spec, spec.one(), spec.one()).expect("nonzero by construction");
    let q = QuadraticForm::new(spec, spec.zero(), spec.one(), spec.zero())
        .expect("nonzero by construction");
    CaptureInstance::new(spec.clone(), l, q)
}

/// One uniform instance passing `filter`, by rejection sampling.  Every
/// draw consumes a variable but seed-determined amount of the stream.
pub fn random_instance(
    spec: &FieldSpec,
    rng: &mut SplitMix64,
    filter: InstanceFilter,
) -> CaptureInstance {
    let q = spec.q();
    loop {
        let lx = rng.below(q);
        let ly = rng.below(q);
        if lx == 0 && ly == 0 {
            continue;
        }
        let qxx = rng.below(q);
        let qxy = rng.below(q);
        let qyy = rng.below(q);
        if qxx == 0 && qxy == 0 && qyy == 0 {
            continue;
        }
        let l = LinearForm::new(spec, spec.element(lx).unwrap(), spec.element(ly).unwrap())
            .expect("checked nonzero");
        let qf = QuadraticForm::new(
            spec,
            spec.element(qxx).unwrap(),
            spec.element(qxy).unwrap(),
            spec.element(qyy).unwrap(),
        )
        .expect("checked nonzero");
        let inst = CaptureInstance::new(spec.clone(), l, qf);
        if filter.admits(&inst) {
            return inst;
        }
    }
}

/// A reproducible batch of instances for one field: the stream is
/// seeded as `mix(seed, q)` so corpora over different fields are
/// independent while a fixed seed pins every draw.
pub fn corpus(
    spec: &FieldSpec,
    seed: u64,
    count: usize,
    filter: InstanceFilter,
) -> Vec<CaptureInstance> {
    let mut rng = SplitMix64::new(SplitMix64::mix(seed, spec.q()));
    (0..count).map(|_| random_instance(spec, &mut rng, filter)).collect()
}
