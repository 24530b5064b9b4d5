//! The ring layer against the field layer.  A prime modulus makes Z_N a
//! field, so the residue search must agree with the per-element capture
//! test; composite moduli must honor the CRT size law.

use formlab_core::composite::{
    blocking_residues, build_blocking_set, build_blocking_set_multi, verify_no_solutions,
    RingLinear, RingQuadratic, RingSpec,
};
use formlab_core::counting::{capture_exists, CaptureInstance, CaseTag};
use formlab_core::field::FieldSpec;
use formlab_core::forms::reduce;
use formlab_core::instances::{corpus, InstanceFilter};

const SEED: u64 = 77;

/// Mirror a prime-field instance into Z_p ring forms.
fn ring_forms(inst: &CaptureInstance) -> (RingSpec, RingLinear, RingQuadratic) {
    let ring = RingSpec::new(inst.spec().p()).unwrap();
    let l = inst.linear();
    let q = inst.quadratic();
    let rl = RingLinear::new(&ring, l.x.index(), l.y.index()).unwrap();
    let rq = RingQuadratic::new(&ring, q.xx.index(), q.xy.index(), q.yy.index()).unwrap();
    (ring, rl, rq)
}

/// Over a prime modulus the residue search finds exactly the smallest
/// element whose singleton is capture-free, whenever the reduction has
/// an invertible quadratic part.
#[test]
fn prime_modulus_agrees_with_the_field_layer() {
    for p in [3u64, 5, 7, 11, 13] {
        let spec = FieldSpec::new(p, 1).unwrap();
        for inst in corpus(&spec, SEED, 8, InstanceFilter::Any) {
            // Over a prime field one linear coefficient is always
            // nonzero, so the ring pivot always exists.
            let (ring, rl, rq) = ring_forms(&inst);
            let residues = blocking_residues(&ring, &rl, &rq).unwrap();
            let field_singleton = spec
                .elements()
                .find(|&a| !capture_exists(&inst, &[a]).unwrap());
            match inst.case() {
                CaseTag::Generic | CaseTag::DegenerateDisc => {
                    match (residues.first(), field_singleton) {
                        (Some(res), Some(a)) => {
                            assert_eq!(res.prime, p);
                            assert_eq!(res.residue, a.index(), "q = {p}");
                            // And the certificate data matches the
                            // field-side reduction.
                            let red = reduce(&spec, inst.linear(), inst.quadratic());
                            if !res.swapped {
                                assert_eq!(res.r, red.r.index());
                                assert_eq!(res.d, red.d.index());
                            }
                        }
                        (None, None) => {}
                        (got, want) => {
                            panic!("q = {p}: ring found {got:?}, field found {want:?}")
                        }
                    }
                }
                // r = 0 mod p: the ring route declines these primes.
                CaseTag::LDivides | CaseTag::LSquared => {
                    assert!(residues.is_empty(), "q = {p}, case {:?}", inst.case());
                }
            }
        }
    }
}

/// Singleton residue classes over a prime modulus really block: the
/// exhaustive ring verifier agrees with the character certificate.
#[test]
fn prime_modulus_classes_survive_exhaustive_verification() {
    for p in [5u64, 7, 11, 13] {
        let spec = FieldSpec::new(p, 1).unwrap();
        for inst in corpus(&spec, SEED + 1, 6, InstanceFilter::Generic) {
            let (ring, rl, rq) = ring_forms(&inst);
            for res in blocking_residues(&ring, &rl, &rq).unwrap() {
                let set = build_blocking_set(&ring, res.prime, res.residue).unwrap();
                assert_eq!(set, vec![res.residue]);
                assert!(verify_no_solutions(&ring, &rl, &rq, &set).unwrap());
            }
        }
    }
}

/// CRT intersections across several primes: one class per prime, the
/// intersection has N / prod(p_i) elements, and it verifies.
#[test]
fn multi_prime_intersections_follow_the_crt_size_law() {
    for n in [45u64, 105, 315] {
        let ring = RingSpec::new(n).unwrap();
        let rl = RingLinear::new(&ring, 1, 1).unwrap();
        let rq = RingQuadratic::new(&ring, 0, 1, 0).unwrap();
        let residues = blocking_residues(&ring, &rl, &rq).unwrap();
        // One residue per distinct prime; this instance admits one for
        // every prime of each modulus here.
        let classes: Vec<(u64, u64)> =
            residues.iter().map(|r| (r.prime, r.residue)).collect();
        assert_eq!(classes.len(), ring.factors().len(), "N = {n}");
        let set = build_blocking_set_multi(&ring, &classes).unwrap();
        let product: u64 = classes.iter().map(|&(p, _)| p).product();
        assert_eq!(set.len() as u64, n / product, "N = {n}");
        if n <= 105 {
            assert!(verify_no_solutions(&ring, &rl, &rq, &set).unwrap());
        }
        // Each single class contains the intersection.
        for &(p, t) in &classes {
            let single = build_blocking_set(&ring, p, t).unwrap();
            assert!(set.iter().all(|a| single.contains(a)));
        }
    }
}

/// Repeating a prime with two different residues empties the
/// intersection; repeating it with the same residue is idempotent.
#[test]
fn repeated_primes_intersect_as_sets() {
    let ring = RingSpec::new(45).unwrap();
    let both = build_blocking_set_multi(&ring, &[(3, 2), (3, 1)]).unwrap();
    assert!(both.is_empty());
    let same = build_blocking_set_multi(&ring, &[(3, 2), (3, 2)]).unwrap();
    let once = build_blocking_set(&ring, 3, 2).unwrap();
    assert_eq!(same, once);
}
