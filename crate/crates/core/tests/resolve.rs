use std::sync::Arc;

use dgk_core::dg::ops::{generated_submodule, quotient_module};
use dgk_core::dg::{validate_module, Cochain, CohomologySpace, DGAlgebra, DGModule, Side, StrictMorphism};
use dgk_core::exactlin::{Field, PrimeField, Rationals};
use dgk_core::genlab::*;
use dgk_core::kunneth::theta;
use dgk_core::resolve::*;
use dgk_core::tensor::{tensor_over_algebra, tensor_over_ring, RingActions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

/// The residue field of `A` (basis `1, t, ...`), killing everything but 1.
fn residue<F: Field>(a: &Arc<DGAlgebra<F>>, side: Side) -> DGModule<F> {
    let f = a.field();
    let reg = DGModule::regular(a.clone(), side);
    let gens: Vec<_> = (1..a.dim(0)).map(|k| (0, f.unit_vector(a.dim(0), k))).collect();
    let span = generated_submodule(&reg, &gens);
    quotient_module(&reg, &span).unwrap().0
}

#[test]
fn dual_numbers_periodic_resolution() {
    let f = f101();
    let a = Arc::new(dual_numbers(f));
    let k = residue(&a, Side::Right);
    assert_eq!(k.dims(), &[1]);
    let res = semifree_resolve(&k, ResolveOptions::new(3)).unwrap();
    assert_eq!(res.p.generator_degrees(), &[0, -1, -2, -3]);
    for i in 1..4 {
        // d(g_i) = c . g_{i-1} t with c != 0; in degree 1 - i the basis is
        // (g_{i-1}.1, g_{i-1}.t, g_{i-2}.t... ) restricted to A^0 blocks
        let b = res.p.boundary(i);
        let off = res.p.offset(1 - i as i32, i - 1);
        assert!(f.is_zero(&b[off]), "no unit component");
        assert!(!f.is_zero(&b[off + 1]), "t component");
        assert_eq!(b.iter().filter(|x| !f.is_zero(x)).count(), 1);
    }
    assert!(res.check_invariants().all_passed());
    assert!(validate_module(&res.p_module()).is_valid());
}

#[test]
fn dual_numbers_derived_tensor_and_negative_control() {
    let f = f101();
    let a = Arc::new(dual_numbers(f));
    let (m, n) = (residue(&a, Side::Right), residue(&a, Side::Left));
    // k ⊗_A k through the ordinary ring A^0
    let plain = tensor_over_ring(f, &RingActions::degree_zero(&m, 0), &RingActions::degree_zero(&n, 0)).unwrap();
    assert_eq!(plain.dim(), 1);
    let top = derived_tensor_top(&m, &n).unwrap();
    assert_eq!(top.dim(), 1);
    let h1 = derived_tensor_cohomology(&m, &n, -1, ResolveOptions::new(3)).unwrap();
    assert_eq!(h1.dim(), 1, "Tor_1 is one-dimensional");
    let w = theta_der(&m, &n).unwrap();
    assert!(w.evidence.all_passed(), "{:?}", w.evidence.first_failure());
    assert_eq!(w.theta_der.shape(), (1, 1));
    let c = check_depth_stabilization(&m, &n, &[3, 4], None).unwrap();
    assert!(c.passed, "{c}");
}

#[test]
fn acyclic_module_has_empty_resolution() {
    let a = Arc::new(contractible(f101()));
    let m = DGModule::regular(a, Side::Right);
    for d in 1..4 {
        let res = semifree_resolve(&m, ResolveOptions::new(d)).unwrap();
        assert!(res.is_empty());
        assert_eq!(res.sup, None);
    }
}

#[test]
fn free_module_resolves_by_itself() {
    let a = Arc::new(make_exterior(Rationals));
    let m = DGModule::regular(a.clone(), Side::Right);
    let res = semifree_resolve(&m, ResolveOptions::new(3)).unwrap();
    assert_eq!(res.p.generator_degrees(), &[0]);
    for k in [-1, 0] {
        assert!(res.rho(k).is_invertible());
    }
    let n = DGModule::regular(a, Side::Left);
    let w = theta_der(&m, &n).unwrap();
    assert!(w.evidence.all_passed(), "{:?}", w.evidence.first_failure());
    let plain = theta(&m, &n).unwrap();
    assert_eq!(w.composite().unwrap(), plain.theta);
    assert_eq!(w.theta_der.shape(), plain.theta.shape());
}

#[test]
fn ground_field_agrees_with_plain_map() {
    let a = Arc::new(ground(f101()));
    let m = DGModule::regular(a.clone(), Side::Right);
    let n = DGModule::regular(a, Side::Left);
    let w = theta_der(&m, &n).unwrap();
    assert!(w.evidence.all_passed());
    assert_eq!(w.composite().unwrap(), theta(&m, &n).unwrap().theta);
}

#[test]
fn generator_cap_is_reported() {
    let a = Arc::new(dual_numbers(f101()));
    let m = residue(&a, Side::Right);
    let m2 = dgk_core::dg::direct_sum(&m, &m).unwrap();
    let opts = ResolveOptions {
        cap: 1,
        ..ResolveOptions::new(2)
    };
    assert!(matches!(
        semifree_resolve(&m2, opts),
        Err(ResolveError::GeneratorCap { cap: 1, .. })
    ));
}

#[test]
fn left_modules_are_rejected() {
    let a = Arc::new(dual_numbers(f101()));
    let n = residue(&a, Side::Left);
    assert_eq!(
        semifree_resolve(&n, ResolveOptions::new(2)),
        Err(ResolveError::NotRightModule)
    );
    assert_eq!(
        semifree_resolve(&residue(&a, Side::Right), ResolveOptions::new(0)),
        Err(ResolveError::ZeroDepth)
    );
}

/// The presentation `⊕ g ⊗ N` against the general tensor product of the
/// module `P` with `N`.
#[test]
fn semifree_tensor_matches_general_tensor_product() {
    let f = f101();
    let profile = CorpusProfile {
        instance_count: 12,
        max_per_degree_dim: 2,
        degree_span: 2,
        ..CorpusProfile::default()
    };
    for inst in generate_corpus(&profile, f).unwrap() {
        let res = semifree_resolve(&inst.m, ResolveOptions::new(2)).unwrap();
        let p = res.p_module();
        let general = tensor_over_algebra(&p, &inst.n).unwrap();
        let sf = SemiFreeTensor::new(&res.p, &inst.n);
        let t = inst.m.hi() + inst.n.hi();
        for k in [t - 1, t] {
            assert_eq!(sf.dim(k), general.dim(k), "{} degree {k}", inst.label());
            assert_eq!(
                CohomologySpace::of(&sf, k).dim(),
                CohomologySpace::of(&general, k).dim(),
                "{} degree {k}",
                inst.label()
            );
        }
        assert!(sf.differential(t).mul(&sf.differential(t - 1)).is_zero());
    }
}

fn corpus_isomorphism<F: Field>(field: F, count: usize) {
    let profile = CorpusProfile {
        field: field.spec(),
        instance_count: count,
        ..CorpusProfile::default()
    };
    for inst in generate_corpus(&profile, field).unwrap() {
        let w = theta_der(&inst.m, &inst.n).unwrap();
        assert!(
            w.evidence.all_passed(),
            "{}: {:?}",
            inst.label(),
            w.evidence.first_failure()
        );
        let b = default_depth(&inst.n, inst.n.hi());
        let c = check_depth_stabilization(&inst.m, &inst.n, &[b, b + 1, b + 2], None).unwrap();
        assert!(c.passed, "{}: {c}", inst.label());
        let c = check_resolution_independence(&inst.m, &inst.n, b, (1, 2)).unwrap();
        assert!(c.passed, "{}: {c}", inst.label());
    }
}

#[test]
fn corpus_prime_field() {
    corpus_isomorphism(f101(), 30);
}

#[test]
fn corpus_rationals() {
    corpus_isomorphism(Rationals, 12);
}

#[test]
fn seeded_resolutions_are_valid_and_differ() {
    let f = f101();
    let a = Arc::new(dual_numbers(f));
    let m = residue(&a, Side::Right);
    let r0 = semifree_resolve(&m, ResolveOptions::new(3)).unwrap();
    let r1 = semifree_resolve(&m, ResolveOptions::new(3).with_seed(Some(9))).unwrap();
    let r1b = semifree_resolve(&m, ResolveOptions::new(3).with_seed(Some(9))).unwrap();
    assert_eq!(r1, r1b);
    assert_ne!(r0, r1);
    assert!(r1.check_invariants().all_passed());
}

#[test]
fn naturality_of_theta_der() {
    let f = f101();
    let profile = CorpusProfile {
        instance_count: 15,
        ..CorpusProfile::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for inst in generate_corpus(&profile, f).unwrap() {
        let m2 = random_target(&inst.m, profile.bounds(), &mut rng).unwrap();
        let n2 = random_target(&inst.n, profile.bounds(), &mut rng).unwrap();
        let fm = random_morphism(&inst.m, &m2, &mut rng);
        let gn = random_morphism(&inst.n, &n2, &mut rng);
        let zero = StrictMorphism::zero(&inst.m, &m2).unwrap();
        let id = StrictMorphism::identity(&inst.n);
        for (a, b) in [(&fm, &gn), (&zero, &gn), (&StrictMorphism::identity(&inst.m), &id)] {
            let c = check_theta_der_functoriality(a, b, None).unwrap();
            assert!(c.passed, "{}: {c}", inst.label());
        }
    }
}

#[test]
fn residue_module_matches_hand_built_quotient() {
    let a = Arc::new(dual_numbers(Rationals));
    for side in [Side::Left, Side::Right] {
        let lib = residue_module(&a, side).unwrap();
        assert_eq!(lib, residue(&a, side));
        assert!(validate_module(&lib).is_valid());
    }
}
