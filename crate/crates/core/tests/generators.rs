use std::sync::Arc;

use dgk_core::dg::{validate_algebra, validate_module, validate_morphism, DGModule, Side, StrictMorphism};
use dgk_core::exactlin::{Field, PrimeField, Rationals};
use dgk_core::genlab::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

#[test]
fn every_algebra_family_validates() {
    for name in ALGEBRA_FAMILIES {
        let a = algebra_family(f101(), name).unwrap();
        let rep = validate_algebra(&a);
        assert!(rep.is_valid(), "{name}: {:?}", rep.violations.first());
        let q = algebra_family(Rationals, name).unwrap();
        assert!(validate_algebra(&q).is_valid(), "{name} over Q");
    }
}

#[test]
fn exterior_shapes_match_over_both_fields() {
    assert_eq!(make_exterior(f101()).dims(), &[1, 1]);
    assert_eq!(make_exterior(Rationals).dims(), &[1, 1]);
    assert_eq!(dual_numbers(f101()).dims(), &[2]);
    let ut = upper_triangular(f101());
    assert_eq!(ut.dims(), &[3]);
    assert!(!ut.degree_zero_ring().is_commutative());
}

#[test]
fn broken_structure_constants_are_rejected() {
    let f = f101();
    // t * t = 1 + t is associative, but make 1 fail to be a unit
    let mult = dgk_core::exactlin::Matrix::from_i64(f, 2, 4, &[1, 0, 0, 1, 0, 1, 0, 0]);
    assert!(make_ordinary(f, 2, mult, f.unit_vector(2, 0)).is_err());
}

#[test]
fn fifty_random_modules_over_the_exterior_algebra_validate() {
    let a = Arc::new(make_exterior(f101()));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..50 {
        let side = if k % 2 == 0 { Side::Right } else { Side::Left };
        let m = random_module(&a, side, ModuleBounds::default(), &mut rng).unwrap();
        assert!(fits(&m, ModuleBounds::default()));
        let rep = validate_module(&m);
        assert!(rep.is_valid(), "module {k}: {:?}", rep.violations.first());
    }
}

#[test]
fn random_modules_over_every_family_validate_on_both_sides() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in ALGEBRA_FAMILIES {
        let a = Arc::new(algebra_family(f101(), name).unwrap());
        for side in [Side::Right, Side::Left] {
            for _ in 0..4 {
                let m = random_module(&a, side, ModuleBounds::default(), &mut rng).unwrap();
                let rep = validate_module(&m);
                assert!(rep.is_valid(), "{name} {side:?}: {:?}", rep.violations.first());
            }
        }
    }
}

#[test]
fn random_morphisms_are_strict() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for name in ["dual_numbers", "exterior", "upper_triangular_x_exterior"] {
        let a = Arc::new(algebra_family(f101(), name).unwrap());
        for _ in 0..4 {
            let m = random_module(&a, Side::Right, ModuleBounds::default(), &mut rng).unwrap();
            let t = random_target(&m, ModuleBounds::default(), &mut rng).unwrap();
            assert!(validate_module(&t).is_valid());
            let g = random_morphism(&m, &t, &mut rng);
            assert!(validate_morphism(&g).is_valid(), "{name}");
        }
    }
}

#[test]
fn cone_of_identity_is_acyclic() {
    let a = Arc::new(make_koszul_like(f101(), 2));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let m = random_module(&a, Side::Right, ModuleBounds::default(), &mut rng).unwrap();
    let cone = dgk_core::dg::mapping_cone(&StrictMorphism::identity(&m));
    assert!(validate_module(&cone).is_valid());
    for i in cone.lo()..=cone.hi() {
        assert_eq!(dgk_core::dg::CohomologySpace::of(&cone, i).dim(), 0, "degree {i}");
    }
}

#[test]
fn direct_sum_dimensions_add() {
    let a = Arc::new(make_exterior(f101()));
    let m = DGModule::regular(a.clone(), Side::Left);
    let s = dgk_core::dg::direct_sum(&m, &m).unwrap();
    assert_eq!(s.dims(), &[2, 2]);
    assert!(validate_module(&s).is_valid());
}

#[test]
fn corpus_generation_is_deterministic_and_valid() {
    let profile = CorpusProfile {
        instance_count: 24,
        ..CorpusProfile::default()
    };
    let c1 = generate_corpus(&profile, f101()).unwrap();
    let c2 = generate_corpus(&profile, f101()).unwrap();
    for (x, y) in c1.iter().zip(&c2) {
        assert_eq!(x.m, y.m);
        assert_eq!(x.n, y.n);
        assert!(validate_module(&x.m).is_valid(), "{}", x.label());
        assert!(validate_module(&x.n).is_valid(), "{}", x.label());
    }
}

#[test]
fn zero_instance_profile_is_rejected() {
    let profile = CorpusProfile {
        instance_count: 0,
        ..CorpusProfile::default()
    };
    assert!(matches!(
        generate_corpus(&profile, f101()),
        Err(GenError::BadProfile(_))
    ));
}
