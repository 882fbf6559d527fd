use std::sync::Arc;

use dgk_core::dg::{shift, DGModule, Side, StrictMorphism};
use dgk_core::exactlin::{Field, Matrix, PrimeField, Rationals};
use dgk_core::genlab::*;
use dgk_core::kunneth::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

fn regular_pair<F: Field>(a: dgk_core::dg::DGAlgebra<F>) -> (DGModule<F>, DGModule<F>) {
    let a = Arc::new(a);
    (
        DGModule::regular(a.clone(), Side::Right),
        DGModule::regular(a, Side::Left),
    )
}

fn assert_all_pass<F: Field>(w: &KunnethWitness<F>) {
    for c in &w.evidence.checks {
        assert!(c.passed, "{c}");
    }
}

#[test]
fn ground_field_gives_identity() {
    let (m, n) = regular_pair(ground(f101()));
    let w = theta(&m, &n).unwrap();
    assert_all_pass(&w);
    assert_eq!(w.theta, Matrix::identity(f101(), 1));
}

#[test]
fn exterior_algebra_regular_modules() {
    let (m, n) = regular_pair(make_exterior(Rationals));
    let w = theta(&m, &n).unwrap();
    assert_all_pass(&w);
    assert_eq!(w.source.dim(), 1);
    assert_eq!(w.target.dim(), 1);
    assert!(w.is_bijective());
}

#[test]
fn vanishing_top_cohomology_gives_empty_map() {
    let (m, n) = regular_pair(contractible(f101()));
    let w = theta(&m, &n).unwrap();
    assert_all_pass(&w);
    assert_eq!(w.theta.shape(), (0, 0));
    assert!(w.is_bijective());
}

#[test]
fn odd_tops_agree_with_direct_computation() {
    for k in [-1, -2, 1] {
        for l in [-1, 0, 3] {
            let (m, n) = regular_pair(tensor_algebras(&make_exterior(f101()), &dual_numbers(f101())));
            let (m, n) = (shift(&m, k), shift(&n, l));
            let w = theta(&m, &n).unwrap();
            assert_eq!((w.i0, w.j0), (-k, -l));
            assert_all_pass(&w);
            assert_eq!(w.theta, theta_at(&w), "shifts {k}, {l}");
        }
    }
}

#[test]
fn module_above_requested_top_is_rejected() {
    let (m, n) = regular_pair(make_exterior(f101()));
    assert!(matches!(
        theta_with_tops(&m, &n, -1, 0),
        Err(KunnethError::AboveTop { .. })
    ));
}

fn corpus_checks<F: Field>(field: F, count: usize) {
    let profile = CorpusProfile {
        field: field.spec(),
        instance_count: count,
        ..CorpusProfile::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for inst in generate_corpus(&profile, field).unwrap() {
        let w = theta(&inst.m, &inst.n).unwrap();
        assert_all_pass(&w);
        assert!(w.is_bijective(), "{}", inst.label());
        assert_eq!(w.theta, theta_at(&w), "{}", inst.label());
        for c in check_exact_sequences(&w).checks {
            assert!(c.passed, "{}: {c}", inst.label());
        }
        let c = check_representative_independence(&w, 20, &mut rng);
        assert!(c.passed, "{}: {c}", inst.label());
    }
}

#[test]
fn corpus_prime_field() {
    corpus_checks(f101(), 40);
}

#[test]
fn corpus_rationals() {
    corpus_checks(Rationals, 25);
}

#[test]
fn naturality_for_random_morphisms() {
    let f = f101();
    let profile = CorpusProfile {
        instance_count: 20,
        ..CorpusProfile::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut squares = 0;
    for inst in generate_corpus(&profile, f).unwrap() {
        let m2 = random_target(&inst.m, profile.bounds(), &mut rng).unwrap();
        let n2 = random_target(&inst.n, profile.bounds(), &mut rng).unwrap();
        let fm = random_morphism(&inst.m, &m2, &mut rng);
        let gn = random_morphism(&inst.n, &n2, &mut rng);
        let zero = StrictMorphism::zero(&inst.n, &n2).unwrap();
        let m3 = random_target(&m2, profile.bounds(), &mut rng).unwrap();
        let composite = fm.then(&random_morphism(&m2, &m3, &mut rng)).unwrap();
        for (a, b) in [(&fm, &gn), (&fm, &zero), (&composite, &gn)] {
            let c = check_functoriality(a, b).unwrap();
            assert!(c.passed, "{}: {c}", inst.label());
            squares += 1;
        }
    }
    assert_eq!(squares, 60);
}

#[test]
fn corrupted_theta_is_caught() {
    let (m, n) = regular_pair(make_exterior(f101()));
    let mut w = theta(&m, &n).unwrap();
    w.theta = Matrix::zeros(f101(), 1, 1);
    assert!(!check_defining_property(&w, 4, 1).passed);
}

#[test]
fn right_exactness_detects_missing_surjectivity() {
    let f = f101();
    let zero = Matrix::zeros(f, 1, 1);
    assert!(!check_right_exact("x", &zero, &zero).passed);
    let id = Matrix::identity(f, 1);
    assert!(check_right_exact("x", &zero, &id).passed);
    assert!(!check_right_exact("x", &id, &id).passed);
}
