use std::sync::Arc;

use dgk_core::dg::ops::{check_shift_identification, opposite_module, to_opposite};
use dgk_core::dg::*;
use dgk_core::exactlin::{Field, Matrix, PrimeField, Rationals};
use dgk_core::genlab::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

/// `K --1--> K` in degrees `lo, lo + 1` over the ground field.
fn identity_complex<F: Field>(f: F, side: Side, lo: Degree) -> DGModule<F> {
    let a = Arc::new(ground(f));
    DGModule::from_fn(
        side,
        a,
        (lo, lo + 1),
        vec![1, 1],
        |i| {
            if i == lo {
                Matrix::identity(f, 1)
            } else {
                Matrix::zeros(f, 0, 1)
            }
        },
        |_, _| Matrix::identity(f, 1),
    )
    .unwrap()
}

#[test]
fn example_algebras_validate() {
    assert!(validate_algebra(&ground(f101())).is_valid());
    assert!(validate_algebra(&make_exterior(f101())).is_valid());
    assert!(validate_algebra(&contractible(Rationals)).is_valid());
}

#[test]
fn regular_modules_validate_on_both_sides() {
    for name in ALGEBRA_FAMILIES {
        let a = Arc::new(algebra_family(f101(), name).unwrap());
        for side in [Side::Left, Side::Right] {
            assert!(
                validate_module(&DGModule::regular(a.clone(), side)).is_valid(),
                "{name} {side:?}"
            );
        }
    }
}

#[test]
fn leibniz_sign_error_is_located() {
    let f = f101();
    let a = Arc::new(contractible(f));
    let m = DGModule::regular(a.clone(), Side::Left);
    // flip the action of A^{-1} on M^0
    let broken = DGModule::from_fn(
        Side::Left,
        a,
        m.window(),
        m.dims().to_vec(),
        |i| m.diff(i),
        |i, j| {
            let t = m.action_table(i, j);
            if i == 0 && j == -1 {
                t.neg()
            } else {
                t
            }
        },
    )
    .unwrap();
    let rep = validate_module(&broken);
    assert!(!rep.is_valid());
    let v = rep
        .violations
        .iter()
        .find(|v| v.axiom == Axiom::Leibniz)
        .expect("Leibniz violation");
    assert_eq!(v.degrees[0], -1, "{v}");
}

#[test]
fn h0_ring_examples() {
    assert_eq!(h0_ring(&ground(f101())).dim(), 1);
    assert_eq!(h0_ring(&make_exterior(f101())).dim(), 1);
    assert_eq!(h0_ring(&contractible(f101())).dim(), 0);
    let ut = h0_ring(&upper_triangular(Rationals));
    assert_eq!(ut.dim(), 3);
    assert!(ut.ring().is_associative_unital());
}

#[test]
fn cohomology_examples() {
    let f = f101();
    let c = identity_complex(f, Side::Left, -1);
    assert_eq!(CohomologySpace::of(&c, 0).dim(), 0);
    assert_eq!(CohomologySpace::of(&c, -1).dim(), 0);

    let a = Arc::new(make_exterior(f));
    let lam = DGModule::regular(a.clone(), Side::Right);
    let h0 = h0_ring(&a);
    assert_eq!(cohomology(&lam, 0, &h0).dim(), 1);
    let h1 = cohomology(&lam, -1, &h0);
    assert_eq!(h1.dim(), 1);
    assert!(!f.vec_is_zero(&h1.class_of(&[f.one()]).unwrap()));
    assert_eq!(h1.class_of(&[f.zero()]).unwrap(), vec![f.zero()]);
    assert!(check_h0_action(&lam, &h1, &h0));
}

#[test]
fn class_of_rejects_non_cocycles() {
    let f = f101();
    let c = identity_complex(f, Side::Left, -1);
    assert!(CohomologySpace::of(&c, -1).class_of(&[f.one()]).is_err());
}

#[test]
fn shift_examples() {
    let f = f101();
    let a = Arc::new(ground(f));
    let m = shift(&DGModule::regular(a, Side::Left), 3);
    assert_eq!(m.window(), (-3, -3));
    assert_eq!(shift(&m, 0), m);
    assert_eq!(shift(&m, -3).window(), (0, 0));
    let c = identity_complex(f, Side::Right, -3);
    assert_eq!(shift(&shift(&c, 1), -1), c);
    assert_eq!(shift(&c, -3).window(), (0, 1));
    assert!(validate_module(&shift(&c, -3)).is_valid());
}

#[test]
fn smart_truncation_examples() {
    let f = f101();
    let c = identity_complex(f, Side::Left, 0);
    let (t, _) = smart_truncate(&c, 0);
    assert_eq!(t.total_dim(), 0);
    let a = Arc::new(make_exterior(f));
    let lam = DGModule::regular(a, Side::Left);
    let (t, inc) = smart_truncate(&lam, 0);
    assert_eq!(t.dims(), lam.dims());
    assert!(validate_morphism(&inc).is_valid());
    let (t2, _) = smart_truncate(&t, 0);
    assert_eq!(t2.dims(), t.dims());
}

#[test]
fn opposite_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for name in ["exterior", "upper_triangular_x_exterior", "koszul_like"] {
        let a = Arc::new(algebra_family(f101(), name).unwrap());
        let m = random_module(&a, Side::Right, ModuleBounds::default(), &mut rng).unwrap();
        let op = opposite_module(&m);
        assert!(validate_module(&op).is_valid());
        assert_eq!(to_opposite(&op, a.clone()), m);
    }
}

fn corpus_modules() -> Vec<DGModule<PrimeField>> {
    let profile = CorpusProfile {
        instance_count: 40,
        ..CorpusProfile::default()
    };
    generate_corpus(&profile, f101())
        .unwrap()
        .into_iter()
        .flat_map(|i| [i.m, i.n])
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn cohomology_invariants_and_coset_classes(idx in 0usize..80, seed in any::<u64>()) {
        let ms = corpus_modules();
        let m = &ms[idx];
        let f = m.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in m.lo()..=m.hi() {
            prop_assert!(m.diff(i + 1).mul(&m.diff(i)).is_zero());
            let h = CohomologySpace::of(m, i);
            prop_assert!(h.check_invariants());
            for c in 0..h.dim() {
                let z = h.representative_of(&f.unit_vector(h.dim(), c));
                for _ in 0..20 {
                    let w = f.sample_vec(&mut rng, m.dim(i - 1));
                    let z2 = f.vec_add(&z, &m.diff(i - 1).mul_vec(&w));
                    prop_assert_eq!(h.class_of(&z2).unwrap(), f.unit_vector(h.dim(), c));
                }
            }
        }
    }

    #[test]
    fn shift_and_truncation_properties(idx in 0usize..80, k in -3i32..=3) {
        let ms = corpus_modules();
        let m = &ms[idx];
        let s = shift(m, k);
        prop_assert!(validate_module(&s).is_valid());
        for i in m.lo() - k..=m.hi() - k {
            prop_assert!(check_shift_identification(m, k, i).is_ok());
        }
        let j = m.hi() - 1;
        let (t, inc) = smart_truncate(m, j);
        prop_assert!(validate_module(&t).is_valid());
        prop_assert!(validate_morphism(&inc).is_valid());
        for i in m.lo()..=j {
            prop_assert_eq!(CohomologySpace::of(&t, i).dim(), CohomologySpace::of(m, i).dim());
        }
        let (t2, _) = smart_truncate(&t, j);
        prop_assert_eq!(t2.dims(), t.dims());
    }
}
