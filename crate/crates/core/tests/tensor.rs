use std::sync::Arc;

use dgk_core::dg::{DGModule, Degree, Side};
use dgk_core::exactlin::{Field, Matrix, PrimeField, Rationals};
use dgk_core::genlab::*;
use dgk_core::tensor::{degree0_iso_check, tensor_over_algebra, tensor_over_ring, RingActions};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

/// `dim (M ⊗_A N)^d` as the free tensor product in total degree `d` modulo
/// the span of `(m.a) ⊗ n - m ⊗ (a.n)` over basis triples.
fn brute_force_dim<F: Field>(m: &DGModule<F>, n: &DGModule<F>, d: Degree) -> usize {
    let f = m.field();
    let a = m.algebra();
    let mut offsets = Vec::new();
    let mut width = 0;
    for p in m.lo()..=m.hi() {
        offsets.push((p, width));
        width += m.dim(p) * n.dim(d - p);
    }
    let offset = |p: Degree| offsets.iter().find(|(q, _)| *q == p).map(|(_, o)| *o);
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for j in a.degrees() {
        for p in m.lo()..=m.hi() {
            let q = d - p - j;
            if n.dim(q) == 0 || m.dim(p) == 0 {
                continue;
            }
            for ka in 0..a.dim(j) {
                let av = f.unit_vector(a.dim(j), ka);
                for km in 0..m.dim(p) {
                    let mv = f.unit_vector(m.dim(p), km);
                    for kn in 0..n.dim(q) {
                        let nv = f.unit_vector(n.dim(q), kn);
                        let mut row = vec![f.zero(); width];
                        if let Some(o) = offset(p + j).filter(|_| m.dim(p + j) > 0) {
                            let ma = m.act(j, &av, p, &mv);
                            for (x, c) in ma.iter().enumerate() {
                                let slot = o + x * n.dim(q) + kn;
                                row[slot] = f.add(&row[slot], c);
                            }
                        }
                        if n.dim(q + j) > 0 {
                            if let Some(o) = offset(p) {
                                let an = n.act(j, &av, q, &nv);
                                for (y, c) in an.iter().enumerate() {
                                    let slot = o + km * n.dim(q + j) + y;
                                    row[slot] = f.sub(&row[slot], c);
                                }
                            }
                        }
                        rows.push(row);
                    }
                }
            }
        }
    }
    let r = rows.len();
    let rel = Matrix::from_vec(f, r, width, rows.into_iter().flatten().collect());
    width - rel.rank()
}

fn random_pair<F: Field>(f: F, family: &str, seed: u64) -> (DGModule<F>, DGModule<F>) {
    let a = Arc::new(algebra_family(f, family).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds = ModuleBounds {
        max_per_degree_dim: 3,
        degree_span: 3,
    };
    let m = random_module(&a, Side::Right, bounds, &mut rng).unwrap();
    let n = random_module(&a, Side::Left, bounds, &mut rng).unwrap();
    (m, n)
}

#[test]
fn exterior_regular_tensor_has_dims_one_one() {
    let a = Arc::new(make_exterior(Rationals));
    let t = tensor_over_algebra(
        &DGModule::regular(a.clone(), Side::Right),
        &DGModule::regular(a.clone(), Side::Left),
    )
    .unwrap();
    assert_eq!((t.dim(-2), t.dim(-1), t.dim(0)), (0, 1, 1));
    assert!(t.check_square_zero());
}

#[test]
fn dual_numbers_over_themselves_and_over_the_residue_field() {
    let f = f101();
    // basis 1, t; t sends 1 to t and t to 0
    let t = Matrix::from_i64(f, 2, 2, &[0, 0, 1, 0]);
    let ring = RingActions::new(2, vec![Matrix::identity(f, 2), t]).unwrap();
    let residue = RingActions::new(1, vec![Matrix::identity(f, 1), Matrix::zeros(f, 1, 1)]).unwrap();
    assert_eq!(tensor_over_ring(f, &ring, &ring).unwrap().dim(), 2);
    assert_eq!(tensor_over_ring(f, &residue, &residue).unwrap().dim(), 1);
    assert_eq!(tensor_over_ring(f, &ring, &residue).unwrap().dim(), 1);
    assert!(tensor_over_ring(f, &ring, &RingActions::new(1, vec![Matrix::identity(f, 1)]).unwrap()).is_err());
}

#[test]
fn ground_field_tensor_is_the_field() {
    let a = Arc::new(ground(Rationals));
    let m = DGModule::regular(a.clone(), Side::Right);
    let n = DGModule::regular(a, Side::Left);
    let t = tensor_over_algebra(&m, &n).unwrap();
    assert_eq!(t.dim(0), 1);
    let (psi, check) = degree0_iso_check(&m, &n).unwrap();
    assert!(check.passed, "{check:?}");
    assert_eq!(psi.shape(), (1, 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn dims_match_the_brute_force_quotient(k in 0usize..ALGEBRA_FAMILIES.len(), seed in any::<u64>()) {
        let (m, n) = random_pair(f101(), ALGEBRA_FAMILIES[k], seed);
        let t = tensor_over_algebra(&m, &n).unwrap();
        for d in t.degrees() {
            prop_assert_eq!(t.dim(d), brute_force_dim(&m, &n, d), "degree {}", d);
        }
        prop_assert!(t.check_square_zero());
    }

    #[test]
    fn regular_module_is_a_unit(k in 0usize..ALGEBRA_FAMILIES.len(), seed in any::<u64>()) {
        let (m, n) = random_pair(Rationals, ALGEBRA_FAMILIES[k], seed);
        let a = m.algebra().clone();
        let left = tensor_over_algebra(&DGModule::regular(a.clone(), Side::Right), &n).unwrap();
        let right = tensor_over_algebra(&m, &DGModule::regular(a, Side::Left)).unwrap();
        for d in n.lo()..=n.hi() {
            prop_assert_eq!(left.dim(d), n.dim(d));
        }
        for d in m.lo()..=m.hi() {
            prop_assert_eq!(right.dim(d), m.dim(d));
        }
    }

    #[test]
    fn degree_zero_map_is_bijective(k in 0usize..ALGEBRA_FAMILIES.len(), seed in any::<u64>()) {
        let (m, n) = random_pair(f101(), ALGEBRA_FAMILIES[k], seed);
        let (_, check) = degree0_iso_check(&m, &n).unwrap();
        prop_assert!(check.passed, "{:?}", check);
    }
}
