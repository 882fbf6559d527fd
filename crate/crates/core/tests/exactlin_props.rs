use dgk_core::exactlin::{Field, Matrix, PrimeField, QuotientSpace, Rationals};
use proptest::prelude::*;

fn f101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (0usize..6, 0usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..=3, r * c)))
}

fn check_rref_laws<F: Field>(m: &Matrix<F>) {
    let r = m.rref();
    assert_eq!(r.reduced.rref().reduced, r.reduced, "rref is idempotent");
    assert!(r.pivots.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(r.rank, r.pivots.len());
    let k = m.kernel_basis();
    assert_eq!(k.rows() + r.rank, m.cols(), "rank-nullity");
    assert_eq!(k.rank(), k.rows(), "kernel basis is independent");
    if k.rows() > 0 {
        assert!(m.mul(&k.transpose()).is_zero());
    }
    assert_eq!(m.transpose().rank(), r.rank);
}

fn check_quotient_laws<F: Field>(ambient: usize, rel: Matrix<F>) {
    let f = rel.field();
    let q = QuotientSpace::new(ambient, rel.clone()).unwrap();
    assert!(q.check_invariants());
    assert_eq!(q.dim(), ambient - rel.rank());
    assert_eq!(q.projection().mul(q.section()), Matrix::identity(f, q.dim()));
    if rel.rows() > 0 {
        assert!(q.projection().mul(&rel.transpose()).is_zero());
    }
}

proptest! {
    #[test]
    fn rref_laws_prime_field((r, c, v) in small_matrix()) {
        check_rref_laws(&Matrix::from_i64(f101(), r, c, &v));
    }

    #[test]
    fn rref_laws_rationals((r, c, v) in small_matrix()) {
        check_rref_laws(&Matrix::from_i64(Rationals, r, c, &v));
    }

    #[test]
    fn quotient_laws((r, c, v) in small_matrix()) {
        check_quotient_laws(c, Matrix::from_i64(f101(), r, c, &v));
        check_quotient_laws(c, Matrix::from_i64(Rationals, r, c, &v));
    }

    #[test]
    fn solving_recovers_consistent_systems((r, c, v) in small_matrix(), x in prop::collection::vec(-5i64..=5, 6)) {
        let f = Rationals;
        let m = Matrix::from_i64(f, r, c, &v);
        let x: Vec<_> = x[..c].iter().map(|&k| f.from_i64(k)).collect();
        let b = m.mul_vec(&x);
        let sol = m.solve(&b).expect("consistent system");
        prop_assert_eq!(m.mul_vec(&sol), b);
    }

    #[test]
    fn projection_is_constant_on_cosets((r, c, v) in small_matrix(), w in prop::collection::vec(0u64..101, 6), s in prop::collection::vec(0u64..101, 6)) {
        let f = f101();
        let rel = Matrix::from_i64(f, r, c, &v);
        let q = QuotientSpace::new(c, rel.clone()).unwrap();
        let x: Vec<u64> = w[..c].to_vec();
        let mut y = x.clone();
        for (i, row) in rel.row_vecs().iter().enumerate() {
            f.axpy(&mut y, &s[i], row);
        }
        prop_assert_eq!(q.project(&x), q.project(&y));
    }

    #[test]
    fn element_text_round_trips(k in -1000i64..1000, d in 1i64..50) {
        let q = Rationals;
        let x = q.mul(&q.from_i64(k), &q.inv(&q.from_i64(d)).unwrap());
        prop_assert_eq!(q.parse(&q.format(&x)).unwrap(), x);
        let f = f101();
        let y = f.from_i64(k);
        prop_assert_eq!(f.parse(&f.format(&y)).unwrap(), y);
    }
}

#[test]
fn rank_one_rational_example() {
    let m = Matrix::from_i64(Rationals, 2, 2, &[1, 2, 2, 4]);
    let r = m.rref();
    assert_eq!(r.reduced, Matrix::from_i64(Rationals, 2, 2, &[1, 2, 0, 0]));
    assert_eq!(r.pivots, vec![0]);
}

#[test]
fn kernel_over_f5() {
    let f = PrimeField::new(5).unwrap();
    let k = Matrix::from_i64(f, 1, 2, &[1, 1]).kernel_basis();
    assert_eq!(k, Matrix::from_i64(f, 1, 2, &[4, 1]));
}
