use alloc::vec::Vec;
use core::fmt;

use super::field::Field;
use super::matrix::{complement, Matrix};

/// `K^n / span(relations)` with a deterministic basis.
///
/// The basis of the quotient consists of the images of the standard basis
/// vectors at the non-pivot columns of `rref(relations)`, so it depends only
/// on the span of the relations and not on how they were listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpace<F: Field> {
    ambient_dim: usize,
    relations: Matrix<F>,
    /// Nonzero rows of `rref(relations)`.
    reduced: Matrix<F>,
    pivots: Vec<usize>,
    basis_coords: Vec<usize>,
    projection: Matrix<F>,
    section: Matrix<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionMismatch {
    pub expected: usize,
    pub found: usize,
}

impl fmt::Display for DimensionMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "expected {} columns, found {}", self.expected, self.found)
    }
}

impl<F: Field> QuotientSpace<F> {
    pub fn new(ambient_dim: usize, relations: Matrix<F>) -> Result<Self, DimensionMismatch> {
        if relations.cols() != ambient_dim {
            return Err(DimensionMismatch {
                expected: ambient_dim,
                found: relations.cols(),
            });
        }
        let f = relations.field();
        let rr = relations.rref();
        let reduced = rr.reduced.block(0, 0, rr.rank, ambient_dim);
        let basis_coords = complement(&rr.pivots, ambient_dim);
        let q = basis_coords.len();

        // column j of the projection is the image of e_j
        let mut projection = Matrix::zeros(f, q, ambient_dim);
        for (k, &j) in basis_coords.iter().enumerate() {
            projection.set(k, j, f.one());
        }
        for (r, &p) in rr.pivots.iter().enumerate() {
            for (k, &j) in basis_coords.iter().enumerate() {
                projection.set(k, p, f.neg(reduced.get(r, j)));
            }
        }
        let mut section = Matrix::zeros(f, ambient_dim, q);
        for (k, &j) in basis_coords.iter().enumerate() {
            section.set(j, k, f.one());
        }
        Ok(QuotientSpace {
            ambient_dim,
            relations,
            reduced,
            pivots: rr.pivots,
            basis_coords,
            projection,
            section,
        })
    }

    /// Quotient with no relations.
    pub fn full(field: F, n: usize) -> Self {
        Self::new(n, Matrix::zeros(field, 0, n)).expect("shape")
    }

    /// Quotient by the column space of `image` (a map into the ambient space).
    pub fn by_image(image: &Matrix<F>) -> Self {
        Self::new(image.rows(), image.transpose()).expect("shape")
    }

    pub fn field(&self) -> F {
        self.projection.field()
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    pub fn dim(&self) -> usize {
        self.basis_coords.len()
    }
    pub fn relations(&self) -> &Matrix<F> {
        &self.relations
    }
    /// Basis of the relation span in reduced echelon form.
    pub fn reduced_relations(&self) -> &Matrix<F> {
        &self.reduced
    }
    pub fn relation_rank(&self) -> usize {
        self.pivots.len()
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    /// Ambient coordinates whose images form the quotient basis.
    pub fn basis_coords(&self) -> &[usize] {
        &self.basis_coords
    }
    /// `dim x ambient_dim`
    pub fn projection(&self) -> &Matrix<F> {
        &self.projection
    }
    /// `ambient_dim x dim`
    pub fn section(&self) -> &Matrix<F> {
        &self.section
    }

    pub fn project(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.projection.mul_vec(v)
    }

    pub fn lift(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        self.section.mul_vec(coords)
    }

    /// Whether `v` lies in the relation span.
    pub fn is_relation(&self, v: &[F::Elem]) -> bool {
        self.field().vec_is_zero(&self.project(v))
    }

    /// Checks `projection * section = I` and that every relation row projects
    /// to zero.
    pub fn check_invariants(&self) -> bool {
        let f = self.field();
        let q = self.dim();
        if self.projection.mul(&self.section) != Matrix::identity(f, q) {
            return false;
        }
        if self.relations.rows() > 0 && !self.projection.mul(&self.relations.transpose()).is_zero() {
            return false;
        }
        q + self.relation_rank() == self.ambient_dim
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::{PrimeField, Rationals};

    #[test]
    fn no_relations_is_identity() {
        let q = QuotientSpace::full(Rationals, 3);
        assert_eq!(q.dim(), 3);
        assert_eq!(q.projection(), &Matrix::identity(Rationals, 3));
        assert!(q.check_invariants());
    }

    #[test]
    fn spanning_relations_kill_everything() {
        let f = PrimeField::new(101).unwrap();
        let q = QuotientSpace::new(2, Matrix::from_i64(f, 2, 2, &[1, 2, 3, 4])).unwrap();
        assert_eq!(q.dim(), 0);
        assert!(q.check_invariants());
    }

    #[test]
    fn difference_relation_identifies_basis_vectors() {
        let q = Rationals;
        let space = QuotientSpace::new(2, Matrix::from_i64(q, 1, 2, &[1, -1])).unwrap();
        assert_eq!(space.dim(), 1);
        let e1 = space.project(&[q.one(), q.zero()]);
        let e2 = space.project(&[q.zero(), q.one()]);
        assert_eq!(e1, e2);
        assert!(space.check_invariants());
    }

    #[test]
    fn mismatched_relations_are_rejected() {
        let q = Rationals;
        let err = QuotientSpace::new(3, Matrix::from_i64(q, 1, 2, &[1, 0])).unwrap_err();
        assert_eq!(err, DimensionMismatch { expected: 3, found: 2 });
    }
}
