use alloc::vec::Vec;

use crate::dg::{CohomologyModule, DGModule, Degree, OrdinaryRing};
use crate::exactlin::{DimensionMismatch, Field, Matrix, QuotientSpace};

/// `X ⊗_R Y` for an ordinary ring `R` given by a basis `r_1, ..., r_k`:
/// `X` carries the right actions `x -> x.r_k`, `Y` the left actions
/// `y -> r_k.y`, and the quotient of `X ⊗ Y` (Kronecker order) is by the span
/// of `(x.r_k) ⊗ y - x ⊗ (r_k.y)` over all basis triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedTensorSpace<F: Field> {
    left_dim: usize,
    right_dim: usize,
    left_actions: Vec<Matrix<F>>,
    right_actions: Vec<Matrix<F>>,
    space: QuotientSpace<F>,
}

/// Actions of a ring basis on one module, as square matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingActions<F: Field> {
    pub dim: usize,
    pub actions: Vec<Matrix<F>>,
}

impl<F: Field> RingActions<F> {
    pub fn new(dim: usize, actions: Vec<Matrix<F>>) -> Result<Self, DimensionMismatch> {
        for a in &actions {
            if a.shape() != (dim, dim) {
                return Err(DimensionMismatch {
                    expected: dim,
                    found: if a.rows() != dim { a.rows() } else { a.cols() },
                });
            }
        }
        Ok(RingActions { dim, actions })
    }

    /// `A^0` acting on `M^i`, one matrix per basis element of `A^0`.
    pub fn degree_zero(m: &DGModule<F>, i: Degree) -> Self {
        let alg = m.algebra();
        let actions = (0..alg.dim(0))
            .map(|k| m.act_by(0, &alg.basis_vector(0, k), i))
            .collect();
        RingActions { dim: m.dim(i), actions }
    }

    /// `A^0` acting on `H^i(M)` through representatives.
    pub fn cohomology_a0(h: &CohomologyModule<F>) -> Self {
        RingActions {
            dim: h.dim(),
            actions: h.a0_action().to_vec(),
        }
    }

    /// `H^0(A)` acting on `H^i(M)`.
    pub fn cohomology_h0(h: &CohomologyModule<F>) -> Self {
        RingActions {
            dim: h.dim(),
            actions: h.h0_action().to_vec(),
        }
    }

    /// `R` acting on itself by left or right multiplication.
    pub fn regular(r: &OrdinaryRing<F>, left: bool) -> Self {
        let f = r.field();
        let n = r.dim();
        let actions = (0..n)
            .map(|k| {
                let ek = f.unit_vector(n, k);
                let cols: Vec<Vec<F::Elem>> = (0..n)
                    .map(|x| {
                        let ex = f.unit_vector(n, x);
                        if left {
                            r.product(&ek, &ex)
                        } else {
                            r.product(&ex, &ek)
                        }
                    })
                    .collect();
                Matrix::from_cols(f, n, &cols)
            })
            .collect();
        RingActions { dim: n, actions }
    }

    /// Action of the linear combination `sum c_k r_k`.
    pub fn act_by(&self, f: F, coeffs: &[F::Elem]) -> Matrix<F> {
        let mut out = Matrix::zeros(f, self.dim, self.dim);
        for (c, a) in coeffs.iter().zip(&self.actions) {
            if !f.is_zero(c) {
                out = out.add(&a.scale(c));
            }
        }
        out
    }
}

/// `X ⊗_R Y` where `x` carries right actions and `y` left actions of the same
/// ring basis.
pub fn tensor_over_ring<F: Field>(
    field: F,
    x: &RingActions<F>,
    y: &RingActions<F>,
) -> Result<BalancedTensorSpace<F>, DimensionMismatch> {
    if x.actions.len() != y.actions.len() {
        return Err(DimensionMismatch {
            expected: x.actions.len(),
            found: y.actions.len(),
        });
    }
    let (dx, dy) = (x.dim, y.dim);
    let ix = Matrix::identity(field, dx);
    let iy = Matrix::identity(field, dy);
    let mut rel = Matrix::zeros(field, 0, dx * dy);
    for (r, l) in x.actions.iter().zip(&y.actions) {
        let g = r.kron(&iy).sub(&ix.kron(l));
        rel = rel.vstack(&g.transpose());
    }
    let space = QuotientSpace::new(dx * dy, rel)?;
    Ok(BalancedTensorSpace {
        left_dim: dx,
        right_dim: dy,
        left_actions: x.actions.clone(),
        right_actions: y.actions.clone(),
        space,
    })
}

impl<F: Field> BalancedTensorSpace<F> {
    pub fn field(&self) -> F {
        self.space.field()
    }
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
    pub fn left_dim(&self) -> usize {
        self.left_dim
    }
    pub fn right_dim(&self) -> usize {
        self.right_dim
    }
    pub fn space(&self) -> &QuotientSpace<F> {
        &self.space
    }
    /// `dim x (left_dim * right_dim)`
    pub fn projection(&self) -> &Matrix<F> {
        self.space.projection()
    }
    pub fn section(&self) -> &Matrix<F> {
        self.space.section()
    }

    pub fn pure(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut v = f.zeros(self.left_dim * self.right_dim);
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                v[i * self.right_dim + j] = f.mul(xi, yj);
            }
        }
        v
    }

    /// Class of `x ⊗ y`.
    pub fn class_of_pair(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        self.space.project(&self.pure(x, y))
    }

    /// Images of `(x.r) ⊗ y` and `x ⊗ (r.y)` agree for all basis triples.
    pub fn check_balanced(&self) -> bool {
        let f = self.field();
        for (r, l) in self.left_actions.iter().zip(&self.right_actions) {
            for x in 0..self.left_dim {
                for y in 0..self.right_dim {
                    let ey = f.unit_vector(self.right_dim, y);
                    let ex = f.unit_vector(self.left_dim, x);
                    if self.class_of_pair(&r.column(x), &ey) != self.class_of_pair(&ex, &l.column(y)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Matrix of `f ⊗ g` from `self` to `target`, or `None` if `f ⊗ g` does
    /// not carry the relations of `self` into those of `target`.
    pub fn induced_map(&self, target: &BalancedTensorSpace<F>, f: &Matrix<F>, g: &Matrix<F>) -> Option<Matrix<F>> {
        let k = f.kron(g);
        let pk = target.projection().mul(&k);
        if !pk.mul(&self.space.reduced_relations().transpose()).is_zero() {
            return None;
        }
        Some(pk.mul(self.section()))
    }

    /// Same relation span as `other` on the same plain tensor space.
    pub fn same_relations(&self, other: &BalancedTensorSpace<F>) -> bool {
        self.left_dim == other.left_dim
            && self.right_dim == other.right_dim
            && self.space.reduced_relations() == other.space.reduced_relations()
    }
}
