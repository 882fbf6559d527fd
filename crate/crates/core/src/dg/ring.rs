use alloc::format;
use alloc::vec::Vec;

use super::algebra::{structure, DGAlgebra, StructureError};
use crate::exactlin::{Field, Matrix, QuotientSpace};

/// An associative unital algebra concentrated in degree zero, used for `A^0`
/// and for `H^0(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinaryRing<F: Field> {
    field: F,
    dim: usize,
    /// `dim x dim^2`; column `x * dim + y` is `e_x * e_y`.
    mult: Matrix<F>,
    unit: Vec<F::Elem>,
}

impl<F: Field> OrdinaryRing<F> {
    pub fn new(field: F, dim: usize, mult: Matrix<F>, unit: Vec<F::Elem>) -> Result<Self, StructureError> {
        if mult.shape() != (dim, dim * dim) {
            return structure(format!("ring table has shape {:?}", mult.shape()));
        }
        if unit.len() != dim {
            return structure(format!("ring unit has length {}", unit.len()));
        }
        Ok(OrdinaryRing { field, dim, mult, unit })
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn mult(&self) -> &Matrix<F> {
        &self.mult
    }
    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    pub fn product(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field;
        let mut v = f.zeros(self.dim * self.dim);
        for (a, xa) in x.iter().enumerate() {
            for (b, yb) in y.iter().enumerate() {
                v[a * self.dim + b] = f.mul(xa, yb);
            }
        }
        self.mult.mul_vec(&v)
    }

    /// Associativity and two-sided unit on basis elements.
    pub fn is_associative_unital(&self) -> bool {
        let f = self.field;
        let e = |k| f.unit_vector(self.dim, k);
        for x in 0..self.dim {
            if self.product(&self.unit, &e(x)) != e(x) || self.product(&e(x), &self.unit) != e(x) {
                return false;
            }
            for y in 0..self.dim {
                let xy = self.product(&e(x), &e(y));
                for z in 0..self.dim {
                    if self.product(&xy, &e(z)) != self.product(&e(x), &self.product(&e(y), &e(z))) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_commutative(&self) -> bool {
        let f = self.field;
        (0..self.dim).all(|x| {
            (0..self.dim).all(|y| {
                let (ex, ey) = (f.unit_vector(self.dim, x), f.unit_vector(self.dim, y));
                self.product(&ex, &ey) == self.product(&ey, &ex)
            })
        })
    }
}

/// `H^0(A) = A^0 / d(A^{-1})` with its induced product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H0Ring<F: Field> {
    ring: OrdinaryRing<F>,
    /// Presentation of the quotient of `A^0` by the boundaries.
    space: QuotientSpace<F>,
}

impl<F: Field> H0Ring<F> {
    pub fn ring(&self) -> &OrdinaryRing<F> {
        &self.ring
    }
    pub fn dim(&self) -> usize {
        self.ring.dim
    }
    /// `A^0 -> H^0(A)`
    pub fn projection(&self) -> &Matrix<F> {
        self.space.projection()
    }
    /// `H^0(A) -> A^0`
    pub fn section(&self) -> &Matrix<F> {
        self.space.section()
    }
    pub fn space(&self) -> &QuotientSpace<F> {
        &self.space
    }

    /// Lift of the `k`-th basis element of `H^0(A)` to `A^0`.
    pub fn lift_basis(&self, k: usize) -> Vec<F::Elem> {
        self.space.section().column(k)
    }

    /// Whether the projection `A^0 -> H^0(A)` is multiplicative on basis pairs.
    pub fn projection_is_multiplicative(&self, a0: &OrdinaryRing<F>) -> bool {
        let f = self.ring.field;
        let n = a0.dim();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let (ex, ey) = (f.unit_vector(n, x), f.unit_vector(n, y));
                self.space.project(&a0.product(&ex, &ey))
                    == self.ring.product(&self.space.project(&ex), &self.space.project(&ey))
            })
        }) && self.space.project(a0.unit()) == self.ring.unit
    }
}

/// The ring `H^0(A)`.
pub fn h0_ring<F: Field>(a: &DGAlgebra<F>) -> H0Ring<F> {
    let f = a.field();
    let a0 = a.degree_zero_ring();
    let space = QuotientSpace::by_image(&a.diff(-1));
    let q = space.dim();
    let mut mult = Matrix::zeros(f, q, q * q);
    for x in 0..q {
        for y in 0..q {
            let p = a0.product(&space.lift(&f.unit_vector(q, x)), &space.lift(&f.unit_vector(q, y)));
            let c = space.project(&p);
            for (r, v) in c.into_iter().enumerate() {
                mult.set(r, x * q + y, v);
            }
        }
    }
    let unit = space.project(a0.unit());
    H0Ring {
        ring: OrdinaryRing::new(f, q, mult, unit).expect("shape"),
        space,
    }
}
