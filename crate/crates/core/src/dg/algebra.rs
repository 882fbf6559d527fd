use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::exactlin::{Field, Matrix};

pub type Degree = i32;

/// A malformed input: wrong matrix shapes, degrees outside the allowed range.
///
/// Distinct from an axiom violation, which is reported by the validators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureError(pub String);

impl fmt::Display for StructureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed structure: {}", self.0)
    }
}

pub(crate) fn structure<T>(msg: String) -> Result<T, StructureError> {
    Err(StructureError(msg))
}

/// A finite-dimensional nonpositive DG algebra `A = A^min ⊕ ... ⊕ A^0`.
///
/// Multiplication `A^i x A^j -> A^{i+j}` is stored as a matrix on the tensor
/// basis: column `x * dim(A^j) + y` holds the product of basis elements `x`
/// and `y`. Pairs with `i + j < min_degree` have zero-row matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGAlgebra<F: Field> {
    field: F,
    min_degree: Degree,
    dims: Vec<usize>,
    diff: Vec<Matrix<F>>,
    mult: Vec<Matrix<F>>,
    unit: Vec<F::Elem>,
}

impl<F: Field> DGAlgebra<F> {
    /// `diff[k]` is the differential out of degree `min_degree + k`, for the
    /// degrees `min_degree..0`. `mult` is indexed by `(i - min) * span + (j - min)`.
    pub fn new(
        field: F,
        min_degree: Degree,
        dims: Vec<usize>,
        diff: Vec<Matrix<F>>,
        mult: Vec<Matrix<F>>,
        unit: Vec<F::Elem>,
    ) -> Result<Self, StructureError> {
        if min_degree > 0 {
            return structure(format!("min_degree {min_degree} is positive"));
        }
        let span = (1 - min_degree) as usize;
        if dims.len() != span {
            return structure(format!("expected {span} dimensions, found {}", dims.len()));
        }
        if diff.len() != span - 1 {
            return structure(format!("expected {} differentials, found {}", span - 1, diff.len()));
        }
        let dim = |d: Degree| -> usize {
            if d < min_degree || d > 0 {
                0
            } else {
                dims[(d - min_degree) as usize]
            }
        };
        for (k, m) in diff.iter().enumerate() {
            let d = min_degree + k as Degree;
            if m.shape() != (dim(d + 1), dim(d)) {
                return structure(format!(
                    "differential out of degree {d} has shape {:?}, expected {:?}",
                    m.shape(),
                    (dim(d + 1), dim(d))
                ));
            }
        }
        if mult.len() != span * span {
            return structure(format!("expected {} product tables, found {}", span * span, mult.len()));
        }
        for i in min_degree..=0 {
            for j in min_degree..=0 {
                let m = &mult[((i - min_degree) as usize) * span + (j - min_degree) as usize];
                let want = (dim(i + j), dim(i) * dim(j));
                if m.shape() != want {
                    return structure(format!(
                        "product table ({i},{j}) has shape {:?}, expected {want:?}",
                        m.shape()
                    ));
                }
            }
        }
        if unit.len() != dim(0) {
            return structure(format!("unit has length {}, expected {}", unit.len(), dim(0)));
        }
        Ok(DGAlgebra {
            field,
            min_degree,
            dims,
            diff,
            mult,
            unit,
        })
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn min_degree(&self) -> Degree {
        self.min_degree
    }
    pub fn degrees(&self) -> core::ops::RangeInclusive<Degree> {
        self.min_degree..=0
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn dim(&self, d: Degree) -> usize {
        if d < self.min_degree || d > 0 {
            0
        } else {
            self.dims[(d - self.min_degree) as usize]
        }
    }

    fn span(&self) -> usize {
        (1 - self.min_degree) as usize
    }

    /// The differential `A^d -> A^{d+1}` (a zero matrix outside the range).
    pub fn diff(&self, d: Degree) -> Matrix<F> {
        if d >= self.min_degree && d < 0 {
            self.diff[(d - self.min_degree) as usize].clone()
        } else {
            Matrix::zeros(self.field, self.dim(d + 1), self.dim(d))
        }
    }

    pub fn diff_tables(&self) -> &[Matrix<F>] {
        &self.diff
    }

    /// Product table `A^i x A^j -> A^{i+j}`.
    pub fn mult(&self, i: Degree, j: Degree) -> Matrix<F> {
        if self.dim(i) == 0 || self.dim(j) == 0 {
            return Matrix::zeros(self.field, self.dim(i + j), self.dim(i) * self.dim(j));
        }
        let s = self.span();
        self.mult[((i - self.min_degree) as usize) * s + (j - self.min_degree) as usize].clone()
    }

    pub fn mult_tables(&self) -> &[Matrix<F>] {
        &self.mult
    }

    /// `x * y` for `x` in `A^i` and `y` in `A^j`.
    pub fn product(&self, i: Degree, x: &[F::Elem], j: Degree, y: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field;
        let mut out = f.zeros(self.dim(i + j));
        if out.is_empty() || self.dim(i) == 0 || self.dim(j) == 0 {
            return out;
        }
        let s = self.span();
        let t = &self.mult[((i - self.min_degree) as usize) * s + (j - self.min_degree) as usize];
        let dj = self.dim(j);
        for (a, xa) in x.iter().enumerate() {
            if f.is_zero(xa) {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if f.is_zero(yb) {
                    continue;
                }
                let c = f.mul(xa, yb);
                let col = a * dj + b;
                for (r, o) in out.iter_mut().enumerate() {
                    let e = t.get(r, col);
                    if !f.is_zero(e) {
                        *o = f.add(o, &f.mul(&c, e));
                    }
                }
            }
        }
        out
    }

    /// Matrix of `x -> a * x` on `A^i`, for `a` in `A^j`.
    pub fn left_mul(&self, j: Degree, a: &[F::Elem], i: Degree) -> Matrix<F> {
        let cols: Vec<Vec<F::Elem>> = (0..self.dim(i))
            .map(|x| self.product(j, a, i, &self.field.unit_vector(self.dim(i), x)))
            .collect();
        Matrix::from_cols(self.field, self.dim(i + j), &cols)
    }

    /// Matrix of `x -> x * a` on `A^i`, for `a` in `A^j`.
    pub fn right_mul(&self, j: Degree, a: &[F::Elem], i: Degree) -> Matrix<F> {
        let cols: Vec<Vec<F::Elem>> = (0..self.dim(i))
            .map(|x| self.product(i, &self.field.unit_vector(self.dim(i), x), j, a))
            .collect();
        Matrix::from_cols(self.field, self.dim(i + j), &cols)
    }

    pub fn basis_vector(&self, d: Degree, k: usize) -> Vec<F::Elem> {
        self.field.unit_vector(self.dim(d), k)
    }

    /// The opposite algebra: `x *op y = (-1)^{|x||y|} y * x`, same differential.
    pub fn opposite(&self) -> Self {
        let f = self.field;
        let s = self.span();
        let mut mult = Vec::with_capacity(s * s);
        for i in self.degrees() {
            for j in self.degrees() {
                let src = self.mult(j, i);
                let (di, dj) = (self.dim(i), self.dim(j));
                let sign = f.sign(i * j);
                let mut m = Matrix::zeros(f, self.dim(i + j), di * dj);
                for x in 0..di {
                    for y in 0..dj {
                        for r in 0..m.rows() {
                            m.set(r, x * dj + y, f.mul(&sign, src.get(r, y * di + x)));
                        }
                    }
                }
                mult.push(m);
            }
        }
        DGAlgebra {
            field: f,
            min_degree: self.min_degree,
            dims: self.dims.clone(),
            diff: self.diff.clone(),
            mult,
            unit: self.unit.clone(),
        }
    }

    /// `A^0` as an ordinary algebra.
    pub fn degree_zero_ring(&self) -> super::OrdinaryRing<F> {
        super::OrdinaryRing::new(self.field, self.dim(0), self.mult(0, 0), self.unit.clone())
            .expect("degree-zero table has ring shape")
    }
}
