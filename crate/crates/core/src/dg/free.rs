use alloc::sync::Arc;
use alloc::vec::Vec;

use super::algebra::{DGAlgebra, Degree};
use super::module::{DGModule, Side};
use crate::exactlin::{Field, Matrix};

/// A right DG module whose underlying graded module is free on generators
/// `g_0, g_1, ...`, each with a boundary `d(g_i)` in the span of the earlier
/// generators.
///
/// In degree `k` the basis is `g_i . e_x` with `e_x` running over the basis of
/// `A^{k - |g_i|}`, ordered by generator index and then `x`. Adding a
/// generator therefore only appends coordinates. The differential is
/// `d(g . a) = d(g) . a + (-1)^{|g|} g . d(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeRightModule<F: Field> {
    algebra: Arc<DGAlgebra<F>>,
    degrees: Vec<Degree>,
    /// `d(g_i)` in the coordinates of the first `i` generators
    boundaries: Vec<Vec<F::Elem>>,
}

impl<F: Field> FreeRightModule<F> {
    pub fn new(algebra: Arc<DGAlgebra<F>>) -> Self {
        FreeRightModule {
            algebra,
            degrees: Vec::new(),
            boundaries: Vec::new(),
        }
    }

    pub fn algebra(&self) -> &Arc<DGAlgebra<F>> {
        &self.algebra
    }
    pub fn len(&self) -> usize {
        self.degrees.len()
    }
    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }
    pub fn generator_degrees(&self) -> &[Degree] {
        &self.degrees
    }

    /// Adds a generator of degree `degree` with boundary `boundary`, given in
    /// the current basis of degree `degree + 1` (shorter vectors are padded).
    pub fn push(&mut self, degree: Degree, boundary: Vec<F::Elem>) -> usize {
        let f = self.algebra.field();
        let mut b = boundary;
        b.resize(self.dim(degree + 1), f.zero());
        self.degrees.push(degree);
        self.boundaries.push(b);
        self.degrees.len() - 1
    }

    /// The first `count` generators.
    pub fn prefix(&self, count: usize) -> Self {
        FreeRightModule {
            algebra: self.algebra.clone(),
            degrees: self.degrees[..count].to_vec(),
            boundaries: self.boundaries[..count].to_vec(),
        }
    }

    pub fn dim(&self, k: Degree) -> usize {
        self.degrees.iter().map(|&g| self.algebra.dim(k - g)).sum()
    }

    /// Position of the block of `g_i` in degree `k`.
    pub fn offset(&self, k: Degree, i: usize) -> usize {
        self.degrees[..i].iter().map(|&g| self.algebra.dim(k - g)).sum()
    }

    /// `[lo, hi]` containing everything, or `None` without generators.
    pub fn window(&self) -> Option<(Degree, Degree)> {
        let hi = *self.degrees.iter().max()?;
        let lo = *self.degrees.iter().min()? + self.algebra.min_degree();
        Some((lo, hi))
    }

    /// `g_i . a` for `a` in `A^j`, in degree `|g_i| + j`.
    pub fn generator_times(&self, i: usize, j: Degree, a: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.algebra.field();
        let k = self.degrees[i] + j;
        let mut out = f.zeros(self.dim(k));
        let off = self.offset(k, i);
        out[off..off + a.len()].clone_from_slice(a);
        out
    }

    /// `d(g_i)` in the full basis of degree `|g_i| + 1`.
    pub fn boundary(&self, i: usize) -> Vec<F::Elem> {
        let f = self.algebra.field();
        let mut b = self.boundaries[i].clone();
        b.resize(self.dim(self.degrees[i] + 1), f.zero());
        b
    }

    /// `v . a` for `v` in degree `k` and `a` in `A^j`.
    pub fn act(&self, k: Degree, v: &[F::Elem], j: Degree, a: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.algebra.field();
        let alg = &self.algebra;
        let mut out = f.zeros(self.dim(k + j));
        for (i, &g) in self.degrees.iter().enumerate() {
            let da = alg.dim(k - g);
            if da == 0 || alg.dim(k + j - g) == 0 {
                continue;
            }
            let off = self.offset(k, i);
            let coeff = &v[off..off + da];
            if f.vec_is_zero(coeff) {
                continue;
            }
            let prod = alg.product(k - g, coeff, j, a);
            let o2 = self.offset(k + j, i);
            for (t, x) in prod.into_iter().enumerate() {
                out[o2 + t] = f.add(&out[o2 + t], &x);
            }
        }
        out
    }

    /// `d^k` as a matrix.
    pub fn diff(&self, k: Degree) -> Matrix<F> {
        let f = self.algebra.field();
        let alg = &self.algebra;
        let rows = self.dim(k + 1);
        let mut cols = Vec::with_capacity(self.dim(k));
        for (i, &g) in self.degrees.iter().enumerate() {
            let dg = self.boundary(i);
            let sign = f.sign(g);
            for x in 0..alg.dim(k - g) {
                let ex = alg.basis_vector(k - g, x);
                let mut col = self.act(g + 1, &dg, k - g, &ex);
                if k - g < 0 {
                    let dx = alg.diff(k - g).mul_vec(&ex);
                    let inner = self.generator_times(i, k - g + 1, &dx);
                    col = f.vec_add(&col, &f.vec_scale(&sign, &inner));
                }
                cols.push(col);
            }
        }
        Matrix::from_cols(f, rows, &cols)
    }

    /// The module with window [`Self::window`] (or the zero module in degree
    /// `empty_degree` when there are no generators).
    pub fn to_module(&self, empty_degree: Degree) -> DGModule<F> {
        let Some((lo, hi)) = self.window() else {
            return DGModule::zero(Side::Right, self.algebra.clone(), empty_degree);
        };
        self.to_module_on(lo, hi)
    }

    /// The module on the window `[lo, hi]`, which must contain [`Self::window`].
    pub fn to_module_on(&self, lo: Degree, hi: Degree) -> DGModule<F> {
        let alg = self.algebra.clone();
        let f = alg.field();
        let dims = (lo..=hi).map(|k| self.dim(k)).collect();
        DGModule::from_fn(
            Side::Right,
            alg.clone(),
            (lo, hi),
            dims,
            |k| self.diff(k),
            |k, j| {
                let da = alg.dim(j);
                let mut t = Matrix::zeros(f, self.dim(k + j), self.dim(k) * da);
                for (i, &g) in self.degrees.iter().enumerate() {
                    let (src, tgt) = (alg.dim(k - g), alg.dim(k + j - g));
                    if src == 0 || tgt == 0 || da == 0 {
                        continue;
                    }
                    let block = alg.mult(k - g, j);
                    t.set_block(self.offset(k + j, i), self.offset(k, i) * da, &block);
                }
                t
            },
        )
        .expect("free module shape")
    }

    /// Inclusion of the first `count` generators in degree `k`.
    pub fn prefix_inclusion(&self, count: usize, k: Degree) -> Matrix<F> {
        let f = self.algebra.field();
        let small = self.prefix(count).dim(k);
        let mut m = Matrix::zeros(f, self.dim(k), small);
        for r in 0..small {
            m.set(r, r, f.one());
        }
        m
    }
}

impl<F: Field> super::Cochain<F> for FreeRightModule<F> {
    fn field(&self) -> F {
        self.algebra.field()
    }
    fn dim(&self, i: Degree) -> usize {
        FreeRightModule::dim(self, i)
    }
    fn differential(&self, i: Degree) -> Matrix<F> {
        self.diff(i)
    }
}
