use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::algebra::{structure, DGAlgebra, Degree, StructureError};
use crate::exactlin::{Field, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A one-sided DG module over a [`DGAlgebra`], supported in the degree window
/// `[lo, hi]`.
///
/// The action `A^j x M^i -> M^{i+j}` is stored on the tensor basis with the
/// left factor major: column `a * dim(M^i) + m` for a left module, column
/// `m * dim(A^j) + a` for a right module.
#[derive(Clone, Debug)]
pub struct DGModule<F: Field> {
    side: Side,
    algebra: Arc<DGAlgebra<F>>,
    lo: Degree,
    hi: Degree,
    dims: Vec<usize>,
    /// `diff[i - lo]`: `M^i -> M^{i+1}`
    diff: Vec<Matrix<F>>,
    /// `action[(i - lo) * span(A) + (j - min(A))]`
    action: Vec<Matrix<F>>,
}

impl<F: Field> PartialEq for DGModule<F> {
    fn eq(&self, other: &Self) -> bool {
        self.side == other.side
            && same_algebra(&self.algebra, &other.algebra)
            && self.lo == other.lo
            && self.hi == other.hi
            && self.dims == other.dims
            && self.diff == other.diff
            && self.action == other.action
    }
}

impl<F: Field> Eq for DGModule<F> {}

pub fn same_algebra<F: Field>(a: &Arc<DGAlgebra<F>>, b: &Arc<DGAlgebra<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<F: Field> DGModule<F> {
    pub fn new(
        side: Side,
        algebra: Arc<DGAlgebra<F>>,
        (lo, hi): (Degree, Degree),
        dims: Vec<usize>,
        diff: Vec<Matrix<F>>,
        action: Vec<Matrix<F>>,
    ) -> Result<Self, StructureError> {
        if lo > hi {
            return structure(format!("empty window [{lo}, {hi}]"));
        }
        let width = (hi - lo + 1) as usize;
        if dims.len() != width {
            return structure(format!("expected {width} dimensions, found {}", dims.len()));
        }
        if diff.len() != width {
            return structure(format!("expected {width} differentials, found {}", diff.len()));
        }
        let m = DGModule {
            side,
            algebra,
            lo,
            hi,
            dims,
            diff,
            action,
        };
        for i in lo..=hi {
            let d = &m.diff[(i - lo) as usize];
            if d.shape() != (m.dim(i + 1), m.dim(i)) {
                return structure(format!(
                    "differential out of degree {i} has shape {:?}, expected {:?}",
                    d.shape(),
                    (m.dim(i + 1), m.dim(i))
                ));
            }
        }
        let span = m.algebra.dims().len();
        if m.action.len() != width * span {
            return structure(format!(
                "expected {} action tables, found {}",
                width * span,
                m.action.len()
            ));
        }
        for i in lo..=hi {
            for j in m.algebra.degrees() {
                let want = (m.dim(i + j), m.dim(i) * m.algebra.dim(j));
                let got = m.action_table_ref(i, j).shape();
                if got != want {
                    return structure(format!(
                        "action table (module degree {i}, algebra degree {j}) has shape {got:?}, expected {want:?}"
                    ));
                }
            }
        }
        Ok(m)
    }

    /// The zero module with window `[d, d]`.
    pub fn zero(side: Side, algebra: Arc<DGAlgebra<F>>, d: Degree) -> Self {
        let f = algebra.field();
        let span = algebra.dims().len();
        let action = (0..span).map(|_| Matrix::zeros(f, 0, 0)).collect();
        DGModule {
            side,
            algebra,
            lo: d,
            hi: d,
            dims: alloc::vec![0],
            diff: alloc::vec![Matrix::zeros(f, 0, 0)],
            action,
        }
    }

    /// `A` acting on itself from the given side, in its own degrees.
    pub fn regular(algebra: Arc<DGAlgebra<F>>, side: Side) -> Self {
        let (lo, hi) = (algebra.min_degree(), 0);
        let dims = algebra.dims().to_vec();
        let alg = algebra.clone();
        Self::from_fn(
            side,
            algebra,
            (lo, hi),
            dims,
            |i| alg.diff(i),
            // a left table is indexed (a, m) and a right one (m, a)
            |i, j| match side {
                Side::Left => alg.mult(j, i),
                Side::Right => alg.mult(i, j),
            },
        )
        .expect("regular module shape")
    }

    pub fn side(&self) -> Side {
        self.side
    }
    pub fn algebra(&self) -> &Arc<DGAlgebra<F>> {
        &self.algebra
    }
    pub fn field(&self) -> F {
        self.algebra.field()
    }
    pub fn window(&self) -> (Degree, Degree) {
        (self.lo, self.hi)
    }
    pub fn lo(&self) -> Degree {
        self.lo
    }
    pub fn hi(&self) -> Degree {
        self.hi
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn dim(&self, i: Degree) -> usize {
        if i < self.lo || i > self.hi {
            0
        } else {
            self.dims[(i - self.lo) as usize]
        }
    }

    /// Highest degree with a nonzero component, if any.
    pub fn top_nonzero(&self) -> Option<Degree> {
        (self.lo..=self.hi).rev().find(|&i| self.dim(i) > 0)
    }

    /// `M^i -> M^{i+1}`
    pub fn diff(&self, i: Degree) -> Matrix<F> {
        if i < self.lo || i > self.hi {
            Matrix::zeros(self.field(), self.dim(i + 1), self.dim(i))
        } else {
            self.diff[(i - self.lo) as usize].clone()
        }
    }

    fn action_index(&self, i: Degree, j: Degree) -> usize {
        let span = self.algebra.dims().len();
        (i - self.lo) as usize * span + (j - self.algebra.min_degree()) as usize
    }

    fn action_table_ref(&self, i: Degree, j: Degree) -> &Matrix<F> {
        &self.action[self.action_index(i, j)]
    }

    /// Action table for module degree `i` and algebra degree `j`.
    pub fn action_table(&self, i: Degree, j: Degree) -> Matrix<F> {
        if i < self.lo || i > self.hi || self.algebra.dim(j) == 0 {
            let cols = self.dim(i) * self.algebra.dim(j);
            return Matrix::zeros(self.field(), self.dim(i + j), cols);
        }
        self.action_table_ref(i, j).clone()
    }

    pub fn diff_tables(&self) -> &[Matrix<F>] {
        &self.diff
    }
    pub fn action_tables(&self) -> &[Matrix<F>] {
        &self.action
    }

    /// The product of `a` in `A^j` and `m` in `M^i`, on the module's side.
    pub fn act(&self, j: Degree, a: &[F::Elem], i: Degree, m: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        if i < self.lo || i > self.hi || self.algebra.dim(j) == 0 || self.dim(i + j) == 0 {
            return f.zeros(self.dim(i + j));
        }
        let t = self.action_table_ref(i, j);
        let (da, dm) = (self.algebra.dim(j), self.dim(i));
        let mut v = f.zeros(da * dm);
        for (x, ax) in a.iter().enumerate() {
            if f.is_zero(ax) {
                continue;
            }
            for (y, my) in m.iter().enumerate() {
                if f.is_zero(my) {
                    continue;
                }
                let col = match self.side {
                    Side::Left => x * dm + y,
                    Side::Right => y * da + x,
                };
                v[col] = f.mul(ax, my);
            }
        }
        t.mul_vec(&v)
    }

    /// Matrix of `m -> a . m` (or `m . a`) on `M^i`, for `a` in `A^j`.
    pub fn act_by(&self, j: Degree, a: &[F::Elem], i: Degree) -> Matrix<F> {
        let f = self.field();
        let cols: Vec<Vec<F::Elem>> = (0..self.dim(i))
            .map(|y| self.act(j, a, i, &f.unit_vector(self.dim(i), y)))
            .collect();
        Matrix::from_cols(f, self.dim(i + j), &cols)
    }

    /// Matrix of `a -> a . m` (or `m . a`) on `A^j`, for `m` in `M^i`.
    pub fn act_on(&self, i: Degree, m: &[F::Elem], j: Degree) -> Matrix<F> {
        let f = self.field();
        let cols: Vec<Vec<F::Elem>> = (0..self.algebra.dim(j))
            .map(|x| self.act(j, &f.unit_vector(self.algebra.dim(j), x), i, m))
            .collect();
        Matrix::from_cols(f, self.dim(i + j), &cols)
    }

    pub fn basis_vector(&self, i: Degree, k: usize) -> Vec<F::Elem> {
        self.field().unit_vector(self.dim(i), k)
    }

    /// Same data with the window enlarged to `[lo, hi]` (zero components added).
    pub fn with_window(&self, lo: Degree, hi: Degree) -> Self {
        assert!(lo <= self.lo && hi >= self.hi, "window can only grow");
        let dims: Vec<usize> = (lo..=hi).map(|i| self.dim(i)).collect();
        let mut out = DGModule {
            side: self.side,
            algebra: self.algebra.clone(),
            lo,
            hi,
            dims,
            diff: Vec::new(),
            action: Vec::new(),
        };
        out.diff = (lo..=hi).map(|i| self.diff(i)).collect();
        for i in lo..=hi {
            for j in self.algebra.degrees() {
                out.action.push(self.action_table(i, j));
            }
        }
        out
    }

    /// Builds a module from closures producing the differential and action
    /// tables; shapes are checked.
    pub fn from_fn(
        side: Side,
        algebra: Arc<DGAlgebra<F>>,
        (lo, hi): (Degree, Degree),
        dims: Vec<usize>,
        mut diff: impl FnMut(Degree) -> Matrix<F>,
        mut action: impl FnMut(Degree, Degree) -> Matrix<F>,
    ) -> Result<Self, StructureError> {
        let diffs = (lo..=hi).map(&mut diff).collect();
        let mut acts = Vec::new();
        for i in lo..=hi {
            for j in algebra.degrees() {
                acts.push(action(i, j));
            }
        }
        Self::new(side, algebra, (lo, hi), dims, diffs, acts)
    }
}
