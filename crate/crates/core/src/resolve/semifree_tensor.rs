use alloc::vec::Vec;

use crate::dg::{Cochain, DGModule, Degree, FreeRightModule};
use crate::exactlin::{Field, Matrix};

/// `P ⊗_A N` for a semi-free `P`, presented as `⊕_i g_i ⊗ N^{k - |g_i|}` in
/// degree `k`. With `d(g) = Σ_j g_j . a_j` the differential is
/// `d(g ⊗ y) = Σ_j g_j ⊗ a_j . y + (-1)^{|g|} g ⊗ d(y)`.
#[derive(Clone, Debug)]
pub struct SemiFreeTensor<'a, F: Field> {
    pub p: &'a FreeRightModule<F>,
    pub n: &'a DGModule<F>,
}

impl<'a, F: Field> SemiFreeTensor<'a, F> {
    pub fn new(p: &'a FreeRightModule<F>, n: &'a DGModule<F>) -> Self {
        SemiFreeTensor { p, n }
    }

    pub fn offset(&self, k: Degree, i: usize) -> usize {
        self.p.generator_degrees()[..i].iter().map(|&g| self.n.dim(k - g)).sum()
    }

    /// `x ⊗ y` for `x` in `P^q` and `y` in `N^r`.
    pub fn pure(&self, q: Degree, x: &[F::Elem], r: Degree, y: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.n.field();
        let alg = self.p.algebra();
        let k = q + r;
        let mut out = f.zeros(self.dim(k));
        for (i, &g) in self.p.generator_degrees().iter().enumerate() {
            let (da, dn) = (alg.dim(q - g), self.n.dim(k - g));
            if da == 0 || dn == 0 {
                continue;
            }
            let off = self.p.offset(q, i);
            let a = &x[off..off + da];
            if f.vec_is_zero(a) {
                continue;
            }
            let ay = self.n.act(q - g, a, r, y);
            let o = self.offset(k, i);
            for (t, v) in ay.into_iter().enumerate() {
                out[o + t] = f.add(&out[o + t], &v);
            }
        }
        out
    }

    /// Map `g_i ⊗ y -> (image of g_i) ⊗ h(y)` into another presentation,
    /// given the images of the generators (in `Q^{|g_i|}`) and the degreewise
    /// matrices of `h`.
    pub fn map_to(
        &self,
        target: &SemiFreeTensor<'_, F>,
        images: &[Vec<F::Elem>],
        h: impl Fn(Degree) -> Matrix<F>,
        k: Degree,
    ) -> Matrix<F> {
        let f = self.n.field();
        let mut cols = Vec::with_capacity(self.dim(k));
        for (i, &g) in self.p.generator_degrees().iter().enumerate() {
            let hk = h(k - g);
            for y in 0..self.n.dim(k - g) {
                cols.push(target.pure(g, &images[i], k - g, &hk.column(y)));
            }
        }
        Matrix::from_cols(f, target.dim(k), &cols)
    }
}

impl<F: Field> Cochain<F> for SemiFreeTensor<'_, F> {
    fn field(&self) -> F {
        self.n.field()
    }

    fn dim(&self, k: Degree) -> usize {
        self.p.generator_degrees().iter().map(|&g| self.n.dim(k - g)).sum()
    }

    fn differential(&self, k: Degree) -> Matrix<F> {
        let f = self.n.field();
        let alg = self.p.algebra();
        let degs = self.p.generator_degrees();
        let mut d = Matrix::zeros(f, self.dim(k + 1), self.dim(k));
        for (i, &g) in degs.iter().enumerate() {
            let dn = self.n.dim(k - g);
            if dn == 0 {
                continue;
            }
            let col = self.offset(k, i);
            let bd = self.p.boundary(i);
            for (j, &gj) in degs[..i].iter().enumerate() {
                let e = g + 1 - gj;
                let da = alg.dim(e);
                if da == 0 || self.n.dim(k + 1 - gj) == 0 {
                    continue;
                }
                let off = self.p.offset(g + 1, j);
                let a = &bd[off..off + da];
                if f.vec_is_zero(a) {
                    continue;
                }
                d.set_block(self.offset(k + 1, j), col, &self.n.act_by(e, a, k - g));
            }
            if self.n.dim(k + 1 - g) > 0 {
                let dy = self.n.diff(k - g).scale(&f.sign(g));
                d.set_block(self.offset(k + 1, i), col, &dy);
            }
        }
        d
    }
}
