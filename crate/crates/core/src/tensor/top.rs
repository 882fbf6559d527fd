//! The degree 0 and degree -1 pieces of `M ⊗_A N` for modules concentrated in
//! degrees `<= 0`, compared with tensor products over the ordinary ring `A^0`.

use alloc::format;

use super::balanced::{tensor_over_ring, BalancedTensorSpace, RingActions};
use super::complex::{tensor_over_algebra_from, TensorComplex, TensorError};
use crate::dg::DGModule;
use crate::evidence::{Check, Counterexample, Evidence};
use crate::exactlin::{Field, Matrix};

/// The spaces and maps around `(M ⊗_A N)^0` when `M` and `N` live in degrees
/// `<= 0`. Both modules are padded so that their windows contain `-1` and end
/// at `0`.
#[derive(Clone, Debug)]
pub struct TopDegreeTerms<F: Field> {
    pub m: DGModule<F>,
    pub n: DGModule<F>,
    /// `M ⊗_A N`, built in degrees `-1` and `0`
    pub tensor: TensorComplex<F>,
    /// `M^{-1} ⊗_{A^0} N^0`
    pub m1_0: BalancedTensorSpace<F>,
    /// `M^0 ⊗_{A^0} N^{-1}`
    pub m0_1: BalancedTensorSpace<F>,
    /// `M^0 ⊗_{A^0} N^0`
    pub m0_0: BalancedTensorSpace<F>,
    /// `M^0 ⊗_{A^0} N^0 -> (M ⊗_A N)^0`
    pub psi: Matrix<F>,
    /// `(M^{-1} ⊗_{A^0} N^0) ⊕ (M^0 ⊗_{A^0} N^{-1}) -> (M ⊗_A N)^{-1}`
    pub sigma: Matrix<F>,
    /// `(d_M ⊗ id) ⊕ (id ⊗ d_N)` into `M^0 ⊗_{A^0} N^0`
    pub phi: Matrix<F>,
    /// the maps above respect the presentations
    pub well_defined: bool,
}

fn pad<F: Field>(m: &DGModule<F>) -> Result<DGModule<F>, TensorError> {
    if m.hi() > 0 {
        return Err(TensorError::NotTranslated { hi: m.hi() });
    }
    Ok(m.with_window(m.lo().min(-1), 0))
}

pub fn top_degree_terms<F: Field>(m: &DGModule<F>, n: &DGModule<F>) -> Result<TopDegreeTerms<F>, TensorError> {
    let (m, n) = (pad(m)?, pad(n)?);
    let f = m.field();
    let tensor = tensor_over_algebra_from(&m, &n, -1)?;
    let bal = |i: i32, j: i32| {
        tensor_over_ring(f, &RingActions::degree_zero(&m, i), &RingActions::degree_zero(&n, j))
            .expect("A^0 acts on both sides")
    };
    let (m1_0, m0_1, m0_0) = (bal(-1, 0), bal(0, -1), bal(0, 0));

    let mut well_defined = true;
    let mut through = |b: &BalancedTensorSpace<F>, p: i32, q: i32| -> Matrix<F> {
        let bp = tensor.block_projection(p, q);
        if !bp.mul(&b.space().reduced_relations().transpose()).is_zero() {
            well_defined = false;
        }
        bp.mul(b.section())
    };
    let psi = through(&m0_0, 0, 0);
    let sigma = through(&m1_0, -1, 0).hstack(&through(&m0_1, 0, -1));

    let id_m0 = Matrix::identity(f, m.dim(0));
    let id_n0 = Matrix::identity(f, n.dim(0));
    let dm = m1_0.induced_map(&m0_0, &m.diff(-1), &id_n0);
    let dn = m0_1.induced_map(&m0_0, &id_m0, &n.diff(-1));
    let phi = match (dm, dn) {
        (Some(a), Some(b)) => a.hstack(&b),
        _ => {
            well_defined = false;
            Matrix::zeros(f, m0_0.dim(), m1_0.dim() + m0_1.dim())
        }
    };
    Ok(TopDegreeTerms {
        m,
        n,
        tensor,
        m1_0,
        m0_1,
        m0_0,
        psi,
        sigma,
        phi,
        well_defined,
    })
}

impl<F: Field> TopDegreeTerms<F> {
    /// `M^0 ⊗_{A^0} N^0 -> (M ⊗_A N)^0` is bijective.
    pub fn degree0_iso_check(&self) -> Check {
        let name = "degree-0 tensor map is bijective";
        let (r, c) = self.psi.shape();
        if !self.well_defined {
            return Check::fail(name, Counterexample::new("maps do not respect the balancing relations"));
        }
        if r != c {
            return Check::fail(
                name,
                Counterexample::new(format!("source has dimension {c}, target has dimension {r}")),
            );
        }
        if let Some(v) = self.psi.kernel_basis().row_vecs().into_iter().next() {
            return Check::fail(
                name,
                Counterexample::new("nonzero kernel vector in M^0 ⊗_{A^0} N^0").with_vector(self.psi.field(), &v),
            );
        }
        Check::pass(name, format!("{r} x {c}, full rank"))
    }

    /// `(M^{-1} ⊗ N^0) ⊕ (M^0 ⊗ N^{-1}) -> (M ⊗_A N)^{-1}` is onto.
    pub fn surjection_check(&self) -> Check {
        let name = "degree -1 tensor map is surjective";
        let rank = self.sigma.rank();
        let dim = self.tensor.dim(-1);
        Check::from_bool(
            name,
            rank == dim && self.well_defined,
            format!("rank {rank}, target dimension {dim}"),
        )
    }

    /// `d_T ∘ sigma = psi ∘ phi`: the proof's `phi` is the tensor differential
    /// read through the two comparison maps.
    pub fn comparison_check(&self) -> Check {
        let lhs = self.tensor.diff(-1).mul(&self.sigma);
        let rhs = self.psi.mul(&self.phi);
        Check::from_bool(
            "tensor differential matches phi",
            lhs == rhs,
            format!("{} x {} matrices", lhs.rows(), lhs.cols()),
        )
    }

    pub fn evidence(&self) -> Evidence {
        let mut e = Evidence::new();
        e.push(self.degree0_iso_check());
        e.push(self.surjection_check());
        e.push(self.comparison_check());
        e
    }
}

/// Matrix of the obvious map `M^0 ⊗_{A^0} N^0 -> (M ⊗_A N)^0` with the
/// bijectivity check.
pub fn degree0_iso_check<F: Field>(m: &DGModule<F>, n: &DGModule<F>) -> Result<(Matrix<F>, Check), TensorError> {
    let t = top_degree_terms(m, n)?;
    let c = t.degree0_iso_check();
    Ok((t.psi, c))
}

/// `phi = (d_M ⊗ id) ⊕ (id ⊗ d_N)` on the tensor products over `A^0`.
pub fn phi_map<F: Field>(m: &DGModule<F>, n: &DGModule<F>) -> Result<Matrix<F>, TensorError> {
    Ok(top_degree_terms(m, n)?.phi)
}
