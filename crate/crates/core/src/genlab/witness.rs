use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::algebras::make_exterior;
use crate::dg::{DGAlgebra, DGModule, Side};
use crate::evidence::{Check, Counterexample, Evidence};
use crate::exactlin::Field;
use crate::tensor::top_degree_terms;

/// The element `(m.a) ⊗ n - m ⊗ (a.n)` for `A = M = N = K<e>`, `m = n = 1`,
/// `a = e`, in `(M^{-1} ⊗_{A^0} N^0) ⊕ (M^0 ⊗_{A^0} N^{-1})`: nonzero there,
/// zero in `(M ⊗_A N)^{-1}`.
#[derive(Clone, Debug)]
pub struct NoninjectivityWitness<F: Field> {
    pub algebra: Arc<DGAlgebra<F>>,
    pub m: DGModule<F>,
    pub n: DGModule<F>,
    /// coordinates in the direct sum of the two tensor products over `A^0`
    pub element: Vec<F::Elem>,
    pub source_dim: usize,
    pub target_dim: usize,
    pub image: Vec<F::Elem>,
    pub evidence: Evidence,
}

pub fn noninjectivity_witness<F: Field>(field: F) -> NoninjectivityWitness<F> {
    let f = field;
    let algebra = Arc::new(make_exterior(f));
    let m = DGModule::regular(algebra.clone(), Side::Right);
    let n = DGModule::regular(algebra.clone(), Side::Left);
    let terms = top_degree_terms(&m, &n).expect("exterior algebra modules live in degrees <= 0");
    let one = [f.one()];
    let eps = [f.one()];
    // m.a = e in M^{-1}, a.n = e in N^{-1}
    let mut element = terms.m1_0.class_of_pair(&eps, &one);
    let second = terms.m0_1.class_of_pair(&one, &eps);
    element.extend(second.iter().map(|x| f.neg(x)));
    let image = terms.sigma.mul_vec(&element);
    let source_dim = terms.sigma.cols();
    let target_dim = terms.tensor.dim(-1);

    let mut evidence = Evidence::new();
    evidence.push(Check::from_bool(
        "source dimension",
        source_dim == 2,
        format!("dim (M^-1 ⊗ N^0) ⊕ (M^0 ⊗ N^-1) = {source_dim}"),
    ));
    evidence.push(Check::from_bool(
        "target dimension",
        target_dim == 1,
        format!("dim (M ⊗_A N)^-1 = {target_dim}"),
    ));
    evidence.push(if f.vec_is_zero(&element) {
        Check::fail(
            "element is nonzero in the source",
            Counterexample::new("element vanishes"),
        )
    } else {
        Check::pass("element is nonzero in the source", "")
    });
    evidence.push(if f.vec_is_zero(&image) {
        Check::pass("element maps to zero", "")
    } else {
        Check::fail(
            "element maps to zero",
            Counterexample::new("nonzero image").with_vector(f, &image),
        )
    });
    evidence.push(terms.surjection_check());
    NoninjectivityWitness {
        algebra,
        m,
        n,
        element,
        source_dim,
        target_dim,
        image,
        evidence,
    }
}
