//! The top-degree Künneth map `θ` and the checks that certify it.

mod sequences;
mod theta;

use core::fmt;

pub use sequences::{check_exact_sequences, check_right_exact};
pub use theta::{
    check_defining_property, check_representative_independence, theta, theta_at, theta_with_tops, KunnethWitness,
};

use alloc::format;

use crate::dg::{CohomologySpace, Degree, StrictMorphism};
use crate::evidence::{Check, Counterexample};
use crate::exactlin::Field;
use crate::tensor::{tensor_map, TensorError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KunnethError {
    Tensor(TensorError),
    /// the module is nonzero above the requested top degree
    AboveTop {
        hi: Degree,
        top: Degree,
    },
}

impl From<TensorError> for KunnethError {
    fn from(e: TensorError) -> Self {
        KunnethError::Tensor(e)
    }
}

impl fmt::Display for KunnethError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KunnethError::Tensor(e) => e.fmt(f),
            KunnethError::AboveTop { hi, top } => write!(f, "module reaches degree {hi} above top {top}"),
        }
    }
}

/// Naturality of `θ` for strict morphisms `f : M -> M'` and `g : N -> N'`:
/// `θ' ∘ (H(f) ⊗ H(g)) = H(f ⊗ g) ∘ θ`, with both sides taken at the common
/// tops `max(hi M, hi M')` and `max(hi N, hi N')`.
pub fn check_functoriality<F: Field>(f: &StrictMorphism<F>, g: &StrictMorphism<F>) -> Result<Check, KunnethError> {
    let name = "theta is natural";
    let i0 = f.source().hi().max(f.target().hi());
    let j0 = g.source().hi().max(g.target().hi());
    let w = theta_with_tops(f.source(), g.source(), i0, j0)?;
    let w2 = theta_with_tops(f.target(), g.target(), i0, j0)?;
    let hf = f.on_cohomology(&CohomologySpace::of(&w.m, i0), &CohomologySpace::of(&w2.m, i0));
    let hg = g.on_cohomology(&CohomologySpace::of(&w.n, j0), &CohomologySpace::of(&w2.n, j0));
    let Some(on_source) = w.source.induced_map(&w2.source, &hf, &hg) else {
        return Ok(Check::fail(
            name,
            Counterexample::new("H(f) ⊗ H(g) does not respect the balancing relations"),
        ));
    };
    let t = i0 + j0;
    let on_tensor = tensor_map(f, g, &w.tensor, &w2.tensor, t)?;
    let h_fg = w2.target.class_map().mul(&on_tensor).mul(w.target.rep_map());
    let lhs = w2.theta.mul(&on_source);
    let rhs = h_fg.mul(&w.theta);
    if lhs == rhs {
        return Ok(Check::pass(name, format!("{} x {} square", lhs.rows(), lhs.cols())));
    }
    let c = (0..lhs.cols()).find(|&c| lhs.column(c) != rhs.column(c)).unwrap_or(0);
    Ok(Check::fail(
        name,
        Counterexample::new(format!("square differs on source basis class {c}"))
            .with_vector(w.m.field(), &lhs.column(c)),
    ))
}
