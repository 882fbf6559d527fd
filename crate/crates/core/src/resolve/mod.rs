//! Semi-free resolutions to a bounded depth, the top degree of the derived
//! tensor product, and `θ^der`.

mod derived;
mod resolution;
mod semifree_tensor;

use alloc::string::String;
use core::fmt;

pub use derived::{
    check_depth_stabilization, check_diagram_ii, check_resolution_independence, check_theta_der_functoriality,
    default_depth, derived_tensor_cohomology, derived_tensor_top, lift_morphism, theta_der, theta_der_with,
    DerivedKunnethWitness, Lift,
};
pub use resolution::{
    cohomological_sup, semifree_resolve, GeneratorKind, GeneratorTag, ResolveOptions, SemiFreeResolution,
};
pub use semifree_tensor::SemiFreeTensor;

use crate::dg::Degree;
use crate::kunneth::KunnethError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResolveError {
    NotRightModule,
    NotLeftModule,
    ZeroDepth,
    /// more than `cap` generators would be needed in one degree
    GeneratorCap {
        degree: Degree,
        cap: usize,
    },
    /// the module has cohomology above the requested top
    CohomologyAboveTop {
        which: &'static str,
        degree: Degree,
    },
    /// a built resolution failed its own checks
    Invariant(String),
    /// no lift of a morphism exists on this generator
    Lift {
        generator: usize,
        degree: Degree,
    },
    Kunneth(KunnethError),
}

impl From<KunnethError> for ResolveError {
    fn from(e: KunnethError) -> Self {
        ResolveError::Kunneth(e)
    }
}

impl fmt::Display for ResolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolveError::NotRightModule => f.write_str("resolutions are built for right modules"),
            ResolveError::NotLeftModule => f.write_str("the second tensor factor must be a left module"),
            ResolveError::ZeroDepth => f.write_str("resolution depth must be at least 1"),
            ResolveError::GeneratorCap { degree, cap } => {
                write!(
                    f,
                    "resolution needs more than {cap} generators in degree {degree} (generator cap)"
                )
            }
            ResolveError::CohomologyAboveTop { which, degree } => {
                write!(
                    f,
                    "{which} has nonzero cohomology in degree {degree}, above the requested top"
                )
            }
            ResolveError::Invariant(s) => write!(f, "resolution check failed: {s}"),
            ResolveError::Lift { generator, degree } => {
                write!(f, "morphism does not lift on generator {generator} in degree {degree}")
            }
            ResolveError::Kunneth(e) => e.fmt(f),
        }
    }
}
