//! DG algebras, one-sided DG modules, strict morphisms and cohomology.

mod algebra;
mod cohomology;
mod free;
mod module;
mod morphism;
pub mod ops;
mod ring;
mod validate;

pub use algebra::{DGAlgebra, Degree, StructureError};
pub use cohomology::{check_h0_action, cohomology, Cochain, CohomologyModule, CohomologySpace, NotACocycle};
pub use free::FreeRightModule;
pub use module::{same_algebra, DGModule, Side};
pub use morphism::StrictMorphism;
pub use ops::{direct_sum, mapping_cone, opposite_module, shift, smart_truncate, trim};
pub use ring::{h0_ring, H0Ring, OrdinaryRing};
pub use validate::{validate_algebra, validate_module, validate_morphism, Axiom, ValidationReport, Violation};
