//! Tensor products over a DG algebra and over ordinary rings.

mod balanced;
mod complex;
mod top;

pub use balanced::{tensor_over_ring, BalancedTensorSpace, RingActions};
pub use complex::{
    free_tensor_map, natural_window, tensor_map, tensor_over_algebra, tensor_over_algebra_from, TensorBlock,
    TensorComplex, TensorError,
};
pub use top::{degree0_iso_check, phi_map, top_degree_terms, TopDegreeTerms};
