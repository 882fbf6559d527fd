//! Exact dense linear algebra over the rationals and prime fields.

mod field;
mod matrix;
mod quotient;

pub use field::{Field, FieldError, FieldSpec, PrimeField, Rationals};
pub use matrix::{complement, in_column_space, same_column_space, Matrix, Rref};
pub use quotient::{DimensionMismatch, QuotientSpace};
