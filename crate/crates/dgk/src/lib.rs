//! File formats, verification reports and the command implementations behind
//! the `dgk` binary.

pub mod checks;
pub mod commands;
pub mod error;
pub mod format;
pub mod io;
pub mod report;
pub mod suite;

pub use commands::{cmd_derived_kunneth, cmd_kunneth, cmd_validate};
pub use error::CliError;
pub use report::Report;
pub use suite::{cmd_gen, cmd_suite};

/// Runs `$body` with `$f` bound to the field named by a `FieldSpec`.
#[macro_export]
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            ::dgk_core::exactlin::FieldSpec::Rationals => {
                let $f = ::dgk_core::exactlin::Rationals;
                $body
            }
            ::dgk_core::exactlin::FieldSpec::PrimeField { p } => match ::dgk_core::exactlin::PrimeField::new(p) {
                Ok($f) => $body,
                Err(e) => Err($crate::error::CliError::structural("field", e.to_string())),
            },
        }
    };
}
