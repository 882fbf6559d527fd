//! Seeded generators for DG algebras, modules, morphisms and test corpora.

mod algebras;
mod corpus;
mod modules;
mod witness;

use alloc::string::String;
use core::fmt;

pub use algebras::{
    algebra_family, contractible, dual_numbers, from_products, ground, make_exterior, make_koszul_like, make_ordinary,
    tensor_algebras, upper_triangular, ALGEBRA_FAMILIES,
};
pub use corpus::{generate_corpus, generate_instance, instance_rng, CorpusProfile, Instance, DEFAULT_SEED};
pub use modules::{
    fits, morphism_space, random_module, random_module_with_recipe, random_morphism, random_target, residue_module,
    GeneratorRecipe, ModuleBounds, ModuleRecipe,
};
pub use witness::{noninjectivity_witness, NoninjectivityWitness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenError {
    /// the requested structure fails its axioms
    Invalid(String),
    UnknownFamily(String),
    BudgetExhausted {
        what: &'static str,
        attempts: usize,
    },
    BadProfile(String),
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::Invalid(s) => write!(f, "generated structure is invalid: {s}"),
            GenError::UnknownFamily(s) => write!(f, "unknown family `{s}`"),
            GenError::BudgetExhausted { what, attempts } => {
                write!(f, "gave up on {what} after {attempts} attempts")
            }
            GenError::BadProfile(s) => write!(f, "bad corpus profile: {s}"),
        }
    }
}
