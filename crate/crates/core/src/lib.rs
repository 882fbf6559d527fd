//! Exact top-degree Künneth isomorphisms for finite-dimensional nonpositive DG
//! algebras and DG modules over a prime field or the rationals.

#![no_std]

extern crate alloc;

pub mod dg;
pub mod evidence;
pub mod exactlin;
pub mod genlab;
pub mod kunneth;
pub mod resolve;
pub mod tensor;
