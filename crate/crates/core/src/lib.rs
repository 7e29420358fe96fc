//! Exact computations for unitary simple Lie algebras, their affine fusion
//! rules and the lattice/Heisenberg vertex-operator toolkit.
//!
//! Everything that matters for a verdict is computed over exact rationals.
//! Floats appear only in the Heisenberg norm probes.
#![no_std]
#![allow(clippy::needless_range_loop)]

#[cfg(feature = "std")]
extern crate std;

extern crate alloc;

pub mod affine;
pub mod chevalley;
pub mod cocycle;
pub mod error;
pub mod highmod;
pub mod latheis;
pub mod linalg;
pub mod rat;
pub mod rootsys;
pub mod tensor;

pub use error::{Error, Result};
pub use rat::Q;
pub use rootsys::{AlgebraId, RootSystem, Series, Weight};
