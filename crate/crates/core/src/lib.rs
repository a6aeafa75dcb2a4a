//! Arithmetic in the real Cayley-Dickson algebras (reals, complex numbers,
//! quaternions, octonions, sedenions and beyond), an exact linear-algebra
//! oracle for the equations `ax = xb`, `ax = conj(x)b` and friends, closed-form
//! solvers for those equations, and a catalog of algebraic laws that can be
//! checked level by level.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod element;
mod error;
pub mod lab;
pub mod oracle;
mod scalar;
pub mod solvers;
mod subalgebra;
mod table;

pub use element::{Element, MAX_ELEMENT_LEVEL};
pub use error::Error;
pub use scalar::{ParseRationalError, Rational, Scalar, FLOAT_ABS_TOL, FLOAT_REL_TOL};
pub use subalgebra::{span_dimension, same_span, subalgebra_basis, SpanTracker, SubalgebraBasis};
pub use table::{basis_product, structure_table, SignedIndex, StructureTable, DEFAULT_MAX_TABLE_LEVEL};
