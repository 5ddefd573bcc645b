//! Exact computations in quantized coordinate algebras of `GL(N)`, the
//! reflection equation algebra, and their representation theory.
//!
//! Everything here is `no_std` with `alloc`; file formats, the command line
//! and floating point checks live in the `qgl-cli` crate.

#![no_std]

extern crate alloc;

pub mod casimir;
pub mod error;
pub mod linalg;
pub mod ncalg;
pub mod qfield;
pub mod qgroups;
pub mod report;
pub mod repth;
pub mod rewrite;

pub use error::{Error, Result};
pub use qfield::{LaurentPoly, QScalar};
pub use report::Report;
