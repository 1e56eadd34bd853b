//! Framed toric varieties, partitioned f-duality, mirror Cox polynomials and
//! lattice-count Hodge invariants, in exact arithmetic.

pub mod error;
pub mod f_process;
pub mod fan;
pub mod hodge;
pub mod lattice;
pub mod mirror;
pub mod polytope;
pub mod report;

pub use error::{Error, Result};
