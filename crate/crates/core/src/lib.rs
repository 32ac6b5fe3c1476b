//! Exact computations with finite-dimensional A∞-algebras.
//!
//! Scalars are exact (rationals or a prime field). Operations are stored
//! sparsely at the suspended level. Every identity this crate claims is
//! checked by evaluating it, never assumed.

pub mod ainf_core;
pub mod barcobar;
pub mod error;
pub mod ext;
pub mod grlin;
pub mod hochschild;
pub mod random;
pub mod transfer;

pub use error::{Error, Result};
