//! Exact symbolic engine for non-symplectic cyclic automorphisms of high
//! order on K3 surfaces.
//!
//! The crate mechanizes the fixed-point type calculus on Hirzebruch
//! surfaces, the arithmetic of the branched covers involved, and the case
//! analysis for orders 38, 44, 48, 50, 54, 60 and 66.

pub mod cover;
pub mod engine;
pub mod error;
pub mod lattice;
pub mod modular;
pub mod plane;
pub mod types;

pub use error::{Error, Result};
