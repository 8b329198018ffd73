//! Exact spanning-tree counts for the approximating graphs of fully
//! symmetric finitely ramified self-similar fractals.
//!
//! The pipeline derives the spectral decimation map `R` from the level-one
//! graph, runs the eigenvalue multiplicity induction symbolically, and
//! assembles the count in factored form. Brute-force Kirchhoff counts on
//! explicitly built graphs serve as the reference.

pub mod algebra;
pub mod arith;
pub mod cli;
pub mod counter;
pub mod decimation;
pub mod entropy;
pub mod error;
pub mod fixed;
pub mod fractal;
pub mod graph;
pub mod oracle;

pub use error::{Error, Result};
