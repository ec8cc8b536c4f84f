//! Multidimensional sieve enumeration.
//!
//! A generic sieve engine ([`sieve`]) over finite ordered universes,
//! specialised to `m x n` Boolean matrices under cyclic row and column
//! rotation ([`orbits`]). Matrices are encoded as tuples of row codes
//! ([`matrix`]) and crossed out on a board addressed by those tuples
//! ([`bitgrid`]). The [`oracles`] module recomputes every count by
//! independent means.

pub mod bitgrid;
pub mod cli;
pub mod error;
pub mod matrix;
pub mod oracles;
pub mod orbits;
pub mod sieve;

pub use error::{Error, Result};
pub use matrix::{BitMatrix, Dims, MatrixCode, RowCode};
pub use orbits::{enumerate_classes, EnumerationReport, OrbitRecord};
