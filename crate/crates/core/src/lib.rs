//! Minimal S-graded free resolutions of generalized repunit semigroup
//! algebras, built from the Eagon–Northcott complex of a 2 x n matrix, and
//! the brute-force oracles used to certify them.

pub mod cli;
pub mod complex;
pub mod error;
pub mod export;
pub mod modp;
pub mod oracle;
pub mod poly;
pub mod report;
pub mod semigroup;
pub mod verify;

pub use complex::{
    build_resolution, BettiTable, EnBasisElement, Fault, GradedComplex, Level, MatrixX,
};
pub use error::{Error, Result};
pub use poly::{Monomial, PolyMatrix, SparsePolynomial};
pub use report::{CheckOutcome, CheckResult, Violation};
pub use semigroup::{RepunitParams, RepunitSemigroup};
