//! Exact-arithmetic root classification for integral equations with
//! rank-2 separable kernels.
//!
//! The pipeline: kernel factors as exact piecewise polynomials on [0,1]
//! -> binomially weighted moment integrals -> the coefficient vector of
//! the reduced algebraic equation -> distinct-root counts via the
//! discrimination-matrix sign-list calculus -> explicit solution
//! construction by exact root isolation, with residual verification.
//!
//! Everything on the exact path is `BigRational` arithmetic; the numeric
//! path (black-box kernel factors) uses adaptive quadrature with error
//! bounds and degrades its certification flag when any sign decision
//! falls inside the error band.

pub mod analyzer;
pub mod discrimination;
pub mod error;
pub mod input;
pub mod interval;
pub mod matrix;
pub mod moments;
pub mod piecewise;
pub mod poly;
pub mod quad;
pub mod rat;
pub mod report;
pub mod rootfind;

pub use error::{Error, Result};
pub use matrix::ExactMatrix;
pub use poly::Polynomial;
pub use rat::Rat;

/// Crate version, embedded in every emitted report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
