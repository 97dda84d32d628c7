//! Generalized Hermite calculus: the polynomials H_n^μ, the Dunkl derivative,
//! the generalized exponential, Fourier transform, heat semigroup and
//! translation, and the Bose-like oscillator algebra on truncated bases.

pub mod efun;
pub mod error;
pub mod exact;
pub mod heat;
pub mod mu;
pub mod oscillator;
pub mod poly;
pub mod quadrature;
pub mod scalar;
pub mod suite;
pub mod transform;
pub mod translate;

pub use error::{Error, Result};
pub use mu::MuParam;
pub use poly::{BivariatePoly, DensePoly};
pub use scalar::{Rational, Scalar};
