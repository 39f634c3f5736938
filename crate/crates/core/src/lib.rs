//! Orthogonal polynomials for the weights e^{−x}ρ_ν(x) and e^{−1/x}x^{−1}ρ_ν(x)
//! on (0, ∞), where ρ_ν(x) = 2x^{ν/2}K_ν(2√x), in arbitrary precision.

pub mod cli;
pub mod error;
pub mod identities;
pub mod moments;
pub mod orthopoly;
pub mod polynomial;
pub mod quadrature;
pub mod real;
pub mod specfun;

pub use error::{Error, Result};
pub use polynomial::Polynomial;
pub use real::{PrecisionContext, Real};
