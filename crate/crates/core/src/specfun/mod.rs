//! Special-function kernel: gamma family, Bessel K, the scaled Macdonald
//! function ρ_ν, Tricomi Ψ at unit argument, hypergeometric sums, Laguerre
//! polynomials and the Macdonald reduction polynomials.

mod bessel;
mod gamma;
mod hypergeometric;
mod laguerre;
mod reduction;

pub use bessel::{bessel_k, rho, rho_laplace, Macdonald, RhoPath};
pub use gamma::{digamma, gamma, pochhammer, trigamma};
pub use hypergeometric::{hyp0f2, hyp3f2_unit, tricomi_psi1};
pub use laguerre::{laguerre, laguerre_poly};
pub use reduction::macdonald_reduction;

pub(crate) use hypergeometric::SeriesSum;
