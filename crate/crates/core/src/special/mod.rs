//! Classical special functions underlying the transform kernels: complex
//! log-Gamma (Lanczos), Gauss 2F1 on the Jacobi parameter regime, and Bessel
//! functions of the first kind with real order.
//!
//! All routines are pure and reentrant.

mod bessel;
mod gamma;
mod hyp2f1;

pub use bessel::{bessel_j, bessel_j_normalized};
pub use gamma::{gamma, ln_gamma_real, log_gamma};
pub use hyp2f1::gauss_2f1;
