//! Numerical harmonic analysis for the rank-one Heckman-Opdam transform.
//!
//! The crate evaluates the hypergeometric (Jacobi-type) kernel `phi_lambda`,
//! the forward and inverse Heckman-Opdam transform with an optional real
//! spectral shift, the flat Bessel/Dunkl limit of both, weighted Lorentz-space
//! quantities (rearrangements, `L^{p,q}` quasi-norms, weak-type constants),
//! and a harness that estimates the constants in a family of Hausdorff-Young
//! and Hardy-Littlewood inequalities on concrete test functions.
//!
//! Layout follows the data flow:
//!
//! * [`special`] - complex log-gamma, Gauss 2F1 on the Jacobi regime, Bessel J
//! * [`root_datum`] - root data, densities J and omega, the c-function
//! * [`sampling`] - Gauss-Legendre grids, weighted measures, test functions
//! * [`transforms`] - kernel evaluation and the curved/flat transforms
//! * [`lorentz`] - rearrangements, Lorentz norms, O'Neil, weak-type constants
//! * [`harness`] - inequality suites producing [`harness::InequalityReport`]s
//!
//! The basic workflow: fix a datum, calibrate its Plancherel constant once
//! on a reference bump, then transform away.
//!
//! ```
//! use std::sync::Arc;
//! use hotrans::root_datum::RootDatum;
//! use hotrans::sampling::{RadialGrid, SampledRadialFunction};
//! use hotrans::transforms::{calibrate_plancherel, ho_transform, mu_measure};
//!
//! let datum = RootDatum::rank_one(1.0, 0.0)?;
//! let x_grid = Arc::new(RadialGrid::new(12.0, 12, 24)?);
//! let spectral = Arc::new(RadialGrid::new(12.0, 12, 24)?);
//! let mu = mu_measure(&datum, x_grid)?;
//! let datum = calibrate_plancherel(datum, &mu, spectral.clone())?;
//!
//! let f = SampledRadialFunction::sample_real(mu, |x| (-x * x).exp())?;
//! let transformed = ho_transform(&datum, &f, spectral, 0.0)?;
//! let ratio = transformed.lp_norm(2.0) / f.lp_norm(2.0);
//! assert!((ratio - 1.0).abs() < 1e-3);
//! # Ok::<(), hotrans::Error>(())
//! ```

#![forbid(unsafe_code)]
// negated range comparisons like `!(1.0 < p && p <= 2.0)` reject NaN, which
// the suggested `partial_cmp` rewrites would silently accept
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod harness;
pub mod lorentz;
pub mod root_datum;
pub mod sampling;
pub mod special;
pub mod transforms;

pub use error::{Error, Result};
pub use num_complex::Complex64;
