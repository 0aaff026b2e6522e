//! The forward/inverse Heckman-Opdam transform with optional real spectral
//! shift, its flat Hankel/Dunkl limit, and the contraction family connecting
//! the two.
//!
//! A transform is a map of independent spectral-node evaluations; nodes are
//! computed in parallel and merged in grid order, so results are
//! deterministic for a fixed configuration.

mod flat;
mod kernel;

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

pub use flat::{calibrate_flat, flat_psi, flat_transform, flat_transform_product, mu0_measure};
pub use kernel::{eps_contraction, phi, PhiLambda};

use crate::error::{Error, Result};
use crate::root_datum::RootDatum;
use crate::sampling::{MeasureLabel, RadialGrid, SampledRadialFunction, WeightedMeasure};

/// How much spectral mass may sit in the outer decade of the grid before the
/// inverse transform refuses to run.
const INVERSE_TAIL_BOUND: f64 = 1e-8;
/// Forward-transform quadrature tail warning threshold.
const FORWARD_TAIL_BOUND: f64 = 1e-6;

/// Values of a transform on a spectral grid, possibly at complex shift
/// `i xi + eta`, together with the weighted measure norms are taken against.
#[derive(Debug, Clone)]
pub struct SpectralFunction {
    inner: SampledRadialFunction,
    shift: f64,
    tail_warning: Option<String>,
}

impl SpectralFunction {
    pub fn new(
        measure: Arc<WeightedMeasure>,
        values: Vec<Complex64>,
        shift: f64,
        rho: f64,
    ) -> Result<Self> {
        if shift.abs() >= rho && shift != 0.0 {
            return Err(Error::Config(format!(
                "spectral shift must satisfy |eta| < rho = {rho}, got {shift}"
            )));
        }
        Ok(Self {
            inner: SampledRadialFunction::new(measure, values)?,
            shift,
            tail_warning: None,
        })
    }

    pub fn values(&self) -> &[Complex64] {
        self.inner.values()
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        self.inner.grid()
    }

    pub fn measure(&self) -> &Arc<WeightedMeasure> {
        self.inner.measure()
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn tail_warning(&self) -> Option<&str> {
        self.tail_warning.as_deref()
    }

    pub fn lp_norm(&self, p: f64) -> f64 {
        self.inner.lp_norm(p)
    }

    pub fn sup_norm(&self) -> f64 {
        self.inner.sup_norm()
    }

    /// The same values viewed against a different spectral measure.
    pub fn with_measure(&self, measure: Arc<WeightedMeasure>) -> Result<Self> {
        if measure.grid().nodes() != self.grid().nodes() {
            return Err(Error::MeasureMismatch(
                "spectral re-weighting requires the same grid".into(),
            ));
        }
        Ok(Self {
            inner: SampledRadialFunction::new(measure, self.values().to_vec())?,
            shift: self.shift,
            tail_warning: self.tail_warning.clone(),
        })
    }

    /// Access the underlying sampled function (for Lorentz-space machinery).
    pub fn as_sampled(&self) -> &SampledRadialFunction {
        &self.inner
    }
}

/// The measure d mu = J(x) dx on a radial grid.
pub fn mu_measure(datum: &RootDatum, grid: Arc<RadialGrid>) -> Result<Arc<WeightedMeasure>> {
    let density = grid
        .nodes()
        .iter()
        .map(|&x| datum.density_j(x))
        .collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(WeightedMeasure::new(
        grid,
        density,
        MeasureLabel::MuJ,
    )?))
}

/// The Plancherel measure d nu = kappa |c(i xi)|^{-2} d xi on a spectral grid.
pub fn nu_measure(datum: &RootDatum, grid: Arc<RadialGrid>) -> Result<Arc<WeightedMeasure>> {
    let density = grid
        .nodes()
        .iter()
        .map(|&xi| datum.plancherel_density(xi))
        .collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(WeightedMeasure::new(
        grid,
        density,
        MeasureLabel::NuPlancherel,
    )?))
}

/// Forward transform: values of `int f(x) phi_{i xi + eta}(x) dmu(x)` on the
/// spectral grid. The result carries the Plancherel measure d nu.
pub fn ho_transform(
    datum: &RootDatum,
    f: &SampledRadialFunction,
    spectral: Arc<RadialGrid>,
    eta: f64,
) -> Result<SpectralFunction> {
    let rho = datum.rho();
    if eta.abs() >= rho && eta != 0.0 {
        return Err(Error::Config(format!(
            "transform shift must satisfy |eta| < rho = {rho}, got eta = {eta}"
        )));
    }
    let nodes = f.grid().nodes();
    let masses: Vec<f64> = f.measure().cell_masses().collect();
    let values = f.values();

    let spectral_values: Vec<Complex64> = spectral
        .nodes()
        .par_iter()
        .map(|&xi| -> Result<Complex64> {
            let lam = Complex64::new(eta, xi);
            let kernel = PhiLambda::new(datum, lam)?.eval_sorted(nodes)?;
            let mut acc = Complex64::default();
            for i in 0..nodes.len() {
                acc += values[i] * kernel[i] * masses[i];
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;

    let nu = nu_measure(datum, spectral)?;
    let mut out = SpectralFunction::new(nu, spectral_values, eta, rho)?;

    // quadrature tail check on the input side
    let (_, tail) = f.integrate_with_tail();
    let scale = out.sup_norm();
    if scale > 0.0 && tail > FORWARD_TAIL_BOUND * scale {
        out.tail_warning = Some(format!(
            "input tail mass {tail:.3e} exceeds {FORWARD_TAIL_BOUND:.0e} of the transform sup {scale:.3e}"
        ));
    }
    Ok(out)
}

/// Inverse transform of an unshifted spectral function against the target
/// radial measure's grid:
/// `f(x) = int g(xi) phi_{-i xi}(x) kappa |c(i xi)|^{-2} d xi`.
///
/// Refuses when the spectral tail is not negligible on the outer decade of
/// the grid.
pub fn ho_inverse(
    datum: &RootDatum,
    g: &SpectralFunction,
    target: &Arc<WeightedMeasure>,
) -> Result<SampledRadialFunction> {
    if g.shift() != 0.0 {
        return Err(Error::Config(format!(
            "inversion is defined for unshifted spectral functions, got eta = {}",
            g.shift()
        )));
    }
    let sup = g.sup_norm();
    let n = g.values().len();
    let tail_sup = g.values()[n - n / 10..]
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max);
    if sup > 0.0 && tail_sup > INVERSE_TAIL_BOUND * sup {
        return Err(Error::Config(format!(
            "spectral tail too large for inversion: |g| reaches {tail_sup:.3e} on the last decade \
             of [0, {}] against a maximum of {sup:.3e}; enlarge the spectral grid",
            g.grid().x_max()
        )));
    }

    let xs = target.grid().nodes();
    let spectral_nodes = g.grid().nodes();
    // nu cell masses: spectral quadrature weight times kappa |c|^{-2}
    let nu_masses: Vec<f64> = g
        .grid()
        .weights()
        .iter()
        .zip(spectral_nodes)
        .map(|(&w, &xi)| Ok(w * datum.plancherel_density(xi)?))
        .collect::<Result<Vec<_>>>()?;
    let g_values = g.values();

    // kernel rows per spectral node, computed in parallel and reduced in
    // fixed node order to keep the result deterministic
    let rows: Vec<Vec<Complex64>> = spectral_nodes
        .par_iter()
        .map(|&xi| -> Result<Vec<Complex64>> {
            PhiLambda::new(datum, Complex64::new(0.0, -xi))?.eval_sorted(xs)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut values = vec![Complex64::default(); xs.len()];
    for (j, row) in rows.iter().enumerate() {
        let scale = g_values[j] * nu_masses[j];
        for (i, k) in row.iter().enumerate() {
            values[i] += scale * k;
        }
    }
    SampledRadialFunction::new(target.clone(), values)
}

/// Fix the global Plancherel constant kappa by enforcing
/// `||F f0||_{L^2(nu)} = ||f0||_{L^2(mu)}` on the reference Gaussian bump.
/// Returns the datum with the constant baked in.
pub fn calibrate_plancherel(
    datum: RootDatum,
    mu: &Arc<WeightedMeasure>,
    spectral: Arc<RadialGrid>,
) -> Result<RootDatum> {
    let f0 = SampledRadialFunction::sample_real(mu.clone(), |x| (-0.5 * x * x).exp())?;
    let unit = datum.clone().with_plancherel_constant(1.0);
    let transformed = ho_transform(&unit, &f0, spectral, 0.0)?;
    let lhs_sq: f64 = transformed
        .measure()
        .cell_masses()
        .zip(transformed.values())
        .map(|(m, v)| m * v.norm_sqr())
        .sum();
    let rhs_sq = f0.lp_norm(2.0).powi(2);
    if !(lhs_sq > 0.0) {
        return Err(Error::Domain(
            "plancherel calibration degenerated to zero spectral mass".into(),
        ));
    }
    Ok(datum.with_plancherel_constant(rhs_sq / lhs_sq))
}
