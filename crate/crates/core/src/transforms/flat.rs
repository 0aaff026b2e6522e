//! The flat (Hankel/Dunkl) limit: normalized Bessel kernel, the flat
//! transform against the weight omega_m, and the Z_2^n product case.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::root_datum::{RootDatum, RootDatumKind};
use crate::sampling::{MeasureLabel, RadialGrid, SampledRadialFunction, WeightedMeasure};
use crate::special::{bessel_j_normalized, ln_gamma_real};
use crate::transforms::SpectralFunction;

/// Classical Hankel Plancherel constant [2^nu Gamma(nu+1)]^{-2} for the
/// self-dual pair with weight x^{2 nu + 1} on both sides.
pub(crate) fn hankel_constant(nu: f64) -> Result<f64> {
    Ok((-2.0 * (nu * std::f64::consts::LN_2 + ln_gamma_real(nu + 1.0)?)).exp())
}

/// Flat measure d mu_0 = omega_m(x) dx = |x|^beta dx for a rank-one datum.
pub fn mu0_measure(datum: &RootDatum, grid: Arc<RadialGrid>) -> Result<Arc<WeightedMeasure>> {
    datum.rank_one_multiplicities()?;
    let beta = datum.beta();
    Ok(Arc::new(WeightedMeasure::from_fn(
        grid,
        MeasureLabel::Mu0Flat,
        |x| x.abs().powf(beta),
    )?))
}

/// Normalized flat kernel psi(xi, t) = j_nu(xi t) with nu = (beta - 1)/2.
pub fn flat_psi(datum: &RootDatum, xi: f64, x: f64) -> Result<f64> {
    datum.rank_one_multiplicities()?;
    if xi < 0.0 || x < 0.0 {
        return Err(Error::Domain("flat kernel takes xi >= 0, x >= 0".into()));
    }
    bessel_j_normalized(datum.flat_bessel_index(), xi * x)
}

/// One-axis flat transform with weight |x|^m and index (m-1)/2; both the
/// rank-one flat transform and each factor of the product case reduce to it.
fn axis_transform(
    m: f64,
    kappa: f64,
    f: &SampledRadialFunction,
    spectral: Arc<RadialGrid>,
    rho_for_shift: f64,
) -> Result<SpectralFunction> {
    let nu = 0.5 * (m - 1.0);
    let nodes = f.grid().nodes();
    let masses: Vec<f64> = f.measure().cell_masses().collect();
    let values = f.values();
    let out: Vec<Complex64> = spectral
        .nodes()
        .par_iter()
        .map(|&xi| -> Result<Complex64> {
            let mut acc = Complex64::default();
            for i in 0..nodes.len() {
                acc += values[i] * bessel_j_normalized(nu, xi * nodes[i])? * masses[i];
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let measure = Arc::new(WeightedMeasure::from_fn(
        spectral,
        MeasureLabel::Mu0Flat,
        |xi| kappa * xi.abs().powf(m),
    )?);
    SpectralFunction::new(measure, out, 0.0, rho_for_shift.max(1.0))
}

/// Flat transform `int f(x) psi(xi, x) dmu_0(x)` of a rank-one datum; the
/// spectral side carries the self-dual measure kappa_flat |xi|^beta d xi.
pub fn flat_transform(
    datum: &RootDatum,
    f: &SampledRadialFunction,
    spectral: Arc<RadialGrid>,
) -> Result<SpectralFunction> {
    match datum.kind() {
        RootDatumKind::RankOne { .. } => axis_transform(
            datum.beta(),
            datum.flat_plancherel_constant(),
            f,
            spectral,
            datum.rho(),
        ),
        RootDatumKind::FlatProductZ2n { .. } => Err(Error::Config(
            "flat transform of a product datum takes tensor-product factors; \
             use flat_transform_product"
                .into(),
        )),
    }
}

/// Factor-wise transform of a tensor-product input on a Z_2^n product datum.
/// Each factor must be sampled against its axis measure |x|^{m_i} dx; the
/// outputs carry the classical per-axis Hankel constants, so the product of
/// the factor transforms is the transform of the product.
pub fn flat_transform_product(
    datum: &RootDatum,
    factors: &[SampledRadialFunction],
    spectral: Arc<RadialGrid>,
) -> Result<Vec<SpectralFunction>> {
    let multiplicities = match datum.kind() {
        RootDatumKind::FlatProductZ2n { multiplicities } => multiplicities.clone(),
        RootDatumKind::RankOne { .. } => {
            return Err(Error::Config(
                "product transform requires a flat Z_2^n datum".into(),
            ))
        }
    };
    if factors.len() != multiplicities.len() {
        return Err(Error::Config(format!(
            "tensor input has {} factors but the datum has {} axes",
            factors.len(),
            multiplicities.len()
        )));
    }
    factors
        .iter()
        .zip(&multiplicities)
        .map(|(f, &m)| {
            let kappa = hankel_constant(0.5 * (m - 1.0))?;
            axis_transform(m, kappa, f, spectral.clone(), 1.0)
        })
        .collect()
}

/// Fix the flat Plancherel constant on the reference Gaussian bump, exactly
/// as in the curved calibration.
pub fn calibrate_flat(
    datum: RootDatum,
    mu0: &Arc<WeightedMeasure>,
    spectral: Arc<RadialGrid>,
) -> Result<RootDatum> {
    let f0 = SampledRadialFunction::sample_real(mu0.clone(), |x| (-0.5 * x * x).exp())?;
    let unit = datum.clone().with_flat_constant(1.0);
    let t = flat_transform(&unit, &f0, spectral)?;
    let lhs_sq: f64 = t
        .measure()
        .cell_masses()
        .zip(t.values())
        .map(|(m, v)| m * v.norm_sqr())
        .sum();
    let rhs_sq = f0.lp_norm(2.0).powi(2);
    if !(lhs_sq > 0.0) {
        return Err(Error::Domain("flat calibration degenerated".into()));
    }
    Ok(datum.with_flat_constant(rhs_sq / lhs_sq))
}
