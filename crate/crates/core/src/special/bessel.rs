use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::sampling::quadrature::{integrate_panel, legendre_rule};
use crate::special::gamma::ln_gamma_real;

/// Series is safe below this argument, the large-argument expansion above
/// `ASYMPTOTIC_CUT`; the integral representation bridges the gap and doubles
/// as an independent route for cross-checks.
const SERIES_CUT: f64 = 12.0;
const ASYMPTOTIC_CUT: f64 = 35.0;

/// Bessel function of the first kind J_nu(x) for nu >= -1/2, x >= 0.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    check_domain(nu, x)?;
    if x == 0.0 {
        return Ok(if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        });
    }
    if x <= SERIES_CUT {
        bessel_j_series(nu, x)
    } else if x < ASYMPTOTIC_CUT {
        Ok(bessel_j_integral(nu, x))
    } else {
        Ok(bessel_j_asymptotic(nu, x))
    }
}

/// Normalized form j_nu(x) = Gamma(nu+1) (x/2)^{-nu} J_nu(x), with j_nu(0) = 1.
pub fn bessel_j_normalized(nu: f64, x: f64) -> Result<f64> {
    check_domain(nu, x)?;
    if x <= SERIES_CUT {
        // direct ratio series avoids the 0/0 prefactor near x = 0
        let q = -0.25 * x * x;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 0..200 {
            let kf = k as f64;
            term *= q / ((kf + 1.0) * (nu + kf + 1.0));
            sum += term;
            if term.abs() <= 1e-17 * sum.abs().max(1e-300) {
                break;
            }
        }
        Ok(sum)
    } else {
        let j = bessel_j(nu, x)?;
        let scale = (ln_gamma_real(nu + 1.0)? - nu * (0.5 * x).ln()).exp();
        Ok(scale * j)
    }
}

fn check_domain(nu: f64, x: f64) -> Result<()> {
    if nu < -0.5 || !nu.is_finite() {
        return Err(Error::Domain(format!(
            "bessel order must be >= -1/2, got {nu}"
        )));
    }
    if x < 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!(
            "bessel argument must be >= 0, got {x}"
        )));
    }
    Ok(())
}

/// Power series; accurate for x up to ~12 where the alternating terms cost
/// at most ~e^x in cancellation.
pub(crate) fn bessel_j_series(nu: f64, x: f64) -> Result<f64> {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..300 {
        let kf = k as f64;
        term *= q / ((kf + 1.0) * (nu + kf + 1.0));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    let prefactor = (nu * (0.5 * x).ln() - ln_gamma_real(nu + 1.0)?).exp();
    Ok(prefactor * sum)
}

fn oscillatory_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(24))
}

fn decay_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(40))
}

/// Schlaefli/Bessel integral representation,
/// J_nu(x) = (1/pi) int_0^pi cos(x sin h - nu h) dh
///         - sin(nu pi)/pi int_0^inf e^{-x sinh t - nu t} dt,  x > 0.
pub(crate) fn bessel_j_integral(nu: f64, x: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let (nodes, weights) = oscillatory_rule();
    let panels = ((x / 4.0).ceil() as usize).max(2);
    let mut osc = 0.0;
    for p in 0..panels {
        let a = pi * p as f64 / panels as f64;
        let b = pi * (p + 1) as f64 / panels as f64;
        osc += integrate_panel(nodes, weights, a, b, |h| (x * h.sin() - nu * h).cos());
    }
    let mut value = osc / pi;

    let s = (nu * pi).sin();
    if s != 0.0 {
        // e^{-x sinh t} has dropped below 1e-18 by T
        let t_max = (42.0 / x).asinh() + 0.5;
        let (dn, dw) = decay_rule();
        let dp = 3;
        let mut tail = 0.0;
        for p in 0..dp {
            let a = t_max * p as f64 / dp as f64;
            let b = t_max * (p + 1) as f64 / dp as f64;
            tail += integrate_panel(dn, dw, a, b, |t| (-x * t.sinh() - nu * t).exp());
        }
        value -= s / pi * tail;
    }
    value
}

/// Large-argument (Hankel) expansion with optimal truncation.
pub(crate) fn bessel_j_asymptotic(nu: f64, x: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let mu = 4.0 * nu * nu;
    let omega = x - (0.5 * nu + 0.25) * pi;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..30 {
        let kf = k as f64;
        a *= (mu - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf * x);
        if a.abs() >= last {
            break; // past the optimal truncation point
        }
        last = a.abs();
        match k % 4 {
            1 => q += a,
            2 => p -= a,
            3 => q -= a,
            _ => p += a,
        }
        if a.abs() < 1e-18 {
            break;
        }
    }
    (2.0 / (pi * x)).sqrt() * (p * omega.cos() - q * omega.sin())
}
