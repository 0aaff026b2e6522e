use num_complex::Complex64;

use crate::error::{Error, Result};

/// Lanczos coefficients for g = 7, n = 9 (the GSL/Boost set).
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_2PI_HALF: f64 = 0.918_938_533_204_672_7; // ln(2*pi)/2
const LN_PI: f64 = 1.144_729_885_849_400_2;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Principal-branch complex log-Gamma.
///
/// Lanczos approximation on `Re z >= 0.5`, reflection below. The reflection
/// branch uses a log-space form of `sin(pi z)` so arguments with large
/// imaginary part neither overflow nor lose the exponential scale.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("log_gamma of non-finite {z}")));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::GammaPole { z });
    }
    if z.re < 0.5 {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        let lg = log_gamma_right(Complex64::new(1.0, 0.0) - z);
        return Ok(Complex64::new(LN_PI, 0.0) - log_sin_pi(z) - lg);
    }
    Ok(log_gamma_right(z))
}

/// Lanczos core, valid for `Re z >= 0.5`.
fn log_gamma_right(z: Complex64) -> Complex64 {
    let zm1 = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (zm1 + i as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    (zm1 + 0.5) * t.ln() - t + LN_2PI_HALF + acc.ln()
}

/// log(sin(pi z)) with branch cuts handled so that `exp` of the result is
/// exact; away from the real axis the exponentially large/small factor is
/// kept in log space.
fn log_sin_pi(z: Complex64) -> Complex64 {
    let pi = std::f64::consts::PI;
    if z.im.abs() <= 1.0 {
        return (Complex64::new(0.0, pi) * z).sin_from_arg();
    }
    if z.im > 0.0 {
        // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z}), |e^{2 i pi z}| < 1
        let small = (Complex64::new(0.0, 2.0 * pi) * z).exp();
        Complex64::new(-std::f64::consts::LN_2, pi / 2.0) - Complex64::new(0.0, pi) * z
            + (Complex64::new(1.0, 0.0) - small).ln()
    } else {
        log_sin_pi(z.conj()).conj()
    }
}

trait SinFromArg {
    fn sin_from_arg(self) -> Complex64;
}

impl SinFromArg for Complex64 {
    // self = i*pi*z; returns ln(sin(pi z)) for moderate |Im z|
    fn sin_from_arg(self) -> Complex64 {
        let s = (self.exp() - (-self).exp()) / Complex64::new(0.0, 2.0);
        s.ln()
    }
}

/// Gamma(z) through the log form. Overflows to infinity for large real z.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// Real log-Gamma for x > 0.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::Domain(format!("ln_gamma_real needs x > 0, got {x}")));
    }
    Ok(log_gamma(Complex64::new(x, 0.0))?.re)
}
