//! Root data for the supported geometries and every derived density: the
//! weight J against Lebesgue measure, the c-function, the Plancherel density
//! and the flat Dunkl weight.
//!
//! Rank-one convention: identify the positive indivisible root with 1, so a
//! spectral parameter is a single complex number `lambda`, `rho = m_a/2 +
//! m_2a`, and the Gamma arguments of the c-function are taken at
//! `lambda_a = lambda`. With this normalization the Plancherel density
//! `kappa |c(i xi)|^{-2}` reproduces the classical Jacobi-transform density,
//! which is what the calibration test pins down.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{ln_gamma_real, log_gamma};

/// Which geometry the datum encodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RootDatumKind {
    /// One positive indivisible root alpha, possibly with 2*alpha.
    RankOne { m_alpha: f64, m_2alpha: f64 },
    /// Flat product of n copies of the Z_2 reflection group, one positive
    /// multiplicity per axis.
    FlatProductZ2n { multiplicities: Vec<f64> },
}

/// The triple (a, Sigma, m) plus its derived constants. Immutable; the two
/// Plancherel constants are fixed by `with_*_constant` at calibration time.
#[derive(Debug, Clone, PartialEq)]
pub struct RootDatum {
    kind: RootDatumKind,
    rank: usize,
    rho: f64,
    beta: f64,
    /// log of c_raw(rho), fixing the normalization c(rho) = 1
    log_c_norm: f64,
    kappa: f64,
    kappa_flat: f64,
}

impl RootDatum {
    pub fn rank_one(m_alpha: f64, m_2alpha: f64) -> Result<Self> {
        if m_alpha < 0.0 || m_2alpha < 0.0 || m_alpha + m_2alpha <= 0.0 {
            return Err(Error::Config(format!(
                "rank-one multiplicities need m_alpha >= 0, m_2alpha >= 0, m_alpha + m_2alpha > 0 \
                 (got {m_alpha}, {m_2alpha})"
            )));
        }
        let rho = 0.5 * m_alpha + m_2alpha;
        let beta = m_alpha + m_2alpha;
        let log_c_norm = log_c_raw_real(rho, m_alpha, m_2alpha)?;
        Ok(Self {
            kind: RootDatumKind::RankOne { m_alpha, m_2alpha },
            rank: 1,
            rho,
            beta,
            log_c_norm,
            kappa: 1.0,
            kappa_flat: 1.0,
        })
    }

    pub fn flat_product(multiplicities: Vec<f64>) -> Result<Self> {
        if multiplicities.is_empty() || multiplicities.iter().any(|&m| m <= 0.0) {
            return Err(Error::Config(
                "flat product needs a non-empty list of positive multiplicities".into(),
            ));
        }
        let beta = multiplicities.iter().sum();
        let rank = multiplicities.len();
        Ok(Self {
            kind: RootDatumKind::FlatProductZ2n { multiplicities },
            rank,
            rho: 0.0,
            beta,
            log_c_norm: 0.0,
            kappa: 1.0,
            kappa_flat: 1.0,
        })
    }

    pub fn kind(&self) -> &RootDatumKind {
        &self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_rank_one(&self) -> bool {
        matches!(self.kind, RootDatumKind::RankOne { .. })
    }

    /// Rank-one multiplicity pair (m_alpha, m_2alpha).
    pub fn rank_one_multiplicities(&self) -> Result<(f64, f64)> {
        match self.kind {
            RootDatumKind::RankOne { m_alpha, m_2alpha } => Ok((m_alpha, m_2alpha)),
            _ => Err(Error::Domain("operation requires a rank-one datum".into())),
        }
    }

    /// rho = m_alpha/2 + m_2alpha (rank one).
    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// beta = sum over indivisible positive roots of (m_alpha + m_2alpha).
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// |W| of the reflection group: 2 in rank one, 2^n for the flat product.
    pub fn weyl_order(&self) -> f64 {
        match &self.kind {
            RootDatumKind::RankOne { .. } => 2.0,
            RootDatumKind::FlatProductZ2n { multiplicities } => {
                2f64.powi(multiplicities.len() as i32)
            }
        }
    }

    pub fn plancherel_constant(&self) -> f64 {
        self.kappa
    }

    pub fn flat_plancherel_constant(&self) -> f64 {
        self.kappa_flat
    }

    pub fn with_plancherel_constant(mut self, kappa: f64) -> Self {
        self.kappa = kappa;
        self
    }

    pub fn with_flat_constant(mut self, kappa_flat: f64) -> Self {
        self.kappa_flat = kappa_flat;
        self
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            RootDatumKind::RankOne { m_alpha, m_2alpha } => {
                format!("rank_one(m_alpha={m_alpha}, m_2alpha={m_2alpha})")
            }
            RootDatumKind::FlatProductZ2n { multiplicities } => {
                format!("flat_z2n(m={multiplicities:?})")
            }
        }
    }

    /// J(x) = (2 sinh x)^{m_alpha} (2 sinh 2x)^{m_2alpha}, x >= 0.
    pub fn density_j(&self, x: f64) -> Result<f64> {
        let (m_alpha, m_2alpha) = self.rank_one_multiplicities()?;
        if x < 0.0 {
            return Err(Error::Domain(format!(
                "J is defined on the radial half-line, got x = {x}"
            )));
        }
        let a = if m_alpha == 0.0 {
            1.0
        } else {
            (2.0 * x.sinh()).powf(m_alpha)
        };
        let b = if m_2alpha == 0.0 {
            1.0
        } else {
            (2.0 * (2.0 * x).sinh()).powf(m_2alpha)
        };
        Ok(a * b)
    }

    /// ln J(x) for x > 0, avoiding overflow at large radii.
    pub fn log_density_j(&self, x: f64) -> Result<f64> {
        let (m_alpha, m_2alpha) = self.rank_one_multiplicities()?;
        if x <= 0.0 {
            return Err(Error::Domain("log J needs x > 0".into()));
        }
        Ok(m_alpha * (2.0 * x.sinh()).ln() + m_2alpha * (2.0 * (2.0 * x).sinh()).ln())
    }

    /// The c-function, normalized so c(rho) = 1. Poles of the numerator
    /// Gamma factor are domain errors; poles of the denominator factors are
    /// zeros of c.
    pub fn c_function(&self, lambda: Complex64) -> Result<Complex64> {
        Ok(match self.log_c_raw(lambda)? {
            Some(log) => (log - self.log_c_norm).exp(),
            None => Complex64::default(),
        })
    }

    /// Harish-Chandra connection coefficient: the same Gamma quotient with
    /// the classical normalization `2^rho Gamma((beta+1)/2) c_raw(lambda)`,
    /// so that phi_lambda ~ c_hc(lambda) e^{(lambda-rho) t} at infinity.
    pub(crate) fn c_connection(&self, lambda: Complex64) -> Result<Complex64> {
        let Some(log) = self.log_c_raw(lambda)? else {
            return Ok(Complex64::default());
        };
        let c0 = 0.5 * (self.beta + 1.0);
        let shift = self.rho * std::f64::consts::LN_2 + ln_gamma_real(c0)?;
        Ok((log + shift).exp())
    }

    /// log of c_raw(lambda); None when a denominator Gamma pole makes the
    /// value zero.
    fn log_c_raw(&self, lambda: Complex64) -> Result<Option<Complex64>> {
        let (m_alpha, m_2alpha) = self.rank_one_multiplicities()?;
        let half = lambda * 0.5;
        let num = log_gamma(lambda)?;
        let g1 = match log_gamma(half + (0.25 * m_alpha + 0.5)) {
            Ok(v) => v,
            Err(Error::GammaPole { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let g2 = match log_gamma(half + (0.25 * m_alpha + 0.5 * m_2alpha)) {
            Ok(v) => v,
            Err(Error::GammaPole { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        Ok(Some(num - lambda * std::f64::consts::LN_2 - g1 - g2))
    }

    /// Plancherel density kappa * |c(i xi)|^{-2} on the spectral half-line.
    pub fn plancherel_density(&self, xi: f64) -> Result<f64> {
        if xi < 0.0 {
            return Err(Error::Domain(
                "spectral density is evaluated at xi >= 0".into(),
            ));
        }
        Ok(self.kappa * self.c_inv_sq(xi)?)
    }

    /// |c(i xi)|^{-2} without the calibrated constant.
    pub fn c_inv_sq(&self, xi: f64) -> Result<f64> {
        if xi == 0.0 {
            // Gamma(lambda) pole in c_raw forces the density to vanish
            return Ok(0.0);
        }
        match self.log_c_raw(Complex64::new(0.0, xi))? {
            Some(log) => Ok((-2.0 * (log.re - self.log_c_norm)).exp()),
            None => Err(Error::Domain(format!(
                "|c|^{{-2}} diverges at xi = {xi} (zero of the c-function)"
            ))),
        }
    }

    /// Flat Dunkl weight: prod_i |x_i|^{m_i} for the product case,
    /// |x|^{m_alpha + m_2alpha} for the rank-one flat limit.
    pub fn dunkl_weight(&self, x: &[f64]) -> Result<f64> {
        match &self.kind {
            RootDatumKind::RankOne { .. } => {
                if x.len() != 1 {
                    return Err(Error::Domain(format!(
                        "rank-one dunkl weight takes a single coordinate, got {}",
                        x.len()
                    )));
                }
                Ok(x[0].abs().powf(self.beta))
            }
            RootDatumKind::FlatProductZ2n { multiplicities } => {
                if x.len() != multiplicities.len() {
                    return Err(Error::Domain(format!(
                        "dunkl weight dimension mismatch: {} coordinates vs {} multiplicities",
                        x.len(),
                        multiplicities.len()
                    )));
                }
                Ok(x.iter()
                    .zip(multiplicities)
                    .map(|(xi, m)| xi.abs().powf(*m))
                    .product())
            }
        }
    }

    /// Index of the Bessel kernel in the flat limit: nu = (beta - 1)/2.
    pub fn flat_bessel_index(&self) -> f64 {
        0.5 * (self.beta - 1.0)
    }
}

fn log_c_raw_real(lambda: f64, m_alpha: f64, m_2alpha: f64) -> Result<f64> {
    Ok(ln_gamma_real(lambda)?
        - lambda * std::f64::consts::LN_2
        - ln_gamma_real(0.5 * lambda + 0.25 * m_alpha + 0.5)?
        - ln_gamma_real(0.5 * lambda + 0.25 * m_alpha + 0.5 * m_2alpha)?)
}

/// Validated (p, eta) pair: eta must lie in the interior of the tube
/// C(eps_p rho), which in rank one is the open interval (-eps_p rho, eps_p rho).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TubeParameter {
    pub p: f64,
    pub epsilon_p: f64,
    pub eta: f64,
}

impl TubeParameter {
    pub fn new(p: f64, eta: f64, datum: &RootDatum) -> Result<Self> {
        if !(1.0 < p && p <= 2.0) {
            return Err(Error::Config(format!(
                "tube parameter needs p in (1, 2], got {p}"
            )));
        }
        let epsilon_p = 2.0 / p - 1.0;
        let bound = epsilon_p * datum.rho();
        if p == 2.0 {
            if eta != 0.0 {
                return Err(Error::Config(format!(
                    "at p = 2 the tube C(eps_p rho) degenerates to {{0}}; eta = {eta} is not allowed"
                )));
            }
        } else if eta.abs() >= bound {
            return Err(Error::Config(format!(
                "eta = {eta} outside the tube: need |eta| < eps_p*rho = {bound:.6} (p = {p}, rho = {})",
                datum.rho()
            )));
        }
        Ok(Self { p, epsilon_p, eta })
    }
}
