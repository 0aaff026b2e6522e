//! Weighted-measure Lorentz-space machinery: distribution functions,
//! non-increasing rearrangements, L^{p,q} quasi-norms, weak-type norms and
//! the O'Neil product inequality.
//!
//! Sampled functions are reduced to weighted step functions first (cell value
//! = |node value|, cell mass = quadrature weight times density); every
//! integral in the rearrangement variable is then a closed form per segment,
//! so no second quadrature error enters.

use crate::error::{Error, Result};
use crate::sampling::SampledRadialFunction;
use crate::transforms::SpectralFunction;

/// A function seen as finitely many (value, mass) cells.
#[derive(Debug, Clone)]
pub struct WeightedCells {
    values: Vec<f64>,
    masses: Vec<f64>,
}

impl WeightedCells {
    pub fn new(values: Vec<f64>, masses: Vec<f64>) -> Result<Self> {
        if values.len() != masses.len() {
            return Err(Error::Config(
                "cells need matching value/mass lengths".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0)
            || masses.iter().any(|m| !m.is_finite() || *m < 0.0)
        {
            return Err(Error::Domain(
                "cells must be finite and non-negative".into(),
            ));
        }
        Ok(Self { values, masses })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    /// L^p "norm" of the step function; p > 0 (quasi-norms included).
    pub fn lp_norm(&self, p: f64) -> f64 {
        assert!(p > 0.0);
        self.values
            .iter()
            .zip(&self.masses)
            .map(|(v, m)| m * v.powf(p))
            .sum::<f64>()
            .powf(1.0 / p)
    }
}

impl From<&SampledRadialFunction> for WeightedCells {
    fn from(f: &SampledRadialFunction) -> Self {
        Self {
            values: f.values().iter().map(|v| v.norm()).collect(),
            masses: f.measure().cell_masses().collect(),
        }
    }
}

impl From<&SpectralFunction> for WeightedCells {
    fn from(f: &SpectralFunction) -> Self {
        Self::from(f.as_sampled())
    }
}

/// lambda_f(s) = measure({ |f| > s }) against the attached measure.
pub fn distribution_function(f: &SampledRadialFunction, s: f64) -> f64 {
    cells_distribution(&WeightedCells::from(f), s)
}

pub fn cells_distribution(cells: &WeightedCells, s: f64) -> f64 {
    cells
        .values
        .iter()
        .zip(&cells.masses)
        .filter(|(v, _)| **v > s)
        .map(|(_, m)| m)
        .sum()
}

/// The non-increasing rearrangement f*(t) as a right-continuous step profile:
/// value `values[k]` on `[breakpoints[k], breakpoints[k+1])` with an implicit
/// leading breakpoint 0. Cells with equal values merge, so the profile is
/// independent of cell order.
#[derive(Debug, Clone, PartialEq)]
pub struct RearrangementProfile {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl RearrangementProfile {
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Total mass below the profile's support (where f* > 0).
    pub fn support_mass(&self) -> f64 {
        self.breakpoints.last().copied().unwrap_or(0.0)
    }

    /// f*(t).
    pub fn value_at(&self, t: f64) -> f64 {
        if t < 0.0 {
            return self.values.first().copied().unwrap_or(0.0);
        }
        for (k, &b) in self.breakpoints.iter().enumerate() {
            if t < b {
                return self.values[k];
            }
        }
        0.0
    }

    /// int_0^infty f*(t)^p dt, exactly per segment.
    pub fn power_integral(&self, p: f64) -> f64 {
        let mut acc = 0.0;
        let mut prev = 0.0;
        for (k, &b) in self.breakpoints.iter().enumerate() {
            acc += self.values[k].powf(p) * (b - prev);
            prev = b;
        }
        acc
    }
}

pub fn rearrangement(f: &SampledRadialFunction) -> RearrangementProfile {
    cells_rearrangement(&WeightedCells::from(f))
}

pub fn cells_rearrangement(cells: &WeightedCells) -> RearrangementProfile {
    // stable sort by descending value; cell index breaks ties deterministically
    let mut idx: Vec<usize> = (0..cells.values.len())
        .filter(|&i| cells.values[i] > 0.0 && cells.masses[i] > 0.0)
        .collect();
    idx.sort_by(|&i, &j| cells.values[j].partial_cmp(&cells.values[i]).unwrap());

    let mut breakpoints = Vec::new();
    let mut values: Vec<f64> = Vec::new();
    let mut cum = 0.0;
    for &i in &idx {
        let v = cells.values[i];
        cum += cells.masses[i];
        if values.last() == Some(&v) {
            *breakpoints.last_mut().unwrap() = cum;
        } else {
            values.push(v);
            breakpoints.push(cum);
        }
    }
    RearrangementProfile {
        breakpoints,
        values,
    }
}

/// The Lorentz quasi-norm
/// `((q/p) int t^{q/p-1} f*(t)^q dt)^{1/q}` for finite q and
/// `sup_t t lambda_f(t)^{1/p}` at q = infinity (pass `f64::INFINITY`).
/// Heavy tails make the result infinite rather than erroring.
pub fn lorentz_norm(f: &SampledRadialFunction, p: f64, q: f64) -> f64 {
    cells_lorentz_norm(&WeightedCells::from(f), p, q)
}

pub fn cells_lorentz_norm(cells: &WeightedCells, p: f64, q: f64) -> f64 {
    assert!(
        p > 1.0 && p.is_finite(),
        "first Lorentz index must lie in (1, inf)"
    );
    assert!(q > 0.0, "second Lorentz index must be positive");
    let profile = cells_rearrangement(cells);
    if profile.values.is_empty() {
        return 0.0;
    }
    if q.is_infinite() {
        // sup over s of s lambda(s)^{1/p}, attained at the value breakpoints
        let mut cum = 0.0;
        let mut best: f64 = 0.0;
        for (v, b) in profile.values.iter().zip(&profile.breakpoints) {
            cum = *b;
            best = best.max(v * cum.powf(1.0 / p));
        }
        let _ = cum;
        return best;
    }
    // (q/p) int t^{q/p - 1} f*(t)^q dt = sum_k v_k^q (T_k^{q/p} - T_{k-1}^{q/p})
    let e = q / p;
    let mut acc = 0.0;
    let mut prev = 0.0f64;
    for (v, b) in profile.values.iter().zip(&profile.breakpoints) {
        acc += v.powf(q) * (b.powf(e) - prev.powf(e));
        prev = *b;
    }
    acc.powf(1.0 / q)
}

/// Outcome of one product-inequality check.
#[derive(Debug, Clone, Copy)]
pub struct OneilCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

/// Marcinkiewicz (maximal) weak norm `sup_t t^{1/r} h**(t)` with
/// `h**(t) = t^{-1} int_0^t h*`, evaluated exactly for step profiles: on
/// each segment the objective `t^{1/r - 1}(A + v t)` has at most one
/// interior critical point.
pub fn cells_maximal_weak_norm(cells: &WeightedCells, r: f64) -> f64 {
    assert!(r > 1.0, "maximal weak norm needs r > 1");
    let profile = cells_rearrangement(cells);
    let e = 1.0 / r - 1.0; // in (-1, 0)
    let mut best: f64 = 0.0;
    let mut prev = 0.0f64;
    let mut integral = 0.0; // int_0^{prev} h*
    for (v, b) in profile.values.iter().zip(profile.breakpoints()) {
        let a = integral - v * prev; // objective = t^e (a + v t)
        let eval = |t: f64| t.powf(e) * (a + v * t);
        if prev > 0.0 {
            best = best.max(eval(prev));
        }
        best = best.max(eval(*b));
        if a != 0.0 {
            let t_crit = -e * a / ((e + 1.0) * v);
            if t_crit > prev && t_crit < *b {
                best = best.max(eval(t_crit));
            }
        }
        integral += v * (b - prev);
        prev = *b;
    }
    // past the support h** = integral / t and t^{1/r - 1} decreases
    best
}

/// O'Neil: for q > 2, r = q/(q-2), `||g h||*_{q',q} <= ||g||_q ||h||_{r,inf}`
/// whenever both factors live on the same measure. The right side carries
/// the maximal (Marcinkiewicz) weak norm, for which the constant is exactly
/// one and is attained by indicator pairs; with the plain weak quasi-norm
/// `sup t^{1/r} h*(t)` the two sides differ by a bounded factor only.
pub fn oneil_check(
    g: &SampledRadialFunction,
    h: &SampledRadialFunction,
    q: f64,
) -> Result<OneilCheck> {
    if !(q > 2.0) {
        return Err(Error::Config(format!("O'Neil check needs q > 2, got {q}")));
    }
    if !g.shares_measure(h) {
        return Err(Error::MeasureMismatch("O'Neil product".into()));
    }
    let r = q / (q - 2.0);
    let q_dual = q / (q - 1.0);
    let product = g.pointwise_product(h)?;
    let lhs = lorentz_norm(&product, q_dual, q);
    let rhs = g.lp_norm(q) * cells_maximal_weak_norm(&WeightedCells::from(h), r);
    Ok(OneilCheck {
        lhs,
        rhs,
        pass: lhs <= rhs * (1.0 + 1e-9),
    })
}

/// Empirical weak-type (p, q) constant of a family:
/// `max over (Tf, f) and t of t * nu({ |Tf| > t })^{1/q} / ||f||_p`.
///
/// The sup over t is exact for step functions (attained at value
/// breakpoints); extra probe points may be supplied through `t_grid`.
pub fn weak_type_constant(
    outputs: &[SpectralFunction],
    inputs: &[SampledRadialFunction],
    t_grid: &[f64],
    p: f64,
    q: f64,
) -> Result<f64> {
    if outputs.len() != inputs.len() {
        return Err(Error::Config(format!(
            "weak-type constant needs paired families, got {} outputs vs {} inputs",
            outputs.len(),
            inputs.len()
        )));
    }
    let mut best: f64 = 0.0;
    for (tf, f) in outputs.iter().zip(inputs) {
        let denom = f.lp_norm(p);
        if denom == 0.0 {
            continue;
        }
        let cells = WeightedCells::from(tf);
        let profile = cells_rearrangement(&cells);
        // sup over t of t * lambda(t)^{1/q}: evaluate at each distinct value
        // (approaching from below) and at the caller's probe points
        for (v, b) in profile.values.iter().zip(profile.breakpoints()) {
            best = best.max(v * b.powf(1.0 / q) / denom);
        }
        for &t in t_grid {
            if t > 0.0 {
                best = best.max(t * cells_distribution(&cells, t).powf(1.0 / q) / denom);
            }
        }
    }
    Ok(best)
}
