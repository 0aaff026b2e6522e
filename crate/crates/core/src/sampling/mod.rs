//! Radial grids, weighted measures, quadrature and the library of
//! W-invariant test functions every inequality is evaluated on.
//!
//! A grid is a composite Gauss-Legendre rule on `[0, x_max]`; a measure is a
//! per-node density against Lebesgue measure on that grid; a sampled function
//! carries complex values plus the measure it is integrated against. All
//! three are immutable after construction.

pub mod quadrature;

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Composite Gauss-Legendre grid on `[0, x_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    x_max: f64,
    panels: usize,
    order: usize,
}

impl RadialGrid {
    pub fn new(x_max: f64, panels: usize, order: usize) -> Result<Self> {
        if !(x_max > 0.0) || panels == 0 || order == 0 {
            return Err(Error::Config(format!(
                "grid needs x_max > 0, panels > 0, order > 0 (got {x_max}, {panels}, {order})"
            )));
        }
        let (ref_nodes, ref_weights) = quadrature::legendre_rule(order);
        let mut nodes = Vec::with_capacity((panels + 1) * order);
        let mut weights = Vec::with_capacity((panels + 1) * order);
        let h = x_max / panels as f64;
        let plain_panel = |a: f64, b: f64, nodes: &mut Vec<f64>, weights: &mut Vec<f64>| {
            let mid = 0.5 * (a + b);
            let half = 0.5 * (b - a);
            for (&x, &w) in ref_nodes.iter().zip(&ref_weights) {
                nodes.push(mid + half * x);
                weights.push(half * w);
            }
        };
        for p in 0..panels {
            let a = h * p as f64;
            if p == 0 && order >= 4 {
                // graded opening piece x = (h/4) u^3: fractional-power
                // densities (J ~ x^beta, non-integer beta) integrate to near
                // machine accuracy, the rule stays exact for dx, and the
                // short extent keeps the substituted phase density below a
                // plain panel's
                let edge = 0.25 * h;
                for (&x, &w) in ref_nodes.iter().zip(&ref_weights) {
                    let u = 0.5 * (x + 1.0);
                    nodes.push(edge * u * u * u);
                    weights.push(1.5 * edge * u * u * w);
                }
                plain_panel(edge, h, &mut nodes, &mut weights);
            } else {
                plain_panel(a, a + h, &mut nodes, &mut weights);
            }
        }
        Ok(Self {
            nodes,
            weights,
            x_max,
            panels,
            order,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Same extent with `factor` times as many panels.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        Self::new(self.x_max, self.panels * factor.max(1), self.order)
    }
}

/// Which density a measure represents; `NuBar` keeps its weight exponents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MeasureLabel {
    MuJ,
    NuPlancherel,
    NuBar {
        a: f64,
        b: f64,
    },
    Mu0Flat,
    Lebesgue,
    /// Anything else (auxiliary weighted spectral measures and the like).
    Custom,
}

/// A density against Lebesgue measure on a radial grid.
#[derive(Debug, Clone)]
pub struct WeightedMeasure {
    grid: Arc<RadialGrid>,
    density: Vec<f64>,
    label: MeasureLabel,
}

impl WeightedMeasure {
    pub fn new(grid: Arc<RadialGrid>, density: Vec<f64>, label: MeasureLabel) -> Result<Self> {
        if density.len() != grid.len() {
            return Err(Error::Config(format!(
                "density length {} does not match grid length {}",
                density.len(),
                grid.len()
            )));
        }
        if density.iter().any(|d| !d.is_finite() || *d < 0.0) {
            return Err(Error::Domain(
                "measure density must be finite and >= 0".into(),
            ));
        }
        Ok(Self {
            grid,
            density,
            label,
        })
    }

    pub fn lebesgue(grid: Arc<RadialGrid>) -> Self {
        let density = vec![1.0; grid.len()];
        Self {
            grid,
            density,
            label: MeasureLabel::Lebesgue,
        }
    }

    /// Density built by evaluating `f` at the grid nodes.
    pub fn from_fn(
        grid: Arc<RadialGrid>,
        label: MeasureLabel,
        f: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        let density = grid.nodes().iter().map(|&x| f(x)).collect();
        Self::new(grid, density, label)
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn label(&self) -> MeasureLabel {
        self.label
    }

    /// Quadrature cell masses `w_i * density_i`.
    pub fn cell_masses(&self) -> impl Iterator<Item = f64> + '_ {
        self.grid
            .weights()
            .iter()
            .zip(&self.density)
            .map(|(w, d)| w * d)
    }

    pub fn structurally_equal(&self, other: &WeightedMeasure) -> bool {
        self.grid.nodes() == other.grid.nodes() && self.density == other.density
    }
}

/// A W-invariant function sampled on a radial grid, together with the
/// weighted measure its norms are taken against.
#[derive(Debug, Clone)]
pub struct SampledRadialFunction {
    measure: Arc<WeightedMeasure>,
    values: Vec<Complex64>,
    compact_support: bool,
}

impl SampledRadialFunction {
    pub fn new(measure: Arc<WeightedMeasure>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != measure.grid().len() {
            return Err(Error::Config(format!(
                "value count {} does not match grid length {}",
                values.len(),
                measure.grid().len()
            )));
        }
        if values
            .iter()
            .any(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(Error::Domain("sampled values must be finite".into()));
        }
        let tail = values.len() / 20;
        let compact_support = tail > 0
            && values[values.len() - tail..]
                .iter()
                .all(|v| v.norm() == 0.0);
        Ok(Self {
            measure,
            values,
            compact_support,
        })
    }

    pub fn sample(measure: Arc<WeightedMeasure>, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = measure.grid().nodes().iter().map(|&x| f(x)).collect();
        Self::new(measure, values)
    }

    pub fn sample_real(measure: Arc<WeightedMeasure>, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::sample(measure, |x| Complex64::new(f(x), 0.0))
    }

    pub fn measure(&self) -> &Arc<WeightedMeasure> {
        &self.measure
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        self.measure.grid()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn compact_support(&self) -> bool {
        self.compact_support
    }

    pub fn shares_measure(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.measure, &other.measure)
            || self.measure.structurally_equal(&other.measure)
    }

    /// Integral against the attached measure over the grid.
    pub fn integrate(&self) -> Complex64 {
        self.measure
            .cell_masses()
            .zip(&self.values)
            .map(|(m, v)| v * m)
            .sum()
    }

    /// Integral plus a heuristic tail-truncation estimate: the absolute mass
    /// carried by the outer tenth of the grid, which bounds what an
    /// exponentially decaying integrand can still contribute past `x_max`.
    pub fn integrate_with_tail(&self) -> (Complex64, f64) {
        let value = self.integrate();
        let start = self.values.len() - self.values.len() / 10;
        let tail = self
            .measure
            .cell_masses()
            .zip(&self.values)
            .skip(start)
            .map(|(m, v)| v.norm() * m)
            .sum();
        (value, tail)
    }

    /// L^p norm against the attached measure, p >= 1.
    pub fn lp_norm(&self, p: f64) -> f64 {
        assert!(p >= 1.0, "lp_norm needs p >= 1, got {p}");
        let sum: f64 = self
            .measure
            .cell_masses()
            .zip(&self.values)
            .map(|(m, v)| m * v.norm().powf(p))
            .sum();
        sum.powf(1.0 / p)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Pointwise product; both factors must live on the same measure.
    pub fn pointwise_product(&self, other: &Self) -> Result<Self> {
        if !self.shares_measure(other) {
            return Err(Error::MeasureMismatch("pointwise product".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Self::new(self.measure.clone(), values)
    }

    pub fn scaled(&self, c: f64) -> Self {
        let values = self.values.iter().map(|v| v * c).collect();
        Self {
            measure: self.measure.clone(),
            values,
            compact_support: self.compact_support,
        }
    }
}

/// The shipped test-function families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TestFamily {
    /// Even-symmetrized Gaussian, normalized so the centered bump has f(0)=1.
    GaussianBump { center: f64, width: f64 },
    /// f(t) = (cosh t)^{-sigma}.
    CoshPower { sigma: f64 },
    /// Smooth plateau: 1 on [center-inner, center+inner], 0 outside
    /// [center-outer, center+outer].
    PlateauBump { center: f64, inner: f64, outer: f64 },
    /// Seeded random cosine packet under a Gaussian envelope.
    RandomBand { seed: u64, components: usize },
}

impl TestFamily {
    pub fn id(&self) -> String {
        match self {
            TestFamily::GaussianBump { center, width } => {
                format!("gaussian_c{center}_w{width}")
            }
            TestFamily::CoshPower { sigma } => format!("cosh_pow_{sigma}"),
            TestFamily::PlateauBump {
                center,
                inner,
                outer,
            } => {
                format!("plateau_c{center}_{inner}_{outer}")
            }
            TestFamily::RandomBand { seed, .. } => format!("random_band_{seed}"),
        }
    }
}

/// Decay requirement `|f(x)| e^{rate x} -> 0`, enforced on the outer quarter
/// of the grid so divergent weighted norms are rejected up front.
#[derive(Debug, Clone, Copy)]
pub struct IntegrabilityGuard {
    pub growth_rate: f64,
}

/// Build a test function on the given measure. The guard, when present,
/// rejects families whose weighted integrand fails to decay.
pub fn make_test_function(
    family: &TestFamily,
    measure: &Arc<WeightedMeasure>,
    guard: Option<IntegrabilityGuard>,
) -> Result<SampledRadialFunction> {
    if let (TestFamily::CoshPower { sigma }, Some(g)) = (family, guard) {
        if *sigma <= g.growth_rate {
            return Err(Error::Config(format!(
                "cosh_power needs sigma > growth rate: sigma = {sigma} <= {}",
                g.growth_rate
            )));
        }
    }
    let f = sample_family(family, measure)?;
    if let Some(g) = guard {
        check_decay(&f, g, &family.id())?;
    }
    Ok(f)
}

fn sample_family(
    family: &TestFamily,
    measure: &Arc<WeightedMeasure>,
) -> Result<SampledRadialFunction> {
    match family {
        TestFamily::GaussianBump { center, width } => {
            if *width <= 0.0 {
                return Err(Error::Config("gaussian_bump needs width > 0".into()));
            }
            let (c, w) = (*center, *width);
            SampledRadialFunction::sample_real(measure.clone(), move |x| {
                0.5 * ((-((x - c) / w).powi(2) / 2.0).exp() + (-((x + c) / w).powi(2) / 2.0).exp())
            })
        }
        TestFamily::CoshPower { sigma } => {
            if *sigma <= 0.0 {
                return Err(Error::Config("cosh_power needs sigma > 0".into()));
            }
            let s = *sigma;
            SampledRadialFunction::sample_real(measure.clone(), move |x| x.cosh().powf(-s))
        }
        TestFamily::PlateauBump {
            center,
            inner,
            outer,
        } => {
            if !(0.0 <= *inner && inner < outer) {
                return Err(Error::Config(
                    "plateau_bump needs 0 <= inner < outer".into(),
                ));
            }
            let (c, a, b) = (*center, *inner, *outer);
            SampledRadialFunction::sample_real(measure.clone(), move |x| plateau(x, c, a, b))
        }
        TestFamily::RandomBand { seed, components } => {
            let n = (*components).max(1);
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let amps: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let freqs: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..3.0)).collect();
            let w: f64 = rng.gen_range(1.0..2.0);
            SampledRadialFunction::sample_real(measure.clone(), move |x| {
                let packet: f64 = amps
                    .iter()
                    .zip(&freqs)
                    .map(|(a, f)| a * (f * x).cos())
                    .sum();
                packet * (-x * x / (2.0 * w * w)).exp()
            })
        }
    }
}

fn plateau(x: f64, center: f64, inner: f64, outer: f64) -> f64 {
    let s = (x.abs() - center).abs();
    if s <= inner {
        1.0
    } else if s >= outer {
        0.0
    } else {
        smooth_step((outer - s) / (outer - inner))
    }
}

fn smooth_step(v: f64) -> f64 {
    let h = |u: f64| if u > 0.0 { (-1.0 / u).exp() } else { 0.0 };
    h(v) / (h(v) + h(1.0 - v))
}

fn check_decay(f: &SampledRadialFunction, g: IntegrabilityGuard, id: &str) -> Result<()> {
    let nodes = f.grid().nodes();
    let n = nodes.len();
    let start = 3 * n / 4;
    let weighted: Vec<f64> = (start..n)
        .map(|i| f.values()[i].norm() * (g.growth_rate * nodes[i]).exp())
        .collect();
    let head = weighted[..weighted.len() / 2]
        .iter()
        .fold(0.0f64, |m, &v| m.max(v));
    let tail = weighted[weighted.len() / 2..]
        .iter()
        .fold(0.0f64, |m, &v| m.max(v));
    // compactly supported functions vanish out there and pass trivially
    if tail > head.max(1e-300) && tail > 1e-14 {
        return Err(Error::Config(format!(
            "integrability guard failed for {id}: |f(x)| e^{{{} x}} grows on the last quarter of the grid \
             ({head:.3e} -> {tail:.3e})",
            g.growth_rate
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn grid(x_max: f64, panels: usize) -> Arc<RadialGrid> {
        Arc::new(RadialGrid::new(x_max, panels, 32).unwrap())
    }

    #[test]
    fn grid_reproduces_interval_length() {
        let g = grid(20.0, 20);
        assert!(g.nodes().windows(2).all(|p| p[0] < p[1]));
        assert!(g.weights().iter().all(|&w| w > 0.0));
        let total: f64 = g.weights().iter().sum();
        assert_relative_eq!(total, 20.0, epsilon = 1e-12 * 20.0);
    }

    #[test]
    fn integrate_basics() {
        let g = grid(10.0, 10);
        let leb = Arc::new(WeightedMeasure::lebesgue(g.clone()));

        let zero = SampledRadialFunction::sample_real(leb.clone(), |_| 0.0).unwrap();
        assert_eq!(zero.integrate(), Complex64::new(0.0, 0.0));

        let ind =
            SampledRadialFunction::sample_real(leb.clone(), |x| if x <= 1.0 { 1.0 } else { 0.0 })
                .unwrap();
        assert_relative_eq!(ind.integrate().re, 1.0, epsilon = 1e-12);

        let gauss = SampledRadialFunction::sample_real(leb, |x| (-x * x).exp()).unwrap();
        assert_relative_eq!(
            gauss.integrate().re,
            std::f64::consts::PI.sqrt() / 2.0,
            epsilon = 1e-10
        );
    }

    #[test]
    fn lp_norm_basics() {
        let g = grid(10.0, 10);
        let leb = Arc::new(WeightedMeasure::lebesgue(g));
        let ind =
            SampledRadialFunction::sample_real(leb.clone(), |x| if x <= 1.0 { 1.0 } else { 0.0 })
                .unwrap();
        for &p in &[1.0, 1.5, 2.0, 3.0] {
            assert_relative_eq!(ind.lp_norm(p), 1.0, epsilon = 1e-10);
        }
        let zero = SampledRadialFunction::sample_real(leb, |_| 0.0).unwrap();
        assert_eq!(zero.lp_norm(2.0), 0.0);
    }

    #[test]
    fn gaussian_bump_normalization() {
        let g = grid(10.0, 10);
        let leb = Arc::new(WeightedMeasure::lebesgue(g));
        let f = make_test_function(
            &TestFamily::GaussianBump {
                center: 0.0,
                width: 1.0,
            },
            &leb,
            None,
        )
        .unwrap();
        // value at the first node is essentially f(0) = 1
        let x0 = f.grid().nodes()[0];
        assert_relative_eq!(f.values()[0].re, (-x0 * x0 / 2.0).exp(), epsilon = 1e-12);
    }

    #[test]
    fn plateau_support() {
        let g = grid(10.0, 10);
        let leb = Arc::new(WeightedMeasure::lebesgue(g));
        let f = make_test_function(
            &TestFamily::PlateauBump {
                center: 1.5,
                inner: 0.5,
                outer: 1.5,
            },
            &leb,
            None,
        )
        .unwrap();
        for (i, &x) in f.grid().nodes().iter().enumerate() {
            if x > 3.0 {
                assert_eq!(
                    f.values()[i].re,
                    0.0,
                    "plateau leaked past its support at {x}"
                );
            }
            if (1.1..1.9).contains(&x) {
                assert_eq!(f.values()[i].re, 1.0);
            }
        }
        assert!(f.compact_support());
    }

    #[test]
    fn cosh_power_guard() {
        let g = grid(20.0, 20);
        let leb = Arc::new(WeightedMeasure::lebesgue(g));
        let err = make_test_function(
            &TestFamily::CoshPower { sigma: 0.5 },
            &leb,
            Some(IntegrabilityGuard { growth_rate: 1.0 }),
        );
        assert!(matches!(err, Err(Error::Config(_))));
        assert!(make_test_function(
            &TestFamily::CoshPower { sigma: 4.0 },
            &leb,
            Some(IntegrabilityGuard { growth_rate: 1.0 }),
        )
        .is_ok());
    }

    #[test]
    fn cosh_power_l1_matches_refined_grid() {
        // rho = 1/2 type weight: density e^{x} stands in for J's growth
        let coarse = grid(20.0, 20);
        let fine = grid(20.0, 60);
        let mk = |g: &Arc<RadialGrid>| {
            let m = Arc::new(
                WeightedMeasure::from_fn(g.clone(), MeasureLabel::Custom, |x| x.exp()).unwrap(),
            );
            make_test_function(&TestFamily::CoshPower { sigma: 4.0 }, &m, None)
                .unwrap()
                .lp_norm(1.0)
        };
        let a = mk(&coarse);
        let b = mk(&fine);
        assert_relative_eq!(a, b, max_relative = 1e-6);
    }

    #[test]
    fn refinement_stability() {
        // shipped defaults use order-64 panels
        let base = Arc::new(RadialGrid::new(20.0, 20, 64).unwrap());
        let refined = Arc::new(base.refined(2).unwrap());
        for family in [
            TestFamily::GaussianBump {
                center: 1.5,
                width: 0.5,
            },
            TestFamily::CoshPower { sigma: 3.0 },
            TestFamily::PlateauBump {
                center: 2.0,
                inner: 0.4,
                outer: 1.0,
            },
            TestFamily::RandomBand {
                seed: 7,
                components: 4,
            },
        ] {
            let m1 = Arc::new(WeightedMeasure::lebesgue(base.clone()));
            let m2 = Arc::new(WeightedMeasure::lebesgue(refined.clone()));
            let i1 = make_test_function(&family, &m1, None).unwrap().integrate();
            let i2 = make_test_function(&family, &m2, None).unwrap().integrate();
            let scale = i2.norm().max(1e-6);
            assert!(
                (i1 - i2).norm() <= 1e-8 * scale,
                "refinement moved integral of {} by {:.2e}",
                family.id(),
                (i1 - i2).norm() / scale
            );
        }
    }

    #[test]
    fn tail_control_when_extending_grid() {
        // exponentially growing density, exponentially beaten by the test family
        let near = grid(20.0, 20);
        let far = grid(30.0, 30);
        let mk = |g: &Arc<RadialGrid>| {
            let m = Arc::new(
                WeightedMeasure::from_fn(g.clone(), MeasureLabel::Custom, |x| (2.0 * x).exp())
                    .unwrap(),
            );
            make_test_function(
                &TestFamily::GaussianBump {
                    center: 0.0,
                    width: 1.0,
                },
                &m,
                None,
            )
            .unwrap()
            .lp_norm(1.5)
        };
        let a = mk(&near);
        let b = mk(&far);
        assert_relative_eq!(a, b, max_relative = 1e-8);
    }
}
