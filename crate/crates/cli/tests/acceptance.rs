//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! with the measured quantities. Run with `cargo test --test acceptance`
//! (add `-- --nocapture` to see the measurements).

use std::sync::{Arc, OnceLock};

use hotrans::harness::{
    check_flat_hl, check_flat_plancherel, check_flat_rs, check_hausdorff_young,
    check_hausdorff_young_shifted, check_hl_ver3_i, check_hl_ver3_ii, check_hl_weighted,
    check_hl_young, check_plancherel, Context, GridSpec, InequalityReport, WeightSpec,
};
use hotrans::lorentz::{cells_lorentz_norm, cells_rearrangement, oneil_check, WeightedCells};
use hotrans::root_datum::RootDatum;
use hotrans::sampling::{RadialGrid, SampledRadialFunction, WeightedMeasure};
use hotrans::special::bessel_j;
use hotrans::transforms::{eps_contraction, flat_psi, phi};
use hotrans::Complex64;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn grid_for(rho: f64) -> GridSpec {
    // the cosh family member's transform decays like xi^{sigma-1} e^{-pi xi/2};
    // the spectral extent must push that below the inversion guard
    let spectral_max = if rho > 1.0 { 28.0 } else { 20.0 };
    GridSpec {
        x_max: if rho > 1.0 { 20.0 } else { 16.0 },
        x_panels: if rho > 1.0 { 20 } else { 16 },
        spectral_max,
        spectral_panels: spectral_max as usize,
        order: 40,
    }
}

fn ctx(ma: f64, m2a: f64) -> Context {
    let datum = RootDatum::rank_one(ma, m2a).unwrap();
    let grid = grid_for(datum.rho());
    Context::build(datum, grid).unwrap()
}

fn ctx_10() -> &'static Context {
    static C: OnceLock<Context> = OnceLock::new();
    C.get_or_init(|| ctx(1.0, 0.0))
}

fn ctx_10_doubled() -> &'static Context {
    static C: OnceLock<Context> = OnceLock::new();
    C.get_or_init(|| {
        let datum = RootDatum::rank_one(1.0, 0.0).unwrap();
        Context::build(datum, grid_for(0.5).refined(2)).unwrap()
    })
}

fn ctx_21() -> &'static Context {
    static C: OnceLock<Context> = OnceLock::new();
    C.get_or_init(|| ctx(2.0, 1.0))
}

fn ctx_53() -> &'static Context {
    static C: OnceLock<Context> = OnceLock::new();
    C.get_or_init(|| ctx(0.5, 0.3))
}

fn all_data() -> [&'static Context; 3] {
    [ctx_10(), ctx_21(), ctx_53()]
}

fn rows_with_suffix<'r>(
    rep: &'r InequalityReport,
    suffix: &str,
) -> Vec<&'r hotrans::harness::ReportRow> {
    rep.rows
        .iter()
        .filter(|r| r.function_id.ends_with(suffix))
        .collect()
}

#[test]
fn criterion_01_plancherel_isometry() {
    let mut worst: f64 = 0.0;
    for ctx in all_data() {
        let rep = check_plancherel(ctx).unwrap();
        let iso = rows_with_suffix(&rep, ":isometry");
        assert!(iso.len() >= 5, "need at least five isometry rows");
        for row in iso {
            worst = worst.max((row.ratio - 1.0).abs());
            assert!(
                (row.ratio - 1.0).abs() <= 1e-3,
                "{} ({}): isometry ratio {}",
                rep.datum,
                row.function_id,
                row.ratio
            );
        }
    }
    println!("criterion 01 (Plancherel isometry 1 +/- 1e-3, 3 data x 5+ functions): PASS, worst |ratio-1| = {worst:.2e}");
}

#[test]
fn criterion_02_inversion_roundtrip() {
    let mut worst: f64 = 0.0;
    for ctx in all_data() {
        let rep = check_plancherel(ctx).unwrap();
        let rt = rows_with_suffix(&rep, ":roundtrip");
        assert!(rt.len() >= 5);
        for row in rt {
            worst = worst.max(row.ratio);
            assert!(
                row.ratio <= 1e-3,
                "{} ({}): relative L^2 roundtrip error {}",
                rep.datum,
                row.function_id,
                row.ratio
            );
        }
    }
    println!("criterion 02 (inversion roundtrip rel L^2 error <= 1e-3): PASS, worst = {worst:.2e}");
}

#[test]
fn criterion_03_kernel_bound() {
    let mut worst: f64 = 0.0;
    for (ma, m2a) in [(1.0, 0.0), (2.0, 1.0)] {
        let datum = RootDatum::rank_one(ma, m2a).unwrap();
        let rho = datum.rho();
        for &xi in &[0.0, 1.0, 5.0] {
            for i in 0..50 {
                let eta = -rho + 2.0 * rho * i as f64 / 49.0;
                let lam = Complex64::new(eta, xi);
                for j in 0..50 {
                    let x = 12.0 * j as f64 / 49.0;
                    let v = phi(&datum, lam, x).unwrap().norm();
                    worst = worst.max(v);
                    assert!(
                        v <= 1.0 + 1e-8,
                        "|phi| = {v} at m=({ma},{m2a}), eta={eta}, xi={xi}, x={x}"
                    );
                }
            }
        }
    }
    println!(
        "criterion 03 (|phi_(i xi + eta)| <= 1 + 1e-8 on 50x50 x 3 xi): PASS, sup = {worst:.12}"
    );
}

#[test]
fn criterion_04_c_function() {
    let mut worst_norm: f64 = 0.0;
    let mut bounds = Vec::new();
    for (ma, m2a) in [(1.0, 0.0), (2.0, 0.0), (2.0, 1.0), (0.5, 0.3)] {
        let datum = RootDatum::rank_one(ma, m2a).unwrap();
        let at_rho = datum.c_function(Complex64::new(datum.rho(), 0.0)).unwrap();
        worst_norm = worst_norm.max((at_rho - Complex64::new(1.0, 0.0)).norm());
        assert!((at_rho - Complex64::new(1.0, 0.0)).norm() <= 1e-12);

        let beta = datum.beta();
        let mut lo = f64::INFINITY;
        let mut hi: f64 = 0.0;
        for i in 0..=400 {
            let xi = 10f64.powf(-2.0 + 4.0 * i as f64 / 400.0);
            let ratio = datum.c_inv_sq(xi).unwrap() / (xi * xi * (1.0 + xi).powf(beta - 2.0));
            assert!(ratio.is_finite() && ratio > 0.0);
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
        bounds.push(((ma, m2a), lo, hi));
    }
    println!("criterion 04 (c(rho)=1 to 1e-12; two-sided |c|^-2 bound): PASS, worst |c(rho)-1| = {worst_norm:.2e}, [L,U] = {bounds:?}");
}

#[test]
fn criterion_05_closed_forms() {
    // curved kernel for m = (2,0)
    let d20 = RootDatum::rank_one(2.0, 0.0).unwrap();
    let mut worst_curved: f64 = 0.0;
    for &(xi, t) in &[(2.0f64, 1.5f64), (0.5, 0.7), (4.0, 3.2), (1.0, 6.0)] {
        let got = phi(&d20, Complex64::new(0.0, xi), t).unwrap();
        let expect = (xi * t).sin() / (xi * t.sinh());
        let err = (got - expect).norm() / expect.abs().max(1e-8);
        worst_curved = worst_curved.max(err);
        assert!(
            err <= 1e-9,
            "curved closed form at (xi,t)=({xi},{t}): err {err:.2e}"
        );
    }
    // flat kernel for m = (2,0)
    let mut worst_flat: f64 = 0.0;
    for &(xi, t) in &[(3.0f64, 2.0f64), (1.0, 0.4), (7.0, 1.3)] {
        let got = flat_psi(&d20, xi, t).unwrap();
        let expect = (xi * t).sin() / (xi * t);
        let err = (got - expect).abs();
        worst_flat = worst_flat.max(err);
        assert!(
            err <= 1e-12,
            "flat closed form at ({xi},{t}): err {err:.2e}"
        );
    }
    // J_{1/2}
    let mut worst_bessel: f64 = 0.0;
    for &x in &[0.5f64, 2.0, 9.0, 17.0, 40.0] {
        let got = bessel_j(0.5, x).unwrap();
        let expect = (2.0 / (std::f64::consts::PI * x)).sqrt() * x.sin();
        let err = (got - expect).abs() / expect.abs().max(1e-6);
        worst_bessel = worst_bessel.max(err);
        assert!(err <= 1e-10, "J_1/2({x}): err {err:.2e}");
    }
    println!("criterion 05 (closed forms): PASS, curved {worst_curved:.2e} (<=1e-9), flat {worst_flat:.2e} (<=1e-12), J_1/2 {worst_bessel:.2e} (<=1e-10)");
}

#[test]
fn criterion_06_flat_limit() {
    let datum = RootDatum::rank_one(1.0, 0.0).unwrap();
    let xi = 1.0;
    let sup_err = |eps: f64| -> f64 {
        (0..=100)
            .map(|i| {
                let t = 5.0 * i as f64 / 100.0;
                (eps_contraction(&datum, eps, xi, t).unwrap() - flat_psi(&datum, xi, t).unwrap())
                    .norm()
            })
            .fold(0.0, f64::max)
    };
    let errs: Vec<f64> = [0.2, 0.1, 0.05, 0.02].iter().map(|&e| sup_err(e)).collect();
    assert!(errs[2] <= 0.05, "error at eps=0.05 is {}", errs[2]);
    for w in errs.windows(2) {
        assert!(w[1] <= w[0] + 1e-9, "not monotone: {errs:?}");
    }
    println!(
        "criterion 06 (flat limit): PASS, sup errors along eps {{0.2,0.1,0.05,0.02}} = {errs:?}"
    );
}

#[test]
fn criterion_07_lorentz_machinery() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst_pp: f64 = 0.0;
    let mut worst_equi: f64 = 0.0;
    let mut worst_mono: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.gen_range(3..60);
        let values: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..4.0)).collect();
        let masses: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..2.0)).collect();
        let cells = WeightedCells::new(values.clone(), masses.clone()).unwrap();
        for &p in &[1.5, 2.0, 3.0] {
            let lp = cells.lp_norm(p);
            if lp > 0.0 {
                worst_pp = worst_pp.max((cells_lorentz_norm(&cells, p, p) / lp - 1.0).abs());
            }
            let n1 = cells_lorentz_norm(&cells, p, 1.0);
            let n2 = cells_lorentz_norm(&cells, p, 2.0);
            if n1 > 0.0 {
                worst_mono = worst_mono.max(n2 / n1 - 1.0);
            }
        }
        let profile = cells_rearrangement(&cells);
        for &p in &[1.0, 2.0, 3.5] {
            let direct: f64 = values.iter().zip(&masses).map(|(v, m)| m * v.powf(p)).sum();
            if direct > 0.0 {
                worst_equi = worst_equi.max((profile.power_integral(p) / direct - 1.0).abs());
            }
        }
    }
    assert!(
        worst_pp <= 1e-10,
        "Lorentz (p,p) deviates from L^p by {worst_pp:.2e}"
    );
    assert!(
        worst_equi <= 1e-10,
        "equimeasurability off by {worst_equi:.2e}"
    );
    assert!(
        worst_mono <= 1e-12,
        "second-index monotonicity violated by {worst_mono:.2e}"
    );
    println!("criterion 07 (Lorentz machinery on 100 random step functions): PASS, dev(p,p) = {worst_pp:.2e}, equi = {worst_equi:.2e}");
}

#[test]
fn criterion_08_oneil() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut worst: f64 = 0.0;
    for &q in &[3.0, 4.0, 6.0] {
        for _ in 0..100 {
            let n = rng.gen_range(2..40);
            let grid = Arc::new(RadialGrid::new(n as f64, n, 1).unwrap());
            let measure = Arc::new(WeightedMeasure::lebesgue(grid));
            let g = SampledRadialFunction::new(
                measure.clone(),
                (0..n)
                    .map(|_| Complex64::new(rng.gen_range(0.0..4.0), 0.0))
                    .collect(),
            )
            .unwrap();
            let h = SampledRadialFunction::new(
                measure,
                (0..n)
                    .map(|_| Complex64::new(rng.gen_range(0.0..4.0), 0.0))
                    .collect(),
            )
            .unwrap();
            let check = oneil_check(&g, &h, q).unwrap();
            assert!(
                check.pass,
                "O'Neil violated at q={q}: lhs={} rhs={}",
                check.lhs, check.rhs
            );
            if check.rhs > 0.0 {
                worst = worst.max(check.lhs / check.rhs);
            }
        }
    }
    println!(
        "criterion 08 (O'Neil, 300 random pairs, zero violations): PASS, max lhs/rhs = {worst:.12}"
    );
}

#[test]
fn criterion_09_hausdorff_young_suites() {
    let base = ctx_10();
    let fine = ctx_10_doubled();

    let mut drifts = Vec::new();
    for p in [1.5, 2.0] {
        let a = check_hausdorff_young(base, p).unwrap();
        let b = check_hausdorff_young(fine, p).unwrap();
        assert!(a.pass && b.pass);
        let drift = (a.max_ratio / b.max_ratio - 1.0).abs();
        assert!(drift <= 0.02, "HY p={p} drifts {drift:.3} under doubling");
        drifts.push(drift);
        if p == 2.0 {
            for row in &a.rows {
                assert!((row.ratio - 1.0).abs() <= 1e-3, "p=2 degeneration: {row:?}");
            }
        }
    }
    // shifted variant inside the tube (eps_p rho = 1/6 at p = 1.5)
    let a = check_hausdorff_young_shifted(base, 1.5, 0.08).unwrap();
    let b = check_hausdorff_young_shifted(fine, 1.5, 0.08).unwrap();
    assert!(a.pass && b.pass, "shifted HY failed (decay check included)");
    assert!(a.parameters["decay_worst"] <= 1e-3);
    let drift = (a.max_ratio / b.max_ratio - 1.0).abs();
    assert!(drift <= 0.02);
    drifts.push(drift);
    // stress the tube boundary: eta at 99% of eps_p rho stays finite
    let stress = check_hausdorff_young_shifted(base, 1.5, 0.99 / 6.0).unwrap();
    assert!(stress.max_ratio.is_finite());
    println!("criterion 09 (Hausdorff-Young suites): PASS, doubling drifts = {drifts:?}, boundary max ratio = {:.3e}", stress.max_ratio);
}

#[test]
fn criterion_10_weighted_hardy_littlewood() {
    let base = ctx_10();
    let fine = ctx_10_doubled();
    let w = WeightSpec::natural(base.datum.beta(), 1.0);
    let mut ratios = Vec::new();
    for p in [1.25, 1.5, 1.75] {
        let a = check_hl_weighted(base, p, w).unwrap();
        assert!(a.pass, "hl_weighted p={p} failed");
        assert!(a.parameters["psi_max"].is_finite() && a.parameters["psi_min"] > 0.0);
        assert!(a.max_ratio.is_finite());
        ratios.push(a.max_ratio);
        let b = check_hl_weighted(fine, p, w).unwrap();
        let weak_a = a.parameters["weak11_constant"];
        let weak_b = b.parameters["weak11_constant"];
        assert!(
            (weak_a / weak_b - 1.0).abs() <= 0.2,
            "weak-(1,1) constant unstable at p={p}: {weak_a} vs {weak_b}"
        );
    }
    println!(
        "criterion 10 (weighted HL, k=beta, a=0, b=-(2beta+2n)): PASS, L^p max ratios = {ratios:?}"
    );
}

#[test]
fn criterion_11_hl_young_and_ver3() {
    let base = ctx_10();
    let fine = ctx_10_doubled();

    let a = check_hl_young(base, 4.0).unwrap();
    let b = check_hl_young(fine, 4.0).unwrap();
    assert!(a.pass && b.pass);
    assert!((a.max_ratio / b.max_ratio - 1.0).abs() <= 0.02);
    assert!(a.parameters["young_psi_h_sup"].is_finite());

    let a1 = check_hl_ver3_i(base, 2.0, 1.5, 0.0).unwrap();
    let b1 = check_hl_ver3_i(fine, 2.0, 1.5, 0.0).unwrap();
    assert!(a1.pass && b1.pass);
    assert!((a1.max_ratio / b1.max_ratio - 1.0).abs() <= 0.02);
    assert!(a1.parameters["g_ratio_min"] > 0.0 && a1.parameters["g_ratio_max"].is_finite());

    let a2 = check_hl_ver3_ii(base, 2.0, 2.5, 0.0).unwrap();
    let b2 = check_hl_ver3_ii(fine, 2.0, 2.5, 0.0).unwrap();
    assert!(a2.pass && b2.pass);
    assert!((a2.max_ratio / b2.max_ratio - 1.0).abs() <= 0.02);
    assert!(a2.parameters["young_j_sup"].is_finite());

    // Plancherel degenerations at p = q = 2
    let d1 = check_hl_ver3_i(base, 2.0, 2.0, 0.0).unwrap();
    for row in d1.rows.iter().filter(|r| !r.function_id.contains(':')) {
        assert!(
            (row.ratio - 1.0).abs() <= 1e-3,
            "ver3(i) degeneration: {row:?}"
        );
    }
    let d2 = check_hl_ver3_ii(base, 2.0, 2.0, 0.0).unwrap();
    for row in d2.rows.iter().filter(|r| !r.function_id.contains(':')) {
        assert!(
            (row.ratio - 1.0).abs() <= 1e-3,
            "ver3(ii) degeneration: {row:?}"
        );
    }
    println!(
        "criterion 11 (q>2 Young suite + two-part HL): PASS, max ratios = [{:.3}, {:.3}, {:.3}], young sups = [{:.3}, {:.3}]",
        a.max_ratio, a1.max_ratio, a2.max_ratio,
        a.parameters["young_psi_h_sup"], a2.parameters["young_j_sup"]
    );
}

#[test]
fn criterion_12_flat_suites() {
    let base = ctx_10();
    let fine = ctx_10_doubled();

    let pl = check_flat_plancherel(base).unwrap();
    assert!(pl.pass);
    for row in &pl.rows {
        assert!((row.ratio - 1.0).abs() <= 1e-3, "flat isometry: {row:?}");
    }

    // p -> 2 degeneration of the flat HL weight
    let deg = check_flat_hl(base, 2.0).unwrap();
    for row in &deg.rows {
        assert!(
            (row.ratio - 1.0).abs() <= 1e-3,
            "flat HL degeneration: {row:?}"
        );
    }

    let mut drifts = Vec::new();
    let a = check_flat_hl(base, 1.5).unwrap();
    let b = check_flat_hl(fine, 1.5).unwrap();
    assert!(a.pass && b.pass);
    drifts.push((a.max_ratio / b.max_ratio - 1.0).abs());

    let a1 = check_flat_rs(base, 1.5, 1.25).unwrap();
    let b1 = check_flat_rs(fine, 1.5, 1.25).unwrap();
    assert!(a1.pass && b1.pass);
    drifts.push((a1.max_ratio / b1.max_ratio - 1.0).abs());

    let a2 = check_flat_rs(base, 2.0, 3.0).unwrap();
    let b2 = check_flat_rs(fine, 2.0, 3.0).unwrap();
    assert!(a2.pass && b2.pass);
    drifts.push((a2.max_ratio / b2.max_ratio - 1.0).abs());
    for d in &drifts {
        assert!(*d <= 0.02, "flat suites drift under doubling: {drifts:?}");
    }

    // norm-power Young dichotomy: constant exactly at k = beta + n,
    // divergent sweep ranges half a step away
    assert!(a1.parameters["young_range_at_k"] <= 1.0 + 1e-9);
    assert!(a1.parameters["young_range_minus"] >= 10.0);
    assert!(a1.parameters["young_range_plus"] >= 10.0);
    println!(
        "criterion 12 (flat suites): PASS, drifts = {drifts:?}, young ranges at k/k-0.5/k+0.5 = [{:.3}, {:.1}, {:.1}]",
        a1.parameters["young_range_at_k"],
        a1.parameters["young_range_minus"],
        a1.parameters["young_range_plus"]
    );
}

#[test]
fn criterion_13_determinism() {
    use std::process::Command;

    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("config.toml");
    std::fs::write(
        &config_path,
        r#"
seed = 99

[datum]
kind = "rank_one"
m_alpha = 1.0
m_2alpha = 0.0

[grid]
x_max = 10.0
x_panels = 10
spectral_max = 10.0
spectral_panels = 10
order = 24

[[suite]]
id = "hausdorff_young"
p = 1.5

[[suite]]
id = "lorentz_properties"
trials = 60

[[suite]]
id = "oneil_random"
trials = 60
"#,
    )
    .unwrap();

    let run = |out: &std::path::Path| {
        let status = Command::new(env!("CARGO_BIN_EXE_hotrans"))
            .args(["run"])
            .arg(&config_path)
            .arg("--out")
            .arg(out)
            .status()
            .expect("binary runs");
        assert!(status.success(), "harness run failed");
    };
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    run(&out_a);
    run(&out_b);

    let mut names: Vec<String> = std::fs::read_dir(&out_a)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert!(names.len() >= 4, "expected reports, got {names:?}");
    let mut compared = 0;
    for name in names {
        if name == "timings.csv" {
            continue; // timings are excluded from the determinism contract
        }
        let a = std::fs::read(out_a.join(&name)).unwrap();
        let b = std::fs::read(out_b.join(&name)).unwrap();
        assert_eq!(a, b, "artifact {name} differs between identical runs");
        compared += 1;
    }
    println!(
        "criterion 13 (determinism): PASS, {compared} artifacts byte-identical modulo timings"
    );
}
