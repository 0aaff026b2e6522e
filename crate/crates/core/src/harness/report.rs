use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One function's contribution to an inequality check. A flagged row is
/// excluded from the pass decision, with the flag explaining why.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportRow {
    pub function_id: String,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
}

/// Grid parameters a report was produced with.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct GridMeta {
    pub x_max: f64,
    pub x_panels: usize,
    pub spectral_max: f64,
    pub spectral_panels: usize,
    pub order: usize,
}

/// Outcome of one inequality suite: per-function left/right sides, the
/// estimated constant (max ratio), parameters, and grid metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InequalityReport {
    pub suite: String,
    pub datum: String,
    pub parameters: BTreeMap<String, f64>,
    pub notes: Vec<String>,
    pub rows: Vec<ReportRow>,
    pub max_ratio: f64,
    pub threshold: f64,
    pub pass: bool,
    pub grid: GridMeta,
}

impl InequalityReport {
    pub fn new(suite: &str, datum: String, grid: GridMeta, threshold: f64) -> Self {
        Self {
            suite: suite.to_string(),
            datum,
            parameters: BTreeMap::new(),
            notes: Vec::new(),
            rows: Vec::new(),
            max_ratio: 0.0,
            threshold,
            pass: false,
            grid,
        }
    }

    pub fn set_param(&mut self, key: &str, value: f64) {
        self.parameters.insert(key.to_string(), value);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn push_row(&mut self, function_id: impl Into<String>, lhs: f64, rhs: f64) {
        let ratio = if rhs == 0.0 {
            if lhs == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            lhs / rhs
        };
        self.rows.push(ReportRow {
            function_id: function_id.into(),
            lhs,
            rhs,
            ratio,
            flag: None,
        });
    }

    pub fn push_flagged(
        &mut self,
        function_id: impl Into<String>,
        lhs: f64,
        rhs: f64,
        flag: String,
    ) {
        self.push_row(function_id, lhs, rhs);
        self.rows.last_mut().expect("just pushed").flag = Some(flag);
    }

    /// Fill `max_ratio` and the pass flag: every unflagged row must have a
    /// finite ratio and the largest one must not exceed the declared bound.
    /// `extra_ok` folds in suite-specific side conditions.
    pub fn finalize(&mut self, extra_ok: bool) {
        let active: Vec<&ReportRow> = self.rows.iter().filter(|r| r.flag.is_none()).collect();
        self.max_ratio = active.iter().map(|r| r.ratio).fold(0.0, f64::max);
        let all_finite = active.iter().all(|r| r.ratio.is_finite());
        self.pass = extra_ok && all_finite && self.max_ratio <= self.threshold;
    }

    /// Flat CSV rows: suite, function_id, lhs, rhs, ratio.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,function_id,lhs,rhs,ratio\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{:.17e},{:.17e},{:.17e}\n",
                self.suite, r.function_id, r.lhs, r.rhs, r.ratio
            ));
        }
        out
    }
}

/// Exponent triple (k, a, b) for the weighted Hardy-Littlewood suite.
///
/// Blocking validation enforces the balance identity
/// `a + b + beta + n = -(k + n)` together with the two boundedness
/// conditions `2(k+n) + a >= 0` and `2(k+n) + a + b <= 0` that make the
/// spectral weight psi bounded. The extra constraint
/// `a + b <= (2/3)(n - beta)` is recorded but does not block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub k: f64,
    pub a: f64,
    pub b: f64,
}

impl WeightSpec {
    /// The natural choice k = beta, a = 0, b = -2(beta + n).
    pub fn natural(beta: f64, n: f64) -> Self {
        Self {
            k: beta,
            a: 0.0,
            b: -2.0 * (beta + n),
        }
    }

    /// Validate against a datum's (beta, n); returns descriptive notes
    /// (including the status of the recorded non-blocking condition).
    pub fn validate(&self, beta: f64, n: f64) -> Result<Vec<String>> {
        let mut failures = Vec::new();
        if self.k < 0.0 {
            failures.push(format!("k = {} must be >= 0", self.k));
        }
        let balance = self.a + self.b + beta + n + (self.k + n);
        if balance.abs() > 1e-12 {
            failures.push(format!(
                "balance condition a+b+beta+n = -(k+n) violated by {balance:.3e}"
            ));
        }
        if 2.0 * (self.k + n) + self.a < 0.0 {
            failures.push(format!(
                "2(k+n)+a = {} must be >= 0 (weight bounded near 0)",
                2.0 * (self.k + n) + self.a
            ));
        }
        if 2.0 * (self.k + n) + self.a + self.b > 0.0 {
            failures.push(format!(
                "2(k+n)+a+b = {} must be <= 0 (weight bounded at infinity)",
                2.0 * (self.k + n) + self.a + self.b
            ));
        }
        if !failures.is_empty() {
            return Err(Error::Config(format!(
                "invalid weight exponents (k={}, a={}, b={}): {}",
                self.k,
                self.a,
                self.b,
                failures.join("; ")
            )));
        }
        let recorded = self.a + self.b <= (2.0 / 3.0) * (n - beta) + 1e-12;
        Ok(vec![format!(
            "recorded condition a+b <= (2/3)(n-beta): {} (a+b = {}, bound = {}); non-blocking",
            if recorded { "satisfied" } else { "violated" },
            self.a + self.b,
            (2.0 / 3.0) * (n - beta)
        )])
    }
}
