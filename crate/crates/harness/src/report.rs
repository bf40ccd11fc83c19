use std::collections::BTreeMap;

use serde::Serialize;

use crate::config::ConfigSummary;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduce {
    Max,
    Min,
    Sum,
}

/// Result of checking one instance.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub pass: bool,
    /// Largest residual seen, already normalized; the suite reports the max.
    pub residual: f64,
    pub checks: usize,
    pub metrics: BTreeMap<&'static str, (Reduce, f64)>,
    pub failure: Option<String>,
}

impl Outcome {
    pub fn new() -> Self {
        Self {
            pass: true,
            ..Self::default()
        }
    }

    /// Records a residual that must stay at or below `bound`.
    pub fn bounded(&mut self, what: &'static str, residual: f64, bound: f64) {
        self.checks += 1;
        self.residual = self.residual.max(residual);
        self.metric(what, Reduce::Max, residual);
        if !(residual <= bound) {
            self.fail(format!("{what}: {residual:e} > {bound:e}"));
        }
    }

    /// Like [`Outcome::bounded`] but kept out of the headline residual.
    pub fn bounded_aux(&mut self, what: &'static str, residual: f64, bound: f64) {
        self.checks += 1;
        self.metric(what, Reduce::Max, residual);
        if !(residual <= bound) {
            self.fail(format!("{what}: {residual:e} > {bound:e}"));
        }
    }

    /// Records a value that must stay at or above `bound`.
    pub fn floored(&mut self, what: &'static str, value: f64, bound: f64) {
        self.checks += 1;
        self.metric(what, Reduce::Min, value);
        if !(value >= bound) {
            self.fail(format!("{what}: {value:e} < {bound:e}"));
        }
    }

    pub fn require(&mut self, what: &'static str, ok: bool) {
        self.checks += 1;
        if !ok {
            self.metric(what, Reduce::Sum, 1.0);
            self.fail(what.to_string());
        }
    }

    pub fn metric(&mut self, name: &'static str, reduce: Reduce, value: f64) {
        self.metrics
            .entry(name)
            .and_modify(|e| e.1 = combine(reduce, e.1, value))
            .or_insert((reduce, value));
    }

    pub fn fail(&mut self, why: String) {
        self.pass = false;
        self.failure.get_or_insert(why);
    }

    pub fn error(&mut self, what: &str, err: impl std::fmt::Display) {
        self.checks += 1;
        self.residual = f64::INFINITY;
        self.fail(format!("{what}: {err}"));
    }
}

fn combine(reduce: Reduce, a: f64, b: f64) -> f64 {
    match reduce {
        Reduce::Max => a.max(b),
        Reduce::Min => a.min(b),
        Reduce::Sum => a + b,
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub criterion: u8,
    pub pass: bool,
    pub instances: usize,
    pub checks: usize,
    pub failures: usize,
    /// `None` when a check raised an unexpected error.
    pub worst_residual: Option<f64>,
    /// Instance seed of the worst case; replay with `nclp run --instance`.
    pub worst_seed: Option<u64>,
    pub first_failure: Option<String>,
    pub metrics: BTreeMap<String, f64>,
    pub wall_time_s: f64,
}

impl SuiteReport {
    /// Folds outcomes in index order; every reduction is a max, min, sum or
    /// first-by-index, so thread scheduling cannot change the result.
    pub fn aggregate(suite: &str, criterion: u8, outcomes: &[(u64, Outcome)], wall_time_s: f64) -> Self {
        let mut worst: Option<(f64, u64)> = None;
        let mut metrics: BTreeMap<&'static str, (Reduce, f64)> = BTreeMap::new();
        let mut first_failure = None;
        for (seed, o) in outcomes {
            if worst.is_none_or(|(r, _)| o.residual > r) {
                worst = Some((o.residual, *seed));
            }
            for (k, &(red, v)) in &o.metrics {
                metrics
                    .entry(k)
                    .and_modify(|e| e.1 = combine(red, e.1, v))
                    .or_insert((red, v));
            }
            if first_failure.is_none() {
                if let Some(f) = &o.failure {
                    first_failure = Some(format!("seed {seed}: {f}"));
                }
            }
        }
        Self {
            suite: suite.to_string(),
            criterion,
            pass: !outcomes.is_empty() && outcomes.iter().all(|(_, o)| o.pass),
            instances: outcomes.len(),
            checks: outcomes.iter().map(|(_, o)| o.checks).sum(),
            failures: outcomes.iter().filter(|(_, o)| !o.pass).count(),
            worst_residual: worst.map(|(r, _)| r).filter(|r| r.is_finite()),
            worst_seed: worst.map(|(_, s)| s),
            first_failure,
            metrics: metrics.into_iter().map(|(k, (_, v))| (k.to_string(), v)).collect(),
            wall_time_s,
        }
    }

    pub fn line(&self) -> String {
        let residual = self
            .worst_residual
            .map_or_else(|| "error".to_string(), |r| format!("{r:.3e}"));
        format!(
            "criterion {} [{}]: {} ({} instances, {} checks, worst residual {}, {:.2}s)",
            self.criterion,
            self.suite,
            if self.pass { "PASS" } else { "FAIL" },
            self.instances,
            self.checks,
            residual,
            self.wall_time_s
        )
    }

    /// Copy with wall time zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Self {
        Self {
            wall_time_s: 0.0,
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct RunReport {
    pub config: ConfigSummary,
    pub pass: bool,
    pub suites: Vec<SuiteReport>,
}

impl RunReport {
    pub fn new(config: ConfigSummary, suites: Vec<SuiteReport>) -> Self {
        Self {
            config,
            pass: suites.iter().all(|s| s.pass),
            suites,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn without_timing(&self) -> Self {
        Self {
            suites: self.suites.iter().map(SuiteReport::without_timing).collect(),
            ..self.clone()
        }
    }
}
