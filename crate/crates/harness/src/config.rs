use nclp_core::{Exponent, Tolerances};
use serde::Serialize;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ConfigError {
    #[error("p grid is empty")]
    EmptyGrid,
    #[error("p = 2 is excluded: every unitary of the Hilbert space is an isometry there")]
    PTwo,
    #[error("{0} must be at least 1")]
    TooSmall(&'static str),
    #[error("tolerance {0} must be positive and finite")]
    BadTolerance(&'static str),
    #[error("suite {suite} needs an exponent in (1, inf) other than 2 in the grid")]
    NoStructuralExponent { suite: &'static str },
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub p_grid: Vec<Exponent<f64>>,
    pub max_blocks: usize,
    pub max_dim: usize,
    /// Instances per suite; per exponent for `roundtrip`.
    pub n_instances: usize,
    pub tolerances: Tolerances<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            p_grid: [1.0, 1.5, 3.0, 4.0]
                .into_iter()
                .map(Exponent::Finite)
                .chain([Exponent::Infinity])
                .collect(),
            max_blocks: 3,
            max_dim: 4,
            n_instances: 50,
            tolerances: Tolerances::default(),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.p_grid.is_empty() {
            return Err(ConfigError::EmptyGrid);
        }
        if self.p_grid.iter().any(|p| p.is_two()) {
            return Err(ConfigError::PTwo);
        }
        if self.max_dim == 0 {
            return Err(ConfigError::TooSmall("max_dim"));
        }
        if self.max_blocks == 0 {
            return Err(ConfigError::TooSmall("max_blocks"));
        }
        let ok = |t: f64| t.is_finite() && t > 0.0;
        if !ok(self.tolerances.eq) {
            return Err(ConfigError::BadTolerance("eq"));
        }
        if !ok(self.tolerances.cert) {
            return Err(ConfigError::BadTolerance("cert"));
        }
        Ok(())
    }

    /// Exponents in `(1, ∞) \ {2}`, where Clarkson, the semi-inner product
    /// and the corner machinery apply.
    pub fn structural_grid(&self) -> Vec<Exponent<f64>> {
        self.p_grid
            .iter()
            .copied()
            .filter(|p| matches!(p.finite_value(), Some(v) if v > 1.0) && !p.is_two())
            .collect()
    }

    pub fn finite_grid(&self) -> Vec<Exponent<f64>> {
        self.p_grid.iter().copied().filter(|p| !p.is_infinite()).collect()
    }

    pub fn with_grid(&self, grid: Vec<Exponent<f64>>) -> Self {
        Self {
            p_grid: grid,
            ..self.clone()
        }
    }

    pub fn summary(&self) -> ConfigSummary {
        ConfigSummary {
            seed: self.seed,
            p_grid: self.p_grid.iter().map(|p| p.to_string()).collect(),
            max_blocks: self.max_blocks,
            max_dim: self.max_dim,
            n_instances: self.n_instances,
            eq_tol: self.tolerances.eq,
            cert_tol: self.tolerances.cert,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ConfigSummary {
    pub seed: u64,
    pub p_grid: Vec<String>,
    pub max_blocks: usize,
    pub max_dim: usize,
    pub n_instances: usize,
    pub eq_tol: f64,
    pub cert_tol: f64,
}

/// Parses `1,1.5,3,4,inf`.
pub fn parse_grid(text: &str) -> Result<Vec<Exponent<f64>>, String> {
    text.split(',')
        .map(|s| s.trim().parse::<Exponent<f64>>().map_err(|e| format!("{s:?}: {e}")))
        .collect()
}
