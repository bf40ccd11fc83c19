//! The property suites, one per acceptance criterion.

mod adversarial;
mod corners;
mod lp;
mod structure;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use nclp_core::random::rng_from_seed;
use rand::Rng;
use rayon::prelude::*;

use crate::config::{ConfigError, SuiteConfig};
use crate::report::{Outcome, SuiteReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Roundtrip,
    Clarkson,
    Sip,
    Corners,
    Orthoiso,
    KadisonInfty,
    PthRoot,
    Adversarial,
}

/// A suite name on the command line: one suite or `all`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    One(Suite),
    All,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Roundtrip,
        Suite::Clarkson,
        Suite::Sip,
        Suite::Corners,
        Suite::Orthoiso,
        Suite::KadisonInfty,
        Suite::PthRoot,
        Suite::Adversarial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Roundtrip => "roundtrip",
            Suite::Clarkson => "clarkson",
            Suite::Sip => "sip",
            Suite::Corners => "corners",
            Suite::Orthoiso => "orthoiso",
            Suite::KadisonInfty => "kadison-infty",
            Suite::PthRoot => "pth-root",
            Suite::Adversarial => "adversarial",
        }
    }

    /// Acceptance criterion number.
    pub fn criterion(self) -> u8 {
        Suite::ALL.iter().position(|&s| s == self).expect("listed") as u8 + 1
    }

    /// Instance jobs `(seed, exponent grid)` for this suite.
    fn jobs(self, config: &SuiteConfig) -> Result<Vec<(u64, SuiteConfig)>, ConfigError> {
        let mut seeds = rng_from_seed(config.seed);
        seeds.set_stream(self.criterion() as u64);
        let mut draw = |c: SuiteConfig, n: usize| -> Vec<(u64, SuiteConfig)> {
            (0..n).map(|_| (seeds.random(), c.clone())).collect()
        };
        let n = config.n_instances;
        Ok(match self {
            Suite::Roundtrip => config
                .p_grid
                .iter()
                .flat_map(|&p| draw(config.with_grid(vec![p]), n))
                .collect(),
            Suite::KadisonInfty => draw(config.with_grid(vec![nclp_core::Exponent::Infinity]), n),
            Suite::Clarkson | Suite::Sip | Suite::Corners | Suite::Orthoiso => {
                let grid = config.structural_grid();
                if grid.is_empty() {
                    return Err(ConfigError::NoStructuralExponent { suite: self.name() });
                }
                draw(config.with_grid(grid), n)
            }
            Suite::PthRoot => {
                let grid = config.finite_grid();
                if grid.is_empty() {
                    return Err(ConfigError::NoStructuralExponent { suite: self.name() });
                }
                draw(config.with_grid(grid), n)
            }
            Suite::Adversarial => draw(config.clone(), n),
        })
    }

    /// Checks one instance; `config.p_grid` is already narrowed to this suite.
    pub fn check(self, config: &SuiteConfig, seed: u64) -> Outcome {
        match self {
            Suite::Roundtrip | Suite::KadisonInfty => structure::roundtrip(config, seed),
            Suite::Clarkson => lp::clarkson(config, seed),
            Suite::Sip => lp::sip(config, seed),
            Suite::PthRoot => lp::pth_root(config, seed),
            Suite::Corners => corners::corners(config, seed),
            Suite::Orthoiso => corners::orthoiso(config, seed),
            Suite::Adversarial => adversarial::adversarial(config, seed),
        }
    }

    /// Reruns the single instance `seed` of this suite; `roundtrip` replays
    /// it at every exponent of the grid.
    pub fn replay(self, config: &SuiteConfig, seed: u64) -> Result<SuiteReport, ConfigError> {
        config.validate()?;
        let narrowed: Vec<SuiteConfig> = match self {
            Suite::Roundtrip => config.p_grid.iter().map(|&p| config.with_grid(vec![p])).collect(),
            _ => {
                let one = SuiteConfig {
                    n_instances: 1,
                    ..config.clone()
                };
                vec![self.jobs(&one)?.remove(0).1]
            }
        };
        let start = Instant::now();
        let outcomes: Vec<(u64, Outcome)> = narrowed.iter().map(|c| (seed, self.check(c, seed))).collect();
        Ok(SuiteReport::aggregate(
            self.name(),
            self.criterion(),
            &outcomes,
            start.elapsed().as_secs_f64(),
        ))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Selection {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            return Ok(Selection::All);
        }
        Suite::ALL
            .iter()
            .find(|x| x.name() == s)
            .map(|&x| Selection::One(x))
            .ok_or_else(|| ConfigError::UnknownSuite(s.to_string()))
    }
}

impl Selection {
    pub fn suites(self) -> Vec<Suite> {
        match self {
            Selection::One(s) => vec![s],
            Selection::All => Suite::ALL.to_vec(),
        }
    }
}

/// Runs every instance of a suite (in parallel) and aggregates.
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<SuiteReport, ConfigError> {
    config.validate()?;
    let jobs = suite.jobs(config)?;
    let start = Instant::now();
    let outcomes: Vec<(u64, Outcome)> = jobs
        .par_iter()
        .map(|(seed, c)| (*seed, suite.check(c, *seed)))
        .collect();
    Ok(SuiteReport::aggregate(
        suite.name(),
        suite.criterion(),
        &outcomes,
        start.elapsed().as_secs_f64(),
    ))
}
