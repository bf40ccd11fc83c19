//! Property harness for the L^p isometry toolkit: instance generation, the
//! eight acceptance suites and their reports.

pub mod config;
pub mod instance;
pub mod report;
pub mod suites;

pub use config::{parse_grid, ConfigError, SuiteConfig};
pub use instance::{generate_instance, Instance};
pub use report::{RunReport, SuiteReport};
pub use suites::{run_suite, Selection, Suite};
