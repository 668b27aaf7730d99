//! Configuration files, the bundled strike dataset, trajectory CSV and
//! report rendering.

pub mod config;
pub mod dataset;
pub mod report;
pub mod trajectory_csv;

pub use config::{parse_config, parse_config_with_warnings, render_config, ConfigError, RunConfig};
pub use dataset::{load_table1, parse_strike_records, DatasetError, StrikeRecord, BUNDLED_TABLE1};
pub use report::{render_equilibrium, render_report, render_stability, Format};
pub use trajectory_csv::{read_trajectory_csv, write_trajectory_csv};
