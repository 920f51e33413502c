//! Fixture registry, JSON interchange, oracles and the verification suite.

pub mod config;
pub mod fixtures;
pub mod json;
pub mod oracle;
pub mod report;
pub mod run;
pub mod verify;

pub use config::{ModuleSource, OutputFormat, RunConfig, SetSource, DEFAULT_SEED};
pub use fixtures::{cobar_of, fixture_set, ModuleFixture, SET_FIXTURES};
pub use json::{emit_module, emit_set, module_from_json, module_to_json, parse_module, parse_set, set_from_json, set_to_json};
pub use oracle::group_homology_oracle_z;
pub use report::{CheckRecord, HomologyRow, HomologyTable, InfoRow, Report};
pub use run::{load_module, load_set, run, window_for, Command};
pub use verify::{verify, CHECK_GROUPS};
