use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::app::fixtures::ModuleFixture;
use crate::error::{Error, Result};
use crate::scalar::Field;

pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(Error::Parse(format!("unknown format {s:?}; expected table, json or csv"))),
        }
    }
}

/// Where a simplicial set comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum SetSource {
    Fixture(String),
    File(PathBuf),
}

/// Where a module comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum ModuleSource {
    Fixture(ModuleFixture),
    File(PathBuf),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Fields to compute over; `verify` runs each in turn.
    pub fields: Vec<Field>,
    pub max_degree: usize,
    pub word_cap: usize,
    pub format: OutputFormat,
    pub strict: bool,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            fields: vec![Field::Rational],
            max_degree: 6,
            word_cap: 8,
            format: OutputFormat::Table,
            strict: false,
            seed: DEFAULT_SEED,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.fields.is_empty() {
            return Err(Error::Parse("no field given".into()));
        }
        if self.max_degree < 1 {
            return Err(Error::Parse("--max-degree must be at least 1".into()));
        }
        if self.word_cap < 1 {
            return Err(Error::Parse("--word-cap must be at least 1".into()));
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.fields[0]
    }
}
