//! Configuration, file formats, and evaluation plumbing around
//! `riskway-core`: TOML run configs, the trajectory CSV schema with offline
//! replay, and the report/learning-curve emitters used by the CLI.

pub mod config;
pub mod reports;
pub mod trajio;
