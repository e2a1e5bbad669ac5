pub mod commands;
pub mod config;

pub use commands::{dispatch, Command};
pub use config::{ConfigBuilder, ConfigError, RunConfig};
