pub mod evaluate;
pub mod integrate;
pub mod plot;
pub mod predict;
pub mod prepare;
pub mod synth;
pub mod train;

use std::path::PathBuf;

/// Flags shared by every subcommand.
#[derive(clap::Args, Debug)]
pub struct Common {
    /// Seed for every random choice the command makes
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Optional `key = value` settings file
    #[arg(long)]
    pub config: Option<PathBuf>,
}
