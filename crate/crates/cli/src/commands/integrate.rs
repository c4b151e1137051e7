use std::path::PathBuf;

use anyhow::{Context, Result};
use dispvo_data::{read_pose_file, write_pose_file};
use dispvo_pose::{integrate_trajectory, RelativeMotion};

use crate::commands::Common;
use crate::config::RunConfig;

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(flatten)]
    pub common: Common,
    /// Motion file from `predict` (12 numbers per line)
    #[arg(long)]
    pub motions: PathBuf,
    /// Output pose file; line k is the pose of frame k, starting at identity
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(args: &Args) -> Result<()> {
    RunConfig::load(args.common.config.as_deref())?.validate()?;
    // A motion line shares the pose-line layout, so the pose reader parses it;
    // the translation column holds the inter-frame displacement.
    let rows = read_pose_file(&args.motions)
        .with_context(|| format!("reading motions {}", args.motions.display()))?;
    let motions: Vec<RelativeMotion> = rows
        .iter()
        .map(|row| RelativeMotion::new(row.rotation, row.position))
        .collect();
    let poses = integrate_trajectory(&motions);
    write_pose_file(&poses, &args.out)?;

    println!("motions: {}", motions.len());
    println!("poses: {}", poses.len());
    println!("out: {}", args.out.display());
    Ok(())
}
