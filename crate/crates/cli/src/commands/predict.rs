use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use dispvo_data::{format_kitti_pose, load_disparity_file, DisparityMap};
use dispvo_net::{load_checkpoint_file, predict_sequence};
use dispvo_pose::Pose;

use crate::commands::Common;
use crate::config::RunConfig;

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(flatten)]
    pub common: Common,
    /// Trained network checkpoint
    #[arg(long)]
    pub checkpoint: PathBuf,
    /// Directory of disparity frames to run on
    #[arg(long)]
    pub frames: PathBuf,
    /// Output motion file, one 12-number line per consecutive frame pair
    #[arg(long)]
    pub out: PathBuf,
}

fn load_frames_sorted(dir: &Path) -> Result<Vec<DisparityMap>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading frame directory {}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "dsp"))
        .collect();
    if paths.is_empty() {
        bail!("no .dsp frames in {}", dir.display());
    }
    paths.sort();
    paths
        .iter()
        .map(|p| {
            load_disparity_file(p).with_context(|| format!("loading {}", p.display()))
        })
        .collect()
}

pub fn run(args: &Args) -> Result<()> {
    RunConfig::load(args.common.config.as_deref())?.validate()?;
    let network = load_checkpoint_file(&args.checkpoint)
        .with_context(|| format!("loading checkpoint {}", args.checkpoint.display()))?;
    let frames = load_frames_sorted(&args.frames)?;
    let motions = predict_sequence(&network, &frames)?;

    let mut text = String::new();
    for motion in &motions {
        let _ = writeln!(
            text,
            "{}",
            format_kitti_pose(&Pose::new(*motion.rotation(), *motion.translation()))
        );
    }
    fs::write(&args.out, text)
        .with_context(|| format!("writing motions {}", args.out.display()))?;

    println!("frames: {}", frames.len());
    println!("motions: {}", motions.len());
    println!("out: {}", args.out.display());
    Ok(())
}
