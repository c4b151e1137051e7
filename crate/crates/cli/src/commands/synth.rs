use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use dispvo_data::{
    generate_synthetic_sequence, save_disparity_file, write_pose_file, MotionProfile, SynthConfig,
};

use crate::commands::Common;
use crate::config::{frame_file_name, RunConfig};

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(flatten)]
    pub common: Common,
    /// Dataset directory to create (frames/ subdirectory plus poses.txt)
    #[arg(long)]
    pub out: PathBuf,
    /// Number of frames to render
    #[arg(long)]
    pub frames: Option<usize>,
    /// Frame width in pixels
    #[arg(long)]
    pub width: Option<usize>,
    /// Frame height in pixels
    #[arg(long)]
    pub height: Option<usize>,
}

pub fn run(args: &Args) -> Result<()> {
    let mut config = RunConfig::load(args.common.config.as_deref())?;
    if let Some(v) = args.frames {
        config.frames = v;
    }
    if let Some(v) = args.width {
        config.width = v;
    }
    if let Some(v) = args.height {
        config.height = v;
    }
    config.validate()?;

    let synth_config = SynthConfig {
        width: config.width,
        height: config.height,
        frame_count: config.frames,
        motion: MotionProfile {
            forward_speed: config.forward_speed,
            speed_jitter: config.speed_jitter,
            ..MotionProfile::default()
        },
        ..SynthConfig::default()
    };
    let sequence = generate_synthetic_sequence(&synth_config, args.common.seed)?;

    let frames_dir = args.out.join("frames");
    fs::create_dir_all(&frames_dir)
        .with_context(|| format!("creating {}", frames_dir.display()))?;
    for frame in &sequence.frames {
        save_disparity_file(frame, frames_dir.join(frame_file_name(frame.frame_index())))?;
    }
    let poses_path = args.out.join("poses.txt");
    write_pose_file(&sequence.poses, &poses_path)?;

    println!("frames: {}", sequence.frames.len());
    println!("frames_dir: {}", frames_dir.display());
    println!("poses: {}", poses_path.display());
    Ok(())
}
