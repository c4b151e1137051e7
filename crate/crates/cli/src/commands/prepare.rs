use std::path::PathBuf;

use anyhow::{bail, Result};
use dispvo_data::{expand_pairs, load_disparity_file, make_triples, read_pose_file};

use crate::commands::Common;
use crate::config::{frame_file_name, RunConfig};
use crate::manifest::{write_manifest, Manifest, PairEntry, TripleEntry};

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(flatten)]
    pub common: Common,
    /// Ground-truth pose file, one frame per line
    #[arg(long)]
    pub poses: PathBuf,
    /// Directory of disparity frames named 000000.dsp, 000001.dsp, ...
    #[arg(long)]
    pub frames: PathBuf,
    /// Add the two-frames-apart pair of each triple (defaults to the config value)
    #[arg(long)]
    pub skip_ordering: Option<bool>,
    /// Manifest output path
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(args: &Args) -> Result<()> {
    let config = RunConfig::load(args.common.config.as_deref())?;
    config.validate()?;
    let skip_ordering = args.skip_ordering.unwrap_or(config.skip_ordering);

    let poses = read_pose_file(&args.poses)?;
    let mut frames = Vec::with_capacity(poses.len());
    for index in 0..poses.len() {
        let path = args.frames.join(frame_file_name(index));
        if !path.is_file() {
            bail!(
                "pose index {index} has no disparity frame at {}",
                path.display()
            );
        }
        frames.push(load_disparity_file(&path)?);
    }
    if frames.is_empty() {
        bail!("pose file {} holds no poses", args.poses.display());
    }
    let width = frames[0].width();
    let height = frames[0].height();
    for frame in &frames {
        if frame.width() != width || frame.height() != height {
            bail!(
                "frame {} is {}x{} but frame 0 is {width}x{height}",
                frame.frame_index(),
                frame.width(),
                frame.height()
            );
        }
    }

    let triples = make_triples(&frames, &poses)?;
    let entries: Vec<TripleEntry> = triples
        .iter()
        .map(|triple| TripleEntry {
            start: triple.start_index(),
            pairs: expand_pairs(triple, skip_ordering)
                .iter()
                .map(|pair| PairEntry {
                    earlier: pair.earlier().frame_index(),
                    later: pair.later().frame_index(),
                    gap: pair.gap(),
                    target: *pair.target(),
                })
                .collect(),
        })
        .collect();

    let manifest = Manifest {
        frames_dir: args.frames.clone(),
        poses_path: args.poses.clone(),
        width,
        height,
        skip_ordering,
        frame_count: frames.len(),
        triples: entries,
    };
    write_manifest(&manifest, &args.out)?;

    println!("frames: {}", manifest.frame_count);
    println!("triples: {}", manifest.triples.len());
    println!("pairs: {}", manifest.pair_count());
    println!("manifest: {}", args.out.display());
    Ok(())
}
