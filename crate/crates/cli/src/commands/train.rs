use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use dispvo_data::{load_disparity_file, make_triples, read_pose_file};
use dispvo_net::{save_checkpoint_file, train, LossRecord, TrainConfig};

use crate::commands::Common;
use crate::config::{frame_file_name, RunConfig};
use crate::manifest::read_manifest;

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(flatten)]
    pub common: Common,
    /// Pair manifest produced by `prepare`
    #[arg(long)]
    pub manifest: PathBuf,
    /// Output directory for checkpoint.dvck and loss_log.tsv
    #[arg(long)]
    pub out: PathBuf,
    /// Number of training epochs (at most 30)
    #[arg(long)]
    pub epochs: Option<usize>,
    /// Rotation-loss weight
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Learning rate at epoch 0
    #[arg(long)]
    pub base_lr: Option<f64>,
    /// Optimizer steps per epoch (defaults to one pass over the triples)
    #[arg(long)]
    pub steps_per_epoch: Option<usize>,
}

pub fn run(args: &Args) -> Result<()> {
    let mut config = RunConfig::load(args.common.config.as_deref())?;
    if let Some(v) = args.epochs {
        config.epochs = v;
    }
    if let Some(v) = args.alpha {
        config.alpha = v;
    }
    if let Some(v) = args.base_lr {
        config.base_lr = v;
    }
    if let Some(v) = args.steps_per_epoch {
        config.steps_per_epoch = Some(v);
    }
    config.validate()?;

    let manifest = read_manifest(&args.manifest)?;
    let poses = read_pose_file(&manifest.poses_path)?;
    if poses.len() != manifest.frame_count {
        bail!(
            "manifest lists {} frames but {} holds {} poses",
            manifest.frame_count,
            manifest.poses_path.display(),
            poses.len()
        );
    }
    let mut frames = Vec::with_capacity(manifest.frame_count);
    for index in 0..manifest.frame_count {
        let path = manifest.frames_dir.join(frame_file_name(index));
        frames.push(
            load_disparity_file(&path)
                .with_context(|| format!("loading frame {index} from {}", path.display()))?,
        );
    }
    if frames[0].width() != manifest.width || frames[0].height() != manifest.height {
        bail!(
            "manifest resolution {}x{} does not match frames ({}x{})",
            manifest.width,
            manifest.height,
            frames[0].width(),
            frames[0].height()
        );
    }

    let triples = make_triples(&frames, &poses)?;
    let train_config = TrainConfig {
        epochs: config.epochs,
        steps_per_epoch: config.steps_per_epoch,
        base_lr: config.base_lr,
        alpha: config.alpha,
        skip_ordering: manifest.skip_ordering,
        seed: args.common.seed,
    };
    let (network, records) = train(&triples, &train_config)?;

    fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    let checkpoint_path = args.out.join("checkpoint.dvck");
    save_checkpoint_file(&network, &checkpoint_path)?;
    let log_path = args.out.join("loss_log.tsv");
    write_loss_log(&records, &log_path)?;

    println!("steps: {}", records.len());
    if let (Some(first), Some(last)) = (records.first(), records.last()) {
        println!("initial_loss: {}", first.loss.total);
        println!("final_loss: {}", last.loss.total);
    }
    println!("checkpoint: {}", checkpoint_path.display());
    println!("loss_log: {}", log_path.display());
    Ok(())
}

pub const LOSS_LOG_HEADER: &str =
    "epoch\tstep\tlr\trot_21\trot_32\trot_31\ttrans_21\ttrans_32\ttrans_31\ttotal";

fn write_loss_log(records: &[LossRecord], path: &Path) -> Result<()> {
    let mut out = String::with_capacity(records.len() * 96);
    out.push_str(LOSS_LOG_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.epoch,
            r.step,
            r.lr,
            r.loss.rot_21,
            r.loss.rot_32,
            r.loss.rot_31,
            r.loss.trans_21,
            r.loss.trans_32,
            r.loss.trans_31,
            r.loss.total
        );
    }
    fs::write(path, out).with_context(|| format!("writing loss log {}", path.display()))
}
