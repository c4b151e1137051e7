use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use dispvo_data::read_pose_file;
use dispvo_eval::{evaluate_sequence, render_summary, summarize};

use crate::commands::Common;
use crate::config::RunConfig;

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(flatten)]
    pub common: Common,
    /// Ground-truth pose file; repeat for several sequences
    #[arg(long, required = true)]
    pub gt: Vec<PathBuf>,
    /// Predicted pose file, paired with --gt in order
    #[arg(long, required = true)]
    pub pred: Vec<PathBuf>,
    /// Also write the report to this file
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn sequence_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn run(args: &Args) -> Result<()> {
    RunConfig::load(args.common.config.as_deref())?.validate()?;
    if args.gt.len() != args.pred.len() {
        bail!(
            "got {} --gt files but {} --pred files",
            args.gt.len(),
            args.pred.len()
        );
    }

    let mut reports = Vec::with_capacity(args.gt.len());
    for (gt_path, pred_path) in args.gt.iter().zip(&args.pred) {
        let gt = read_pose_file(gt_path)
            .with_context(|| format!("reading {}", gt_path.display()))?;
        let pred = read_pose_file(pred_path)
            .with_context(|| format!("reading {}", pred_path.display()))?;
        let report = evaluate_sequence(&sequence_id(gt_path), &gt, &pred).with_context(|| {
            format!("scoring {} against {}", pred_path.display(), gt_path.display())
        })?;
        reports.push(report);
    }

    let summary = summarize(reports)?;
    let text = render_summary(&summary);
    print!("{text}");
    if let Some(out) = &args.out {
        fs::write(out, &text).with_context(|| format!("writing report {}", out.display()))?;
    }
    Ok(())
}
