use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use dispvo_data::read_pose_file;

use crate::commands::Common;
use crate::config::RunConfig;
use crate::svg::{render_svg, Polyline};

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(flatten)]
    pub common: Common,
    /// Pose files to draw, one polyline each
    #[arg(required = true)]
    pub poses: Vec<PathBuf>,
    /// SVG output path
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(args: &Args) -> Result<()> {
    RunConfig::load(args.common.config.as_deref())?.validate()?;
    let mut lines = Vec::with_capacity(args.poses.len());
    for path in &args.poses {
        let poses =
            read_pose_file(path).with_context(|| format!("reading {}", path.display()))?;
        if poses.is_empty() {
            bail!("pose file {} is empty", path.display());
        }
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        lines.push(Polyline {
            name,
            points: poses.iter().map(|p| (p.position.x, p.position.z)).collect(),
        });
    }

    let svg = render_svg(&lines);
    fs::write(&args.out, svg).with_context(|| format!("writing {}", args.out.display()))?;
    println!("svg: {}", args.out.display());
    Ok(())
}
