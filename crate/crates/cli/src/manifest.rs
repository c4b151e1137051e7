use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use dispvo_pose::{Pose, RelativeMotion, RotationMatrix};

pub const MANIFEST_HEADER: &str = "dispvo-manifest v1";

/// Training pair listing tied to a disparity directory and pose file.
///
/// Paths are stored exactly as given on the command line so that re-running
/// `prepare` with the same arguments reproduces the file byte for byte.
#[derive(Debug, Clone, PartialEq)]
pub struct Manifest {
    pub frames_dir: PathBuf,
    pub poses_path: PathBuf,
    pub width: usize,
    pub height: usize,
    pub skip_ordering: bool,
    pub frame_count: usize,
    pub triples: Vec<TripleEntry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TripleEntry {
    pub start: usize,
    pub pairs: Vec<PairEntry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairEntry {
    pub earlier: usize,
    pub later: usize,
    pub gap: usize,
    pub target: RelativeMotion,
}

impl Manifest {
    pub fn pair_count(&self) -> usize {
        self.triples.iter().map(|t| t.pairs.len()).sum()
    }
}

/// Serializes the target motion in the same 12-number row-major layout as a
/// pose line, rotation first, translation in the fourth column.
fn format_motion(motion: &RelativeMotion) -> String {
    dispvo_data::format_kitti_pose(&Pose::new(*motion.rotation(), *motion.translation()))
}

pub fn render_manifest(manifest: &Manifest) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MANIFEST_HEADER}");
    let _ = writeln!(out, "frames_dir\t{}", manifest.frames_dir.display());
    let _ = writeln!(out, "poses\t{}", manifest.poses_path.display());
    let _ = writeln!(out, "resolution\t{} {}", manifest.width, manifest.height);
    let _ = writeln!(out, "skip_ordering\t{}", manifest.skip_ordering);
    let _ = writeln!(out, "frame_count\t{}", manifest.frame_count);
    let _ = writeln!(out, "triple_count\t{}", manifest.triples.len());
    let _ = writeln!(out, "pair_count\t{}", manifest.pair_count());
    for triple in &manifest.triples {
        let _ = writeln!(
            out,
            "triple\t{} {} {}",
            triple.start,
            triple.start + 1,
            triple.start + 2
        );
        for pair in &triple.pairs {
            let _ = writeln!(
                out,
                "pair\t{} {}\tgap {}\ttarget\t{}",
                pair.earlier,
                pair.later,
                pair.gap,
                format_motion(&pair.target)
            );
        }
    }
    out
}

pub fn write_manifest(manifest: &Manifest, path: &Path) -> Result<()> {
    fs::write(path, render_manifest(manifest))
        .with_context(|| format!("writing manifest {}", path.display()))
}

fn parse_motion(text: &str) -> Result<RelativeMotion> {
    let numbers: Vec<f64> = text
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| anyhow::anyhow!("bad number {t:?}")))
        .collect::<Result<_>>()?;
    if numbers.len() != 12 {
        bail!("target needs 12 numbers, got {}", numbers.len());
    }
    let m = nalgebra_matrix(&numbers);
    let rotation = RotationMatrix::project(&m).context("target rotation is degenerate")?;
    let translation = nalgebra::Vector3::new(numbers[3], numbers[7], numbers[11]);
    Ok(RelativeMotion::new(rotation, translation))
}

fn nalgebra_matrix(numbers: &[f64]) -> nalgebra::Matrix3<f64> {
    nalgebra::Matrix3::new(
        numbers[0], numbers[1], numbers[2], numbers[4], numbers[5], numbers[6], numbers[8],
        numbers[9], numbers[10],
    )
}

pub fn parse_manifest(text: &str) -> Result<Manifest> {
    let mut lines = text.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        bail!("empty manifest");
    };
    if header != MANIFEST_HEADER {
        bail!("unrecognized manifest header {header:?}");
    }

    let mut frames_dir = None;
    let mut poses_path = None;
    let mut resolution = None;
    let mut skip_ordering = None;
    let mut frame_count = None;
    let mut triples: Vec<TripleEntry> = Vec::new();
    let mut declared_triples = None;
    let mut declared_pairs = None;

    for (lineno, raw) in lines {
        let line = raw.trim_end();
        if line.is_empty() {
            continue;
        }
        let context = || format!("manifest line {}", lineno + 1);
        let Some((key, rest)) = line.split_once('\t') else {
            bail!("{}: expected a tab-separated record, got {line:?}", context());
        };
        match key {
            "frames_dir" => frames_dir = Some(PathBuf::from(rest)),
            "poses" => poses_path = Some(PathBuf::from(rest)),
            "resolution" => {
                let parts: Vec<usize> = rest
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| anyhow::anyhow!("{}: bad resolution", context())))
                    .collect::<Result<_>>()?;
                if parts.len() != 2 {
                    bail!("{}: resolution needs width and height", context());
                }
                resolution = Some((parts[0], parts[1]));
            }
            "skip_ordering" => {
                skip_ordering =
                    Some(rest.parse().map_err(|_| {
                        anyhow::anyhow!("{}: bad skip_ordering flag {rest:?}", context())
                    })?)
            }
            "frame_count" => {
                frame_count = Some(rest.parse().with_context(context)?);
            }
            "triple_count" => declared_triples = Some(rest.parse::<usize>().with_context(context)?),
            "pair_count" => declared_pairs = Some(rest.parse::<usize>().with_context(context)?),
            "triple" => {
                let parts: Vec<usize> = rest
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| anyhow::anyhow!("{}: bad index", context())))
                    .collect::<Result<_>>()?;
                if parts.len() != 3 || parts[1] != parts[0] + 1 || parts[2] != parts[0] + 2 {
                    bail!("{}: triple must list three consecutive frames", context());
                }
                triples.push(TripleEntry {
                    start: parts[0],
                    pairs: Vec::new(),
                });
            }
            "pair" => {
                let Some(triple) = triples.last_mut() else {
                    bail!("{}: pair record before any triple", context());
                };
                // Layout: "<earlier> <later>\tgap <g>\ttarget\t<12 numbers>".
                let fields: Vec<&str> = rest.split('\t').collect();
                if fields.len() != 4
                    || !fields[1].starts_with("gap ")
                    || fields[1].split_whitespace().count() != 2
                    || fields[2] != "target"
                {
                    bail!("{}: malformed pair record", context());
                }
                let indices: Vec<usize> = fields[0]
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| anyhow::anyhow!("{}: bad index", context())))
                    .collect::<Result<_>>()?;
                if indices.len() != 2 {
                    bail!("{}: pair needs two frame indices", context());
                }
                let gap: usize = fields[1]
                    .split_whitespace()
                    .nth(1)
                    .unwrap()
                    .parse()
                    .with_context(context)?;
                if indices[1] != indices[0] + gap || !(1..=2).contains(&gap) {
                    bail!("{}: pair gap must be 1 or 2 and match the indices", context());
                }
                let target = parse_motion(fields[3]).with_context(context)?;
                triple.pairs.push(PairEntry {
                    earlier: indices[0],
                    later: indices[1],
                    gap,
                    target,
                });
            }
            _ => bail!("{}: unknown record {key:?}", context()),
        }
    }

    let manifest = Manifest {
        frames_dir: frames_dir.context("manifest missing frames_dir")?,
        poses_path: poses_path.context("manifest missing poses")?,
        width: resolution.context("manifest missing resolution")?.0,
        height: resolution.context("manifest missing resolution")?.1,
        skip_ordering: skip_ordering.context("manifest missing skip_ordering")?,
        frame_count: frame_count.context("manifest missing frame_count")?,
        triples,
    };
    if declared_triples != Some(manifest.triples.len()) {
        bail!("manifest triple_count does not match its triple records");
    }
    if declared_pairs != Some(manifest.pair_count()) {
        bail!("manifest pair_count does not match its pair records");
    }
    Ok(manifest)
}

pub fn read_manifest(path: &Path) -> Result<Manifest> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading manifest {}", path.display()))?;
    parse_manifest(&text).with_context(|| format!("parsing manifest {}", path.display()))
}
