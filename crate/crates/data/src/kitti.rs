use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use dispvo_pose::{orthonormality_defect, Pose, RotationMatrix};
use nalgebra::{Matrix3, Vector3};

use crate::error::DataError;

/// A parsed rotation this far from orthonormal is rejected instead of being
/// silently repaired.
const MAX_PARSE_DEFECT: f64 = 1e-3;

/// Parses the plain-text pose format used by the KITTI odometry ground
/// truth: one frame per line, 12 whitespace-separated reals forming a
/// row-major 3x4 [R | P] matrix. Empty lines are skipped. Rotations with a
/// small orthonormality defect are re-projected onto the closest rotation.
pub fn parse_kitti_poses<R: BufRead>(reader: R) -> Result<Vec<Pose>, DataError> {
    let mut poses = Vec::new();
    for (zero_based, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = zero_based + 1;
        if line.trim().is_empty() {
            continue;
        }
        poses.push(parse_pose_line(&line, lineno)?);
    }
    Ok(poses)
}

fn parse_pose_line(line: &str, lineno: usize) -> Result<Pose, DataError> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() != 12 {
        return Err(DataError::PoseTokenCount {
            line: lineno,
            found: tokens.len(),
        });
    }
    let mut v = [0.0f64; 12];
    for (i, tok) in tokens.iter().enumerate() {
        v[i] = tok.parse().map_err(|_| DataError::PoseNumber {
            line: lineno,
            token: tok.to_string(),
        })?;
    }
    // Row-major 3x4: columns 0..3 of each row are R, column 3 is P.
    let m = Matrix3::new(v[0], v[1], v[2], v[4], v[5], v[6], v[8], v[9], v[10]);
    let position = Vector3::new(v[3], v[7], v[11]);

    let defect = orthonormality_defect(&m);
    if defect >= MAX_PARSE_DEFECT {
        return Err(DataError::PoseNotRotation {
            line: lineno,
            defect,
        });
    }
    let det = m.determinant();
    if det <= 0.0 {
        return Err(DataError::PoseReflection { line: lineno, det });
    }
    let rotation = RotationMatrix::project(&m).map_err(|_| DataError::PoseReflection {
        line: lineno,
        det,
    })?;
    Ok(Pose::new(rotation, position))
}

/// Formats one pose as a KITTI text line (12 space-separated values).
pub fn format_kitti_pose(pose: &Pose) -> String {
    let r = pose.rotation.matrix();
    let p = pose.position;
    let mut s = String::new();
    for row in 0..3 {
        for col in 0..3 {
            write!(s, "{} ", r[(row, col)]).unwrap();
        }
        if row < 2 {
            write!(s, "{} ", p[row]).unwrap();
        } else {
            write!(s, "{}", p[row]).unwrap();
        }
    }
    s
}

/// Writes poses in the KITTI text format, one line per pose.
pub fn write_kitti_poses<W: Write>(poses: &[Pose], mut out: W) -> Result<(), DataError> {
    for pose in poses {
        writeln!(out, "{}", format_kitti_pose(pose))?;
    }
    Ok(())
}

/// Reads a pose file from disk.
pub fn read_pose_file<P: AsRef<Path>>(path: P) -> Result<Vec<Pose>, DataError> {
    parse_kitti_poses(BufReader::new(File::open(path)?))
}

/// Writes a pose file to disk.
pub fn write_pose_file<P: AsRef<Path>>(poses: &[Pose], path: P) -> Result<(), DataError> {
    let mut out = BufWriter::new(File::create(path)?);
    write_kitti_poses(poses, &mut out)?;
    out.flush()?;
    Ok(())
}
