use dispvo_pose::{relative_pose, Pose};

use crate::error::EvalError;

/// Segment start frames are sampled every this many frames.
pub const SEGMENT_STEP: usize = 10;

/// Nominal segment lengths in meters.
pub const SEGMENT_LENGTHS: [f64; 8] = [100.0, 200.0, 300.0, 400.0, 500.0, 600.0, 700.0, 800.0];

/// Error of a single evaluated trajectory segment.
///
/// `trans_err` is a dimensionless ratio (residual translation over nominal
/// segment length) and `rot_err` is in radians per meter; both are divided by
/// the nominal length, not the realized arc length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentError {
    pub first_frame: usize,
    pub length: f64,
    pub trans_err: f64,
    pub rot_err: f64,
}

/// Aggregated metrics for one trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceReport {
    pub sequence_id: String,
    pub trans_pct: f64,
    pub rot_deg_per_m: f64,
    pub segment_errors: Vec<SegmentError>,
}

impl SequenceReport {
    /// Aggregates segment errors into the headline numbers.
    ///
    /// Translation is reported as a percentage of distance traveled and
    /// rotation in degrees per meter, both as plain means over all segments.
    pub fn from_segments(sequence_id: &str, segment_errors: Vec<SegmentError>) -> Self {
        let n = segment_errors.len() as f64;
        let (trans_pct, rot_deg_per_m) = if segment_errors.is_empty() {
            (0.0, 0.0)
        } else {
            let trans: f64 = segment_errors.iter().map(|s| s.trans_err).sum();
            let rot: f64 = segment_errors.iter().map(|s| s.rot_err).sum();
            (100.0 * trans / n, (180.0 / std::f64::consts::PI) * rot / n)
        };
        Self {
            sequence_id: sequence_id.to_string(),
            trans_pct,
            rot_deg_per_m,
            segment_errors,
        }
    }

    /// True when the trajectory was too short to cover any nominal length.
    pub fn is_empty(&self) -> bool {
        self.segment_errors.is_empty()
    }
}

/// Cumulative distance traveled up to each frame, in meters.
pub fn trajectory_distances(poses: &[Pose]) -> Vec<f64> {
    let mut distances = Vec::with_capacity(poses.len());
    let mut total = 0.0;
    if !poses.is_empty() {
        distances.push(0.0);
    }
    for pair in poses.windows(2) {
        total += (pair[1].position - pair[0].position).norm();
        distances.push(total);
    }
    distances
}

/// First frame past `start` whose cumulative distance reaches `target`.
fn first_frame_at_distance(distances: &[f64], start: usize, target: f64) -> Option<usize> {
    (start + 1..distances.len()).find(|&i| distances[i] >= target)
}

/// Scores a predicted trajectory against ground truth.
///
/// For every start frame sampled every [`SEGMENT_STEP`] frames and every
/// nominal length in [`SEGMENT_LENGTHS`], the end frame is the first one whose
/// ground-truth cumulative distance covers the nominal length. The residual
/// transform between the ground-truth and predicted segment motions yields the
/// translation and rotation errors, each normalized by the nominal length.
///
/// Trajectories shorter than the smallest nominal length produce a report with
/// no segments; that is a flagged outcome, not an error.
pub fn evaluate_sequence(
    sequence_id: &str,
    gt: &[Pose],
    pred: &[Pose],
) -> Result<SequenceReport, EvalError> {
    if gt.len() != pred.len() {
        return Err(EvalError::LengthMismatch {
            gt: gt.len(),
            pred: pred.len(),
        });
    }
    if gt.len() < 2 {
        return Err(EvalError::TooFewPoses(gt.len()));
    }

    let distances = trajectory_distances(gt);
    let mut segment_errors = Vec::new();
    let mut start = 0;
    while start < gt.len() {
        for &length in &SEGMENT_LENGTHS {
            let Some(end) = first_frame_at_distance(&distances, start, distances[start] + length)
            else {
                continue;
            };
            segment_errors.push(segment_error(gt, pred, start, end, length));
        }
        start += SEGMENT_STEP;
    }
    Ok(SequenceReport::from_segments(sequence_id, segment_errors))
}

/// Residual error of one segment.
///
/// The residual transform is the inverse ground-truth segment motion composed
/// with the predicted segment motion; a perfect prediction leaves identity.
fn segment_error(gt: &[Pose], pred: &[Pose], start: usize, end: usize, length: f64) -> SegmentError {
    let delta_gt = relative_pose(&gt[start], &gt[end]);
    let delta_pred = relative_pose(&pred[start], &pred[end]);

    let gt_rot_inv = delta_gt.rotation().inverse();
    let residual_rot = gt_rot_inv * *delta_pred.rotation();
    let residual_trans = gt_rot_inv.rotate(&(delta_pred.translation() - delta_gt.translation()));

    let cos_angle = ((residual_rot.matrix().trace() - 1.0) / 2.0).clamp(-1.0, 1.0);
    SegmentError {
        first_frame: start,
        length,
        trans_err: residual_trans.norm() / length,
        rot_err: cos_angle.acos() / length,
    }
}
