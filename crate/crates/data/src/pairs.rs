use dispvo_pose::{relative_pose, Pose, RelativeMotion};

use crate::disparity::DisparityMap;
use crate::error::DataError;

/// Three consecutive frames with their ground-truth world poses.
#[derive(Debug, Clone)]
pub struct TrainingTriple {
    frames: [DisparityMap; 3],
    poses: [Pose; 3],
}

impl TrainingTriple {
    /// Builds a triple, rejecting frames whose indices are not strictly
    /// consecutive.
    pub fn new(frames: [DisparityMap; 3], poses: [Pose; 3]) -> Result<Self, DataError> {
        let (a, b, c) = (
            frames[0].frame_index(),
            frames[1].frame_index(),
            frames[2].frame_index(),
        );
        if b != a + 1 || c != a + 2 {
            return Err(DataError::NonConsecutiveTriple(a, b, c));
        }
        Ok(TrainingTriple { frames, poses })
    }

    pub fn frames(&self) -> &[DisparityMap; 3] {
        &self.frames
    }

    pub fn poses(&self) -> &[Pose; 3] {
        &self.poses
    }

    /// Time index of the first frame.
    pub fn start_index(&self) -> usize {
        self.frames[0].frame_index()
    }
}

/// Two frames plus the ground-truth motion of the later one expressed in
/// the earlier one's camera coordinates.
#[derive(Debug, Clone)]
pub struct PairSample {
    earlier: DisparityMap,
    later: DisparityMap,
    gap: usize,
    target: RelativeMotion,
}

impl PairSample {
    /// Builds a pair, rejecting frame gaps other than 1 or 2.
    pub fn new(
        earlier: DisparityMap,
        later: DisparityMap,
        target: RelativeMotion,
    ) -> Result<Self, DataError> {
        let gap = later
            .frame_index()
            .checked_sub(earlier.frame_index())
            .ok_or(DataError::BadPairGap(0))?;
        if gap != 1 && gap != 2 {
            return Err(DataError::BadPairGap(gap));
        }
        Ok(PairSample {
            earlier,
            later,
            gap,
            target,
        })
    }

    pub fn earlier(&self) -> &DisparityMap {
        &self.earlier
    }

    pub fn later(&self) -> &DisparityMap {
        &self.later
    }

    /// Frame-index difference, 1 for adjacent frames, 2 for skip pairs.
    pub fn gap(&self) -> usize {
        self.gap
    }

    pub fn target(&self) -> &RelativeMotion {
        &self.target
    }
}

/// Slides a 3-frame window over the sequence, yielding one triple per
/// window: exactly `len - 2` triples for `len` frames.
pub fn make_triples(
    frames: &[DisparityMap],
    poses: &[Pose],
) -> Result<Vec<TrainingTriple>, DataError> {
    if frames.len() != poses.len() {
        return Err(DataError::LengthMismatch {
            frames: frames.len(),
            poses: poses.len(),
        });
    }
    if frames.len() < 3 {
        return Err(DataError::TooFewFrames {
            found: frames.len(),
        });
    }
    let mut triples = Vec::with_capacity(frames.len() - 2);
    for t in 0..frames.len() - 2 {
        triples.push(TrainingTriple::new(
            [
                frames[t].clone(),
                frames[t + 1].clone(),
                frames[t + 2].clone(),
            ],
            [poses[t], poses[t + 1], poses[t + 2]],
        )?);
    }
    Ok(triples)
}

/// Expands a triple (t, t+1, t+2) into its training pairs. With
/// skip-ordering the skip pair (t, t+2) is added after the two adjacent
/// pairs, so gaps come out as [1, 1, 2]; without it only the adjacent
/// pairs [1, 1] remain. Adjacent pairs shared with the neighboring triple
/// are kept as separate samples.
pub fn expand_pairs(triple: &TrainingTriple, skip_ordering: bool) -> Vec<PairSample> {
    let f = triple.frames();
    let p = triple.poses();
    let pair = |i: usize, j: usize| {
        PairSample::new(f[i].clone(), f[j].clone(), relative_pose(&p[i], &p[j]))
            .expect("triple indices are consecutive")
    };
    let mut pairs = vec![pair(0, 1), pair(1, 2)];
    if skip_ordering {
        pairs.push(pair(0, 2));
    }
    pairs
}

/// Disjoint train/test partition of sequence identifiers.
#[derive(Debug, Clone)]
pub struct SequenceSplit {
    train_ids: Vec<String>,
    test_ids: Vec<String>,
}

impl SequenceSplit {
    /// Builds a split, rejecting identifiers present on both sides.
    pub fn new<S: Into<String>>(
        train_ids: Vec<S>,
        test_ids: Vec<S>,
    ) -> Result<Self, DataError> {
        let train_ids: Vec<String> = train_ids.into_iter().map(Into::into).collect();
        let test_ids: Vec<String> = test_ids.into_iter().map(Into::into).collect();
        for id in &test_ids {
            if train_ids.contains(id) {
                return Err(DataError::SplitOverlap(id.clone()));
            }
        }
        Ok(SequenceSplit {
            train_ids,
            test_ids,
        })
    }

    /// The standard KITTI odometry partition: 00-07 train, 08-10 test.
    pub fn kitti_odometry() -> Self {
        let train = (0..=7).map(|i| format!("{i:02}")).collect();
        let test = (8..=10).map(|i| format!("{i:02}")).collect();
        SequenceSplit::new(train, test).expect("fixed ids are disjoint")
    }

    pub fn train_ids(&self) -> &[String] {
        &self.train_ids
    }

    pub fn test_ids(&self) -> &[String] {
        &self.test_ids
    }
}
