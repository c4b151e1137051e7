//! World-frame poses, relative motion between frames, and trajectory
//! integration.
//!
//! A relative motion holds the rotation of frame j with respect to frame i,
//! the same rotation in Euler form (the regression target of the network),
//! and the translation expressed in frame i's camera coordinates.

use nalgebra::Vector3;

use crate::rotation::{EulerAngles, RotationMatrix};

/// Absolute pose of one frame in the world coordinate system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub rotation: RotationMatrix,
    pub position: Vector3<f64>,
}

impl Pose {
    pub fn identity() -> Self {
        Self {
            rotation: RotationMatrix::identity(),
            position: Vector3::zeros(),
        }
    }

    pub fn new(rotation: RotationMatrix, position: Vector3<f64>) -> Self {
        Self { rotation, position }
    }
}

/// Rigid motion of frame j relative to frame i.
///
/// The Euler field always reproduces the stored rotation, so the two views
/// of the same rotation cannot drift apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativeMotion {
    rotation: RotationMatrix,
    euler: EulerAngles,
    translation: Vector3<f64>,
}

impl RelativeMotion {
    pub fn identity() -> Self {
        Self {
            rotation: RotationMatrix::identity(),
            euler: EulerAngles::zero(),
            translation: Vector3::zeros(),
        }
    }

    /// Builds from a rotation matrix; the Euler form is derived.
    pub fn new(rotation: RotationMatrix, translation: Vector3<f64>) -> Self {
        Self {
            rotation,
            euler: rotation.to_euler(),
            translation,
        }
    }

    /// Builds from Euler angles; the matrix form is derived.
    pub fn from_euler(euler: EulerAngles, translation: Vector3<f64>) -> Self {
        Self {
            rotation: euler.to_matrix(),
            euler,
            translation,
        }
    }

    pub fn rotation(&self) -> &RotationMatrix {
        &self.rotation
    }

    pub fn euler(&self) -> &EulerAngles {
        &self.euler
    }

    pub fn translation(&self) -> &Vector3<f64> {
        &self.translation
    }
}

/// Relative motion of `pose_j` with respect to `pose_i`.
///
/// The rotation is R_i^-1 R_j and the translation is the world displacement
/// P_j - P_i rotated into frame i's camera coordinates.
pub fn relative_pose(pose_i: &Pose, pose_j: &Pose) -> RelativeMotion {
    let r_i_inv = pose_i.rotation.inverse();
    let rotation = r_i_inv * pose_j.rotation;
    let translation = r_i_inv.rotate(&(pose_j.position - pose_i.position));
    RelativeMotion::new(rotation, translation)
}

/// Advances a world pose by one relative motion.
///
/// The composed rotation is re-projected onto SO(3) so that long chains do
/// not accumulate orthogonality drift.
pub fn integrate_step(state: &Pose, motion: &RelativeMotion) -> Pose {
    let position = state.position + state.rotation.rotate(motion.translation());
    let rotation = (state.rotation * *motion.rotation()).orthonormalized();
    Pose { rotation, position }
}

/// Integrates a motion chain starting from the identity pose at the origin.
///
/// Returns one more pose than there are motions; element 0 is the identity.
pub fn integrate_trajectory(motions: &[RelativeMotion]) -> Vec<Pose> {
    let mut poses = Vec::with_capacity(motions.len() + 1);
    poses.push(Pose::identity());
    for motion in motions {
        let next = integrate_step(poses.last().expect("nonempty"), motion);
        poses.push(next);
    }
    poses
}
