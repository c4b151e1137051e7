//! Rotation and pose algebra for frame-to-frame visual odometry.
//!
//! The crate provides validated rotation representations (matrix, Euler,
//! quaternion, axis-angle) with conversions between them, relative-motion
//! extraction from pairs of world-frame poses, and trajectory integration
//! from chains of relative motions.
//!
//! All types are immutable values and all operations are pure functions in
//! double precision, so everything here is safe to use from any number of
//! threads.

mod error;
mod motion;
mod rotation;

pub use error::PoseError;
pub use motion::{integrate_step, integrate_trajectory, relative_pose, Pose, RelativeMotion};
pub use rotation::{
    orthonormality_defect, AxisAngle, EulerAngles, Quaternion, RotationMatrix, SO3_TOL,
};
