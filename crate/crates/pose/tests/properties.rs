//! Randomized property checks for the pose algebra.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{Matrix3, Vector3};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dispvo_pose::{
    integrate_step, integrate_trajectory, relative_pose, AxisAngle, EulerAngles, Pose,
    RelativeMotion, RotationMatrix,
};

fn max_abs_diff(a: &Matrix3<f64>, b: &Matrix3<f64>) -> f64 {
    (a - b).abs().max()
}

fn orthonormality_defect(m: &Matrix3<f64>) -> f64 {
    (m.transpose() * m - Matrix3::identity()).abs().max()
}

fn random_pose<R: Rng>(rng: &mut R) -> Pose {
    let rotation = RotationMatrix::sample_uniform(rng);
    let position = Vector3::new(
        rng.random_range(-100.0..100.0),
        rng.random_range(-100.0..100.0),
        rng.random_range(-100.0..100.0),
    );
    Pose::new(rotation, position)
}

#[test]
fn relative_then_integrate_recovers_target_pose() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let pose_i = random_pose(&mut rng);
        let pose_j = random_pose(&mut rng);
        let motion = relative_pose(&pose_i, &pose_j);
        let recovered = integrate_step(&pose_i, &motion);
        assert!(max_abs_diff(recovered.rotation.matrix(), pose_j.rotation.matrix()) < 1e-9);
        assert!((recovered.position - pose_j.position).norm() < 1e-9);
        // Outputs stay inside SO(3).
        assert!(orthonormality_defect(motion.rotation().matrix()) < 1e-9);
        assert!((motion.rotation().matrix().determinant() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn full_chain_roundtrip_reproduces_trajectory() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut poses: Vec<Pose> = vec![Pose::identity()];
    for _ in 0..500 {
        // Wander with bounded steps so positions stay well conditioned.
        let prev = *poses.last().unwrap();
        let step = RelativeMotion::new(
            RotationMatrix::from_rpy(
                rng.random_range(-0.05..0.05),
                rng.random_range(-0.05..0.05),
                rng.random_range(-0.2..0.2),
            ),
            Vector3::new(
                rng.random_range(-0.3..0.3),
                rng.random_range(-0.1..0.1),
                rng.random_range(0.5..1.5),
            ),
        );
        poses.push(integrate_step(&prev, &step));
    }

    let motions: Vec<RelativeMotion> = poses
        .windows(2)
        .map(|w| relative_pose(&w[0], &w[1]))
        .collect();
    let rebuilt = integrate_trajectory(&motions);
    assert_eq!(rebuilt.len(), poses.len());
    for (a, b) in rebuilt.iter().zip(&poses) {
        assert!(max_abs_diff(a.rotation.matrix(), b.rotation.matrix()) < 1e-6);
        assert!((a.position - b.position).norm() < 1e-6);
    }
}

#[test]
fn long_chain_stays_orthonormal() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let mut pose = Pose::identity();
    for _ in 0..10_000 {
        let motion = RelativeMotion::new(
            RotationMatrix::from_rpy(
                rng.random_range(-0.02..0.02),
                rng.random_range(-0.02..0.02),
                rng.random_range(-0.05..0.05),
            ),
            Vector3::new(0.0, 0.0, 1.0),
        );
        pose = integrate_step(&pose, &motion);
        }
    assert!(orthonormality_defect(pose.rotation.matrix()) < 1e-7);
}

#[test]
fn representation_roundtrips_on_random_rotations() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for _ in 0..1000 {
        let r = RotationMatrix::sample_uniform(&mut rng);

        let q = r.to_quaternion();
        assert!(q.w >= 0.0);
        assert!(max_abs_diff(q.to_matrix().matrix(), r.matrix()) < 1e-9);

        let aa = r.to_axis_angle();
        assert!(aa.angle() <= PI + 1e-12);
        assert!(max_abs_diff(aa.to_matrix().matrix(), r.matrix()) < 1e-9);

        let euler = r.to_euler();
        if euler.pitch.abs() < FRAC_PI_2 - 1e-6 {
            assert!(max_abs_diff(euler.to_matrix().matrix(), r.matrix()) < 1e-9);
        }
    }
}

#[test]
fn small_rotations_keep_quaternion_scalar_near_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(67);
    for _ in 0..1000 {
        let theta = rng.random_range(0.0..0.05);
        let axis = {
            let v = Vector3::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
            if v.norm() < 1e-6 {
                Vector3::x()
            } else {
                v.normalize()
            }
        };
        let q = AxisAngle(axis * theta).to_matrix().to_quaternion();
        assert!(
            q.w > 0.999,
            "scalar part {} not dominant at angle {}",
            q.w,
            theta
        );
        assert!(q.x.abs() < 0.03 && q.y.abs() < 0.03 && q.z.abs() < 0.03);
    }
}

proptest! {
    #[test]
    fn euler_roundtrip_away_from_lock(
        roll in -3.1..3.1f64,
        pitch in -1.4..1.4f64,
        yaw in -3.1..3.1f64,
    ) {
        let e = EulerAngles::new(roll, pitch, yaw).unwrap();
        let back = e.to_matrix().to_euler();
        prop_assert!((back.roll - roll).abs() < 1e-9);
        prop_assert!((back.pitch - pitch).abs() < 1e-9);
        prop_assert!((back.yaw - yaw).abs() < 1e-9);
    }

    #[test]
    fn axis_angle_roundtrip_in_unique_regime(
        x in -1.0..1.0f64,
        y in -1.0..1.0f64,
        z in -1.0..1.0f64,
        scale in 0.0..3.0f64,
    ) {
        prop_assume!(Vector3::new(x, y, z).norm() > 1e-3);
        let v = Vector3::new(x, y, z).normalize() * scale;
        let aa = AxisAngle::new(v).unwrap();
        let back = aa.to_matrix().to_axis_angle();
        prop_assert!((back.0 - v).norm() < 1e-9);
    }
}
