use dispvo_eval::{evaluate_sequence, trajectory_distances, SEGMENT_LENGTHS, SEGMENT_STEP};
use dispvo_pose::{integrate_trajectory, EulerAngles, Pose, RelativeMotion, RotationMatrix};
use nalgebra::{Matrix4, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_trajectory(frames: usize, speed: f64, seed: u64) -> Vec<Pose> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let motions: Vec<RelativeMotion> = (0..frames - 1)
        .map(|_| {
            let euler = EulerAngles::new(
                rng.random_range(-0.004..0.004),
                rng.random_range(-0.01..0.01),
                rng.random_range(-0.05..0.05),
            )
            .unwrap();
            let translation = Vector3::new(
                rng.random_range(-0.1..0.1),
                rng.random_range(-0.02..0.02),
                speed * rng.random_range(0.8..1.2),
            );
            RelativeMotion::from_euler(euler, translation)
        })
        .collect();
    integrate_trajectory(&motions)
}

/// Corrupts a trajectory by re-integrating its relative motions with small
/// deterministic perturbations, so the prediction stays a rigid trajectory.
fn perturbed(poses: &[Pose], seed: u64) -> Vec<Pose> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let motions: Vec<RelativeMotion> = poses
        .windows(2)
        .map(|w| {
            let m = dispvo_pose::relative_pose(&w[0], &w[1]);
            let e = m.euler();
            let euler = EulerAngles::new(
                e.roll + rng.random_range(-0.002..0.002),
                e.pitch + rng.random_range(-0.002..0.002),
                e.yaw + rng.random_range(-0.002..0.002),
            )
            .unwrap();
            let translation = m.translation()
                + Vector3::new(
                    rng.random_range(-0.05..0.05),
                    rng.random_range(-0.05..0.05),
                    rng.random_range(-0.05..0.05),
                );
            RelativeMotion::from_euler(euler, translation)
        })
        .collect();
    integrate_trajectory(&motions)
}

fn homogeneous(pose: &Pose) -> Matrix4<f64> {
    let mut m = Matrix4::identity();
    m.fixed_view_mut::<3, 3>(0, 0).copy_from(pose.rotation.matrix());
    m.fixed_view_mut::<3, 1>(0, 3).copy_from(&pose.position);
    m
}

/// Segment error computed through general 4x4 homogeneous inversion instead
/// of the transpose-based rigid inverse the library uses.
fn matrix_route_error(gt: &[Pose], pred: &[Pose], start: usize, end: usize, len: f64) -> (f64, f64) {
    let delta_gt = homogeneous(&gt[start]).try_inverse().unwrap() * homogeneous(&gt[end]);
    let delta_pred = homogeneous(&pred[start]).try_inverse().unwrap() * homogeneous(&pred[end]);
    let residual = delta_gt.try_inverse().unwrap() * delta_pred;
    let trace = residual.fixed_view::<3, 3>(0, 0).trace();
    let rot = ((trace - 1.0) / 2.0).clamp(-1.0, 1.0).acos() / len;
    let trans = residual.fixed_view::<3, 1>(0, 3).norm() / len;
    (trans, rot)
}

#[test]
fn stepped_selection_matches_exhaustive_pair_enumeration() {
    // 50 frames at ~4.5 m/frame covers the 100 m and usually 200 m lengths.
    let gt = random_trajectory(50, 4.5, 11);
    let pred = perturbed(&gt, 12);
    let report = evaluate_sequence("oracle", &gt, &pred).unwrap();
    assert!(!report.is_empty());

    // Enumerate every (start, end) pair and keep, per start and length, the
    // smallest end index whose ground-truth distance covers the length.
    let dist = trajectory_distances(&gt);
    let mut selected: Vec<(usize, usize, f64)> = Vec::new();
    let mut start = 0;
    while start < gt.len() {
        for &len in &SEGMENT_LENGTHS {
            let mut best = usize::MAX;
            for end in 0..gt.len() {
                if end > start && dist[end] >= dist[start] + len && end < best {
                    best = end;
                }
            }
            if best != usize::MAX {
                selected.push((start, best, len));
            }
        }
        start += SEGMENT_STEP;
    }

    assert_eq!(report.segment_errors.len(), selected.len());
    for (seg, &(s, e, len)) in report.segment_errors.iter().zip(&selected) {
        assert_eq!(seg.first_frame, s);
        assert_eq!(seg.length, len);
        let (trans, rot) = matrix_route_error(&gt, &pred, s, e, len);
        assert!(
            (seg.trans_err - trans).abs() < 1e-12,
            "trans {} vs {}",
            seg.trans_err,
            trans
        );
        assert!((seg.rot_err - rot).abs() < 1e-12, "rot {} vs {}", seg.rot_err, rot);
    }
}

#[test]
fn errors_are_invariant_under_a_global_rigid_transform() {
    let gt = random_trajectory(300, 2.0, 21);
    let pred = perturbed(&gt, 22);
    let base = evaluate_sequence("base", &gt, &pred).unwrap();
    assert!(!base.is_empty());

    let g_rot = RotationMatrix::from_rpy(0.3, -0.5, 1.1);
    let g_trans = Vector3::new(40.0, -7.0, 13.0);
    let moved = |poses: &[Pose]| -> Vec<Pose> {
        poses
            .iter()
            .map(|p| Pose::new(g_rot * p.rotation, g_rot.rotate(&p.position) + g_trans))
            .collect()
    };
    let shifted = evaluate_sequence("moved", &moved(&gt), &moved(&pred)).unwrap();

    assert_eq!(base.segment_errors.len(), shifted.segment_errors.len());
    for (a, b) in base.segment_errors.iter().zip(&shifted.segment_errors) {
        assert_eq!(a.first_frame, b.first_frame);
        assert_eq!(a.length, b.length);
        assert!((a.trans_err - b.trans_err).abs() < 1e-9);
        assert!((a.rot_err - b.rot_err).abs() < 1e-9);
    }
    assert!((base.trans_pct - shifted.trans_pct).abs() < 1e-9);
    assert!((base.rot_deg_per_m - shifted.rot_deg_per_m).abs() < 1e-9);
}

#[test]
fn self_evaluation_is_zero_for_every_generated_trajectory() {
    for seed in [1, 7, 33] {
        let gt = random_trajectory(200, 3.0, seed);
        let report = evaluate_sequence("self", &gt, &gt).unwrap();
        assert!(!report.is_empty());
        assert_eq!(report.trans_pct, 0.0);
        assert!(report.rot_deg_per_m.abs() < 1e-7, "seed {seed}");
    }
}
