use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dispvo_data::{read_pose_file, write_pose_file};
use dispvo_pose::{relative_pose, Pose, RotationMatrix};
use nalgebra::Vector3;

fn dispvo() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dispvo"))
}

fn run_ok(cmd: &mut Command) -> String {
    let output = cmd.output().expect("spawn dispvo");
    assert!(
        output.status.success(),
        "command failed\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout).expect("utf8 stdout")
}

fn run_err(cmd: &mut Command) -> Output {
    let output = cmd.output().expect("spawn dispvo");
    assert!(
        !output.status.success(),
        "command unexpectedly succeeded\nstdout: {}",
        String::from_utf8_lossy(&output.stdout)
    );
    output
}

fn synth(dir: &Path, frames: usize, seed: u64) {
    run_ok(dispvo()
        .arg("synth")
        .arg("--out")
        .arg(dir)
        .args(["--frames", &frames.to_string()])
        .args(["--width", "48", "--height", "16"])
        .args(["--seed", &seed.to_string()]));
}

fn prepare(data: &Path, manifest: &Path, skip: Option<bool>) -> String {
    let mut cmd = dispvo();
    cmd.arg("prepare")
        .arg("--poses")
        .arg(data.join("poses.txt"))
        .arg("--frames")
        .arg(data.join("frames"))
        .arg("--out")
        .arg(manifest);
    if let Some(s) = skip {
        cmd.args(["--skip-ordering", &s.to_string()]);
    }
    run_ok(&mut cmd)
}

#[test]
fn prepare_reports_pair_counts_for_both_modes() {
    let tmp = tempfile::tempdir().unwrap();
    let data = tmp.path().join("data");
    synth(&data, 10, 3);

    let with_skip = tmp.path().join("with_skip.txt");
    let stdout = prepare(&data, &with_skip, Some(true));
    assert!(stdout.contains("triples: 8"), "{stdout}");
    assert!(stdout.contains("pairs: 24"), "{stdout}");

    let without = tmp.path().join("without.txt");
    let stdout = prepare(&data, &without, Some(false));
    assert!(stdout.contains("pairs: 16"), "{stdout}");

    // Re-running yields byte-identical output.
    let again = tmp.path().join("again.txt");
    prepare(&data, &again, Some(true));
    assert_eq!(fs::read(&with_skip).unwrap(), fs::read(&again).unwrap());
}

#[test]
fn pipeline_runs_end_to_end() {
    let tmp = tempfile::tempdir().unwrap();
    let data = tmp.path().join("data");
    synth(&data, 10, 5);

    let manifest = tmp.path().join("manifest.txt");
    prepare(&data, &manifest, None);

    let run_dir = tmp.path().join("run");
    let stdout = run_ok(dispvo()
        .arg("train")
        .arg("--manifest")
        .arg(&manifest)
        .arg("--out")
        .arg(&run_dir)
        .args(["--epochs", "1", "--steps-per-epoch", "2", "--seed", "5"]));
    assert!(stdout.contains("steps: 2"), "{stdout}");

    let log = fs::read_to_string(run_dir.join("loss_log.tsv")).unwrap();
    let mut lines = log.lines();
    assert_eq!(
        lines.next(),
        Some("epoch\tstep\tlr\trot_21\trot_32\trot_31\ttrans_21\ttrans_32\ttrans_31\ttotal")
    );
    let first = lines.next().unwrap();
    assert!(first.starts_with("0\t0\t0.00001\t"), "{first}");

    let motions = tmp.path().join("motions.txt");
    run_ok(dispvo()
        .arg("predict")
        .arg("--checkpoint")
        .arg(run_dir.join("checkpoint.dvck"))
        .arg("--frames")
        .arg(data.join("frames"))
        .arg("--out")
        .arg(&motions));
    assert_eq!(fs::read_to_string(&motions).unwrap().lines().count(), 9);

    let pred = tmp.path().join("pred.txt");
    run_ok(dispvo()
        .arg("integrate")
        .arg("--motions")
        .arg(&motions)
        .arg("--out")
        .arg(&pred));
    let pred_text = fs::read_to_string(&pred).unwrap();
    assert_eq!(pred_text.lines().count(), 10);
    assert_eq!(
        pred_text.lines().next(),
        Some("1 0 0 0 0 1 0 0 0 0 1 0")
    );

    let svg_a = tmp.path().join("a.svg");
    let svg_b = tmp.path().join("b.svg");
    for svg in [&svg_a, &svg_b] {
        run_ok(dispvo()
            .arg("plot")
            .arg(data.join("poses.txt"))
            .arg(&pred)
            .arg("--out")
            .arg(svg));
    }
    let bytes = fs::read(&svg_a).unwrap();
    assert_eq!(bytes, fs::read(&svg_b).unwrap());
    assert!(bytes.starts_with(b"<svg "));
}

#[test]
fn integrate_reproduces_poses_from_their_own_motions() {
    let tmp = tempfile::tempdir().unwrap();

    // A curvy reference trajectory starting at the identity.
    let mut poses = vec![Pose::identity()];
    for k in 1..40 {
        let t = k as f64;
        poses.push(Pose::new(
            RotationMatrix::from_rpy(0.001 * t, 0.02 * t, 0.05 * t),
            Vector3::new((0.2 * t).sin() * 4.0, 0.1 * t, 1.3 * t),
        ));
    }
    let motions: Vec<Pose> = poses
        .windows(2)
        .map(|w| {
            let m = relative_pose(&w[0], &w[1]);
            Pose::new(*m.rotation(), *m.translation())
        })
        .collect();
    let motions_path = tmp.path().join("motions.txt");
    write_pose_file(&motions, &motions_path).unwrap();

    let out = tmp.path().join("rebuilt.txt");
    run_ok(dispvo()
        .arg("integrate")
        .arg("--motions")
        .arg(&motions_path)
        .arg("--out")
        .arg(&out));

    let rebuilt = read_pose_file(&out).unwrap();
    assert_eq!(rebuilt.len(), poses.len());
    for (a, b) in rebuilt.iter().zip(&poses) {
        assert!((a.position - b.position).norm() < 1e-6);
        assert!((a.rotation.matrix() - b.rotation.matrix()).norm() < 1e-6);
    }
}

#[test]
fn evaluate_scores_known_constructions() {
    let tmp = tempfile::tempdir().unwrap();
    // One meter per frame makes every realized segment distance equal its
    // nominal length, so the scaled prediction scores exactly 10 percent.
    let gt: Vec<Pose> = (0..250)
        .map(|i| {
            Pose::new(
                RotationMatrix::identity(),
                Vector3::new(0.0, 0.0, i as f64),
            )
        })
        .collect();
    let scaled: Vec<Pose> = gt
        .iter()
        .map(|p| Pose::new(p.rotation, p.position * 1.10))
        .collect();

    let gt_path = tmp.path().join("gt.txt");
    let scaled_path = tmp.path().join("scaled.txt");
    write_pose_file(&gt, &gt_path).unwrap();
    write_pose_file(&scaled, &scaled_path).unwrap();

    let stdout = run_ok(dispvo()
        .arg("evaluate")
        .arg("--gt")
        .arg(&gt_path)
        .arg("--pred")
        .arg(&gt_path));
    assert!(stdout.contains("gt\t0.000\t0.0000"), "{stdout}");
    assert!(stdout.contains("avg\t0.000\t0.0000"), "{stdout}");

    let report = tmp.path().join("report.tsv");
    let stdout = run_ok(dispvo()
        .arg("evaluate")
        .arg("--gt")
        .arg(&gt_path)
        .arg("--pred")
        .arg(&scaled_path)
        .arg("--out")
        .arg(&report));
    assert!(stdout.contains("gt\t10.000\t0.0000"), "{stdout}");
    assert_eq!(fs::read_to_string(&report).unwrap(), stdout);
    assert_eq!(
        stdout.lines().next(),
        Some("seq\ttrans_pct\trot_deg_per_m")
    );
}

#[test]
fn documented_failures_exit_nonzero() {
    let tmp = tempfile::tempdir().unwrap();
    let data = tmp.path().join("data");
    synth(&data, 6, 9);

    // A pose with no matching disparity frame is fatal and names the index.
    fs::remove_file(data.join("frames").join("000003.dsp")).unwrap();
    let out = run_err(dispvo()
        .arg("prepare")
        .arg("--poses")
        .arg(data.join("poses.txt"))
        .arg("--frames")
        .arg(data.join("frames"))
        .arg("--out")
        .arg(tmp.path().join("m.txt")));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("pose index 3"), "{stderr}");

    // Epochs beyond the learning-rate schedule are a config error.
    let data2 = tmp.path().join("data2");
    synth(&data2, 6, 9);
    let manifest = tmp.path().join("m2.txt");
    prepare(&data2, &manifest, None);
    let out = run_err(dispvo()
        .arg("train")
        .arg("--manifest")
        .arg(&manifest)
        .arg("--out")
        .arg(tmp.path().join("run"))
        .args(["--epochs", "31"]));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("epochs"), "{stderr}");

    // Unequal gt/pred lengths are fatal.
    let a = tmp.path().join("a.txt");
    let b = tmp.path().join("b.txt");
    write_pose_file(&vec![Pose::identity(); 12], &a).unwrap();
    write_pose_file(&vec![Pose::identity(); 11], &b).unwrap();
    run_err(dispvo().arg("evaluate").arg("--gt").arg(&a).arg("--pred").arg(&b));

    // Unknown config keys are fatal.
    let config = tmp.path().join("bad.cfg");
    fs::write(&config, "not_a_key = 1\n").unwrap();
    run_err(dispvo()
        .arg("plot")
        .arg(&a)
        .arg("--config")
        .arg(&config)
        .arg("--out")
        .arg(tmp.path().join("x.svg")));

    // An empty pose file cannot be plotted.
    let empty = tmp.path().join("empty.txt");
    fs::write(&empty, "").unwrap();
    run_err(dispvo()
        .arg("plot")
        .arg(&empty)
        .arg("--out")
        .arg(tmp.path().join("y.svg")));
}

#[test]
fn outputs_are_seed_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let data_a = tmp.path().join("a");
    let data_b = tmp.path().join("b");
    synth(&data_a, 8, 42);
    synth(&data_b, 8, 42);
    assert_eq!(
        fs::read(data_a.join("poses.txt")).unwrap(),
        fs::read(data_b.join("poses.txt")).unwrap()
    );
    assert_eq!(
        fs::read(data_a.join("frames/000004.dsp")).unwrap(),
        fs::read(data_b.join("frames/000004.dsp")).unwrap()
    );

    let manifest = tmp.path().join("manifest.txt");
    prepare(&data_a, &manifest, None);
    let train_into = |dir: &PathBuf, seed: &str| {
        run_ok(dispvo()
            .arg("train")
            .arg("--manifest")
            .arg(&manifest)
            .arg("--out")
            .arg(dir)
            .args(["--epochs", "1", "--steps-per-epoch", "2", "--seed", seed]));
    };
    let run_a = tmp.path().join("run_a");
    let run_b = tmp.path().join("run_b");
    let run_c = tmp.path().join("run_c");
    train_into(&run_a, "11");
    train_into(&run_b, "11");
    train_into(&run_c, "12");
    let ckpt_a = fs::read(run_a.join("checkpoint.dvck")).unwrap();
    assert_eq!(ckpt_a, fs::read(run_b.join("checkpoint.dvck")).unwrap());
    assert_eq!(
        fs::read(run_a.join("loss_log.tsv")).unwrap(),
        fs::read(run_b.join("loss_log.tsv")).unwrap()
    );
    assert_ne!(ckpt_a, fs::read(run_c.join("checkpoint.dvck")).unwrap());
}
