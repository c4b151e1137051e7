//! Data plumbing for disparity-based visual odometry: pose-file parsing
//! and writing, disparity-map storage, training-triple and pair
//! construction with optional skip-ordering, and a deterministic synthetic
//! sequence generator for desk-scale experiments.

mod disparity;
mod error;
mod kitti;
mod pairs;
mod synth;

pub use disparity::{
    import_grayscale, load_disparity, load_disparity_file, save_disparity, save_disparity_file,
    DisparityMap,
};
pub use error::DataError;
pub use kitti::{
    format_kitti_pose, parse_kitti_poses, read_pose_file, write_kitti_poses, write_pose_file,
};
pub use pairs::{expand_pairs, make_triples, PairSample, SequenceSplit, TrainingTriple};
pub use synth::{
    generate_synthetic_sequence, render_disparity, Camera, MotionProfile, Panel, Scene, Surface,
    SynthConfig, SyntheticSequence,
};
