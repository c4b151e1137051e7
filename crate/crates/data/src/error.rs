use std::io;

use thiserror::Error;

/// Errors raised while reading, writing, or assembling training data.
#[derive(Debug, Error)]
pub enum DataError {
    #[error("i/o error")]
    Io(#[from] io::Error),

    #[error("image error")]
    Image(#[from] image::ImageError),

    #[error("line {line}: expected 12 values, found {found}")]
    PoseTokenCount { line: usize, found: usize },

    #[error("line {line}: cannot parse {token:?} as a number")]
    PoseNumber { line: usize, token: String },

    #[error("line {line}: matrix is not a rotation (orthonormality defect {defect:.3e})")]
    PoseNotRotation { line: usize, defect: f64 },

    #[error("line {line}: matrix is a reflection (determinant {det:.6})")]
    PoseReflection { line: usize, det: f64 },

    #[error("disparity file has bad magic bytes")]
    BadMagic,

    #[error("disparity file has unsupported version {0}")]
    UnsupportedVersion(u32),

    #[error("disparity dimensions {width}x{height} are invalid")]
    BadDimensions { width: usize, height: usize },

    #[error("expected {expected} disparity values, found {found}")]
    ValueCount { expected: usize, found: usize },

    #[error("disparity value at index {index} is not finite")]
    NonFiniteValue { index: usize },

    #[error("image must be single-channel 8-bit or 16-bit grayscale, got {0}")]
    NotGrayscale(String),

    #[error("{frames} frames but {poses} poses; counts must match")]
    LengthMismatch { frames: usize, poses: usize },

    #[error("need at least 3 frames to build a training triple, found {found}")]
    TooFewFrames { found: usize },

    #[error("triple frames must be consecutive, got indices {0}, {1}, {2}")]
    NonConsecutiveTriple(usize, usize, usize),

    #[error("pair gap must be 1 or 2 frames, got {0}")]
    BadPairGap(usize),

    #[error("sequence {0:?} appears in both the train and test split")]
    SplitOverlap(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
