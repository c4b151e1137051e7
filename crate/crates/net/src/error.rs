use std::io;

use thiserror::Error;

/// Errors raised by the network, its training loop, and checkpoint I/O.
#[derive(Debug, Error)]
pub enum NetError {
    #[error("input is {found_w}x{found_h} but the network expects {want_w}x{want_h}")]
    ResolutionMismatch {
        want_w: usize,
        want_h: usize,
        found_w: usize,
        found_h: usize,
    },

    #[error("epoch {0} is outside the schedule domain (training ends at 30 epochs)")]
    ScheduleOverrun(usize),

    #[error("training dataset is empty")]
    EmptyDataset,

    #[error("need at least 2 frames to predict motions, found {0}")]
    TooFewFrames(usize),

    #[error("bad pair structure: {0}")]
    BadPairStructure(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("i/o error")]
    Io(#[from] io::Error),

    #[error("bad checkpoint: {0}")]
    BadCheckpoint(String),
}
