//! Segment-based odometry benchmark metrics.
//!
//! A predicted trajectory is scored against ground truth by carving the
//! ground-truth path into overlapping segments of 100 to 800 meters, starting
//! every 10 frames, and measuring the residual translation (as a fraction of
//! segment length) and rotation (radians per meter) left after comparing the
//! two segment motions. Per-sequence means become the familiar percent and
//! degree-per-meter headline numbers, and cross-sequence summaries expose
//! both the per-sequence average and the segment-pooled average since the two
//! disagree whenever sequences contribute different segment counts.

mod error;
mod metrics;
mod summary;

pub use error::EvalError;
pub use metrics::{
    evaluate_sequence, trajectory_distances, SegmentError, SequenceReport, SEGMENT_LENGTHS,
    SEGMENT_STEP,
};
pub use summary::{
    compare_runs, render_comparison, render_sequence_table, render_summary, summarize,
    BenchmarkSummary, RunRow, REPORT_HEADER,
};
