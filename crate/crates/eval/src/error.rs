use thiserror::Error;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("ground truth has {gt} poses but prediction has {pred}")]
    LengthMismatch { gt: usize, pred: usize },
    #[error("need at least 2 poses per trajectory, got {0}")]
    TooFewPoses(usize),
    #[error("no sequence reports to summarize")]
    NoReports,
    #[error("no rows to rank")]
    NoRows,
    #[error("non-finite metric value in {0}")]
    NonFinite(&'static str),
}
