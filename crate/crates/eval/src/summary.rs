use std::fmt::Write as _;

use crate::error::EvalError;
use crate::metrics::{SegmentError, SequenceReport};

/// Cross-sequence aggregate of several [`SequenceReport`]s.
///
/// Two averages are exposed because they answer different questions. The
/// `mean_*` and `std_*` rows treat every sequence as one sample (arithmetic
/// mean and population standard deviation of the per-sequence values). The
/// `pooled_*` row instead pools every segment from every sequence into one
/// bag before averaging, which weights long sequences more heavily.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkSummary {
    pub reports: Vec<SequenceReport>,
    pub mean_trans_pct: f64,
    pub mean_rot_deg_per_m: f64,
    pub std_trans_pct: f64,
    pub std_rot_deg_per_m: f64,
    pub pooled_trans_pct: f64,
    pub pooled_rot_deg_per_m: f64,
}

fn population_std(values: &[f64], mean: f64) -> f64 {
    let n = values.len() as f64;
    (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt()
}

/// Aggregates per-sequence reports into the summary rows.
///
/// Sequences too short to contain any segment are carried through for display
/// but excluded from every aggregate row.
pub fn summarize(reports: Vec<SequenceReport>) -> Result<BenchmarkSummary, EvalError> {
    if reports.is_empty() {
        return Err(EvalError::NoReports);
    }
    let scored: Vec<&SequenceReport> = reports.iter().filter(|r| !r.is_empty()).collect();
    if scored.is_empty() {
        return Ok(BenchmarkSummary {
            reports,
            mean_trans_pct: 0.0,
            mean_rot_deg_per_m: 0.0,
            std_trans_pct: 0.0,
            std_rot_deg_per_m: 0.0,
            pooled_trans_pct: 0.0,
            pooled_rot_deg_per_m: 0.0,
        });
    }

    let trans: Vec<f64> = scored.iter().map(|r| r.trans_pct).collect();
    let rot: Vec<f64> = scored.iter().map(|r| r.rot_deg_per_m).collect();
    let n = scored.len() as f64;
    let mean_trans_pct = trans.iter().sum::<f64>() / n;
    let mean_rot_deg_per_m = rot.iter().sum::<f64>() / n;

    let segments: Vec<&SegmentError> = scored
        .iter()
        .flat_map(|r| r.segment_errors.iter())
        .collect();
    let m = segments.len() as f64;
    let pooled_trans_pct = 100.0 * segments.iter().map(|s| s.trans_err).sum::<f64>() / m;
    let pooled_rot_deg_per_m =
        (180.0 / std::f64::consts::PI) * segments.iter().map(|s| s.rot_err).sum::<f64>() / m;

    Ok(BenchmarkSummary {
        std_trans_pct: population_std(&trans, mean_trans_pct),
        std_rot_deg_per_m: population_std(&rot, mean_rot_deg_per_m),
        reports,
        mean_trans_pct,
        mean_rot_deg_per_m,
        pooled_trans_pct,
        pooled_rot_deg_per_m,
    })
}

/// One row of a cross-run ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRow {
    pub name: String,
    pub trans_pct: f64,
    pub rot_deg_per_m: f64,
}

impl RunRow {
    pub fn new(name: &str, trans_pct: f64, rot_deg_per_m: f64) -> Self {
        Self {
            name: name.to_string(),
            trans_pct,
            rot_deg_per_m,
        }
    }

    /// Uses the per-sequence mean rows of a summary as the run's headline.
    pub fn from_summary(name: &str, summary: &BenchmarkSummary) -> Self {
        Self::new(name, summary.mean_trans_pct, summary.mean_rot_deg_per_m)
    }

    fn sort_key(&self) -> (f64, f64, &str) {
        (self.trans_pct, self.rot_deg_per_m, &self.name)
    }
}

/// Ranks runs by translation error, best first.
///
/// Ties break on rotation error, then name, so the ordering is deterministic.
pub fn compare_runs(rows: &[RunRow]) -> Result<Vec<RunRow>, EvalError> {
    if rows.is_empty() {
        return Err(EvalError::NoRows);
    }
    for row in rows {
        if !row.trans_pct.is_finite() || !row.rot_deg_per_m.is_finite() {
            return Err(EvalError::NonFinite("run row"));
        }
    }
    let mut sorted = rows.to_vec();
    sorted.sort_by(|a, b| {
        a.sort_key()
            .partial_cmp(&b.sort_key())
            .expect("finiteness checked above")
    });
    Ok(sorted)
}

pub const REPORT_HEADER: &str = "seq\ttrans_pct\trot_deg_per_m";

fn push_metric_row(out: &mut String, label: &str, trans_pct: f64, rot_deg_per_m: f64) {
    writeln!(out, "{label}\t{trans_pct:.3}\t{rot_deg_per_m:.4}").expect("string write");
}

/// Renders one row per sequence; under-length sequences show dashes.
pub fn render_sequence_table(reports: &[SequenceReport]) -> String {
    let mut out = String::new();
    out.push_str(REPORT_HEADER);
    out.push('\n');
    for report in reports {
        if report.is_empty() {
            writeln!(out, "{}\t-\t-", report.sequence_id).expect("string write");
        } else {
            push_metric_row(&mut out, &report.sequence_id, report.trans_pct, report.rot_deg_per_m);
        }
    }
    out
}

/// Renders the per-sequence rows followed by the aggregate rows.
pub fn render_summary(summary: &BenchmarkSummary) -> String {
    let mut out = render_sequence_table(&summary.reports);
    push_metric_row(&mut out, "avg", summary.mean_trans_pct, summary.mean_rot_deg_per_m);
    push_metric_row(&mut out, "std", summary.std_trans_pct, summary.std_rot_deg_per_m);
    push_metric_row(
        &mut out,
        "pooled",
        summary.pooled_trans_pct,
        summary.pooled_rot_deg_per_m,
    );
    out
}

/// Renders ranked rows; callers sort with [`compare_runs`] first.
pub fn render_comparison(rows: &[RunRow]) -> String {
    let mut out = String::from("run\ttrans_pct\trot_deg_per_m\n");
    for row in rows {
        push_metric_row(&mut out, &row.name, row.trans_pct, row.rot_deg_per_m);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Report with one segment per given error so that the per-sequence mean
    /// equals that error exactly.
    fn report_with(id: &str, trans_err: f64, rot_err: f64) -> SequenceReport {
        SequenceReport::from_segments(
            id,
            vec![SegmentError {
                first_frame: 0,
                length: 100.0,
                trans_err,
                rot_err,
            }],
        )
    }

    #[test]
    fn single_report_summary_is_that_report() {
        let summary = summarize(vec![report_with("08", 0.05, 0.0004)]).unwrap();
        assert!((summary.mean_trans_pct - 5.0).abs() < 1e-12);
        assert_eq!(summary.std_trans_pct, 0.0);
        assert_eq!(summary.std_rot_deg_per_m, 0.0);
        assert!((summary.pooled_trans_pct - summary.mean_trans_pct).abs() < 1e-12);
    }

    #[test]
    fn three_sequence_summary_matches_hand_computed_rows() {
        let reports = vec![
            report_with("08", 0.0921, 0.0),
            report_with("09", 0.0743, 0.0),
            report_with("10", 0.0726, 0.0),
        ];
        let summary = summarize(reports).unwrap();
        let mean = (9.21 + 7.43 + 7.26) / 3.0;
        assert!((summary.mean_trans_pct - mean).abs() < 1e-9);
        assert_eq!(format!("{:.2}", summary.mean_trans_pct), "7.97");
        assert_eq!(format!("{:.2}", summary.std_trans_pct), "0.88");
    }

    #[test]
    fn std_is_invariant_under_constant_shift() {
        let base = [0.0921, 0.0743, 0.0726];
        let shifted: Vec<f64> = base.iter().map(|v| v + 0.031).collect();
        let s1 = summarize(base.iter().map(|&t| report_with("s", t, 0.0)).collect()).unwrap();
        let s2 = summarize(shifted.iter().map(|&t| report_with("s", t, 0.0)).collect()).unwrap();
        assert!((s1.std_trans_pct - s2.std_trans_pct).abs() < 1e-9);
    }

    #[test]
    fn pooled_average_weights_segments_not_sequences() {
        // Sequence a contributes two 10% segments, b one 4% segment. The
        // per-sequence mean is (10+4)/2 = 7, the pooled mean (10+10+4)/3 = 8.
        let a = SequenceReport::from_segments(
            "a",
            vec![
                SegmentError { first_frame: 0, length: 100.0, trans_err: 0.10, rot_err: 0.0 },
                SegmentError { first_frame: 10, length: 100.0, trans_err: 0.10, rot_err: 0.0 },
            ],
        );
        let b = report_with("b", 0.04, 0.0);
        let summary = summarize(vec![a, b]).unwrap();
        assert!((summary.mean_trans_pct - 7.0).abs() < 1e-12);
        assert!((summary.pooled_trans_pct - 8.0).abs() < 1e-12);
    }

    #[test]
    fn empty_sequences_are_displayed_but_not_aggregated() {
        let reports = vec![
            report_with("long", 0.06, 0.0),
            SequenceReport::from_segments("short", vec![]),
        ];
        let summary = summarize(reports).unwrap();
        assert!((summary.mean_trans_pct - 6.0).abs() < 1e-12);
        assert_eq!(summary.std_trans_pct, 0.0);
        let text = render_summary(&summary);
        assert!(text.contains("short\t-\t-"));
    }

    #[test]
    fn summarize_rejects_no_reports() {
        assert!(matches!(summarize(vec![]), Err(EvalError::NoReports)));
    }

    #[test]
    fn ranking_reproduces_published_baseline_order() {
        // Benchmark numbers quoted from the comparison methods' reports.
        let rows = vec![
            RunRow::new("VISO2-M", 24.91, 0.0266),
            RunRow::new("P-CNN", 8.96, 0.0235),
            RunRow::new("SVR-VO", 15.02, 0.0401),
            RunRow::new("Flowdometry", 10.77, 0.0623),
        ];
        let ranked = compare_runs(&rows).unwrap();
        let names: Vec<&str> = ranked.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names, ["P-CNN", "Flowdometry", "SVR-VO", "VISO2-M"]);
        assert!(ranked.windows(2).all(|w| w[0].trans_pct <= w[1].trans_pct));
    }

    #[test]
    fn ranking_ties_break_on_rotation_then_name() {
        let rows = vec![
            RunRow::new("zeta", 5.0, 0.02),
            RunRow::new("beta", 5.0, 0.01),
            RunRow::new("alpha", 5.0, 0.02),
        ];
        let ranked = compare_runs(&rows).unwrap();
        let names: Vec<&str> = ranked.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names, ["beta", "alpha", "zeta"]);
    }

    #[test]
    fn ranking_rejects_empty_and_non_finite_input() {
        assert!(matches!(compare_runs(&[]), Err(EvalError::NoRows)));
        let rows = vec![RunRow::new("bad", f64::NAN, 0.0)];
        assert!(matches!(compare_runs(&rows), Err(EvalError::NonFinite(_))));
    }

    #[test]
    fn rendered_metrics_use_fixed_precision_columns() {
        let summary = summarize(vec![report_with("08", 0.1, 0.01)]).unwrap();
        let text = render_summary(&summary);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(REPORT_HEADER));
        // 0.1 ratio prints as 10.000 percent; 0.01 rad/m prints with four
        // decimals in deg/m.
        assert_eq!(lines.next(), Some("08\t10.000\t0.5730"));
        assert!(text.lines().any(|l| l.starts_with("avg\t10.000\t")));
        assert!(text.lines().any(|l| l.starts_with("std\t0.000\t0.0000")));
        assert!(text.lines().any(|l| l.starts_with("pooled\t10.000\t")));
    }

    #[test]
    fn run_row_from_summary_uses_sequence_mean() {
        let summary = summarize(vec![
            report_with("a", 0.08, 0.001),
            report_with("b", 0.04, 0.003),
        ])
        .unwrap();
        let row = RunRow::from_summary("ours", &summary);
        assert!((row.trans_pct - 6.0).abs() < 1e-12);
        assert!((row.rot_deg_per_m - summary.mean_rot_deg_per_m).abs() < 1e-15);
    }
}
