use dispvo_data::PairSample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::NetError;
use crate::loss::LossConfig;
use crate::model::{LayerKind, Network};

/// Central-difference step used by the reference check.
pub const DEFAULT_FD_STEP: f64 = 1e-5;
/// Both gradients below this magnitude are treated as matching zeros; the
/// difference quotient loses all signal there.
const DEAD_ZONE: f64 = 1e-8;

/// Outcome of comparing reverse-mode gradients against central finite
/// differences on sampled parameters of one category.
#[derive(Debug, Clone)]
pub struct GradCheckReport {
    pub kind: LayerKind,
    pub checked: usize,
    pub max_rel_err: f64,
    /// Tensor label of the worst parameter.
    pub worst_param: String,
}

/// Verifies reverse-mode gradients of the triple loss against central
/// finite differences on `samples` randomly chosen parameters of the given
/// category. Relative error is |analytic - numeric| / max(|analytic|,
/// |numeric|), with near-zero pairs counted as exact.
pub fn check_gradients(
    net: &Network,
    pairs: &[PairSample],
    cfg: &LossConfig,
    skip_ordering: bool,
    kind: LayerKind,
    samples: usize,
    step: f64,
    seed: u64,
) -> Result<GradCheckReport, NetError> {
    let (_, analytic) = net.backward(pairs, cfg, skip_ordering)?;
    let layout = net.param_layout();
    let candidates: Vec<usize> = layout
        .iter()
        .filter(|r| r.kind == kind)
        .flat_map(|r| r.start..r.start + r.len)
        .collect();
    if candidates.is_empty() {
        return Err(NetError::InvalidConfig(format!(
            "no parameters of kind {kind:?}"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = Vec::with_capacity(samples);
    let mut pool = candidates;
    for _ in 0..samples.min(pool.len()) {
        let i = rng.random_range(0..pool.len());
        picked.push(pool.swap_remove(i));
    }

    let label_of = |idx: usize| {
        layout
            .iter()
            .find(|r| idx >= r.start && idx < r.start + r.len)
            .map(|r| r.label.clone())
            .unwrap_or_default()
    };

    let base_params = net.params_vec();
    let mut scratch = net.clone();
    let mut max_rel_err = 0.0f64;
    let mut worst_param = String::new();
    for &idx in &picked {
        let mut params = base_params.clone();
        params[idx] = base_params[idx] + step;
        scratch.set_params_vec(&params)?;
        let plus = scratch.evaluate_loss(pairs, cfg, skip_ordering)?.total;
        params[idx] = base_params[idx] - step;
        scratch.set_params_vec(&params)?;
        let minus = scratch.evaluate_loss(pairs, cfg, skip_ordering)?.total;
        let numeric = (plus - minus) / (2.0 * step);
        let a = analytic[idx];
        let rel = if a.abs() < DEAD_ZONE && numeric.abs() < DEAD_ZONE {
            0.0
        } else {
            (a - numeric).abs() / a.abs().max(numeric.abs())
        };
        if rel > max_rel_err {
            max_rel_err = rel;
            worst_param = label_of(idx);
        }
    }
    Ok(GradCheckReport {
        kind,
        checked: picked.len(),
        max_rel_err,
        worst_param,
    })
}
