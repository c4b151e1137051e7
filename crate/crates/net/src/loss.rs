use dispvo_pose::RelativeMotion;
use nalgebra::Vector3;

use crate::error::NetError;
use crate::model::Prediction;

/// Weight on the rotation part of the training objective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossConfig {
    pub alpha: f64,
}

impl Default for LossConfig {
    fn default() -> Self {
        LossConfig { alpha: 350.0 }
    }
}

impl LossConfig {
    pub fn validate(&self) -> Result<(), NetError> {
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(NetError::InvalidConfig(format!(
                "alpha must be a positive finite number, got {}",
                self.alpha
            )));
        }
        Ok(())
    }
}

/// Per-pair loss terms of one triple batch. Subscripts name the frames of
/// the triple: `_21` is the second frame w.r.t. the first, `_32` the third
/// w.r.t. the second, `_31` the skip pair (third w.r.t. first). Each term
/// is the batch mean of the squared Euclidean distance between the target
/// vector and the regressed vector; with one triple per batch that is a
/// single squared distance. Without skip-ordering the `_31` terms are zero
/// and excluded from the total.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossBreakdown {
    pub rot_21: f64,
    pub rot_32: f64,
    pub rot_31: f64,
    pub trans_21: f64,
    pub trans_32: f64,
    pub trans_31: f64,
    pub total: f64,
}

impl LossBreakdown {
    /// Combines per-pair terms with the fixed summation order
    /// `alpha * ((rot_21 + rot_32) + rot_31) + ((trans_21 + trans_32) + trans_31)`.
    pub fn compose(rot: [f64; 3], trans: [f64; 3], alpha: f64) -> Self {
        let total = alpha * ((rot[0] + rot[1]) + rot[2]) + ((trans[0] + trans[1]) + trans[2]);
        LossBreakdown {
            rot_21: rot[0],
            rot_32: rot[1],
            rot_31: rot[2],
            trans_21: trans[0],
            trans_32: trans[1],
            trans_31: trans[2],
            total,
        }
    }

    /// Recomputes the total from the stored parts with the same fixed
    /// summation order used by `compose`; equals `total` exactly.
    pub fn recomputed_total(&self, alpha: f64) -> f64 {
        alpha * ((self.rot_21 + self.rot_32) + self.rot_31)
            + ((self.trans_21 + self.trans_32) + self.trans_31)
    }
}

/// Rotation target of a pair: its Euler angles as (roll, pitch, yaw).
pub fn rotation_target(motion: &RelativeMotion) -> Vector3<f64> {
    motion.euler().as_vector()
}

fn squared_distance(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    (a - b).norm_squared()
}

/// Loss of one triple batch. `predictions` and `targets` are ordered
/// (second w.r.t. first, third w.r.t. second, third w.r.t. first), with
/// the third entry present exactly when skip-ordering is on.
pub fn loss(
    predictions: &[Prediction],
    targets: &[RelativeMotion],
    cfg: &LossConfig,
    skip_ordering: bool,
) -> Result<LossBreakdown, NetError> {
    loss_from_predictions(predictions, targets, cfg, skip_ordering)
}

pub(crate) fn loss_from_predictions(
    predictions: &[Prediction],
    targets: &[RelativeMotion],
    cfg: &LossConfig,
    skip_ordering: bool,
) -> Result<LossBreakdown, NetError> {
    cfg.validate()?;
    let want = if skip_ordering { 3 } else { 2 };
    if predictions.len() != want || targets.len() != want {
        return Err(NetError::BadPairStructure(format!(
            "expected {want} prediction/target entries, found {}/{}",
            predictions.len(),
            targets.len()
        )));
    }
    let mut rot = [0.0; 3];
    let mut trans = [0.0; 3];
    for (k, (p, t)) in predictions.iter().zip(targets).enumerate() {
        rot[k] = squared_distance(&rotation_target(t), &p.euler);
        trans[k] = squared_distance(t.translation(), &p.translation);
    }
    Ok(LossBreakdown::compose(rot, trans, cfg.alpha))
}

/// Gradient of the total loss at each prediction: one (d_euler,
/// d_translation) per pair, in the same order as the inputs.
pub(crate) fn loss_gradients(
    predictions: &[Prediction],
    targets: &[RelativeMotion],
    cfg: &LossConfig,
) -> Vec<(Vector3<f64>, Vector3<f64>)> {
    predictions
        .iter()
        .zip(targets)
        .map(|(p, t)| {
            let d_euler = 2.0 * cfg.alpha * (p.euler - rotation_target(t));
            let d_trans = 2.0 * (p.translation - t.translation());
            (d_euler, d_trans)
        })
        .collect()
}
