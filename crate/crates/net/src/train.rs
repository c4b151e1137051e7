use std::f64::consts::{FRAC_PI_2, PI, TAU};

use dispvo_data::{expand_pairs, DisparityMap, TrainingTriple};
use dispvo_pose::{EulerAngles, RelativeMotion};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::NetError;
use crate::loss::{LossBreakdown, LossConfig};
use crate::model::{Network, NetworkConfig, Prediction};
use crate::optim::{scaled_lr_schedule, AdamState, BASE_LEARNING_RATE, SCHEDULE_EPOCHS};

/// Keeps the epoch-shuffling stream distinct from the weight-init stream,
/// which is seeded with the raw seed inside `Network::new`.
const SHUFFLE_STREAM: u64 = 0x5DEECE66D;

/// Training hyperparameters.
#[derive(Debug, Clone)]
pub struct TrainConfig {
    /// Number of epochs, at most 30 (the schedule domain).
    pub epochs: usize,
    /// Optimizer steps per epoch; `None` runs one pass over the dataset.
    /// More steps than triples re-walk the shuffled order.
    pub steps_per_epoch: Option<usize>,
    /// Learning rate at epoch 0; halves every 5 epochs. The reference rate
    /// is 1e-5; desk-scale overfit runs want a larger one.
    pub base_lr: f64,
    /// Rotation-loss weight.
    pub alpha: f64,
    /// Adds the gap-2 pair of each triple to the training pairs.
    pub skip_ordering: bool,
    /// Seeds weight init and epoch shuffling.
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            epochs: SCHEDULE_EPOCHS,
            steps_per_epoch: None,
            base_lr: BASE_LEARNING_RATE,
            alpha: LossConfig::default().alpha,
            skip_ordering: true,
            seed: 0,
        }
    }
}

/// One optimizer step's record in the loss history.
#[derive(Debug, Clone)]
pub struct LossRecord {
    pub epoch: usize,
    /// Step index within the epoch, starting at 0.
    pub step: usize,
    pub lr: f64,
    pub loss: LossBreakdown,
}

/// Trains a fresh network on the triples: per step, one triple is expanded
/// into its pairs, the summed pair loss is backpropagated, and Adam
/// applies the epoch's scheduled learning rate. Triple order is reshuffled
/// every epoch from the seed, so the whole trajectory is deterministic.
pub fn train(
    triples: &[TrainingTriple],
    config: &TrainConfig,
) -> Result<(Network, Vec<LossRecord>), NetError> {
    if triples.is_empty() {
        return Err(NetError::EmptyDataset);
    }
    if config.epochs == 0 {
        return Err(NetError::InvalidConfig("epochs must be at least 1".into()));
    }
    if config.epochs > SCHEDULE_EPOCHS {
        return Err(NetError::ScheduleOverrun(config.epochs - 1));
    }
    if config.steps_per_epoch == Some(0) {
        return Err(NetError::InvalidConfig(
            "steps_per_epoch must be at least 1".into(),
        ));
    }
    let loss_cfg = LossConfig {
        alpha: config.alpha,
    };
    loss_cfg.validate()?;

    let first = &triples[0].frames()[0];
    let net_config = NetworkConfig::new(first.height(), first.width())?;
    for triple in triples {
        for frame in triple.frames() {
            if frame.width() != net_config.width || frame.height() != net_config.height {
                return Err(NetError::ResolutionMismatch {
                    want_w: net_config.width,
                    want_h: net_config.height,
                    found_w: frame.width(),
                    found_h: frame.height(),
                });
            }
        }
    }

    let mut net = Network::new(net_config, config.seed)?;
    let mut params = net.params_vec();
    let mut adam = AdamState::new(params.len());
    let mut shuffle_rng = ChaCha8Rng::seed_from_u64(config.seed ^ SHUFFLE_STREAM);
    let mut history = Vec::new();

    for epoch in 0..config.epochs {
        let lr = scaled_lr_schedule(config.base_lr, epoch)?;
        let mut order: Vec<usize> = (0..triples.len()).collect();
        order.shuffle(&mut shuffle_rng);
        let steps = config.steps_per_epoch.unwrap_or(triples.len());
        for step in 0..steps {
            let triple = &triples[order[step % order.len()]];
            let pairs = expand_pairs(triple, config.skip_ordering);
            let (loss, grads) = net.backward(&pairs, &loss_cfg, config.skip_ordering)?;
            adam.step(&mut params, &grads, lr);
            net.set_params_vec(&params)?;
            history.push(LossRecord {
                epoch,
                step,
                lr,
                loss,
            });
        }
    }
    Ok((net, history))
}

/// Regresses the N-1 consecutive frame-to-frame motions of a sequence.
pub fn predict_sequence(
    net: &Network,
    frames: &[DisparityMap],
) -> Result<Vec<RelativeMotion>, NetError> {
    if frames.len() < 2 {
        return Err(NetError::TooFewFrames(frames.len()));
    }
    frames
        .windows(2)
        .map(|w| prediction_to_motion(&net.forward(&w[0], &w[1])?))
        .collect()
}

/// Maps a raw regression onto a valid motion: roll and yaw wrap into
/// (-pi, pi], pitch clamps to [-pi/2, pi/2]. The network's outputs are
/// unconstrained reals, so the mapping is what makes them a rotation.
pub fn prediction_to_motion(p: &Prediction) -> Result<RelativeMotion, NetError> {
    let euler = EulerAngles::new(
        wrap_angle(p.euler.x),
        wrap_angle(p.euler.y).clamp(-FRAC_PI_2, FRAC_PI_2),
        wrap_angle(p.euler.z),
    )
    .map_err(|_| NetError::NonFinite("predicted rotation"))?;
    Ok(RelativeMotion::from_euler(euler, p.translation))
}

/// Wraps onto (-pi, pi].
fn wrap_angle(a: f64) -> f64 {
    let r = (a + PI).rem_euclid(TAU) - PI;
    if r == -PI {
        PI
    } else {
        r
    }
}
