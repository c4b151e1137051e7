use crate::error::NetError;

pub const ADAM_BETA1: f64 = 0.9;
pub const ADAM_BETA2: f64 = 0.999;
pub const ADAM_EPSILON: f64 = 1e-8;

/// Learning rate at epoch 0 of the reference schedule.
pub const BASE_LEARNING_RATE: f64 = 1e-5;
/// Training never runs past this many epochs.
pub const SCHEDULE_EPOCHS: usize = 30;
/// The learning rate halves once per this many epochs.
pub const HALVING_PERIOD: usize = 5;

/// Reference learning-rate schedule: starts at 1e-5 and halves every 5
/// epochs; the domain ends at 30 epochs.
pub fn lr_schedule(epoch: usize) -> Result<f64, NetError> {
    scaled_lr_schedule(BASE_LEARNING_RATE, epoch)
}

/// Same halving shape with a caller-chosen starting rate:
/// `base_lr * 0.5^(epoch / 5)`. Halving is exact in double precision.
pub fn scaled_lr_schedule(base_lr: f64, epoch: usize) -> Result<f64, NetError> {
    if !(base_lr.is_finite() && base_lr > 0.0) {
        return Err(NetError::InvalidConfig(format!(
            "base learning rate must be positive and finite, got {base_lr}"
        )));
    }
    if epoch >= SCHEDULE_EPOCHS {
        return Err(NetError::ScheduleOverrun(epoch));
    }
    Ok(base_lr * 0.5f64.powi((epoch / HALVING_PERIOD) as i32))
}

/// First and second moment accumulators for Adam, one slot per parameter.
#[derive(Debug, Clone)]
pub struct AdamState {
    m: Vec<f64>,
    v: Vec<f64>,
    t: u64,
}

impl AdamState {
    pub fn new(param_count: usize) -> Self {
        AdamState {
            m: vec![0.0; param_count],
            v: vec![0.0; param_count],
            t: 0,
        }
    }

    pub fn steps_taken(&self) -> u64 {
        self.t
    }

    /// One bias-corrected Adam update, in place.
    pub fn step(&mut self, params: &mut [f64], grads: &[f64], lr: f64) {
        assert_eq!(params.len(), self.m.len());
        assert_eq!(grads.len(), self.m.len());
        self.t += 1;
        let c1 = 1.0 - ADAM_BETA1.powi(self.t as i32);
        let c2 = 1.0 - ADAM_BETA2.powi(self.t as i32);
        for i in 0..params.len() {
            let g = grads[i];
            self.m[i] = ADAM_BETA1 * self.m[i] + (1.0 - ADAM_BETA1) * g;
            self.v[i] = ADAM_BETA2 * self.v[i] + (1.0 - ADAM_BETA2) * g * g;
            let m_hat = self.m[i] / c1;
            let v_hat = self.v[i] / c2;
            params[i] -= lr * m_hat / (v_hat.sqrt() + ADAM_EPSILON);
        }
    }
}
