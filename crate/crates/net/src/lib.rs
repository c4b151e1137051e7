//! Attention-gated convolutional regression over disparity-map pairs.
//!
//! Two frames pass through shared feature and gate stacks; the gated maps
//! are concatenated and regressed by a translation head and a deeper
//! rotation head. Training minimizes a rotation-weighted squared-error
//! objective with Adam under a halving learning-rate schedule. Everything
//! runs in double precision on the CPU, deterministically for a fixed
//! seed, with reverse-mode gradients verified against finite differences.

mod error;
mod gradcheck;
mod layers;
mod loss;
mod model;
mod optim;
mod tensor;
mod train;

pub use error::NetError;
pub use gradcheck::{check_gradients, GradCheckReport, DEFAULT_FD_STEP};
pub use loss::{loss, rotation_target, LossBreakdown, LossConfig};
pub use model::{
    load_checkpoint, load_checkpoint_file, save_checkpoint, save_checkpoint_file, LayerKind,
    Network, NetworkConfig, ParamRange, Prediction,
};
pub use optim::{
    lr_schedule, scaled_lr_schedule, AdamState, ADAM_BETA1, ADAM_BETA2, ADAM_EPSILON,
    BASE_LEARNING_RATE, HALVING_PERIOD, SCHEDULE_EPOCHS,
};
pub use tensor::Tensor;
pub use train::{predict_sequence, prediction_to_motion, train, LossRecord, TrainConfig};
