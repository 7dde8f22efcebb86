//! Multinomial logistic regression on propagated features.
//!
//! Training minimizes mean cross-entropy plus an L2 penalty, starting from
//! `Θ = 0`. The problem is convex, so every optimizer converges to the same
//! weights and runs are exactly reproducible.

mod metrics;
mod model_io;
mod objective;
mod train;

pub use metrics::{accuracy, micro_f1, predict};
pub use model_io::{decode_weights, encode_weights, load_weights, save_weights, MODEL_MAGIC, MODEL_VERSION};
pub use objective::{loss_and_gradient, one_hot, softmax};
pub use train::{train, train_with_history, ModelParams, Optimizer, TrainOptions};
