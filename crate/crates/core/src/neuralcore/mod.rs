//! From-scratch differentiable computation: tensors, a reverse-mode tape,
//! the dense/LSTM/attention actor-critic networks, Adam with linear
//! learning-rate decay and global-norm clipping, and a finite-difference
//! gradient checker.

mod adam;
mod gradcheck;
mod layers;
mod params;
mod tape;
mod tensor;

pub use adam::{adam_step, clip_global_norm, AdamConfig, OptimizerState};
pub use gradcheck::{
    finite_diff_max_rel_err, gradient_check, GradCheckReport, LayerKind, FD_EPSILON, KINK_MARGIN,
};
pub use layers::{
    attention_forward, forward_actor, lstm_cell, ActorOutput, AttentionWeights, LstmWeights,
};
pub use params::{
    decode_checkpoint, encode_checkpoint, NetworkSpec, ParamEntry, ParamLayout, ParamVec,
};
pub use tape::{Tape, Var};
pub use tensor::Tensor2D;

pub(crate) use layers::{build_actor_critic, window_leaves};

use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NetError {
    ShapeMismatch,
    GraphNotEvaluated,
    BadCheckpoint,
}

impl fmt::Display for NetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NetError::ShapeMismatch => write!(f, "tensor shapes are inconsistent"),
            NetError::GraphNotEvaluated => write!(f, "backward called before forward"),
            NetError::BadCheckpoint => write!(f, "checkpoint bytes do not match this network"),
        }
    }
}

impl core::error::Error for NetError {}
