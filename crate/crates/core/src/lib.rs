//! Core algorithms for weight-aware highway driving risk assessment and
//! hierarchical reinforcement learning.
//!
//! This crate is `no_std` (with `alloc`) and carries no IO: it computes risk
//! fields, steps the traffic world, builds observations and rewards, runs the
//! neural networks and the trainer, and aggregates safety metrics. File
//! formats, configuration loading, and the command-line surface live in the
//! companion `riskway` crate.

#![no_std]

extern crate alloc;

#[cfg(any(test, feature = "std"))]
extern crate std;

pub(crate) mod mathf;

pub mod envmdp;
pub mod hppo;
pub mod neuralcore;
pub mod riskfield;
pub mod safetymetrics;
pub mod simworld;
