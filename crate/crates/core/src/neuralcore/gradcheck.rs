//! Finite-difference verification of analytic gradients.
//!
//! Central differences with a configurable step; trials that land too close
//! to a piecewise kink (relu corner, min/max tie, clip edge) are resampled
//! so the comparison stays meaningful.

use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::layers::{attention_on_tape, lstm_step_on_tape, LstmGateVars};
use super::tape::{Tape, Var};
use super::tensor::Tensor2D;
use crate::mathf;

pub const FD_EPSILON: f64 = 1e-5;
/// Minimum distance from a kink for a trial to count (well above the
/// finite-difference step).
pub const KINK_MARGIN: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq)]
pub struct GradCheckReport {
    pub component: String,
    pub trials: usize,
    pub max_rel_err: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayerKind {
    Dense,
    Lstm,
    Attention,
}

impl LayerKind {
    fn name(&self) -> &'static str {
        match self {
            LayerKind::Dense => "dense",
            LayerKind::Lstm => "lstm",
            LayerKind::Attention => "attention",
        }
    }
}

fn rel_err(a: f64, f: f64) -> f64 {
    mathf::abs(a - f) / mathf::max(mathf::max(mathf::abs(a), mathf::abs(f)), 1e-6)
}

/// Central-difference comparison of `analytic` against `loss` over every
/// parameter; returns the worst relative error.
pub fn finite_diff_max_rel_err(
    params: &[f64],
    analytic: &[f64],
    mut loss: impl FnMut(&[f64]) -> f64,
    eps: f64,
) -> f64 {
    let mut work = params.to_vec();
    let mut worst = 0.0f64;
    for i in 0..params.len() {
        let orig = work[i];
        work[i] = orig + eps;
        let up = loss(&work);
        work[i] = orig - eps;
        let down = loss(&work);
        work[i] = orig;
        let fd = (up - down) / (2.0 * eps);
        worst = mathf::max(worst, rel_err(analytic[i], fd));
    }
    worst
}

/// Builds the probe graph for one layer kind on the tape; `flat` carries
/// the parameters and `inputs` the fixed random inputs and readout weights.
fn build_probe(kind: LayerKind, tape: &mut Tape, flat: &[f64], inputs: &[Tensor2D]) -> Var {
    match kind {
        LayerKind::Dense => {
            let (n_in, n_out) = (6, 5);
            let w = tape.param(flat, 0, n_in, n_out);
            let b = tape.param(flat, n_in * n_out, 1, n_out);
            let x = tape.constant(inputs[0].clone());
            let readout = tape.constant(inputs[1].clone());
            let z = tape.matmul(x, w).unwrap();
            let z = tape.add_row(z, b).unwrap();
            let y = tape.relu(z);
            let weighted = tape.mul(y, readout).unwrap();
            tape.sum_all(weighted)
        }
        LayerKind::Lstm => {
            let (n_in, hidden) = (5, 4);
            let mut offset = 0;
            let mut grab = |tape: &mut Tape, rows: usize, cols: usize| {
                let v = tape.param(flat, offset, rows, cols);
                offset += rows * cols;
                v
            };
            let w = core::array::from_fn(|_| grab(tape, n_in, hidden));
            let u = core::array::from_fn(|_| grab(tape, hidden, hidden));
            let b = core::array::from_fn(|_| grab(tape, 1, hidden));
            let gates = LstmGateVars { w, u, b };
            let x = tape.constant(inputs[0].clone());
            let h_prev = tape.constant(inputs[1].clone());
            let c_prev = tape.constant(inputs[2].clone());
            let (h, c) = lstm_step_on_tape(tape, &gates, x, h_prev, c_prev).unwrap();
            let rh = tape.constant(inputs[3].clone());
            let rc = tape.constant(inputs[4].clone());
            let wh = tape.mul(h, rh).unwrap();
            let wc = tape.mul(c, rc).unwrap();
            let s = tape.add(wh, wc).unwrap();
            tape.sum_all(s)
        }
        LayerKind::Attention => {
            let (t, d, dk) = (3, 5, 4);
            let wq = tape.param(flat, 0, d, dk);
            let wk = tape.param(flat, d * dk, d, dk);
            let wv = tape.param(flat, 2 * d * dk, d, dk);
            let h = tape.constant(inputs[0].clone());
            let readout = tape.constant(inputs[1].clone());
            let out = attention_on_tape(tape, h, wq, wk, wv, dk).unwrap();
            let _ = t;
            let weighted = tape.mul(out, readout).unwrap();
            tape.sum_all(weighted)
        }
    }
}

fn probe_sizes(kind: LayerKind) -> (usize, Vec<(usize, usize)>) {
    match kind {
        LayerKind::Dense => (6 * 5 + 5, alloc::vec![(1, 6), (1, 5)]),
        LayerKind::Lstm => (
            4 * (5 * 4 + 4 * 4 + 4),
            alloc::vec![(1, 5), (1, 4), (1, 4), (1, 4), (1, 4)],
        ),
        LayerKind::Attention => (3 * 5 * 4, alloc::vec![(3, 5), (3, 4)]),
    }
}

/// Runs `trials` finite-difference comparisons for one layer kind and
/// reports the worst relative error observed.
pub fn gradient_check(kind: LayerKind, trials: usize, seed: u64) -> GradCheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n_params, input_shapes) = probe_sizes(kind);
    let mut max_rel = 0.0f64;
    let mut done = 0;
    while done < trials {
        let flat: Vec<f64> = (0..n_params).map(|_| rng.gen_range(-0.8..0.8)).collect();
        let inputs: Vec<Tensor2D> = input_shapes
            .iter()
            .map(|&(r, c)| {
                let data = (0..r * c).map(|_| rng.gen_range(-1.0..1.0)).collect();
                Tensor2D::from_vec(r, c, data)
            })
            .collect();

        let mut tape = Tape::new();
        let loss = build_probe(kind, &mut tape, &flat, &inputs);
        if tape.kink_margin() < KINK_MARGIN {
            continue;
        }
        let mut analytic = alloc::vec![0.0; n_params];
        tape.backward_into(loss, &mut analytic).unwrap();

        let fd_loss = |p: &[f64]| -> f64 {
            let mut t = Tape::new();
            let l = build_probe(kind, &mut t, p, &inputs);
            t.value(l).scalar()
        };
        max_rel = mathf::max(
            max_rel,
            finite_diff_max_rel_err(&flat, &analytic, fd_loss, FD_EPSILON),
        );
        done += 1;
    }
    GradCheckReport {
        component: String::from(kind.name()),
        trials,
        max_rel_err: max_rel,
    }
}
