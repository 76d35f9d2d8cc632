//! Layer forward passes: dense/LSTM/attention trunk plus the policy and
//! value heads, built on the differentiation tape.

use alloc::format;
use alloc::vec::Vec;

use super::params::ParamVec;
use super::tape::{Tape, Var};
use super::tensor::Tensor2D;
use super::NetError;
use crate::mathf;

/// Query/key/value projection weights.
#[derive(Clone, Debug)]
pub struct AttentionWeights {
    pub wq: Tensor2D,
    pub wk: Tensor2D,
    pub wv: Tensor2D,
}

/// LSTM cell weights in input/forget/candidate/output gate order.
#[derive(Clone, Debug)]
pub struct LstmWeights {
    pub w: [Tensor2D; 4],
    pub u: [Tensor2D; 4],
    pub b: [Tensor2D; 4],
}

/// Scaled dot-product self-attention over a sequence of hidden states
/// (rows of `h_seq`): `softmax(QKᵀ/√d_k)·V`.
pub fn attention_forward(
    h_seq: &Tensor2D,
    weights: &AttentionWeights,
) -> Result<Tensor2D, NetError> {
    if h_seq.rows() == 0 || weights.wq.cols() == 0 {
        return Err(NetError::ShapeMismatch);
    }
    let mut tape = Tape::new();
    let h = tape.constant(h_seq.clone());
    let wq = tape.constant(weights.wq.clone());
    let wk = tape.constant(weights.wk.clone());
    let wv = tape.constant(weights.wv.clone());
    let out = attention_on_tape(&mut tape, h, wq, wk, wv, weights.wq.cols())?;
    Ok(tape.value(out).clone())
}

pub(crate) fn attention_on_tape(
    tape: &mut Tape,
    h: Var,
    wq: Var,
    wk: Var,
    wv: Var,
    d_k: usize,
) -> Result<Var, NetError> {
    let q = tape.matmul(h, wq)?;
    let k = tape.matmul(h, wk)?;
    let v = tape.matmul(h, wv)?;
    let kt = tape.transpose(k);
    let scores = tape.matmul(q, kt)?;
    let scaled = tape.scale(scores, 1.0 / mathf::sqrt(d_k as f64));
    let attn = tape.softmax_rows(scaled);
    tape.matmul(attn, v)
}

/// One LSTM step with the standard sigmoid/tanh gating.
pub fn lstm_cell(
    x: &Tensor2D,
    h_prev: &Tensor2D,
    c_prev: &Tensor2D,
    weights: &LstmWeights,
) -> Result<(Tensor2D, Tensor2D), NetError> {
    let mut tape = Tape::new();
    let xv = tape.constant(x.clone());
    let hv = tape.constant(h_prev.clone());
    let cv = tape.constant(c_prev.clone());
    let mut w = Vec::new();
    let mut u = Vec::new();
    let mut b = Vec::new();
    for g in 0..4 {
        w.push(tape.constant(weights.w[g].clone()));
        u.push(tape.constant(weights.u[g].clone()));
        b.push(tape.constant(weights.b[g].clone()));
    }
    let gates = LstmGateVars {
        w: [w[0], w[1], w[2], w[3]],
        u: [u[0], u[1], u[2], u[3]],
        b: [b[0], b[1], b[2], b[3]],
    };
    let (h, c) = lstm_step_on_tape(&mut tape, &gates, xv, hv, cv)?;
    Ok((tape.value(h).clone(), tape.value(c).clone()))
}

pub(crate) struct LstmGateVars {
    pub w: [Var; 4],
    pub u: [Var; 4],
    pub b: [Var; 4],
}

pub(crate) fn lstm_step_on_tape(
    tape: &mut Tape,
    gates: &LstmGateVars,
    x: Var,
    h_prev: Var,
    c_prev: Var,
) -> Result<(Var, Var), NetError> {
    let mut pre = [None; 4];
    for g in 0..4 {
        let xw = tape.matmul(x, gates.w[g])?;
        let hu = tape.matmul(h_prev, gates.u[g])?;
        let s = tape.add(xw, hu)?;
        pre[g] = Some(tape.add(s, gates.b[g])?);
    }
    let i = tape.sigmoid(pre[0].unwrap());
    let f = tape.sigmoid(pre[1].unwrap());
    let g = tape.tanh(pre[2].unwrap());
    let o = tape.sigmoid(pre[3].unwrap());
    let fc = tape.mul(f, c_prev)?;
    let ig = tape.mul(i, g)?;
    let c = tape.add(fc, ig)?;
    let tc = tape.tanh(c);
    let h = tape.mul(o, tc)?;
    Ok((h, c))
}

/// Parameter leaf handles for one trunk (actor or critic).
pub(crate) struct TrunkVars {
    w1: Var,
    b1: Var,
    w2: Var,
    b2: Var,
    lstm: LstmGateVars,
    attn: Option<(Var, Var, Var)>,
    w3: Var,
    b3: Var,
}

fn leaf(tape: &mut Tape, p: &ParamVec, name: &str) -> Var {
    let e = p.layout.entry(name);
    tape.param(&p.data, e.offset, e.rows, e.cols)
}

pub(crate) fn bind_trunk(tape: &mut Tape, p: &ParamVec, net: &str) -> TrunkVars {
    let gate = |tape: &mut Tape, kind: &str, g: &str| leaf(tape, p, &format!("{net}.lstm.{kind}{g}"));
    let lstm = LstmGateVars {
        w: [
            gate(tape, "w", "i"),
            gate(tape, "w", "f"),
            gate(tape, "w", "g"),
            gate(tape, "w", "o"),
        ],
        u: [
            gate(tape, "u", "i"),
            gate(tape, "u", "f"),
            gate(tape, "u", "g"),
            gate(tape, "u", "o"),
        ],
        b: [
            gate(tape, "b", "i"),
            gate(tape, "b", "f"),
            gate(tape, "b", "g"),
            gate(tape, "b", "o"),
        ],
    };
    TrunkVars {
        w1: leaf(tape, p, &format!("{net}.w1")),
        b1: leaf(tape, p, &format!("{net}.b1")),
        w2: leaf(tape, p, &format!("{net}.w2")),
        b2: leaf(tape, p, &format!("{net}.b2")),
        lstm,
        attn: p.spec.attention.then(|| {
            (
                leaf(tape, p, &format!("{net}.wq")),
                leaf(tape, p, &format!("{net}.wk")),
                leaf(tape, p, &format!("{net}.wv")),
            )
        }),
        w3: leaf(tape, p, &format!("{net}.w3")),
        b3: leaf(tape, p, &format!("{net}.b3")),
    }
}

/// Runs the shared trunk over an observation window (one `Var` per step,
/// each `[1, obs]`) and returns the feature row feeding the heads.
pub(crate) fn trunk_features(
    tape: &mut Tape,
    p: &ParamVec,
    vars: &TrunkVars,
    window: &[Var],
) -> Result<Var, NetError> {
    if window.is_empty() {
        return Err(NetError::ShapeMismatch);
    }
    let hidden = p.spec.lstm_hidden;
    let mut h = tape.constant(Tensor2D::zeros(1, hidden));
    let mut c = tape.constant(Tensor2D::zeros(1, hidden));
    let mut states = Vec::with_capacity(window.len());
    for &x in window {
        let z1 = tape.matmul(x, vars.w1)?;
        let z1 = tape.add_row(z1, vars.b1)?;
        let h1 = tape.relu(z1);
        let z2 = tape.matmul(h1, vars.w2)?;
        let z2 = tape.add_row(z2, vars.b2)?;
        let h2 = tape.relu(z2);
        let (nh, nc) = lstm_step_on_tape(tape, &vars.lstm, h2, h, c)?;
        h = nh;
        c = nc;
        states.push(h);
    }
    let pooled = match vars.attn {
        Some((wq, wk, wv)) => {
            let seq = tape.concat_rows(&states)?;
            let ctx = attention_on_tape(tape, seq, wq, wk, wv, p.spec.attn_dim)?;
            tape.mean_rows(ctx)
        }
        None => *states.last().unwrap(),
    };
    let z3 = tape.matmul(pooled, vars.w3)?;
    let z3 = tape.add_row(z3, vars.b3)?;
    Ok(tape.relu(z3))
}

/// Tape handles for one full actor/critic forward pass.
pub(crate) struct HeadVars {
    pub logits: Var,
    pub means: Var,
    pub log_stds: Var,
    pub value: Var,
}

pub(crate) fn build_actor_critic(
    tape: &mut Tape,
    p: &ParamVec,
    window: &[Var],
) -> Result<HeadVars, NetError> {
    let actor = bind_trunk(tape, p, "actor");
    let f_a = trunk_features(tape, p, &actor, window)?;
    let wd = leaf(tape, p, "actor.wd");
    let bd = leaf(tape, p, "actor.bd");
    let z = tape.matmul(f_a, wd)?;
    let logits = tape.add_row(z, bd)?;
    let wc = leaf(tape, p, "actor.wc");
    let bc = leaf(tape, p, "actor.bc");
    let z = tape.matmul(f_a, wc)?;
    let means = tape.add_row(z, bc)?;
    let log_stds = if p.spec.state_dependent_std {
        let wls = leaf(tape, p, "actor.wls");
        let bls = leaf(tape, p, "actor.bls");
        let z = tape.matmul(f_a, wls)?;
        tape.add_row(z, bls)?
    } else {
        leaf(tape, p, "actor.log_std")
    };

    let critic = bind_trunk(tape, p, "critic");
    let f_c = trunk_features(tape, p, &critic, window)?;
    let wv = leaf(tape, p, "critic.wv_out");
    let bv = leaf(tape, p, "critic.bv_out");
    let z = tape.matmul(f_c, wv)?;
    let value = tape.add_row(z, bv)?;

    Ok(HeadVars {
        logits,
        means,
        log_stds,
        value,
    })
}

pub(crate) fn window_leaves(
    tape: &mut Tape,
    p: &ParamVec,
    window: &[Vec<f64>],
) -> Result<Vec<Var>, NetError> {
    if window.is_empty() {
        return Err(NetError::ShapeMismatch);
    }
    let mut vars = Vec::with_capacity(window.len());
    for obs in window {
        if obs.len() != p.spec.obs_dim {
            return Err(NetError::ShapeMismatch);
        }
        vars.push(tape.constant(Tensor2D::from_row(obs.clone())));
    }
    Ok(vars)
}

/// Output of the actor/critic forward pass.
#[derive(Clone, Debug, PartialEq)]
pub struct ActorOutput {
    pub logits: Vec<f64>,
    pub means: Vec<f64>,
    pub log_stds: Vec<f64>,
    pub value: f64,
}

/// Full forward pass over an observation history window.
pub fn forward_actor(p: &ParamVec, window: &[Vec<f64>]) -> Result<ActorOutput, NetError> {
    let mut tape = Tape::new();
    let leaves = window_leaves(&mut tape, p, window)?;
    let heads = build_actor_critic(&mut tape, p, &leaves)?;
    Ok(ActorOutput {
        logits: tape.value(heads.logits).data().to_vec(),
        means: tape.value(heads.means).data().to_vec(),
        log_stds: tape.value(heads.log_stds).data().to_vec(),
        value: tape.value(heads.value).scalar(),
    })
}
