//! Network layout, flat parameter storage, and checkpoint bytes.
//!
//! All parameters of the actor and critic live in one flat `Vec<f64>`; the
//! layout lists every tensor with its offset in declaration order, which is
//! also the checkpoint serialization order.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::NetError;
use crate::envmdp::OBS_DIM;
use crate::mathf;

/// Architecture of the shared actor/critic trunk and heads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NetworkSpec {
    pub obs_dim: usize,
    pub dense1: usize,
    pub dense2: usize,
    pub lstm_hidden: usize,
    /// Attention query/key/value dimension.
    pub attn_dim: usize,
    pub dense3: usize,
    pub branches: usize,
    pub continuous: usize,
    /// Temporal self-attention over the LSTM hidden states; without it the
    /// last hidden state feeds the head stack directly.
    pub attention: bool,
    /// Emit log-stds from a head instead of state-independent parameters.
    pub state_dependent_std: bool,
    /// Observation history window length.
    pub window: usize,
}

impl Default for NetworkSpec {
    fn default() -> Self {
        NetworkSpec {
            obs_dim: OBS_DIM,
            dense1: 64,
            dense2: 128,
            lstm_hidden: 64,
            attn_dim: 64,
            dense3: 32,
            branches: 3,
            continuous: 2,
            attention: true,
            state_dependent_std: false,
            window: 8,
        }
    }
}

/// One named tensor inside the flat parameter vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamEntry {
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    pub offset: usize,
}

impl ParamEntry {
    pub fn len(&self) -> usize {
        self.rows * self.cols
    }
}

/// Declaration-ordered parameter layout for one actor/critic pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamLayout {
    entries: Vec<ParamEntry>,
    total: usize,
}

impl ParamLayout {
    pub fn for_spec(spec: &NetworkSpec) -> Self {
        let mut layout = ParamLayout {
            entries: Vec::new(),
            total: 0,
        };
        for net in ["actor", "critic"] {
            layout.push(net, "w1", spec.obs_dim, spec.dense1);
            layout.push(net, "b1", 1, spec.dense1);
            layout.push(net, "w2", spec.dense1, spec.dense2);
            layout.push(net, "b2", 1, spec.dense2);
            for gate in ["i", "f", "g", "o"] {
                layout.push2(net, "lstm.w", gate, spec.dense2, spec.lstm_hidden);
                layout.push2(net, "lstm.u", gate, spec.lstm_hidden, spec.lstm_hidden);
                layout.push2(net, "lstm.b", gate, 1, spec.lstm_hidden);
            }
            if spec.attention {
                layout.push(net, "wq", spec.lstm_hidden, spec.attn_dim);
                layout.push(net, "wk", spec.lstm_hidden, spec.attn_dim);
                layout.push(net, "wv", spec.lstm_hidden, spec.attn_dim);
            }
            let trunk_out = if spec.attention {
                spec.attn_dim
            } else {
                spec.lstm_hidden
            };
            layout.push(net, "w3", trunk_out, spec.dense3);
            layout.push(net, "b3", 1, spec.dense3);
            if net == "actor" {
                layout.push(net, "wd", spec.dense3, spec.branches);
                layout.push(net, "bd", 1, spec.branches);
                layout.push(net, "wc", spec.dense3, spec.continuous);
                layout.push(net, "bc", 1, spec.continuous);
                if spec.state_dependent_std {
                    layout.push(net, "wls", spec.dense3, spec.continuous);
                    layout.push(net, "bls", 1, spec.continuous);
                } else {
                    layout.push(net, "log_std", 1, spec.continuous);
                }
            } else {
                layout.push(net, "wv_out", spec.dense3, 1);
                layout.push(net, "bv_out", 1, 1);
            }
        }
        layout
    }

    fn push(&mut self, net: &str, name: &str, rows: usize, cols: usize) {
        let mut full = String::new();
        let _ = write!(full, "{net}.{name}");
        self.entries.push(ParamEntry {
            name: full,
            rows,
            cols,
            offset: self.total,
        });
        self.total += rows * cols;
    }

    fn push2(&mut self, net: &str, name: &str, suffix: &str, rows: usize, cols: usize) {
        let mut full = String::new();
        let _ = write!(full, "{net}.{name}{suffix}");
        self.entries.push(ParamEntry {
            name: full,
            rows,
            cols,
            offset: self.total,
        });
        self.total += rows * cols;
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Length of the leading actor segment; critic parameters follow it.
    pub fn actor_len(&self) -> usize {
        self.entries
            .iter()
            .find(|e| e.name.starts_with("critic."))
            .map_or(self.total, |e| e.offset)
    }

    pub fn entries(&self) -> &[ParamEntry] {
        &self.entries
    }

    pub fn entry(&self, name: &str) -> &ParamEntry {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .unwrap_or_else(|| panic!("unknown parameter {name}"))
    }

    /// Stable fingerprint of the layout (FNV-1a over the descriptor).
    pub fn hash(&self) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        for e in &self.entries {
            for b in e.name.bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
            for v in [e.rows as u64, e.cols as u64] {
                for b in v.to_le_bytes() {
                    h ^= b as u64;
                    h = h.wrapping_mul(0x100000001b3);
                }
            }
        }
        h
    }
}

/// Flat parameter vector plus its layout and generating spec.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamVec {
    pub spec: NetworkSpec,
    pub layout: ParamLayout,
    pub data: Vec<f64>,
}

impl ParamVec {
    pub fn zeros(spec: NetworkSpec) -> Self {
        let layout = ParamLayout::for_spec(&spec);
        let data = alloc::vec![0.0; layout.total()];
        ParamVec { spec, layout, data }
    }

    /// Uniform fan-in initialization for weights, zero biases with the
    /// forget gate biased open, and log-stds at ln 0.5.
    pub fn init(spec: NetworkSpec, seed: u64) -> Self {
        let mut p = Self::zeros(spec);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for e in p.layout.entries.clone() {
            let slice = &mut p.data[e.offset..e.offset + e.len()];
            let is_bias = e.rows == 1 && !e.name.ends_with("log_std");
            if e.name.ends_with("log_std") {
                let v = mathf::ln(0.5);
                slice.fill(v);
            } else if is_bias {
                if e.name.contains("lstm.bf") {
                    slice.fill(1.0);
                } else {
                    slice.fill(0.0);
                }
            } else {
                let bound = 1.0 / mathf::sqrt(e.rows as f64);
                for v in slice {
                    *v = rng.gen_range(-bound..bound);
                }
            }
        }
        p
    }

    pub fn slice(&self, name: &str) -> &[f64] {
        let e = self.layout.entry(name);
        &self.data[e.offset..e.offset + e.len()]
    }
}

const CHECKPOINT_MAGIC: &[u8; 4] = b"RWNC";
const CHECKPOINT_VERSION: u32 = 1;

/// Serializes parameters as magic bytes, version, layout hash, count, and
/// little-endian 64-bit floats in declaration order.
pub fn encode_checkpoint(params: &ParamVec) -> Vec<u8> {
    let mut out = Vec::with_capacity(4 + 4 + 8 + 8 + params.data.len() * 8);
    out.extend_from_slice(CHECKPOINT_MAGIC);
    out.extend_from_slice(&CHECKPOINT_VERSION.to_le_bytes());
    out.extend_from_slice(&params.layout.hash().to_le_bytes());
    out.extend_from_slice(&(params.data.len() as u64).to_le_bytes());
    for v in &params.data {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

/// Reads a checkpoint back into a parameter vector for the given spec; the
/// layout fingerprint and length must match.
pub fn decode_checkpoint(spec: NetworkSpec, bytes: &[u8]) -> Result<ParamVec, NetError> {
    let mut p = ParamVec::zeros(spec);
    let need = 4 + 4 + 8 + 8 + p.data.len() * 8;
    if bytes.len() != need || &bytes[0..4] != CHECKPOINT_MAGIC {
        return Err(NetError::BadCheckpoint);
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    let hash = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
    let count = u64::from_le_bytes(bytes[16..24].try_into().unwrap());
    if version != CHECKPOINT_VERSION || hash != p.layout.hash() || count != p.data.len() as u64 {
        return Err(NetError::BadCheckpoint);
    }
    for (i, v) in p.data.iter_mut().enumerate() {
        let base = 24 + i * 8;
        *v = f64::from_le_bytes(bytes[base..base + 8].try_into().unwrap());
    }
    Ok(p)
}
