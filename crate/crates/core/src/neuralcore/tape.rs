//! Eager reverse-mode differentiation over `Tensor2D` values.
//!
//! Each operation evaluates immediately and records itself on the tape;
//! `backward_into` walks the tape in reverse, accumulating parameter
//! gradients into a flat vector aligned with the parameter layout.
//! Piecewise ops (relu, min/max, clamp) route the gradient to the active
//! branch and break exact ties toward the first operand.

use alloc::vec;
use alloc::vec::Vec;

use super::tensor::Tensor2D;
use super::NetError;
use crate::mathf;

/// Handle to a tape node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Var(usize);

enum Op {
    LeafConst,
    /// Parameter leaf: gradient accumulates at `offset` in the flat vector.
    LeafParam { offset: usize },
    MatMul(usize, usize),
    /// Matrix plus a row vector broadcast over rows.
    AddRow(usize, usize),
    Add(usize, usize),
    Sub(usize, usize),
    Mul(usize, usize),
    MinElem(usize, usize),
    MaxElem(usize, usize),
    Neg(usize),
    Scale(usize, f64),
    AddConst(usize),
    Relu(usize),
    Tanh(usize),
    Sigmoid(usize),
    Exp(usize),
    Clamp(usize, f64, f64),
    Transpose(usize),
    SoftmaxRows(usize),
    LogSoftmaxRows(usize),
    /// Column means: [m,n] -> [1,n].
    MeanRows(usize),
    SumAll(usize),
    MeanAll(usize),
    ConcatRows(Vec<usize>),
    /// One entry as a 1×1 tensor.
    SelectEntry(usize, usize, usize),
}

struct Node {
    op: Op,
    value: Tensor2D,
}

#[derive(Default)]
pub struct Tape {
    nodes: Vec<Node>,
}

impl Tape {
    pub fn new() -> Self {
        Tape { nodes: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn value(&self, v: Var) -> &Tensor2D {
        &self.nodes[v.0].value
    }

    fn push(&mut self, op: Op, value: Tensor2D) -> Var {
        self.nodes.push(Node { op, value });
        Var(self.nodes.len() - 1)
    }

    pub fn constant(&mut self, value: Tensor2D) -> Var {
        self.push(Op::LeafConst, value)
    }

    pub fn scalar_const(&mut self, x: f64) -> Var {
        self.constant(Tensor2D::from_vec(1, 1, vec![x]))
    }

    /// Parameter leaf taking `rows×cols` values from `flat[offset..]`.
    pub fn param(&mut self, flat: &[f64], offset: usize, rows: usize, cols: usize) -> Var {
        let value = Tensor2D::from_vec(rows, cols, flat[offset..offset + rows * cols].to_vec());
        self.push(Op::LeafParam { offset }, value)
    }

    fn same_shape(a: &Tensor2D, b: &Tensor2D) -> Result<(), NetError> {
        if a.shape() != b.shape() {
            return Err(NetError::ShapeMismatch);
        }
        Ok(())
    }

    pub fn matmul(&mut self, a: Var, b: Var) -> Result<Var, NetError> {
        let (ta, tb) = (&self.nodes[a.0].value, &self.nodes[b.0].value);
        if ta.cols() != tb.rows() {
            return Err(NetError::ShapeMismatch);
        }
        let (m, k, n) = (ta.rows(), ta.cols(), tb.cols());
        let mut out = Tensor2D::zeros(m, n);
        for i in 0..m {
            let arow = ta.row(i);
            for p in 0..k {
                let av = arow[p];
                if av == 0.0 {
                    continue;
                }
                let brow = tb.row(p);
                let orow = &mut out.data_mut()[i * n..(i + 1) * n];
                for j in 0..n {
                    orow[j] += av * brow[j];
                }
            }
        }
        Ok(self.push(Op::MatMul(a.0, b.0), out))
    }

    /// `[m,n] + [1,n]`, the bias add.
    pub fn add_row(&mut self, a: Var, row: Var) -> Result<Var, NetError> {
        let (ta, tr) = (&self.nodes[a.0].value, &self.nodes[row.0].value);
        if tr.rows() != 1 || ta.cols() != tr.cols() {
            return Err(NetError::ShapeMismatch);
        }
        let mut out = ta.clone();
        let n = out.cols();
        for i in 0..out.rows() {
            for j in 0..n {
                let v = out.get(i, j) + tr.get(0, j);
                out.set(i, j, v);
            }
        }
        Ok(self.push(Op::AddRow(a.0, row.0), out))
    }

    fn zip(
        &mut self,
        a: Var,
        b: Var,
        f: impl Fn(f64, f64) -> f64,
        op: fn(usize, usize) -> Op,
    ) -> Result<Var, NetError> {
        let (ta, tb) = (&self.nodes[a.0].value, &self.nodes[b.0].value);
        Self::same_shape(ta, tb)?;
        let (rows, cols) = ta.shape();
        let data: Vec<f64> = ta
            .data()
            .iter()
            .zip(tb.data())
            .map(|(&x, &y)| f(x, y))
            .collect();
        Ok(self.push(op(a.0, b.0), Tensor2D::from_vec(rows, cols, data)))
    }

    pub fn add(&mut self, a: Var, b: Var) -> Result<Var, NetError> {
        self.zip(a, b, |x, y| x + y, Op::Add)
    }

    pub fn sub(&mut self, a: Var, b: Var) -> Result<Var, NetError> {
        self.zip(a, b, |x, y| x - y, Op::Sub)
    }

    pub fn mul(&mut self, a: Var, b: Var) -> Result<Var, NetError> {
        self.zip(a, b, |x, y| x * y, Op::Mul)
    }

    pub fn min_elem(&mut self, a: Var, b: Var) -> Result<Var, NetError> {
        self.zip(a, b, |x, y| if x <= y { x } else { y }, Op::MinElem)
    }

    pub fn max_elem(&mut self, a: Var, b: Var) -> Result<Var, NetError> {
        self.zip(a, b, |x, y| if x >= y { x } else { y }, Op::MaxElem)
    }

    fn map(&mut self, a: Var, f: impl Fn(f64) -> f64, op: Op) -> Var {
        let ta = &self.nodes[a.0].value;
        let mut out = ta.clone();
        for v in out.data_mut() {
            *v = f(*v);
        }
        self.push(op, out)
    }

    pub fn neg(&mut self, a: Var) -> Var {
        self.map(a, |x| -x, Op::Neg(a.0))
    }

    pub fn scale(&mut self, a: Var, c: f64) -> Var {
        self.map(a, |x| c * x, Op::Scale(a.0, c))
    }

    pub fn add_const(&mut self, a: Var, c: f64) -> Var {
        self.map(a, |x| x + c, Op::AddConst(a.0))
    }

    pub fn relu(&mut self, a: Var) -> Var {
        self.map(a, |x| if x > 0.0 { x } else { 0.0 }, Op::Relu(a.0))
    }

    pub fn tanh(&mut self, a: Var) -> Var {
        self.map(a, mathf::tanh, Op::Tanh(a.0))
    }

    pub fn sigmoid(&mut self, a: Var) -> Var {
        self.map(a, |x| 1.0 / (1.0 + mathf::exp(-x)), Op::Sigmoid(a.0))
    }

    pub fn exp(&mut self, a: Var) -> Var {
        self.map(a, mathf::exp, Op::Exp(a.0))
    }

    pub fn clamp(&mut self, a: Var, lo: f64, hi: f64) -> Var {
        self.map(a, |x| mathf::clamp(x, lo, hi), Op::Clamp(a.0, lo, hi))
    }

    pub fn transpose(&mut self, a: Var) -> Var {
        let ta = &self.nodes[a.0].value;
        let (m, n) = ta.shape();
        let mut out = Tensor2D::zeros(n, m);
        for i in 0..m {
            for j in 0..n {
                out.set(j, i, ta.get(i, j));
            }
        }
        self.push(Op::Transpose(a.0), out)
    }

    /// Row-wise softmax with max-subtraction stabilization.
    pub fn softmax_rows(&mut self, a: Var) -> Var {
        let ta = &self.nodes[a.0].value;
        let mut out = ta.clone();
        let n = out.cols();
        for i in 0..out.rows() {
            let row = &mut out.data_mut()[i * n..(i + 1) * n];
            let max = row.iter().fold(f64::NEG_INFINITY, |m, &v| mathf::max(m, v));
            let mut sum = 0.0;
            for v in row.iter_mut() {
                *v = mathf::exp(*v - max);
                sum += *v;
            }
            for v in row.iter_mut() {
                *v /= sum;
            }
        }
        self.push(Op::SoftmaxRows(a.0), out)
    }

    pub fn log_softmax_rows(&mut self, a: Var) -> Var {
        let ta = &self.nodes[a.0].value;
        let mut out = ta.clone();
        let n = out.cols();
        for i in 0..out.rows() {
            let row = &mut out.data_mut()[i * n..(i + 1) * n];
            let max = row.iter().fold(f64::NEG_INFINITY, |m, &v| mathf::max(m, v));
            let mut sum = 0.0;
            for v in row.iter() {
                sum += mathf::exp(*v - max);
            }
            let log_norm = max + mathf::ln(sum);
            for v in row.iter_mut() {
                *v -= log_norm;
            }
        }
        self.push(Op::LogSoftmaxRows(a.0), out)
    }

    pub fn mean_rows(&mut self, a: Var) -> Var {
        let ta = &self.nodes[a.0].value;
        let (m, n) = ta.shape();
        let mut out = Tensor2D::zeros(1, n);
        for i in 0..m {
            for j in 0..n {
                let v = out.get(0, j) + ta.get(i, j);
                out.set(0, j, v);
            }
        }
        for j in 0..n {
            let v = out.get(0, j) / m as f64;
            out.set(0, j, v);
        }
        self.push(Op::MeanRows(a.0), out)
    }

    pub fn sum_all(&mut self, a: Var) -> Var {
        let total: f64 = self.nodes[a.0].value.data().iter().sum();
        self.push(Op::SumAll(a.0), Tensor2D::from_vec(1, 1, vec![total]))
    }

    pub fn mean_all(&mut self, a: Var) -> Var {
        let ta = &self.nodes[a.0].value;
        let count = (ta.rows() * ta.cols()) as f64;
        let total: f64 = ta.data().iter().sum();
        self.push(Op::MeanAll(a.0), Tensor2D::from_vec(1, 1, vec![total / count]))
    }

    pub fn concat_rows(&mut self, parts: &[Var]) -> Result<Var, NetError> {
        if parts.is_empty() {
            return Err(NetError::ShapeMismatch);
        }
        let cols = self.nodes[parts[0].0].value.cols();
        let mut data = Vec::new();
        let mut rows = 0;
        for &p in parts {
            let t = &self.nodes[p.0].value;
            if t.cols() != cols {
                return Err(NetError::ShapeMismatch);
            }
            rows += t.rows();
            data.extend_from_slice(t.data());
        }
        let ids: Vec<usize> = parts.iter().map(|p| p.0).collect();
        Ok(self.push(Op::ConcatRows(ids), Tensor2D::from_vec(rows, cols, data)))
    }

    pub fn select_entry(&mut self, a: Var, r: usize, c: usize) -> Result<Var, NetError> {
        let ta = &self.nodes[a.0].value;
        if r >= ta.rows() || c >= ta.cols() {
            return Err(NetError::ShapeMismatch);
        }
        let v = ta.get(r, c);
        Ok(self.push(Op::SelectEntry(a.0, r, c), Tensor2D::from_vec(1, 1, vec![v])))
    }

    /// Smallest distance from any piecewise-linear kink over the whole tape;
    /// finite-difference probes resample when this is too small.
    pub fn kink_margin(&self) -> f64 {
        let mut margin = f64::INFINITY;
        for node in &self.nodes {
            match &node.op {
                Op::Relu(src) => {
                    for &x in self.nodes[*src].value.data() {
                        margin = mathf::min(margin, mathf::abs(x));
                    }
                }
                Op::MinElem(a, b) | Op::MaxElem(a, b) => {
                    for (&x, &y) in self.nodes[*a]
                        .value
                        .data()
                        .iter()
                        .zip(self.nodes[*b].value.data())
                    {
                        // An exact tie means both operands run through the
                        // same computation (e.g. a clip that did not bind),
                        // where the selection is locally smooth; only near
                        // ties are genuine crossings.
                        if x != y {
                            margin = mathf::min(margin, mathf::abs(x - y));
                        }
                    }
                }
                Op::Clamp(src, lo, hi) => {
                    for &x in self.nodes[*src].value.data() {
                        margin = mathf::min(margin, mathf::abs(x - lo));
                        margin = mathf::min(margin, mathf::abs(x - hi));
                    }
                }
                _ => {}
            }
        }
        margin
    }

    /// Reverse pass from a scalar loss; parameter gradients accumulate into
    /// `grad_out` (not zeroed here) at each leaf's offset.
    pub fn backward_into(&self, loss: Var, grad_out: &mut [f64]) -> Result<(), NetError> {
        if loss.0 >= self.nodes.len() {
            return Err(NetError::GraphNotEvaluated);
        }
        if self.nodes[loss.0].value.shape() != (1, 1) {
            return Err(NetError::ShapeMismatch);
        }
        let mut grads: Vec<Option<Tensor2D>> = vec![None; self.nodes.len()];
        grads[loss.0] = Some(Tensor2D::from_vec(1, 1, vec![1.0]));

        for idx in (0..=loss.0).rev() {
            let Some(grad) = grads[idx].take() else { continue };
            let node = &self.nodes[idx];
            match &node.op {
                Op::LeafConst => {}
                Op::LeafParam { offset } => {
                    for (g, o) in grad.data().iter().zip(&mut grad_out[*offset..]) {
                        *o += g;
                    }
                }
                Op::MatMul(a, b) => {
                    let ta = &self.nodes[*a].value;
                    let tb = &self.nodes[*b].value;
                    let (m, k, n) = (ta.rows(), ta.cols(), tb.cols());
                    // dA += dC · Bᵀ
                    let da = grads[*a].get_or_insert_with(|| Tensor2D::zeros(m, k));
                    for i in 0..m {
                        for p in 0..k {
                            let mut acc = 0.0;
                            let brow = tb.row(p);
                            let grow = grad.row(i);
                            for j in 0..n {
                                acc += grow[j] * brow[j];
                            }
                            let v = da.get(i, p) + acc;
                            da.set(i, p, v);
                        }
                    }
                    // dB += Aᵀ · dC
                    let db = grads[*b].get_or_insert_with(|| Tensor2D::zeros(k, n));
                    for p in 0..k {
                        for i in 0..m {
                            let av = ta.get(i, p);
                            if av == 0.0 {
                                continue;
                            }
                            let grow = grad.row(i);
                            let drow = &mut db.data_mut()[p * n..(p + 1) * n];
                            for j in 0..n {
                                drow[j] += av * grow[j];
                            }
                        }
                    }
                }
                Op::AddRow(a, row) => {
                    let shape_a = self.nodes[*a].value.shape();
                    let da = grads[*a].get_or_insert_with(|| Tensor2D::zeros(shape_a.0, shape_a.1));
                    for (d, g) in da.data_mut().iter_mut().zip(grad.data()) {
                        *d += g;
                    }
                    let n = grad.cols();
                    let dr = grads[*row].get_or_insert_with(|| Tensor2D::zeros(1, n));
                    for i in 0..grad.rows() {
                        for j in 0..n {
                            let v = dr.get(0, j) + grad.get(i, j);
                            dr.set(0, j, v);
                        }
                    }
                }
                Op::Add(a, b) => {
                    for src in [*a, *b] {
                        let shape = self.nodes[src].value.shape();
                        let d = grads[src].get_or_insert_with(|| Tensor2D::zeros(shape.0, shape.1));
                        for (dv, g) in d.data_mut().iter_mut().zip(grad.data()) {
                            *dv += g;
                        }
                    }
                }
                Op::Sub(a, b) => {
                    let shape = self.nodes[*a].value.shape();
                    let d = grads[*a].get_or_insert_with(|| Tensor2D::zeros(shape.0, shape.1));
                    for (dv, g) in d.data_mut().iter_mut().zip(grad.data()) {
                        *dv += g;
                    }
                    let shape = self.nodes[*b].value.shape();
                    let d = grads[*b].get_or_insert_with(|| Tensor2D::zeros(shape.0, shape.1));
                    for (dv, g) in d.data_mut().iter_mut().zip(grad.data()) {
                        *dv -= g;
                    }
                }
                Op::Mul(a, b) => {
                    let tb_data: Vec<f64> = self.nodes[*b].value.data().to_vec();
                    let ta_data: Vec<f64> = self.nodes[*a].value.data().to_vec();
                    let shape = self.nodes[*a].value.shape();
                    let d = grads[*a].get_or_insert_with(|| Tensor2D::zeros(shape.0, shape.1));
                    for ((dv, g), y) in d.data_mut().iter_mut().zip(grad.data()).zip(&tb_data) {
                        *dv += g * y;
                    }
                    let d = grads[*b].get_or_insert_with(|| Tensor2D::zeros(shape.0, shape.1));
                    for ((dv, g), x) in d.data_mut().iter_mut().zip(grad.data()).zip(&ta_data) {
                        *dv += g * x;
                    }
                }
                Op::MinElem(a, b) | Op::MaxElem(a, b) => {
                    let is_min = matches!(node.op, Op::MinElem(..));
                    let ta_data: Vec<f64> = self.nodes[*a].value.data().to_vec();
                    let tb_data: Vec<f64> = self.nodes[*b].value.data().to_vec();
                    let shape = self.nodes[*a].value.shape();
                    // Ties route to the first operand.
                    let to_a: Vec<bool> = ta_data
                        .iter()
                        .zip(&tb_data)
                        .map(|(&x, &y)| if is_min { x <= y } else { x >= y })
                        .collect();
                    let d = grads[*a].get_or_insert_with(|| Tensor2D::zeros(shape.0, shape.1));
                    for ((dv, g), sel) in d.data_mut().iter_mut().zip(grad.data()).zip(&to_a) {
                        if *sel {
                            *dv += g;
                        }
                    }
                    let d = grads[*b].get_or_insert_with(|| Tensor2D::zeros(shape.0, shape.1));
                    for ((dv, g), sel) in d.data_mut().iter_mut().zip(grad.data()).zip(&to_a) {
                        if !*sel {
                            *dv += g;
                        }
                    }
                }
                Op::Neg(a) => {
                    let shape = self.nodes[*a].value.shape();
                    let d = grads[*a].get_or_insert_with(|| Tensor2D::zeros(shape.0, shape.1));
                    for (dv, g) in d.data_mut().iter_mut().zip(grad.data()) {
                        *dv -= g;
                    }
                }
                Op::Scale(a, c) => {
                    let shape = self.nodes[*a].value.shape();
                    let d = grads[*a].get_or_insert_with(|| Tensor2D::zeros(shape.0, shape.1));
                    for (dv, g) in d.data_mut().iter_mut().zip(grad.data()) {
                        *dv += c * g;
                    }
                }
                Op::AddConst(a) => {
                    let shape = self.nodes[*a].value.shape();
                    let d = grads[*a].get_or_insert_with(|| Tensor2D::zeros(shape.0, shape.1));
                    for (dv, g) in d.data_mut().iter_mut().zip(grad.data()) {
                        *dv += g;
                    }
                }
                Op::Relu(a) => {
                    let xs: Vec<f64> = self.nodes[*a].value.data().to_vec();
                    let shape = self.nodes[*a].value.shape();
                    let d = grads[*a].get_or_insert_with(|| Tensor2D::zeros(shape.0, shape.1));
                    for ((dv, g), x) in d.data_mut().iter_mut().zip(grad.data()).zip(&xs) {
                        if *x > 0.0 {
                            *dv += g;
                        }
                    }
                }
                Op::Tanh(a) => {
                    let ys: Vec<f64> = node.value.data().to_vec();
                    let shape = self.nodes[*a].value.shape();
                    let d = grads[*a].get_or_insert_with(|| Tensor2D::zeros(shape.0, shape.1));
                    for ((dv, g), y) in d.data_mut().iter_mut().zip(grad.data()).zip(&ys) {
                        *dv += g * (1.0 - y * y);
                    }
                }
                Op::Sigmoid(a) => {
                    let ys: Vec<f64> = node.value.data().to_vec();
                    let shape = self.nodes[*a].value.shape();
                    let d = grads[*a].get_or_insert_with(|| Tensor2D::zeros(shape.0, shape.1));
                    for ((dv, g), y) in d.data_mut().iter_mut().zip(grad.data()).zip(&ys) {
                        *dv += g * y * (1.0 - y);
                    }
                }
                Op::Exp(a) => {
                    let ys: Vec<f64> = node.value.data().to_vec();
                    let shape = self.nodes[*a].value.shape();
                    let d = grads[*a].get_or_insert_with(|| Tensor2D::zeros(shape.0, shape.1));
                    for ((dv, g), y) in d.data_mut().iter_mut().zip(grad.data()).zip(&ys) {
                        *dv += g * y;
                    }
                }
                Op::Clamp(a, lo, hi) => {
                    let xs: Vec<f64> = self.nodes[*a].value.data().to_vec();
                    let shape = self.nodes[*a].value.shape();
                    let d = grads[*a].get_or_insert_with(|| Tensor2D::zeros(shape.0, shape.1));
                    for ((dv, g), x) in d.data_mut().iter_mut().zip(grad.data()).zip(&xs) {
                        if *x >= *lo && *x <= *hi {
                            *dv += g;
                        }
                    }
                }
                Op::Transpose(a) => {
                    let shape = self.nodes[*a].value.shape();
                    let d = grads[*a].get_or_insert_with(|| Tensor2D::zeros(shape.0, shape.1));
                    for i in 0..grad.rows() {
                        for j in 0..grad.cols() {
                            let v = d.get(j, i) + grad.get(i, j);
                            d.set(j, i, v);
                        }
                    }
                }
                Op::SoftmaxRows(a) => {
                    let y = &node.value;
                    let (m, n) = y.shape();
                    let d = grads[*a].get_or_insert_with(|| Tensor2D::zeros(m, n));
                    for i in 0..m {
                        let mut dot = 0.0;
                        for j in 0..n {
                            dot += grad.get(i, j) * y.get(i, j);
                        }
                        for j in 0..n {
                            let v = d.get(i, j) + y.get(i, j) * (grad.get(i, j) - dot);
                            d.set(i, j, v);
                        }
                    }
                }
                Op::LogSoftmaxRows(a) => {
                    let y = &node.value;
                    let (m, n) = y.shape();
                    let d = grads[*a].get_or_insert_with(|| Tensor2D::zeros(m, n));
                    for i in 0..m {
                        let mut gsum = 0.0;
                        for j in 0..n {
                            gsum += grad.get(i, j);
                        }
                        for j in 0..n {
                            let softmax = mathf::exp(y.get(i, j));
                            let v = d.get(i, j) + grad.get(i, j) - softmax * gsum;
                            d.set(i, j, v);
                        }
                    }
                }
                Op::MeanRows(a) => {
                    let shape = self.nodes[*a].value.shape();
                    let d = grads[*a].get_or_insert_with(|| Tensor2D::zeros(shape.0, shape.1));
                    let scale = 1.0 / shape.0 as f64;
                    for i in 0..shape.0 {
                        for j in 0..shape.1 {
                            let v = d.get(i, j) + grad.get(0, j) * scale;
                            d.set(i, j, v);
                        }
                    }
                }
                Op::SumAll(a) | Op::MeanAll(a) => {
                    let shape = self.nodes[*a].value.shape();
                    let scale = match node.op {
                        Op::MeanAll(_) => 1.0 / (shape.0 * shape.1) as f64,
                        _ => 1.0,
                    };
                    let g = grad.scalar() * scale;
                    let d = grads[*a].get_or_insert_with(|| Tensor2D::zeros(shape.0, shape.1));
                    for dv in d.data_mut() {
                        *dv += g;
                    }
                }
                Op::ConcatRows(parts) => {
                    let mut row = 0;
                    for &src in parts {
                        let shape = self.nodes[src].value.shape();
                        let d = grads[src].get_or_insert_with(|| Tensor2D::zeros(shape.0, shape.1));
                        for i in 0..shape.0 {
                            for j in 0..shape.1 {
                                let v = d.get(i, j) + grad.get(row + i, j);
                                d.set(i, j, v);
                            }
                        }
                        row += shape.0;
                    }
                }
                Op::SelectEntry(a, r, c) => {
                    let shape = self.nodes[*a].value.shape();
                    let d = grads[*a].get_or_insert_with(|| Tensor2D::zeros(shape.0, shape.1));
                    let v = d.get(*r, *c) + grad.scalar();
                    d.set(*r, *c, v);
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grad_of(tape: &Tape, loss: Var, n_params: usize) -> Vec<f64> {
        let mut g = vec![0.0; n_params];
        tape.backward_into(loss, &mut g).unwrap();
        g
    }

    #[test]
    fn constant_loss_has_zero_gradients() {
        let mut tape = Tape::new();
        let flat = vec![1.0, 2.0, 3.0];
        let p = tape.param(&flat, 0, 1, 3);
        let _ = p;
        let c = tape.scalar_const(5.0);
        let g = grad_of(&tape, c, 3);
        assert_eq!(g, vec![0.0; 3]);
    }

    #[test]
    fn quadratic_gradient_is_identity() {
        // ½‖p‖²: gradient equals p exactly.
        let flat = vec![0.3, -1.2, 2.5, 0.0];
        let mut tape = Tape::new();
        let p = tape.param(&flat, 0, 1, 4);
        let sq = tape.mul(p, p).unwrap();
        let s = tape.sum_all(sq);
        let loss = tape.scale(s, 0.5);
        let g = grad_of(&tape, loss, 4);
        assert_eq!(g, flat);
    }

    #[test]
    fn matmul_gradients_match_manual() {
        // loss = sum(A·B) with A = [[1,2]], B = [[3],[4]]
        let flat = vec![1.0, 2.0, 3.0, 4.0];
        let mut tape = Tape::new();
        let a = tape.param(&flat, 0, 1, 2);
        let b = tape.param(&flat, 2, 2, 1);
        let c = tape.matmul(a, b).unwrap();
        let loss = tape.sum_all(c);
        assert_eq!(tape.value(loss).scalar(), 11.0);
        let g = grad_of(&tape, loss, 4);
        // dA = Bᵀ, dB = Aᵀ
        assert_eq!(g, vec![3.0, 4.0, 1.0, 2.0]);
    }

    #[test]
    fn softmax_rows_sum_to_one_and_shift_invariant() {
        let mut tape = Tape::new();
        let x = tape.constant(Tensor2D::from_vec(2, 3, vec![1.0, 2.0, 3.0, -5.0, 0.0, 5.0]));
        let s = tape.softmax_rows(x);
        for i in 0..2 {
            let sum: f64 = tape.value(s).row(i).iter().sum();
            assert!((sum - 1.0).abs() < 1e-12);
        }
        let shifted = tape.add_const(x, 123.0);
        let s2 = tape.softmax_rows(shifted);
        for (a, b) in tape.value(s).data().iter().zip(tape.value(s2).data()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let mut tape = Tape::new();
        let a = tape.constant(Tensor2D::zeros(2, 3));
        let b = tape.constant(Tensor2D::zeros(2, 3));
        assert_eq!(tape.matmul(a, b).unwrap_err(), NetError::ShapeMismatch);
        let c = tape.constant(Tensor2D::zeros(3, 2));
        assert!(tape.matmul(a, c).is_ok());
        assert_eq!(tape.add(a, c).unwrap_err(), NetError::ShapeMismatch);
    }

    #[test]
    fn backward_requires_scalar_loss() {
        let mut tape = Tape::new();
        let a = tape.constant(Tensor2D::zeros(2, 2));
        let mut g = vec![0.0; 1];
        assert_eq!(
            tape.backward_into(a, &mut g).unwrap_err(),
            NetError::ShapeMismatch
        );
        assert_eq!(
            tape.backward_into(Var(99), &mut g).unwrap_err(),
            NetError::GraphNotEvaluated
        );
    }

    #[test]
    fn min_max_route_to_active_branch() {
        let flat = vec![2.0, 5.0];
        let mut tape = Tape::new();
        let a = tape.param(&flat, 0, 1, 1);
        let b = tape.param(&flat, 1, 1, 1);
        let mn = tape.min_elem(a, b).unwrap();
        let mx = tape.max_elem(a, b).unwrap();
        let s = tape.add(mn, mx).unwrap();
        let loss = tape.sum_all(s);
        let g = grad_of(&tape, loss, 2);
        assert_eq!(g, vec![1.0, 1.0]);
        let g_min = {
            let mut g = vec![0.0; 2];
            tape.backward_into(mn, &mut g).unwrap();
            g
        };
        assert_eq!(g_min, vec![1.0, 0.0]);
    }
}
