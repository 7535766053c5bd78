//! Feed-forward multilayer perceptron trained with per-example backpropagation.
//!
//! Weights for the link from unit `j` of one layer to unit `i` of the next
//! live in a `(n_prev + 1) x n_next` row-major matrix. The extra last row holds
//! the bias weights, whose input activation is fixed at 1.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::NetError;

/// Logistic activation `1 / (1 + e^-x)`.
pub fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + libm::exp(-x))
}

/// Derivative of [`sigmoid`], `g(x) * (1 - g(x))`.
pub fn sigmoid_prime(x: f64) -> f64 {
    let s = sigmoid(x);
    s * (1.0 - s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Activation {
    #[default]
    Sigmoid,
}

impl Activation {
    pub const fn name(self) -> &'static str {
        match self {
            Self::Sigmoid => "sigmoid",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        (name == "sigmoid").then_some(Self::Sigmoid)
    }

    pub fn apply(self, x: f64) -> f64 {
        match self {
            Self::Sigmoid => sigmoid(x),
        }
    }

    pub fn derivative(self, x: f64) -> f64 {
        match self {
            Self::Sigmoid => sigmoid_prime(x),
        }
    }
}

/// Weights between two adjacent layers, bias row last.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl WeightMatrix {
    fn zeros(n_from: usize, n_to: usize) -> Self {
        Self {
            rows: n_from + 1,
            cols: n_to,
            data: vec![0.0; (n_from + 1) * n_to],
        }
    }

    /// Rows including the bias row.
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Weight on the link from unit `j` to unit `i`; `j == rows() - 1` is the bias.
    pub fn get(&self, j: usize, i: usize) -> f64 {
        self.data[j * self.cols + i]
    }

    pub fn set(&mut self, j: usize, i: usize, w: f64) {
        self.data[j * self.cols + i] = w;
    }

    pub fn bias(&self, i: usize) -> f64 {
        self.get(self.rows - 1, i)
    }

    /// Row-major contents.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }
}

/// Weighted sums and activations of every layer for one input.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerActivations {
    /// `net_input[l][i]` is `in_i` for layer `l`. Empty for the input layer.
    pub net_input: Vec<Vec<f64>>,
    /// `activation[l][i]` is `a_i`; layer 0 is the input vector itself.
    pub activation: Vec<Vec<f64>>,
}

impl LayerActivations {
    pub fn output(&self) -> &[f64] {
        self.activation.last().map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Error terms of one backpropagation step. `deltas[k]` belongs to layer `k + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BackpropTrace {
    pub deltas: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainingExample {
    pub input: Vec<f64>,
    pub target: Vec<f64>,
}

impl TrainingExample {
    pub fn new(input: Vec<f64>, target: Vec<f64>) -> Self {
        Self { input, target }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub max_epochs: usize,
    /// Stop once an epoch ends with MSE at or below this value.
    pub mse_stop: f64,
    pub shuffle: bool,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.5,
            max_epochs: 1000,
            mse_stop: 0.0,
            shuffle: true,
            seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<(), NetError> {
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(NetError::LearningRate(self.learning_rate));
        }
        if self.max_epochs == 0 {
            return Err(NetError::ZeroEpochs);
        }
        if self.mse_stop.is_nan() || self.mse_stop < 0.0 {
            return Err(NetError::NonFinite("mse_stop"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainOutcome {
    /// MSE measured after each completed epoch.
    pub mse_history: Vec<f64>,
    /// Number of single-example weight updates applied.
    pub updates: usize,
}

impl TrainOutcome {
    pub fn epochs(&self) -> usize {
        self.mse_history.len()
    }

    pub fn final_mse(&self) -> Option<f64> {
        self.mse_history.last().copied()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    layer_sizes: Vec<usize>,
    weights: Vec<WeightMatrix>,
    activation: Activation,
}

fn check_sizes(layer_sizes: &[usize]) -> Result<(), NetError> {
    if layer_sizes.len() < 2 {
        return Err(NetError::TooFewLayers(layer_sizes.len()));
    }
    if let Some(l) = layer_sizes.iter().position(|&n| n == 0) {
        return Err(NetError::EmptyLayer(l));
    }
    Ok(())
}

fn check_vec(what: &'static str, v: &[f64], expected: usize) -> Result<(), NetError> {
    if v.len() != expected {
        return Err(NetError::Shape {
            what,
            expected,
            actual: v.len(),
        });
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(NetError::NonFinite(what));
    }
    Ok(())
}

impl Network {
    /// Every weight, bias rows included, zero.
    pub fn zeros(layer_sizes: &[usize]) -> Result<Self, NetError> {
        check_sizes(layer_sizes)?;
        Ok(Self {
            layer_sizes: layer_sizes.to_vec(),
            weights: layer_sizes
                .windows(2)
                .map(|w| WeightMatrix::zeros(w[0], w[1]))
                .collect(),
            activation: Activation::Sigmoid,
        })
    }

    /// Weights drawn uniformly from [-0.5, 0.5] by a ChaCha8 generator seeded with `seed`,
    /// layer by layer in row-major order.
    pub fn init(layer_sizes: &[usize], seed: u64) -> Result<Self, NetError> {
        let mut net = Self::zeros(layer_sizes)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for m in &mut net.weights {
            for w in m.as_mut_slice() {
                *w = rng.gen_range(-0.5..=0.5);
            }
        }
        Ok(net)
    }

    /// Rebuilds a network from row-major weight lists (bias row last), checking shapes.
    pub fn from_weights(layer_sizes: &[usize], weights: Vec<Vec<f64>>) -> Result<Self, NetError> {
        let mut net = Self::zeros(layer_sizes)?;
        if weights.len() != net.weights.len() {
            return Err(NetError::Shape {
                what: "weight matrix count",
                expected: net.weights.len(),
                actual: weights.len(),
            });
        }
        for (m, flat) in net.weights.iter_mut().zip(weights) {
            check_vec("weight matrix", &flat, m.data.len())?;
            m.data = flat;
        }
        Ok(net)
    }

    pub fn layer_sizes(&self) -> &[usize] {
        &self.layer_sizes
    }

    pub fn input_size(&self) -> usize {
        self.layer_sizes[0]
    }

    pub fn output_size(&self) -> usize {
        self.layer_sizes[self.layer_sizes.len() - 1]
    }

    pub fn activation(&self) -> Activation {
        self.activation
    }

    /// Matrices between consecutive layers; `weights()[l]` feeds layer `l + 1`.
    pub fn weights(&self) -> &[WeightMatrix] {
        &self.weights
    }

    pub fn weights_mut(&mut self) -> &mut [WeightMatrix] {
        &mut self.weights
    }

    pub fn weight_count(&self) -> usize {
        self.weights.iter().map(|m| m.data.len()).sum()
    }

    /// All weights in layer order, row-major within a layer.
    pub fn flat_weights(&self) -> impl Iterator<Item = f64> + '_ {
        self.weights.iter().flat_map(|m| m.data.iter().copied())
    }

    pub fn forward(&self, input: &[f64]) -> Result<LayerActivations, NetError> {
        check_vec("input", input, self.input_size())?;
        let mut net_input = Vec::with_capacity(self.layer_sizes.len());
        let mut activation = Vec::with_capacity(self.layer_sizes.len());
        net_input.push(Vec::new());
        activation.push(input.to_vec());
        for m in &self.weights {
            let prev = activation.last().expect("input layer present");
            let sums: Vec<f64> = (0..m.cols)
                .map(|i| {
                    let weighted: f64 = prev.iter().enumerate().map(|(j, a)| m.get(j, i) * a).sum();
                    weighted + m.bias(i)
                })
                .collect();
            let acts = sums.iter().map(|&x| self.activation.apply(x)).collect();
            net_input.push(sums);
            activation.push(acts);
        }
        Ok(LayerActivations {
            net_input,
            activation,
        })
    }

    /// Output-layer activations.
    pub fn predict(&self, input: &[f64]) -> Result<Vec<f64>, NetError> {
        let mut acts = self.forward(input)?;
        Ok(acts.activation.pop().unwrap_or_default())
    }

    /// Squared error `½ Σ (T_i − O_i)²` for one example.
    pub fn example_error(&self, ex: &TrainingExample) -> Result<f64, NetError> {
        check_vec("target", &ex.target, self.output_size())?;
        let out = self.predict(&ex.input)?;
        Ok(0.5
            * out
                .iter()
                .zip(&ex.target)
                .map(|(o, t)| (t - o) * (t - o))
                .sum::<f64>())
    }

    /// Mean of [`example_error`](Self::example_error) over `data`.
    pub fn mse(&self, data: &[TrainingExample]) -> Result<f64, NetError> {
        if data.is_empty() {
            return Err(NetError::EmptyDataset);
        }
        let mut total = 0.0;
        for ex in data {
            total += self.example_error(ex)?;
        }
        Ok(total / data.len() as f64)
    }

    /// One backpropagation step on a single example.
    ///
    /// Output deltas are `A_i = (T_i − O_i)·g'(in_i)`; hidden deltas are
    /// `A_j = g'(in_j)·Σ_i w_{j,i}·A_i`, computed with the pre-update weights.
    /// Every weight then moves by `lr·a_j·A_i` (bias input `a_j = 1`).
    /// Returns the deltas and the per-output errors `T_i − O_i`.
    pub fn backprop_update(
        &mut self,
        ex: &TrainingExample,
        lr: f64,
    ) -> Result<(BackpropTrace, Vec<f64>), NetError> {
        if !(lr > 0.0 && lr.is_finite()) {
            return Err(NetError::LearningRate(lr));
        }
        check_vec("target", &ex.target, self.output_size())?;
        let acts = self.forward(&ex.input)?;
        let trace_and_err = self.deltas(&acts, &ex.target);
        let (trace, errors) = trace_and_err;
        for (l, m) in self.weights.iter_mut().enumerate() {
            let a_prev = &acts.activation[l];
            let delta = &trace.deltas[l];
            let bias_row = m.rows - 1;
            for (i, d) in delta.iter().enumerate() {
                for (j, a) in a_prev.iter().enumerate() {
                    let w = m.get(j, i);
                    m.set(j, i, w + lr * a * d);
                }
                let b = m.get(bias_row, i);
                m.set(bias_row, i, b + lr * d);
            }
        }
        Ok((trace, errors))
    }

    fn deltas(&self, acts: &LayerActivations, target: &[f64]) -> (BackpropTrace, Vec<f64>) {
        let last = self.layer_sizes.len() - 1;
        let errors: Vec<f64> = acts.activation[last]
            .iter()
            .zip(target)
            .map(|(o, t)| t - o)
            .collect();
        let mut deltas: Vec<Vec<f64>> = vec![Vec::new(); last];
        deltas[last - 1] = errors
            .iter()
            .zip(&acts.net_input[last])
            .map(|(err, &x)| err * self.activation.derivative(x))
            .collect();
        for layer in (1..last).rev() {
            let m = &self.weights[layer];
            let next = &deltas[layer];
            let hidden = acts.net_input[layer]
                .iter()
                .enumerate()
                .map(|(j, &x)| {
                    let back: f64 = next.iter().enumerate().map(|(i, d)| m.get(j, i) * d).sum();
                    self.activation.derivative(x) * back
                })
                .collect();
            deltas[layer - 1] = hidden;
        }
        (BackpropTrace { deltas }, errors)
    }

    /// Sequential per-example training. Each epoch optionally reshuffles the
    /// visiting order (seeded), applies one update per example, then records the
    /// epoch MSE. Stops after `max_epochs` or once MSE ≤ `mse_stop`.
    pub fn train(
        &mut self,
        data: &[TrainingExample],
        cfg: &TrainConfig,
    ) -> Result<TrainOutcome, NetError> {
        cfg.validate()?;
        if data.is_empty() {
            return Err(NetError::EmptyDataset);
        }
        for ex in data {
            check_vec("input", &ex.input, self.input_size())?;
            check_vec("target", &ex.target, self.output_size())?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut order: Vec<usize> = (0..data.len()).collect();
        let mut outcome = TrainOutcome {
            mse_history: Vec::new(),
            updates: 0,
        };
        for _ in 0..cfg.max_epochs {
            if cfg.shuffle {
                order.shuffle(&mut rng);
            }
            for &k in &order {
                self.backprop_update(&data[k], cfg.learning_rate)?;
                outcome.updates += 1;
            }
            let mse = self.mse(data)?;
            outcome.mse_history.push(mse);
            if mse <= cfg.mse_stop {
                break;
            }
        }
        Ok(outcome)
    }
}

/// `w_j ← w_j + lr·a_j·err` for every weight.
pub fn apply_perceptron_rule(weights: &mut [f64], inputs: &[f64], err: f64, lr: f64) {
    for (w, a) in weights.iter_mut().zip(inputs) {
        *w += lr * a * err;
    }
}

/// A single sigmoid unit trained with the perceptron rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Perceptron {
    pub weights: Vec<f64>,
    pub bias: f64,
}

impl Perceptron {
    pub fn new(weights: Vec<f64>, bias: f64) -> Self {
        Self { weights, bias }
    }

    pub fn net_input(&self, input: &[f64]) -> Result<f64, NetError> {
        check_vec("input", input, self.weights.len())?;
        Ok(self
            .weights
            .iter()
            .zip(input)
            .map(|(w, a)| w * a)
            .sum::<f64>()
            + self.bias)
    }

    pub fn output(&self, input: &[f64]) -> Result<f64, NetError> {
        self.net_input(input).map(sigmoid)
    }

    /// Applies `w_j ← w_j + lr·a_j·(T − O)` (the bias sees `a = 1`) and returns `T − O`.
    pub fn update(&mut self, input: &[f64], target: f64, lr: f64) -> Result<f64, NetError> {
        if !(lr > 0.0 && lr.is_finite()) {
            return Err(NetError::LearningRate(lr));
        }
        let err = target - self.output(input)?;
        apply_perceptron_rule(&mut self.weights, input, err, lr);
        self.bias += lr * err;
        Ok(err)
    }
}

/// Functional form of [`Perceptron::update`].
pub fn perceptron_update(
    weights: &[f64],
    bias: f64,
    input: &[f64],
    target: f64,
    lr: f64,
) -> Result<(Vec<f64>, f64), NetError> {
    let mut p = Perceptron::new(weights.to_vec(), bias);
    p.update(input, target, lr)?;
    Ok((p.weights, p.bias))
}
