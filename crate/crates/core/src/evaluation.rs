//! Downstream evaluation: a small from-scratch MLP classifier, accuracy,
//! and statistical diagnostics (whiteness, separation quality).

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::data::Dataset;
use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// MLP
// ---------------------------------------------------------------------------

/// Classifier hyperparameters. Defaults: two hidden layers of 64 rectifier
/// units, softmax cross-entropy, mini-batch SGD.
#[derive(Debug, Clone, PartialEq)]
pub struct MlpConfig {
    pub hidden_layers: Vec<usize>,
    pub epochs: usize,
    pub learning_rate: f64,
    pub batch_size: usize,
    pub seed: u64,
}

impl Default for MlpConfig {
    fn default() -> Self {
        Self {
            hidden_layers: vec![64, 64],
            epochs: 100,
            learning_rate: 0.01,
            batch_size: 32,
            seed: 0,
        }
    }
}

impl MlpConfig {
    fn validate(&self) -> Result<()> {
        if self.hidden_layers.iter().any(|&w| w == 0) {
            return Err(Error::Config("hidden layer widths must be positive".into()));
        }
        if self.epochs == 0 {
            return Err(Error::Config("epochs must be >= 1".into()));
        }
        if self.batch_size == 0 {
            return Err(Error::Config("batch_size must be >= 1".into()));
        }
        if !(self.learning_rate > 0.0) {
            return Err(Error::Config("learning rate must be > 0".into()));
        }
        Ok(())
    }
}

/// A feed-forward rectifier network with a softmax head.
#[derive(Debug, Clone, PartialEq)]
pub struct Mlp {
    /// Layer weights, each `out x in`.
    weights: Vec<DMatrix<f64>>,
    biases: Vec<DVector<f64>>,
}

impl Mlp {
    /// Builds a network from explicit layers, checking the dimension chain.
    pub fn from_layers(weights: Vec<DMatrix<f64>>, biases: Vec<DVector<f64>>) -> Result<Self> {
        if weights.is_empty() || weights.len() != biases.len() {
            return Err(Error::InvalidArgument(
                "need one bias vector per weight matrix".into(),
            ));
        }
        for (l, (w, b)) in weights.iter().zip(&biases).enumerate() {
            if w.nrows() != b.len() {
                return Err(Error::InvalidArgument(format!(
                    "layer {l}: bias length {} does not match {} outputs",
                    b.len(),
                    w.nrows()
                )));
            }
            if l > 0 && w.ncols() != weights[l - 1].nrows() {
                return Err(Error::InvalidArgument(format!(
                    "layer {l}: input width {} does not chain from previous layer",
                    w.ncols()
                )));
            }
        }
        Ok(Self { weights, biases })
    }

    pub fn input_dim(&self) -> usize {
        self.weights[0].ncols()
    }

    pub fn num_classes(&self) -> usize {
        self.weights.last().unwrap().nrows()
    }

    pub fn weights(&self) -> &[DMatrix<f64>] {
        &self.weights
    }

    pub fn biases(&self) -> &[DVector<f64>] {
        &self.biases
    }

    /// Class logits for one sample.
    pub fn logits(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        if x.len() != self.input_dim() {
            return Err(Error::InvalidArgument(format!(
                "input length {} does not match network input dim {}",
                x.len(),
                self.input_dim()
            )));
        }
        let mut a = x.clone();
        for (l, (w, b)) in self.weights.iter().zip(&self.biases).enumerate() {
            a = w * a + b;
            if l + 1 < self.weights.len() {
                a.apply(|v| *v = v.max(0.0));
            }
        }
        Ok(a)
    }

    /// Predicted class; ties break toward the lower class index.
    pub fn predict(&self, x: &DVector<f64>) -> Result<usize> {
        let logits = self.logits(x)?;
        let mut best = 0;
        for c in 1..logits.len() {
            if logits[c] > logits[best] {
                best = c;
            }
        }
        Ok(best)
    }
}

/// Trains the classifier with mini-batch SGD on softmax cross-entropy.
/// Deterministic given `cfg.seed`: initialization and the per-epoch shuffle
/// both draw from one seeded stream.
pub fn train_mlp(data: &Dataset, cfg: &MlpConfig) -> Result<Mlp> {
    cfg.validate()?;
    let labels = data
        .labels()
        .ok_or_else(|| Error::InvalidArgument("training data has no labels".into()))?;
    let classes = data.num_classes();
    {
        let mut seen = vec![false; classes];
        for &l in labels {
            seen[l] = true;
        }
        if seen.iter().filter(|&&s| s).count() < 2 {
            return Err(Error::InvalidArgument(
                "training data must contain at least two classes".into(),
            ));
        }
    }

    let mut dims = vec![data.feature_count()];
    dims.extend_from_slice(&cfg.hidden_layers);
    dims.push(classes);

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut weights = Vec::with_capacity(dims.len() - 1);
    let mut biases = Vec::with_capacity(dims.len() - 1);
    for l in 0..dims.len() - 1 {
        let (fan_in, fan_out) = (dims[l], dims[l + 1]);
        let scale = 1.0 / (fan_in as f64).sqrt();
        let mut w = DMatrix::<f64>::zeros(fan_out, fan_in);
        for i in 0..fan_out {
            for j in 0..fan_in {
                let u: f64 = rng.random();
                w[(i, j)] = (2.0 * u - 1.0) * scale;
            }
        }
        weights.push(w);
        biases.push(DVector::zeros(fan_out));
    }

    let n = data.sample_count();
    let layer_count = weights.len();
    let mut order: Vec<usize> = (0..n).collect();

    for _ in 0..cfg.epochs {
        order.shuffle(&mut rng);
        let mut start = 0;
        while start < n {
            let end = (start + cfg.batch_size).min(n);
            let bs = end - start;

            // Assemble the batch column-wise.
            let mut x = DMatrix::<f64>::zeros(dims[0], bs);
            for (col, &idx) in order[start..end].iter().enumerate() {
                x.set_column(col, &data.row(idx));
            }

            // Forward pass, keeping activations for backprop.
            let mut activations = vec![x];
            for l in 0..layer_count {
                let mut z = &weights[l] * &activations[l];
                for mut col in z.column_iter_mut() {
                    col += &biases[l];
                }
                if l + 1 < layer_count {
                    z.apply(|v| *v = v.max(0.0));
                }
                activations.push(z);
            }

            // Softmax + cross-entropy gradient at the head: (P - Y) / bs.
            let mut delta = activations[layer_count].clone();
            for (col, &idx) in order[start..end].iter().enumerate() {
                let mut column = delta.column_mut(col);
                let max = column.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let mut sum = 0.0;
                for v in column.iter_mut() {
                    *v = (*v - max).exp();
                    sum += *v;
                }
                for v in column.iter_mut() {
                    *v /= sum;
                }
                column[labels[idx]] -= 1.0;
                column /= bs as f64;
            }

            // Backward pass with SGD updates.
            for l in (0..layer_count).rev() {
                let grad_w = &delta * activations[l].transpose();
                let grad_b = delta.column_sum();
                if l > 0 {
                    let mut back = weights[l].transpose() * &delta;
                    for (v, a) in back.iter_mut().zip(activations[l].iter()) {
                        if *a <= 0.0 {
                            *v = 0.0;
                        }
                    }
                    delta = back;
                }
                weights[l] -= cfg.learning_rate * grad_w;
                biases[l] -= cfg.learning_rate * grad_b;
            }

            start = end;
        }
    }

    Ok(Mlp { weights, biases })
}

/// Fraction of argmax-correct predictions on a labeled dataset.
pub fn accuracy(model: &Mlp, test: &Dataset) -> Result<f64> {
    let labels = test
        .labels()
        .ok_or_else(|| Error::InvalidArgument("test data has no labels".into()))?;
    if test.feature_count() != model.input_dim() {
        return Err(Error::InvalidArgument(format!(
            "test feature count {} does not match network input dim {}",
            test.feature_count(),
            model.input_dim()
        )));
    }
    let mut correct = 0usize;
    for i in 0..test.sample_count() {
        if model.predict(&test.row(i))? == labels[i] {
            correct += 1;
        }
    }
    Ok(correct as f64 / test.sample_count() as f64)
}

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

/// Sample covariance (mean-removed, 1/N normalization) of transformed rows,
/// and the whiteness error `||Sigma - I||_max`.
pub fn covariance_diagnostic(z: &DMatrix<f64>) -> Result<(DMatrix<f64>, f64)> {
    let (rows, cols) = (z.nrows(), z.ncols());
    if rows < 2 {
        return Err(Error::InvalidArgument(
            "covariance needs at least 2 samples".into(),
        ));
    }
    let mean = z.row_mean();
    let mut centered = z.clone();
    for mut row in centered.row_iter_mut() {
        row -= &mean;
    }
    let sigma = centered.transpose() * &centered / rows as f64;
    let err = (&sigma - DMatrix::identity(cols, cols)).abs().max();
    Ok((sigma, err))
}

/// Normalized separation index of `P = B A` in `[0, 1]`.
///
/// Rows of `P` are first divided by their largest absolute entry, so the
/// index is invariant to row rescaling; row and column leakage beyond the
/// dominant entries is then averaged. Zero exactly when `P` is a
/// permutation-times-diagonal matrix.
pub fn amari_index(b: &DMatrix<f64>, a: &DMatrix<f64>) -> Result<f64> {
    if b.ncols() != a.nrows() || b.nrows() != a.ncols() {
        return Err(Error::InvalidArgument(format!(
            "need B ({}x{}) and A ({}x{}) with matching inner dims and square product",
            b.nrows(),
            b.ncols(),
            a.nrows(),
            a.ncols()
        )));
    }
    let p = b * a;
    let n = p.nrows();

    let sv = p.clone().svd(false, false).singular_values;
    let (smax, smin) = (
        sv.iter().copied().fold(0.0f64, f64::max),
        sv.iter().copied().fold(f64::INFINITY, f64::min),
    );
    if !(smin > smax * 1e-12) || smax == 0.0 {
        return Err(Error::Diagnostic(
            "product matrix is numerically singular".into(),
        ));
    }
    if n == 1 {
        return Ok(0.0);
    }

    // Row-normalized absolute matrix.
    let mut tilde = p.abs();
    for mut row in tilde.row_iter_mut() {
        let max = row.iter().copied().fold(0.0f64, f64::max);
        row /= max;
    }

    let mut score = 0.0;
    for i in 0..n {
        score += tilde.row(i).sum() - 1.0;
    }
    for j in 0..n {
        let col = tilde.column(j);
        let max = col.iter().copied().fold(0.0f64, f64::max);
        score += col.sum() / max - 1.0;
    }
    Ok(score / (2.0 * (n * (n - 1)) as f64))
}

// ---------------------------------------------------------------------------
// Metrics TSV
// ---------------------------------------------------------------------------

/// One row of the metrics table emitted by evaluation runs.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRow {
    pub mode: String,
    pub m: usize,
    pub p: Option<usize>,
    pub n: usize,
    pub seed: u64,
    pub accuracy: Option<f64>,
    pub whiteness_error: Option<f64>,
    pub amari_index: Option<f64>,
}

impl MetricsRow {
    pub fn tsv_header() -> &'static str {
        "mode\tm\tp\tn\tseed\taccuracy\twhitenessError\tamariIndex"
    }

    pub fn to_tsv_row(&self) -> String {
        fn opt(v: Option<f64>) -> String {
            v.map_or("-".to_string(), |v| format!("{v:.6}"))
        }
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.mode,
            self.m,
            self.p.map_or("-".to_string(), |p| p.to_string()),
            self.n,
            self.seed,
            opt(self.accuracy),
            opt(self.whiteness_error),
            opt(self.amari_index)
        )
    }
}
