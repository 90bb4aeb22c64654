//! Dataset handling: the waveform generator, CSV ingestion, ordered
//! train/test splitting, and synthetic mixtures for separation tests.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// A real-valued sample matrix with optional integer class labels.
///
/// Rows are samples, columns are features. Immutable after construction;
/// every entry is finite and every label lies in `[0, num_classes)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    samples: DMatrix<f64>,
    labels: Option<Vec<usize>>,
    num_classes: usize,
}

impl Dataset {
    /// Builds a dataset, validating finiteness and label consistency.
    pub fn new(samples: DMatrix<f64>, labels: Option<Vec<usize>>) -> Result<Self> {
        if samples.nrows() == 0 || samples.ncols() == 0 {
            return Err(Error::InvalidArgument(
                "dataset must have at least one sample and one feature".into(),
            ));
        }
        if let Some(bad) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite feature value at flat index {bad}"
            )));
        }
        let num_classes = match &labels {
            Some(l) => {
                if l.len() != samples.nrows() {
                    return Err(Error::InvalidArgument(format!(
                        "label count {} does not match sample count {}",
                        l.len(),
                        samples.nrows()
                    )));
                }
                l.iter().max().map_or(0, |&m| m + 1)
            }
            None => 0,
        };
        Ok(Self {
            samples,
            labels,
            num_classes,
        })
    }

    /// As [`Dataset::new`] but with an explicit class count (which must cover
    /// every label). Lets a split keep the parent's label space.
    pub fn with_num_classes(
        samples: DMatrix<f64>,
        labels: Vec<usize>,
        num_classes: usize,
    ) -> Result<Self> {
        if let Some(&bad) = labels.iter().find(|&&l| l >= num_classes) {
            return Err(Error::InvalidArgument(format!(
                "label {bad} outside [0, {num_classes})"
            )));
        }
        let mut d = Self::new(samples, Some(labels))?;
        d.num_classes = num_classes;
        Ok(d)
    }

    pub fn sample_count(&self) -> usize {
        self.samples.nrows()
    }

    pub fn feature_count(&self) -> usize {
        self.samples.ncols()
    }

    /// Number of classes in the label space (0 for unlabeled data).
    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn samples(&self) -> &DMatrix<f64> {
        &self.samples
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    /// The `i`-th sample as a column vector.
    pub fn row(&self, i: usize) -> DVector<f64> {
        self.samples.row(i).transpose()
    }

    /// Replaces the feature matrix, keeping labels (row count must match).
    pub fn with_samples(&self, samples: DMatrix<f64>) -> Result<Self> {
        if samples.nrows() != self.sample_count() {
            return Err(Error::InvalidArgument(format!(
                "replacement sample count {} does not match {}",
                samples.nrows(),
                self.sample_count()
            )));
        }
        let mut d = Self::new(samples, self.labels.clone())?;
        d.num_classes = self.num_classes;
        Ok(d)
    }
}

// ---------------------------------------------------------------------------
// Waveform generator
// ---------------------------------------------------------------------------

/// Number of wave-bearing features.
const WAVE_LEN: usize = 21;
/// Trailing pure-noise features.
const NOISE_LEN: usize = 19;
/// Total generated features before any are dropped.
const TOTAL_FEATURES: usize = WAVE_LEN + NOISE_LEN;

/// The three triangular base waves: height 6, peaks at positions 7, 11, 15
/// over 21 points (0-indexed). These constants come from the dataset's
/// published definition.
const WAVE_PEAKS: [f64; 3] = [7.0, 11.0, 15.0];

/// Which pair of base waves each class combines.
const CLASS_WAVES: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Value of base wave `w` at feature position `i`.
pub fn base_wave(w: usize, i: usize) -> f64 {
    (6.0 - (i as f64 - WAVE_PEAKS[w]).abs()).max(0.0)
}

/// Base-wave pair combined by `class`.
pub fn class_wave_pair(class: usize) -> (usize, usize) {
    CLASS_WAVES[class]
}

/// Generates the three-class waveform dataset.
///
/// Each sample draws a class uniformly, a mixing coefficient `u ~ U(0,1)`,
/// and unit Gaussian noise on all 40 positions; the first 21 features are
/// `u*h_a(i) + (1-u)*h_b(i) + noise` for the class's wave pair `(a, b)`, the
/// remaining 19 are pure noise. `drop_last_k` removes that many trailing
/// features after generation, so the same seed yields the same leading
/// columns regardless of `drop_last_k`.
pub fn generate_waveform(n_samples: usize, seed: u64, drop_last_k: usize) -> Result<Dataset> {
    if n_samples == 0 {
        return Err(Error::InvalidArgument("n_samples must be >= 1".into()));
    }
    if drop_last_k >= TOTAL_FEATURES {
        return Err(Error::InvalidArgument(format!(
            "drop_last_k must be < {TOTAL_FEATURES}, got {drop_last_k}"
        )));
    }
    let keep = TOTAL_FEATURES - drop_last_k;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = DMatrix::<f64>::zeros(n_samples, keep);
    let mut labels = Vec::with_capacity(n_samples);

    for s in 0..n_samples {
        // Draw order is fixed: class, u, then noise for all 40 positions.
        let class = rng.random_range(0..3usize);
        let u: f64 = rng.random();
        let (a, b) = CLASS_WAVES[class];
        for i in 0..TOTAL_FEATURES {
            let noise: f64 = StandardNormal.sample(&mut rng);
            if i >= keep {
                continue;
            }
            let value = if i < WAVE_LEN {
                u * base_wave(a, i) + (1.0 - u) * base_wave(b, i) + noise
            } else {
                noise
            };
            samples[(s, i)] = value;
        }
        labels.push(class);
    }
    Dataset::with_num_classes(samples, labels, 3)
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

/// Loads a comma-separated file of decimal reals.
///
/// A non-numeric first row is treated as a header and skipped. When
/// `label_column` (0-based) is given, that column is parsed as non-negative
/// integer labels and excluded from the features.
pub fn load_csv<P: AsRef<Path>>(path: P, label_column: Option<usize>) -> Result<Dataset> {
    let file = File::open(path.as_ref())?;
    let reader = BufReader::new(file);

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut labels: Vec<usize> = Vec::new();
    let mut width: Option<usize> = None;
    let mut saw_any = false;

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let cells: Vec<&str> = text.split(',').map(str::trim).collect();

        if !saw_any {
            saw_any = true;
            // Header auto-detection: skip the first row if any cell is
            // non-numeric.
            if cells.iter().any(|c| c.parse::<f64>().is_err()) {
                continue;
            }
        }

        match width {
            None => width = Some(cells.len()),
            Some(w) if w != cells.len() => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected {w} columns, found {}", cells.len()),
                });
            }
            _ => {}
        }
        if let Some(lc) = label_column {
            if lc >= cells.len() {
                return Err(Error::InvalidArgument(format!(
                    "label column {lc} out of range for {}-column file",
                    cells.len()
                )));
            }
        }

        let mut row = Vec::with_capacity(cells.len());
        for (c, cell) in cells.iter().enumerate() {
            if Some(c) == label_column {
                let v: f64 = cell.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("non-numeric label {cell:?}"),
                })?;
                if v < 0.0 || v.fract() != 0.0 {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("label {cell:?} is not a non-negative integer"),
                    });
                }
                labels.push(v as usize);
            } else {
                let v: f64 = cell.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("non-numeric cell {cell:?}"),
                })?;
                row.push(v);
            }
        }
        rows.push(row);
    }

    if rows.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "no data rows".into(),
        });
    }
    let n = rows.len();
    let m = rows[0].len();
    if m == 0 {
        return Err(Error::Parse {
            line: 1,
            message: "no feature columns".into(),
        });
    }
    let samples = DMatrix::from_fn(n, m, |r, c| rows[r][c]);
    Dataset::new(samples, label_column.map(|_| labels))
}

/// Writes a dataset as CSV (full-precision decimals); labels, when present,
/// become the last column.
pub fn write_csv<P: AsRef<Path>>(dataset: &Dataset, path: P) -> Result<()> {
    let file = File::create(path.as_ref())?;
    let mut out = BufWriter::new(file);
    for i in 0..dataset.sample_count() {
        let mut cells: Vec<String> = (0..dataset.feature_count())
            .map(|j| format!("{:?}", dataset.samples()[(i, j)]))
            .collect();
        if let Some(labels) = dataset.labels() {
            cells.push(labels[i].to_string());
        }
        writeln!(out, "{}", cells.join(","))?;
    }
    out.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Split
// ---------------------------------------------------------------------------

/// Order-preserving split: the first `n_train` samples and the rest.
/// No shuffling; concatenating the outputs reproduces the input.
pub fn split(dataset: &Dataset, n_train: usize) -> Result<(Dataset, Dataset)> {
    let n = dataset.sample_count();
    if n_train == 0 || n_train >= n {
        return Err(Error::InvalidArgument(format!(
            "n_train must be in (0, {n}), got {n_train}"
        )));
    }
    let take = |lo: usize, hi: usize| -> Result<Dataset> {
        let samples = dataset.samples().rows(lo, hi - lo).into_owned();
        match dataset.labels() {
            Some(l) => {
                Dataset::with_num_classes(samples, l[lo..hi].to_vec(), dataset.num_classes())
            }
            None => Dataset::new(samples, None),
        }
    };
    Ok((take(0, n_train)?, take(n_train, n)?))
}

// ---------------------------------------------------------------------------
// Synthetic mixtures
// ---------------------------------------------------------------------------

/// Source distribution for synthetic mixtures. Every variant is zero-mean,
/// unit-variance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceDistribution {
    /// Uniform on `[-sqrt(3), sqrt(3)]`.
    Uniform,
    /// Laplace with scale `1/sqrt(2)`.
    Laplace,
    /// Rademacher: -1 or +1 with equal probability.
    Sign,
}

impl fmt::Display for SourceDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SourceDistribution::Uniform => "uniform",
            SourceDistribution::Laplace => "laplace",
            SourceDistribution::Sign => "sign",
        };
        f.write_str(name)
    }
}

impl SourceDistribution {
    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            SourceDistribution::Uniform => {
                let u: f64 = rng.random();
                (2.0 * u - 1.0) * 3.0_f64.sqrt()
            }
            SourceDistribution::Laplace => {
                // Inverse CDF; scale b = 1/sqrt(2) gives unit variance.
                let u: f64 = rng.random::<f64>() - 0.5;
                let b = std::f64::consts::FRAC_1_SQRT_2;
                -b * u.signum() * (1.0 - 2.0 * u.abs()).ln()
            }
            SourceDistribution::Sign => {
                if rng.random::<f64>() < 0.5 {
                    -1.0
                } else {
                    1.0
                }
            }
        }
    }
}

/// Specification of a synthetic linear mixture `x = A s`.
///
/// The mixing matrix must have full column rank (smallest singular value
/// above 1e-9), so the sources are recoverable in principle.
#[derive(Debug, Clone)]
pub struct SyntheticIcaSpec {
    mixing: DMatrix<f64>,
    source_distribution: SourceDistribution,
}

impl SyntheticIcaSpec {
    pub fn new(mixing: DMatrix<f64>, source_distribution: SourceDistribution) -> Result<Self> {
        if mixing.nrows() == 0 || mixing.ncols() == 0 {
            return Err(Error::InvalidArgument("mixing matrix must be non-empty".into()));
        }
        if mixing.nrows() < mixing.ncols() {
            return Err(Error::InvalidArgument(format!(
                "mixing matrix must have at least as many rows as columns, got {}x{}",
                mixing.nrows(),
                mixing.ncols()
            )));
        }
        if mixing.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("mixing matrix has non-finite entries".into()));
        }
        let smallest = mixing
            .clone()
            .svd(false, false)
            .singular_values
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if !(smallest > 1e-9) {
            return Err(Error::InvalidArgument(format!(
                "mixing matrix is rank deficient (smallest singular value {smallest:e})"
            )));
        }
        Ok(Self {
            mixing,
            source_distribution,
        })
    }

    pub fn mixing(&self) -> &DMatrix<f64> {
        &self.mixing
    }

    pub fn source_count(&self) -> usize {
        self.mixing.ncols()
    }

    pub fn mixture_dim(&self) -> usize {
        self.mixing.nrows()
    }

    pub fn source_distribution(&self) -> SourceDistribution {
        self.source_distribution
    }
}

/// Draws `n_samples` source vectors i.i.d. from the spec's distribution and
/// mixes them through `A`. Returns the mixtures (rows = samples) and the
/// ground-truth sources (`n_samples x n`).
pub fn generate_ica_mixture(
    spec: &SyntheticIcaSpec,
    n_samples: usize,
    seed: u64,
) -> Result<(Dataset, DMatrix<f64>)> {
    if n_samples == 0 {
        return Err(Error::InvalidArgument("n_samples must be >= 1".into()));
    }
    let n = spec.source_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sources = DMatrix::<f64>::zeros(n_samples, n);
    for s in 0..n_samples {
        for c in 0..n {
            sources[(s, c)] = spec.source_distribution.draw(&mut rng);
        }
    }
    // samples = sources * A^T, i.e. each row is A * s.
    let samples = &sources * spec.mixing.transpose();
    Ok((Dataset::new(samples, None)?, sources))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn mean(xs: impl Iterator<Item = f64>, n: usize) -> f64 {
        xs.sum::<f64>() / n as f64
    }

    #[test]
    fn waveform_shapes_and_determinism() {
        let d = generate_waveform(5000, 1, 0).unwrap();
        assert_eq!(d.sample_count(), 5000);
        assert_eq!(d.feature_count(), 40);
        assert_eq!(d.num_classes(), 3);

        let d32 = generate_waveform(5000, 1, 8).unwrap();
        assert_eq!(d32.feature_count(), 32);

        let a = generate_waveform(100, 9, 0).unwrap();
        let b = generate_waveform(100, 9, 0).unwrap();
        assert_eq!(a, b);

        // Dropping trailing features does not disturb the leading columns.
        let full = generate_waveform(50, 3, 0).unwrap();
        let cut = generate_waveform(50, 3, 8).unwrap();
        for i in 0..50 {
            for j in 0..32 {
                assert_eq!(
                    full.samples()[(i, j)].to_bits(),
                    cut.samples()[(i, j)].to_bits()
                );
            }
        }
    }

    #[test]
    fn waveform_rejects_bad_drop() {
        assert!(matches!(
            generate_waveform(10, 0, 40),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            generate_waveform(0, 0, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn waveform_class_conditional_means() {
        // E[x_i | class] = (h_a(i) + h_b(i)) / 2 for the class's wave pair;
        // checked within 3 sigma Monte Carlo bounds at 1e5 samples.
        let n = 100_000;
        let d = generate_waveform(n, 42, 0).unwrap();
        let labels = d.labels().unwrap();
        for class in 0..3 {
            let idx: Vec<usize> = (0..n).filter(|&i| labels[i] == class).collect();
            let (a, b) = class_wave_pair(class);
            for feat in 0..WAVE_LEN {
                let m = mean(idx.iter().map(|&i| d.samples()[(i, feat)]), idx.len());
                let expected = (base_wave(a, feat) + base_wave(b, feat)) / 2.0;
                // Var(x_i) = (h_a - h_b)^2 / 12 + 1 (u uniform, unit noise).
                let var = (base_wave(a, feat) - base_wave(b, feat)).powi(2) / 12.0 + 1.0;
                let sigma = (var / idx.len() as f64).sqrt();
                assert!(
                    (m - expected).abs() <= 3.0 * sigma,
                    "class {class} feature {feat}: mean {m} vs expected {expected} (3s={:.4})",
                    3.0 * sigma
                );
            }
        }
    }

    #[test]
    fn waveform_noise_features_are_standard() {
        let n = 10_000;
        let d = generate_waveform(n, 7, 0).unwrap();
        for feat in WAVE_LEN..TOTAL_FEATURES {
            let col: Vec<f64> = (0..n).map(|i| d.samples()[(i, feat)]).collect();
            let m = mean(col.iter().copied(), n);
            let var = mean(col.iter().map(|v| (v - m) * (v - m)), n);
            assert!(m.abs() < 0.05, "feature {feat} mean {m}");
            assert!((0.9..=1.1).contains(&var), "feature {feat} variance {var}");
        }
    }

    #[test]
    fn csv_roundtrip_with_labels() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        let mut f = File::create(&path).unwrap();
        writeln!(f, "1,2,0\n3,4,1\n5,6,0").unwrap();
        drop(f);

        let d = load_csv(&path, Some(2)).unwrap();
        assert_eq!(d.sample_count(), 3);
        assert_eq!(d.feature_count(), 2);
        assert_eq!(d.labels().unwrap(), &[0, 1, 0]);
        assert_eq!(d.samples()[(1, 1)], 4.0);

        let back = dir.path().join("back.csv");
        write_csv(&d, &back).unwrap();
        let d2 = load_csv(&back, Some(2)).unwrap();
        assert_eq!(d, d2);
    }

    #[test]
    fn csv_header_detection() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("h.csv");
        std::fs::write(&path, "f0,f1,label\n1.5,2.5,0\n3.5,4.5,1\n").unwrap();
        let d = load_csv(&path, Some(2)).unwrap();
        assert_eq!(d.sample_count(), 2);
        assert_eq!(d.samples()[(0, 0)], 1.5);
    }

    #[test]
    fn csv_errors() {
        let dir = tempfile::tempdir().unwrap();

        let empty = dir.path().join("empty.csv");
        std::fs::write(&empty, "").unwrap();
        assert!(matches!(load_csv(&empty, None), Err(Error::Parse { .. })));

        let ragged = dir.path().join("ragged.csv");
        std::fs::write(&ragged, "1,2\n1,2,3\n").unwrap();
        match load_csv(&ragged, None) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected width error, got {other:?}"),
        }

        let junk = dir.path().join("junk.csv");
        std::fs::write(&junk, "1,2\n1,abc\n").unwrap();
        match load_csv(&junk, None) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected cell error, got {other:?}"),
        }

        let badlabel = dir.path().join("badlabel.csv");
        std::fs::write(&badlabel, "1,2,0.5\n").unwrap();
        assert!(matches!(
            load_csv(&badlabel, Some(2)),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn split_is_an_ordered_partition() {
        let d = generate_waveform(10, 5, 0).unwrap();
        let (tr, te) = split(&d, 7).unwrap();
        assert_eq!(tr.sample_count(), 7);
        assert_eq!(te.sample_count(), 3);
        for i in 0..7 {
            assert_eq!(tr.row(i), d.row(i));
            assert_eq!(tr.labels().unwrap()[i], d.labels().unwrap()[i]);
        }
        for i in 0..3 {
            assert_eq!(te.row(i), d.row(7 + i));
            assert_eq!(te.labels().unwrap()[i], d.labels().unwrap()[7 + i]);
        }

        let two = generate_waveform(2, 5, 0).unwrap();
        let (a, b) = split(&two, 1).unwrap();
        assert_eq!((a.sample_count(), b.sample_count()), (1, 1));

        assert!(matches!(split(&d, 10), Err(Error::InvalidArgument(_))));
        assert!(matches!(split(&d, 0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn identity_mixing_returns_sources() {
        let spec = SyntheticIcaSpec::new(DMatrix::identity(2, 2), SourceDistribution::Uniform)
            .unwrap();
        let (mix, src) = generate_ica_mixture(&spec, 100, 3).unwrap();
        assert_eq!(mix.samples(), &src);
    }

    #[test]
    fn mixture_determinism() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, -0.3, 2.0]);
        let spec = SyntheticIcaSpec::new(a, SourceDistribution::Laplace).unwrap();
        let (m1, s1) = generate_ica_mixture(&spec, 1000, 11).unwrap();
        let (m2, s2) = generate_ica_mixture(&spec, 1000, 11).unwrap();
        assert_eq!(m1, m2);
        assert_eq!(s1, s2);
    }

    #[test]
    fn uniform_sources_have_expected_kurtosis() {
        // Exact excess kurtosis of a uniform distribution is -1.2; the Monte
        // Carlo estimate at 1e5 samples lands in [-1.3, -1.1].
        let spec = SyntheticIcaSpec::new(DMatrix::identity(2, 2), SourceDistribution::Uniform)
            .unwrap();
        let (_, src) = generate_ica_mixture(&spec, 100_000, 17).unwrap();
        for c in 0..2 {
            let col: Vec<f64> = (0..src.nrows()).map(|i| src[(i, c)]).collect();
            let n = col.len() as f64;
            let m = col.iter().sum::<f64>() / n;
            let m2 = col.iter().map(|v| (v - m).powi(2)).sum::<f64>() / n;
            let m4 = col.iter().map(|v| (v - m).powi(4)).sum::<f64>() / n;
            let excess = m4 / (m2 * m2) - 3.0;
            assert!(
                (-1.3..=-1.1).contains(&excess),
                "source {c} excess kurtosis {excess}"
            );
        }
    }

    #[test]
    fn sources_are_zero_mean_unit_variance() {
        for dist in [
            SourceDistribution::Uniform,
            SourceDistribution::Laplace,
            SourceDistribution::Sign,
        ] {
            let spec = SyntheticIcaSpec::new(DMatrix::identity(3, 3), dist).unwrap();
            let (_, src) = generate_ica_mixture(&spec, 50_000, 23).unwrap();
            for c in 0..3 {
                let col: Vec<f64> = (0..src.nrows()).map(|i| src[(i, c)]).collect();
                let n = col.len() as f64;
                let m = col.iter().sum::<f64>() / n;
                let var = col.iter().map(|v| (v - m).powi(2)).sum::<f64>() / n;
                assert!(m.abs() < 0.03, "{dist} mean {m}");
                assert!((var - 1.0).abs() < 0.05, "{dist} variance {var}");
            }
        }
    }

    #[test]
    fn rank_deficient_mixing_rejected() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(matches!(
            SyntheticIcaSpec::new(a, SourceDistribution::Sign),
            Err(Error::InvalidArgument(_))
        ));
    }
}
