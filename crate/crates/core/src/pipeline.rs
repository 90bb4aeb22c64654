//! Reconfigurable reduction pipeline: mode selection, fit/transform
//! lifecycle, and model persistence.
//!
//! Four modes share the datapath. `rp` samples a ternary projection and does
//! no training; `pca` and `ica` run the adaptive update directly on the
//! input features (with the mode's forced term flags); `rp+ica` projects to
//! an intermediate dimension `p` first and then runs the adaptive stage
//! rotation-only, its second-order term bypassed.
//!
//! # Model file grammar (schema 1)
//!
//! A fitted pipeline serializes to a line-oriented text file, keys in fixed
//! order, full-precision decimals:
//!
//! ```text
//! schema=1
//! mode=rp+ica            # rp | pca | ica | rp+ica
//! m=32                   # input dimension
//! p=16                   # intermediate dimension, '-' when absent
//! n=8                    # output dimension
//! rp_seed=99             # projection seed, '-' when absent
//! rp_rows=16             # echoed projection shape, '-' when absent
//! rp_cols=32             # must equal m; '-' when absent
//! rp_scale=1.0           # post-projection scale factor
//! standardize=false
//! mean=...               # m decimals, only when standardize=true
//! std=...                # m decimals, only when standardize=true
//! B=                     # adaptive matrix header, absent in rp mode
//! <row 0: d decimals separated by spaces>
//! ...                    # n rows, d = p (rp+ica) or m (pca, ica)
//! ```
//!
//! Projection entries are regenerated from `(rp_rows, rp_cols, rp_seed)`,
//! never stored. `B` round-trips bit-exactly.

use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, DVector};

use crate::costmodel::OpCount;
use crate::data::Dataset;
use crate::easi::{self, EasiConfig, SampleSource, SeparationMatrix, TrainTrace};
use crate::error::{Error, Result};
use crate::projection::{self, TernaryMatrix};

/// Pipeline operating mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Random projection only.
    Rp,
    /// Adaptive whitening (second-order term only).
    PcaWhiten,
    /// Full separation (both terms).
    Ica,
    /// Random projection followed by the rotation-only adaptive stage.
    RpThenIca,
}

pub const ALL_MODES: [Mode; 4] = [Mode::Rp, Mode::PcaWhiten, Mode::Ica, Mode::RpThenIca];

impl Mode {
    /// Term flags forced by the mode (`None` when the adaptive stage is
    /// unused).
    pub fn forced_terms(self) -> Option<(bool, bool)> {
        match self {
            Mode::Rp => None,
            Mode::PcaWhiten => Some((true, false)),
            Mode::Ica => Some((true, true)),
            Mode::RpThenIca => Some((false, true)),
        }
    }

    pub fn uses_projection(self) -> bool {
        matches!(self, Mode::Rp | Mode::RpThenIca)
    }

    pub fn uses_separation(self) -> bool {
        !matches!(self, Mode::Rp)
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Mode::Rp => "rp",
            Mode::PcaWhiten => "pca",
            Mode::Ica => "ica",
            Mode::RpThenIca => "rp+ica",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rp" => Ok(Mode::Rp),
            "pca" => Ok(Mode::PcaWhiten),
            "ica" => Ok(Mode::Ica),
            "rp+ica" => Ok(Mode::RpThenIca),
            other => Err(Error::InvalidArgument(format!(
                "unknown mode {other:?} (expected rp, pca, ica, or rp+ica)"
            ))),
        }
    }
}

/// Full pipeline configuration.
///
/// The adaptive term flags are a function of the mode; [`PipelineConfig::new`]
/// forces them and [`PipelineConfig::validate`] rejects configurations where
/// they were overridden inconsistently.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub mode: Mode,
    /// Input dimension `m`.
    pub input_dim: usize,
    /// Intermediate dimension `p` (projection modes only).
    pub intermediate_dim: Option<usize>,
    /// Output dimension `n`.
    pub output_dim: usize,
    pub rp_seed: u64,
    /// Scale applied after the projection stage; 1.0 performs no multiply.
    pub rp_scale: f64,
    pub easi: EasiConfig,
    /// Standardize features to zero mean, unit variance using training-set
    /// statistics before any reduction stage.
    pub standardize_input: bool,
    /// Materialize projected training samples once instead of recomputing
    /// them every epoch. Results are identical either way.
    pub cache_projected: bool,
}

impl PipelineConfig {
    /// Builds a configuration with the mode's forced term flags applied.
    pub fn new(
        mode: Mode,
        input_dim: usize,
        intermediate_dim: Option<usize>,
        output_dim: usize,
        rp_seed: u64,
        mut easi: EasiConfig,
        standardize_input: bool,
    ) -> Self {
        if let Some((second, higher)) = mode.forced_terms() {
            easi.include_second_order = second;
            easi.include_higher_order = higher;
        }
        Self {
            mode,
            input_dim,
            intermediate_dim,
            output_dim,
            rp_seed,
            rp_scale: 1.0,
            easi,
            standardize_input,
            cache_projected: false,
        }
    }

    /// The adaptive stage's input dimension (`p` after a projection, else `m`).
    pub fn easi_input_dim(&self) -> usize {
        match self.mode {
            Mode::RpThenIca => self.intermediate_dim.unwrap_or(self.input_dim),
            _ => self.input_dim,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (m, n) = (self.input_dim, self.output_dim);
        if m == 0 || n == 0 {
            return Err(Error::Config("dimensions must be >= 1".into()));
        }
        match self.mode {
            Mode::Rp => {
                let p = self.intermediate_dim.ok_or_else(|| {
                    Error::Config("rp mode requires an intermediate dimension".into())
                })?;
                if p > m {
                    return Err(Error::Config(format!("need m >= p, got m={m}, p={p}")));
                }
                if n != p {
                    return Err(Error::Config(format!(
                        "rp mode output equals the projection size; need n == p, got n={n}, p={p}"
                    )));
                }
            }
            Mode::RpThenIca => {
                let p = self.intermediate_dim.ok_or_else(|| {
                    Error::Config("rp+ica mode requires an intermediate dimension".into())
                })?;
                if !(m >= p && p >= n) {
                    return Err(Error::Config(format!(
                        "need m >= p >= n, got m={m}, p={p}, n={n}"
                    )));
                }
            }
            Mode::PcaWhiten | Mode::Ica => {
                if self.intermediate_dim.is_some() {
                    return Err(Error::Config(format!(
                        "{} mode takes no intermediate dimension",
                        self.mode
                    )));
                }
                if n > m {
                    return Err(Error::Config(format!("need n <= m, got m={m}, n={n}")));
                }
            }
        }
        if !(self.rp_scale > 0.0) || !self.rp_scale.is_finite() {
            return Err(Error::Config(format!(
                "rp_scale must be a positive finite real, got {}",
                self.rp_scale
            )));
        }
        if let Some((second, higher)) = self.mode.forced_terms() {
            if self.easi.include_second_order != second
                || self.easi.include_higher_order != higher
            {
                return Err(Error::Config(format!(
                    "{} mode forces term flags (second={second}, higher={higher})",
                    self.mode
                )));
            }
            self.easi.validate()?;
        }
        Ok(())
    }
}

/// Per-feature affine standardization fitted on training data.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardizer {
    mean: DVector<f64>,
    std: DVector<f64>,
}

impl Standardizer {
    /// Population statistics per feature; near-constant features get a unit
    /// divisor so they center to zero instead of exploding.
    pub fn fit(data: &Dataset) -> Self {
        let n = data.sample_count() as f64;
        let m = data.feature_count();
        let mut mean = DVector::<f64>::zeros(m);
        for j in 0..m {
            mean[j] = data.samples().column(j).sum() / n;
        }
        let mut std = DVector::<f64>::zeros(m);
        for j in 0..m {
            let var = data
                .samples()
                .column(j)
                .iter()
                .map(|v| (v - mean[j]) * (v - mean[j]))
                .sum::<f64>()
                / n;
            let s = var.sqrt();
            std[j] = if s < 1e-12 { 1.0 } else { s };
        }
        Self { mean, std }
    }

    pub fn from_parts(mean: DVector<f64>, std: DVector<f64>) -> Result<Self> {
        if mean.len() != std.len() {
            return Err(Error::InvalidArgument(
                "mean and std must have equal length".into(),
            ));
        }
        if std.iter().any(|&s| !(s > 0.0) || !s.is_finite()) {
            return Err(Error::InvalidArgument(
                "std entries must be positive finite reals".into(),
            ));
        }
        Ok(Self { mean, std })
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn std(&self) -> &DVector<f64> {
        &self.std
    }

    fn apply_counted(&self, x: &DVector<f64>, ops: &mut OpCount) -> DVector<f64> {
        let mut out = DVector::zeros(x.len());
        for i in 0..x.len() {
            out[i] = (x[i] - self.mean[i]) / self.std[i];
            ops.add += 1;
            ops.mul += 1;
        }
        out
    }
}

/// A trained pipeline: configuration plus whichever components the mode
/// requires. Immutable after [`fit`].
#[derive(Debug, Clone, PartialEq)]
pub struct FittedPipeline {
    config: PipelineConfig,
    projection: Option<TernaryMatrix>,
    separation: Option<SeparationMatrix>,
    trace: Option<TrainTrace>,
    standardizer: Option<Standardizer>,
}

// Training-sample adapters.

struct PreparedSource<'a> {
    data: &'a Dataset,
    standardizer: Option<&'a Standardizer>,
}

impl SampleSource for PreparedSource<'_> {
    fn len(&self) -> usize {
        self.data.sample_count()
    }

    fn dim(&self) -> usize {
        self.data.feature_count()
    }

    fn sample(&self, idx: usize) -> DVector<f64> {
        let x = self.data.row(idx);
        match self.standardizer {
            Some(s) => s.apply_counted(&x, &mut OpCount::default()),
            None => x,
        }
    }
}

struct ProjectedSource<'a> {
    inner: PreparedSource<'a>,
    matrix: &'a TernaryMatrix,
    scale: f64,
}

impl SampleSource for ProjectedSource<'_> {
    fn len(&self) -> usize {
        self.inner.len()
    }

    fn dim(&self) -> usize {
        self.matrix.rows()
    }

    fn sample(&self, idx: usize) -> DVector<f64> {
        projection::project_scaled(self.matrix, &self.inner.sample(idx), self.scale)
            .expect("projection dimensions validated at fit time")
    }
}

struct VecSource {
    samples: Vec<DVector<f64>>,
}

impl SampleSource for VecSource {
    fn len(&self) -> usize {
        self.samples.len()
    }

    fn dim(&self) -> usize {
        self.samples[0].len()
    }

    fn sample(&self, idx: usize) -> DVector<f64> {
        self.samples[idx].clone()
    }
}

/// Fits a pipeline on training data.
pub fn fit(config: PipelineConfig, train: &Dataset) -> Result<FittedPipeline> {
    config.validate()?;
    if train.feature_count() != config.input_dim {
        return Err(Error::Config(format!(
            "training data has {} features but the pipeline expects {}",
            train.feature_count(),
            config.input_dim
        )));
    }
    if train.sample_count() == 0 {
        return Err(Error::Config("training data is empty".into()));
    }

    let standardizer = config.standardize_input.then(|| Standardizer::fit(train));
    let prepared = PreparedSource {
        data: train,
        standardizer: standardizer.as_ref(),
    };

    let mut projection_matrix = None;
    let mut separation = None;
    let mut trace = None;

    match config.mode {
        Mode::Rp => {
            let p = config.intermediate_dim.expect("validated");
            projection_matrix = Some(projection::sample_projection(
                p,
                config.input_dim,
                config.rp_seed,
            )?);
        }
        Mode::PcaWhiten | Mode::Ica => {
            let (b, t) = easi::train(&prepared, config.output_dim, &config.easi)?;
            separation = Some(b);
            trace = Some(t);
        }
        Mode::RpThenIca => {
            let p = config.intermediate_dim.expect("validated");
            let r = projection::sample_projection(p, config.input_dim, config.rp_seed)?;
            let projected = ProjectedSource {
                inner: prepared,
                matrix: &r,
                scale: config.rp_scale,
            };
            let (b, t) = if config.cache_projected {
                let samples: Vec<DVector<f64>> =
                    (0..projected.len()).map(|i| projected.sample(i)).collect();
                easi::train(&VecSource { samples }, config.output_dim, &config.easi)?
            } else {
                easi::train(&projected, config.output_dim, &config.easi)?
            };
            projection_matrix = Some(r);
            separation = Some(b);
            trace = Some(t);
        }
    }

    Ok(FittedPipeline {
        config,
        projection: projection_matrix,
        separation,
        trace,
        standardizer,
    })
}

impl FittedPipeline {
    pub fn config(&self) -> &PipelineConfig {
        &self.config
    }

    pub fn projection(&self) -> Option<&TernaryMatrix> {
        self.projection.as_ref()
    }

    pub fn separation(&self) -> Option<&SeparationMatrix> {
        self.separation.as_ref()
    }

    pub fn trace(&self) -> Option<&TrainTrace> {
        self.trace.as_ref()
    }

    pub fn standardizer(&self) -> Option<&Standardizer> {
        self.standardizer.as_ref()
    }

    pub fn input_dim(&self) -> usize {
        self.config.input_dim
    }

    pub fn output_dim(&self) -> usize {
        self.config.output_dim
    }

    /// Maps one input vector to the reduced space. Pure inference path.
    pub fn transform(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        self.transform_counted(x, &mut OpCount::default())
    }

    /// As [`FittedPipeline::transform`], tallying executed operations.
    pub fn transform_counted(&self, x: &DVector<f64>, ops: &mut OpCount) -> Result<DVector<f64>> {
        if x.len() != self.config.input_dim {
            return Err(Error::InvalidArgument(format!(
                "input length {} does not match pipeline input dim {}",
                x.len(),
                self.config.input_dim
            )));
        }
        let x = match &self.standardizer {
            Some(s) => s.apply_counted(x, ops),
            None => x.clone(),
        };
        match self.config.mode {
            Mode::Rp => {
                let r = self.projection.as_ref().expect("rp mode has a projection");
                projection::project_counted(r, &x, self.config.rp_scale, ops)
            }
            Mode::PcaWhiten | Mode::Ica => {
                let b = self.separation.as_ref().expect("adaptive mode has B");
                Ok(easi::kernel::forward(b.values(), &x, ops))
            }
            Mode::RpThenIca => {
                let r = self.projection.as_ref().expect("rp+ica mode has a projection");
                let b = self.separation.as_ref().expect("rp+ica mode has B");
                let v = projection::project_counted(r, &x, self.config.rp_scale, ops)?;
                Ok(easi::kernel::forward(b.values(), &v, ops))
            }
        }
    }

    /// Transforms every row of a dataset, keeping labels.
    pub fn transform_dataset(&self, data: &Dataset) -> Result<Dataset> {
        let n = data.sample_count();
        let mut out = DMatrix::<f64>::zeros(n, self.output_dim());
        for i in 0..n {
            let v = self.transform(&data.row(i))?;
            out.row_mut(i).copy_from(&v.transpose());
        }
        data.with_samples(out)
    }

    /// The pipeline's linear map as a dense `n x m` matrix (standardizer
    /// scaling included, its mean offset ignored).
    pub fn effective_linear_map(&self) -> DMatrix<f64> {
        let m = self.config.input_dim;
        let mut map = DMatrix::<f64>::identity(m, m);
        if let Some(s) = &self.standardizer {
            for j in 0..m {
                map[(j, j)] = 1.0 / s.std()[j];
            }
        }
        if let Some(r) = &self.projection {
            let mut dense = DMatrix::<f64>::zeros(r.rows(), r.cols());
            for i in 0..r.rows() {
                for j in 0..r.cols() {
                    dense[(i, j)] = f64::from(r.entry(i, j)) * self.config.rp_scale;
                }
            }
            map = dense * map;
        }
        if let Some(b) = &self.separation {
            map = b.values() * map;
        }
        map
    }

    // -- persistence --------------------------------------------------------

    /// Writes the model file (schema 1, see the module docs for the grammar).
    pub fn save<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let mut out = String::new();
        out.push_str("schema=1\n");
        out.push_str(&format!("mode={}\n", self.config.mode));
        out.push_str(&format!("m={}\n", self.config.input_dim));
        out.push_str(&format!("p={}\n", opt_num(self.config.intermediate_dim)));
        out.push_str(&format!("n={}\n", self.config.output_dim));
        match &self.projection {
            Some(r) => {
                out.push_str(&format!("rp_seed={}\n", r.seed()));
                out.push_str(&format!("rp_rows={}\n", r.rows()));
                out.push_str(&format!("rp_cols={}\n", r.cols()));
            }
            None => {
                out.push_str("rp_seed=-\nrp_rows=-\nrp_cols=-\n");
            }
        }
        out.push_str(&format!("rp_scale={:?}\n", self.config.rp_scale));
        out.push_str(&format!("standardize={}\n", self.config.standardize_input));
        if let Some(s) = &self.standardizer {
            out.push_str(&format!("mean={}\n", join_decimals(s.mean())));
            out.push_str(&format!("std={}\n", join_decimals(s.std())));
        }
        if let Some(b) = &self.separation {
            out.push_str("B=\n");
            for i in 0..b.output_dim() {
                let row: Vec<String> = (0..b.input_dim())
                    .map(|j| format!("{:?}", b.values()[(i, j)]))
                    .collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        fs::write(path, out)?;
        Ok(())
    }

    /// Reads and validates a model file, regenerating the projection matrix
    /// from its seed.
    pub fn load<P: AsRef<Path>>(path: P) -> Result<FittedPipeline> {
        let text = fs::read_to_string(path)?;
        let mut lines = text.lines();

        let schema = expect_kv(&mut lines, "schema")?;
        if schema != "1" {
            return Err(Error::ModelFormat(format!(
                "unsupported schema version {schema:?}"
            )));
        }
        let mode: Mode = expect_kv(&mut lines, "mode")?
            .parse()
            .map_err(|e| Error::ModelFormat(format!("{e}")))?;
        let m: usize = parse_num(&expect_kv(&mut lines, "m")?, "m")?;
        let p: Option<usize> = parse_opt_num(&expect_kv(&mut lines, "p")?, "p")?;
        let n: usize = parse_num(&expect_kv(&mut lines, "n")?, "n")?;
        let rp_seed: Option<u64> = parse_opt_num(&expect_kv(&mut lines, "rp_seed")?, "rp_seed")?;
        let rp_rows: Option<usize> = parse_opt_num(&expect_kv(&mut lines, "rp_rows")?, "rp_rows")?;
        let rp_cols: Option<usize> = parse_opt_num(&expect_kv(&mut lines, "rp_cols")?, "rp_cols")?;
        let rp_scale: f64 = expect_kv(&mut lines, "rp_scale")?
            .parse()
            .map_err(|_| Error::ModelFormat("rp_scale is not a decimal".into()))?;
        let standardize = match expect_kv(&mut lines, "standardize")?.as_str() {
            "true" => true,
            "false" => false,
            other => {
                return Err(Error::ModelFormat(format!(
                    "standardize must be true or false, got {other:?}"
                )))
            }
        };

        let standardizer = if standardize {
            let mean = parse_decimals(&expect_kv(&mut lines, "mean")?, m, "mean")?;
            let std = parse_decimals(&expect_kv(&mut lines, "std")?, m, "std")?;
            Some(Standardizer::from_parts(mean, std).map_err(|e| Error::ModelFormat(e.to_string()))?)
        } else {
            None
        };

        // Projection consistency.
        let projection = if mode.uses_projection() {
            let (Some(p), Some(seed), Some(rows), Some(cols)) = (p, rp_seed, rp_rows, rp_cols)
            else {
                return Err(Error::ModelFormat(format!(
                    "{mode} mode requires p, rp_seed, rp_rows, rp_cols"
                )));
            };
            if rows != p {
                return Err(Error::ModelFormat(format!(
                    "rp_rows ({rows}) does not match p ({p})"
                )));
            }
            if cols != m {
                return Err(Error::ModelFormat(format!(
                    "m ({m}) does not match projection columns ({cols})"
                )));
            }
            Some(
                projection::sample_projection(p, m, seed)
                    .map_err(|e| Error::ModelFormat(e.to_string()))?,
            )
        } else {
            if p.is_some() || rp_seed.is_some() || rp_rows.is_some() || rp_cols.is_some() {
                return Err(Error::ModelFormat(format!(
                    "{mode} mode must leave projection fields as '-'"
                )));
            }
            None
        };

        // Adaptive matrix.
        let separation = if mode.uses_separation() {
            let d = if mode == Mode::RpThenIca {
                p.expect("checked above")
            } else {
                m
            };
            match lines.next() {
                Some("B=") => {}
                other => {
                    return Err(Error::ModelFormat(format!(
                        "{mode} mode requires a B= section, found {other:?}"
                    )))
                }
            }
            let mut values = DMatrix::<f64>::zeros(n, d);
            for i in 0..n {
                let line = lines.next().ok_or_else(|| {
                    Error::ModelFormat(format!("B row {i} missing (expected {n} rows)"))
                })?;
                let row = parse_decimals(line, d, &format!("B row {i}"))?;
                values.row_mut(i).copy_from(&row.transpose());
            }
            Some(
                SeparationMatrix::from_matrix(values)
                    .map_err(|e| Error::ModelFormat(e.to_string()))?,
            )
        } else {
            None
        };

        if let Some(extra) = lines.next() {
            if !extra.trim().is_empty() {
                return Err(Error::ModelFormat(format!(
                    "unexpected trailing content: {extra:?}"
                )));
            }
        }

        let mut easi = EasiConfig::default();
        if let Some((second, higher)) = mode.forced_terms() {
            easi.include_second_order = second;
            easi.include_higher_order = higher;
        }
        let config = PipelineConfig {
            mode,
            input_dim: m,
            intermediate_dim: p,
            output_dim: n,
            rp_seed: rp_seed.unwrap_or(0),
            rp_scale,
            easi,
            standardize_input: standardize,
            cache_projected: false,
        };
        config.validate().map_err(|e| Error::ModelFormat(e.to_string()))?;

        Ok(FittedPipeline {
            config,
            projection,
            separation,
            trace: None,
            standardizer,
        })
    }
}

fn opt_num<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or("-".to_string(), |v| v.to_string())
}

fn join_decimals(v: &DVector<f64>) -> String {
    v.iter()
        .map(|x| format!("{x:?}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn expect_kv<'a>(lines: &mut std::str::Lines<'a>, key: &str) -> Result<String> {
    let line = lines
        .next()
        .ok_or_else(|| Error::ModelFormat(format!("missing {key}= line")))?;
    let (k, v) = line
        .split_once('=')
        .ok_or_else(|| Error::ModelFormat(format!("expected {key}=..., found {line:?}")))?;
    if k != key {
        return Err(Error::ModelFormat(format!(
            "expected {key}= line, found {k:?}"
        )));
    }
    Ok(v.to_string())
}

fn parse_num<T: std::str::FromStr>(value: &str, key: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::ModelFormat(format!("{key} is not a valid number: {value:?}")))
}

fn parse_opt_num<T: std::str::FromStr>(value: &str, key: &str) -> Result<Option<T>> {
    if value == "-" {
        Ok(None)
    } else {
        parse_num(value, key).map(Some)
    }
}

fn parse_decimals(line: &str, expected: usize, what: &str) -> Result<DVector<f64>> {
    let values: Vec<f64> = line
        .split_whitespace()
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| Error::ModelFormat(format!("{what}: bad decimal {t:?}")))
        })
        .collect::<Result<_>>()?;
    if values.len() != expected {
        return Err(Error::ModelFormat(format!(
            "{what}: expected {expected} values, found {}",
            values.len()
        )));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::ModelFormat(format!("{what}: non-finite value")));
    }
    Ok(DVector::from_vec(values))
}
