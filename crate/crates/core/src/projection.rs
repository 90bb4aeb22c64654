//! Sparse ternary random projection.
//!
//! The projection matrix `R` has entries in {-1, 0, +1} drawn i.i.d. with
//! `P(+1) = P(-1) = 1/(2*outDim)` and `P(0) = 1 - 1/outDim`, so applying it
//! needs only additions and subtractions. The matrix is fully determined by
//! `(rows, cols, seed)` and is regenerated, never stored, when a model file
//! is loaded.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::costmodel::OpCount;
use crate::error::{Error, Result};

/// A seeded random projection matrix with entries in {-1, 0, +1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryMatrix {
    rows: usize,
    cols: usize,
    seed: u64,
    /// Row-major entries, each -1, 0, or +1.
    entries: Vec<i8>,
}

impl TernaryMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn entry(&self, row: usize, col: usize) -> i8 {
        self.entries[row * self.cols + col]
    }

    /// Number of nonzero entries (each costs one add/sub when applied).
    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|&&e| e != 0).count()
    }
}

/// Samples a ternary projection matrix for `out_dim x in_dim`.
///
/// Entries are drawn row-major from a ChaCha8 stream seeded with `seed`, so
/// the same `(out_dim, in_dim, seed)` triple always reproduces the same
/// matrix. `out_dim` plays the role of the output dimensionality in the
/// sparsity law: the expected fraction of nonzeros per row is `1/out_dim`.
pub fn sample_projection(out_dim: usize, in_dim: usize, seed: u64) -> Result<TernaryMatrix> {
    if out_dim == 0 {
        return Err(Error::InvalidArgument("out_dim must be >= 1".into()));
    }
    if out_dim > in_dim {
        return Err(Error::InvalidArgument(format!(
            "out_dim ({out_dim}) must not exceed in_dim ({in_dim})"
        )));
    }
    let threshold = 1.0 / (2.0 * out_dim as f64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::with_capacity(out_dim * in_dim);
    for _ in 0..out_dim * in_dim {
        let u: f64 = rng.random();
        entries.push(if u < threshold {
            1
        } else if u < 2.0 * threshold {
            -1
        } else {
            0
        });
    }
    Ok(TernaryMatrix {
        rows: out_dim,
        cols: in_dim,
        seed,
        entries,
    })
}

/// Projects `x` through `R` using only additions and subtractions.
///
/// Accumulation is fixed left-to-right over columns so results are
/// reproducible regardless of storage layout.
pub fn project(r: &TernaryMatrix, x: &DVector<f64>) -> Result<DVector<f64>> {
    project_scaled(r, x, 1.0)
}

/// As [`project`], multiplying each output by `scale` afterwards.
///
/// With the default `scale = 1.0` no multiplication is performed at all.
pub fn project_scaled(r: &TernaryMatrix, x: &DVector<f64>, scale: f64) -> Result<DVector<f64>> {
    project_counted(r, x, scale, &mut OpCount::default())
}

/// As [`project_scaled`], tallying every executed add/sub and multiply.
pub fn project_counted(
    r: &TernaryMatrix,
    x: &DVector<f64>,
    scale: f64,
    ops: &mut OpCount,
) -> Result<DVector<f64>> {
    if x.len() != r.cols {
        return Err(Error::InvalidArgument(format!(
            "input length {} does not match projection columns {}",
            x.len(),
            r.cols
        )));
    }
    let mut v = DVector::<f64>::zeros(r.rows);
    for i in 0..r.rows {
        let mut acc = 0.0;
        for j in 0..r.cols {
            match r.entries[i * r.cols + j] {
                1 => {
                    acc += x[j];
                    ops.add += 1;
                }
                -1 => {
                    acc -= x[j];
                    ops.add += 1;
                }
                _ => {}
            }
        }
        if scale != 1.0 {
            acc *= scale;
            ops.mul += 1;
        }
        v[i] = acc;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn out_dim_one_is_dense_signs() {
        let r = sample_projection(1, 2000, 4).unwrap();
        assert!(r.entries.iter().all(|&e| e == 1 || e == -1));
        let plus = r.entries.iter().filter(|&&e| e == 1).count() as f64 / 2000.0;
        assert!((plus - 0.5).abs() < 0.05, "plus fraction {plus}");
    }

    #[test]
    fn nonzero_fraction_matches_distribution() {
        // out_dim = 2 gives an expected nonzero fraction of 1/2; a binomial
        // over 2 * 1e4 entries stays within [0.47, 0.53] with huge margin.
        let r = sample_projection(2, 10_000, 123).unwrap();
        let frac = r.nonzero_count() as f64 / (2.0 * 10_000.0);
        assert!((0.47..=0.53).contains(&frac), "nonzero fraction {frac}");
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_projection(8, 64, 99).unwrap();
        let b = sample_projection(8, 64, 99).unwrap();
        assert_eq!(a, b);
        let c = sample_projection(8, 64, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn dimension_constraints() {
        assert!(matches!(
            sample_projection(10, 5, 0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            sample_projection(0, 5, 0),
            Err(Error::InvalidArgument(_))
        ));
        let r = sample_projection(2, 3, 0).unwrap();
        let x = DVector::from_vec(vec![1.0, 2.0]);
        assert!(matches!(project(&r, &x), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn basis_rows_select_coordinates() {
        let mut r = sample_projection(2, 4, 0).unwrap();
        r.entries = vec![0, 1, 0, 0, 0, 0, 0, 1];
        let x = DVector::from_vec(vec![10.0, 20.0, 30.0, 40.0]);
        let v = project(&r, &x).unwrap();
        assert_eq!(v.as_slice(), &[20.0, 40.0]);
    }

    #[test]
    fn zero_input_projects_to_zero() {
        let r = sample_projection(4, 16, 5).unwrap();
        let v = project(&r, &DVector::zeros(16)).unwrap();
        assert!(v.iter().all(|&e| e == 0.0));
    }

    #[test]
    fn hand_computed_product() {
        let mut r = sample_projection(2, 3, 0).unwrap();
        r.entries = vec![1, -1, 0, 0, 1, 1];
        let x = DVector::from_vec(vec![1.0, 2.0, 3.0]);
        let v = project(&r, &x).unwrap();
        assert_eq!(v.as_slice(), &[-1.0, 5.0]);
    }

    #[test]
    fn counted_ops_match_nonzeros() {
        let r = sample_projection(4, 32, 21).unwrap();
        let x = DVector::from_fn(32, |i, _| i as f64 * 0.25 - 3.0);
        let mut ops = OpCount::default();
        project_counted(&r, &x, 1.0, &mut ops).unwrap();
        assert_eq!(ops.add as usize, r.nonzero_count());
        assert_eq!(ops.mul, 0);

        let mut ops = OpCount::default();
        project_counted(&r, &x, 0.5, &mut ops).unwrap();
        assert_eq!(ops.mul, 4);
    }

    #[test]
    fn reference_add_sub_accumulation_is_bit_identical() {
        // Instrumented reference: pure +/- accumulation in the same
        // left-to-right order, no multiplies anywhere.
        let r = sample_projection(6, 48, 77).unwrap();
        let x = DVector::from_fn(48, |i, _| ((i * 37 % 19) as f64 - 9.0) * 0.125);
        let v = project(&r, &x).unwrap();
        for i in 0..r.rows() {
            let mut acc = 0.0f64;
            for j in 0..r.cols() {
                match r.entry(i, j) {
                    1 => acc += x[j],
                    -1 => acc -= x[j],
                    _ => {}
                }
            }
            assert_eq!(acc.to_bits(), v[i].to_bits(), "row {i}");
        }
    }
}
