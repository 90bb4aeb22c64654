//! Analytical hardware cost model.
//!
//! Prices each pipeline mode in word-level operation counts: one multiplier
//! or adder per scalar multiply or add/sub executed per training sample, one
//! 32-bit register word per stored or latched scalar. The per-stage formulas
//! below are defined to match the software kernels operation for operation,
//! so the runtime [`OpCount`] tally from an instrumented update equals the
//! model's stage sums exactly. No DSP-block packing or logic-cell mapping is
//! attempted; comparisons against synthesized designs are meaningful on
//! ratios between configurations only.
//!
//! Stage formulas, with `n` the output dim and `d` the adaptive stage's input
//! dim (`m`, or `p` after a projection):
//!
//! | stage        | multipliers | adders            |
//! |--------------|-------------|-------------------|
//! | projection   | 0           | `m` (expected)    |
//! | forward      | `n d`       | `n (d-1)`         |
//! | nonlinearity | `2 n`       | 0                 |
//! | bracket      | `n^2` per enabled term | `n` (identity), `n^2` (antisym), `n^2` (merge) |
//! | product      | `n^2 d`     | `n (n-1) d`       |
//! | update       | `n d`       | `n d`             |
//!
//! The projection stage's adder count is the expected number of nonzero
//! matrix entries (`p m * 1/p = m`); its scaling multiplier is not modeled
//! (the default scale of 1 performs no multiplies).
//!
//! Register words: stored values (`B`: `n d`, `H`: `n^2`, `y` and, when the
//! higher-order term is active, `g(y)`: `n` each, projection metadata: 3)
//! plus one latch word per scalar crossing a stage boundary (`y`, `g(y)`,
//! `H`, `H B`, `B'`, and the projected vector for projection modes).

use crate::error::{Error, Result};
use crate::pipeline::Mode;

/// Running tally of executed scalar operations.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct OpCount {
    /// Multiplications (and divisions, which cost a multiplier).
    pub mul: u64,
    /// Additions and subtractions.
    pub add: u64,
}

impl OpCount {
    pub fn total(&self) -> u64 {
        self.mul + self.add
    }
}

impl std::ops::Add for OpCount {
    type Output = OpCount;
    fn add(self, rhs: OpCount) -> OpCount {
        OpCount {
            mul: self.mul + rhs.mul,
            add: self.add + rhs.add,
        }
    }
}

/// Operation counts for one named datapath stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageCost {
    pub stage: &'static str,
    pub multipliers: u64,
    pub adders: u64,
}

/// Word-level resource estimate for one pipeline configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ResourceEstimate {
    pub mode: Mode,
    pub m: usize,
    pub p: Option<usize>,
    pub n: usize,
    /// Totals over all stages.
    pub multipliers: u64,
    pub adders: u64,
    /// 32-bit register words (stored values plus stage-boundary latches).
    pub registers: u64,
    pub per_stage: Vec<StageCost>,
}

impl ResourceEstimate {
    /// Register bits at the modeled 32-bit word width.
    pub fn register_bits(&self) -> u64 {
        32 * self.registers
    }

    /// Aligned-text rendering for terminal output.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let p = self.p.map_or("-".to_string(), |p| p.to_string());
        out.push_str(&format!(
            "mode={} m={} p={} n={}\n",
            self.mode, self.m, p, self.n
        ));
        out.push_str(&format!(
            "{:<14} {:>12} {:>12}\n",
            "stage", "multipliers", "adders"
        ));
        for s in &self.per_stage {
            out.push_str(&format!(
                "{:<14} {:>12} {:>12}\n",
                s.stage, s.multipliers, s.adders
            ));
        }
        out.push_str(&format!(
            "{:<14} {:>12} {:>12}\n",
            "total", self.multipliers, self.adders
        ));
        out.push_str(&format!(
            "registers: {} words ({} bits at 32-bit width)\n",
            self.registers,
            self.register_bits()
        ));
        out
    }

    /// One TSV row: mode, m, p, n, multipliers, adders, register words.
    pub fn to_tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.mode,
            self.m,
            self.p.map_or("-".to_string(), |p| p.to_string()),
            self.n,
            self.multipliers,
            self.adders,
            self.registers
        )
    }

    pub fn tsv_header() -> &'static str {
        "mode\tm\tp\tn\tmultipliers\tadders\tregisters"
    }
}

/// Per-sample resource estimate for a pipeline mode at the given dimensions.
pub fn estimate_resources(mode: Mode, m: usize, p: Option<usize>, n: usize) -> Result<ResourceEstimate> {
    validate_dims(mode, m, p, n)?;

    let mut per_stage = Vec::new();
    let mut registers: u64 = 0;

    // Projection stage.
    if matches!(mode, Mode::Rp | Mode::RpThenIca) {
        let p_val = p.expect("validated") as u64;
        per_stage.push(StageCost {
            stage: "projection",
            multipliers: 0,
            adders: m as u64,
        });
        // Matrix metadata (rows, cols, seed) plus the projected-vector latch.
        registers += 3 + p_val;
    }

    // Adaptive stages.
    if mode != Mode::Rp {
        let n = n as u64;
        let d = match mode {
            Mode::RpThenIca => p.expect("validated") as u64,
            _ => m as u64,
        };
        let (second, higher) = match mode {
            Mode::PcaWhiten => (true, false),
            Mode::Ica => (true, true),
            Mode::RpThenIca => (false, true),
            Mode::Rp => unreachable!(),
        };

        per_stage.push(StageCost {
            stage: "forward",
            multipliers: n * d,
            adders: n * (d - 1),
        });
        if higher {
            per_stage.push(StageCost {
                stage: "nonlinearity",
                multipliers: 2 * n,
                adders: 0,
            });
        }
        let mut bracket_mul = 0;
        let mut bracket_add = 0;
        if second {
            bracket_mul += n * n;
            bracket_add += n; // identity subtraction on the diagonal
        }
        if higher {
            bracket_mul += n * n;
            bracket_add += n * n; // structural antisymmetrization
        }
        if second && higher {
            bracket_add += n * n; // merging the two terms
        }
        per_stage.push(StageCost {
            stage: "bracket",
            multipliers: bracket_mul,
            adders: bracket_add,
        });
        per_stage.push(StageCost {
            stage: "product",
            multipliers: n * n * d,
            adders: n * (n - 1) * d,
        });
        per_stage.push(StageCost {
            stage: "update",
            multipliers: n * d,
            adders: n * d,
        });

        // Stored values.
        registers += n * d + n * n + n; // B, H, y
        if higher {
            registers += n; // g(y)
        }
        // Stage-boundary latches.
        registers += n; // y
        if higher {
            registers += n; // g(y)
        }
        registers += n * n; // H
        registers += n * d; // H B
        registers += n * d; // B'
    }

    let multipliers = per_stage.iter().map(|s| s.multipliers).sum();
    let adders = per_stage.iter().map(|s| s.adders).sum();
    Ok(ResourceEstimate {
        mode,
        m,
        p,
        n,
        multipliers,
        adders,
        registers,
        per_stage,
    })
}

/// The predicted resource-savings factor of projecting `m` inputs down to
/// `p` before the adaptive stage: `m / p` (dominant-term ratio).
pub fn savings_ratio(m: usize, p: usize) -> Result<f64> {
    if p == 0 || m < p {
        return Err(Error::InvalidArgument(format!(
            "need m >= p >= 1, got m={m}, p={p}"
        )));
    }
    Ok(m as f64 / p as f64)
}

fn validate_dims(mode: Mode, m: usize, p: Option<usize>, n: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("dimensions must be >= 1".into()));
    }
    match mode {
        Mode::Rp => {
            let p = p.ok_or_else(|| {
                Error::InvalidArgument("rp mode requires an intermediate dimension".into())
            })?;
            if p > m || n != p {
                return Err(Error::InvalidArgument(format!(
                    "rp mode needs m >= p and n == p, got m={m}, p={p}, n={n}"
                )));
            }
        }
        Mode::RpThenIca => {
            let p = p.ok_or_else(|| {
                Error::InvalidArgument("rp+ica mode requires an intermediate dimension".into())
            })?;
            if !(m >= p && p >= n) {
                return Err(Error::InvalidArgument(format!(
                    "rp+ica mode needs m >= p >= n, got m={m}, p={p}, n={n}"
                )));
            }
        }
        Mode::PcaWhiten | Mode::Ica => {
            if p.is_some() {
                return Err(Error::InvalidArgument(format!(
                    "{mode} mode takes no intermediate dimension"
                )));
            }
            if n > m {
                return Err(Error::InvalidArgument(format!(
                    "need n <= m, got m={m}, n={n}"
                )));
            }
        }
    }
    Ok(())
}
