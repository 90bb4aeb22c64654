//! Streaming dimensionality reduction.
//!
//! This crate implements three linear dimensionality-reduction algorithms that
//! share one adaptive datapath:
//!
//! - **Sparse ternary random projection** ([`projection`]): a seeded matrix
//!   with entries in {-1, 0, +1}, applied with additions and subtractions only.
//! - **Adaptive PCA whitening** ([`easi`] in second-order mode): the serial
//!   update `W <- W - mu (y y^T - I) W` that drives the output covariance to
//!   the identity.
//! - **EASI source separation** ([`easi`] with both terms): the whitening term
//!   plus an antisymmetric higher-order term built from a cubic nonlinearity.
//!
//! The [`pipeline`] module composes them behind one fit/transform interface
//! with four modes (`rp`, `pca`, `ica`, `rp+ica`); in `rp+ica` mode the
//! projection stage replaces the second-order term and the adaptive stage runs
//! rotation-only. [`costmodel`] prices each mode in word-level multiplier,
//! adder, and register counts, and [`evaluation`] provides a small MLP
//! classifier plus whiteness and separation diagnostics for end-to-end runs.
//! [`harness`] wires everything into the reproducible benchmark reports used
//! by the CLI.

pub mod costmodel;
pub mod data;
pub mod easi;
pub mod error;
pub mod evaluation;
pub mod harness;
pub mod pipeline;
pub mod projection;
pub mod seed;

pub use error::{Error, Result};
