//! Learning k-space undersampling masks as a budget-constrained Bernoulli
//! distribution.
//!
//! Every k-space element carries an independent sampling probability. Masks
//! are drawn through a relaxed Gumbel construction with straight-through
//! binarization, reconstructions are zero-filled inverse Fourier transforms,
//! and the probabilities are trained with Adam followed by a Euclidean
//! projection onto `{θ ∈ [0,1]^D : Σθ ≤ S}` while the budget `S` is annealed
//! from `D` down to `⌊D/α⌋`.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the
//! command-line tool live in `prom-cli`.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod error;
pub mod fft;
pub mod kspace;
pub mod mask;
pub mod metrics;
pub mod optim;
pub mod phantom;
mod rng;

pub use error::{Error, Result};
pub use kspace::{ComplexGrid, GridShape, RealGrid, Transform2d};
pub use mask::{BinaryMask, MaskDistribution, MaskKind, SoftMask};
pub use num_complex::Complex64;
pub use optim::{ProMConfig, PromOutcome, TrainFailure, TrainTrace};
