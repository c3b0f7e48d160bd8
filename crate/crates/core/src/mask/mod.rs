//! Bernoulli mask distributions over a k-space grid.
//!
//! A [`MaskDistribution`] holds one sampling probability per parameter:
//! one per grid element for [`MaskKind::Full2D`], or one per column
//! (phase-encode line) for [`MaskKind::Lines1D`]. Line parameters are
//! replicated down every row when a mask is applied to the grid.
//!
//! Final masks are extracted deterministically as the top-`S` entries of
//! `θ`, and several trained distributions are combined by averaging `θ`
//! elementwise before extraction.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by std methods when std is linked
use num_traits::Float;
use rand::Rng;

use crate::error::{Error, Result};
use crate::kspace::GridShape;
use crate::rng;

mod baseline;
mod gumbel;

pub use baseline::{equispaced_mask, gaussian_mask, DEFAULT_CENTER_FRACTION, DEFAULT_SIGMA_FRACTION};
pub use gumbel::{
    gumbel_from_uniform, sample_gumbel, sample_soft, sigmoid, straight_through, GumbelNoise,
    SoftMask, StraightThrough,
};

/// Probabilities are clamped into `[LOGIT_CLAMP, 1 - LOGIT_CLAMP]` before
/// taking log-odds.
pub const LOGIT_CLAMP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MaskKind {
    Full2D,
    Lines1D,
}

impl MaskKind {
    /// Number of Bernoulli parameters for a grid of this shape.
    pub fn param_len(self, shape: GridShape) -> usize {
        match self {
            MaskKind::Full2D => shape.len(),
            MaskKind::Lines1D => shape.width(),
        }
    }
}

/// `⌊len/α⌋`, the number of acquired elements at acceleration `α`.
pub fn sampling_budget(len: usize, alpha: f64) -> usize {
    (len as f64 / alpha).floor() as usize
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig("acceleration factor must be finite and >= 1"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaskDistribution {
    shape: GridShape,
    kind: MaskKind,
    theta: Vec<f64>,
}

impl MaskDistribution {
    pub fn new(shape: GridShape, kind: MaskKind, theta: Vec<f64>) -> Result<Self> {
        Error::check_len(kind.param_len(shape), theta.len())?;
        for (index, &value) in theta.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::ProbabilityOutOfRange { index, value });
            }
        }
        Ok(MaskDistribution { shape, kind, theta })
    }

    pub fn uniform(shape: GridShape, kind: MaskKind, value: f64) -> Result<Self> {
        Self::new(shape, kind, alloc::vec![value; kind.param_len(shape)])
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn kind(&self) -> MaskKind {
        self.kind
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.theta.iter().sum()
    }

    pub fn into_theta(self) -> Vec<f64> {
        self.theta
    }
}

/// θ drawn i.i.d. uniform on `[0.45, 0.55]`.
pub fn init_distribution(shape: GridShape, kind: MaskKind, seed: u64) -> MaskDistribution {
    let mut rng = rng::stream(seed, rng::INIT);
    let theta = (0..kind.param_len(shape))
        .map(|_| rng.random_range(0.45..=0.55))
        .collect();
    MaskDistribution { shape, kind, theta }
}

pub fn clamp_probability(theta: f64) -> f64 {
    theta.clamp(LOGIT_CLAMP, 1.0 - LOGIT_CLAMP)
}

/// `ρ = log(θ/(1-θ))` of the clamped probabilities.
pub fn log_odds(dist: &MaskDistribution) -> Vec<f64> {
    dist.theta
        .iter()
        .map(|&t| {
            let t = clamp_probability(t);
            (t / (1.0 - t)).ln()
        })
        .collect()
}

pub fn expected_density(dist: &MaskDistribution) -> f64 {
    dist.sum() / dist.len() as f64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    shape: GridShape,
    kind: MaskKind,
    values: Vec<bool>,
}

impl BinaryMask {
    pub fn new(shape: GridShape, kind: MaskKind, values: Vec<bool>) -> Result<Self> {
        Error::check_len(kind.param_len(shape), values.len())?;
        Ok(BinaryMask { shape, kind, values })
    }

    pub fn full(shape: GridShape, kind: MaskKind) -> Self {
        BinaryMask {
            shape,
            kind,
            values: alloc::vec![true; kind.param_len(shape)],
        }
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn kind(&self) -> MaskKind {
        self.kind
    }

    /// Parameter-level values (columns for `Lines1D`).
    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn count_ones(&self) -> usize {
        self.values.iter().filter(|&&v| v).count()
    }

    /// Number of acquired grid elements.
    pub fn grid_count(&self) -> usize {
        match self.kind {
            MaskKind::Full2D => self.count_ones(),
            MaskKind::Lines1D => self.count_ones() * self.shape.height(),
        }
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.values.iter().map(|&v| if v { 1.0 } else { 0.0 }).collect()
    }

    /// Full-grid 0/1 vector of length `D`.
    pub fn to_grid(&self) -> Vec<f64> {
        expand_to_grid(&self.as_f64(), self.kind, self.shape)
            .expect("mask length is validated on construction")
    }
}

/// Sets exactly the `budget` entries with the largest θ (ties go to the
/// lowest index).
pub fn deterministic_mask(dist: &MaskDistribution, budget: usize) -> Result<BinaryMask> {
    let len = dist.len();
    if budget > len {
        return Err(Error::BudgetOutOfRange { budget, len });
    }
    let mut order: Vec<usize> = (0..len).collect();
    order.sort_by(|&a, &b| dist.theta[b].total_cmp(&dist.theta[a]).then(a.cmp(&b)));
    let mut values = alloc::vec![false; len];
    for &i in &order[..budget] {
        values[i] = true;
    }
    Ok(BinaryMask {
        shape: dist.shape,
        kind: dist.kind,
        values,
    })
}

/// Elementwise mean of θ across runs.
pub fn model_average(dists: &[MaskDistribution]) -> Result<MaskDistribution> {
    let first = dists
        .first()
        .ok_or(Error::EmptyInput("no distributions to average"))?;
    let mut theta = alloc::vec![0.0; first.len()];
    for d in dists {
        if d.shape != first.shape {
            return Err(Error::ShapeMismatch {
                left: first.shape,
                right: d.shape,
            });
        }
        if d.kind != first.kind {
            return Err(Error::KindMismatch("averaged distributions differ in kind"));
        }
        for (acc, &t) in theta.iter_mut().zip(&d.theta) {
            *acc += t;
        }
    }
    let n = dists.len() as f64;
    for t in theta.iter_mut() {
        // clamp guards against 1 + ulp from summation
        *t = (*t / n).clamp(0.0, 1.0);
    }
    Ok(MaskDistribution {
        shape: first.shape,
        kind: first.kind,
        theta,
    })
}

/// Replicates each column value down all `H` rows.
pub fn broadcast_lines(lines: &[f64], shape: GridShape) -> Result<Vec<f64>> {
    Error::check_len(shape.width(), lines.len())?;
    let mut grid = Vec::with_capacity(shape.len());
    for _ in 0..shape.height() {
        grid.extend_from_slice(lines);
    }
    Ok(grid)
}

/// Parameter-level values to a full grid vector.
pub fn expand_to_grid(values: &[f64], kind: MaskKind, shape: GridShape) -> Result<Vec<f64>> {
    match kind {
        MaskKind::Full2D => {
            Error::check_len(shape.len(), values.len())?;
            Ok(values.to_vec())
        }
        MaskKind::Lines1D => broadcast_lines(values, shape),
    }
}

/// Adjoint of [`expand_to_grid`]: sums grid gradients over each column for
/// `Lines1D`.
pub fn reduce_from_grid(grid: &[f64], kind: MaskKind, shape: GridShape) -> Vec<f64> {
    match kind {
        MaskKind::Full2D => grid.to_vec(),
        MaskKind::Lines1D => {
            let mut cols = alloc::vec![0.0; shape.width()];
            for row in grid.chunks_exact(shape.width()) {
                for (acc, &g) in cols.iter_mut().zip(row) {
                    *acc += g;
                }
            }
            cols
        }
    }
}
