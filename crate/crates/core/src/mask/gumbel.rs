//! Relaxed Bernoulli sampling via the difference of two Gumbel variables,
//! followed by straight-through binarization.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by std methods when std is linked
use num_traits::Float;
use rand::distr::Open01;
use rand::Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GumbelNoise {
    pub g1: Vec<f64>,
    pub g0: Vec<f64>,
}

impl GumbelNoise {
    pub fn zeros(len: usize) -> Self {
        GumbelNoise {
            g1: alloc::vec![0.0; len],
            g0: alloc::vec![0.0; len],
        }
    }

    pub fn len(&self) -> usize {
        self.g1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g1.is_empty()
    }
}

/// `-log(-log u)` for `u ∈ (0, 1)`.
pub fn gumbel_from_uniform(u: f64) -> f64 {
    -(-u.ln()).ln()
}

pub fn sample_gumbel<R: Rng + ?Sized>(len: usize, rng: &mut R) -> GumbelNoise {
    let mut draw = |_| gumbel_from_uniform(rng.sample(Open01));
    let g1 = (0..len).map(&mut draw).collect();
    let g0 = (0..len).map(&mut draw).collect();
    GumbelNoise { g1, g0 }
}

pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Relaxed mask values. Entries lie in `(0, 1)` up to floating-point
/// saturation at very low temperatures.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftMask {
    values: Vec<f64>,
}

impl SoftMask {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `σ'(z)/τ` for each entry, expressed through the soft value itself.
    pub fn logit_jacobian(&self, tau: f64) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().map(move |&s| s * (1.0 - s) / tau)
    }
}

/// `σ((ρ + g1 − g0)/τ)` elementwise.
pub fn sample_soft(rho: &[f64], noise: &GumbelNoise, tau: f64) -> Result<SoftMask> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::InvalidConfig("temperature must be positive"));
    }
    Error::check_len(rho.len(), noise.g1.len())?;
    Error::check_len(rho.len(), noise.g0.len())?;
    let values = rho
        .iter()
        .zip(noise.g1.iter().zip(&noise.g0))
        .map(|(&r, (&g1, &g0))| sigmoid((r + g1 - g0) / tau))
        .collect();
    Ok(SoftMask { values })
}

/// Hard 0/1 values for the forward pass, with the soft values retained for
/// the backward pass.
#[derive(Debug, Clone, PartialEq)]
pub struct StraightThrough {
    hard: Vec<f64>,
    soft: SoftMask,
}

impl StraightThrough {
    pub fn hard(&self) -> &[f64] {
        &self.hard
    }

    pub fn soft(&self) -> &SoftMask {
        &self.soft
    }

    pub fn count_ones(&self) -> usize {
        self.hard.iter().filter(|&&v| v == 1.0).count()
    }

    /// `∂m/∂m_soft = 1`: gradients with respect to the hard mask pass to
    /// the soft values unchanged.
    pub fn backward(&self, grad_hard: &[f64]) -> Vec<f64> {
        grad_hard.to_vec()
    }
}

/// `1(m_soft ≥ 0.5)`; the boundary value maps to 1.
pub fn straight_through(soft: SoftMask) -> StraightThrough {
    let hard = soft
        .values
        .iter()
        .map(|&s| if s >= 0.5 { 1.0 } else { 0.0 })
        .collect();
    StraightThrough { hard, soft }
}
