//! Fixed-pattern baselines: equispaced lines with a fully sampled center,
//! and a 2D variable-density Gaussian mask.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by std methods when std is linked
use num_traits::Float;
use rand::Rng;

use super::{check_alpha, sampling_budget, BinaryMask, MaskKind};
use crate::error::{Error, Result};
use crate::kspace::GridShape;
use crate::rng;

pub const DEFAULT_CENTER_FRACTION: f64 = 0.04;
pub const DEFAULT_SIGMA_FRACTION: f64 = 1.0 / 6.0;

/// Column mask with `round(center_fraction·W)` contiguous center lines and
/// the rest of the `round(W/α)` line budget spread at a fixed stride over
/// the remaining columns, starting from a seeded random offset.
pub fn equispaced_mask(
    shape: GridShape,
    alpha: f64,
    center_fraction: f64,
    seed: u64,
) -> Result<BinaryMask> {
    check_alpha(alpha)?;
    if !(0.0..1.0).contains(&center_fraction) {
        return Err(Error::InvalidConfig("center fraction must be in [0, 1)"));
    }
    let width = shape.width();
    let budget = (width as f64 / alpha).round() as usize;
    let center = (center_fraction * width as f64).round() as usize;
    if budget < center {
        return Err(Error::CenterExceedsBudget { budget, center });
    }

    let mut values = alloc::vec![false; width];
    // same placement as fastMRI: pad = (W - n + 1) / 2
    let start = (width - center + 1) / 2;
    values[start..start + center].fill(true);

    let remaining = budget - center;
    if remaining > 0 {
        let outer: Vec<usize> = (0..width).filter(|&c| !values[c]).collect();
        let stride = outer.len() / remaining;
        let offset = rng::stream(seed, rng::BASELINE).random_range(0..stride);
        for k in 0..remaining {
            values[outer[offset + k * stride]] = true;
        }
    }
    BinaryMask::new(shape, MaskKind::Lines1D, values)
}

/// Exactly `⌊D/α⌋` distinct grid elements, drawn without replacement with
/// weight `exp(-r²/2σ²)` around the grid center, `σ = sigma_fraction·min(H,W)`.
pub fn gaussian_mask(
    shape: GridShape,
    alpha: f64,
    sigma_fraction: f64,
    seed: u64,
) -> Result<BinaryMask> {
    check_alpha(alpha)?;
    if !(sigma_fraction > 0.0 && sigma_fraction.is_finite()) {
        return Err(Error::InvalidConfig("sigma fraction must be positive"));
    }
    let budget = sampling_budget(shape.len(), alpha);
    let sigma = sigma_fraction * shape.height().min(shape.width()) as f64;
    let (cr, cc) = shape.center();
    let mut rng = rng::stream(seed, rng::BASELINE);

    // Efraimidis-Spirakis: the top-k of log(u)/w is a weighted sample
    // without replacement.
    let mut keys: Vec<(f64, usize)> = (0..shape.len())
        .map(|i| {
            let dr = (i / shape.width()) as f64 - cr as f64;
            let dc = (i % shape.width()) as f64 - cc as f64;
            let weight = (-(dr * dr + dc * dc) / (2.0 * sigma * sigma)).exp();
            let u: f64 = rng.sample(rand::distr::Open01);
            let key = if weight > 0.0 {
                u.ln() / weight
            } else {
                f64::NEG_INFINITY
            };
            (key, i)
        })
        .collect();
    keys.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));

    let mut values = alloc::vec![false; shape.len()];
    for &(_, i) in &keys[..budget] {
        values[i] = true;
    }
    BinaryMask::new(shape, MaskKind::Full2D, values)
}
