use alloc::vec::Vec;

use crate::error::Result;
use crate::kspace::RealGrid;

/// A differentiable reconstruction criterion: returns the loss value and its
/// gradient with respect to the reconstruction.
///
/// Task losses (e.g. a frozen segmentation network with a Dice/cross-entropy
/// objective) plug in here.
pub trait ReconLoss {
    fn evaluate(&self, reconstruction: &RealGrid, target: &RealGrid) -> Result<(f64, RealGrid)>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct MeanSquaredError;

impl ReconLoss for MeanSquaredError {
    fn evaluate(&self, reconstruction: &RealGrid, target: &RealGrid) -> Result<(f64, RealGrid)> {
        Ok((loss_mse(reconstruction, target)?, loss_mse_grad(reconstruction, target)?))
    }
}

/// `(1/D)·Σ(x̂ − x)²`
pub fn loss_mse(reconstruction: &RealGrid, target: &RealGrid) -> Result<f64> {
    reconstruction.ensure_same_shape(target)?;
    let n = target.data().len() as f64;
    Ok(reconstruction
        .data()
        .iter()
        .zip(target.data())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        / n)
}

/// `2(x̂ − x)/D`
pub fn loss_mse_grad(reconstruction: &RealGrid, target: &RealGrid) -> Result<RealGrid> {
    reconstruction.ensure_same_shape(target)?;
    let n = target.data().len() as f64;
    let grad: Vec<f64> = reconstruction
        .data()
        .iter()
        .zip(target.data())
        .map(|(a, b)| 2.0 * (a - b) / n)
        .collect();
    Ok(RealGrid::from_parts(target.shape(), grad))
}
