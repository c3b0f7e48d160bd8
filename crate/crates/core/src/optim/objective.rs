//! Monte-Carlo estimate of the expected reconstruction loss and its
//! analytic gradient with respect to θ.
//!
//! Backward chain for one draw: loss gradient → magnitude adjoint → adjoint
//! of the inverse transform → mask adjoint → (column sum for line masks) →
//! straight-through identity → `σ′/τ` → `dρ/dθ = 1/(θ(1−θ))` at the clamped θ.

use alloc::vec::Vec;

use rand::Rng;

use super::loss::{MeanSquaredError, ReconLoss};
use crate::error::{Error, Result};
use crate::kspace::{
    apply_mask, apply_mask_vjp, magnitude, magnitude_vjp, ComplexGrid, RealGrid, Transform2d,
};
use crate::mask::{
    clamp_probability, expand_to_grid, log_odds, reduce_from_grid, sample_gumbel, sample_soft,
    straight_through, GumbelNoise, MaskDistribution,
};

/// A fully sampled k-space slice and the image the reconstruction is scored
/// against.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingPair {
    kspace: ComplexGrid,
    target: RealGrid,
}

impl TrainingPair {
    pub fn new(kspace: ComplexGrid, target: RealGrid) -> Result<Self> {
        if kspace.shape() != target.shape() {
            return Err(Error::ShapeMismatch {
                left: kspace.shape(),
                right: target.shape(),
            });
        }
        Ok(TrainingPair { kspace, target })
    }

    /// Target is the magnitude of the fully sampled reconstruction.
    pub fn from_kspace(kspace: ComplexGrid) -> Self {
        let target = magnitude(&crate::kspace::inverse_transform(&kspace));
        TrainingPair { kspace, target }
    }

    /// k-space emulated by the forward transform of a real image.
    pub fn from_image(image: RealGrid) -> Self {
        let kspace = crate::kspace::forward_transform(&ComplexGrid::from_real(&image));
        TrainingPair {
            kspace,
            target: image,
        }
    }

    pub fn kspace(&self) -> &ComplexGrid {
        &self.kspace
    }

    pub fn target(&self) -> &RealGrid {
        &self.target
    }
}

/// Which mask enters the forward pass. Training uses `Hard`; `Soft` makes
/// the loss smooth in θ for finite-difference checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForwardMode {
    Hard,
    Soft,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub loss: f64,
    pub gradient: Vec<f64>,
}

pub(crate) struct Evaluator<'a> {
    transform: Transform2d,
    loss: &'a dyn ReconLoss,
    mode: ForwardMode,
}

impl<'a> Evaluator<'a> {
    pub(crate) fn new(dist: &MaskDistribution, loss: &'a dyn ReconLoss, mode: ForwardMode) -> Self {
        Evaluator {
            transform: Transform2d::new(dist.shape()),
            loss,
            mode,
        }
    }

    fn draw(
        &self,
        dist: &MaskDistribution,
        rho: &[f64],
        pair: &TrainingPair,
        noise: &GumbelNoise,
        tau: f64,
        gradient: Option<&mut [f64]>,
    ) -> Result<f64> {
        let shape = dist.shape();
        if pair.kspace.shape() != shape {
            return Err(Error::ShapeMismatch {
                left: shape,
                right: pair.kspace.shape(),
            });
        }
        let st = straight_through(sample_soft(rho, noise, tau)?);
        let forward_values = match self.mode {
            ForwardMode::Hard => st.hard(),
            ForwardMode::Soft => st.soft().values(),
        };
        let grid_mask = expand_to_grid(forward_values, dist.kind(), shape)?;
        let image = self.transform.inverse(&apply_mask(&pair.kspace, &grid_mask)?)?;
        let (value, grad_recon) = self.loss.evaluate(&magnitude(&image), &pair.target)?;

        if let Some(acc) = gradient {
            let grad_image = magnitude_vjp(&image, &grad_recon)?;
            let grad_masked = self.transform.forward(&grad_image)?;
            let grad_grid = apply_mask_vjp(&pair.kspace, &grad_masked)?;
            let grad_params = st.backward(&reduce_from_grid(&grad_grid, dist.kind(), shape));
            for (((a, g), ds), &theta) in acc
                .iter_mut()
                .zip(grad_params)
                .zip(st.soft().logit_jacobian(tau))
                .zip(dist.theta())
            {
                let t = clamp_probability(theta);
                *a += g * ds / (t * (1.0 - t));
            }
        }
        Ok(value)
    }

    /// Averages over `items` × `mc_samples` draws, consuming one noise
    /// vector per draw from `rng` in item-major order.
    pub(crate) fn estimate<'p, R: Rng + ?Sized>(
        &self,
        dist: &MaskDistribution,
        items: impl IntoIterator<Item = &'p TrainingPair>,
        mc_samples: usize,
        tau: f64,
        rng: &mut R,
        with_gradient: bool,
    ) -> Result<Estimate> {
        let rho = log_odds(dist);
        let mut gradient = alloc::vec![0.0; dist.len()];
        let mut total = 0.0;
        let mut draws = 0usize;
        for pair in items {
            for _ in 0..mc_samples {
                let noise = sample_gumbel(dist.len(), rng);
                let acc = with_gradient.then_some(gradient.as_mut_slice());
                total += self.draw(dist, &rho, pair, &noise, tau, acc)?;
                draws += 1;
            }
        }
        if draws == 0 {
            return Err(Error::EmptyInput("batch has no items"));
        }
        let n = draws as f64;
        for g in gradient.iter_mut() {
            *g /= n;
        }
        Ok(Estimate {
            loss: total / n,
            gradient,
        })
    }
}

/// Loss of a single draw with fixed noise.
pub fn relaxed_loss(
    dist: &MaskDistribution,
    pair: &TrainingPair,
    noise: &GumbelNoise,
    tau: f64,
    mode: ForwardMode,
    loss: &dyn ReconLoss,
) -> Result<f64> {
    let eval = Evaluator::new(dist, loss, mode);
    eval.draw(dist, &log_odds(dist), pair, noise, tau, None)
}

/// Loss and `∇_θ` of a single draw with fixed noise.
pub fn relaxed_gradient(
    dist: &MaskDistribution,
    pair: &TrainingPair,
    noise: &GumbelNoise,
    tau: f64,
    mode: ForwardMode,
    loss: &dyn ReconLoss,
) -> Result<Estimate> {
    let eval = Evaluator::new(dist, loss, mode);
    let mut gradient = alloc::vec![0.0; dist.len()];
    let value = eval.draw(dist, &log_odds(dist), pair, noise, tau, Some(&mut gradient))?;
    Ok(Estimate {
        loss: value,
        gradient,
    })
}

/// Mean MSE over the batch and `mc_samples` straight-through mask draws.
pub fn objective_estimate<R: Rng + ?Sized>(
    dist: &MaskDistribution,
    batch: &[TrainingPair],
    mc_samples: usize,
    tau: f64,
    rng: &mut R,
) -> Result<f64> {
    let eval = Evaluator::new(dist, &MeanSquaredError, ForwardMode::Hard);
    Ok(eval.estimate(dist, batch, mc_samples, tau, rng, false)?.loss)
}

/// `∇_θ` of the MSE objective. Given an rng in the same state, the draws
/// are identical to those of [`objective_estimate`].
pub fn gradient_estimate<R: Rng + ?Sized>(
    dist: &MaskDistribution,
    batch: &[TrainingPair],
    mc_samples: usize,
    tau: f64,
    rng: &mut R,
) -> Result<Vec<f64>> {
    let eval = Evaluator::new(dist, &MeanSquaredError, ForwardMode::Hard);
    Ok(eval.estimate(dist, batch, mc_samples, tau, rng, true)?.gradient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kspace::GridShape;
    use crate::mask::MaskKind;
    use crate::rng;

    fn pair(shape: GridShape, seed: u64) -> TrainingPair {
        let mut r = rng::stream(seed, 99);
        let image = (0..shape.len()).map(|_| r.random_range(0.0..1.0)).collect();
        TrainingPair::from_image(RealGrid::new(shape, image).unwrap())
    }

    #[test]
    fn saturated_distribution_reconstructs_exactly() {
        let s = GridShape::new(4, 4).unwrap();
        let batch = [pair(s, 1), pair(s, 2)];
        let dist = MaskDistribution::uniform(s, MaskKind::Full2D, 1.0).unwrap();
        let mut r = rng::stream(0, 0);
        let v = objective_estimate(&dist, &batch, 8, 0.5, &mut r).unwrap();
        assert!(v < 1e-20, "{v}");
    }

    #[test]
    fn zero_data_has_zero_loss_and_gradient() {
        let s = GridShape::new(4, 4).unwrap();
        let zero = TrainingPair::from_image(RealGrid::zeros(s));
        let dist = crate::mask::init_distribution(s, MaskKind::Full2D, 3);
        let mut r = rng::stream(0, 0);
        assert_eq!(objective_estimate(&dist, &[zero.clone()], 4, 0.7, &mut r).unwrap(), 0.0);
        let g = gradient_estimate(&dist, &[zero], 4, 0.7, &mut r).unwrap();
        assert!(g.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn gradient_length_follows_kind() {
        let s = GridShape::new(4, 6).unwrap();
        let batch = [pair(s, 5)];
        for (kind, len) in [(MaskKind::Full2D, 24), (MaskKind::Lines1D, 6)] {
            let dist = crate::mask::init_distribution(s, kind, 1);
            let mut r = rng::stream(0, 0);
            assert_eq!(gradient_estimate(&dist, &batch, 2, 0.5, &mut r).unwrap().len(), len);
        }
    }

    #[test]
    fn shared_rng_state_gives_matching_loss() {
        let s = GridShape::new(4, 4).unwrap();
        let batch = [pair(s, 8), pair(s, 9)];
        let dist = crate::mask::init_distribution(s, MaskKind::Full2D, 4);
        let r = rng::stream(5, 0);
        let a = objective_estimate(&dist, &batch, 3, 0.4, &mut r.clone()).unwrap();
        let eval = Evaluator::new(&dist, &MeanSquaredError, ForwardMode::Hard);
        let b = eval.estimate(&dist, &batch, 3, 0.4, &mut r.clone(), true).unwrap();
        assert_eq!(a, b.loss);
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let dist = crate::mask::init_distribution(GridShape::new(4, 4).unwrap(), MaskKind::Full2D, 0);
        let other = pair(GridShape::new(2, 8).unwrap(), 0);
        let mut r = rng::stream(0, 0);
        assert!(objective_estimate(&dist, &[other], 1, 0.5, &mut r).is_err());
        assert!(objective_estimate(&dist, &[], 1, 0.5, &mut r).is_err());
    }
}
