use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by std methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};

/// Bias-corrected Adam moments for the unconstrained θ̃ update.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamState {
    pub first_moment: Vec<f64>,
    pub second_moment: Vec<f64>,
    pub step_count: usize,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl AdamState {
    pub fn new(len: usize) -> Self {
        AdamState {
            first_moment: alloc::vec![0.0; len],
            second_moment: alloc::vec![0.0; len],
            step_count: 0,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
        }
    }

    /// Returns `θ̃ = θ − lr·m̂/(√v̂ + eps)` and advances the moments.
    pub fn step(&mut self, theta: &[f64], gradient: &[f64], lr: f64) -> Result<Vec<f64>> {
        Error::check_len(self.first_moment.len(), theta.len())?;
        Error::check_len(theta.len(), gradient.len())?;
        self.step_count += 1;
        let t = self.step_count as i32;
        let bc1 = 1.0 - self.beta1.powi(t);
        let bc2 = 1.0 - self.beta2.powi(t);
        let mut out = Vec::with_capacity(theta.len());
        for (((m, v), &th), &g) in self
            .first_moment
            .iter_mut()
            .zip(self.second_moment.iter_mut())
            .zip(theta)
            .zip(gradient)
        {
            *m = self.beta1 * *m + (1.0 - self.beta1) * g;
            *v = self.beta2 * *v + (1.0 - self.beta2) * g * g;
            let update = th - lr * (*m / bc1) / ((*v / bc2).sqrt() + self.eps);
            if !update.is_finite() {
                return Err(Error::NumericalFailure {
                    iteration: self.step_count - 1,
                    what: "non-finite Adam update",
                });
            }
            out.push(update);
        }
        Ok(out)
    }
}
