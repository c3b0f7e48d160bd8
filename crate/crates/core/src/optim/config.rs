use crate::error::{Error, Result};
use crate::mask::{check_alpha, sampling_budget, MaskKind};

/// Optimization hyperparameters. Defaults: 2500 iterations, learning rate
/// 0.01, batch 32, 4 Monte-Carlo masks per item, τ linear from 1 to 0.03,
/// 10 averaged runs.
#[derive(Debug, Clone, PartialEq)]
pub struct ProMConfig {
    /// Acceleration factor α ≥ 1; the final budget is `⌊D/α⌋`.
    pub alpha: f64,
    pub iterations: usize,
    pub learning_rate: f64,
    pub batch_size: usize,
    /// Mask draws per batch item (`L`).
    pub mc_samples: usize,
    pub tau_start: f64,
    pub tau_end: f64,
    /// Fraction of iterations spent at `S = D` before annealing starts.
    pub explore_fraction: f64,
    /// Fraction of iterations after which `S` stays at `⌊D/α⌋`.
    pub constrain_end_fraction: f64,
    /// Exponent on the remaining-progress term of the budget schedule;
    /// 1 is linear, 3 gives the cubic pruning schedule.
    pub anneal_exponent: f64,
    /// Adam denominator offset. Gradients well below it are followed
    /// proportionally; gradients well above it are sign-normalised.
    pub adam_epsilon: f64,
    pub seed: u64,
    pub mask_kind: MaskKind,
    pub num_runs: usize,
}

impl Default for ProMConfig {
    fn default() -> Self {
        ProMConfig {
            alpha: 4.0,
            iterations: 2500,
            learning_rate: 0.01,
            batch_size: 32,
            mc_samples: 4,
            tau_start: 1.0,
            tau_end: 0.03,
            explore_fraction: 0.2,
            constrain_end_fraction: 0.5,
            anneal_exponent: 1.0,
            adam_epsilon: 1e-8,
            seed: 0,
            mask_kind: MaskKind::Full2D,
            num_runs: 10,
        }
    }
}

impl ProMConfig {
    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        let fail = |msg| Err(Error::InvalidConfig(msg));
        if self.iterations == 0 {
            return fail("iterations must be positive");
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return fail("learning rate must be positive");
        }
        if self.batch_size == 0 || self.mc_samples == 0 || self.num_runs == 0 {
            return fail("batch size, mc samples and run count must be positive");
        }
        if !(self.tau_end > 0.0 && self.tau_end <= self.tau_start && self.tau_start.is_finite()) {
            return fail("temperatures must satisfy 0 < tau_end <= tau_start");
        }
        if !(0.0..1.0).contains(&self.explore_fraction) {
            return fail("explore fraction must be in [0, 1)");
        }
        if !(self.constrain_end_fraction > self.explore_fraction
            && self.constrain_end_fraction <= 1.0)
        {
            return fail("constrain end fraction must be in (explore fraction, 1]");
        }
        if !(self.anneal_exponent > 0.0 && self.anneal_exponent.is_finite()) {
            return fail("anneal exponent must be positive");
        }
        if !(self.adam_epsilon > 0.0 && self.adam_epsilon.is_finite()) {
            return fail("adam epsilon must be positive");
        }
        Ok(())
    }

    /// `⌊len/α⌋` for a parameter vector of length `len`.
    pub fn final_budget(&self, len: usize) -> usize {
        sampling_budget(len, self.alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = ProMConfig::default();
        c.validate().unwrap();
        assert_eq!(c.iterations, 2500);
        assert_eq!(c.learning_rate, 0.01);
        assert_eq!(c.mc_samples, 4);
        assert_eq!(c.batch_size, 32);
        assert_eq!((c.tau_start, c.tau_end), (1.0, 0.03));
        assert_eq!(c.num_runs, 10);
    }

    #[test]
    fn rejects_inconsistent_settings() {
        let bad = [
            ProMConfig { alpha: 0.5, ..Default::default() },
            ProMConfig { iterations: 0, ..Default::default() },
            ProMConfig { tau_end: 2.0, ..Default::default() },
            ProMConfig { explore_fraction: 0.6, ..Default::default() },
            ProMConfig { constrain_end_fraction: 1.5, ..Default::default() },
            ProMConfig { learning_rate: -1.0, ..Default::default() },
            ProMConfig { mc_samples: 0, ..Default::default() },
            ProMConfig { adam_epsilon: 0.0, ..Default::default() },
        ];
        for c in bad {
            assert!(c.validate().is_err(), "{c:?}");
        }
    }
}
