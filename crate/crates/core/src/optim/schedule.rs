#[allow(unused_imports)] // shadowed by std methods when std is linked
use num_traits::Float;

use super::ProMConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Exploration,
    Constraining,
    Exploitation,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduleState {
    pub budget: usize,
    pub tau: f64,
    pub phase: Phase,
}

/// `(i_min, i_max)`. `i_max` is capped at the last iteration so the final
/// step always runs at the target budget.
pub fn phase_bounds(config: &ProMConfig) -> (usize, usize) {
    let n = config.iterations;
    let start = (config.explore_fraction * n as f64).floor() as usize;
    let end = ((config.constrain_end_fraction * n as f64).floor() as usize).min(n - 1);
    (start.min(end), end)
}

fn phase(iteration: usize, config: &ProMConfig) -> Phase {
    let (start, end) = phase_bounds(config);
    if iteration < start {
        Phase::Exploration
    } else if iteration < end {
        Phase::Constraining
    } else {
        Phase::Exploitation
    }
}

/// Budget `S` for a parameter vector of length `len`:
/// `len` while exploring, `round(d·len)` with
/// `d = 1/α + (1 − 1/α)(1 − progress)^p` while constraining, and
/// `⌊len/α⌋` afterwards.
pub fn anneal_budget(iteration: usize, len: usize, config: &ProMConfig) -> usize {
    let target = config.final_budget(len);
    match phase(iteration, config) {
        Phase::Exploration => len,
        Phase::Exploitation => target,
        Phase::Constraining => {
            let (start, end) = phase_bounds(config);
            let progress = (iteration - start) as f64 / (end - start) as f64;
            let d_target = 1.0 / config.alpha;
            let d = d_target + (1.0 - d_target) * (1.0 - progress).powf(config.anneal_exponent);
            ((d * len as f64).round() as usize).clamp(target, len)
        }
    }
}

/// `τ = τ_start + (τ_end − τ_start)·i/(n − 1)`, evaluated as a convex
/// combination so both endpoints come out exact.
pub fn anneal_tau(iteration: usize, config: &ProMConfig) -> f64 {
    if config.iterations <= 1 {
        return config.tau_end;
    }
    let t = iteration as f64 / (config.iterations - 1) as f64;
    config.tau_start * (1.0 - t) + config.tau_end * t
}

pub fn schedule(iteration: usize, len: usize, config: &ProMConfig) -> ScheduleState {
    ScheduleState {
        budget: anneal_budget(iteration, len, config),
        tau: anneal_tau(iteration, config),
        phase: phase(iteration, config),
    }
}
