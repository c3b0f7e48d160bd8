use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use super::adam::AdamState;
use super::loss::{MeanSquaredError, ReconLoss};
use super::objective::{Evaluator, ForwardMode, TrainingPair};
use super::projection::project;
use super::schedule::schedule;
use super::ProMConfig;
use crate::error::{Error, Result};
use crate::mask::{deterministic_mask, init_distribution, model_average, BinaryMask, MaskDistribution};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub iteration: usize,
    /// Monte-Carlo loss estimate at the start of the iteration.
    pub loss: f64,
    /// Σθ after projection.
    pub sum_theta: f64,
    pub budget: usize,
    pub tau: f64,
    /// `budget / len(θ)`.
    pub dense_rate: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrainTrace {
    pub records: Vec<TraceRecord>,
}

impl TrainTrace {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// An aborted run together with the trace recorded up to the failure.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainFailure {
    pub error: Error,
    pub trace: TrainTrace,
}

impl fmt::Display for TrainFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (after {} iterations)", self.error, self.trace.len())
    }
}

impl core::error::Error for TrainFailure {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        Some(&self.error)
    }
}

impl From<Error> for TrainFailure {
    fn from(error: Error) -> Self {
        TrainFailure {
            error,
            trace: TrainTrace::default(),
        }
    }
}

type TrainResult = core::result::Result<(MaskDistribution, TrainTrace), TrainFailure>;

/// Optimizes θ for one slice: every iteration uses the same item with
/// `mc_samples` draws.
pub fn optimize_single(pair: &TrainingPair, config: &ProMConfig) -> TrainResult {
    let single = ProMConfig {
        batch_size: 1,
        ..config.clone()
    };
    train(core::slice::from_ref(pair), &single, &MeanSquaredError)
}

/// Optimizes θ over a dataset with seeded random batches of `batch_size`
/// items (drawn with replacement when the dataset is smaller).
pub fn optimize_dataset(dataset: &[TrainingPair], config: &ProMConfig) -> TrainResult {
    train(dataset, config, &MeanSquaredError)
}

pub fn optimize_dataset_with_loss(
    dataset: &[TrainingPair],
    config: &ProMConfig,
    loss: &dyn ReconLoss,
) -> TrainResult {
    train(dataset, config, loss)
}

fn validate_dataset(dataset: &[TrainingPair]) -> Result<()> {
    let first = dataset
        .first()
        .ok_or(Error::EmptyInput("dataset has no items"))?;
    let shape = first.kspace().shape();
    for pair in dataset {
        if pair.kspace().shape() != shape {
            return Err(Error::ShapeMismatch {
                left: shape,
                right: pair.kspace().shape(),
            });
        }
    }
    Ok(())
}

fn draw_batch<R: Rng + ?Sized>(rng: &mut R, available: usize, size: usize) -> Vec<usize> {
    if available >= size {
        rand::seq::index::sample(rng, available, size).into_vec()
    } else {
        (0..size).map(|_| rng.random_range(0..available)).collect()
    }
}

fn train(dataset: &[TrainingPair], config: &ProMConfig, loss: &dyn ReconLoss) -> TrainResult {
    config.validate()?;
    validate_dataset(dataset)?;
    let shape = dataset[0].kspace().shape();
    let kind = config.mask_kind;

    let mut dist = init_distribution(shape, kind, config.seed);
    let len = dist.len();
    let mut rng = rng::stream(config.seed, rng::TRAIN);
    let mut adam = AdamState::new(len);
    adam.eps = config.adam_epsilon;
    let eval = Evaluator::new(&dist, loss, ForwardMode::Hard);
    let mut trace = TrainTrace {
        records: Vec::with_capacity(config.iterations),
    };

    for iteration in 0..config.iterations {
        let state = schedule(iteration, len, config);
        let fail = |error: Error, trace: TrainTrace| TrainFailure {
            error: match error {
                Error::NumericalFailure { what, .. } => Error::NumericalFailure { iteration, what },
                other => other,
            },
            trace,
        };

        let batch = draw_batch(&mut rng, dataset.len(), config.batch_size);
        let estimate = match eval.estimate(
            &dist,
            batch.iter().map(|&i| &dataset[i]),
            config.mc_samples,
            state.tau,
            &mut rng,
            true,
        ) {
            Ok(e) => e,
            Err(e) => return Err(fail(e, trace)),
        };
        if !estimate.loss.is_finite() || estimate.gradient.iter().any(|g| !g.is_finite()) {
            let error = Error::NumericalFailure {
                iteration,
                what: "non-finite loss or gradient",
            };
            return Err(fail(error, trace));
        }

        let theta_tilde = match adam.step(dist.theta(), &estimate.gradient, config.learning_rate) {
            Ok(t) => t,
            Err(e) => return Err(fail(e, trace)),
        };
        let theta = match project(&theta_tilde, state.budget) {
            Ok(t) => t,
            Err(e) => return Err(fail(e, trace)),
        };
        dist = match MaskDistribution::new(shape, kind, theta) {
            Ok(d) => d,
            Err(e) => return Err(fail(e, trace)),
        };

        trace.records.push(TraceRecord {
            iteration,
            loss: estimate.loss,
            sum_theta: dist.sum(),
            budget: state.budget,
            tau: state.tau,
            dense_rate: state.budget as f64 / len as f64,
        });
    }
    Ok((dist, trace))
}

/// Result of averaging several independent runs.
#[derive(Debug, Clone, PartialEq)]
pub struct PromOutcome {
    /// Top-`⌊len/α⌋` entries of the averaged θ.
    pub mask: BinaryMask,
    pub distribution: MaskDistribution,
    pub traces: Vec<TrainTrace>,
}

/// Seed of run `index`; run 0 uses the configured seed itself.
pub fn run_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// `num_runs` independent runs, elementwise-averaged θ, then deterministic
/// top-`⌊len/α⌋` extraction.
pub fn run_prom(
    dataset: &[TrainingPair],
    config: &ProMConfig,
) -> core::result::Result<PromOutcome, TrainFailure> {
    run_prom_with_loss(dataset, config, &MeanSquaredError)
}

pub fn run_prom_with_loss(
    dataset: &[TrainingPair],
    config: &ProMConfig,
    loss: &dyn ReconLoss,
) -> core::result::Result<PromOutcome, TrainFailure> {
    config.validate()?;
    let mut dists = Vec::with_capacity(config.num_runs);
    let mut traces = Vec::with_capacity(config.num_runs);
    for index in 0..config.num_runs {
        let run_config = ProMConfig {
            seed: run_seed(config.seed, index),
            ..config.clone()
        };
        let (dist, trace) = train(dataset, &run_config, loss)?;
        dists.push(dist);
        traces.push(trace);
    }
    let distribution = model_average(&dists)?;
    let mask = deterministic_mask(&distribution, config.final_budget(distribution.len()))?;
    Ok(PromOutcome {
        mask,
        distribution,
        traces,
    })
}
