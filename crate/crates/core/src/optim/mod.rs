//! Budget-constrained stochastic optimization of a mask distribution.
//!
//! Each iteration draws `L` relaxed masks per batch item, evaluates the
//! zero-filled reconstruction loss with hard (straight-through) masks,
//! backpropagates analytically to θ, takes an Adam step and projects the
//! result onto `{θ ∈ [0,1]^D : Σθ ≤ S}`. The budget `S` is held at `D`
//! during exploration, annealed towards `⌊D/α⌋`, then held there.

mod adam;
mod config;
mod loss;
mod objective;
mod projection;
mod schedule;
mod train;

pub use adam::AdamState;
pub use config::ProMConfig;
pub use loss::{loss_mse, loss_mse_grad, MeanSquaredError, ReconLoss};
pub use objective::{
    gradient_estimate, objective_estimate, relaxed_gradient, relaxed_loss, Estimate,
    ForwardMode, TrainingPair,
};
pub use projection::{budget_excess, project, solve_lambda, BISECTION_TOL, MAX_BISECTION_STEPS};
pub use schedule::{anneal_budget, anneal_tau, phase_bounds, schedule, Phase, ScheduleState};
pub use train::{
    optimize_dataset, optimize_dataset_with_loss, optimize_single, run_prom, run_prom_with_loss,
    run_seed, PromOutcome, TraceRecord, TrainFailure, TrainTrace,
};
