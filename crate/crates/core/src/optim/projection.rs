//! Euclidean projection onto `{θ ∈ [0,1]^D : Σθ ≤ S}`.
//!
//! The minimizer is `clip(θ̃ − λ₂, 0, 1)` with `λ₂ = max(0, λ₁)` and `λ₁` a
//! root of the non-increasing function
//! `g′(λ) = Σ min(1, max(0, θ̃_i − λ)) − S`, found by bisection.

use alloc::vec::Vec;

use crate::error::{Error, Result};

pub const BISECTION_TOL: f64 = 1e-9;
pub const MAX_BISECTION_STEPS: usize = 200;

/// `g′(λ)`.
pub fn budget_excess(theta_tilde: &[f64], lambda: f64, budget: usize) -> f64 {
    theta_tilde
        .iter()
        .map(|&t| (t - lambda).clamp(0.0, 1.0))
        .sum::<f64>()
        - budget as f64
}

/// Root of `g′` on `[min θ̃ − 1, max θ̃]`. Where `g′` vanishes on a whole
/// interval the midpoint of that interval is returned.
pub fn solve_lambda(theta_tilde: &[f64], budget: usize) -> Result<f64> {
    let len = theta_tilde.len();
    if budget > len {
        return Err(Error::BudgetOutOfRange { budget, len });
    }
    if len == 0 {
        return Ok(0.0);
    }
    let (min, max) = theta_tilde
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &t| {
            (lo.min(t), hi.max(t))
        });
    if budget == 0 {
        return Ok(max);
    }
    let g = |lambda| budget_excess(theta_tilde, lambda, budget);

    let (mut lo, mut hi) = (min - 1.0, max);
    let mut root = None;
    for _ in 0..MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        let v = g(mid);
        if v.abs() <= BISECTION_TOL {
            root = Some(mid);
            break;
        }
        if v > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if mid == lo && mid == hi {
            break;
        }
    }
    let Some(root) = root else {
        return Ok(0.5 * (lo + hi));
    };

    // edges of the zero set {λ : |g′(λ)| ≤ tol} inside the bracket
    let left = if g(min - 1.0) <= BISECTION_TOL {
        min - 1.0
    } else {
        bisect_edge(min - 1.0, root, |l| g(l) > BISECTION_TOL)
    };
    let right = if g(max) >= -BISECTION_TOL {
        max
    } else {
        bisect_edge(max, root, |l| g(l) < -BISECTION_TOL)
    };
    Ok(0.5 * (left + right))
}

/// Narrows `[outside, inside]` onto the point where `is_outside` flips,
/// returning the innermost point known to be inside.
fn bisect_edge(mut outside: f64, mut inside: f64, is_outside: impl Fn(f64) -> bool) -> f64 {
    for _ in 0..MAX_BISECTION_STEPS {
        let mid = 0.5 * (outside + inside);
        if mid == outside || mid == inside {
            break;
        }
        if is_outside(mid) {
            outside = mid;
        } else {
            inside = mid;
        }
    }
    inside
}

/// `min(1, max(0, θ̃ − max(0, λ₁)))`.
pub fn project(theta_tilde: &[f64], budget: usize) -> Result<Vec<f64>> {
    let lambda = solve_lambda(theta_tilde, budget)?.max(0.0);
    Ok(theta_tilde
        .iter()
        .map(|&t| (t - lambda).clamp(0.0, 1.0))
        .collect())
}
