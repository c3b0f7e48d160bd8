//! Reference implementations used as test oracles. Written independently of
//! the library code paths they check: direct DFT sums, exhaustive
//! enumeration and closed-form piecewise-linear solves.
#![allow(dead_code)]

use prom_core::Complex64;
use std::f64::consts::PI;

/// Centered unitary 2D DFT by direct summation. `sign = -1` is the forward
/// transform, `+1` the inverse.
pub fn naive_dft2(x: &[Complex64], h: usize, w: usize, sign: f64) -> Vec<Complex64> {
    let (ch, cw) = ((h / 2) as f64, (w / 2) as f64);
    let scale = 1.0 / ((h * w) as f64).sqrt();
    let mut out = vec![Complex64::new(0.0, 0.0); h * w];
    for kr in 0..h {
        for kc in 0..w {
            let mut acc = Complex64::new(0.0, 0.0);
            for nr in 0..h {
                for nc in 0..w {
                    let phase = sign
                        * 2.0
                        * PI
                        * ((kr as f64 - ch) * (nr as f64 - ch) / h as f64
                            + (kc as f64 - cw) * (nc as f64 - cw) / w as f64);
                    acc += x[nr * w + nc] * Complex64::from_polar(1.0, phase);
                }
            }
            out[kr * w + kc] = acc * scale;
        }
    }
    out
}

/// `|F⁻¹(k ⊙ m)|` with the direct DFT.
pub fn naive_zero_fill(kspace: &[Complex64], mask: &[f64], h: usize, w: usize) -> Vec<f64> {
    let masked: Vec<Complex64> = kspace.iter().zip(mask).map(|(k, m)| k * m).collect();
    naive_dft2(&masked, h, w, 1.0).iter().map(|z| z.norm()).collect()
}

pub fn mse(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>() / a.len() as f64
}

/// Soft-forward relaxed loss for a Full2D distribution:
/// θ → log-odds → σ((ρ + g1 − g0)/τ) → zero-fill → MSE.
pub fn soft_loss(
    theta: &[f64],
    g1: &[f64],
    g0: &[f64],
    tau: f64,
    kspace: &[Complex64],
    target: &[f64],
    h: usize,
    w: usize,
) -> f64 {
    let mask: Vec<f64> = theta
        .iter()
        .zip(g1.iter().zip(g0))
        .map(|(&t, (a, b))| {
            let t = t.clamp(1e-6, 1.0 - 1e-6);
            let rho = (t / (1.0 - t)).ln();
            1.0 / (1.0 + (-(rho + a - b) / tau).exp())
        })
        .collect();
    mse(&naive_zero_fill(kspace, &mask, h, w), target)
}

/// Exact minimizer of ‖θ − t‖² over the box `[0,1]^D` with `Σθ ≤ s`.
///
/// The shift function `Σ clip(t_i − λ, 0, 1)` is piecewise linear with
/// breakpoints at `t_i` and `t_i − 1`; the root is found by locating the
/// segment that brackets `s` and solving the linear piece exactly.
pub fn projection_breakpoints(t: &[f64], s: f64) -> Vec<f64> {
    let clip = |lambda: f64| -> Vec<f64> { t.iter().map(|v| (v - lambda).clamp(0.0, 1.0)).collect() };
    let total = |lambda: f64| -> f64 { clip(lambda).iter().sum() };
    if total(0.0) <= s {
        return clip(0.0);
    }
    let mut knots: Vec<f64> = t.iter().flat_map(|&v| [v, v - 1.0]).filter(|&k| k > 0.0).collect();
    knots.push(0.0);
    knots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    knots.dedup();
    for pair in knots.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let (glo, ghi) = (total(lo), total(hi));
        if glo >= s && ghi <= s {
            let lambda = if glo == ghi { lo } else { lo + (glo - s) * (hi - lo) / (glo - ghi) };
            return clip(lambda);
        }
    }
    // total(max t) = 0 ≤ s, so the loop always returns for s ≥ 0
    unreachable!("no bracketing segment")
}

/// Brute force over all 3^D assignments of each coordinate to {0, 1, free};
/// free coordinates share one shift. Returns the feasible candidate with the
/// smallest distance.
pub fn projection_active_set(t: &[f64], s: f64) -> Vec<f64> {
    let d = t.len();
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut states = vec![0u8; d];
    loop {
        let ones = states.iter().filter(|&&x| x == 1).count() as f64;
        let free: Vec<usize> = (0..d).filter(|&i| states[i] == 2).collect();
        let shift = if free.is_empty() {
            0.0
        } else {
            let free_sum: f64 = free.iter().map(|&i| t[i]).sum();
            ((free_sum + ones - s) / free.len() as f64).max(0.0)
        };
        let cand: Vec<f64> = (0..d)
            .map(|i| match states[i] {
                0 => 0.0,
                1 => 1.0,
                _ => t[i] - shift,
            })
            .collect();
        let feasible = cand.iter().all(|&v| (-1e-12..=1.0 + 1e-12).contains(&v))
            && cand.iter().sum::<f64>() <= s + 1e-9;
        if feasible {
            let dist: f64 = cand.iter().zip(t).map(|(a, b)| (a - b).powi(2)).sum();
            if best.as_ref().is_none_or(|(bd, _)| dist < *bd) {
                best = Some((dist, cand));
            }
        }
        let mut i = 0;
        loop {
            if i == d {
                return best.expect("θ = 0 is always feasible").1;
            }
            states[i] += 1;
            if states[i] < 3 {
                break;
            }
            states[i] = 0;
            i += 1;
        }
    }
}

/// Mean and variance of the per-draw MSE over all 2^D masks, each weighted
/// by its Bernoulli probability under `theta`.
pub fn enumerate_objective(
    theta: &[f64],
    kspace: &[Complex64],
    target: &[f64],
    h: usize,
    w: usize,
) -> (f64, f64) {
    let d = theta.len();
    let (mut mean, mut second) = (0.0, 0.0);
    for bits in 0u64..(1 << d) {
        let mask: Vec<f64> = (0..d).map(|i| ((bits >> i) & 1) as f64).collect();
        let p: f64 = theta
            .iter()
            .zip(&mask)
            .map(|(&t, &m)| if m == 1.0 { t } else { 1.0 - t })
            .product();
        let l = mse(&naive_zero_fill(kspace, &mask, h, w), target);
        mean += p * l;
        second += p * l * l;
    }
    (mean, second - mean * mean)
}

/// Two-pass Gaussian-window SSIM evaluated window by window.
pub fn naive_ssim(x: &[f64], y: &[f64], h: usize, w: usize, range: f64) -> f64 {
    let n = 11;
    let sigma: f64 = 1.5;
    let mut kernel = vec![0.0; n * n];
    for r in 0..n {
        for c in 0..n {
            let (dr, dc) = (r as f64 - 5.0, c as f64 - 5.0);
            kernel[r * n + c] = (-(dr * dr + dc * dc) / (2.0 * sigma * sigma)).exp();
        }
    }
    let z: f64 = kernel.iter().sum();
    kernel.iter_mut().for_each(|k| *k /= z);
    let c1 = (0.01 * range).powi(2);
    let c2 = (0.03 * range).powi(2);
    let mut total = 0.0;
    let mut count = 0;
    for r0 in 0..=h - n {
        for c0 in 0..=w - n {
            let at = |img: &[f64], r: usize, c: usize| img[(r0 + r) * w + c0 + c];
            let (mut mx, mut my) = (0.0, 0.0);
            for r in 0..n {
                for c in 0..n {
                    mx += kernel[r * n + c] * at(x, r, c);
                    my += kernel[r * n + c] * at(y, r, c);
                }
            }
            let (mut vx, mut vy, mut cxy) = (0.0, 0.0, 0.0);
            for r in 0..n {
                for c in 0..n {
                    let k = kernel[r * n + c];
                    let (a, b) = (at(x, r, c) - mx, at(y, r, c) - my);
                    vx += k * a * a;
                    vy += k * b * b;
                    cxy += k * a * b;
                }
            }
            total += ((2.0 * mx * my + c1) * (2.0 * cxy + c2))
                / ((mx * mx + my * my + c1) * (vx + vy + c2));
            count += 1;
        }
    }
    total / count as f64
}

/// Scalar Adam trace for a constant gradient.
pub fn adam_reference(theta0: f64, grad: f64, lr: f64, steps: usize) -> Vec<f64> {
    let (b1, b2, eps) = (0.9f64, 0.999f64, 1e-8);
    let (mut m, mut v, mut th) = (0.0, 0.0, theta0);
    let mut out = Vec::new();
    for t in 1..=steps as i32 {
        m = b1 * m + (1.0 - b1) * grad;
        v = b2 * v + (1.0 - b2) * grad * grad;
        let mh = m / (1.0 - b1.powi(t));
        let vh = v / (1.0 - b2.powi(t));
        th -= lr * mh / (vh.sqrt() + eps);
        out.push(th);
    }
    out
}
