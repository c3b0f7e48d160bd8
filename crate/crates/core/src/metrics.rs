//! Reconstruction quality (PSNR, SSIM, NMSE) and segmentation overlap
//! (Dice, IoU).

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[allow(unused_imports)] // shadowed by std methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::kspace::{GridShape, RealGrid};

pub const PSNR_CAP_DB: f64 = 100.0;
pub const SSIM_WINDOW: usize = 11;
pub const SSIM_SIGMA: f64 = 1.5;
pub const SSIM_K1: f64 = 0.01;
pub const SSIM_K2: f64 = 0.03;

/// `‖x̂ − x‖² / ‖x‖²`
pub fn nmse(reconstruction: &RealGrid, target: &RealGrid) -> Result<f64> {
    reconstruction.ensure_same_shape(target)?;
    let denom: f64 = target.data().iter().map(|v| v * v).sum();
    if denom <= 0.0 {
        return Err(Error::UndefinedMetric("NMSE of a zero-norm target"));
    }
    let num: f64 = reconstruction
        .data()
        .iter()
        .zip(target.data())
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    Ok(num / denom)
}

/// `10·log10(peak²/MSE)` with `peak = max(target)`, capped at 100 dB.
pub fn psnr(reconstruction: &RealGrid, target: &RealGrid) -> Result<f64> {
    reconstruction.ensure_same_shape(target)?;
    let peak = target.max();
    if peak <= 0.0 {
        return Err(Error::UndefinedMetric("PSNR of a target with no positive peak"));
    }
    let n = target.data().len() as f64;
    let mse = reconstruction
        .data()
        .iter()
        .zip(target.data())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        / n;
    if mse < peak * peak * 1e-10 {
        return Ok(PSNR_CAP_DB);
    }
    Ok(10.0 * (peak * peak / mse).log10())
}

/// How the SSIM dynamic range is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SsimRange {
    /// `max(target) − min(target)`
    #[default]
    Target,
    /// Range over both grids; makes SSIM symmetric in its arguments.
    Pair,
}

pub fn ssim(reconstruction: &RealGrid, target: &RealGrid) -> Result<f64> {
    ssim_with(reconstruction, target, SsimRange::Target)
}

/// Mean SSIM over all fully contained 11×11 Gaussian windows (σ = 1.5).
pub fn ssim_with(reconstruction: &RealGrid, target: &RealGrid, range: SsimRange) -> Result<f64> {
    reconstruction.ensure_same_shape(target)?;
    let shape = target.shape();
    if shape.height() < SSIM_WINDOW || shape.width() < SSIM_WINDOW {
        return Err(Error::UndefinedMetric("SSIM needs grids of at least 11x11"));
    }
    let dynamic = match range {
        SsimRange::Target => target.max() - target.min(),
        SsimRange::Pair => {
            target.max().max(reconstruction.max()) - target.min().min(reconstruction.min())
        }
    };
    if dynamic <= 0.0 {
        return if reconstruction.data() == target.data() {
            Ok(1.0)
        } else {
            Err(Error::UndefinedMetric("SSIM with zero dynamic range"))
        };
    }
    let c1 = (SSIM_K1 * dynamic).powi(2);
    let c2 = (SSIM_K2 * dynamic).powi(2);

    let x = reconstruction.data();
    let y = target.data();
    let kernel = gaussian_kernel();
    let blur = |values: &[f64]| valid_filter(values, shape, &kernel);
    let xx: Vec<f64> = x.iter().map(|v| v * v).collect();
    let yy: Vec<f64> = y.iter().map(|v| v * v).collect();
    let xy: Vec<f64> = x.iter().zip(y).map(|(a, b)| a * b).collect();
    let (mx, my) = (blur(x), blur(y));
    let (sxx, syy, sxy) = (blur(&xx), blur(&yy), blur(&xy));

    let mut total = 0.0;
    for i in 0..mx.len() {
        let (ux, uy) = (mx[i], my[i]);
        let vx = sxx[i] - ux * ux;
        let vy = syy[i] - uy * uy;
        let cov = sxy[i] - ux * uy;
        total += (2.0 * ux * uy + c1) * (2.0 * cov + c2)
            / ((ux * ux + uy * uy + c1) * (vx + vy + c2));
    }
    Ok(total / mx.len() as f64)
}

fn gaussian_kernel() -> [f64; SSIM_WINDOW] {
    let mut k = [0.0; SSIM_WINDOW];
    let half = (SSIM_WINDOW / 2) as f64;
    for (i, w) in k.iter_mut().enumerate() {
        let d = i as f64 - half;
        *w = (-(d * d) / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp();
    }
    let sum: f64 = k.iter().sum();
    k.iter_mut().for_each(|w| *w /= sum);
    k
}

/// Separable filter keeping only outputs whose window lies inside the grid.
fn valid_filter(values: &[f64], shape: GridShape, kernel: &[f64; SSIM_WINDOW]) -> Vec<f64> {
    let (h, w) = (shape.height(), shape.width());
    let ow = w - SSIM_WINDOW + 1;
    let oh = h - SSIM_WINDOW + 1;
    let mut rows: Vec<f64> = Vec::with_capacity(h * ow);
    for r in 0..h {
        let row = &values[r * w..(r + 1) * w];
        for c in 0..ow {
            rows.push(kernel.iter().zip(&row[c..]).map(|(k, v)| k * v).sum());
        }
    }
    let mut out = Vec::with_capacity(oh * ow);
    for r in 0..oh {
        for c in 0..ow {
            out.push(
                kernel
                    .iter()
                    .enumerate()
                    .map(|(k, wk)| wk * rows[(r + k) * ow + c])
                    .sum(),
            );
        }
    }
    out
}

/// Integer class per grid element; 0 is background.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentationMap {
    shape: GridShape,
    labels: Vec<u32>,
    num_classes: u32,
}

impl SegmentationMap {
    pub fn new(shape: GridShape, labels: Vec<u32>, num_classes: u32) -> Result<Self> {
        Error::check_len(shape.len(), labels.len())?;
        if labels.iter().any(|&l| l >= num_classes) {
            return Err(Error::InvalidConfig("label exceeds declared class count"));
        }
        Ok(SegmentationMap {
            shape,
            labels,
            num_classes,
        })
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn num_classes(&self) -> u32 {
        self.num_classes
    }
}

/// `(|A∩B|, |A|, |B|)` for the indicator sets of `class_id`.
fn overlap(prediction: &SegmentationMap, truth: &SegmentationMap, class_id: u32) -> Result<(usize, usize, usize)> {
    if prediction.shape != truth.shape {
        return Err(Error::ShapeMismatch {
            left: prediction.shape,
            right: truth.shape,
        });
    }
    let mut counts = (0, 0, 0);
    for (&p, &t) in prediction.labels.iter().zip(&truth.labels) {
        let (a, b) = (p == class_id, t == class_id);
        counts.0 += usize::from(a && b);
        counts.1 += usize::from(a);
        counts.2 += usize::from(b);
    }
    Ok(counts)
}

/// `2|A∩B|/(|A|+|B|)`, 1 when both sets are empty.
pub fn dice(prediction: &SegmentationMap, truth: &SegmentationMap, class_id: u32) -> Result<f64> {
    let (inter, a, b) = overlap(prediction, truth, class_id)?;
    if a + b == 0 {
        return Ok(1.0);
    }
    Ok(2.0 * inter as f64 / (a + b) as f64)
}

/// `|A∩B|/|A∪B|`, 1 when both sets are empty.
pub fn iou(prediction: &SegmentationMap, truth: &SegmentationMap, class_id: u32) -> Result<f64> {
    let (inter, a, b) = overlap(prediction, truth, class_id)?;
    let union = a + b - inter;
    if union == 0 {
        return Ok(1.0);
    }
    Ok(inter as f64 / union as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Psnr,
    Ssim,
    Nmse,
    Dice,
    Iou,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Psnr => "psnr",
            Metric::Ssim => "ssim",
            Metric::Nmse => "nmse",
            Metric::Dice => "dice",
            Metric::Iou => "iou",
        }
    }

    /// Evaluates a reconstruction metric. Overlap metrics need label maps
    /// and are rejected here.
    pub fn reconstruction(self, reconstruction: &RealGrid, target: &RealGrid) -> Result<f64> {
        match self {
            Metric::Psnr => psnr(reconstruction, target),
            Metric::Ssim => ssim(reconstruction, target),
            Metric::Nmse => nmse(reconstruction, target),
            Metric::Dice | Metric::Iou => Err(Error::UndefinedMetric(
                "overlap metrics need segmentation maps",
            )),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "psnr" => Ok(Metric::Psnr),
            "ssim" => Ok(Metric::Ssim),
            "nmse" => Ok(Metric::Nmse),
            "dice" => Ok(Metric::Dice),
            "iou" => Ok(Metric::Iou),
            _ => Err(Error::InvalidConfig("unknown metric")),
        }
    }
}

/// Per-item metric values plus run metadata. Aggregates are arithmetic
/// means of the per-item rows.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    pub metrics: Vec<Metric>,
    pub rows: Vec<Vec<f64>>,
    pub alpha: Option<f64>,
    pub mask_id: String,
    pub seed: Option<u64>,
}

impl MetricReport {
    pub fn new(metrics: Vec<Metric>, mask_id: String) -> Self {
        MetricReport {
            metrics,
            rows: Vec::new(),
            alpha: None,
            mask_id,
            seed: None,
        }
    }

    pub fn push(&mut self, row: Vec<f64>) -> Result<()> {
        Error::check_len(self.metrics.len(), row.len())?;
        self.rows.push(row);
        Ok(())
    }

    /// Evaluates every configured metric for one reconstruction.
    pub fn push_reconstruction(&mut self, reconstruction: &RealGrid, target: &RealGrid) -> Result<()> {
        let row = self
            .metrics
            .iter()
            .map(|m| m.reconstruction(reconstruction, target))
            .collect::<Result<Vec<_>>>()?;
        self.push(row)
    }

    pub fn mean(&self) -> Vec<f64> {
        let n = self.rows.len().max(1) as f64;
        (0..self.metrics.len())
            .map(|j| self.rows.iter().map(|r| r[j]).sum::<f64>() / n)
            .collect()
    }
}
