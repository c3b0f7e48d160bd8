use std::path::Path;

use prom_core::GridShape;

use super::{write_file, FileError};

/// How real values map to 8-bit gray levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grayscale {
    /// `[0, 1]` maps linearly onto `0..=255`.
    Unit,
    /// Minimum to 0, maximum to 255; a constant image is all 0.
    MinMax,
}

pub fn encode_pgm(values: &[f64], shape: GridShape, scale: Grayscale) -> Vec<u8> {
    let (lo, hi) = match scale {
        Grayscale::Unit => (0.0, 1.0),
        Grayscale::MinMax => values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v))),
    };
    let span = hi - lo;
    let mut out = format!("P5\n{} {}\n255\n", shape.width(), shape.height()).into_bytes();
    out.extend(values.iter().map(|&v| {
        if span > 0.0 {
            (((v - lo) / span).clamp(0.0, 1.0) * 255.0).round() as u8
        } else {
            0
        }
    }));
    out
}

pub fn write_pgm(path: &Path, values: &[f64], shape: GridShape, scale: Grayscale) -> Result<(), FileError> {
    write_file(path, &encode_pgm(values, shape, scale))
}
