//! Complex grids, centered unitary 2D Fourier transforms, zero-filled
//! reconstruction and the adjoints used by the optimizer's backward pass.
//!
//! Conventions: grids are row-major. Both image and k-space are centered, so
//! the zero-frequency coefficient of k-space and the origin of the image sit
//! at `(⌊H/2⌋, ⌊W/2⌋)`. The transform pair is
//! `forward = fftshift ∘ DFT ∘ ifftshift / √D` and
//! `inverse = fftshift ∘ IDFT ∘ ifftshift / √D`, so each is the adjoint of
//! the other.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by std methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fft::{Direction, FftPlan};

/// Below this modulus the magnitude derivative is taken to be zero.
pub const MAGNITUDE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridShape {
    height: usize,
    width: usize,
}

impl GridShape {
    pub fn new(height: usize, width: usize) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::EmptyShape { height, width });
        }
        Ok(GridShape { height, width })
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Number of elements `D = H·W`.
    pub fn len(&self) -> usize {
        self.height * self.width
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Row/column of the zero-frequency bin.
    pub fn center(&self) -> (usize, usize) {
        (self.height / 2, self.width / 2)
    }

    pub fn index(&self, row: usize, col: usize) -> usize {
        row * self.width + col
    }

    fn ensure_same(&self, other: &GridShape) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                left: *self,
                right: *other,
            })
        }
    }
}

impl fmt::Display for GridShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.height, self.width)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexGrid {
    shape: GridShape,
    data: Vec<Complex64>,
}

impl ComplexGrid {
    pub fn new(shape: GridShape, data: Vec<Complex64>) -> Result<Self> {
        Error::check_len(shape.len(), data.len())?;
        if let Some(index) = data.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(ComplexGrid { shape, data })
    }

    pub fn zeros(shape: GridShape) -> Self {
        ComplexGrid {
            shape,
            data: alloc::vec![Complex64::new(0.0, 0.0); shape.len()],
        }
    }

    /// Real image with zero imaginary part.
    pub fn from_real(image: &RealGrid) -> Self {
        ComplexGrid {
            shape: image.shape,
            data: image.data.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealGrid {
    shape: GridShape,
    data: Vec<f64>,
}

impl RealGrid {
    pub fn new(shape: GridShape, data: Vec<f64>) -> Result<Self> {
        Error::check_len(shape.len(), data.len())?;
        if let Some(index) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(RealGrid { shape, data })
    }

    pub fn zeros(shape: GridShape) -> Self {
        RealGrid {
            shape,
            data: alloc::vec![0.0; shape.len()],
        }
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub(crate) fn from_parts(shape: GridShape, data: Vec<f64>) -> Self {
        debug_assert_eq!(shape.len(), data.len());
        RealGrid { shape, data }
    }

    pub fn max(&self) -> f64 {
        self.data.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub(crate) fn ensure_same_shape(&self, other: &RealGrid) -> Result<()> {
        self.shape.ensure_same(&other.shape)
    }
}

/// Reusable row and column FFT plans for one grid shape.
#[derive(Debug, Clone)]
pub struct Transform2d {
    shape: GridShape,
    rows: FftPlan,
    cols: FftPlan,
    scale: f64,
}

impl Transform2d {
    pub fn new(shape: GridShape) -> Self {
        Transform2d {
            shape,
            rows: FftPlan::new(shape.width),
            cols: FftPlan::new(shape.height),
            scale: 1.0 / (shape.len() as f64).sqrt(),
        }
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn forward(&self, image: &ComplexGrid) -> Result<ComplexGrid> {
        self.shape.ensure_same(&image.shape)?;
        Ok(self.centered(&image.data, Direction::Forward))
    }

    pub fn inverse(&self, kspace: &ComplexGrid) -> Result<ComplexGrid> {
        self.shape.ensure_same(&kspace.shape)?;
        Ok(self.centered(&kspace.data, Direction::Inverse))
    }

    pub fn zero_fill(&self, kspace: &ComplexGrid, mask: &[f64]) -> Result<RealGrid> {
        let masked = apply_mask(kspace, mask)?;
        Ok(magnitude(&self.inverse(&masked)?))
    }

    fn centered(&self, data: &[Complex64], direction: Direction) -> ComplexGrid {
        let (h, w) = (self.shape.height, self.shape.width);
        let mut buf = shift(data, self.shape, h - h / 2, w - w / 2);
        for row in buf.chunks_exact_mut(w) {
            self.rows.process(row, direction);
        }
        if h > 1 {
            let mut column = alloc::vec![Complex64::new(0.0, 0.0); h];
            for c in 0..w {
                for (r, slot) in column.iter_mut().enumerate() {
                    *slot = buf[r * w + c];
                }
                self.cols.process(&mut column, direction);
                for (r, &v) in column.iter().enumerate() {
                    buf[r * w + c] = v * self.scale;
                }
            }
        } else {
            for v in buf.iter_mut() {
                *v *= self.scale;
            }
        }
        ComplexGrid {
            shape: self.shape,
            data: shift(&buf, self.shape, h / 2, w / 2),
        }
    }
}

/// Cyclic shift: element `(r, c)` moves to `((r + dr) mod H, (c + dc) mod W)`.
fn shift(src: &[Complex64], shape: GridShape, dr: usize, dc: usize) -> Vec<Complex64> {
    let (h, w) = (shape.height, shape.width);
    let mut dst = alloc::vec![Complex64::new(0.0, 0.0); src.len()];
    for r in 0..h {
        let tr = (r + dr) % h;
        for c in 0..w {
            dst[tr * w + (c + dc) % w] = src[r * w + c];
        }
    }
    dst
}

pub fn forward_transform(image: &ComplexGrid) -> ComplexGrid {
    Transform2d::new(image.shape).centered(&image.data, Direction::Forward)
}

pub fn inverse_transform(kspace: &ComplexGrid) -> ComplexGrid {
    Transform2d::new(kspace.shape).centered(&kspace.data, Direction::Inverse)
}

/// Elementwise `x_k ⊙ m`. Soft (fractional) masks are accepted.
pub fn apply_mask(kspace: &ComplexGrid, mask: &[f64]) -> Result<ComplexGrid> {
    Error::check_len(kspace.data.len(), mask.len())?;
    if let Some(index) = mask.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    Ok(ComplexGrid {
        shape: kspace.shape,
        data: kspace
            .data
            .iter()
            .zip(mask)
            .map(|(&z, &m)| z * m)
            .collect(),
    })
}

pub fn magnitude(image: &ComplexGrid) -> RealGrid {
    RealGrid {
        shape: image.shape,
        data: image.data.iter().map(|z| z.norm()).collect(),
    }
}

pub fn zero_fill_reconstruct(kspace: &ComplexGrid, mask: &[f64]) -> Result<RealGrid> {
    Ok(magnitude(&inverse_transform(&apply_mask(kspace, mask)?)))
}

/// Derivative of a real scalar with respect to each real mask entry, given
/// the cotangent of the masked k-space: `Re(conj(x_k) · cot)`.
pub fn apply_mask_vjp(kspace: &ComplexGrid, cotangent: &ComplexGrid) -> Result<Vec<f64>> {
    kspace.shape.ensure_same(&cotangent.shape)?;
    Ok(kspace
        .data
        .iter()
        .zip(&cotangent.data)
        .map(|(x, g)| x.re * g.re + x.im * g.im)
        .collect())
}

/// Adjoint of the unitary inverse transform, which is the forward transform.
pub fn inverse_transform_vjp(cotangent: &ComplexGrid) -> ComplexGrid {
    forward_transform(cotangent)
}

/// `cot · z/|z|`, zero where `|z| < MAGNITUDE_EPS`.
pub fn magnitude_vjp(image: &ComplexGrid, cotangent: &RealGrid) -> Result<ComplexGrid> {
    image.shape.ensure_same(&cotangent.shape)?;
    Ok(ComplexGrid {
        shape: image.shape,
        data: image
            .data
            .iter()
            .zip(&cotangent.data)
            .map(|(z, &g)| {
                let r = z.norm();
                if r < MAGNITUDE_EPS {
                    Complex64::new(0.0, 0.0)
                } else {
                    z * (g / r)
                }
            })
            .collect(),
    })
}
