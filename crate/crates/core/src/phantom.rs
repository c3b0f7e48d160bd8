//! Piecewise-constant ellipse phantoms and emulated k-space.
//!
//! Coordinates are fractional: `x` runs along columns and `y` along rows,
//! both over `[-1, 1]`, sampled at pixel centers.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by std methods when std is linked
use num_traits::Float;
use rand::Rng;

use crate::kspace::{GridShape, RealGrid};
use crate::optim::TrainingPair;
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseSpec {
    pub center: (f64, f64),
    /// Semi-axes along the rotated x and y directions; both positive.
    pub semi_axes: (f64, f64),
    pub rotation: f64,
    /// Added to every pixel inside the ellipse.
    pub intensity: f64,
}

impl EllipseSpec {
    pub const fn new(center: (f64, f64), semi_axes: (f64, f64), rotation: f64, intensity: f64) -> Self {
        EllipseSpec {
            center,
            semi_axes,
            rotation,
            intensity,
        }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        let (dx, dy) = (x - self.center.0, y - self.center.1);
        let (s, c) = self.rotation.sin_cos();
        let u = dx * c + dy * s;
        let v = -dx * s + dy * c;
        let (a, b) = self.semi_axes;
        (u / a).powi(2) + (v / b).powi(2) <= 1.0
    }
}

/// Sums the intensities of all ellipses covering each pixel, clipped at 0.
pub fn render_phantom(specs: &[EllipseSpec], shape: GridShape) -> RealGrid {
    let (h, w) = (shape.height(), shape.width());
    let mut data = Vec::with_capacity(shape.len());
    for r in 0..h {
        let y = (2 * r + 1) as f64 / h as f64 - 1.0;
        for c in 0..w {
            let x = (2 * c + 1) as f64 / w as f64 - 1.0;
            let v: f64 = specs
                .iter()
                .filter(|e| e.contains(x, y))
                .map(|e| e.intensity)
                .sum();
            data.push(v.max(0.0));
        }
    }
    RealGrid::new(shape, data).expect("ellipse sums are finite")
}

/// Uniform perturbation ranges `[-j, j]` applied per ellipse.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jitter {
    pub center: f64,
    pub semi_axes: f64,
    pub rotation: f64,
    pub intensity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhantomFamily {
    pub ellipses: Vec<EllipseSpec>,
    pub jitter: Jitter,
    pub seed: u64,
}

const DEFAULT_JITTER: Jitter = Jitter {
    center: 0.03,
    semi_axes: 0.03,
    rotation: 0.1,
    intensity: 0.05,
};

impl PhantomFamily {
    /// The modified Shepp-Logan head phantom.
    pub fn shepp_logan(seed: u64) -> Self {
        let deg = |d: f64| d.to_radians();
        PhantomFamily {
            ellipses: alloc::vec![
                EllipseSpec::new((0.0, 0.0), (0.69, 0.92), 0.0, 1.0),
                EllipseSpec::new((0.0, 0.0184), (0.6624, 0.874), 0.0, -0.8),
                EllipseSpec::new((0.22, 0.0), (0.11, 0.31), deg(-18.0), -0.2),
                EllipseSpec::new((-0.22, 0.0), (0.16, 0.41), deg(18.0), -0.2),
                EllipseSpec::new((0.0, -0.35), (0.21, 0.25), 0.0, 0.1),
                EllipseSpec::new((0.0, -0.1), (0.046, 0.046), 0.0, 0.1),
                EllipseSpec::new((0.0, 0.1), (0.046, 0.046), 0.0, 0.1),
                EllipseSpec::new((-0.08, 0.605), (0.046, 0.023), 0.0, 0.1),
                EllipseSpec::new((0.0, 0.605), (0.023, 0.023), 0.0, 0.1),
                EllipseSpec::new((0.06, 0.605), (0.023, 0.046), 0.0, 0.1),
            ],
            jitter: DEFAULT_JITTER,
            seed,
        }
    }

    /// Nested ellipses sharing one center with alternating contrast.
    pub fn concentric(seed: u64) -> Self {
        PhantomFamily {
            ellipses: alloc::vec![
                EllipseSpec::new((0.0, 0.0), (0.8, 0.7), 0.0, 1.0),
                EllipseSpec::new((0.0, 0.0), (0.6, 0.5), 0.0, -0.5),
                EllipseSpec::new((0.0, 0.0), (0.4, 0.33), 0.0, 0.4),
                EllipseSpec::new((0.0, 0.0), (0.2, 0.16), 0.0, -0.3),
            ],
            jitter: DEFAULT_JITTER,
            seed,
        }
    }

    /// Wide, thin axis-aligned ellipses stacked vertically: horizontal
    /// stripes whose structure varies mostly along the row axis.
    pub fn striped(seed: u64) -> Self {
        let rows = [-0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75];
        let ellipses = rows
            .iter()
            .enumerate()
            .map(|(k, &y)| {
                let intensity = 0.5 + 0.1 * (k % 3) as f64;
                EllipseSpec::new((0.0, y), (0.9, 0.07), 0.0, intensity)
            })
            .collect();
        PhantomFamily {
            ellipses,
            jitter: Jitter {
                rotation: 0.0,
                ..DEFAULT_JITTER
            },
            seed,
        }
    }

    pub fn by_name(name: &str, seed: u64) -> Option<Self> {
        match name {
            "shepp-logan" => Some(Self::shepp_logan(seed)),
            "concentric" => Some(Self::concentric(seed)),
            "striped" => Some(Self::striped(seed)),
            _ => None,
        }
    }

    pub const NAMES: [&'static str; 3] = ["shepp-logan", "concentric", "striped"];

    fn jittered<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<EllipseSpec> {
        let j = self.jitter;
        let mut perturb = |mag: f64| {
            if mag > 0.0 {
                rng.random_range(-mag..=mag)
            } else {
                0.0
            }
        };
        self.ellipses
            .iter()
            .map(|e| EllipseSpec {
                center: (e.center.0 + perturb(j.center), e.center.1 + perturb(j.center)),
                semi_axes: (
                    (e.semi_axes.0 + perturb(j.semi_axes)).max(1e-3),
                    (e.semi_axes.1 + perturb(j.semi_axes)).max(1e-3),
                ),
                rotation: e.rotation + perturb(j.rotation),
                intensity: e.intensity + perturb(j.intensity),
            })
            .collect()
    }
}

/// Renders `count` jittered phantoms; k-space is the forward transform of
/// each image and the target is the image itself.
pub fn sample_family(family: &PhantomFamily, count: usize, shape: GridShape) -> Vec<TrainingPair> {
    let mut rng = rng::stream(family.seed, rng::PHANTOM);
    (0..count)
        .map(|_| TrainingPair::from_image(render_phantom(&family.jittered(&mut rng), shape)))
        .collect()
}
