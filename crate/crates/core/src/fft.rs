//! One-dimensional complex FFT plans.
//!
//! Power-of-two lengths use an iterative radix-2 Cooley-Tukey transform. Any
//! other length goes through Bluestein's chirp-z algorithm on a padded
//! power-of-two plan. Transforms are unnormalized; callers apply scaling.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by std methods when std is linked
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `X_k = Σ x_n e^{-2πikn/N}`
    Forward,
    /// `x_n = Σ X_k e^{+2πikn/N}`
    Inverse,
}

#[derive(Debug, Clone)]
pub struct FftPlan {
    len: usize,
    algorithm: Algorithm,
}

#[derive(Debug, Clone)]
enum Algorithm {
    Identity,
    Radix2(Radix2),
    Bluestein(Bluestein),
}

impl FftPlan {
    pub fn new(len: usize) -> Self {
        let algorithm = if len <= 1 {
            Algorithm::Identity
        } else if len.is_power_of_two() {
            Algorithm::Radix2(Radix2::new(len))
        } else {
            Algorithm::Bluestein(Bluestein::new(len))
        };
        FftPlan { len, algorithm }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Transforms `data` in place.
    ///
    /// # Panics
    /// If `data.len()` differs from the planned length.
    pub fn process(&self, data: &mut [Complex64], direction: Direction) {
        assert_eq!(data.len(), self.len, "buffer length does not match FFT plan");
        match &self.algorithm {
            Algorithm::Identity => {}
            Algorithm::Radix2(r) => r.process(data, direction),
            Algorithm::Bluestein(b) => b.process(data, direction),
        }
    }
}

#[derive(Debug, Clone)]
struct Radix2 {
    len: usize,
    // e^{-2πik/N} for k < N/2
    twiddles: Vec<Complex64>,
    bit_reversed: Vec<usize>,
}

impl Radix2 {
    fn new(len: usize) -> Self {
        let twiddles = (0..len / 2)
            .map(|k| unit_phasor(-2.0 * PI * k as f64 / len as f64))
            .collect();
        let bits = len.trailing_zeros();
        let bit_reversed = (0..len)
            .map(|i| i.reverse_bits() >> (usize::BITS - bits))
            .collect();
        Radix2 {
            len,
            twiddles,
            bit_reversed,
        }
    }

    fn process(&self, data: &mut [Complex64], direction: Direction) {
        let n = self.len;
        for (i, &j) in self.bit_reversed.iter().enumerate() {
            if i < j {
                data.swap(i, j);
            }
        }
        let mut size = 2;
        while size <= n {
            let half = size / 2;
            let stride = n / size;
            for block in data.chunks_exact_mut(size) {
                let (lo, hi) = block.split_at_mut(half);
                for (k, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                    let mut w = self.twiddles[k * stride];
                    if direction == Direction::Inverse {
                        w = w.conj();
                    }
                    let t = *b * w;
                    *b = *a - t;
                    *a += t;
                }
            }
            size *= 2;
        }
    }
}

#[derive(Debug, Clone)]
struct Bluestein {
    len: usize,
    inner: Radix2,
    // e^{-iπk²/N}
    chirp: Vec<Complex64>,
    // forward FFT of the conjugate chirp, wrapped to the padded length
    kernel_spectrum: Vec<Complex64>,
}

impl Bluestein {
    fn new(len: usize) -> Self {
        let padded = (2 * len - 1).next_power_of_two();
        let inner = Radix2::new(padded);
        let modulus = 2 * len as u128;
        let chirp: Vec<Complex64> = (0..len)
            .map(|k| {
                // k² mod 2N keeps the phase argument small for large k
                let k2 = (k as u128 * k as u128) % modulus;
                unit_phasor(-PI * k2 as f64 / len as f64)
            })
            .collect();
        let mut kernel = vec![Complex64::new(0.0, 0.0); padded];
        kernel[0] = chirp[0].conj();
        for k in 1..len {
            kernel[k] = chirp[k].conj();
            kernel[padded - k] = chirp[k].conj();
        }
        inner.process(&mut kernel, Direction::Forward);
        Bluestein {
            len,
            inner,
            chirp,
            kernel_spectrum: kernel,
        }
    }

    fn process(&self, data: &mut [Complex64], direction: Direction) {
        let inverse = direction == Direction::Inverse;
        let padded = self.inner.len;
        let mut work = vec![Complex64::new(0.0, 0.0); padded];
        for ((w, &x), &c) in work.iter_mut().zip(data.iter()).zip(&self.chirp) {
            let x = if inverse { x.conj() } else { x };
            *w = x * c;
        }
        self.inner.process(&mut work, Direction::Forward);
        for (w, &k) in work.iter_mut().zip(&self.kernel_spectrum) {
            *w *= k;
        }
        self.inner.process(&mut work, Direction::Inverse);
        let scale = 1.0 / padded as f64;
        for ((x, &w), &c) in data.iter_mut().zip(&work).zip(&self.chirp) {
            let y = w * c * scale;
            *x = if inverse { y.conj() } else { y };
        }
        debug_assert_eq!(data.len(), self.len);
    }
}

fn unit_phasor(angle: f64) -> Complex64 {
    Complex64::new(angle.cos(), angle.sin())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_dft(x: &[Complex64], direction: Direction) -> Vec<Complex64> {
        let n = x.len();
        let sign = match direction {
            Direction::Forward => -1.0,
            Direction::Inverse => 1.0,
        };
        (0..n)
            .map(|k| {
                x.iter()
                    .enumerate()
                    .map(|(j, &v)| {
                        let angle = sign * 2.0 * PI * ((j * k) % n) as f64 / n as f64;
                        v * unit_phasor(angle)
                    })
                    .sum()
            })
            .collect()
    }

    fn test_signal(n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|i| {
                let t = i as f64;
                Complex64::new((0.37 * t).sin() + 0.1 * t, (1.3 * t).cos() - 0.5)
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft_for_many_lengths() {
        for n in [1usize, 2, 3, 4, 5, 6, 7, 8, 12, 15, 16, 17, 30, 64, 100] {
            let x = test_signal(n);
            for direction in [Direction::Forward, Direction::Inverse] {
                let expected = naive_dft(&x, direction);
                let mut got = x.clone();
                FftPlan::new(n).process(&mut got, direction);
                for (a, b) in got.iter().zip(&expected) {
                    assert!((a - b).norm() < 1e-9 * (1.0 + b.norm()), "n={n}");
                }
            }
        }
    }

    #[test]
    fn forward_then_inverse_scales_by_length() {
        let x = test_signal(48);
        let plan = FftPlan::new(48);
        let mut y = x.clone();
        plan.process(&mut y, Direction::Forward);
        plan.process(&mut y, Direction::Inverse);
        for (a, b) in y.iter().zip(&x) {
            assert!((a / 48.0 - b).norm() < 1e-12);
        }
    }
}
