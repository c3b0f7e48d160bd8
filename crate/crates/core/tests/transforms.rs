mod oracles;

use proptest::prelude::*;
use prom_core::kspace::{
    apply_mask, apply_mask_vjp, forward_transform, inverse_transform, inverse_transform_vjp, magnitude,
    magnitude_vjp,
};
use prom_core::{Complex64, ComplexGrid, GridShape, RealGrid};

fn complex_grid(h: usize, w: usize) -> impl Strategy<Value = ComplexGrid> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), h * w).prop_map(move |v| {
        let data = v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
        ComplexGrid::new(GridShape::new(h, w).unwrap(), data).unwrap()
    })
}

fn sized_grid(max: usize) -> impl Strategy<Value = ComplexGrid> {
    (1..=max, 1..=max).prop_flat_map(|(h, w)| complex_grid(h, w))
}

fn inner(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.re * y.re + x.im * y.im).sum()
}

fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unitary_and_round_trip(x in sized_grid(20)) {
        let k = forward_transform(&x);
        let rel = (k.norm_sqr().sqrt() - x.norm_sqr().sqrt()).abs() / x.norm_sqr().sqrt().max(1e-300);
        prop_assert!(rel < 1e-9);
        prop_assert!(max_abs_diff(inverse_transform(&k).data(), x.data()) < 1e-10);
        prop_assert!(max_abs_diff(forward_transform(&inverse_transform(&x)).data(), x.data()) < 1e-10);
    }

    #[test]
    fn matches_direct_dft(x in (1usize..=9, 1usize..=9).prop_flat_map(|(h, w)| complex_grid(h, w))) {
        let (h, w) = (x.shape().height(), x.shape().width());
        let fwd = oracles::naive_dft2(x.data(), h, w, -1.0);
        let inv = oracles::naive_dft2(x.data(), h, w, 1.0);
        prop_assert!(max_abs_diff(forward_transform(&x).data(), &fwd) < 1e-10);
        prop_assert!(max_abs_diff(inverse_transform(&x).data(), &inv) < 1e-10);
    }

    #[test]
    fn inverse_transform_adjoint(
        (v, w) in (1usize..=16, 1usize..=16).prop_flat_map(|(h, w)| (complex_grid(h, w), complex_grid(h, w)))
    ) {
        let lhs = inner(inverse_transform(&v).data(), w.data());
        let rhs = inner(v.data(), inverse_transform_vjp(&w).data());
        prop_assert!((lhs - rhs).abs() <= 1e-8 * (1.0 + lhs.abs()));
    }

    #[test]
    fn mask_adjoint_and_linearity(
        (x, cot, m1, m2, a, b) in (1usize..=16, 1usize..=16).prop_flat_map(|(h, w)| (
            complex_grid(h, w),
            complex_grid(h, w),
            prop::collection::vec(0.0f64..1.0, h * w),
            prop::collection::vec(0.0f64..1.0, h * w),
            -2.0f64..2.0,
            -2.0f64..2.0,
        ))
    ) {
        // J v = x ⊙ v for a real direction v
        let jv = apply_mask(&x, &m1).unwrap();
        let lhs = inner(jv.data(), cot.data());
        let rhs: f64 = m1.iter().zip(apply_mask_vjp(&x, &cot).unwrap()).map(|(p, q)| p * q).sum();
        prop_assert!((lhs - rhs).abs() <= 1e-8 * (1.0 + lhs.abs()));

        let combo: Vec<f64> = m1.iter().zip(&m2).map(|(p, q)| a * p + b * q).collect();
        let left = apply_mask(&x, &combo).unwrap();
        let (r1, r2) = (apply_mask(&x, &m1).unwrap(), apply_mask(&x, &m2).unwrap());
        let right: Vec<Complex64> = r1.data().iter().zip(r2.data()).map(|(p, q)| p * a + q * b).collect();
        prop_assert!(max_abs_diff(left.data(), &right) < 1e-12);
    }

    #[test]
    fn magnitude_adjoint(
        (z, dz, cot) in (1usize..=16, 1usize..=16).prop_flat_map(|(h, w)| (
            complex_grid(h, w),
            complex_grid(h, w),
            prop::collection::vec(-1.0f64..1.0, h * w),
        ))
    ) {
        prop_assume!(z.data().iter().all(|v| v.norm() > 1e-6));
        let shape = z.shape();
        // linearization of |z| in direction dz: Re(conj(z)·dz)/|z|
        let jv: Vec<f64> = z.data().iter().zip(dz.data()).map(|(a, d)| (a.conj() * d).re / a.norm()).collect();
        let lhs: f64 = jv.iter().zip(&cot).map(|(p, q)| p * q).sum();
        let back = magnitude_vjp(&z, &RealGrid::new(shape, cot.clone()).unwrap()).unwrap();
        let rhs = inner(dz.data(), back.data());
        prop_assert!((lhs - rhs).abs() <= 1e-8 * (1.0 + lhs.abs()));
        let mag = magnitude(&z);
        prop_assert!(mag.data().iter().zip(z.data()).all(|(m, v)| (m - v.norm()).abs() < 1e-15));
    }
}

#[test]
fn unitary_at_large_sizes() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for (h, w) in [(256, 256), (128, 200), (255, 17), (96, 64)] {
        let data = (0..h * w)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let x = ComplexGrid::new(GridShape::new(h, w).unwrap(), data).unwrap();
        let k = forward_transform(&x);
        let rel = (k.norm_sqr() - x.norm_sqr()).abs() / x.norm_sqr();
        assert!(rel < 1e-9, "{h}x{w}: {rel}");
        assert!(max_abs_diff(inverse_transform(&k).data(), x.data()) < 1e-10);
    }
}
