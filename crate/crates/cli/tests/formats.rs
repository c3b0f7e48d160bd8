use proptest::prelude::*;

use prom_cli::config::{parse_config, render_config};
use prom_cli::formats::{KSpaceFile, MaskFile, ValueType};
use prom_core::{Complex64, ComplexGrid, GridShape, MaskKind, ProMConfig};

fn stack() -> impl Strategy<Value = Vec<ComplexGrid>> {
    (1usize..4, 1usize..9, 1usize..9).prop_flat_map(|(n, h, w)| {
        prop::collection::vec(prop::collection::vec((-1e6f32..1e6, -1e6f32..1e6), h * w), n).prop_map(
            move |slices| {
                let shape = GridShape::new(h, w).unwrap();
                slices
                    .into_iter()
                    .map(|v| {
                        let data = v.into_iter().map(|(a, b)| Complex64::new(a as f64, b as f64)).collect();
                        ComplexGrid::new(shape, data).unwrap()
                    })
                    .collect()
            },
        )
    })
}

fn mask_file() -> impl Strategy<Value = MaskFile> {
    (1usize..9, 1usize..9, any::<bool>(), any::<bool>()).prop_flat_map(|(h, w, lines, binary)| {
        let shape = GridShape::new(h, w).unwrap();
        let kind = if lines { MaskKind::Lines1D } else { MaskKind::Full2D };
        let len = kind.param_len(shape);
        let values = if binary {
            prop::collection::vec(prop::bool::ANY.prop_map(|b| b as u8 as f32), len).boxed()
        } else {
            prop::collection::vec(0.0f32..=1.0, len).boxed()
        };
        let value_type = if binary { ValueType::Binary } else { ValueType::Probability };
        values.prop_map(move |v| MaskFile::new(shape, kind, value_type, v).unwrap())
    })
}

proptest! {
    #[test]
    fn kspace_round_trip_is_bit_exact(slices in stack()) {
        let file = KSpaceFile::from_slices(&slices).unwrap();
        let back = KSpaceFile::from_bytes(&file.to_bytes()).unwrap();
        prop_assert_eq!(back.slices(), slices);
        prop_assert_eq!(back.to_bytes(), file.to_bytes());
    }

    #[test]
    fn mask_round_trip_is_bit_exact(file in mask_file()) {
        let bytes = file.to_bytes();
        let back = MaskFile::from_bytes(&bytes).unwrap();
        prop_assert_eq!(back.to_bytes(), bytes);
        prop_assert_eq!(back, file);
    }

    #[test]
    fn truncation_is_always_rejected(slices in stack(), cut in 0usize..64) {
        let bytes = KSpaceFile::from_slices(&slices).unwrap().to_bytes();
        let keep = bytes.len().saturating_sub(cut + 1);
        prop_assert!(KSpaceFile::from_bytes(&bytes[..keep]).is_err());
    }

    #[test]
    fn config_round_trip(
        alpha in 1.0f64..64.0,
        iterations in 1usize..10_000,
        lr in 1e-5f64..1.0,
        explore in 0.0f64..0.5,
        seed in any::<u64>(),
        lines in any::<bool>(),
    ) {
        let config = ProMConfig {
            alpha,
            iterations,
            learning_rate: lr,
            explore_fraction: explore,
            seed,
            mask_kind: if lines { MaskKind::Lines1D } else { MaskKind::Full2D },
            ..Default::default()
        };
        prop_assert_eq!(parse_config(&render_config(&config)).unwrap(), config);
    }
}
