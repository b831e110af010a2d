mod common;

use common::r;
use num_rational::BigRational;
use proptest::prelude::*;
use riesz_spectra::spectrum::{avdonin_interval_spectrum, rational_grid_spectrum, Spectrum};
use riesz_spectra::Error;

#[test]
fn golden_ratio_example() {
    let phi = r(618_034, 1_000_000);
    let s = avdonin_interval_spectrum(&phi).unwrap();
    let nums = s.window_numerators(8.0).unwrap();
    let pos: Vec<i64> = nums.into_iter().filter(|&k| k >= 0).collect();
    assert_eq!(pos, vec![0, 2, 3, 5, 6, 8]);
}

#[test]
fn degenerate_beta() {
    assert!(matches!(avdonin_interval_spectrum(&r(1, 100)), Err(Error::DegenerateBeta { .. })));
    assert!(matches!(avdonin_interval_spectrum(&r(3, 2)), Err(Error::InvalidInput(_))));
    assert_eq!(avdonin_interval_spectrum(&r(1, 4)).unwrap(), Spectrum::coset(4, 0));
}

#[test]
fn grid_spectrum_density() {
    let g = rational_grid_spectrum(5, &[0, 2, 3]).unwrap();
    assert_eq!(g.density(), r(3, 5));
}

#[test]
fn shift_requires_lattice() {
    assert!(matches!(Spectrum::integers().shift(&r(1, 2)), Err(Error::IncompatibleShift { .. })));
    let half = Spectrum::coset(2, 1).dilate(&r(1, 2)).unwrap();
    assert_eq!(half.shift(&r(1, 1)).unwrap().window_numerators(3.0).unwrap(), vec![-5, -3, -1, 1, 3, 5]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn avdonin_counts_track_density(p in 7i64..990) {
        let beta = r(p, 997);
        let s = avdonin_interval_spectrum(&beta).unwrap();
        prop_assert_eq!(s.density(), beta.clone());
        for t in [100.0, 700.0] {
            let count = s.window_numerators(t).unwrap().len() as f64;
            let expected = 2.0 * t * p as f64 / 997.0;
            prop_assert!((count - expected).abs() <= 2.0);
        }
        let nums = s.window_numerators(300.0).unwrap();
        prop_assert!(nums.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn dilation_and_shift_commute_with_windows(p in 1i64..=6, q in 1i64..=4, shift in -9i64..=9) {
        let base = avdonin_interval_spectrum(&r(5, 13)).unwrap().dilate(&r(3, 1)).unwrap();
        let c = BigRational::new(p.into(), q.into());
        let d = base.dilate(&c).unwrap();
        prop_assert_eq!(d.density(), base.density() / &c);
        let moved = base.shift_int(shift);
        let lhs: Vec<i64> = moved.window_numerators(200.0).unwrap();
        let rhs: Vec<i64> = base.window_numerators(250.0).unwrap().into_iter().map(|k| k + shift).filter(|k| k.abs() <= 200).collect();
        prop_assert_eq!(lhs, rhs);
        let text = serde_json::to_string(&d).unwrap();
        let back: Spectrum = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn cosets_of_n_partition_integers(n in 1u64..=9) {
        let all = Spectrum::union_all((0..n as i64).map(|j| Spectrum::coset(n, j)).collect::<Vec<_>>().iter());
        prop_assert_eq!(all.window_numerators(50.0).unwrap(), (-50..=50).collect::<Vec<_>>());
    }
}
