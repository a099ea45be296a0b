use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;

use transtat_core::symfunc::{
    enumerate_partitions, schur_eval, schur_eval_tableaux, schur_expand_oracle,
    schur_expand_product, schur_monomials, ssyt_count, toeplitz_minor, IntegerSeries, Partition,
};

fn series_strategy() -> impl Strategy<Value = IntegerSeries> {
    (1i64..=4, prop::collection::vec(-3i64..=5, 0..4), any::<bool>()).prop_map(
        |(a0, rest, truncated)| {
            let mut coeffs = vec![a0];
            coeffs.extend(rest);
            if truncated {
                coeffs.resize(8, 1);
                IntegerSeries::truncated_from_i64s(&coeffs).unwrap()
            } else {
                IntegerSeries::from_i64s(&coeffs).unwrap()
            }
        },
    )
}

fn partition_strategy(max_len: usize, max_part: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_part, 0..=max_len).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).unwrap()
    })
}

/// `d` points on the unit circle at least `0.3` rad apart, scaled by radii
/// in `[0.6, 1.4]`.
fn separated_point(d: usize) -> impl Strategy<Value = Vec<Complex64>> {
    (
        prop::collection::vec(0.3f64..0.9, d),
        prop::collection::vec(0.6f64..1.4, d),
        0.0f64..std::f64::consts::TAU,
    )
        .prop_map(|(gaps, radii, start)| {
            let mut angle = start;
            gaps.iter()
                .zip(radii)
                .map(|(g, r)| {
                    angle += g;
                    Complex64::from_polar(r, angle)
                })
                .collect()
        })
}

fn monomial_sum(lambda: &Partition, point: &[Complex64]) -> Complex64 {
    schur_monomials(lambda, point.len())
        .iter()
        .map(|(exps, &count)| {
            exps.iter()
                .zip(point)
                .map(|(&e, x)| x.powu(e))
                .product::<Complex64>()
                * count as f64
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expansion_matches_oracle(a in series_strategy(), d in 1usize..=3, w in 0u32..=5) {
        let fast = schur_expand_product(&a, d, w).unwrap();
        let slow = schur_expand_oracle(&a, d, w).unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn bialternant_matches_monomials(
        lambda in partition_strategy(3, 4),
        point in (1usize..=4).prop_flat_map(separated_point),
    ) {
        prop_assume!(lambda.length() <= point.len());
        let direct = schur_eval(&lambda, &point);
        let expected = monomial_sum(&lambda, &point);
        prop_assert!(
            (direct - expected).norm() <= 1e-10 * expected.norm().max(1.0),
            "{} at {:?}: {} vs {}", lambda, point, direct, expected
        );
    }

    /// Each extra mode appends a row and column with `a_0` on the diagonal
    /// and zeros to its right, so the minor scales by `a_0`.
    #[test]
    fn toeplitz_minor_stable_with_extra_modes(a in series_strategy(), lambda in partition_strategy(3, 3)) {
        let d = lambda.length().max(1);
        let empty = Partition::empty();
        let a0 = a.coeffs()[0].clone();
        let base = toeplitz_minor(&a, &lambda, &empty, d).unwrap();
        prop_assert_eq!(&base * &a0, toeplitz_minor(&a, &lambda, &empty, d + 1).unwrap());
        prop_assert_eq!(&base * &a0 * &a0, toeplitz_minor(&a, &lambda, &empty, d + 2).unwrap());
        if a.is_monic_at_zero() {
            prop_assert_eq!(&base, &toeplitz_minor(&a, &lambda, &empty, d + 1).unwrap());
        }
    }

    #[test]
    fn all_ones_point_counts_tableaux(lambda in partition_strategy(3, 4), d in 1usize..=4) {
        prop_assume!(lambda.length() <= d);
        let ones = vec![Complex64::new(1.0, 0.0); d];
        let count = ssyt_count(&lambda, d);
        prop_assert!((schur_eval(&lambda, &ones) - Complex64::new(count as f64, 0.0)).norm() < 1e-9);
        prop_assert_eq!(BigInt::from(count), lambda.dimension(d));
    }
}

#[test]
fn coincident_points_use_tableaux() {
    let lambda = Partition::new(vec![2, 1]).unwrap();
    let x = Complex64::new(0.7, 0.2);
    let point = [x, x, Complex64::new(-0.4, 1.1)];
    let direct = schur_eval(&lambda, &point);
    assert!((direct - schur_eval_tableaux(&lambda, &point)).norm() < 1e-12);
    assert!((direct - monomial_sum(&lambda, &point)).norm() < 1e-12);
}

#[test]
fn expansion_covers_every_partition_up_to_weight() {
    // (1 + x)^d has c_λ = 1 on columns only.
    let a = IntegerSeries::from_i64s(&[1, 1]).unwrap();
    let c = schur_expand_product(&a, 3, 4).unwrap();
    let columns: Vec<Partition> = (0..=3).map(Partition::column).collect();
    assert_eq!(c.keys().cloned().collect::<Vec<_>>(), columns);
    assert_eq!(enumerate_partitions(4, 3).len(), 11);
}
