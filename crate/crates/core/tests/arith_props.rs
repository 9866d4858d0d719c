use corona_walk_core::arith::{exact_rank, p_adic_norm, recognize_quad, square_free_part, QuadInt};
use nalgebra::DMatrix;
use num_rational::Ratio;
use proptest::prelude::*;

fn float_rank(m: &[Vec<i64>]) -> usize {
    let rows = m.len();
    let cols = m[0].len();
    let d = DMatrix::from_fn(rows, cols, |i, j| m[i][j] as f64);
    let sv = d.singular_values();
    let max = sv.iter().fold(0.0f64, |a, &b| a.max(b));
    let threshold = 1e-9 * max.max(1.0) * rows.max(cols) as f64;
    sv.iter().filter(|&&s| s > threshold).count()
}

fn integer_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn rational() -> impl Strategy<Value = Ratio<i128>> {
    (-5000i128..=5000, 1i128..=5000)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| Ratio::new(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn rank_matches_singular_values(m in integer_matrix()) {
        prop_assert_eq!(exact_rank(&m), float_rank(&m));
    }

    #[test]
    fn rank_of_low_rank_products(a in prop::collection::vec(-3i64..=3, 6), b in prop::collection::vec(-3i64..=3, 5)) {
        let m: Vec<Vec<i64>> = a.iter().map(|x| b.iter().map(|y| x * y).collect()).collect();
        let expect = usize::from(a.iter().any(|&x| x != 0) && b.iter().any(|&y| y != 0));
        prop_assert_eq!(exact_rank(&m), expect);
    }

    #[test]
    fn p_adic_norm_is_multiplicative(x in rational(), y in rational(), p in prop::sample::select(vec![2u64, 3, 5, 7, 13])) {
        let lhs = p_adic_norm(x * y, p).unwrap();
        let rhs = p_adic_norm(x, p).unwrap() * p_adic_norm(y, p).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn square_free_split_recombines(n in 1u128..=u64::MAX as u128 >> 20) {
        let sp = square_free_part(n).unwrap();
        prop_assert_eq!(sp.s * sp.s * sp.c, n);
    }
}

#[test]
fn recognize_recovers_small_quadratics() {
    for delta in [1u64, 2, 3, 5, 13] {
        for a in -20i64..=20 {
            for b in -20i64..=20 {
                let Ok(q) = QuadInt::new(a, b, delta) else { continue };
                let got = recognize_quad(q.to_f64(), &[delta], 1e-9);
                assert_eq!(got, Some(q), "a={a} b={b} delta={delta}");
            }
        }
    }
}

#[test]
fn recognize_rejects_transcendental() {
    assert_eq!(recognize_quad(core::f64::consts::PI, &[1, 2, 3, 5, 13], 1e-9), None);
}
