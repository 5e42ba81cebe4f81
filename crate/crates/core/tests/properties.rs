mod common;

use std::collections::BTreeMap;

use common::*;
use goeritz_core::{DiagramAnalysis, IntMatrix, Sign};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use proptest::sample::select;

const CASES: u32 = 512;

fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|f| f.name).collect()
}

fn prime_names() -> Vec<&'static str> {
    FIXTURES
        .iter()
        .filter(|f| f.prime)
        .map(|f| f.name)
        .collect()
}

fn oriented(name: &str, swap: bool) -> DiagramAnalysis {
    let a = analysis(name);
    if swap {
        a.swapped()
    } else {
        a
    }
}

/// A fixture, a shading, and a random row signing and row permutation for it.
fn perturbed(
    names: Vec<&'static str>,
) -> impl Strategy<Value = (&'static str, bool, Vec<Sign>, Vec<usize>)> {
    select(names).prop_flat_map(|name| {
        let n = load(name).crossing_count();
        let sign = prop_oneof![Just(Sign::Plus), Just(Sign::Minus)];
        (
            Just(name),
            any::<bool>(),
            prop::collection::vec(sign, n),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        )
    })
}

fn small_square() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-3i64..=3, n), n))
}

fn small_rect() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=7)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn index_guided_reconstruction_ignores_row_signs_and_order(
        (name, swap, signs, perm) in perturbed(fixture_names()),
    ) {
        let a = oriented(name, swap);
        let md = a.dehn.with_row_signs(&signs).with_row_order(&perm).unwrap();
        let res = goeritz_core::reconstruct::thm1_reconstruct(&md, &a.indices).unwrap();
        prop_assert_eq!(&res.left, &a.goeritz.matrix);
        prop_assert!(res.right_block_zero());
    }

    #[test]
    fn algebraic_reconstruction_ignores_row_signs_and_order(
        (name, swap, signs, perm) in perturbed(prime_names()),
    ) {
        let a = oriented(name, swap);
        let md = a.dehn.with_row_signs(&signs).with_row_order(&perm).unwrap();
        let res = goeritz_core::reconstruct::thm2_reconstruct(&md, &BTreeMap::new()).unwrap();
        let g = &a.goeritz.matrix;
        prop_assert!(res.left == *g || res.left == g.neg());
        prop_assert!(res.right_block_zero());
        // canonical sign does not depend on the perturbation
        let base = a.thm2(&BTreeMap::new()).unwrap();
        prop_assert_eq!(&res.left, &base.left);
    }

    #[test]
    fn determinant_matches_cofactor_expansion(m in small_square()) {
        let det = IntMatrix::from_rows(&m).unwrap().det().unwrap();
        prop_assert_eq!(det, BigInt::from(cofactor_det(&m)));
    }

    #[test]
    fn rank_plus_nullity_mod_p(m in small_rect(), p in select(vec![2u64, 3, 5, 7, 11, 13])) {
        let m = IntMatrix::from_rows(&m).unwrap();
        let rank = m.rank_mod_p(p).unwrap();
        let kernel = m.kernel_mod_p(p).unwrap();
        prop_assert_eq!(rank + kernel.len(), m.cols());
        prop_assert_eq!(kernel.len(), nullity_mod_p(&m, p as i64));
        for v in &kernel {
            for row in m.to_i64_rows().unwrap() {
                let dot: i128 = row
                    .iter()
                    .zip(v)
                    .map(|(&x, &y)| x as i128 * y as i128)
                    .sum();
                prop_assert_eq!(dot.rem_euclid(p as i128), 0);
            }
        }
    }

    #[test]
    fn smith_form_product_is_determinant(m in small_square()) {
        let m = IntMatrix::from_rows(&m).unwrap();
        let snf = m.smith_normal_form();
        let det = m.det().unwrap().abs();
        if snf.rank() == m.rows() {
            prop_assert_eq!(snf.nonzero_product(), det);
        } else {
            prop_assert_eq!(det, BigInt::from(0));
        }
        let factors = &snf.invariant_factors;
        for w in factors.windows(2) {
            prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
        }
    }

    #[test]
    fn smith_rank_agrees_with_large_prime_rank(m in small_rect()) {
        let m = IntMatrix::from_rows(&m).unwrap();
        prop_assert_eq!(m.smith_normal_form().rank(), m.rank_mod_p(1_000_003).unwrap());
    }
}

#[test]
fn anchor_flip_negates_each_summed_row() {
    use goeritz_core::reconstruct::{thm2_sign_solve, Anchor};
    for name in prime_names() {
        let a = analysis(name);
        for j in 0..a.dehn.shaded_count {
            let (s1, r1) = thm2_sign_solve(&a.dehn, j, Anchor::default()).unwrap();
            let flip = Anchor {
                row: None,
                sign: Sign::Minus,
            };
            let (s2, r2) = thm2_sign_solve(&a.dehn, j, flip).unwrap();
            assert_eq!(s2, s1.flipped());
            let neg: Vec<BigInt> = r1.iter().map(|x| -x).collect();
            assert_eq!(r2, neg, "{name} column {j}");
        }
    }
}
