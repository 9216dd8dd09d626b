use proptest::prelude::*;
use tropgen::fans::{all_permutations, permute_weight, skeleton_membership};
use tropgen::generic::{apply_transform, permute_columns, random_transform};
use tropgen::groebner::{buchberger, krull_dimension};
use tropgen::linalg::RationalMatrix;
use tropgen::poly::rat;
use tropgen::weights::TropicalOracle;
use tropgen::{Ideal, Monomial, Polynomial, TermOrder, WeightVector};

/// Homogeneous polynomial of degree `d` in `n` variables with small
/// coefficients drawn from `coeffs` (zero entries drop terms).
fn form(n: usize, d: u32, coeffs: &[i64]) -> Polynomial {
    let monos = Monomial::all_of_degree(n, d);
    Polynomial::from_terms(n, monos.into_iter().zip(coeffs.iter()).map(|(m, &c)| (rat(c), m)))
}

fn small_ideal() -> impl Strategy<Value = Ideal> {
    (2usize..=3, 1u32..=2, proptest::collection::vec(proptest::collection::vec(-2i64..=2, 10), 1..=2)).prop_filter_map(
        "nonzero generators",
        |(n, d, rows)| {
            let gens: Vec<Polynomial> = rows.iter().map(|c| form(n, d, c)).filter(|p| !p.is_zero()).collect();
            Ideal::new(n, gens).ok()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn membership_is_shift_invariant(i in small_ideal(), w in proptest::collection::vec(-3i64..=3, 3), c in -4i64..=4) {
        let n = i.nvars();
        let w = &w[..n];
        let mut oracle = TropicalOracle::new(i);
        let shifted: Vec<i64> = w.iter().map(|x| x + c).collect();
        prop_assert_eq!(oracle.member(&WeightVector::from_ints(w)), oracle.member(&WeightVector::from_ints(&shifted)));
    }

    #[test]
    fn transform_preserves_dimension(i in small_ideal(), seed in 0u64..1000) {
        let g = random_transform(i.nvars(), 20, seed).unwrap();
        let j = apply_transform(&i, &g).unwrap();
        prop_assert_eq!(krull_dimension(&j).ok(), krull_dimension(&i).ok());
    }

    #[test]
    fn transform_inverse_round_trip(i in small_ideal(), seed in 0u64..1000) {
        let n = i.nvars();
        let g = random_transform(n, 20, seed).unwrap();
        let back = apply_transform(&apply_transform(&i, &g).unwrap(), &g.inverse().unwrap()).unwrap();
        let ord = TermOrder::graded_lex(n);
        prop_assert_eq!(buchberger(&back, &ord).polynomials(), buchberger(&i, &ord).polynomials());
    }

    #[test]
    fn column_switch_is_renaming(i in small_ideal(), seed in 0u64..1000, k in 0usize..6) {
        let n = i.nvars();
        let perms = all_permutations(n);
        let s = &perms[k % perms.len()];
        let g = random_transform(n, 9, seed).unwrap();
        prop_assert_eq!(
            apply_transform(&i, &g).unwrap().rename_variables(s),
            apply_transform(&i, &permute_columns(&g, s)).unwrap()
        );
    }

    #[test]
    fn transform_composition(i in small_ideal(), s1 in 0u64..1000, s2 in 0u64..1000) {
        // substituting g then h equals substituting g h
        let n = i.nvars();
        let g = random_transform(n, 5, s1).unwrap();
        let h = random_transform(n, 5, s2).unwrap();
        let twice = apply_transform(&apply_transform(&i, &g).unwrap(), &h).unwrap();
        let once = apply_transform(&i, &RationalMatrix::mul(&g, &h)).unwrap();
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn skeleton_predicate_is_symmetric(w in proptest::collection::vec(-3i64..=3, 4), m in 1usize..=4, k in 0usize..24) {
        let s = &all_permutations(4)[k];
        prop_assert_eq!(skeleton_membership(4, m, &w), skeleton_membership(4, m, &permute_weight(&w, s)));
    }
}
