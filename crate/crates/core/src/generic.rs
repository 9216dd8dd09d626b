//! Random coordinate changes standing in for a generic `g in GL_n`, and the
//! agreement protocol that decides when a membership map is "generic".

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fans::{all_permutations, invert, permute_weight, skeleton_membership};
use crate::groebner::buchberger;
use crate::linalg::RationalMatrix;
use crate::poly::{rat, Ideal, Monomial, Polynomial, TermOrder, WeightVector};
use crate::weights::TropicalOracle;

/// Number of times the coefficient bound is doubled before giving up.
pub const MAX_ESCALATIONS: usize = 3;
const MAX_SAMPLES: usize = 1000;

/// Seed for trial `trial` at escalation level `level`.
pub fn derive_seed(seed: u64, level: usize, trial: usize) -> u64 {
    let mut z = seed ^ ((level as u64) << 48) ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    // splitmix64 finalizer
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Integer matrix with entries uniform in `[-bound, bound]`, resampled until
/// invertible.
pub fn random_transform(n: usize, bound: i64, seed: u64) -> Result<RationalMatrix> {
    if bound < 1 {
        return Err(Error::Invalid(format!("coefficient bound must be at least 1, got {bound}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_SAMPLES {
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
        let g = RationalMatrix::from_ints(&rows);
        if !g.determinant().is_zero() {
            return Ok(g);
        }
    }
    Err(Error::TransformSamplingFailed(MAX_SAMPLES))
}

/// `g(I)`: every generator under `x_i -> sum_j g_ij x_j`.
pub fn apply_transform(ideal: &Ideal, g: &RationalMatrix) -> Result<Ideal> {
    let n = ideal.nvars();
    if g.nrows() != n || g.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: g.nrows().max(g.ncols()) });
    }
    if g.determinant().is_zero() {
        return Err(Error::SingularMatrix);
    }
    let gens: Vec<Polynomial> = ideal.generators().iter().map(|f| f.linear_substitution(g.rows())).collect();
    if ideal.is_graded() {
        Ideal::new(n, gens)
    } else {
        Ideal::auxiliary(n, gens)
    }
}

/// `sigma(g)`, with entries `g_{i, sigma^-1(j)}`.
pub fn permute_columns(g: &RationalMatrix, s: &[usize]) -> RationalMatrix {
    assert_eq!(g.ncols(), s.len(), "permutation size");
    g.permute_columns_from(&invert(s))
}

/// Integer grid `[-r, r]^n`; with `full = false` the first coordinate is
/// pinned to 0, which loses nothing for graded ideals.
pub fn grid_points(n: usize, radius: i64, full: bool) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for i in 0..n {
        let range: Vec<i64> = if i == 0 && !full { vec![0] } else { (-radius..=radius).collect() };
        out = out
            .into_iter()
            .flat_map(|p| {
                range.iter().map(move |&x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// `T(I)` restricted to a grid.
pub fn membership_map(ideal: &Ideal, grid: &[Vec<i64>]) -> BTreeMap<Vec<i64>, bool> {
    let mut oracle = TropicalOracle::new(ideal.clone());
    grid.iter().map(|w| (w.clone(), oracle.member(&WeightVector::from_ints(w)))).collect()
}

/// One round of the protocol at a fixed coefficient bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Escalation {
    pub bound: i64,
    pub seeds: Vec<u64>,
    pub agreed: bool,
    /// Grid points where some transform disagreed with the first one.
    pub disagreements: Vec<Vec<i64>>,
}

#[derive(Debug, Clone)]
pub struct GenericityReport {
    pub ideal: Ideal,
    pub transforms: Vec<RationalMatrix>,
    pub grid: Vec<Vec<i64>>,
    /// Map of the first transform of the last round.
    pub membership: BTreeMap<Vec<i64>, bool>,
    pub agreed: bool,
    pub retries: usize,
    pub seed: u64,
    pub history: Vec<Escalation>,
}

/// JSON form of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityRecord {
    pub n: usize,
    pub ideal: Vec<String>,
    pub seed: u64,
    pub agreed: bool,
    pub retries: usize,
    pub transforms: Vec<Vec<Vec<i64>>>,
    pub grid_size: usize,
    pub membership: Vec<(Vec<i64>, bool)>,
    pub history: Vec<Escalation>,
}

impl GenericityReport {
    pub fn nvars(&self) -> usize {
        self.ideal.nvars()
    }

    pub fn ensure_agreed(&self) -> Result<&Self> {
        if self.agreed {
            Ok(self)
        } else {
            let bound = self.history.last().map_or(0, |e| e.bound);
            Err(Error::PersistentDisagreement { escalations: self.retries, bound })
        }
    }

    pub fn member_count(&self) -> usize {
        self.membership.values().filter(|&&b| b).count()
    }

    pub fn to_record(&self) -> GenericityRecord {
        GenericityRecord {
            n: self.nvars(),
            ideal: self.ideal.generators().iter().map(|g| g.to_string()).collect(),
            seed: self.seed,
            agreed: self.agreed,
            retries: self.retries,
            transforms: self.transforms.iter().map(integer_entries).collect(),
            grid_size: self.grid.len(),
            membership: self.membership.iter().map(|(w, &b)| (w.clone(), b)).collect(),
            history: self.history.clone(),
        }
    }
}

fn integer_entries(g: &RationalMatrix) -> Vec<Vec<i64>> {
    g.rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_integer().to_i64().expect("transform entries are small integers")).collect())
        .collect()
}

/// Runs `trials` transforms in parallel and returns their maps in trial order.
fn trial_maps(ideal: &Ideal, grid: &[Vec<i64>], transforms: &[RationalMatrix]) -> Result<Vec<BTreeMap<Vec<i64>, bool>>> {
    let transformed = transforms.iter().map(|g| apply_transform(ideal, g)).collect::<Result<Vec<_>>>()?;
    Ok(std::thread::scope(|s| {
        let handles: Vec<_> = transformed.iter().map(|j| s.spawn(move || membership_map(j, grid))).collect();
        handles.into_iter().map(|h| h.join().expect("membership worker panicked")).collect()
    }))
}

/// Membership map of `T(g(I))` on the lineality-reduced grid of the given
/// radius, agreed across `trials` random transforms.
pub fn generic_membership_map(ideal: &Ideal, grid_radius: i64, trials: usize, bound: i64, seed: u64) -> Result<GenericityReport> {
    let grid = grid_points(ideal.nvars(), grid_radius, false);
    generic_membership_map_on(ideal, grid, trials, bound, seed)
}

/// As [`generic_membership_map`] on an explicit grid. A persistent
/// disagreement yields a report with `agreed = false`, not an error.
pub fn generic_membership_map_on(
    ideal: &Ideal,
    grid: Vec<Vec<i64>>,
    trials: usize,
    bound: i64,
    seed: u64,
) -> Result<GenericityReport> {
    if !ideal.is_graded() {
        return Err(Error::Invalid("generic membership needs a graded ideal".into()));
    }
    if trials == 0 {
        return Err(Error::Invalid("at least one trial is required".into()));
    }
    let n = ideal.nvars();
    let mut history = Vec::new();
    let mut b = bound;
    for level in 0..=MAX_ESCALATIONS {
        let seeds: Vec<u64> = (0..trials).map(|t| derive_seed(seed, level, t)).collect();
        let transforms = seeds.iter().map(|&s| random_transform(n, b, s)).collect::<Result<Vec<_>>>()?;
        let maps = trial_maps(ideal, &grid, &transforms)?;
        let disagreements: Vec<Vec<i64>> =
            grid.iter().filter(|w| maps.iter().any(|m| m[*w] != maps[0][*w])).cloned().collect();
        let agreed = disagreements.is_empty();
        history.push(Escalation { bound: b, seeds, agreed, disagreements });
        if agreed || level == MAX_ESCALATIONS {
            let membership = maps.into_iter().next().expect("at least one trial");
            return Ok(GenericityReport {
                ideal: ideal.clone(),
                transforms,
                grid,
                membership,
                agreed,
                retries: level,
                seed,
                history,
            });
        }
        b *= 2;
    }
    unreachable!()
}

/// Whether the map equals the `W_n^m` predicate at every grid point. With
/// `m = 0` the expected map is all-false.
pub fn check_skeleton_equality(report: &GenericityReport, m: usize) -> bool {
    let n = report.nvars();
    report.agreed && report.membership.iter().all(|(w, &b)| b == (m > 0 && skeleton_membership(n, m, w)))
}

/// Whether the map is invariant under all coordinate permutations, compared
/// wherever the permuted point is on the grid.
pub fn check_symmetry(report: &GenericityReport) -> bool {
    symmetric(&report.membership, report.nvars())
}

fn symmetric(map: &BTreeMap<Vec<i64>, bool>, n: usize) -> bool {
    let perms = all_permutations(n);
    map.iter().all(|(w, &b)| perms.iter().all(|s| map.get(&permute_weight(w, s)).is_none_or(|&c| c == b)))
}

/// Whether the map is invariant under `w -> w + c(1,...,1)` for the given
/// shifts, compared wherever the shifted point is on the grid.
pub fn check_lineality(report: &GenericityReport, shifts: &[i64]) -> bool {
    report.membership.iter().all(|(w, &b)| {
        shifts.iter().all(|c| {
            let v: Vec<i64> = w.iter().map(|x| x + c).collect();
            report.membership.get(&v).is_none_or(|&x| x == b)
        })
    })
}

/// Whether the supports of the reduced bases of `g_k(I)` agree across
/// `trials` random transforms.
pub fn gb_support_stability(ideal: &Ideal, ord: &TermOrder, trials: usize, bound: i64, seed: u64) -> Result<bool> {
    let supports = gb_supports(ideal, ord, trials, bound, seed)?;
    Ok(supports.windows(2).all(|p| p[0] == p[1]))
}

pub fn gb_supports(
    ideal: &Ideal,
    ord: &TermOrder,
    trials: usize,
    bound: i64,
    seed: u64,
) -> Result<Vec<BTreeSet<Vec<Monomial>>>> {
    (0..trials)
        .map(|t| {
            let g = random_transform(ideal.nvars(), bound, derive_seed(seed, 0, t))?;
            Ok(buchberger(&apply_transform(ideal, &g)?, ord).supports())
        })
        .collect()
}

/// Diagonal matrix, handy for tests and examples.
pub fn diagonal(entries: &[i64]) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(entries.len(), entries.len());
    for (i, &x) in entries.iter().enumerate() {
        m.set(i, i, rat(x));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fans::compose;
    use crate::groebner::krull_dimension;

    fn ideal(n: usize, gens: &[&str]) -> Ideal {
        Ideal::parse(n, gens).unwrap()
    }

    fn gb_gens(i: &Ideal) -> Vec<Polynomial> {
        buchberger(i, &TermOrder::graded_lex(i.nvars())).polynomials()
    }

    #[test]
    fn transforms_are_invertible_and_reproducible() {
        for seed in 0..20 {
            let g = random_transform(3, 50, seed).unwrap();
            assert!(!g.determinant().is_zero());
            assert_eq!(g, random_transform(3, 50, seed).unwrap());
            assert!(g.rows().iter().flatten().all(|x| x.is_integer() && x.to_integer().magnitude() <= &50u32.into()));
        }
        let g1 = random_transform(1, 1, 7).unwrap();
        assert!(!g1.get(0, 0).is_zero());
        assert_ne!(random_transform(3, 50, 1).unwrap(), random_transform(3, 50, 2).unwrap());
        assert!(random_transform(2, 0, 1).is_err());
    }

    #[test]
    fn derived_seeds_differ() {
        let mut seen = BTreeSet::new();
        for level in 0..4 {
            for t in 0..5 {
                assert!(seen.insert(derive_seed(1, level, t)));
            }
        }
    }

    #[test]
    fn apply_identity_and_swap() {
        let i = ideal(2, &["x1"]);
        assert_eq!(apply_transform(&i, &RationalMatrix::identity(2)).unwrap(), i);
        let swap = RationalMatrix::from_ints(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(apply_transform(&i, &swap).unwrap(), ideal(2, &["x2"]));
        let singular = RationalMatrix::from_ints(&[vec![1, 1], vec![2, 2]]);
        assert_eq!(apply_transform(&i, &singular), Err(Error::SingularMatrix));
    }

    #[test]
    fn transform_expands_products() {
        // x1*x2 under rows (1,1),(1,-1) is (x1+x2)(x1-x2)
        let g = RationalMatrix::from_ints(&[vec![1, 1], vec![1, -1]]);
        let j = apply_transform(&ideal(2, &["x1*x2"]), &g).unwrap();
        assert_eq!(j, ideal(2, &["x1^2 - x2^2"]));
    }

    #[test]
    fn inverse_round_trip() {
        let ideals = [ideal(3, &["x1*x2 - x3^2", "x1^2"]), ideal(3, &["x1 + 2*x2", "x3^3"]), ideal(4, &["x1*x3", "x2*x4"])];
        for (k, i) in ideals.iter().enumerate() {
            let g = random_transform(i.nvars(), 20, k as u64).unwrap();
            let back = apply_transform(&apply_transform(i, &g).unwrap(), &g.inverse().unwrap()).unwrap();
            assert_eq!(gb_gens(&back), gb_gens(i));
        }
    }

    #[test]
    fn dimension_is_invariant() {
        let ideals = [
            ideal(3, &["x1*x2", "x1*x3", "x2*x3"]),
            ideal(3, &["x1^2", "x2^2"]),
            ideal(4, &["x1*x3", "x1*x4", "x2*x3", "x2*x4"]),
            ideal(2, &["x1*x2"]),
            ideal(3, &["x1*x3 - x2^2"]),
        ];
        for (k, i) in ideals.iter().enumerate() {
            for t in 0..2 {
                let g = random_transform(i.nvars(), 10, (10 * k + t) as u64).unwrap();
                assert_eq!(krull_dimension(&apply_transform(i, &g).unwrap()), krull_dimension(i));
            }
        }
    }

    #[test]
    fn renaming_commutes_with_column_switch() {
        let i = ideal(3, &["x1^2 + x2*x3", "x1*x3 - 2*x2^2"]);
        for (k, s) in all_permutations(3).iter().enumerate() {
            let g = random_transform(3, 9, 100 + k as u64).unwrap();
            let lhs = apply_transform(&i, &g).unwrap().rename_variables(s);
            let rhs = apply_transform(&i, &permute_columns(&g, s)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn column_switch_composition() {
        let g = random_transform(4, 9, 3).unwrap();
        let perms = all_permutations(4);
        assert_eq!(permute_columns(&g, &perms[0]), g);
        for s in perms.iter().step_by(5) {
            for t in perms.iter().step_by(7) {
                // tau applied after sigma is the column switch by tau o sigma
                assert_eq!(permute_columns(&permute_columns(&g, s), t), permute_columns(&g, &compose(t, s)));
            }
        }
    }

    #[test]
    fn permutation_equivariance_of_maps() {
        let i = ideal(3, &["x1*x2 + x3^2"]);
        let grid = grid_points(3, 1, true);
        let g = random_transform(3, 9, 5).unwrap();
        let base = membership_map(&apply_transform(&i, &g).unwrap(), &grid);
        for s in all_permutations(3) {
            let other = membership_map(&apply_transform(&i, &permute_columns(&g, &s)).unwrap(), &grid);
            for (w, &b) in &base {
                // x_i is renamed x_{s(i)}, so the weight moves along with it
                let u = permute_weight(w, &invert(&s));
                assert_eq!(other[&u], b, "w = {w:?}, s = {s:?}");
            }
        }
    }

    #[test]
    fn grid_shapes() {
        assert_eq!(grid_points(3, 3, false).len(), 49);
        assert_eq!(grid_points(3, 3, true).len(), 343);
        assert!(grid_points(2, 1, false).iter().all(|w| w[0] == 0));
    }

    #[test]
    fn zero_dimensional_map_is_empty() {
        let r = generic_membership_map(&ideal(2, &["x1", "x2"]), 3, 3, 50, 1).unwrap();
        assert!(r.agreed);
        assert_eq!(r.member_count(), 0);
        assert!(check_skeleton_equality(&r, 0));
    }

    #[test]
    fn monomial_ideal_becomes_diagonal() {
        // g(x1 x2) = l1 l2 with full-support linear forms; in_w(l1 l2) is
        // a monomial unless both l_i tie, i.e. unless w1 = w2
        let i = ideal(2, &["x1*x2"]);
        assert_eq!(membership_map(&i, &grid_points(2, 2, true)).values().filter(|&&b| b).count(), 0);
        let r = generic_membership_map_on(&i, grid_points(2, 3, true), 3, 50, 1).unwrap();
        assert!(r.agreed);
        for (w, &b) in &r.membership {
            assert_eq!(b, w[0] == w[1]);
        }
        assert!(check_skeleton_equality(&r, 1));
        assert!(check_symmetry(&r));
        assert!(check_lineality(&r, &[-2, -1, 0, 1, 2]));
    }

    #[test]
    fn untransformed_map_can_be_asymmetric() {
        // (x1, x2 + x3) contains x1, so its map is empty and symmetric
        let grid = grid_points(3, 2, true);
        let with_x1 = membership_map(&ideal(3, &["x1", "x2 + x3"]), &grid);
        assert!(with_x1.values().all(|&b| !b));
        assert!(symmetric(&with_x1, 3));
        let i = ideal(3, &["x2 + x3"]);
        let map = membership_map(&i, &grid);
        for (w, &b) in &map {
            assert_eq!(b, w[1] == w[2]);
        }
        assert!(!symmetric(&map, 3));
        let point = GenericityReport {
            ideal: i.clone(),
            transforms: vec![],
            grid: vec![vec![0, 0, 0]],
            membership: membership_map(&i, &[vec![0, 0, 0]]),
            agreed: true,
            retries: 0,
            seed: 0,
            history: vec![],
        };
        assert!(check_symmetry(&point));
    }

    #[test]
    fn lineality_holds_for_every_transform() {
        let i = ideal(3, &["x1^2*x2 + x2^2*x3"]);
        let g = random_transform(3, 50, 11).unwrap();
        let map = membership_map(&apply_transform(&i, &g).unwrap(), &grid_points(3, 2, true));
        for (w, &b) in &map {
            for c in -2i64..=2 {
                let v: Vec<i64> = w.iter().map(|x| x + c).collect();
                if let Some(&x) = map.get(&v) {
                    assert_eq!(x, b);
                }
            }
        }
    }

    #[test]
    fn fourth_transform_agrees() {
        let i = ideal(3, &["x1*x2", "x1*x3", "x2*x3"]);
        let r = generic_membership_map(&i, 2, 3, 50, 1).unwrap();
        assert!(r.agreed);
        let g = random_transform(3, 50, derive_seed(1, 0, 3)).unwrap();
        assert_eq!(membership_map(&apply_transform(&i, &g).unwrap(), &r.grid), r.membership);
        assert!(check_skeleton_equality(&r, 1));
    }

    #[test]
    fn support_stability() {
        let i = ideal(3, &["x1*x2", "x3^2"]);
        let ord = TermOrder::graded_lex(3);
        assert!(gb_support_stability(&i, &ord, 3, 50, 1).unwrap());
        assert!(gb_support_stability(&i, &ord, 1, 50, 1).unwrap());
        let generic = &gb_supports(&i, &ord, 1, 50, 1).unwrap()[0];
        assert_ne!(generic, &buchberger(&i, &ord).supports());
    }

    #[test]
    fn principal_support_is_full() {
        // every degree-d monomial appears in a generic expansion of f
        let f = ideal(3, &["x1^2*x2"]);
        let s = &gb_supports(&f, &TermOrder::graded_lex(3), 2, 50, 4).unwrap();
        assert_eq!(s[0], s[1]);
        let all: BTreeSet<Monomial> = Monomial::all_of_degree(3, 3).into_iter().collect();
        let got: BTreeSet<Monomial> = s[0].iter().next().unwrap().iter().cloned().collect();
        assert_eq!(got, all);
    }

    #[test]
    fn report_record_is_sorted() {
        let r = generic_membership_map(&ideal(2, &["x1*x2"]), 1, 2, 5, 9).unwrap();
        let rec = r.to_record();
        assert!(rec.membership.windows(2).all(|p| p[0].0 < p[1].0));
        assert_eq!(rec.transforms.len(), 2);
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(serde_json::from_str::<GenericityRecord>(&json).unwrap(), rec);
    }
}
