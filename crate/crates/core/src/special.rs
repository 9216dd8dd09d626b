//! Closed forms for principal and linear ideals, and the executable checks
//! that compare them against the general machinery.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fans::{build_w, same_cone, skeleton_membership, w_cone, Cone};
use crate::generic::{
    apply_transform, derive_seed, generic_membership_map, grid_points, random_transform, Escalation, MAX_ESCALATIONS,
};
use crate::groebner::krull_dimension;
use crate::linalg::RationalMatrix;
use crate::poly::{Ideal, Monomial, Polynomial, Rational, WeightVector};
use crate::weights::{enumerate_groebner_fan, groebner_cone, initial_form};

/// Parameters shared by the theorem checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOptions {
    pub trials: usize,
    pub bound: i64,
    pub seed: u64,
    pub grid_radius: i64,
    /// Random weights per trial for closed-form cone comparisons.
    pub cone_samples: usize,
    pub fan_budget: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { trials: 3, bound: 50, seed: 1, grid_radius: 3, cone_samples: 20, fan_budget: 200 }
    }
}

/// Coefficient matrix of an ideal generated by linear forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearIdealMatrix {
    pub matrix: RationalMatrix,
    pub rank: usize,
}

impl LinearIdealMatrix {
    pub fn new(matrix: RationalMatrix) -> Self {
        let rank = matrix.rank();
        LinearIdealMatrix { matrix, rank }
    }

    pub fn from_ideal(ideal: &Ideal) -> Result<Self> {
        let n = ideal.nvars();
        let rows = ideal
            .generators()
            .iter()
            .map(|f| {
                if f.is_homogeneous() != Some(1) {
                    return Err(Error::Invalid(format!("not a linear form: {f}")));
                }
                Ok((0..n).map(|j| f.coefficient(&Monomial::var(n, j))).collect())
            })
            .collect::<Result<Vec<Vec<Rational>>>>()?;
        Ok(Self::new(RationalMatrix::new(rows)))
    }

    pub fn nvars(&self) -> usize {
        self.matrix.ncols()
    }

    /// The ideal of the nonzero rows.
    pub fn to_ideal(&self) -> Result<Ideal> {
        let n = self.nvars();
        let gens: Vec<Polynomial> = self
            .matrix
            .rows()
            .iter()
            .map(|r| Polynomial::from_terms(n, r.iter().enumerate().map(|(j, c)| (c.clone(), Monomial::var(n, j)))))
            .filter(|p| !p.is_zero())
            .collect();
        Ideal::new(n, gens)
    }
}

/// Coefficients of `x_k^d` in `g(f)`, for `k = 1..n`.
pub fn pure_power_coefficients(f: &Polynomial, g: &RationalMatrix) -> Result<Vec<Rational>> {
    let d = f.is_homogeneous().ok_or(Error::NotHomogeneous(0))?;
    if f.is_zero() {
        return Err(Error::ZeroGenerator);
    }
    let n = f.nvars();
    let gf = f.linear_substitution(g.rows());
    Ok((0..n)
        .map(|k| {
            let mut e = vec![0; n];
            e[k] = d;
            gf.coefficient(&Monomial::new(e))
        })
        .collect())
}

/// Result of [`gauss_reduce`]: `matrix = [I_r | *]` in the column order
/// `columns` (column `j` of `matrix` is column `columns[j]` of the input).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduced {
    pub matrix: RationalMatrix,
    pub columns: Vec<usize>,
    pub dropped_rows: usize,
}

impl Reduced {
    pub fn is_pivoted(&self) -> bool {
        self.columns.iter().enumerate().any(|(j, &c)| j != c)
    }

    /// The right block `*`.
    pub fn right_block(&self) -> Vec<Vec<Rational>> {
        let r = self.matrix.nrows();
        self.matrix.rows().iter().map(|row| row[r..].to_vec()).collect()
    }

    /// Reduced matrix with columns back in input order.
    pub fn in_input_order(&self) -> RationalMatrix {
        self.matrix.permute_columns_from(&crate::fans::invert(&self.columns))
    }
}

/// Gauss-Jordan elimination to `[I_r | *]`, moving pivot columns to the
/// front when the leading minor vanishes.
pub fn gauss_reduce(a: &LinearIdealMatrix) -> Reduced {
    let (rref, pivots) = a.matrix.rref();
    let n = a.nvars();
    let mut columns = pivots.clone();
    columns.extend((0..n).filter(|c| !pivots.contains(c)));
    Reduced { matrix: rref.permute_columns_from(&columns), columns, dropped_rows: a.matrix.nrows() - pivots.len() }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut c: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] != i + n - k) else { return out };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Whether every `r x r` minor of `A g` is nonzero.
pub fn check_minors(a: &LinearIdealMatrix, g: &RationalMatrix) -> bool {
    let ag = a.matrix.mul(g);
    let r = ag.nrows();
    combinations(ag.ncols(), r).iter().all(|cols| !ag.select_columns(cols).determinant().is_zero())
}

/// Ordered pattern `below < plateau < above` of a weight relative to the
/// cut after position `r`. For a strict cut `plateau` is empty and `below`
/// holds the `r` smallest coordinates. Index sets are 0-based and sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CutPattern {
    pub below: Vec<usize>,
    pub plateau: Vec<usize>,
    pub above: Vec<usize>,
}

impl CutPattern {
    pub fn of_weight(w: &[Rational], r: usize) -> CutPattern {
        let n = w.len();
        assert!(r >= 1 && r <= n);
        if r == n {
            return CutPattern { below: (0..n).collect(), plateau: vec![], above: vec![] };
        }
        let mut sorted: Vec<&Rational> = w.iter().collect();
        sorted.sort();
        let (lo, hi) = (sorted[r - 1], sorted[r]);
        let split = |pred: &dyn Fn(&Rational) -> bool| (0..n).filter(|&i| pred(&w[i])).collect::<Vec<_>>();
        if lo < hi {
            CutPattern { below: split(&|x| x <= lo), plateau: vec![], above: split(&|x| x > lo) }
        } else {
            CutPattern { below: split(&|x| x < lo), plateau: split(&|x| x == lo), above: split(&|x| x > lo) }
        }
    }

    pub fn dim(&self) -> usize {
        let n = self.below.len() + self.plateau.len() + self.above.len();
        if self.plateau.is_empty() {
            n
        } else {
            n - self.plateau.len() + 1
        }
    }

    /// Closure of the set of weights with this pattern.
    pub fn cone(&self, n: usize) -> Cone {
        let row = |i: usize, j: usize| -> Vec<Rational> {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::from_integer(1.into());
            v[j] = Rational::from_integer((-1).into());
            v
        };
        if self.plateau.is_empty() {
            let ineqs = self.below.iter().flat_map(|&b| self.above.iter().map(move |&u| row(b, u))).collect();
            return Cone::new(n, vec![], ineqs);
        }
        let p0 = self.plateau[0];
        let eqs = self.plateau[1..].iter().map(|&p| row(p0, p)).collect();
        let ineqs = self.below.iter().map(|&b| row(b, p0)).chain(self.above.iter().map(|&u| row(p0, u))).collect();
        Cone::new(n, eqs, ineqs)
    }
}

/// Every pattern of the closed form for `n` variables and rank `r`: strict
/// cuts with `|below| = r`, and plateaus straddling the cut with
/// `|below| <= r - 1 < r + 1 <= |below| + |plateau|`.
pub fn cut_patterns(n: usize, r: usize) -> Vec<CutPattern> {
    assert!(r >= 1 && r <= n);
    if r == n {
        return vec![CutPattern { below: (0..n).collect(), plateau: vec![], above: vec![] }];
    }
    let mut out = Vec::new();
    for below in combinations(n, r) {
        let above = (0..n).filter(|i| !below.contains(i)).collect();
        out.push(CutPattern { below, plateau: vec![], above });
    }
    // each coordinate goes below (0), into the plateau (1) or above (2)
    for code in 0..3usize.pow(n as u32) {
        let mut parts = [vec![], vec![], vec![]];
        let mut c = code;
        for i in 0..n {
            parts[c % 3].push(i);
            c /= 3;
        }
        let [below, plateau, above] = parts;
        if below.len() < r && below.len() + plateau.len() > r {
            out.push(CutPattern { below, plateau, above });
        }
    }
    out.sort();
    out
}

fn check_right_block(a_red: &RationalMatrix) -> Result<usize> {
    let r = a_red.nrows();
    for (i, row) in a_red.rows().iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let identity_entry = if i == j { x.is_one() } else { x.is_zero() };
            if j < r && !identity_entry {
                return Err(Error::NonGeneric(format!("left block is not the identity at ({}, {})", i + 1, j + 1)));
            }
            if j >= r && x.is_zero() {
                return Err(Error::NonGeneric(format!("zero right-block entry at ({}, {})", i + 1, j + 1)));
            }
        }
    }
    Ok(r)
}

/// Groebner cone of `w` for the linear ideal with reduced matrix `a_red`,
/// read off the ordering pattern of `w` alone.
pub fn linear_groebner_cone(a_red: &RationalMatrix, w: &WeightVector) -> Result<Cone> {
    let r = check_right_block(a_red)?;
    let n = a_red.ncols();
    if w.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: w.len() });
    }
    Ok(CutPattern::of_weight(w.entries(), r).cone(n))
}

/// Outcome of one transform in a principal-ideal check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincipalTrial {
    pub transform: Vec<Vec<String>>,
    pub resamples: usize,
    pub pure_powers: Vec<String>,
    pub pure_powers_nonzero: bool,
    pub grid_points: usize,
    pub grid_agrees: bool,
    pub fan_cones: Option<usize>,
    pub fan_agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincipalReport {
    pub polynomial: String,
    pub n: usize,
    pub degree: u32,
    pub seed: u64,
    pub trials: Vec<PrincipalTrial>,
    pub passed: bool,
}

fn matrix_strings(g: &RationalMatrix) -> Vec<Vec<String>> {
    g.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

/// Checks that `g(f)` has all pure powers, that `T(g(f))` is the
/// codimension-one skeleton of `W_n` on the grid, and (for `n <= 4`) that
/// the Groebner fan of `g(f)` is `W_n`.
pub fn check_principal_theorem(f: &Polynomial, opts: &CheckOptions) -> Result<PrincipalReport> {
    let n = f.nvars();
    let degree = f.is_homogeneous().ok_or(Error::NotHomogeneous(0))?;
    if f.is_zero() {
        return Err(Error::ZeroGenerator);
    }
    if n < 2 {
        return Err(Error::Invalid("principal check needs at least two variables".into()));
    }
    let grid = grid_points(n, opts.grid_radius, true);
    let w_fan = build_w(n);
    let mut trials = Vec::new();
    for t in 0..opts.trials {
        let mut bound = opts.bound;
        let mut chosen = None;
        for level in 0..=MAX_ESCALATIONS {
            let g = random_transform(n, bound, derive_seed(opts.seed, level, t))?;
            let p = pure_power_coefficients(f, &g)?;
            if p.iter().all(|x| !x.is_zero()) {
                chosen = Some((g, p, level));
                break;
            }
            bound *= 2;
        }
        let Some((g, p, resamples)) = chosen else {
            return Err(Error::PersistentDisagreement { escalations: MAX_ESCALATIONS, bound });
        };
        let gf = f.linear_substitution(g.rows());
        // in_w(g(f)) is a monomial exactly when one pure power has the
        // strictly smallest weight
        let grid_agrees = grid.iter().all(|w| {
            let tropical = !initial_form(&gf, &WeightVector::from_ints(w)).is_monomial();
            tropical == skeleton_membership(n, n - 1, w)
        });
        let (fan_cones, fan_agrees) = if n <= 4 {
            let fan = enumerate_groebner_fan(&Ideal::new(n, vec![gf.clone()])?, opts.fan_budget)?;
            (Some(fan.len()), Some(fan.same_fan(&w_fan)))
        } else {
            (None, None)
        };
        trials.push(PrincipalTrial {
            transform: matrix_strings(&g),
            resamples,
            pure_powers: p.iter().map(|x| x.to_string()).collect(),
            pure_powers_nonzero: true,
            grid_points: grid.len(),
            grid_agrees,
            fan_cones,
            fan_agrees,
        });
    }
    let passed = trials.iter().all(|t| t.pure_powers_nonzero && t.grid_agrees && t.fan_agrees != Some(false));
    Ok(PrincipalReport { polynomial: f.to_string(), n, degree, seed: opts.seed, trials, passed })
}

/// Outcome of one transform in a linear-ideal check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearTrial {
    pub transform: Vec<Vec<String>>,
    pub matrix_identity: bool,
    pub rank_preserved: bool,
    pub minors_nonzero: bool,
    pub right_block_nonzero: bool,
    pub cone_samples: usize,
    pub cones_agree: bool,
    pub skeleton_cones_are_groebner: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearReport {
    pub n: usize,
    pub rank: usize,
    pub dim: usize,
    pub dim_matches_rank: bool,
    pub seed: u64,
    pub grid_agreed: bool,
    pub grid_matches_skeleton: bool,
    pub history: Vec<Escalation>,
    pub trials: Vec<LinearTrial>,
    /// Patterns of dimension `dim` in the closed form, versus maximal cones
    /// of `W_n^dim`.
    pub groebner_cones_of_dim: usize,
    pub skeleton_cones_of_dim: usize,
    pub passed: bool,
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Checks the rank/dimension relation, the generic minors, the closed-form
/// Groebner cones against the Groebner-basis route, and that the generic
/// tropical variety is the `dim`-skeleton of `W_n` on the grid.
pub fn check_linear_theorem(a: &LinearIdealMatrix, opts: &CheckOptions) -> Result<LinearReport> {
    use rand::{Rng, SeedableRng};

    let n = a.nvars();
    let ideal = a.to_ideal()?;
    let r = a.rank;
    let dim = krull_dimension(&ideal)?;
    let m = n - r;
    // a maximal cone of W_n^m has n - m + 1 = r + 1 tied minimal coordinates
    let skeleton_cones: Vec<Vec<usize>> = if m == 0 { vec![] } else { combinations(n, r + 1) };
    let full_rank = LinearIdealMatrix::new(gauss_reduce(a).in_input_order());
    let mut trials = Vec::new();
    for t in 0..opts.trials {
        let g = random_transform(n, opts.bound, derive_seed(opts.seed, 0, t))?;
        let gi = apply_transform(&ideal, &g)?;
        let ag = LinearIdealMatrix::new(a.matrix.mul(&g));
        let from_ideal = LinearIdealMatrix::from_ideal(&gi)?;
        let matrix_identity = from_ideal.matrix == ag.matrix;
        let rank_preserved = ag.rank == r;
        let minors_nonzero = check_minors(&full_rank, &g);
        let reduced = gauss_reduce(&ag);
        let right_block_nonzero = reduced.right_block().iter().flatten().all(|x| !x.is_zero()) && !reduced.is_pivoted();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(derive_seed(opts.seed, 1, t));
        let mut cones_agree = right_block_nonzero;
        if right_block_nonzero {
            for _ in 0..opts.cone_samples {
                let w: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
                let w = WeightVector::from_ints(&w);
                let closed = linear_groebner_cone(&reduced.matrix, &w)?;
                if !same_cone(&closed, &groebner_cone(&gi, &w)) {
                    cones_agree = false;
                }
            }
        }
        let skeleton_cones_are_groebner = skeleton_cones.iter().all(|s| {
            let c = w_cone(n, s);
            let p = WeightVector::new(crate::linalg::to_rational(&c.relative_interior_point()));
            same_cone(&c, &groebner_cone(&gi, &p))
        });
        trials.push(LinearTrial {
            transform: matrix_strings(&g),
            matrix_identity,
            rank_preserved,
            minors_nonzero,
            right_block_nonzero,
            cone_samples: opts.cone_samples,
            cones_agree,
            skeleton_cones_are_groebner,
        });
    }
    let report = generic_membership_map(&ideal, opts.grid_radius, opts.trials, opts.bound, opts.seed)?;
    let grid_matches_skeleton = crate::generic::check_skeleton_equality(&report, dim);
    let groebner_cones_of_dim = cut_patterns(n, r).iter().filter(|p| p.dim() == m).count();
    let dim_matches_rank = dim == m;
    let passed = dim_matches_rank
        && report.agreed
        && grid_matches_skeleton
        && trials.iter().all(|t| {
            t.matrix_identity
                && t.rank_preserved
                && t.minors_nonzero
                && t.right_block_nonzero
                && t.cones_agree
                && t.skeleton_cones_are_groebner
        });
    Ok(LinearReport {
        n,
        rank: r,
        dim,
        dim_matches_rank,
        seed: opts.seed,
        grid_agreed: report.agreed,
        grid_matches_skeleton,
        history: report.history,
        trials,
        groebner_cones_of_dim,
        skeleton_cones_of_dim: if m == 0 { 0 } else { binomial(n, r + 1) },
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generic::diagonal;
    use crate::poly::{parse_polynomial, rat};

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n).unwrap()
    }

    fn lim(rows: &[Vec<i64>]) -> LinearIdealMatrix {
        LinearIdealMatrix::new(RationalMatrix::from_ints(rows))
    }

    fn quick() -> CheckOptions {
        CheckOptions { trials: 2, grid_radius: 2, cone_samples: 10, ..CheckOptions::default() }
    }

    #[test]
    fn pure_powers_by_hand() {
        assert_eq!(pure_power_coefficients(&p("x1", 2), &diagonal(&[1, 1])).unwrap(), vec![rat(1), rat(0)]);
        let g = RationalMatrix::from_ints(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(pure_power_coefficients(&p("x1*x2", 2), &g).unwrap(), vec![rat(1), rat(-1)]);
        assert!(pure_power_coefficients(&p("x1 + x2^2", 2), &g).is_err());
    }

    #[test]
    fn pure_powers_match_column_evaluation() {
        // P_k(g) = f(g_{1k}, ..., g_{nk})
        let f = p("x1^2*x2 - 3*x2*x3^2 + x1*x2*x3", 3);
        for seed in 0..5 {
            let g = random_transform(3, 50, seed).unwrap();
            let got = pure_power_coefficients(&f, &g).unwrap();
            for (k, value) in got.iter().enumerate() {
                let col: Vec<Rational> = (0..3).map(|i| g.get(i, k).clone()).collect();
                let eval: Rational = f
                    .terms()
                    .iter()
                    .map(|t| {
                        t.mono.exponents().iter().zip(&col).fold(t.coeff.clone(), |acc, (&e, c)| acc * num_traits::pow(c.clone(), e as usize))
                    })
                    .sum();
                assert_eq!(value, &eval);
                assert!(!value.is_zero());
            }
        }
    }

    #[test]
    fn reduction_examples() {
        let r = gauss_reduce(&lim(&[vec![1, 1, 1], vec![0, 1, 1]]));
        assert_eq!(r.matrix, RationalMatrix::from_ints(&[vec![1, 0, 0], vec![0, 1, 1]]));
        assert!(!r.is_pivoted());
        let id = lim(&[vec![1, 0, 2], vec![0, 1, 3]]);
        assert_eq!(gauss_reduce(&id).matrix, id.matrix);
        let pivoted = gauss_reduce(&lim(&[vec![0, 1, 2], vec![0, 2, 5]]));
        assert!(pivoted.is_pivoted());
        assert_eq!(pivoted.columns, vec![1, 2, 0]);
        let dropped = gauss_reduce(&lim(&[vec![1, 1], vec![2, 2]]));
        assert_eq!(dropped.dropped_rows, 1);
    }

    #[test]
    fn minors_examples() {
        assert!(check_minors(&lim(&[vec![1, 0], vec![0, 1]]), &diagonal(&[1, 1])));
        assert!(!check_minors(&lim(&[vec![1, 0]]), &diagonal(&[1, 1])));
        for seed in 0..5 {
            let a = lim(&[vec![1, 2, 0, -1], vec![0, 1, 1, 3]]);
            let g = random_transform(4, 50, seed).unwrap();
            assert!(check_minors(&a, &g));
            let red = gauss_reduce(&LinearIdealMatrix::new(a.matrix.mul(&g)));
            assert!(red.right_block().iter().flatten().all(|x| !x.is_zero()));
        }
    }

    #[test]
    fn matrix_of_transformed_ideal() {
        let a = lim(&[vec![1, -1, 0], vec![2, 0, 5]]);
        let g = random_transform(3, 9, 2).unwrap();
        let gi = apply_transform(&a.to_ideal().unwrap(), &g).unwrap();
        assert_eq!(LinearIdealMatrix::from_ideal(&gi).unwrap().matrix, a.matrix.mul(&g));
    }

    #[test]
    fn pattern_cones() {
        let red = RationalMatrix::from_ints(&[vec![1, 2, 3]]);
        // r = 1: only x1 sits below the cut
        let c = linear_groebner_cone(&red, &WeightVector::from_ints(&[0, 1, 2])).unwrap();
        assert!(same_cone(&c, &Cone::from_ints(3, &[], &[vec![1, -1, 0], vec![1, 0, -1]])));
        let flat = linear_groebner_cone(&red, &WeightVector::from_ints(&[0, 0, 0])).unwrap();
        assert!(same_cone(&flat, &Cone::from_ints(3, &[vec![1, -1, 0], vec![1, 0, -1]], &[])));
        assert_eq!(flat.dim(), 1);
        let bad = RationalMatrix::from_ints(&[vec![1, 0, 3]]);
        assert!(matches!(linear_groebner_cone(&bad, &WeightVector::from_ints(&[0, 1, 2])), Err(Error::NonGeneric(_))));
    }

    #[test]
    fn closed_form_matches_groebner_route() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        for k in 0..5u64 {
            let r = 1 + (k as usize % 3);
            let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..4).map(|_| rng.gen_range(-5..=5)).collect()).collect();
            let a = lim(&rows);
            if a.rank < r {
                continue;
            }
            let g = random_transform(4, 50, k).unwrap();
            let ag = LinearIdealMatrix::new(a.matrix.mul(&g));
            let gi = ag.to_ideal().unwrap();
            let red = gauss_reduce(&ag);
            for _ in 0..20 {
                let w = WeightVector::from_ints(&(0..4).map(|_| rng.gen_range(-2..=2)).collect::<Vec<_>>());
                assert!(same_cone(&linear_groebner_cone(&red.matrix, &w).unwrap(), &groebner_cone(&gi, &w)));
            }
        }
    }

    #[test]
    fn census_counts() {
        let pats = cut_patterns(4, 2);
        assert_eq!(pats.iter().filter(|p| p.dim() == 4).count(), 6);
        // plateaus of size 3 straddling the cut: 4 with nothing below, 4 with one below
        assert_eq!(pats.iter().filter(|p| p.dim() == 2).count(), 8);
        assert_eq!(pats.iter().filter(|p| p.dim() == 1).count(), 1);
        assert_eq!(pats.iter().filter(|p| p.dim() == 3).count(), 12);
        // every W_4^2 maximal cone is a pattern cone
        for a in combinations(4, 3) {
            assert!(pats.iter().any(|p| p.below.is_empty() && p.plateau == a));
        }
        assert_eq!(cut_patterns(3, 3).len(), 1);
    }

    #[test]
    fn pattern_of_weight_matches_pattern_cone() {
        for pat in cut_patterns(4, 2) {
            let c = pat.cone(4);
            assert_eq!(c.dim(), pat.dim());
            let w = WeightVector::new(crate::linalg::to_rational(&c.relative_interior_point()));
            assert_eq!(CutPattern::of_weight(w.entries(), 2), pat);
        }
    }

    #[test]
    fn principal_theorem_small() {
        let rep = check_principal_theorem(&p("x1*x2", 2), &quick()).unwrap();
        assert!(rep.passed, "{rep:?}");
        let rep = check_principal_theorem(&p("x1^2*x2 + x2^2*x3", 3), &quick()).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.trials[0].fan_cones, Some(3));
        let rep = check_principal_theorem(&p("x1 + x2 + x3", 3), &quick()).unwrap();
        assert!(rep.passed);
    }

    #[test]
    fn linear_theorem_small() {
        let rep = check_linear_theorem(&lim(&[vec![1, -1, 0], vec![1, 0, -1]]), &quick()).unwrap();
        assert_eq!(rep.dim, 1);
        assert!(rep.passed, "{rep:?}");
        let rep = check_linear_theorem(&lim(&[vec![1, 1, 1, 1]]), &quick()).unwrap();
        assert_eq!(rep.dim, 3);
        assert!(rep.passed);
        let rep = check_linear_theorem(&lim(&[vec![1, 2, 0, 1], vec![0, 1, -1, 3]]), &quick()).unwrap();
        assert!(rep.passed);
        assert_eq!((rep.groebner_cones_of_dim, rep.skeleton_cones_of_dim), (8, 4));
    }
}
