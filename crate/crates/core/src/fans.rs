//! Rational polyhedral cones in H-representation, fans, and the generic
//! tropical fan `W_n`.
//!
//! A cone is `{x : E x = 0, A x <= 0}`. Construction canonicalizes it:
//! implicit equalities are moved into `E`, redundant inequalities are
//! dropped, rows are primitive integer vectors (inequalities reduced modulo
//! the equality space), and everything is sorted. Two cones are equal as
//! sets iff their canonical forms agree.
//!
//! Extreme rays of the pointed part (the cone intersected with the
//! orthogonal complement of its lineality space) are found by exhaustive
//! enumeration of tight constraint subsets. That is exponential in general
//! and only meant for the small cones of this crate (n <= 8).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, primitive_integer, primitive_line, to_rational, RationalMatrix};
use crate::poly::{Rational, WeightVector};

type IntRow = Vec<BigInt>;

/// Permutation of `0..n`, as the list of images.
pub type Permutation = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    n: usize,
    equalities: Vec<IntRow>,
    inequalities: Vec<IntRow>,
    lineality: Vec<IntRow>,
    rays: Vec<IntRow>,
    dim: usize,
    label: Option<Vec<usize>>,
}

fn combinations(m: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > m {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + m - k {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn rat_rows(rows: &[IntRow]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| to_rational(r)).collect()
}

fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Reduces `v` modulo the row space of an RREF matrix (zeroes pivot
/// columns).
fn reduce_mod(v: &[Rational], rref: &RationalMatrix, pivots: &[usize]) -> Vec<Rational> {
    let mut out = v.to_vec();
    for (row, &p) in rref.rows().iter().zip(pivots) {
        if out[p].is_zero() {
            continue;
        }
        let f = out[p].clone();
        for (x, r) in out.iter_mut().zip(row) {
            *x -= &f * r;
        }
    }
    out
}

fn canonical_rows(rows: Vec<IntRow>) -> Vec<IntRow> {
    let set: BTreeSet<IntRow> = rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    set.into_iter().collect()
}

fn rank_of(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    RationalMatrix::new(rows.to_vec()).rank()
}

fn kernel_of(rows: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    if rows.is_empty() {
        return (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }).collect())
            .collect();
    }
    RationalMatrix::new(rows.to_vec()).kernel()
}

/// Canonical basis (primitive RREF rows, sorted) of a subspace given by
/// spanning vectors.
fn canonical_basis(vectors: &[Vec<Rational>]) -> Vec<IntRow> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, _) = RationalMatrix::new(vectors.to_vec()).rref();
    canonical_rows(r.rows().iter().map(|row| primitive_line(row)).collect())
}

impl Cone {
    /// Cone `{x : eqs x = 0, ineqs x <= 0}` in `R^n`.
    pub fn new(n: usize, equalities: Vec<Vec<Rational>>, inequalities: Vec<Vec<Rational>>) -> Cone {
        assert!(equalities.iter().chain(&inequalities).all(|r| r.len() == n), "row length mismatch");
        let eq_rows: Vec<Vec<Rational>> = equalities.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        let (e_rref, e_piv) = if eq_rows.is_empty() {
            (RationalMatrix::zeros(0, n), Vec::new())
        } else {
            RationalMatrix::new(eq_rows).rref()
        };
        let ineq: Vec<IntRow> =
            canonical_rows(inequalities.iter().map(|a| primitive_integer(&reduce_mod(a, &e_rref, &e_piv))).collect());
        let ineq_q = rat_rows(&ineq);

        let mut all: Vec<Vec<Rational>> = e_rref.rows().to_vec();
        all.extend(ineq_q.iter().cloned());
        let lineality_q = kernel_of(&all, n);

        // ambient system of the pointed part
        let mut base: Vec<Vec<Rational>> = e_rref.rows().to_vec();
        base.extend(lineality_q.iter().cloned());
        let k = n - rank_of(&base);

        let mut rays: BTreeSet<IntRow> = BTreeSet::new();
        if k > 0 {
            combinations(ineq.len(), k - 1, |subset| {
                let mut sys = base.clone();
                sys.extend(subset.iter().map(|&i| ineq_q[i].clone()));
                let ker = kernel_of(&sys, n);
                if ker.len() != 1 {
                    return;
                }
                let v = primitive_integer(&ker[0]);
                for cand in [v.clone(), v.iter().map(|x| -x).collect::<IntRow>()] {
                    if ineq.iter().all(|a| !int_dot(a, &cand).is_positive()) {
                        rays.insert(cand);
                    }
                }
            });
        }
        let rays: Vec<IntRow> = rays.into_iter().collect();
        let rays_q = rat_rows(&rays);
        let pointed_dim = rank_of(&rays_q);
        let dim = lineality_q.len() + pointed_dim;

        let mut eqs_all: Vec<Vec<Rational>> = e_rref.rows().to_vec();
        let mut facets: Vec<&IntRow> = Vec::new();
        for (a, aq) in ineq.iter().zip(&ineq_q) {
            let tight: Vec<Vec<Rational>> =
                rays.iter().zip(&rays_q).filter(|(r, _)| int_dot(a, r).is_zero()).map(|(_, q)| q.clone()).collect();
            if tight.len() == rays.len() {
                eqs_all.push(aq.clone());
            } else if rank_of(&tight) + 1 == pointed_dim {
                facets.push(a);
            }
        }
        let equalities = canonical_basis(&eqs_all);
        let (f_rref, f_piv) = if equalities.is_empty() {
            (RationalMatrix::zeros(0, n), Vec::new())
        } else {
            RationalMatrix::new(rat_rows(&equalities)).rref()
        };
        let inequalities =
            canonical_rows(facets.iter().map(|a| primitive_integer(&reduce_mod(&to_rational(a), &f_rref, &f_piv))).collect());
        let lineality = canonical_basis(&lineality_q);
        Cone { n, equalities, inequalities, lineality, rays, dim, label: None }
    }

    pub fn from_ints(n: usize, equalities: &[Vec<i64>], inequalities: &[Vec<i64>]) -> Cone {
        let conv = |rows: &[Vec<i64>]| -> Vec<Vec<Rational>> {
            rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect()
        };
        Cone::new(n, conv(equalities), conv(inequalities))
    }

    /// The whole space `R^n`.
    pub fn full(n: usize) -> Cone {
        Cone::new(n, Vec::new(), Vec::new())
    }

    pub fn with_label(mut self, label: Vec<usize>) -> Cone {
        self.label = Some(label);
        self
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn equalities(&self) -> &[IntRow] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[IntRow] {
        &self.inequalities
    }

    pub fn lineality(&self) -> &[IntRow] {
        &self.lineality
    }

    pub fn rays(&self) -> &[IntRow] {
        &self.rays
    }

    pub fn label(&self) -> Option<&[usize]> {
        self.label.as_deref()
    }

    pub fn contains(&self, w: &[Rational]) -> bool {
        let wq = w;
        self.equalities.iter().all(|e| dot(&to_rational(e), wq).is_zero())
            && self.inequalities.iter().all(|a| !dot(&to_rational(a), wq).is_positive())
    }

    pub fn contains_weight(&self, w: &WeightVector) -> bool {
        self.contains(w.entries())
    }

    /// Relative interior membership: equalities hold and every facet
    /// inequality is strict.
    pub fn contains_in_relative_interior(&self, w: &[Rational]) -> bool {
        self.equalities.iter().all(|e| dot(&to_rational(e), w).is_zero())
            && self.inequalities.iter().all(|a| dot(&to_rational(a), w).is_negative())
    }

    /// A point of the relative interior: the sum of the extreme rays.
    pub fn relative_interior_point(&self) -> Vec<BigInt> {
        let mut p = vec![BigInt::zero(); self.n];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += y;
            }
        }
        p
    }

    /// Generators: extreme rays plus both signs of a lineality basis.
    pub fn generators(&self) -> Vec<IntRow> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(l.iter().map(|x| -x).collect());
        }
        g
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators().iter().all(|g| self.contains(&to_rational(g)))
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        assert_eq!(self.n, other.n);
        let mut eqs = rat_rows(&self.equalities);
        eqs.extend(rat_rows(&other.equalities));
        let mut ineqs = rat_rows(&self.inequalities);
        ineqs.extend(rat_rows(&other.inequalities));
        Cone::new(self.n, eqs, ineqs)
    }

    /// Face cut out by turning the facet inequality `normal` into an
    /// equality.
    pub fn face(&self, normal: &[BigInt]) -> Cone {
        let mut eqs = rat_rows(&self.equalities);
        eqs.push(to_rational(normal));
        Cone::new(self.n, eqs, rat_rows(&self.inequalities))
    }

    /// Facets as (outer normal, facet cone).
    pub fn facets(&self) -> Vec<(IntRow, Cone)> {
        self.inequalities.iter().map(|a| (a.clone(), self.face(a))).collect()
    }

    fn same_constraints(&self, other: &Cone) -> bool {
        self.n == other.n && self.equalities == other.equalities && self.inequalities == other.inequalities
    }

    pub fn to_record(&self) -> ConeRecord {
        let conv = |rows: &[IntRow]| -> Vec<Vec<i64>> {
            rows.iter().map(|r| r.iter().map(|x| x.to_i64().expect("cone entry fits in i64")).collect()).collect()
        };
        ConeRecord {
            equalities: conv(&self.equalities),
            inequalities: conv(&self.inequalities),
            lineality: conv(&self.lineality),
            label: self.label.as_ref().map(|l| l.iter().map(|i| i + 1).collect()),
        }
    }

    pub fn from_record(n: usize, rec: &ConeRecord) -> Cone {
        let cone = Cone::from_ints(n, &rec.equalities, &rec.inequalities);
        match &rec.label {
            Some(l) => cone.with_label(l.iter().map(|i| i - 1).collect()),
            None => cone,
        }
    }

    /// Human-readable summary: `min at {1,2}` for labelled W_n cones.
    pub fn describe(&self) -> String {
        match &self.label {
            Some(a) => {
                let items: Vec<String> = a.iter().map(|i| (i + 1).to_string()).collect();
                format!("min at {{{}}} (dim {})", items.join(","), self.dim)
            }
            None => format!(
                "dim {} cone: {} equalities, {} facets",
                self.dim,
                self.equalities.len(),
                self.inequalities.len()
            ),
        }
    }
}

/// Equality of cones: canonical constraint sets agree and each contains the
/// generators of the other.
pub fn same_cone(c1: &Cone, c2: &Cone) -> bool {
    c1.same_constraints(c2) && c1.contains_cone(c2) && c2.contains_cone(c1)
}

pub fn member(c: &Cone, w: &WeightVector) -> bool {
    c.contains_weight(w)
}

/// JSON form of a cone; rows are primitive and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeRecord {
    pub equalities: Vec<Vec<i64>>,
    pub inequalities: Vec<Vec<i64>>,
    pub lineality: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanRecord {
    pub ambient_n: usize,
    pub cones: Vec<ConeRecord>,
}

/// Finite collection of cones. Faces of listed cones are implied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    n: usize,
    cones: Vec<Cone>,
}

impl Fan {
    pub fn new(n: usize, cones: Vec<Cone>) -> Fan {
        assert!(cones.iter().all(|c| c.n == n));
        Fan { n, cones }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.cones.iter().map(Cone::dim).max().unwrap_or(0)
    }

    pub fn cones_of_dim(&self, d: usize) -> Vec<&Cone> {
        self.cones.iter().filter(|c| c.dim == d).collect()
    }

    /// Cones not contained in another listed cone of larger dimension.
    pub fn maximal_cones(&self) -> Vec<&Cone> {
        self.cones
            .iter()
            .filter(|c| {
                !self.cones.iter().any(|o| o.dim > c.dim && match (&c.label, &o.label) {
                    // C_B is a face of C_A iff A is a subset of B
                    (Some(b), Some(a)) => a.iter().all(|i| b.contains(i)),
                    _ => o.contains_cone(c),
                })
            })
            .collect()
    }

    pub fn contains(&self, w: &WeightVector) -> bool {
        self.cones.iter().any(|c| c.contains_weight(w))
    }

    /// Equality "as a fan": a bijection of maximal cones under [`same_cone`].
    pub fn same_fan(&self, other: &Fan) -> bool {
        let a = self.maximal_cones();
        let b = other.maximal_cones();
        if a.len() != b.len() || self.n != other.n {
            return false;
        }
        let mut used = vec![false; b.len()];
        for c in a {
            match (0..b.len()).find(|&j| !used[j] && same_cone(c, b[j])) {
                Some(j) => used[j] = true,
                None => return false,
            }
        }
        true
    }

    pub fn to_record(&self) -> FanRecord {
        FanRecord { ambient_n: self.n, cones: self.cones.iter().map(Cone::to_record).collect() }
    }

    pub fn from_record(rec: &FanRecord) -> Fan {
        Fan::new(rec.ambient_n, rec.cones.iter().map(|c| Cone::from_record(rec.ambient_n, c)).collect())
    }
}

/// `C_A = {w : w_i = min_k w_k for all i in A}` for a nonempty 0-based `A`.
pub fn w_cone(n: usize, a: &[usize]) -> Cone {
    let unit = |i: usize, j: usize| -> Vec<Rational> {
        let mut r = vec![Rational::zero(); n];
        r[i] = Rational::from_integer(1.into());
        r[j] = Rational::from_integer((-1).into());
        r
    };
    let eqs = a.windows(2).map(|p| unit(p[0], p[1])).collect();
    let ineqs = (0..n).filter(|k| !a.contains(k)).map(|k| unit(a[0], k)).collect();
    Cone::new(n, eqs, ineqs).with_label(a.to_vec())
}

/// The generic tropical fan `W_n`: every `C_A`, ordered by `|A|` then `A`.
pub fn build_w(n: usize) -> Fan {
    assert!(n >= 1);
    let mut labels: Vec<Vec<usize>> = (1u32..(1u32 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    labels.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Fan::new(n, labels.iter().map(|a| w_cone(n, a)).collect())
}

/// Cones of dimension at most `t`.
pub fn skeleton(fan: &Fan, t: usize) -> Result<Fan> {
    let max = fan.dim();
    if t < 1 || t > max {
        return Err(Error::SkeletonOutOfRange { t, max });
    }
    Ok(Fan::new(fan.n, fan.cones.iter().filter(|c| c.dim <= t).cloned().collect()))
}

/// `w` lies in `W_n^m` iff its minimum coordinate occurs at least `n - m + 1`
/// times.
pub fn skeleton_membership(n: usize, m: usize, w: &[i64]) -> bool {
    assert_eq!(w.len(), n);
    let min = *w.iter().min().expect("nonempty weight");
    w.iter().filter(|&&x| x == min).count() + m > n
}

/// Basis of the largest subspace contained in every cone of the fan.
pub fn lineality_space(fan: &Fan) -> Vec<IntRow> {
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for c in &fan.cones {
        rows.extend(rat_rows(&c.equalities));
        rows.extend(rat_rows(&c.inequalities));
    }
    canonical_basis(&kernel_of(&rows, fan.n))
}

/// `sigma(w) = (w_{sigma(1)}, ..., w_{sigma(n)})`.
pub fn permute_weight<T: Clone>(w: &[T], s: &[usize]) -> Vec<T> {
    assert_eq!(w.len(), s.len());
    s.iter().map(|&i| w[i].clone()).collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { return out };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
}

/// `(sigma o tau)(i) = sigma(tau(i))`.
pub fn compose(sigma: &[usize], tau: &[usize]) -> Permutation {
    tau.iter().map(|&i| sigma[i]).collect()
}

pub fn invert(sigma: &[usize]) -> Permutation {
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i;
    }
    inv
}
