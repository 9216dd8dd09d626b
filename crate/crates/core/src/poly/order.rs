use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Monomial, Rational};

/// Weight vector `w` in `Q^n`. The weight of `x^a` is `w . a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        WeightVector(entries)
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        WeightVector(entries.iter().map(|&e| Rational::from_integer(BigInt::from(e))).collect())
    }

    pub fn zero(n: usize) -> Self {
        WeightVector(vec![Rational::zero(); n])
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dot(&self, m: &Monomial) -> Rational {
        self.0
            .iter()
            .zip(m.exponents())
            .filter(|(_, &e)| e != 0)
            .map(|(w, &e)| w * Rational::from_integer(BigInt::from(e)))
            .sum()
    }

    /// `w + c (1, ..., 1)`.
    pub fn shift(&self, c: &Rational) -> Self {
        WeightVector(self.0.iter().map(|w| w + c).collect())
    }

    /// Smallest positive multiple with integer entries.
    pub fn to_integer_vector(&self) -> Vec<BigInt> {
        let l = self.0.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        self.0.iter().map(|w| (w * Rational::from_integer(l.clone())).to_integer()).collect()
    }

    /// Integer entries as `i64`, if all entries are integers in range.
    pub fn as_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|w| if w.is_integer() { w.to_integer().to_i64() } else { None }).collect()
    }
}

impl From<Vec<i64>> for WeightVector {
    fn from(v: Vec<i64>) -> Self {
        WeightVector::from_ints(&v)
    }
}

impl std::fmt::Display for WeightVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    Lex,
    GradedLex,
    WeightRefined,
}

/// Total order on monomials. `compare(a, b) == Greater` means `a` is the
/// preferred (leading) monomial.
///
/// Weight-refined orders prefer the monomial of *smaller* weight, so the
/// leading term of a polynomial is a term of its initial form `in_w(f)`.
/// Total degree is compared first (larger degree leads), which keeps the
/// order a well-order for any sign of `w`; on homogeneous input this step
/// never decides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermOrder {
    kind: OrderKind,
    weight: Option<WeightVector>,
    priority: Vec<usize>,
    scaled: Vec<i128>,
}

impl TermOrder {
    pub fn lex(n: usize) -> Self {
        TermOrder { kind: OrderKind::Lex, weight: None, priority: (0..n).collect(), scaled: Vec::new() }
    }

    pub fn graded_lex(n: usize) -> Self {
        TermOrder { kind: OrderKind::GradedLex, weight: None, priority: (0..n).collect(), scaled: Vec::new() }
    }

    /// Degree, then smaller `w`-weight, then lex with `x1 > ... > xn`.
    pub fn weighted(w: &WeightVector) -> Self {
        let scaled = w
            .to_integer_vector()
            .iter()
            .map(|x| x.to_i128().expect("weight entries exceed i128"))
            .collect();
        TermOrder {
            kind: OrderKind::WeightRefined,
            weight: Some(w.clone()),
            priority: (0..w.len()).collect(),
            scaled,
        }
    }

    /// Replaces the lex tie-break: `priority[0]` is the most significant
    /// variable. Must be a permutation of `0..n`.
    pub fn with_priority(mut self, priority: Vec<usize>) -> Self {
        let mut check = priority.clone();
        check.sort_unstable();
        assert!(check.iter().copied().eq(0..self.priority.len()), "priority must be a permutation");
        self.priority = priority;
        self
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn weight(&self) -> Option<&WeightVector> {
        self.weight.as_ref()
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    fn scaled_weight(&self, m: &Monomial) -> i128 {
        self.scaled.iter().zip(m.exponents()).map(|(w, &e)| w * e as i128).sum()
    }

    fn lex_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        for &i in &self.priority {
            match ea[i].cmp(&eb[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => self.lex_cmp(a, b),
            OrderKind::GradedLex => a.degree().cmp(&b.degree()).then_with(|| self.lex_cmp(a, b)),
            OrderKind::WeightRefined => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| self.scaled_weight(b).cmp(&self.scaled_weight(a)))
                .then_with(|| self.lex_cmp(a, b)),
        }
    }

    /// Same kind and tie-break in `n + extra` variables; extra variables get
    /// weight zero and lowest lex priority.
    pub fn extend(&self, extra: usize) -> TermOrder {
        let n = self.priority.len();
        let mut priority = self.priority.clone();
        priority.extend(n..n + extra);
        let mut out = self.clone();
        out.priority = priority;
        if let Some(w) = &self.weight {
            let mut e = w.entries().to_vec();
            e.extend(std::iter::repeat(Rational::zero()).take(extra));
            out.weight = Some(WeightVector::new(e));
            out.scaled.extend(std::iter::repeat(0).take(extra));
        }
        out
    }
}

pub fn compare_monomials(a: &Monomial, b: &Monomial, ord: &TermOrder) -> Ordering {
    ord.compare(a, b)
}
