//! Exact multivariate polynomials over the rationals.
//!
//! Polynomials are kept in a canonical form: terms strictly sorted by
//! graded-lex with `x1 > x2 > ... > xn`, no duplicate monomials and no zero
//! coefficients. Structural equality is therefore ideal equality of
//! polynomials.

mod order;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use order::{compare_monomials, OrderKind, TermOrder, WeightVector};
pub use parse::parse_polynomial;

/// Exact rational number.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent vector of a monomial in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The variable `x_{index+1}` (0-based index).
    pub fn var(n: usize, index: usize) -> Self {
        let mut e = vec![0; n];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Variables that occur with positive exponent (0-based).
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    /// Monomial in `n + extra` variables, new variables get exponent zero.
    pub fn extend(&self, extra: usize) -> Monomial {
        let mut e = self.0.clone();
        e.extend(std::iter::repeat(0).take(extra));
        Monomial(e)
    }

    /// All monomials of total degree `d` in `n` variables, in graded-lex
    /// descending order.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == n {
                cur.push(left);
                out.push(Monomial(cur.clone()));
                cur.pop();
                return;
            }
            for e in (0..=left).rev() {
                cur.push(e);
                rec(n, i + 1, left - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(n, 0, d, &mut Vec::with_capacity(n), &mut out);
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Graded-lex comparison with `x1 > ... > xn`; the canonical term order.
pub fn grlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Rational,
    pub mono: Monomial,
}

/// Multivariate polynomial in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial { n, terms: Vec::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::from_terms(n, vec![(c, Monomial::one(n))])
    }

    pub fn var(n: usize, index: usize) -> Self {
        Self::monomial(n, Monomial::var(n, index))
    }

    pub fn monomial(n: usize, m: Monomial) -> Self {
        Self::from_terms(n, vec![(Rational::one(), m)])
    }

    /// Builds a canonical polynomial, merging duplicate monomials and
    /// dropping zero coefficients.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Rational, Monomial)>) -> Self {
        let mut raw: Vec<(Rational, Monomial)> = terms.into_iter().collect();
        raw.sort_by(|a, b| grlex_cmp(&b.1, &a.1));
        let mut out: Vec<Term> = Vec::with_capacity(raw.len());
        for (c, m) in raw {
            debug_assert_eq!(m.nvars(), n);
            match out.last_mut() {
                Some(last) if last.mono == m => last.coeff += c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.coeff.is_zero() {
                            out.pop();
                        }
                    }
                    out.push(Term { coeff: c, mono: m });
                }
            }
        }
        if out.last().is_some_and(|t| t.coeff.is_zero()) {
            out.pop();
        }
        Polynomial { n, terms: out }
    }


    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one()
    }

    pub fn support(&self) -> Vec<Monomial> {
        self.terms.iter().map(|t| t.mono.clone()).collect()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|t| grlex_cmp(m, &t.mono))
            .map(|i| self.terms[i].coeff.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    /// Total degree of the highest term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.mono.degree())
    }

    /// `Some(d)` when every term has total degree `d`.
    pub fn is_homogeneous(&self) -> Option<u32> {
        let d = self.degree()?;
        self.terms.iter().all(|t| t.mono.degree() == d).then_some(d)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: &t.coeff * c, mono: t.mono.clone() })
            .collect();
        Polynomial { n: self.n, terms }
    }

    /// Scales so that the first canonical term has coefficient one.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            Some(t) => self.scale(&t.coeff.recip()),
            None => self.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: t.coeff.clone(), mono: t.mono.mul(m) })
            .collect();
        Polynomial { n: self.n, terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Same polynomial in `n + extra` variables.
    pub fn extend(&self, extra: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: t.coeff.clone(), mono: t.mono.extend(extra) })
            .collect();
        Polynomial { n: self.n + extra, terms }
    }

    /// Renames variables: `x_i` becomes `x_{perm[i]}` (0-based).
    pub fn rename_variables(&self, perm: &[usize]) -> Polynomial {
        Polynomial::from_terms(
            self.n,
            self.terms.iter().map(|t| {
                let mut e = vec![0; self.n];
                for (i, &x) in t.mono.exponents().iter().enumerate() {
                    e[perm[i]] = x;
                }
                (t.coeff.clone(), Monomial::new(e))
            }),
        )
    }

    /// Substitutes `x_i -> sum_j m[i][j] x_j`.
    pub fn linear_substitution(&self, m: &[Vec<Rational>]) -> Polynomial {
        let images: Vec<Polynomial> = m
            .iter()
            .map(|row| {
                Polynomial::from_terms(
                    self.n,
                    row.iter().enumerate().map(|(j, c)| (c.clone(), Monomial::var(self.n, j))),
                )
            })
            .collect();
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(self.n), p.clone()]).collect();
        let mut acc: Vec<(Rational, Monomial)> = Vec::new();
        for t in &self.terms {
            let mut prod = Polynomial::constant(self.n, t.coeff.clone());
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    prod = &prod * &powers[i][e];
                }
            }
            acc.extend(prod.terms.into_iter().map(|t| (t.coeff, t.mono)));
        }
        Polynomial::from_terms(self.n, acc)
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        assert_eq!(self.n, other.n, "ambient dimension mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => grlex_cmp(&a.mono, &b.mono),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let t = &other.terms[j];
                    let c = if negate { -t.coeff.clone() } else { t.coeff.clone() };
                    out.push(Term { coeff: c, mono: t.mono.clone() });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &self.terms[i].coeff - &other.terms[j].coeff
                    } else {
                        &self.terms[i].coeff + &other.terms[j].coeff
                    };
                    if !c.is_zero() {
                        out.push(Term { coeff: c, mono: self.terms[i].mono.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { n: self.n, terms: out }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n, rhs.n, "ambient dimension mismatch");
        let mut acc = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                acc.push((&a.coeff * &b.coeff, a.mono.mul(&b.mono)));
            }
        }
        Polynomial::from_terms(self.n, acc)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let abs = t.coeff.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if t.mono.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", t.mono)?;
            } else {
                write!(f, "{abs}*{}", t.mono)?;
            }
        }
        Ok(())
    }
}

pub fn multiply(p: &Polynomial, q: &Polynomial) -> Polynomial {
    p * q
}

/// Finite generating set of an ideal. Graded ideals (all generators
/// homogeneous) are the normal case; `auxiliary` builds arbitrary ones for
/// internal membership tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    n: usize,
    generators: Vec<Polynomial>,
    graded: bool,
}

impl Ideal {
    /// Graded ideal; every generator must be nonzero and homogeneous.
    pub fn new(n: usize, generators: Vec<Polynomial>) -> Result<Self> {
        let ideal = Self::auxiliary(n, generators)?;
        for (i, g) in ideal.generators.iter().enumerate() {
            if g.is_homogeneous().is_none() {
                return Err(Error::NotHomogeneous(i));
            }
        }
        Ok(Ideal { graded: true, ..ideal })
    }

    /// Ideal without the homogeneity requirement.
    pub fn auxiliary(n: usize, generators: Vec<Polynomial>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("ambient dimension must be positive".into()));
        }
        if generators.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        for g in &generators {
            if g.nvars() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.nvars() });
            }
            if g.is_zero() {
                return Err(Error::ZeroGenerator);
            }
        }
        let graded = generators.iter().all(|g| g.is_homogeneous().is_some());
        Ok(Ideal { n, generators, graded })
    }

    pub fn parse(n: usize, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|s| parse_polynomial(s, n)).collect::<Result<Vec<_>>>()?;
        Ideal::new(n, polys)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    /// Renames `x_i` to `x_{perm[i]}` in every generator.
    pub fn rename_variables(&self, perm: &[usize]) -> Ideal {
        Ideal {
            n: self.n,
            generators: self.generators.iter().map(|g| g.rename_variables(perm)).collect(),
            graded: self.graded,
        }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars: {}", self.n)?;
        for g in &self.generators {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

pub fn is_homogeneous(p: &Polynomial) -> Option<u32> {
    p.is_homogeneous()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n).unwrap()
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(&p("x1+x2", 2) * &p("x1-x2", 2), p("x1^2 - x2^2", 2));
        let q = p("3*x1*x2 - 1/2*x2^3", 2);
        assert_eq!(&q * &Polynomial::one(2), q);
        assert_eq!(&p("x1+x2", 2) * &p("x1+x2", 2), p("x1^2+2*x1*x2+x2^2", 2));
    }

    #[test]
    fn homogeneity() {
        assert_eq!(p("x1^2+x2*x3", 3).is_homogeneous(), Some(2));
        assert_eq!(p("x1 + x2^2", 2).is_homogeneous(), None);
        assert_eq!(p("5", 1).is_homogeneous(), Some(0));
    }

    #[test]
    fn canonical_order_is_grlex() {
        let f = p("x3 + x1^2 + x2*x1 + 7", 3);
        let shown = f.to_string();
        assert_eq!(shown, "x1^2 + x1*x2 + x3 + 7");
    }

    #[test]
    fn ideal_rejects_bad_generators() {
        assert_eq!(Ideal::new(2, vec![Polynomial::zero(2)]), Err(Error::ZeroGenerator));
        assert_eq!(Ideal::new(2, vec![p("x1 + x2^2", 2)]), Err(Error::NotHomogeneous(0)));
        assert_eq!(Ideal::new(2, vec![]), Err(Error::EmptyIdeal));
        assert!(Ideal::auxiliary(2, vec![p("x1 - 1", 2)]).is_ok());
    }

    #[test]
    fn degree_enumeration() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(4, 3).len(), 20);
        let ms = Monomial::all_of_degree(3, 3);
        assert!(ms.windows(2).all(|w| grlex_cmp(&w[0], &w[1]) == Ordering::Greater));
    }

    #[test]
    fn linear_substitution_expands() {
        let f = p("x1*x2", 2);
        let g = vec![vec![rat(1), rat(1)], vec![rat(1), rat(-1)]];
        assert_eq!(f.linear_substitution(&g), p("x1^2 - x2^2", 2));
    }
}
