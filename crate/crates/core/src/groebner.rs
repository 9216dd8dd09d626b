//! Buchberger's algorithm over the rationals, normal forms, the
//! unit-ideal and monomial-containment tests, and Krull dimension.
//!
//! Every basis element carries a marked term: the leading term under the
//! active [`TermOrder`]. For weight-refined orders this is a term of minimal
//! weight, so marked terms lie in the initial forms `in_w(g)`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Ideal, Monomial, Polynomial, Rational, TermOrder};

/// Polynomial with terms sorted by a term order, leading term first.
#[derive(Debug, Clone, PartialEq, Eq)]
struct OrderedPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl OrderedPoly {
    fn from_poly(p: &Polynomial, ord: &TermOrder) -> Self {
        let mut terms: Vec<(Monomial, Rational)> = p.terms().iter().map(|t| (t.mono.clone(), t.coeff.clone())).collect();
        terms.sort_by(|a, b| ord.compare(&b.0, &a.0));
        OrderedPoly { terms }
    }

    fn to_poly(&self, n: usize) -> Polynomial {
        Polynomial::from_terms(n, self.terms.iter().map(|(m, c)| (c.clone(), m.clone())))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.recip();
                for (_, x) in self.terms.iter_mut() {
                    *x *= &inv;
                }
            }
        }
    }

    /// `self - c * m * g`.
    fn sub_scaled(&self, c: &Rational, m: &Monomial, g: &OrderedPoly, ord: &TermOrder) -> OrderedPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let shifted = g.terms.iter().map(|(gm, gc)| (gm.mul(m), gc * c));
        let mut a = self.terms.iter().cloned().peekable();
        let mut b = shifted.peekable();
        loop {
            let ordering = match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => ord.compare(&x.0, &y.0),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => break,
            };
            match ordering {
                Ordering::Greater => out.push(a.next().unwrap()),
                Ordering::Less => {
                    let (mm, cc) = b.next().unwrap();
                    out.push((mm, -cc));
                }
                Ordering::Equal => {
                    let (mm, ca) = a.next().unwrap();
                    let (_, cb) = b.next().unwrap();
                    let d = ca - cb;
                    if !d.is_zero() {
                        out.push((mm, d));
                    }
                }
            }
        }
        OrderedPoly { terms: out }
    }
}

/// Full reduction of `f` by monic `basis`.
fn reduce(f: &OrderedPoly, basis: &[OrderedPoly], ord: &TermOrder) -> OrderedPoly {
    let mut rest = f.clone();
    let mut remainder: Vec<(Monomial, Rational)> = Vec::new();
    while !rest.is_zero() {
        let (lm, lc) = rest.terms[0].clone();
        match basis.iter().find(|g| g.lead().divides(&lm)) {
            Some(g) => {
                let q = g.lead().quotient_of(&lm);
                rest = rest.sub_scaled(&lc, &q, g, ord);
            }
            None => {
                remainder.push((lm, lc));
                rest.terms.remove(0);
            }
        }
    }
    OrderedPoly { terms: remainder }
}

fn s_polynomial(f: &OrderedPoly, g: &OrderedPoly, ord: &TermOrder) -> OrderedPoly {
    let l = f.lead().lcm(g.lead());
    let mf = f.lead().quotient_of(&l);
    let mg = g.lead().quotient_of(&l);
    let lifted = OrderedPoly { terms: f.terms.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect() };
    lifted.sub_scaled(&Rational::one(), &mg, g, ord)
}

fn pair_key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

/// Reduced Groebner basis of the ideal generated by `gens` (monic,
/// interreduced, sorted by leading monomial, largest first).
fn groebner_basis(gens: &[Polynomial], ord: &TermOrder) -> Vec<OrderedPoly> {
    let mut basis: Vec<OrderedPoly> = Vec::new();
    for g in gens {
        let mut p = OrderedPoly::from_poly(g, ord);
        if p.is_zero() {
            continue;
        }
        p.make_monic();
        if p.lead().is_one() {
            return vec![p];
        }
        basis.push(p);
    }
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    while !pending.is_empty() {
        // normal selection: smallest lcm degree, then smallest lcm, then index
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let la = basis[a.0].lead().lcm(basis[a.1].lead());
                let lb = basis[b.0].lead().lcm(basis[b.1].lead());
                la.degree().cmp(&lb.degree()).then_with(|| ord.compare(&la, &lb)).then_with(|| a.cmp(b))
            })
            .unwrap();
        pending.remove(&(i, j));
        let (li, lj) = (basis[i].lead(), basis[j].lead());
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().divides(&l)
                && !pending.contains(&pair_key(i, k))
                && !pending.contains(&pair_key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], ord);
        let mut r = reduce(&s, &basis, ord);
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        if r.lead().is_one() {
            return vec![r];
        }
        let k = basis.len();
        basis.push(r);
        for i in 0..k {
            pending.insert((i, k));
        }
    }
    // minimize: drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<OrderedPoly> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(o, h)| {
            o != idx && h.lead().divides(g.lead()) && (h.lead() != g.lead() || o < idx)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    // interreduce tails
    let mut reduced = Vec::with_capacity(keep.len());
    for idx in 0..keep.len() {
        let others: Vec<OrderedPoly> =
            keep.iter().enumerate().filter(|(o, _)| *o != idx).map(|(_, g)| g.clone()).collect();
        let head = OrderedPoly { terms: vec![keep[idx].terms[0].clone()] };
        let tail = OrderedPoly { terms: keep[idx].terms[1..].to_vec() };
        let mut t = reduce(&tail, &others, ord);
        let mut terms = head.terms;
        terms.append(&mut t.terms);
        reduced.push(OrderedPoly { terms });
    }
    reduced.sort_by(|a, b| ord.compare(b.lead(), a.lead()));
    reduced
}

/// Basis element with its marked (leading) monomial. The coefficient of the
/// marked term is one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedPolynomial {
    pub poly: Polynomial,
    pub marked: Monomial,
}

/// Reduced marked Groebner basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedGB {
    n: usize,
    order: TermOrder,
    elements: Vec<MarkedPolynomial>,
}

impl MarkedGB {
    /// Reduced Groebner basis of the ideal generated by arbitrary nonzero
    /// polynomials in `n` variables.
    pub fn from_generators(n: usize, gens: &[Polynomial], ord: &TermOrder) -> Self {
        assert_eq!(ord.nvars(), n, "order and ring disagree on the number of variables");
        let basis = groebner_basis(gens, ord);
        let elements = basis
            .iter()
            .map(|g| MarkedPolynomial { poly: g.to_poly(n), marked: g.lead().clone() })
            .collect();
        MarkedGB { n, order: ord.clone(), elements }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn elements(&self) -> &[MarkedPolynomial] {
        &self.elements
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.elements.iter().map(|e| e.poly.clone()).collect()
    }

    pub fn marked_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|e| e.marked.clone()).collect()
    }

    /// True for the basis `{1}` of the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|e| e.marked.is_one())
    }

    /// Supports of all elements, as a sorted set of sorted exponent sets.
    pub fn supports(&self) -> BTreeSet<Vec<Monomial>> {
        self.elements
            .iter()
            .map(|e| {
                let mut s = e.poly.support();
                s.sort();
                s
            })
            .collect()
    }

    /// True when every marked monomial is also the leading monomial under
    /// `ord`. For a homogeneous ideal this means the basis is the reduced
    /// Groebner basis for `ord` as well.
    pub fn is_marked_by(&self, ord: &TermOrder) -> bool {
        self.elements.iter().all(|e| {
            e.poly.terms().iter().all(|t| t.mono == e.marked || ord.compare(&e.marked, &t.mono) == Ordering::Greater)
        })
    }

    pub fn initial_monomial_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.marked_monomials())
    }

    fn ordered(&self) -> Vec<OrderedPoly> {
        self.elements.iter().map(|e| OrderedPoly::from_poly(&e.poly, &self.order)).collect()
    }
}

impl fmt::Display for MarkedGB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars: {}", self.n)?;
        for e in &self.elements {
            writeln!(f, "# marked: {}", e.marked)?;
            writeln!(f, "{}", e.poly)?;
        }
        Ok(())
    }
}

pub fn buchberger(ideal: &Ideal, ord: &TermOrder) -> MarkedGB {
    MarkedGB::from_generators(ideal.nvars(), ideal.generators(), ord)
}

/// Remainder of `f` on full division by `gb`.
pub fn normal_form(f: &Polynomial, gb: &MarkedGB) -> Polynomial {
    assert_eq!(f.nvars(), gb.n, "ambient dimension mismatch");
    let basis = gb.ordered();
    reduce(&OrderedPoly::from_poly(f, &gb.order), &basis, &gb.order).to_poly(gb.n)
}

/// `1 in I`, for any (not necessarily graded) ideal.
pub fn contains_one(ideal: &Ideal) -> bool {
    let n = ideal.nvars();
    MarkedGB::from_generators(n, ideal.generators(), &TermOrder::graded_lex(n)).is_unit()
}

/// `J : (x1...xn)^oo` is the unit ideal iff `J + (t x1...xn - 1)` contains 1.
fn saturation_ideal(ideal: &Ideal) -> Ideal {
    let n = ideal.nvars();
    let mut gens: Vec<Polynomial> = ideal.generators().iter().map(|g| g.extend(1)).collect();
    let tx = Polynomial::monomial(n + 1, Monomial::new(vec![1; n + 1]));
    gens.push(&tx - &Polynomial::one(n + 1));
    Ideal::auxiliary(n + 1, gens).expect("nonzero generators")
}

/// Saturation test without the shortcuts of [`contains_monomial`].
pub fn contains_monomial_by_saturation(ideal: &Ideal) -> bool {
    contains_one(&saturation_ideal(ideal))
}

/// Brute force: the first monomial of degree at most `max_degree` (in
/// graded-lex order) whose normal form vanishes.
pub fn monomial_by_enumeration(ideal: &Ideal, max_degree: u32) -> Option<Monomial> {
    let n = ideal.nvars();
    let gb = buchberger(ideal, &TermOrder::graded_lex(n));
    (0..=max_degree)
        .flat_map(|d| Monomial::all_of_degree(n, d).into_iter().rev())
        .find(|m| normal_form(&Polynomial::monomial(n, m.clone()), &gb).is_zero())
}

/// Whether some monomial lies in `J`.
pub fn contains_monomial(ideal: &Ideal) -> bool {
    if ideal.generators().iter().any(Polynomial::is_monomial) {
        return true;
    }
    // (f) contains a monomial only if f divides it, i.e. f is a monomial
    if ideal.generators().len() == 1 {
        return false;
    }
    contains_one(&saturation_ideal(ideal))
}

/// A monomial in `J`, minimal under divisibility among those tried, when one
/// exists.
pub fn monomial_certificate(ideal: &Ideal) -> Option<Monomial> {
    let n = ideal.nvars();
    if let Some(g) = ideal.generators().iter().filter(|g| g.is_monomial()).min_by_key(|g| g.degree()) {
        return Some(g.terms()[0].mono.clone());
    }
    if !contains_monomial(ideal) {
        return None;
    }
    let gb = MarkedGB::from_generators(n, ideal.generators(), &TermOrder::graded_lex(n));
    if let Some(e) = gb.elements().iter().filter(|e| e.poly.is_monomial()).min_by_key(|e| e.marked.degree()) {
        return Some(e.marked.clone());
    }
    let member = |m: &Monomial| normal_form(&Polynomial::monomial(n, m.clone()), &gb).is_zero();
    let mut k = 1u32;
    let mut m = loop {
        let cand = Monomial::new(vec![k; n]);
        if member(&cand) {
            break cand;
        }
        k += 1;
    };
    // greedy descent towards a minimal monomial
    loop {
        let mut improved = false;
        for i in 0..n {
            if m.exponents()[i] == 0 {
                continue;
            }
            let mut e = m.exponents().to_vec();
            e[i] -= 1;
            let cand = Monomial::new(e);
            if member(&cand) {
                m = cand;
                improved = true;
            }
        }
        if !improved {
            return Some(m);
        }
    }
}

/// Monomial ideal given by minimal generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    minimal_generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(gens: Vec<Monomial>) -> Self {
        let mut minimal: Vec<Monomial> = Vec::new();
        let mut sorted = gens;
        sorted.sort_by_key(|m| m.degree());
        sorted.dedup();
        for m in sorted {
            if !minimal.iter().any(|g| g.divides(&m)) {
                minimal.push(m);
            }
        }
        minimal.sort();
        MonomialIdeal { minimal_generators: minimal }
    }

    pub fn minimal_generators(&self) -> &[Monomial] {
        &self.minimal_generators
    }

    /// Largest set `S` of variables such that no generator is supported
    /// inside `S`; that is the Krull dimension of the quotient.
    pub fn dimension(&self, n: usize) -> Result<usize> {
        if n > 16 {
            return Err(Error::TooManyVariables(n));
        }
        if self.minimal_generators.iter().any(Monomial::is_one) {
            return Err(Error::ImproperIdeal);
        }
        let masks: Vec<u32> =
            self.minimal_generators.iter().map(|g| g.support().fold(0u32, |acc, i| acc | (1 << i))).collect();
        let best = (0u32..(1u32 << n))
            .filter(|s| masks.iter().all(|m| m & !s != 0))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0);
        Ok(best)
    }
}

/// Krull dimension of `K[x]/I` via the graded-lex initial ideal.
pub fn krull_dimension(ideal: &Ideal) -> Result<usize> {
    krull_dimension_with(ideal, &TermOrder::graded_lex(ideal.nvars()))
}

pub fn krull_dimension_with(ideal: &Ideal, ord: &TermOrder) -> Result<usize> {
    if ideal.nvars() > 16 {
        return Err(Error::TooManyVariables(ideal.nvars()));
    }
    let gb = buchberger(ideal, ord);
    if gb.is_unit() {
        return Err(Error::ImproperIdeal);
    }
    gb.initial_monomial_ideal().dimension(ideal.nvars())
}
