//! Initial forms and initial ideals with respect to weight vectors, tropical
//! membership, Groebner cones and Groebner fan enumeration.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fans::{Cone, Fan};
use crate::groebner::{buchberger, contains_monomial, monomial_certificate, MarkedGB};
use crate::linalg::to_rational;
use crate::poly::{Ideal, Monomial, Polynomial, Rational, TermOrder, WeightVector};

/// Sum of the terms of `f` of minimal `w`-weight.
pub fn initial_form(f: &Polynomial, w: &WeightVector) -> Polynomial {
    assert!(!f.is_zero(), "initial form of zero");
    let weights: Vec<Rational> = f.terms().iter().map(|t| w.dot(&t.mono)).collect();
    let min = weights.iter().min().expect("nonzero polynomial").clone();
    Polynomial::from_terms(
        f.nvars(),
        f.terms().iter().zip(&weights).filter(|(_, wt)| **wt == min).map(|(t, _)| (t.coeff.clone(), t.mono.clone())),
    )
}

/// `in_w(I)`, generated by the initial forms of the reduced Groebner basis
/// for the `w`-refined order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialIdeal {
    pub generators: Vec<Polynomial>,
    pub source_weight: WeightVector,
    pub source_gb: MarkedGB,
}

impl InitialIdeal {
    pub fn from_gb(gb: MarkedGB, w: &WeightVector) -> Self {
        let generators = gb.elements().iter().map(|e| initial_form(&e.poly, w)).collect();
        InitialIdeal { generators, source_weight: w.clone(), source_gb: gb }
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::auxiliary(self.source_gb.nvars(), self.generators.clone()).expect("initial forms are nonzero")
    }

    pub fn contains_monomial(&self) -> bool {
        self.generators.iter().any(Polynomial::is_monomial) || contains_monomial(&self.ideal())
    }
}

pub fn initial_ideal(ideal: &Ideal, w: &WeightVector) -> InitialIdeal {
    let gb = buchberger(ideal, &TermOrder::weighted(w));
    InitialIdeal::from_gb(gb, w)
}

/// `w in T(I)`: the initial ideal `in_w(I)` contains no monomial.
pub fn in_tropical_variety(ideal: &Ideal, w: &WeightVector) -> bool {
    !initial_ideal(ideal, w).contains_monomial()
}

/// Membership with a witness: `Err(m)` carries a monomial of `in_w(I)`.
pub fn tropical_certificate(ideal: &Ideal, w: &WeightVector) -> std::result::Result<(), Monomial> {
    let init = initial_ideal(ideal, w);
    match monomial_certificate(&init.ideal()) {
        Some(m) => Err(m),
        None => Ok(()),
    }
}

fn diff_row(a: &Monomial, b: &Monomial) -> Vec<Rational> {
    a.exponents()
        .iter()
        .zip(b.exponents())
        .map(|(&x, &y)| Rational::from_integer(BigInt::from(x as i64 - y as i64)))
        .collect()
}

/// Closed cone of weights whose initial ideal equals `in_w(I)`: for each
/// basis element with marked exponent `a` and other exponent `b`, the row
/// `a - b` is an equality if it is tied at `w` and an inequality otherwise.
pub fn groebner_cone_of(gb: &MarkedGB, w: &WeightVector) -> Cone {
    let n = gb.nvars();
    let mut eqs = Vec::new();
    let mut ineqs = Vec::new();
    for e in gb.elements() {
        for t in e.poly.terms() {
            if t.mono == e.marked {
                continue;
            }
            let row = diff_row(&e.marked, &t.mono);
            if w.dot(&e.marked) == w.dot(&t.mono) {
                eqs.push(row);
            } else {
                ineqs.push(row);
            }
        }
    }
    Cone::new(n, eqs, ineqs)
}

pub fn groebner_cone(ideal: &Ideal, w: &WeightVector) -> Cone {
    let gb = buchberger(ideal, &TermOrder::weighted(w));
    groebner_cone_of(&gb, w)
}

/// Closed maximal cone of the term order a marked basis belongs to.
pub fn maximal_cone_of(gb: &MarkedGB) -> Cone {
    let n = gb.nvars();
    let ineqs = gb
        .elements()
        .iter()
        .flat_map(|e| e.poly.terms().iter().filter(|t| t.mono != e.marked).map(|t| diff_row(&e.marked, &t.mono)))
        .collect();
    Cone::new(n, Vec::new(), ineqs)
}

fn weight_of(v: &[BigInt]) -> WeightVector {
    WeightVector::new(to_rational(v))
}

/// Maximal Groebner cones of a graded ideal, by breadth-first facet
/// flipping from a pseudo-random starting weight.
pub fn enumerate_groebner_fan(ideal: &Ideal, budget: usize) -> Result<Fan> {
    let n = ideal.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7472_6f70);
    let start = loop {
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(-1000..=1000)).collect();
        let gb = buchberger(ideal, &TermOrder::weighted(&WeightVector::from_ints(&w)));
        let cone = maximal_cone_of(&gb);
        if cone.dim() == n {
            break cone;
        }
    };
    let mut found: Vec<Cone> = vec![start];
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(ci) = queue.pop_front() {
        let current = found[ci].clone();
        for (normal, facet) in current.facets() {
            let p = facet.relative_interior_point();
            let p_q = to_rational(&p);
            if found.iter().enumerate().any(|(j, c)| j != ci && c.contains(&p_q) && c.intersect(&current).dim() + 1 == n) {
                continue;
            }
            let neighbour = flip(ideal, &current, &p, &normal)?;
            if !found.contains(&neighbour) {
                found.push(neighbour);
                if found.len() > budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                queue.push_back(found.len() - 1);
            }
        }
    }
    found.sort_by_key(|c| c.to_record().inequalities);
    Ok(Fan::new(n, found))
}

/// Steps from the facet point `p` across the facet with outer normal
/// `normal` and returns the adjacent maximal cone.
fn flip(ideal: &Ideal, current: &Cone, p: &[BigInt], normal: &[BigInt]) -> Result<Cone> {
    let n = ideal.nvars();
    let p_q = to_rational(p);
    let mut scale = BigInt::one();
    for _ in 0..64 {
        let q: Vec<BigInt> = p.iter().zip(normal).map(|(x, a)| &scale * x + a).collect();
        let gb = buchberger(ideal, &TermOrder::weighted(&weight_of(&q)));
        let cone = maximal_cone_of(&gb);
        if cone.dim() == n && &cone != current && cone.contains(&p_q) && cone.intersect(current).dim() + 1 == n {
            return Ok(cone);
        }
        scale *= 2;
    }
    Err(Error::Invalid("facet flip did not converge".into()))
}

/// Sampled tropical-basis check: for every sampled weight, `w in T(I)` iff
/// no initial form of a listed generator is a monomial.
pub fn check_tropical_basis(gens: &[Polynomial], ideal: &Ideal, sample: &[WeightVector]) -> bool {
    let mut oracle = TropicalOracle::new(ideal.clone());
    sample.iter().all(|w| {
        let by_gens = gens.iter().all(|g| !initial_form(g, w).is_monomial());
        oracle.member(w) == by_gens
    })
}

/// Memoizing membership oracle for repeated queries against one graded
/// ideal. Reduced bases are reused whenever their marked terms agree with
/// the order of the query weight, and monomial tests are cached per initial
/// ideal.
#[derive(Debug, Clone)]
pub struct TropicalOracle {
    ideal: Ideal,
    bases: Vec<MarkedGB>,
    verdicts: HashMap<Vec<Polynomial>, bool>,
}

impl TropicalOracle {
    pub fn new(ideal: Ideal) -> Self {
        assert!(ideal.is_graded(), "tropical membership needs a graded ideal");
        TropicalOracle { ideal, bases: Vec::new(), verdicts: HashMap::new() }
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn basis_for(&mut self, w: &WeightVector) -> &MarkedGB {
        let ord = TermOrder::weighted(w);
        let idx = match self.bases.iter().position(|gb| gb.is_marked_by(&ord)) {
            Some(i) => i,
            None => {
                self.bases.push(buchberger(&self.ideal, &ord));
                self.bases.len() - 1
            }
        };
        &self.bases[idx]
    }

    pub fn initial_ideal(&mut self, w: &WeightVector) -> InitialIdeal {
        let gb = self.basis_for(w).clone();
        InitialIdeal::from_gb(gb, w)
    }

    /// `w in T(I)`.
    pub fn member(&mut self, w: &WeightVector) -> bool {
        let gb = self.basis_for(w);
        let gens: Vec<Polynomial> = gb.elements().iter().map(|e| initial_form(&e.poly, w)).collect();
        if gens.iter().any(Polynomial::is_monomial) {
            return false;
        }
        if let Some(&v) = self.verdicts.get(&gens) {
            return v;
        }
        let n = self.ideal.nvars();
        let v = !contains_monomial(&Ideal::auxiliary(n, gens.clone()).expect("nonzero initial forms"));
        self.verdicts.insert(gens, v);
        v
    }

    pub fn distinct_bases(&self) -> usize {
        self.bases.len()
    }
}

#[cfg(test)]
pub(crate) fn random_weight(rng: &mut impl Rng, n: usize, radius: i64) -> WeightVector {
    WeightVector::from_ints(&(0..n).map(|_| rng.gen_range(-radius..=radius)).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fans::{build_w, same_cone};
    use crate::poly::parse_polynomial;
    use proptest::prelude::*;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n).unwrap()
    }

    fn w(v: &[i64]) -> WeightVector {
        WeightVector::from_ints(v)
    }

    #[test]
    fn initial_form_examples() {
        assert_eq!(initial_form(&p("x1+x2+x3", 3), &w(&[0, 0, 1])), p("x1+x2", 3));
        let f = p("x1^2 + 3*x1*x2 - x3^2", 3);
        assert_eq!(initial_form(&f, &w(&[4, 4, 4])), f);
        assert_eq!(initial_form(&p("x1^2+x1*x2+x2^2", 2), &w(&[0, 1])), p("x1^2", 2));
    }

    #[test]
    fn initial_ideal_examples() {
        let i = Ideal::parse(2, &["x1+x2"]).unwrap();
        assert_eq!(initial_ideal(&i, &w(&[0, 0])).generators, vec![p("x1+x2", 2)]);
        assert_eq!(initial_ideal(&i, &w(&[0, 1])).generators, vec![p("x1", 2)]);
        let m = Ideal::parse(2, &["x1*x2"]).unwrap();
        for v in [[0, 0], [3, -1], [-2, 5]] {
            assert_eq!(initial_ideal(&m, &w(&v)).generators, vec![p("x1*x2", 2)]);
        }
    }

    #[test]
    fn membership_examples() {
        let i = Ideal::parse(3, &["x1+x2+x3"]).unwrap();
        assert!(in_tropical_variety(&i, &w(&[0, 0, 0])));
        assert!(!in_tropical_variety(&i, &w(&[-1, 0, 0])));
        assert_eq!(tropical_certificate(&i, &w(&[-1, 0, 0])), Err(Monomial::new(vec![1, 0, 0])));
        let m = Ideal::parse(2, &["x1*x2"]).unwrap();
        for a in -3..=3 {
            for b in -3..=3 {
                assert!(!in_tropical_variety(&m, &w(&[a, b])));
            }
        }
    }

    #[test]
    fn cone_examples() {
        let i = Ideal::parse(2, &["x1+x2"]).unwrap();
        let c = groebner_cone(&i, &w(&[0, 1]));
        assert!(same_cone(&c, &Cone::from_ints(2, &[], &[vec![1, -1]])));
        let c = groebner_cone(&i, &w(&[0, 0]));
        assert!(same_cone(&c, &Cone::from_ints(2, &[vec![1, -1]], &[])));
        assert!(c.contains_weight(&w(&[5, 5])));
    }

    #[test]
    fn fan_examples() {
        let i = Ideal::parse(2, &["x1+x2"]).unwrap();
        let fan = enumerate_groebner_fan(&i, 10).unwrap();
        assert_eq!(fan.len(), 2);
        assert!(fan.cones().iter().all(|c| c.dim() == 2));

        let m = Ideal::parse(2, &["x1", "x2"]).unwrap();
        let fan = enumerate_groebner_fan(&m, 10).unwrap();
        assert_eq!(fan.len(), 1);
        assert!(same_cone(&fan.cones()[0], &Cone::full(2)));

        let l = Ideal::parse(3, &["x1+x2+x3"]).unwrap();
        let fan = enumerate_groebner_fan(&l, 10).unwrap();
        assert!(fan.same_fan(&build_w(3)));
        assert_eq!(enumerate_groebner_fan(&l, 2), Err(Error::BudgetExceeded(2)));
    }

    #[test]
    fn fan_of_twisted_cubic_covers_space() {
        let i = Ideal::parse(4, &["x1*x3 - x2^2", "x2*x4 - x3^2", "x1*x4 - x2*x3"]).unwrap();
        let fan = enumerate_groebner_fan(&i, 200).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let v = random_weight(&mut rng, 4, 50);
            let hits = fan.cones().iter().filter(|c| c.contains_weight(&v)).count();
            assert!(hits >= 1);
            let interior = fan.cones().iter().filter(|c| c.contains_in_relative_interior(v.entries())).count();
            assert!(interior <= 1);
        }
        // pairwise disjoint interiors
        for (a, c) in fan.cones().iter().enumerate() {
            let pt = to_rational(&c.relative_interior_point());
            for (b, d) in fan.cones().iter().enumerate() {
                if a != b {
                    assert!(!d.contains_in_relative_interior(&pt));
                }
            }
        }
    }

    #[test]
    fn oracle_matches_direct_route() {
        let i = Ideal::parse(3, &["x1^2 + x2*x3 - 2*x3^2", "x1*x2 - x2^2"]).unwrap();
        let mut oracle = TropicalOracle::new(i.clone());
        for a in -2..=2 {
            for b in -2..=2 {
                let v = w(&[0, a, b]);
                assert_eq!(oracle.member(&v), in_tropical_variety(&i, &v), "w = {v}");
            }
        }
        assert!(oracle.distinct_bases() >= 2);
    }

    #[test]
    fn tropical_basis_checks() {
        let f = p("x1 + 2*x2 - x3", 3);
        let i = Ideal::new(3, vec![f.clone()]).unwrap();
        let sample: Vec<WeightVector> =
            (-2..=2).flat_map(|a| (-2..=2).map(move |b| w(&[0, a, b]))).collect();
        assert!(check_tropical_basis(&[f], &i, &sample));
        // at (0,0,1) both listed forms have binomial initial forms, but the
        // difference x2 + 2*x3 has initial form x2
        let gens = vec![p("x1 + x2 + x3", 3), p("x1 + 2*x2 + 3*x3", 3)];
        let i = Ideal::new(3, gens.clone()).unwrap();
        assert!(!check_tropical_basis(&gens, &i, &[w(&[0, 0, 1])]));
        assert!(!in_tropical_variety(&i, &w(&[0, 0, 1])));
        // the reduced basis for any order is a tropical basis of a linear ideal
        let grid: Vec<WeightVector> =
            (-2..=2).flat_map(|a| (-2..=2).map(move |b| w(&[0, a, b]))).collect();
        let circuits = vec![p("x1 - x3", 3), p("x2 + 2*x3", 3), p("2*x1 + x2", 3)];
        assert!(check_tropical_basis(&circuits, &i, &grid));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn lineality_of_graded_ideals(a in -4i64..4, b in -4i64..4, c in -4i64..4, shift in -3i64..3) {
            let i = Ideal::parse(3, &["x1^2 + x2*x3 - 2*x3^2", "x1*x2 - x2^2"]).unwrap();
            let v = w(&[a, b, c]);
            let s = v.shift(&Rational::from_integer(shift.into()));
            prop_assert_eq!(in_tropical_variety(&i, &v), in_tropical_variety(&i, &s));
            prop_assert_eq!(initial_ideal(&i, &v).generators, initial_ideal(&i, &s).generators);
        }

        #[test]
        fn initial_form_idempotent(a in -4i64..4, b in -4i64..4, c in -4i64..4) {
            let f = p("x1^3 - 2*x1*x2*x3 + x2^2*x3 + 5*x3^3 - x1^2", 3);
            let v = w(&[a, b, c]);
            let once = initial_form(&f, &v);
            prop_assert_eq!(initial_form(&once, &v), once);
        }

        #[test]
        fn cone_contains_weight_and_interior_agrees(a in -3i64..3, b in -3i64..3, c in -3i64..3) {
            let i = Ideal::parse(3, &["x1^2 + x2*x3 - 2*x3^2", "x1*x2 - x2^2"]).unwrap();
            let v = w(&[a, b, c]);
            let cone = groebner_cone(&i, &v);
            prop_assert!(cone.contains_weight(&v));
            prop_assert!(cone.contains_in_relative_interior(v.entries()));
            let pt = cone.relative_interior_point();
            let vi = v.to_integer_vector();
            let probe: Vec<BigInt> = pt.iter().zip(&vi).map(|(x, y)| x + BigInt::from(3) * y).collect();
            let pw = weight_of(&probe);
            prop_assert!(cone.contains_in_relative_interior(pw.entries()));
            prop_assert_eq!(initial_ideal(&i, &pw).generators, initial_ideal(&i, &v).generators);
            prop_assert_eq!(in_tropical_variety(&i, &pw), in_tropical_variety(&i, &v));
        }
    }
}
