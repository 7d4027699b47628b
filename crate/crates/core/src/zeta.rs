//! Finitely supported representation zeta functions.
//!
//! A [`ZetaSeries`] is the multiset of character degrees of a finite group,
//! stored as `degree -> multiplicity` with both sides polynomials in `q`.
//! `zeta(s) = sum mult * deg^{-s}`; only the special values at `s <= 0` are
//! ever evaluated.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyq::{RatPoly, Sign};

/// Probe values of `q` used for integrality and positivity checks.
pub const PROBE_QS: [i64; 9] = [2, 3, 4, 5, 7, 8, 9, 11, 13];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("epsilon mismatch: {left} vs {right}")]
    EpsilonMismatch { left: Sign, right: Sign },
    #[error("cannot scale degrees by the zero index")]
    ZeroIndex,
    #[error("{label}: {what} {value} evaluates to {got} at q = {q}")]
    NotPositiveInteger {
        label: String,
        what: &'static str,
        value: RatPoly,
        q: i64,
        got: String,
    },
}

/// One merged term: all characters of a given degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub mult: RatPoly,
    /// Where the contributions to this term came from.
    pub sources: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaSeries {
    pub label: String,
    pub epsilon: Sign,
    terms: BTreeMap<RatPoly, Term>,
}

impl ZetaSeries {
    pub fn empty(label: impl Into<String>, epsilon: Sign) -> Self {
        ZetaSeries {
            label: label.into(),
            epsilon,
            terms: BTreeMap::new(),
        }
    }

    /// The zeta function of the trivial group.
    pub fn trivial(epsilon: Sign) -> Self {
        Self::from_terms("1", epsilon, [(RatPoly::one(), RatPoly::one())])
    }

    /// The zeta function of an abelian group of the given order.
    pub fn abelian(label: impl Into<String>, epsilon: Sign, order: RatPoly) -> Self {
        Self::from_terms(label, epsilon, [(order, RatPoly::one())])
    }

    /// Builds a normalized series from `(mult, deg)` pairs.
    pub fn from_terms<I>(label: impl Into<String>, epsilon: Sign, terms: I) -> Self
    where
        I: IntoIterator<Item = (RatPoly, RatPoly)>,
    {
        let mut z = Self::empty(label, epsilon);
        for (mult, deg) in terms {
            z.push(mult, deg, None);
        }
        z
    }

    /// Adds `mult` characters of degree `deg`, merging with an existing term.
    pub fn push(&mut self, mult: RatPoly, deg: RatPoly, source: Option<String>) {
        if mult.is_zero() {
            return;
        }
        let total = match self.terms.get(&deg) {
            Some(t) => &t.mult + &mult,
            None => mult,
        };
        if total.is_zero() {
            self.terms.remove(&deg);
            return;
        }
        let entry = self.terms.entry(deg).or_insert_with(|| Term {
            mult: RatPoly::zero(),
            sources: Vec::new(),
        });
        entry.mult = total;
        if let Some(s) = source {
            entry.sources.push(s);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(deg, term)` in canonical degree order.
    pub fn terms(&self) -> impl Iterator<Item = (&RatPoly, &Term)> {
        self.terms.iter()
    }

    /// Terms as `(mult, deg)` pairs in canonical degree order.
    pub fn pairs(&self) -> impl Iterator<Item = (&RatPoly, &RatPoly)> {
        self.terms.iter().map(|(d, t)| (&t.mult, d))
    }

    pub fn multiplicity(&self, deg: &RatPoly) -> Option<&RatPoly> {
        self.terms.get(deg).map(|t| &t.mult)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    fn same_eps(a: &ZetaSeries, b: &ZetaSeries) -> Result<(), ZetaError> {
        if a.epsilon != b.epsilon {
            return Err(ZetaError::EpsilonMismatch {
                left: a.epsilon,
                right: b.epsilon,
            });
        }
        Ok(())
    }

    pub fn merge(&self, other: &ZetaSeries) -> Result<ZetaSeries, ZetaError> {
        Self::same_eps(self, other)?;
        let mut out = self.clone();
        out.label = format!("{} + {}", self.label, other.label);
        for (deg, t) in &other.terms {
            let mut entry_sources = t.sources.clone();
            out.push(t.mult.clone(), deg.clone(), None);
            if let Some(e) = out.terms.get_mut(deg) {
                e.sources.append(&mut entry_sources);
            }
        }
        Ok(out)
    }

    /// Zeta function of the direct product of the two groups.
    pub fn product(&self, other: &ZetaSeries) -> Result<ZetaSeries, ZetaError> {
        Self::same_eps(self, other)?;
        let mut out = ZetaSeries::empty(format!("{} x {}", self.label, other.label), self.epsilon);
        for (d1, t1) in &self.terms {
            for (d2, t2) in &other.terms {
                out.push(&t1.mult * &t2.mult, d1 * d2, None);
            }
        }
        Ok(out)
    }

    /// Multiplies every degree by `index` (induction from a subgroup of that index).
    pub fn scale_degrees(&self, index: &RatPoly) -> Result<ZetaSeries, ZetaError> {
        if index.is_zero() {
            return Err(ZetaError::ZeroIndex);
        }
        let mut out = ZetaSeries::empty(self.label.clone(), self.epsilon);
        for (d, t) in &self.terms {
            out.push(t.mult.clone(), d * index, None);
            if let Some(e) = out.terms.get_mut(&(d * index)) {
                e.sources.extend(t.sources.iter().cloned());
            }
        }
        Ok(out)
    }

    /// Multiplies every multiplicity by `factor`.
    pub fn scale_multiplicities(&self, factor: &RatPoly) -> ZetaSeries {
        let mut out = ZetaSeries::empty(self.label.clone(), self.epsilon);
        for (d, t) in &self.terms {
            out.push(&t.mult * factor, d.clone(), None);
            if let Some(e) = out.terms.get_mut(d) {
                e.sources.extend(t.sources.iter().cloned());
            }
        }
        out
    }

    /// Tags every term with a provenance string.
    pub fn with_source(mut self, source: &str) -> ZetaSeries {
        for t in self.terms.values_mut() {
            t.sources.push(source.to_string());
        }
        self
    }

    /// `zeta(s)` for `s <= 0`: `sum mult * deg^{-s}`.
    pub fn special_value(&self, s: i32) -> RatPoly {
        assert!(s <= 0, "special values are only defined here for s <= 0");
        let e = (-s) as u32;
        self.terms
            .iter()
            .fold(RatPoly::zero(), |acc, (d, t)| acc + &t.mult * d.pow(e))
    }

    pub fn degree_set(&self) -> BTreeSet<RatPoly> {
        self.terms.keys().cloned().collect()
    }

    /// Degree polynomials with their maximal power of `q` removed.
    pub fn pprime_degree_set(&self) -> BTreeSet<RatPoly> {
        self.terms
            .keys()
            .map(|d| d.strip_q_power().expect("degrees are nonzero").1)
            .collect()
    }

    /// Degrees are positive integers and multiplicities nonnegative integers at
    /// every probe; `zeta(0)` and `zeta(-1)` are positive integers there.
    pub fn check_integrality(&self, probes: &[i64]) -> Result<(), ZetaError> {
        let fail = |what, value: &RatPoly, q: i64, got: String| ZetaError::NotPositiveInteger {
            label: self.label.clone(),
            what,
            value: value.clone(),
            q,
            got,
        };
        let s0 = self.special_value(0);
        let s1 = self.special_value(-1);
        for &q in probes {
            for (d, t) in &self.terms {
                let dv = d.eval_int(q);
                if !dv.is_integer() || !dv.is_positive() {
                    return Err(fail("degree", d, q, dv.to_string()));
                }
                let mv = t.mult.eval_int(q);
                if !mv.is_integer() || mv.is_negative() {
                    return Err(fail("multiplicity", &t.mult, q, mv.to_string()));
                }
            }
            for (what, v) in [("zeta(0)", &s0), ("zeta(-1)", &s1)] {
                let val = v.eval_int(q);
                if !val.is_integer() || !val.is_positive() {
                    return Err(fail(what, v, q, val.to_string()));
                }
            }
        }
        Ok(())
    }

    /// `(mult, deg)` integer pairs at a concrete `q`, dropping zero multiplicities.
    pub fn evaluate_at(&self, q: i64) -> Vec<(BigInt, BigInt)> {
        let mut out: BTreeMap<BigInt, BigInt> = BTreeMap::new();
        for (d, t) in &self.terms {
            let m = t.mult.eval_int(q);
            if m.is_zero() {
                continue;
            }
            *out.entry(d.eval_int(q).to_integer()).or_default() += m.to_integer();
        }
        out.into_iter().map(|(d, m)| (m, d)).collect()
    }

    pub fn to_json(&self) -> ZetaJson {
        ZetaJson {
            label: self.label.clone(),
            epsilon: self.epsilon,
            terms: self
                .terms
                .iter()
                .map(|(d, t)| TermJson {
                    mult: t.mult.clone(),
                    deg: d.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(js: &ZetaJson) -> ZetaSeries {
        ZetaSeries::from_terms(
            js.label.clone(),
            js.epsilon,
            js.terms.iter().map(|t| (t.mult.clone(), t.deg.clone())),
        )
    }
}

/// Wire form of a [`ZetaSeries`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaJson {
    pub label: String,
    pub epsilon: Sign,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub mult: RatPoly,
    pub deg: RatPoly,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyq::poly;
    use proptest::prelude::*;

    fn p(s: &str) -> RatPoly {
        RatPoly::parse(s).unwrap()
    }

    fn z(terms: &[(&str, &str)], eps: Sign) -> ZetaSeries {
        ZetaSeries::from_terms("t", eps, terms.iter().map(|(m, d)| (poly(m, eps), poly(d, eps))))
    }

    #[test]
    fn merge_cases() {
        let a = z(&[("1", "1")], Sign::Plus);
        let m = a.merge(&a).unwrap();
        assert_eq!(m.multiplicity(&RatPoly::one()), Some(&RatPoly::constant(2)));
        assert_eq!(m.len(), 1);

        let b = z(&[("q", "1")], Sign::Plus).merge(&z(&[("q", "q+1")], Sign::Plus)).unwrap();
        assert_eq!(b.len(), 2);

        let e = ZetaSeries::empty("e", Sign::Plus);
        assert_eq!(a.merge(&e).unwrap().to_json().terms, a.to_json().terms);
        assert!(matches!(
            a.merge(&ZetaSeries::trivial(Sign::Minus)),
            Err(ZetaError::EpsilonMismatch { .. })
        ));
    }

    #[test]
    fn product_cases() {
        let ab = z(&[("q-1", "1")], Sign::Plus);
        let sq = ab.product(&ab).unwrap();
        assert_eq!(sq.multiplicity(&RatPoly::one()), Some(&p("(q-1)^2")));
        let t = ab.product(&ZetaSeries::trivial(Sign::Plus)).unwrap();
        assert_eq!(t.to_json().terms, ab.to_json().terms);
        let u = z(&[("q+1", "1")], Sign::Minus);
        assert_eq!(u.product(&u).unwrap().multiplicity(&RatPoly::one()), Some(&p("(q+1)^2")));
    }

    #[test]
    fn scaling() {
        let one = ZetaSeries::trivial(Sign::Plus);
        let s = one.scale_degrees(&p("q^2-1")).unwrap();
        assert_eq!(s.multiplicity(&p("q^2-1")), Some(&RatPoly::one()));
        assert_eq!(one.scale_degrees(&RatPoly::one()).unwrap(), one);
        assert_eq!(one.scale_degrees(&RatPoly::zero()), Err(ZetaError::ZeroIndex));

        let gu1 = ZetaSeries::abelian("GU(1,2)", Sign::Minus, p("q(q+1)"));
        let idx = poly("q(q^4-1)(q^3-e)", Sign::Minus);
        let scaled = gu1.scale_degrees(&idx).unwrap();
        assert_eq!(scaled.multiplicity(&p("q(q^4-1)(q^3+1)")), Some(&p("q(q+1)")));
    }

    #[test]
    fn special_values() {
        let e = ZetaSeries::empty("e", Sign::Plus);
        for s in [0, -1, -2] {
            assert!(e.special_value(s).is_zero());
        }
        // Field table of G_2 transcribed inline; the registry carries the real one.
        let gl2 = z(
            &[("q-e", "1"), ("q-e", "q"), ("1/2(q-e-1)(q-e)", "q+e"), ("1/2(q+e-1)(q-e)", "q-e")],
            Sign::Plus,
        );
        assert_eq!(gl2.special_value(-2), p("q(q-1)(q^2-1)"));
        assert_eq!(gl2.special_value(-2).eval_integer(2), Some(6.into()));
        let gu2 = z(
            &[("q-e", "1"), ("q-e", "q"), ("1/2(q-e-1)(q-e)", "q+e"), ("1/2(q+e-1)(q-e)", "q-e")],
            Sign::Minus,
        );
        assert_eq!(gu2.special_value(0).eval_integer(2), Some(9.into()));
    }

    #[test]
    fn pprime_cores() {
        let s = z(&[("1", "q^3"), ("1", "q^5")], Sign::Plus);
        assert_eq!(s.pprime_degree_set(), BTreeSet::from([RatPoly::one()]));
        assert_eq!(s.degree_set().len(), 2);
    }

    #[test]
    fn zero_multiplicities_vanish() {
        let mut s = z(&[("q", "1")], Sign::Plus);
        s.push(p("-q"), RatPoly::one(), None);
        assert!(s.is_empty());
    }

    #[test]
    fn integrality_check_flags_fractional_values() {
        let bad = z(&[("1/2q", "1")], Sign::Plus);
        assert!(bad.check_integrality(&PROBE_QS).is_err());
        let good = z(&[("1/2q(q-1)", "q+1"), ("1", "1")], Sign::Plus);
        good.check_integrality(&PROBE_QS).unwrap();
    }

    #[test]
    fn json_shape() {
        let s = z(&[("q-1", "1"), ("1", "q")], Sign::Minus).with_label("demo");
        let js = serde_json::to_value(s.to_json()).unwrap();
        assert_eq!(js["epsilon"], -1);
        assert_eq!(js["label"], "demo");
        assert_eq!(js["terms"][0]["deg"], serde_json::json!(["1/1"]));
        let back: ZetaJson = serde_json::from_value(js).unwrap();
        assert_eq!(ZetaSeries::from_json(&back), s);
    }

    fn arb_series() -> impl Strategy<Value = ZetaSeries> {
        prop::collection::vec((0i64..4, 0i64..4, 1i64..4, 0i64..3), 0..5).prop_map(|ts| {
            ZetaSeries::from_terms(
                "r",
                Sign::Plus,
                ts.into_iter()
                    .map(|(m0, m1, d0, d1)| (RatPoly::from_ints(&[m0, m1]), RatPoly::from_ints(&[d0, d1]))),
            )
        })
    }

    proptest! {
        #[test]
        fn algebra_laws(a in arb_series(), b in arb_series(), c in arb_series(), k in 1i64..5) {
            let key = |s: &ZetaSeries| s.to_json().terms;
            prop_assert_eq!(key(&a.product(&b).unwrap()), key(&b.product(&a).unwrap()));
            prop_assert_eq!(key(&a.merge(&b).unwrap()), key(&b.merge(&a).unwrap()));
            prop_assert_eq!(
                key(&a.product(&b).unwrap().product(&c).unwrap()),
                key(&a.product(&b.product(&c).unwrap()).unwrap())
            );
            prop_assert_eq!(
                key(&a.merge(&b).unwrap().merge(&c).unwrap()),
                key(&a.merge(&b.merge(&c).unwrap()).unwrap())
            );
            let idx = RatPoly::from_ints(&[k, 1]);
            prop_assert_eq!(
                key(&a.merge(&b).unwrap().scale_degrees(&idx).unwrap()),
                key(&a.scale_degrees(&idx).unwrap().merge(&b.scale_degrees(&idx).unwrap()).unwrap())
            );
            // zeta(-2) is multiplicative on direct products
            prop_assert_eq!(
                a.product(&b).unwrap().special_value(-2),
                a.special_value(-2) * b.special_value(-2)
            );
        }
    }
}
