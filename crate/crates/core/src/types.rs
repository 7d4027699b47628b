//! Partitions, similarity-class types and class counts.
//!
//! A similarity class of `n x n` matrices over a finite field is described by
//! its characteristic polynomial's irreducible factors together with one
//! partition per factor. Forgetting which irreducibles occur and keeping only
//! their degrees gives the *type*: a multiset of `(degree, partition)` slots
//! whose weights `degree * |partition|` sum to `n`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::polyq::{RatPoly, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("partition parts must be positive and weakly decreasing: {0:?}")]
    BadPartition(Vec<u32>),
    #[error("cannot parse type symbol {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, TypeError> {
        if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(TypeError::BadPartition(parts));
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self, TypeError> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(1, 1, ..., 1)`.
    pub fn is_column(&self) -> bool {
        self.0.iter().all(|&p| p == 1)
    }

    /// A single part.
    pub fn is_row(&self) -> bool {
        self.0.len() == 1
    }

    /// All partitions of `k`, largest first in lexicographic order.
    pub fn all(k: u32) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if k > 0 {
            rec(k, k, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One slot of a type: an irreducible of degree `d` carrying partition `nu`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slot {
    pub d: u32,
    pub nu: Partition,
}

impl Slot {
    pub fn new(d: u32, parts: &[u32]) -> Self {
        Slot {
            d,
            nu: Partition::new(parts.to_vec()).expect("valid partition literal"),
        }
    }

    pub fn weight(&self) -> u32 {
        self.d * self.nu.size()
    }
}

impl Ord for Slot {
    fn cmp(&self, other: &Self) -> Ordering {
        self.d.cmp(&other.d).then_with(|| self.nu.cmp(&other.nu))
    }
}

impl PartialOrd for Slot {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Green's type of a similarity class. Slots are kept sorted by `(d, nu)`
/// descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeSymbol {
    slots: Vec<Slot>,
}

impl TypeSymbol {
    pub fn new(mut slots: Vec<Slot>) -> Self {
        slots.sort_by(|a, b| b.cmp(a));
        TypeSymbol { slots }
    }

    /// Shorthand: `TypeSymbol::of(&[(1, &[2, 1]), (1, &[1])])`.
    pub fn of(slots: &[(u32, &[u32])]) -> Self {
        Self::new(slots.iter().map(|(d, p)| Slot::new(*d, p)).collect())
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// `sum d * |nu|`.
    pub fn size(&self) -> u32 {
        self.slots.iter().map(Slot::weight).sum()
    }

    /// JSON form: `[[d, [parts]], ...]`.
    pub fn to_json_slots(&self) -> Vec<(u32, Vec<u32>)> {
        self.slots.iter().map(|s| (s.d, s.nu.0.clone())).collect()
    }
}

impl fmt::Display for TypeSymbol {
    /// Groups slots by degree, ascending, e.g. `1:(2,1) + 1:(1) ; 2:(1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut by_d: BTreeMap<u32, Vec<&Partition>> = BTreeMap::new();
        for s in &self.slots {
            by_d.entry(s.d).or_default().push(&s.nu);
        }
        let groups: Vec<String> = by_d
            .iter()
            .map(|(d, nus)| {
                nus.iter()
                    .map(|nu| format!("{d}:{nu}"))
                    .collect::<Vec<_>>()
                    .join(" + ")
            })
            .collect();
        write!(f, "{}", groups.join(" ; "))
    }
}

impl FromStr for TypeSymbol {
    type Err = TypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| TypeError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut slots = Vec::new();
        for item in s.split([';', '+']) {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (d, nu) = item.split_once(':').ok_or_else(|| bad("missing ':'"))?;
            let d: u32 = d.trim().parse().map_err(|_| bad("bad degree"))?;
            let nu = nu.trim();
            let inner = nu
                .strip_prefix('(')
                .and_then(|x| x.strip_suffix(')'))
                .ok_or_else(|| bad("partition must be parenthesised"))?;
            let parts = inner
                .split(',')
                .map(|x| x.trim().parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| bad("bad part"))?;
            if d == 0 {
                return Err(bad("degree must be positive"));
            }
            slots.push(Slot {
                d,
                nu: Partition::new(parts).map_err(|e| bad(&e.to_string()))?,
            });
        }
        if slots.is_empty() {
            return Err(bad("empty type"));
        }
        Ok(TypeSymbol::new(slots))
    }
}

impl Serialize for TypeSymbol {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_slots().serialize(s)
    }
}

impl<'de> Deserialize<'de> for TypeSymbol {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<(u32, Vec<u32>)>::deserialize(d)?;
        let slots = raw
            .into_iter()
            .map(|(d, parts)| {
                Partition::new(parts)
                    .map(|nu| Slot { d, nu })
                    .map_err(serde::de::Error::custom)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TypeSymbol::new(slots))
    }
}

/// Every type of size `n`, duplicate-free, in canonical (descending) order.
pub fn enumerate_types(n: u32) -> Vec<TypeSymbol> {
    // candidate slot kinds, descending so multisets come out as non-increasing sequences
    let mut kinds: Vec<Slot> = (1..=n)
        .flat_map(|d| {
            (1..=n / d).flat_map(move |k| Partition::all(k).into_iter().map(move |nu| Slot { d, nu }))
        })
        .collect();
    kinds.sort_by(|a, b| b.cmp(a));

    fn rec(kinds: &[Slot], start: usize, rest: u32, cur: &mut Vec<Slot>, out: &mut Vec<TypeSymbol>) {
        if rest == 0 {
            out.push(TypeSymbol::new(cur.clone()));
            return;
        }
        for i in start..kinds.len() {
            let w = kinds[i].weight();
            if w <= rest {
                cur.push(kinds[i].clone());
                rec(kinds, i, rest - w, cur, out);
                cur.pop();
            }
        }
    }

    let mut out = Vec::new();
    rec(&kinds, 0, n, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn mobius(n: u32) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducible polynomials of degree `d` over `F_q`:
/// `(1/d) * sum_{e | d} mu(e) q^{d/e}`.
pub fn necklace_count(d: u32) -> RatPoly {
    assert!(d >= 1, "degree must be positive");
    let mut acc = RatPoly::zero();
    for e in (1..=d).filter(|e| d % e == 0) {
        let mu = mobius(e);
        if mu != 0 {
            acc = acc + RatPoly::q_pow((d / e) as usize).scale(&BigRational::from_integer(BigInt::from(mu)));
        }
    }
    acc.scale(&BigRational::new(1.into(), BigInt::from(d)))
}

/// Number of similarity classes of type `t` (identical for both signs).
///
/// For each degree `d` with `k` slots, labels are chosen without repetition
/// from the `N_d(q)` available irreducibles; slots with identical partitions
/// are interchangeable.
pub fn class_count(t: &TypeSymbol, _eps: Sign) -> RatPoly {
    let mut by_d: BTreeMap<u32, BTreeMap<&Partition, u32>> = BTreeMap::new();
    for s in t.slots() {
        *by_d.entry(s.d).or_default().entry(&s.nu).or_default() += 1;
    }
    let mut acc = RatPoly::one();
    for (d, groups) in by_d {
        let labels = necklace_count(d);
        let k: u32 = groups.values().sum();
        for i in 0..k {
            acc = acc * (&labels - &RatPoly::constant(i as i64));
        }
        let sym: u64 = groups.values().map(|&m| (1..=m as u64).product::<u64>()).product();
        acc = acc.scale(&BigRational::new(1.into(), BigInt::from(sym)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyq::poly;

    fn p(s: &str) -> RatPoly {
        RatPoly::parse(s).unwrap()
    }

    #[test]
    fn partitions() {
        assert_eq!(Partition::all(4).len(), 5);
        assert_eq!(Partition::all(0).len(), 0);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![]).is_err());
        assert_eq!(Partition::from_unsorted(vec![1, 3, 2]).unwrap().parts(), &[3, 2, 1]);
    }

    /// Counts multisets of slots with total weight n through the generating
    /// function prod_w (1 - x^w)^{-c_w}, where c_w = sum_{d | w} p(w/d).
    fn generating_function_count(n: usize) -> u64 {
        let p = |k: usize| Partition::all(k as u32).len() as u64;
        let mut series = vec![0u64; n + 1];
        series[0] = 1;
        for w in 1..=n {
            let kinds: u64 = (1..=w).filter(|d| w % d == 0).map(|d| p(w / d)).sum();
            for _ in 0..kinds {
                for i in w..=n {
                    series[i] += series[i - w];
                }
            }
        }
        series[n]
    }

    #[test]
    fn type_counts() {
        assert_eq!(enumerate_types(2).len(), 4);
        assert_eq!(enumerate_types(3).len(), 8);
        assert_eq!(enumerate_types(4).len(), 22);
        for n in 1..=7 {
            assert_eq!(enumerate_types(n).len() as u64, generating_function_count(n as usize), "n={n}");
        }
    }

    #[test]
    fn types_are_valid_and_distinct() {
        for n in 1..=5 {
            let ts = enumerate_types(n);
            for t in &ts {
                assert_eq!(t.size(), n);
            }
            let mut dedup = ts.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), ts.len());
        }
    }

    #[test]
    fn necklaces() {
        assert_eq!(necklace_count(1), p("q"));
        assert_eq!(necklace_count(2), p("1/2q^2-1/2q"));
        assert_eq!(necklace_count(2).eval_integer(2), Some(1.into()));
        assert_eq!(necklace_count(3), p("1/3q(q^2-1)"));
        assert_eq!(necklace_count(4), p("1/4q^2(q^2-1)"));
        assert_eq!(necklace_count(6), p("1/6(q^6-q^3-q^2+q)"));
    }

    /// Brute-force count of monic irreducibles over a prime field.
    fn brute_irreducibles(pr: u64, d: u32) -> u64 {
        let total = pr.pow(d);
        let mut reducible = std::collections::HashSet::new();
        // multiply all pairs of monic polys of degrees a + b = d
        let monic = |deg: u32, idx: u64| -> Vec<u64> {
            let mut c: Vec<u64> = (0..deg).map(|i| (idx / pr.pow(i)) % pr).collect();
            c.push(1);
            c
        };
        for a in 1..d {
            let b = d - a;
            for i in 0..pr.pow(a) {
                for j in 0..pr.pow(b) {
                    let (x, y) = (monic(a, i), monic(b, j));
                    let mut prod = vec![0u64; (d + 1) as usize];
                    for (s, xs) in x.iter().enumerate() {
                        for (t, yt) in y.iter().enumerate() {
                            prod[s + t] = (prod[s + t] + xs * yt) % pr;
                        }
                    }
                    reducible.insert(prod);
                }
            }
        }
        total - reducible.len() as u64
    }

    #[test]
    fn necklaces_match_brute_force() {
        for (pr, d) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
            assert_eq!(
                necklace_count(d).eval_integer(pr as i64).unwrap(),
                brute_irreducibles(pr, d).into(),
                "p={pr} d={d}"
            );
        }
    }

    #[test]
    fn class_counts_from_table() {
        let e = Sign::Plus;
        assert_eq!(class_count(&TypeSymbol::of(&[(1, &[1, 1, 1, 1])]), e), p("q"));
        let four = TypeSymbol::of(&[(1, &[1]), (1, &[1]), (1, &[1]), (1, &[1])]);
        assert_eq!(class_count(&four, e), poly("1/24q(q-1)(q-2)(q-3)", e));
        let quads = TypeSymbol::of(&[(2, &[1]), (2, &[1])]);
        assert_eq!(class_count(&quads, e), poly("1/8q(q-1)(q^2-q-2)", e));
        let mixed = TypeSymbol::of(&[(1, &[1, 1]), (1, &[1]), (1, &[1])]);
        assert_eq!(class_count(&mixed, Sign::Minus), poly("1/2q(q-1)(q-2)", e));
    }

    #[test]
    fn class_counts_are_integer_valued() {
        for n in 1..=4 {
            for t in enumerate_types(n) {
                let c = class_count(&t, Sign::Plus);
                for q in crate::zeta::PROBE_QS {
                    let v = c.eval_int(q);
                    assert!(v.is_integer() && v >= BigRational::from_integer(0.into()), "{t} at {q}");
                }
            }
        }
    }

    #[test]
    fn total_classes_in_gl2() {
        // gl_2(F_q) has q^2 + q similarity classes
        let total = enumerate_types(2)
            .iter()
            .fold(RatPoly::zero(), |acc, t| acc + class_count(t, Sign::Plus));
        assert_eq!(total, p("q^2+q"));
    }

    #[test]
    fn text_form() {
        let t = TypeSymbol::of(&[(1, &[2, 1]), (1, &[1]), (2, &[1])]);
        assert_eq!(t.to_string(), "1:(2,1) + 1:(1) ; 2:(1)");
        assert_eq!("1:(2,1) + 1:(1) ; 2:(1)".parse::<TypeSymbol>().unwrap(), t);
        assert!("1:(1,2)".parse::<TypeSymbol>().is_err());
        assert!("".parse::<TypeSymbol>().is_err());
        assert!("0:(1)".parse::<TypeSymbol>().is_err());
        let js = serde_json::to_string(&t).unwrap();
        assert_eq!(js, "[[2,[1]],[1,[2,1]],[1,[1]]]");
        assert_eq!(serde_json::from_str::<TypeSymbol>(&js).unwrap(), t);
    }
}
