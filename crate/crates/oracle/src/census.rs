//! Exhaustive similarity-class censuses of `gl_n(F_q)` and `gu_n(F_q)`.
//!
//! Every matrix of the space is classified; per-worker histograms keyed by
//! the packed class invariant are merged at the end. The number of matrices
//! landing in each class is its orbit size, which is also reported.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use gzeta_core::{enumerate_types, TypeSymbol};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::classify::{ClassKey, Classifier};
use crate::matrix::Mat;
use crate::ring::Ring;
use crate::OracleError;

/// Matrix-space size allowed without the slow flag.
pub const DEFAULT_LIMIT: u128 = 10_000_000;
/// Hard ceiling with the slow flag.
pub const SLOW_LIMIT: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Gl,
    Gu,
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gl" => Ok(Variant::Gl),
            "gu" => Ok(Variant::Gu),
            _ => Err(format!("unknown variant {s:?} (expected gl or gu)")),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CensusOptions {
    pub allow_slow: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeCensus {
    pub t: TypeSymbol,
    pub classes: u64,
    /// Orbit size -> number of classes of this type with that orbit size.
    pub orbit_sizes: BTreeMap<u64, u64>,
}

impl Serialize for TypeCensus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TypeCensus", 2)?;
        st.serialize_field("type", &self.t.to_string())?;
        st.serialize_field("classes", &self.classes)?;
        st.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub n: u32,
    pub q: u64,
    pub variant: Variant,
    /// Every type of size `n`, in canonical order, including empty ones.
    pub per_type: Vec<TypeCensus>,
    pub total: u64,
    /// Anti-hermitian matrices whose characteristic polynomial violated the
    /// coefficient condition (always zero).
    #[serde(skip)]
    pub coefficient_violations: u64,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl CensusReport {
    pub fn classes_of(&self, t: &TypeSymbol) -> u64 {
        self.per_type.iter().find(|c| &c.t == t).map_or(0, |c| c.classes)
    }
}

/// Runs `f` on a pool capped by `ZETA_THREADS` when set.
pub fn with_thread_cap<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    match std::env::var("ZETA_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        Some(k) if k > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("thread pool")
            .install(f),
        _ => f(),
    }
}

fn check_size(what: String, size: u128, opts: CensusOptions) -> Result<(), OracleError> {
    let limit = if opts.allow_slow { SLOW_LIMIT } else { DEFAULT_LIMIT };
    if size > limit {
        return Err(OracleError::TooLarge { what, size, limit });
    }
    Ok(())
}

type Histogram = HashMap<ClassKey, u64>;

fn merge(mut a: Histogram, b: Histogram) -> Histogram {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

fn summarize(
    n: u32,
    q: u64,
    variant: Variant,
    hist: Histogram,
    type_of: impl Fn(ClassKey) -> Result<TypeSymbol, OracleError>,
) -> Result<CensusReport, OracleError> {
    let order = enumerate_types(n);
    let mut by_type: HashMap<TypeSymbol, TypeCensus> = order
        .iter()
        .map(|t| {
            (
                t.clone(),
                TypeCensus {
                    t: t.clone(),
                    classes: 0,
                    orbit_sizes: BTreeMap::new(),
                },
            )
        })
        .collect();
    for (key, count) in hist {
        let t = type_of(key)?;
        let entry = by_type
            .get_mut(&t)
            .ok_or_else(|| OracleError::Inconsistent(format!("invariant maps to unknown type {t}")))?;
        entry.classes += 1;
        *entry.orbit_sizes.entry(count).or_default() += 1;
    }
    let per_type: Vec<TypeCensus> = order.iter().map(|t| by_type.remove(t).expect("listed type")).collect();
    let total = per_type.iter().map(|c| c.classes).sum();
    Ok(CensusReport {
        n,
        q,
        variant,
        per_type,
        total,
        coefficient_violations: 0,
        elapsed_ms: 0,
    })
}

/// Similarity classes of `n x n` matrices over `F_q`.
pub fn census_gl(n: u32, q: u64, opts: CensusOptions) -> Result<CensusReport, OracleError> {
    let start = Instant::now();
    let field = Ring::galois_field(q)?;
    let size = (q as u128).pow(n * n);
    check_size(format!("gl_{n}(F_{q})"), size, opts)?;
    let cls = Classifier::new(field, n as usize);
    let hist = with_thread_cap(|| {
        (0..size as u64)
            .into_par_iter()
            .fold(Histogram::new, |mut h, idx| {
                let a = cls.field.mat_from_index(n as usize, idx);
                *h.entry(cls.key(&a)).or_default() += 1;
                h
            })
            .reduce(Histogram::new, merge)
    });
    let mut report = summarize(n, q, Variant::Gl, hist, |k| Ok(cls.gl_type(k)))?;
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Anti-hermitian matrix number `idx`: diagonal entries from the trace-zero
/// set, strict upper triangle free, lower triangle `a_ji = -conj(a_ij)`.
pub fn anti_hermitian_from_index(f: &Ring, trace_zero: &[u8], n: usize, mut idx: u64) -> Mat {
    let s = f.size() as u64;
    let t = trace_zero.len() as u64;
    let mut m = Mat::zero(n);
    for i in 0..n {
        m.set(i, i, trace_zero[(idx % t) as usize]);
        idx /= t;
    }
    for i in 0..n {
        for j in i + 1..n {
            let v = (idx % s) as u8;
            idx /= s;
            m.set(i, j, v);
            m.set(j, i, f.neg(f.conj(v)));
        }
    }
    m
}

/// `conj(c_i) = (-1)^{n-i} c_i` for the characteristic polynomial
/// `sum c_i t^i` of an anti-hermitian matrix.
pub fn coefficient_condition(f: &Ring, chi: &[u8]) -> bool {
    let n = chi.len() - 1;
    chi.iter().enumerate().all(|(i, &c)| {
        let want = if (n - i) % 2 == 0 { c } else { f.neg(c) };
        f.conj(c) == want
    })
}

/// Similarity classes of `gu_n(F_q)`, realised as anti-hermitian matrices
/// over `F_{q^2}`; a `GU`-class is one `GL`-class of `F_{q^2}`-matrices.
pub fn census_gu(n: u32, q: u64, opts: CensusOptions) -> Result<CensusReport, OracleError> {
    let start = Instant::now();
    let field = Ring::galois_field(q * q)?;
    let size = (q as u128).pow(n * n);
    check_size(format!("gu_{n}(F_{q})"), size, opts)?;
    let trace_zero = field.trace_zero();
    debug_assert_eq!(trace_zero.len() as u64, q);
    let cls = Classifier::new(field, n as usize);
    let (hist, violations) = with_thread_cap(|| {
        (0..size as u64)
            .into_par_iter()
            .fold(
                || (Histogram::new(), 0u64),
                |(mut h, mut bad), idx| {
                    let a = anti_hermitian_from_index(&cls.field, &trace_zero, n as usize, idx);
                    let (chi, key) = cls.key_with_char_poly(&a);
                    if !coefficient_condition(&cls.field, &chi) {
                        bad += 1;
                    }
                    *h.entry(key).or_default() += 1;
                    (h, bad)
                },
            )
            .reduce(|| (Histogram::new(), 0), |(a, x), (b, y)| (merge(a, b), x + y))
    });
    if violations > 0 {
        return Err(OracleError::Inconsistent(format!(
            "{violations} anti-hermitian matrices violate the coefficient condition"
        )));
    }
    let mut report = summarize(n, q, Variant::Gu, hist, |k| cls.gu_type(k))?;
    report.coefficient_violations = violations;
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn census(variant: Variant, n: u32, q: u64, opts: CensusOptions) -> Result<CensusReport, OracleError> {
    match variant {
        Variant::Gl => census_gl(n, q, opts),
        Variant::Gu => census_gu(n, q, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gzeta_core::{class_count, index_of, Sign};

    fn check_against_symbolic(r: &CensusReport) {
        let eps = match r.variant {
            Variant::Gl => Sign::Plus,
            Variant::Gu => Sign::Minus,
        };
        for c in &r.per_type {
            let expect = class_count(&c.t, eps).eval_integer(r.q as i64).unwrap();
            assert_eq!(c.classes.to_string(), expect.to_string(), "{:?} {} q={}", r.variant, c.t, r.q);
            let idx = index_of(&c.t, eps).unwrap().eval_integer(r.q as i64).unwrap();
            for size in c.orbit_sizes.keys() {
                assert_eq!(size.to_string(), idx.to_string(), "orbit size of {}", c.t);
            }
        }
    }

    #[test]
    fn gl_2_2() {
        let r = census_gl(2, 2, CensusOptions::default()).unwrap();
        assert_eq!(r.total, 6);
        let counts: Vec<u64> = r.per_type.iter().map(|c| c.classes).collect();
        assert_eq!(r.per_type.len(), 4);
        assert_eq!(counts.iter().sum::<u64>(), 6);
        check_against_symbolic(&r);
    }

    #[test]
    fn gl_3_2() {
        let r = census_gl(3, 2, CensusOptions::default()).unwrap();
        assert_eq!(r.classes_of(&"1:(1) + 1:(1) + 1:(1)".parse().unwrap()), 0);
        check_against_symbolic(&r);
    }

    #[test]
    fn gu_small() {
        let r = census_gu(2, 2, CensusOptions::default()).unwrap();
        assert_eq!(r.total, 6);
        check_against_symbolic(&r);
        check_against_symbolic(&census_gu(3, 2, CensusOptions::default()).unwrap());
    }

    #[test]
    fn too_large_without_slow_flag() {
        assert!(matches!(
            census_gl(4, 3, CensusOptions::default()),
            Err(OracleError::TooLarge { .. })
        ));
    }

    #[test]
    fn json_shape() {
        let r = census_gl(2, 2, CensusOptions::default()).unwrap();
        let js = serde_json::to_value(&r).unwrap();
        assert_eq!(js["variant"], "gl");
        assert_eq!(js["per_type"][0]["type"], "2:(1)");
        assert!(js.get("elapsed_ms").is_none());
    }
}
