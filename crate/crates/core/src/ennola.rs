//! Ennola duality between `GL` and `GU` character degrees, p'-degree sets,
//! symmetric-matrix counts and the sum-of-degrees identities at level 2.

use std::collections::BTreeSet;

use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::assembler::zeta_at_level;
use crate::polyq::{RatPoly, Sign};
use crate::registry::RegistryError;
use crate::zeta::ZetaSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnnolaError {
    #[error("no symmetric-count formula for n={n}, l={l}, eps={eps}")]
    UnsupportedCase { n: u32, l: u32, eps: Sign },
    #[error("p'-core {core} of degree {deg} has constant term other than ±1")]
    CoreNotUnit { deg: RatPoly, core: RatPoly },
    #[error(transparent)]
    Registry(#[from] RegistryError),
}

/// Degree cores with the `q`-power stripped; each core must have constant
/// term `±1` so that its value at any `q = p^k` is prime to `p`.
pub fn pprime_cores(z: &ZetaSeries) -> Result<BTreeSet<RatPoly>, EnnolaError> {
    let mut out = BTreeSet::new();
    for deg in z.degree_set() {
        let (_, core) = deg.strip_q_power().expect("degrees are nonzero");
        if !core.coeff(0).abs().is_one() {
            return Err(EnnolaError::CoreNotUnit { deg, core });
        }
        out.insert(core);
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct DualityReport {
    pub n: u32,
    pub l: u32,
    pub gl_cores: BTreeSet<RatPoly>,
    pub gu_cores: BTreeSet<RatPoly>,
    /// `(g, (-1)^{deg g} g(-q))`.
    pub matched_pairs: Vec<(RatPoly, RatPoly)>,
    /// Cores with no partner, tagged by family.
    pub unmatched: Vec<(String, RatPoly)>,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.unmatched.is_empty()
    }
}

pub fn duality_of(n: u32, l: u32, gl: &ZetaSeries, gu: &ZetaSeries) -> Result<DualityReport, EnnolaError> {
    let gl_cores = pprime_cores(gl)?;
    let gu_cores = pprime_cores(gu)?;
    let mut matched_pairs = Vec::new();
    let mut unmatched = Vec::new();
    let mut hit = BTreeSet::new();
    for g in &gl_cores {
        let dual = g.ennola_transform().expect("cores are nonzero");
        if gu_cores.contains(&dual) {
            hit.insert(dual.clone());
            matched_pairs.push((g.clone(), dual));
        } else {
            unmatched.push(("GL".to_string(), g.clone()));
        }
    }
    for h in gu_cores.difference(&hit) {
        unmatched.push(("GU".to_string(), h.clone()));
    }
    Ok(DualityReport {
        n,
        l,
        gl_cores,
        gu_cores,
        matched_pairs,
        unmatched,
    })
}

pub fn check_duality(n: u32, l: u32) -> Result<DualityReport, EnnolaError> {
    let gl = zeta_at_level(n, l, Sign::Plus)?;
    let gu = zeta_at_level(n, l, Sign::Minus)?;
    duality_of(n, l, &gl, &gu)
}

/// p'-degrees of `G^ε_4(o_1)` as printed, in `q` and `e`.
pub const PRINTED_CORES_L1: &[&str] = &[
    "1",
    "q^2+1",
    "q^2+e*q+1",
    "(q+e)^2(q^2+1)",
    "(q+e)^2(q^2+1)(q^2+e*q+1)",
    "(q^2+e*q+1)(q^4-1)",
    "(q^2-1)(q^4-1)",
    "(q^2+1)(q^2+e*q+1)",
    "(q+e)(q^3+e)",
    "(q^2+1)(q^3-e)",
    "(q-e)(q^2+1)(q^3-e)",
    "(q-e)(q^2-1)(q^3-e)",
    "(q-e)(q^3-e)",
];

/// The additional p'-degrees of `G^ε_4(o_2)` as printed.
pub const PRINTED_CORES_L2_EXTRA: &[&str] = &[
    "(q+e)(q^2+1)",
    "(q^3-e)(q^4-1)",
    "(q+e)(q^3-e)(q^4-1)",
    "(q-e)(q^3-e)(q^4-1)",
    "(q^2-1)(q^3-e)(q^4-1)",
    "(q+e)(q^2+e*q+1)(q^4-1)",
    "(q^3+e*q^2+q+e)^2",
];

/// Stated sizes of the two printed lists.
pub const PRINTED_SIZES: [(u32, usize); 2] = [(1, 13), (2, 20)];

#[derive(Debug, Clone, Serialize)]
pub struct CorpCase {
    pub eps: Sign,
    pub l: u32,
    pub expected_size: usize,
    pub computed: BTreeSet<RatPoly>,
    pub printed: BTreeSet<RatPoly>,
    /// Printed but not computed.
    pub missing: Vec<RatPoly>,
    /// Computed but not printed.
    pub extra: Vec<RatPoly>,
}

impl CorpCase {
    pub fn size_ok(&self) -> bool {
        self.computed.len() == self.expected_size
    }

    pub fn lists_agree(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }

    pub fn holds(&self) -> bool {
        self.size_ok() && self.lists_agree()
    }
}

pub fn printed_cores(l: u32, eps: Sign) -> BTreeSet<RatPoly> {
    let mut src: Vec<&str> = PRINTED_CORES_L1.to_vec();
    if l >= 2 {
        src.extend_from_slice(PRINTED_CORES_L2_EXTRA);
    }
    src.iter()
        .map(|s| RatPoly::parse_with_eps(s, eps).expect("printed core parses"))
        .collect()
}

/// Compares computed p'-degree sets of `G^ε_4(o_l)`, `l = 1, 2`, with the
/// printed lists.
pub fn corollary_corp_fixture_check() -> Result<Vec<CorpCase>, EnnolaError> {
    let mut out = Vec::new();
    for eps in Sign::BOTH {
        for (l, expected_size) in PRINTED_SIZES {
            let computed = pprime_cores(&zeta_at_level(4, l, eps)?)?;
            let printed = printed_cores(l, eps);
            out.push(CorpCase {
                eps,
                l,
                expected_size,
                missing: printed.difference(&computed).cloned().collect(),
                extra: computed.difference(&printed).cloned().collect(),
                computed,
                printed,
            });
        }
    }
    Ok(out)
}

/// Number of symmetric matrices in `G^ε_n(o_l)`, for the cases with a closed
/// formula:
/// `n = 3, ε = -1`: `(1 + q^{-1})(1 + q^{-3}) q^{6l}`;
/// `n = 4, l = 2`: `(1 - ε q^{-1})(1 - ε q^{-3}) q^{20}`.
pub fn sym_count_poly(n: u32, l: u32, eps: Sign) -> Result<RatPoly, EnnolaError> {
    let e = RatPoly::constant(eps.value());
    let base = (RatPoly::q() - &e) * (RatPoly::q_pow(3) - &e);
    match (n, l, eps) {
        (3, l, Sign::Minus) if l >= 1 => Ok(RatPoly::q_pow((6 * l - 4) as usize) * base),
        (4, 2, _) => Ok(RatPoly::q_pow(16) * base),
        _ => Err(EnnolaError::UnsupportedCase { n, l, eps }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
}

impl Status {
    pub fn of(ok: bool) -> Self {
        if ok {
            Status::Holds
        } else {
            Status::Fails
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
}

impl IdentityCheck {
    pub fn poly(name: impl Into<String>, lhs: &RatPoly, rhs: &RatPoly) -> Self {
        IdentityCheck {
            name: name.into(),
            status: Status::of(lhs == rhs),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }
}

/// Closed forms for `G^ε_4(o_2)`: `ζ(-1)`, `ζ(-1) - sym` and the numerator
/// `N` with `ζ(-1) / sym = N / q^k`.
struct SumOfDegrees {
    value: &'static str,
    difference: &'static str,
    numerator: &'static str,
    denominator_power: usize,
}

fn closed_forms(eps: Sign) -> SumOfDegrees {
    match eps {
        Sign::Minus => SumOfDegrees {
            value: "q^2(q^2-q+1)(q^14+q^7-2q^6-q^5+2q^4-q^3+2q^2+q-2)(q+1)^2",
            difference: "q^2(q-2)(q^2+1)(q^2-q+1)(q-1)^2(q+1)^4",
            numerator: "q^14+q^7-2q^6-q^5+2q^4-q^3+2q^2+q-2",
            denominator_power: 14,
        },
        Sign::Plus => SumOfDegrees {
            value: "q(q^2+q+1)(q^15+2q^10-2q^8+2q^6-2q^4-4q^2+4)(q-1)^2",
            difference: "2q(q^2+q+1)(q^4+2)(q^2+1)(q+1)^2(q-1)^4",
            numerator: "q^15+2q^10-2q^8+2q^6-2q^4-4q^2+4",
            denominator_power: 15,
        },
    }
}

/// Value, difference, cross-multiplied quotient and limit identities for the
/// sum of character degrees of `G^ε_4(o_2)`.
pub fn corollary_cormain_check() -> Result<Vec<IdentityCheck>, EnnolaError> {
    let mut out = Vec::new();
    for eps in [Sign::Minus, Sign::Plus] {
        let fam = eps.family();
        let cf = closed_forms(eps);
        let p = |s: &str| RatPoly::parse_with_eps(s, eps).expect("closed form parses");
        let z = zeta_at_level(4, 2, eps)?.special_value(-1);
        let sym = sym_count_poly(4, 2, eps)?;
        out.push(IdentityCheck::poly(format!("{fam}(4,2) zeta(-1)"), &z, &p(cf.value)));
        let diff = &z - &sym;
        out.push(IdentityCheck::poly(format!("{fam}(4,2) zeta(-1) - sym"), &diff, &p(cf.difference)));
        out.push(IdentityCheck::poly(
            format!("{fam}(4,2) zeta(-1) * q^{} = sym * N", cf.denominator_power),
            &(&z * &RatPoly::q_pow(cf.denominator_power)),
            &(&sym * &p(cf.numerator)),
        ));
        let (dd, ds) = (diff.degree().unwrap_or(0), sym.degree().unwrap_or(0));
        out.push(IdentityCheck {
            name: format!("{fam}(4,2) deg(zeta(-1) - sym) < deg(sym)"),
            status: Status::of(diff.is_zero() || dd < ds),
            lhs: dd.to_string(),
            rhs: ds.to_string(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyq::poly;

    #[test]
    fn duality_small() {
        let r = check_duality(2, 1).unwrap();
        assert!(r.holds());
        let expect: BTreeSet<RatPoly> = ["1", "q+1", "q-1"].iter().map(|s| RatPoly::parse(s).unwrap()).collect();
        assert_eq!(r.gl_cores, expect);
        assert_eq!(r.gu_cores, expect);
        assert_eq!(r.matched_pairs.len(), 3);
    }

    #[test]
    fn duality_everywhere_in_range() {
        for n in 2..=4 {
            for l in 1..=2 {
                let r = check_duality(n, l).unwrap();
                assert!(r.holds(), "n={n} l={l}: {:?}", r.unmatched);
            }
        }
    }

    #[test]
    fn duality_detects_breakage() {
        let gl = ZetaSeries::from_terms("x", Sign::Plus, [(RatPoly::one(), poly("q^2+q+1", Sign::Plus))]);
        let gu = ZetaSeries::from_terms("y", Sign::Minus, [(RatPoly::one(), poly("q^2+q+1", Sign::Plus))]);
        let r = duality_of(1, 1, &gl, &gu).unwrap();
        assert!(!r.holds());
        assert_eq!(r.unmatched.len(), 2);
    }

    #[test]
    fn cores_must_be_units() {
        let z = ZetaSeries::from_terms("x", Sign::Plus, [(RatPoly::one(), poly("q(q+2)", Sign::Plus))]);
        assert!(matches!(pprime_cores(&z), Err(EnnolaError::CoreNotUnit { .. })));
    }

    #[test]
    fn printed_lists() {
        for eps in Sign::BOTH {
            assert_eq!(printed_cores(1, eps).len(), 13);
            assert_eq!(printed_cores(2, eps).len(), 20);
        }
        let l2 = printed_cores(2, Sign::Plus);
        assert!(l2.contains(&poly("(q^3-1)(q^4-1)", Sign::Plus)));
        assert!(printed_cores(2, Sign::Minus).contains(&poly("(q^3-q^2+q-1)^2", Sign::Minus)));
    }

    #[test]
    fn computed_core_sets() {
        // the computed sets; see the decisions log for their relation to the printed lists
        for case in corollary_corp_fixture_check().unwrap() {
            let size = if case.l == 1 { 14 } else { 19 };
            assert_eq!(case.computed.len(), size, "eps={} l={}", case.eps, case.l);
            let e = case.eps;
            assert!(case.computed.contains(&poly("(q^2+1)(q^3-e)", e)));
            if case.l == 2 {
                assert!(case.computed.contains(&poly("(q^3-e)(q^4-1)", e)));
            }
        }
    }

    #[test]
    fn sym_counts() {
        let m = Sign::Minus;
        let s = sym_count_poly(3, 1, m).unwrap();
        assert_eq!(s, poly("q^6+q^5+q^3+q^2", m));
        assert_eq!(s.eval_integer(2), Some(108.into()));
        assert_eq!(s.eval_integer(3), Some(1008.into()));
        assert_eq!(sym_count_poly(4, 2, Sign::Plus).unwrap(), poly("q^16(q-1)(q^3-1)", Sign::Plus));
        assert_eq!(sym_count_poly(4, 2, m).unwrap(), poly("q^16(q+1)(q^3+1)", m));
        assert!(sym_count_poly(3, 1, Sign::Plus).is_err());
        assert!(sym_count_poly(4, 1, m).is_err());
    }

    #[test]
    fn cormain() {
        let checks = corollary_cormain_check().unwrap();
        assert_eq!(checks.len(), 8);
        for c in &checks {
            assert!(c.holds(), "{}: {} vs {}", c.name, c.lhs, c.rhs);
        }
        let js = serde_json::to_value(&checks[0]).unwrap();
        assert_eq!(js["status"], "holds");
    }
}
