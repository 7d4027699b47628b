//! Catalogue of the finite groups that occur as centralizers, with their
//! orders and character-degree data.
//!
//! Field-level tables are stored as formula strings in `q` and `e` (the sign
//! `ε`) and parsed per sign; extension fields are handled by substituting
//! `q -> q^d`, `ε -> ε^d`.

use std::fmt;

use thiserror::Error;

use crate::polyq::{PolyError, RatPoly, Sign};
use crate::zeta::{ZetaError, ZetaSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("unsupported group spec: {0}")]
    UnsupportedSpec(String),
    #[error("no centralizer rule for slot {slot}")]
    UnknownSlotShape { slot: String },
    #[error("index of {context} is not a polynomial: {source}")]
    NotDivisible { context: String, source: PolyError },
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Symbolic name of a finite group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    /// `G^{ε^ext}_n` over the length-`l` ring with residue field `F_{q^ext}`.
    Linear { n: u32, l: u32, eps: Sign, ext: u32 },
    /// `G^ε_(l,1) = H ⋊ D_l`.
    FamilyL1 { l: u32, eps: Sign },
    /// `G^ε_(2,1,1) = E ⋊ M`.
    Family211 { eps: Sign },
    AbelianOfOrder(RatPoly),
    Product(Vec<GroupSpec>),
}

impl GroupSpec {
    pub fn linear(n: u32, l: u32, eps: Sign, ext: u32) -> Self {
        GroupSpec::Linear { n, l, eps, ext }
    }

    /// Flattens nested products and drops trivial factors.
    pub fn product(factors: Vec<GroupSpec>) -> Self {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                GroupSpec::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            GroupSpec::Product(flat)
        }
    }

    /// Factors of a product, or the group itself.
    pub fn factors(&self) -> Vec<&GroupSpec> {
        match self {
            GroupSpec::Product(fs) => fs.iter().collect(),
            other => vec![other],
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Linear { n, l, eps, ext } => {
                write!(f, "{}({n},{l})@q^{ext}", eps.pow(*ext).family())
            }
            GroupSpec::FamilyL1 { l, .. } => write!(f, "L1({l})"),
            GroupSpec::Family211 { .. } => write!(f, "G211"),
            GroupSpec::AbelianOfOrder(o) => write!(f, "Ab({o})"),
            GroupSpec::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|g| g.to_string()).collect();
                write!(f, "{}", parts.join(" x "))
            }
        }
    }
}

/// Supplies the zeta function of `G^ε_n(o_2)` for specs that need the
/// level-2 assembly.
pub trait LevelTwoHook {
    fn level_two(&self, n: u32, eps: Sign) -> Result<ZetaSeries, RegistryError>;
}

/// A hook that refuses; enough for every group except `GL/GU(2,2)`.
pub struct NoHook;

impl LevelTwoHook for NoHook {
    fn level_two(&self, n: u32, eps: Sign) -> Result<ZetaSeries, RegistryError> {
        Err(RegistryError::UnsupportedSpec(format!(
            "{}({n},2) needs the level-2 assembler",
            eps.family()
        )))
    }
}

/// `(mult, deg)` formulas for the irreducible characters of `G^ε_2(F_q)`.
pub const FIELD_TABLE_2: &[(&str, &str)] = &[
    ("q-e", "1"),
    ("q-e", "q"),
    ("1/2(q-e-1)(q-e)", "q+e"),
    ("1/2(q+e-1)(q-e)", "q-e"),
];

pub const FIELD_TABLE_3: &[(&str, &str)] = &[
    ("q-e", "1"),
    ("q-e", "q(q+e)"),
    ("q-e", "q^3"),
    ("(q-e-1)(q-e)", "q^2+e*q+1"),
    ("(q-e-1)(q-e)", "q(q^2+e*q+1)"),
    ("1/6(q-e-2)(q-e-1)(q-e)", "(q+e)(q^2+e*q+1)"),
    ("1/2(q+e-1)(q-e)^2", "q^3-e"),
    ("1/3q(q^2-1)", "(q^2-1)(q-e)"),
];

/// Rows 6 and 8 carry the corrected degrees; see [`FIELD_TABLE_4_PRINTED`].
pub const FIELD_TABLE_4: &[(&str, &str)] = &[
    ("q-e", "1"),
    ("q-e", "q(q^2+e*q+1)"),
    ("q-e", "q^2(q^2+1)"),
    ("q-e", "q^3(q^2+e*q+1)"),
    ("q-e", "q^6"),
    ("(q-e-1)(q-e)", "(q+e)(q^2+1)"),
    ("(q-e-1)(q-e)", "q(q^2+1)(q+e)^2"),
    ("(q-e-1)(q-e)", "q^3(q+e)(q^2+1)"),
    ("1/2(q-e-1)(q-e)", "(q^2+1)(q^2+e*q+1)"),
    ("(q-e-1)(q-e)", "q(q^2+1)(q^2+e*q+1)"),
    ("1/2(q-e-1)(q-e)", "q^2(q^2+1)(q^2+e*q+1)"),
    ("1/2(q-e-2)(q-e-1)(q-e)", "(q+e)(q^2+1)(q^2+e*q+1)"),
    ("1/2(q-e-2)(q-e-1)(q-e)", "q(q+e)(q^2+1)(q^2+e*q+1)"),
    ("1/24(q-e-3)(q-e-2)(q-e-1)(q-e)", "(q^2+1)(q+e)^2(q^2+e*q+1)"),
    ("1/2(q+e-1)(q-e)^2", "(q-e)(q^2+1)(q^2+e*q+1)"),
    ("1/2(q+e-1)(q-e)^2", "q(q-e)(q^2+1)(q^2+e*q+1)"),
    ("1/4q(q-2)(q-e)^2", "(q^4-1)(q^2+e*q+1)"),
    ("1/2(q+e-1)(q-e)", "q^2(q-e)^2(q^2+e*q+1)"),
    ("1/2(q+e-1)(q-e)", "(q-e)^2(q^2+e*q+1)"),
    ("1/8(q^2-q-2)(q^2-q-2+2e)", "(q-e)^2(q^2+1)(q^2+e*q+1)"),
    ("1/3q(q^2-1)(q-e)", "(q^4-1)(q^2-1)"),
    ("1/4q^2(q^2-1)", "(q-e)^2(q^2-1)(q^2+e*q+1)"),
];

/// Degrees as originally printed for the two rows of the `n = 4` field table
/// that fail the order identity; `(row index, degree)`, 1-based.
pub const FIELD_TABLE_4_PRINTED: &[(usize, &str)] = &[(6, "(q+e)(q^3+e)"), (8, "q^3(q^3+e)(q+e)")];

/// `ζ_{K^+}` minus its `(q-1) ζ_{GL_2}` part.
const K_PLUS_EXTRA: &[(&str, &str)] = &[
    ("2(q-1)^2", "q^2-1"),
    ("(q-1)(q+2)", "(q^2-1)(q-1)"),
    ("(q-1)^3", "q(q^2-1)"),
];

/// `ζ_{K^-}` minus its `(q+1) ζ_{GU_2}` part.
const K_MINUS_EXTRA: &[(&str, &str)] = &[("(q^2-1)(q+1)", "q(q^2-1)"), ("q(q^2-1)(q-1)", "(q+1)^2")];

pub fn field_table(n: u32) -> Option<&'static [(&'static str, &'static str)]> {
    match n {
        2 => Some(FIELD_TABLE_2),
        3 => Some(FIELD_TABLE_3),
        4 => Some(FIELD_TABLE_4),
        _ => None,
    }
}

fn series_from_formulas(
    label: &str,
    eps: Sign,
    rows: &[(&str, &str)],
    ext: u32,
) -> Result<ZetaSeries, RegistryError> {
    let e = eps.pow(ext);
    let mut z = ZetaSeries::empty(label, eps);
    for (i, (m, d)) in rows.iter().enumerate() {
        let m = RatPoly::parse_with_eps(m, e)?.substitute_q_power(ext);
        let d = RatPoly::parse_with_eps(d, e)?.substitute_q_power(ext);
        z.push(m, d, Some(format!("{label} row {}", i + 1)));
    }
    Ok(z)
}

/// `q^{n(n-1)/2} prod_{i=1}^{n} (q^i - ε^i)`.
pub fn field_order(n: u32, eps: Sign) -> RatPoly {
    let mut acc = RatPoly::q_pow((n * (n - 1) / 2) as usize);
    for i in 1..=n {
        acc = acc * (RatPoly::q_pow(i as usize) - RatPoly::constant(eps.pow(i).value()));
    }
    acc
}

pub fn order_of(g: &GroupSpec) -> Result<RatPoly, RegistryError> {
    Ok(match g {
        GroupSpec::Linear { n, l, eps, ext } => {
            if *n == 0 || *l == 0 || *ext == 0 {
                return Err(RegistryError::UnsupportedSpec(g.to_string()));
            }
            let base = field_order(*n, eps.pow(*ext)) * RatPoly::q_pow(((l - 1) * n * n) as usize);
            base.substitute_q_power(*ext)
        }
        GroupSpec::FamilyL1 { l, eps } => {
            if !(2..=3).contains(l) {
                return Err(RegistryError::UnsupportedSpec(g.to_string()));
            }
            let t = RatPoly::q() - RatPoly::constant(eps.value());
            RatPoly::q_pow((l + 1) as usize) * t.pow(2)
        }
        GroupSpec::Family211 { eps } => {
            RatPoly::q_pow(5) * (RatPoly::q() - RatPoly::constant(eps.value())) * field_order(2, *eps)
        }
        GroupSpec::AbelianOfOrder(o) => o.clone(),
        GroupSpec::Product(fs) => {
            let mut acc = RatPoly::one();
            for f in fs {
                acc = acc * order_of(f)?;
            }
            acc
        }
    })
}

/// The sign a group's series is tagged with.
fn base_sign(g: &GroupSpec) -> Sign {
    match g {
        GroupSpec::Linear { eps, .. } | GroupSpec::FamilyL1 { eps, .. } | GroupSpec::Family211 { eps } => *eps,
        GroupSpec::AbelianOfOrder(_) => Sign::Plus,
        GroupSpec::Product(fs) => fs.first().map(base_sign).unwrap_or(Sign::Plus),
    }
}

/// Zeta series of `g`, tagged with sign `eps` (the ambient sign).
pub fn zeta_of(g: &GroupSpec, eps: Sign, hook: &dyn LevelTwoHook) -> Result<ZetaSeries, RegistryError> {
    let label = g.to_string();
    let z = match g {
        GroupSpec::Linear { n, l, eps: e, ext } => {
            let e_eff = e.pow(*ext);
            match (*n, *l) {
                (1, l) if l >= 1 && *ext >= 1 => {
                    return Ok(ZetaSeries::abelian(label, eps, order_of(g)?));
                }
                (n @ 2..=4, 1) if *ext == 1 || (n == 2 && *ext == 2) => {
                    let rows = field_table(n).expect("table exists for 2..=4");
                    series_from_formulas(&label, eps, rows, *ext)?
                }
                (2, 2) if *ext == 1 => hook.level_two(2, e_eff)?.with_label(label),
                _ => return Err(RegistryError::UnsupportedSpec(label)),
            }
        }
        GroupSpec::FamilyL1 { l, eps: e } => {
            if !(2..=3).contains(l) {
                return Err(RegistryError::UnsupportedSpec(label));
            }
            let p = RatPoly::q_pow((*l - 2) as usize);
            let t = RatPoly::q() - RatPoly::constant(e.value());
            let rows = [
                (&p * &t.pow(2), RatPoly::one()),
                (&p * &RatPoly::parse("q^2-1")?, t.clone()),
                (&p * &t.pow(2) * RatPoly::parse("q-1")?, RatPoly::q()),
            ];
            let mut z = ZetaSeries::empty(label.clone(), eps);
            for (i, (m, d)) in rows.into_iter().enumerate() {
                z.push(m, d, Some(format!("{label} row {}", i + 1)));
            }
            z
        }
        GroupSpec::Family211 { eps: e } => {
            let gl2 = series_from_formulas("G2", *e, FIELD_TABLE_2, 1)?;
            let lift = gl2
                .scale_degrees(&RatPoly::q_pow(2))?
                .scale_multiplicities(&RatPoly::parse_with_eps("(q-1)(q-e)", *e)?);
            let (k_head, extra) = match e {
                Sign::Plus => ("q-1", K_PLUS_EXTRA),
                Sign::Minus => ("q+1", K_MINUS_EXTRA),
            };
            let k = gl2
                .scale_multiplicities(&RatPoly::parse(k_head)?)
                .merge(&series_from_formulas("K", *e, extra, 1)?)?;
            let mut z = lift.merge(&k)?.with_label(label);
            z.epsilon = eps;
            z
        }
        GroupSpec::AbelianOfOrder(o) => ZetaSeries::abelian(label, eps, o.clone()),
        GroupSpec::Product(fs) => {
            let mut acc = ZetaSeries::trivial(eps);
            for f in fs {
                acc = acc.product(&zeta_of(f, eps, hook)?)?;
            }
            acc.with_label(label)
        }
    };
    let mut z = z;
    z.epsilon = eps;
    Ok(z)
}

/// Convenience: `zeta_of` tagged with the group's own sign.
pub fn zeta_of_own(g: &GroupSpec, hook: &dyn LevelTwoHook) -> Result<ZetaSeries, RegistryError> {
    zeta_of(g, base_sign(g), hook)
}

/// Every group `zeta_of` can answer without the level-2 hook, per sign.
pub fn catalogue(eps: Sign) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push(GroupSpec::linear(n, 1, eps, 1));
    }
    for l in 2..=4 {
        out.push(GroupSpec::linear(1, l, eps, 1));
    }
    for ext in 2..=4 {
        out.push(GroupSpec::linear(1, 1, eps, ext));
    }
    out.push(GroupSpec::linear(2, 1, eps, 2));
    out.push(GroupSpec::FamilyL1 { l: 2, eps });
    out.push(GroupSpec::FamilyL1 { l: 3, eps });
    out.push(GroupSpec::Family211 { eps });
    out
}
