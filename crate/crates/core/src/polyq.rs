//! Exact univariate polynomials in the residue-field size `q`.
//!
//! Every count, degree, group order and index in this crate is a [`RatPoly`]:
//! a polynomial in `q` with rational coefficients. Coefficients are rational
//! rather than integral because class counts such as `q(q-1)(q-2)(q-3)/24`
//! are integer-valued without having integer coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("{dividend} is not divisible by {divisor} (remainder {remainder})")]
    NotDivisible {
        dividend: RatPoly,
        divisor: RatPoly,
        remainder: RatPoly,
    },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// The sign ε distinguishing the linear (`+1`) and unitary (`-1`) families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    /// `ε^d`.
    pub fn pow(self, d: u32) -> Sign {
        if self == Sign::Minus && d % 2 == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    /// Short group-family name: `GL` for `+1`, `GU` for `-1`.
    pub fn family(self) -> &'static str {
        match self {
            Sign::Plus => "GL",
            Sign::Minus => "GU",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i64(self.value())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_value(v).ok_or_else(|| serde::de::Error::custom(format!("epsilon must be 1 or -1, got {v}")))
    }
}

/// Polynomial in `q` over the rationals.
///
/// `coeffs[i]` is the coefficient of `q^i`; the zero polynomial has no
/// coefficients and the last stored coefficient is never zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RatPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = RatPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_ints(&[c])
    }

    pub fn constant_rat(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `q^k`.
    pub fn q_pow(k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        RatPoly { coeffs }
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> RatPoly {
        let mut base = self.clone();
        let mut acc = RatPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Polynomial long division: `self = quotient * divisor + remainder`.
    pub fn div_rem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly), PolyError> {
        let dlead = divisor.leading().ok_or(PolyError::DivisionByZero)?.clone();
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return Ok((RatPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - ddeg];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + ddeg] / &dlead;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(ddeg);
        Ok((RatPoly::new(quot), RatPoly::new(rem)))
    }

    /// Exact division; any nonzero remainder is an error carrying both operands.
    pub fn div_exact(&self, divisor: &RatPoly) -> Result<RatPoly, PolyError> {
        let (quot, rem) = self.div_rem(divisor)?;
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(PolyError::NotDivisible {
                dividend: self.clone(),
                divisor: divisor.clone(),
                remainder: rem,
            })
        }
    }

    /// Horner evaluation at an exact rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&rat(x))
    }

    /// Value at integer `x` if it is an integer.
    pub fn eval_integer(&self, x: i64) -> Option<BigInt> {
        let v = self.eval_int(x);
        v.is_integer().then(|| v.to_integer())
    }

    /// `g(q^d)`.
    pub fn substitute_q_power(&self, d: u32) -> RatPoly {
        if d == 1 {
            return self.clone();
        }
        let d = d as usize;
        let mut coeffs = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * d] = c.clone();
        }
        RatPoly::new(coeffs)
    }

    /// `g(-q)`.
    pub fn negate_variable(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `(-1)^{deg g} g(-q)`; preserves the sign of the leading coefficient.
    pub fn ennola_transform(&self) -> Result<RatPoly, PolyError> {
        let deg = self.degree().ok_or(PolyError::ZeroPolynomial)?;
        let flipped = self.negate_variable();
        Ok(if deg % 2 == 1 { -flipped } else { flipped })
    }

    /// Splits `g = q^e * core` with `core(0) != 0`.
    pub fn strip_q_power(&self) -> Result<(usize, RatPoly), PolyError> {
        let e = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(PolyError::ZeroPolynomial)?;
        Ok((e, RatPoly::new(self.coeffs[e..].to_vec())))
    }

    /// Parses an expression in `q` and the sign symbol `e` (bound to `eps`).
    ///
    /// Accepts integers, `q`, `e`, `+ - * /`, `^` with a nonnegative integer
    /// exponent, parentheses and implicit multiplication (`2q(q-1)`). Division
    /// is only allowed by constants.
    pub fn parse_with_eps(input: &str, eps: Sign) -> Result<RatPoly, PolyError> {
        let mut p = ExprParser {
            src: input,
            toks: tokenize(input)?,
            pos: 0,
            eps,
        };
        let v = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }

    pub fn parse(input: &str) -> Result<RatPoly, PolyError> {
        Self::parse_with_eps(input, Sign::Plus)
    }

    /// Multiplicative composition of integer-linear factors; used for falling factorials.
    pub fn product<'a, I: IntoIterator<Item = &'a RatPoly>>(items: I) -> RatPoly {
        items.into_iter().fold(RatPoly::one(), |acc, p| &acc * p)
    }

    /// Every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    fn coeff_string(c: &BigRational) -> String {
        if c.is_integer() {
            c.numer().to_string()
        } else {
            format!("{}/{}", c.numer(), c.denom())
        }
    }
}

impl Ord for RatPoly {
    /// Degree first, then coefficients from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for RatPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{}", Self::coeff_string(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", Self::coeff_string(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl FromStr for RatPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RatPoly::parse(s)
    }
}

impl From<i64> for RatPoly {
    fn from(c: i64) -> Self {
        RatPoly::constant(c)
    }
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        let coeffs = strs
            .iter()
            .map(|s| {
                let (n, den) = s.split_once('/').unwrap_or((s.as_str(), "1"));
                let n: BigInt = n.trim().parse().map_err(serde::de::Error::custom)?;
                let den: BigInt = den.trim().parse().map_err(serde::de::Error::custom)?;
                if den.is_zero() {
                    return Err(serde::de::Error::custom("zero denominator"));
                }
                Ok(BigRational::new(n, den))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RatPoly::new(coeffs))
    }
}

impl<'a> Add<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: RatPoly) -> RatPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: &RatPoly) -> RatPoly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<RatPoly> for &'a RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: RatPoly) -> RatPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Converts a nonnegative integer-valued rational into `u64` when it fits.
pub fn rational_to_u64(v: &BigRational) -> Option<u64> {
    if v.is_integer() {
        v.to_integer().to_u64()
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Q,
    E,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, PolyError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(digits.parse().expect("ascii digits")));
            }
            'q' => out.push(Tok::Q),
            'e' | 'ε' => out.push(Tok::E),
            '+' => out.push(Tok::Plus),
            '-' | '−' => out.push(Tok::Minus),
            '*' | '·' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            _ => {
                return Err(PolyError::Parse {
                    input: s.to_string(),
                    reason: format!("unexpected character {c:?}"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct ExprParser<'a> {
    src: &'a str,
    toks: Vec<Tok>,
    pos: usize,
    eps: Sign,
}

impl ExprParser<'_> {
    fn err(&self, reason: &str) -> PolyError {
        PolyError::Parse {
            input: self.src.to_string(),
            reason: format!("{reason} at token {}", self.pos),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<RatPoly, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatPoly, PolyError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.degree() != Some(0) {
                        return Err(self.err("division only by nonzero constants"));
                    }
                    acc = acc.scale(&d.coeffs[0].recip());
                }
                Some(Tok::Num(_)) | Some(Tok::Q) | Some(Tok::E) | Some(Tok::LParen) => {
                    acc = acc * self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatPoly, PolyError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatPoly, PolyError> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e = n.to_u32().ok_or_else(|| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<RatPoly, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RatPoly::constant_rat(BigRational::from_integer(n)))
            }
            Some(Tok::Q) => {
                self.pos += 1;
                Ok(RatPoly::q())
            }
            Some(Tok::E) => {
                self.pos += 1;
                Ok(RatPoly::constant(self.eps.value()))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("expected operand")),
        }
    }
}

/// Shorthand for parsing trusted formula literals.
pub fn poly(text: &str, eps: Sign) -> RatPoly {
    RatPoly::parse_with_eps(text, eps).unwrap_or_else(|e| panic!("bad formula literal: {e}"))
}
