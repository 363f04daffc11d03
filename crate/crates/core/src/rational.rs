//! Exact rationals, expressions of the form `a + b·√c`, and recorded
//! inequality checks.
//!
//! Every verdict is decided in exact arithmetic. A comparison involving a
//! square root is settled by sign analysis and squaring, never by floats.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse {0:?} as an exact rational")]
pub struct ParseRationalError(pub String);

/// An exact rational, serialized as `"num/den"` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn integer(v: i64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn from_usize(v: usize) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn signum(&self) -> Ordering {
        self.0.cmp(&BigRational::zero())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// `⌈self⌉` as a count; negative values clamp to zero.
    pub fn ceil_usize(&self) -> usize {
        self.ceil().to_usize().unwrap_or(0)
    }

    pub fn floor_usize(&self) -> usize {
        self.floor().to_usize().unwrap_or(0)
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn square(&self) -> Self {
        Rational(&self.0 * &self.0)
    }

    /// Lossy conversion, for human-facing summaries only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<usize> for Rational {
    fn from(v: usize) -> Self {
        Rational::from_usize(v)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::integer(v)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl std::ops::$trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl std::ops::$trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl std::ops::$trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
        impl std::ops::$trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(&self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl std::ops::Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl std::ops::Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// Accepts `a/b`, an integer, or a finite decimal such as `0.02`.
impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let t = s.trim();
        if let Some((a, b)) = t.split_once('/') {
            let num = BigInt::from_str(a.trim()).map_err(|_| err())?;
            let den = BigInt::from_str(b.trim()).map_err(|_| err())?;
            if den.is_zero() {
                return Err(err());
            }
            return Ok(Rational(BigRational::new(num, den)));
        }
        if let Some((int, frac)) = t.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            let negative = int.starts_with('-');
            let int_digits = int.trim_start_matches(['-', '+']);
            if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            let digits = format!("{int_digits}{frac}");
            let mut num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| err())?;
            if negative {
                num = -num;
            }
            let den = BigInt::from(10u32).pow(frac.len() as u32);
            return Ok(Rational(BigRational::new(num, den)));
        }
        BigInt::from_str(t)
            .map(|v| Rational(BigRational::from_integer(v)))
            .map_err(|_| err())
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `rat + coef·√radicand` with a nonnegative radicand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Expr {
    rat: Rational,
    coef: Rational,
    radicand: Rational,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("negative radicand {0}")]
    NegativeRadicand(Rational),
    #[error("cannot compare expressions with different radicands {} and {}", .0.0, .0.1)]
    MixedRadicands(Box<(Rational, Rational)>),
    #[error("cannot parse expression {0:?}")]
    Parse(String),
}

impl Expr {
    pub fn rational(r: Rational) -> Self {
        Expr {
            rat: r,
            coef: Rational::zero(),
            radicand: Rational::zero(),
        }
    }

    pub fn count(v: usize) -> Self {
        Expr::rational(Rational::from(v))
    }

    /// `rat + coef·√radicand`; a zero coefficient or radicand collapses to a
    /// plain rational so equal values have equal representations.
    pub fn with_sqrt(rat: Rational, coef: Rational, radicand: Rational) -> Result<Self, ExprError> {
        if radicand.is_negative() {
            return Err(ExprError::NegativeRadicand(radicand));
        }
        if coef.is_zero() || radicand.is_zero() {
            return Ok(Expr::rational(rat));
        }
        Ok(Expr { rat, coef, radicand })
    }

    pub fn is_rational(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rat
    }

    pub fn sqrt_coefficient(&self) -> &Rational {
        &self.coef
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    /// Exact ordering of two expressions sharing a radicand (or rational).
    pub fn compare(&self, other: &Expr) -> Result<Ordering, ExprError> {
        let radicand = match (self.is_rational(), other.is_rational()) {
            (true, true) => return Ok(self.rat.cmp(&other.rat)),
            (false, true) => self.radicand.clone(),
            (true, false) => other.radicand.clone(),
            (false, false) => {
                if self.radicand != other.radicand {
                    return Err(ExprError::MixedRadicands(Box::new((
                        self.radicand.clone(),
                        other.radicand.clone(),
                    ))));
                }
                self.radicand.clone()
            }
        };
        let p = &self.rat - &other.rat;
        let q = &self.coef - &other.coef;
        Ok(sign_of_sum(&p, &q, &radicand))
    }

    pub fn to_f64(&self) -> f64 {
        self.rat.to_f64() + self.coef.to_f64() * self.radicand.to_f64().sqrt()
    }
}

/// Sign of `p + q·√c` for `c ≥ 0`.
///
/// When `p` and `q√c` have opposite signs the magnitudes are compared by
/// squaring: `|p|` versus `|q|·√c` is `p²` versus `q²·c`.
pub fn sign_of_sum(p: &Rational, q: &Rational, c: &Rational) -> Ordering {
    let sq = if q.is_zero() || c.is_zero() {
        Ordering::Equal
    } else {
        q.signum()
    };
    let sp = p.signum();
    match (sp, sq) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (a, b) if a == b => a,
        _ => match p.square().cmp(&(q.square() * c)) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => Ordering::Equal,
        },
    }
}

impl From<Rational> for Expr {
    fn from(r: Rational) -> Self {
        Expr::rational(r)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.rat)
        } else {
            write!(f, "{}+{}*sqrt({})", self.rat, self.coef, self.radicand)
        }
    }
}

impl FromStr for Expr {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ExprError::Parse(s.to_string());
        match s.split_once('+') {
            None => Ok(Expr::rational(s.parse().map_err(|_| err())?)),
            Some((rat, rest)) => {
                let (coef, rad) = rest.split_once("*sqrt(").ok_or_else(err)?;
                let rad = rad.strip_suffix(')').ok_or_else(err)?;
                let e = Expr::with_sqrt(
                    rat.parse().map_err(|_| err())?,
                    coef.parse().map_err(|_| err())?,
                    rad.parse().map_err(|_| err())?,
                )?;
                Ok(e)
            }
        }
    }
}

impl Serialize for Expr {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Expr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    pub fn holds(self, ord: Ordering) -> bool {
        match self {
            Relation::Lt => ord == Ordering::Less,
            Relation::Le => ord != Ordering::Greater,
            Relation::Gt => ord == Ordering::Greater,
            Relation::Ge => ord != Ordering::Less,
            Relation::Eq => ord == Ordering::Equal,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

/// One recorded inequality `lhs relation rhs` and its exact verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub lhs: Expr,
    pub relation: Relation,
    pub rhs: Expr,
    pub holds: bool,
}

impl Check {
    /// Evaluates the relation exactly.
    ///
    /// # Panics
    /// If the two sides carry different radicands; every check built in this
    /// crate compares against at most one square root.
    pub fn new(id: impl Into<String>, lhs: impl Into<Expr>, relation: Relation, rhs: impl Into<Expr>) -> Self {
        let lhs = lhs.into();
        let rhs = rhs.into();
        let ord = lhs.compare(&rhs).expect("checks compare against a single radicand");
        Check {
            id: id.into(),
            holds: relation.holds(ord),
            lhs,
            relation,
            rhs,
        }
    }

    /// Recomputes the verdict from the stored sides.
    pub fn reevaluate(&self) -> Result<bool, ExprError> {
        Ok(self.relation.holds(self.lhs.compare(&self.rhs)?))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} {} {} ({})",
            self.id,
            self.lhs,
            self.relation.symbol(),
            self.rhs,
            if self.holds { "holds" } else { "fails" }
        )
    }
}

/// Shorthand for an exact rational used throughout the procedures.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!("2/100".parse::<Rational>().unwrap(), q(1, 50));
        assert_eq!("0.02".parse::<Rational>().unwrap(), q(1, 50));
        assert_eq!("-1.5".parse::<Rational>().unwrap(), q(-3, 2));
        assert_eq!("3".parse::<Rational>().unwrap(), q(3, 1));
        assert_eq!(q(6, 4).to_string(), "3/2");
        assert_eq!(q(0, 7).to_string(), "0/1");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!("1.".parse::<Rational>().is_err());
    }

    #[test]
    fn sqrt_sign_cases() {
        // 3 - √8 > 0 since 9 > 8
        assert_eq!(sign_of_sum(&q(3, 1), &q(-1, 1), &q(8, 1)), Ordering::Greater);
        // 3 - √10 < 0
        assert_eq!(sign_of_sum(&q(3, 1), &q(-1, 1), &q(10, 1)), Ordering::Less);
        // 3 - √9 = 0
        assert_eq!(sign_of_sum(&q(3, 1), &q(-1, 1), &q(9, 1)), Ordering::Equal);
        // -3 + √10 > 0
        assert_eq!(sign_of_sum(&q(-3, 1), &q(1, 1), &q(10, 1)), Ordering::Greater);
        assert_eq!(sign_of_sum(&q(-1, 1), &q(-1, 1), &q(2, 1)), Ordering::Less);
        assert_eq!(sign_of_sum(&q(0, 1), &q(1, 1), &q(0, 1)), Ordering::Equal);
    }

    #[test]
    fn expr_roundtrip_and_compare() {
        let e = Expr::with_sqrt(q(20, 1), q(-20, 1), q(7, 10)).unwrap();
        let s = e.to_string();
        assert_eq!(s, "20/1+-20/1*sqrt(7/10)");
        assert_eq!(s.parse::<Expr>().unwrap(), e);
        // 9 > 20(1 - √0.7) ≈ 3.27
        let c = Check::new("corollary", Expr::count(9), Relation::Gt, e.clone());
        assert!(c.holds);
        let c = Check::new("corollary", Expr::count(3), Relation::Gt, e);
        assert!(!c.holds);
        assert!(Expr::with_sqrt(q(1, 1), q(1, 1), q(-1, 1)).is_err());
        assert_eq!(
            Expr::with_sqrt(q(1, 2), q(0, 1), q(5, 1)).unwrap(),
            Expr::rational(q(1, 2))
        );
    }

    #[test]
    fn check_serde() {
        let c = Check::new("x", Expr::count(3), Relation::Le, Expr::rational(q(7, 2)));
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(
            json,
            r#"{"id":"x","lhs":"3/1","relation":"<=","rhs":"7/2","holds":true}"#
        );
        let back: Check = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }
}
