//! Exact scalars: rationals and Gaussian rationals.
//!
//! Rationals print as `"p/q"` (or `"p"` for integers). Gaussian rationals
//! serialize as `{ "re": "...", "im": "..." }`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Which coefficient field a value, matrix or arrangement lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Q(i)")]
    Gaussian,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => f.write_str("Q"),
            FieldTag::Gaussian => f.write_str("Q(i)"),
        }
    }
}

/// Operations shared by the two coefficient fields.
pub trait Field:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const TAG: FieldTag;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: Rational) -> Self;
    fn from_i64(v: i64) -> Self {
        Self::from_rational(Rational::from_i64(v))
    }
    fn conj(&self) -> Self;
    /// Total order used only for canonical sorting of forms.
    fn cmp_canonical(&self, other: &Self) -> Ordering;
    fn to_scalar(&self) -> Scalar;
    fn from_scalar(s: &Scalar) -> Option<Self>;
}

/// An exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Rational(BigRational::from_integer(v))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn signum(&self) -> i32 {
        if self.0.is_positive() {
            1
        } else if self.0.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseScalarError(pub String);

impl FromStr for Rational {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || ParseScalarError(s.to_string());
        let parse_int = |x: &str| -> Result<BigInt, ParseScalarError> {
            let x = x.trim();
            if x.is_empty() || x.starts_with("+-") || x.starts_with("-+") {
                return Err(bad());
            }
            x.parse::<BigInt>().map_err(|_| bad())
        };
        match t.split_once('/') {
            Some((p, q)) => {
                let p = parse_int(p)?;
                let q = parse_int(q)?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(Rational(BigRational::new(p, q)))
            }
            None => Ok(Rational::from_bigint(parse_int(t)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($ty:ident, $tr:ident, $m:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                $ty($tr::$m(self.0, rhs.0))
            }
        }
        impl<'a> $tr<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn $m(self, rhs: &'a $ty) -> $ty {
                $ty($tr::$m(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Rational, Add, add);
forward_binop!(Rational, Sub, sub);
forward_binop!(Rational, Mul, mul);
forward_binop!(Rational, Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Field for Rational {
    const TAG: FieldTag = FieldTag::Rational;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Rational(self.clone())
    }
    fn from_scalar(s: &Scalar) -> Option<Self> {
        match s {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Gaussian(_) => None,
        }
    }
}

/// An element `re + im·i` of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Gaussian::new(Rational::from_i64(re), Rational::from_i64(im))
    }

    pub fn i() -> Self {
        Gaussian::from_ints(0, 1)
    }

    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}i", self.re, self.im.abs())
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

impl fmt::Debug for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Gaussian {
    type Err = ParseScalarError;

    /// Accepts `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` with rational `a`, `b`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ParseScalarError(s.to_string());
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Gaussian::new(t.parse()?, Rational::zero()));
        };
        // split at the last sign that is not in leading position
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            x => x.trim_start_matches('+').parse().map_err(|_| bad())?,
        };
        Ok(Gaussian::new(re.parse().map_err(|_| bad())?, im))
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, o: Gaussian) -> Gaussian {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        Gaussian::new(re, im)
    }
}

impl Div for Gaussian {
    type Output = Gaussian;
    fn div(self, o: Gaussian) -> Gaussian {
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero in Q(i)");
        let prod = self * o.conj();
        Gaussian::new(&prod.re / &n, &prod.im / &n)
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

impl Field for Gaussian {
    const TAG: FieldTag = FieldTag::Gaussian;

    fn zero() -> Self {
        Gaussian::default()
    }
    fn one() -> Self {
        Gaussian::from_ints(1, 0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_rational(r: Rational) -> Self {
        Gaussian::new(r, Rational::zero())
    }
    fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -self.im.clone())
    }
    fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Gaussian(self.clone())
    }
    fn from_scalar(s: &Scalar) -> Option<Self> {
        match s {
            Scalar::Gaussian(g) => Some(g.clone()),
            Scalar::Rational(_) => None,
        }
    }
}

/// A field-tagged exact scalar. Values over different fields never compare
/// equal, even when the Gaussian one has zero imaginary part.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Rational(Rational),
    Gaussian(Gaussian),
}

impl Scalar {
    pub fn field(&self) -> FieldTag {
        match self {
            Scalar::Rational(_) => FieldTag::Rational,
            Scalar::Gaussian(_) => FieldTag::Gaussian,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => r.fmt(f),
            Scalar::Gaussian(g) => g.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_normalize() {
        let r: Rational = "6/-4".parse().unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!("4/2".parse::<Rational>().unwrap().to_string(), "2");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn gaussian_parse_and_arith() {
        let a: Gaussian = "1+2i".parse().unwrap();
        let b: Gaussian = "-i".parse().unwrap();
        assert_eq!(b, Gaussian::from_ints(0, -1));
        assert_eq!("3/2-1/2i".parse::<Gaussian>().unwrap().im, Rational::new(-1, 2));
        assert_eq!(a.clone() * b.clone(), Gaussian::from_ints(2, -1));
        assert_eq!((a.clone() / a.clone()), Gaussian::one());
        assert_eq!(Gaussian::i() * Gaussian::i(), Gaussian::from_ints(-1, 0));
        assert_eq!(a.to_string(), "1+2i");
    }

    #[test]
    fn field_tags_block_coercion() {
        let q = Scalar::Rational(Rational::from_i64(3));
        let g = Scalar::Gaussian(Gaussian::from_ints(3, 0));
        assert_ne!(q, g);
        assert_eq!(q.field(), FieldTag::Rational);
    }

    #[test]
    fn scalar_json_forms() {
        let q = Scalar::Rational(Rational::new(-1, 3));
        assert_eq!(serde_json::to_string(&q).unwrap(), "\"-1/3\"");
        let g = Scalar::Gaussian(Gaussian::from_ints(0, 1));
        let js = serde_json::to_string(&g).unwrap();
        assert_eq!(js, r#"{"re":"0","im":"1"}"#);
        assert_eq!(serde_json::from_str::<Scalar>(&js).unwrap(), g);
    }
}
