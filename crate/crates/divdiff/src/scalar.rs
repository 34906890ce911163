//! Numeric abstraction shared by the floating-point and exact rational paths.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Num, One, Signed, ToPrimitive, Zero};
use serde_json::Value;

/// Exact rational type used by the oracle and by exact-mode runs.
pub type Rational = BigRational;

/// Field operations plus the conversions the algorithms need.
///
/// Implemented for `f64` and for [`Rational`]; every algorithm in the crate is
/// generic over this trait so the same code runs in both modes.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Send + Sync + Num + Neg<Output = Self> + 'static
{
    fn from_i64(v: i64) -> Self;

    /// Exact conversion of a finite double; `None` for NaN or infinities.
    fn from_f64(v: f64) -> Option<Self>;

    fn to_f64(&self) -> f64;

    fn finite(&self) -> bool;

    fn abs(&self) -> Self;

    /// Parse decimal text (`1.25`, `-3e-2`) or, for rationals, `p/q`.
    fn parse_text(s: &str) -> Option<Self>;

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Option<Self> {
        match v {
            Value::Number(n) => n.as_f64().and_then(Self::from_f64),
            Value::String(s) => Self::parse_text(s),
            _ => None,
        }
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn from_usize(v: usize) -> Self {
        Self::from_i64(v as i64)
    }

    /// Nearest value of this type to an exact rational.
    fn from_rational(r: &Rational) -> Self;

    fn powu(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_f64(v: f64) -> Option<Self> {
        v.is_finite().then_some(v)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn finite(&self) -> bool {
        self.is_finite()
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn parse_text(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: f64 = p.trim().parse().ok()?;
            let q: f64 = q.trim().parse().ok()?;
            return Some(p / q);
        }
        s.parse().ok()
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self).map_or(Value::Null, Value::Number)
    }

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn powu(&self, e: u32) -> Self {
        self.powi(e as i32)
    }
}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_f64(v: f64) -> Option<Self> {
        Rational::from_float(v)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn finite(&self) -> bool {
        true
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn parse_text(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            return Some(Rational::new(p, q));
        }
        parse_decimal(s)
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn powu(&self, e: u32) -> Self {
        num::pow(self.clone(), e as usize)
    }
}

/// Exact value of a decimal literal such as `-12.5e-3`.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().ok()? };
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num::pow(ten, (-scale) as usize))
    };
    Some(value)
}

/// k! in the requested scalar type.
pub fn factorial<T: Scalar>(k: usize) -> T {
    (1..=k).fold(T::one(), |acc, i| acc * T::from_usize(i))
}

/// Binomial coefficient C(n, k) built from the product ratio form.
pub fn binomial<T: Scalar>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(T::one(), |acc, i| acc * T::from_usize(n - i) / T::from_usize(i + 1))
}

/// Falling factorial s(s−1)…(s−k+1).
pub fn falling<T: Scalar>(s: &T, k: usize) -> T {
    (0..k).fold(T::one(), |acc, i| acc * (s.clone() - T::from_usize(i)))
}

/// Rising factorial s(s+1)…(s+k−1).
pub fn rising<T: Scalar>(s: &T, k: usize) -> T {
    (0..k).fold(T::one(), |acc, i| acc * (s.clone() + T::from_usize(i)))
}

/// Exact rational from a pair of integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Least common multiple of the denominators, used for integer-over-D displays.
pub fn common_denominator(values: &[Rational]) -> BigInt {
    values.iter().fold(BigInt::one(), |acc, v| num::integer::lcm(acc, v.denom().clone()))
}

/// Express rationals as integer numerators over one shared denominator.
pub fn over_common_denominator(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = common_denominator(values);
    let nums = values.iter().map(|v| (v * Rational::from_integer(den.clone())).to_integer()).collect();
    (nums, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(parse_decimal("0.25"), Some(rat(1, 4)));
        assert_eq!(parse_decimal("-1.5e2"), Some(rat(-150, 1)));
        assert_eq!(parse_decimal("12e-3"), Some(rat(3, 250)));
        assert_eq!(parse_decimal(".5"), Some(rat(1, 2)));
        assert_eq!(parse_decimal("abc"), None);
        assert_eq!(parse_decimal("."), None);
    }

    #[test]
    fn rational_text_forms() {
        assert_eq!(Rational::parse_text("3/6"), Some(rat(1, 2)));
        assert_eq!(Rational::parse_text("1/0"), None);
        assert_eq!(f64::parse_text("1/4"), Some(0.25));
    }

    #[test]
    fn combinatorial_helpers() {
        assert_eq!(binomial::<Rational>(6, 3), rat(20, 1));
        assert_eq!(binomial::<f64>(5, 7), 0.0);
        assert_eq!(factorial::<Rational>(5), rat(120, 1));
        assert_eq!(falling(&3.0, 3), 6.0);
        assert_eq!(rising(&1.0, 3), 6.0);
    }

    #[test]
    fn common_denominator_display() {
        let (nums, den) = over_common_denominator(&[rat(1, 3), rat(4, 3), rat(1, 3)]);
        assert_eq!(den, BigInt::from(3));
        assert_eq!(nums, vec![BigInt::from(1), BigInt::from(4), BigInt::from(1)]);
    }
}
