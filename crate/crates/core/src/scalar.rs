//! Scalar backends.
//!
//! Every matrix in the crate is generic over [`Scalar`], an ordered field with
//! two concrete implementations: [`Rational`] (arbitrary precision, exact) and
//! `f64`. Comparisons that must tolerate rounding go through
//! [`Scalar::sign_within`], which is exact on rationals and uses an absolute
//! tolerance on floats.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact arbitrary-precision rational.
pub type Rational = BigRational;

/// Default absolute tolerance for float comparisons.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Pivots smaller than this in magnitude make a float matrix singular.
pub const PIVOT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Rational,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Rational => f.write_str("rational"),
            Backend::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rational" | "exact" => Ok(Backend::Rational),
            "float" | "f64" => Ok(Backend::Float),
            other => Err(format!("unknown backend `{other}` (expected rational|float)")),
        }
    }
}

/// An ordered field element usable as a matrix entry.
pub trait Scalar: Signed + Clone + fmt::Debug + PartialOrd + Send + Sync + 'static {
    const BACKEND: Backend;

    /// Exact conversion from a rational; floats round to nearest.
    fn from_rational(r: &Rational) -> Self;

    fn from_i64(v: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Sign of `self`, treating anything within `eps` of zero as zero on the
    /// float backend. Rationals ignore `eps`.
    fn sign_within(&self, eps: f64) -> Ordering;

    /// Decimal text. The flag is `false` when the text is only an
    /// approximation of the value.
    fn to_decimal(&self) -> (String, bool);

    /// JSON value: plain numbers for floats and integral rationals,
    /// `{"num": .., "den": ..}` for the remaining rationals.
    fn to_json(&self) -> serde_json::Value;

    fn is_exact() -> bool {
        Self::BACKEND == Backend::Rational
    }

    fn near(&self, other: &Self, eps: f64) -> bool {
        (self.clone() - other.clone()).sign_within(eps) == Ordering::Equal
    }
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float;

    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sign_within(&self, eps: f64) -> Ordering {
        if self.abs() <= eps {
            Ordering::Equal
        } else if *self > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn to_decimal(&self) -> (String, bool) {
        (format_f64(*self), true)
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Number::from_f64(*self)
            .map(serde_json::Value::Number)
            .unwrap_or(serde_json::Value::Null)
    }
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Rational;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn sign_within(&self, _eps: f64) -> Ordering {
        self.cmp(&Rational::zero())
    }

    fn to_decimal(&self) -> (String, bool) {
        match terminating_decimal(self) {
            Some(text) => (text, true),
            None => (format_f64(rational_to_f64(self)), false),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        if self.is_integer() {
            integer_json(self.numer())
        } else {
            serde_json::json!({
                "num": integer_json(self.numer()),
                "den": integer_json(self.denom()),
            })
        }
    }
}

fn integer_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(small) => serde_json::Value::from(small),
        None => serde_json::Value::String(v.to_string()),
    }
}

fn rational_to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => ToPrimitive::to_f64(r).unwrap_or(f64::NAN),
    }
}

/// Shortest round-trip representation, without a trailing `.0`.
pub fn format_f64(v: f64) -> String {
    if v == 0.0 {
        // normalises -0
        return "0".to_string();
    }
    format!("{v}")
}

/// Exact decimal expansion when the denominator is of the form 2^a 5^b.
fn terminating_decimal(r: &Rational) -> Option<String> {
    if r.is_integer() {
        return Some(r.numer().to_string());
    }
    let mut den = r.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0u32, 0u32);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return None;
    }
    let digits = twos.max(fives);
    let scaled = r * Rational::from_integer(BigInt::from(10).pow(digits));
    debug_assert!(scaled.is_integer());
    let int = scaled.to_integer();
    let negative = int.is_negative();
    let mut text = int.abs().to_string();
    let digits = digits as usize;
    if text.len() <= digits {
        text = format!("{}{}", "0".repeat(digits - text.len() + 1), text);
    }
    let split = text.len() - digits;
    let out = format!("{}.{}", &text[..split], &text[split..]);
    Some(if negative { format!("-{out}") } else { out })
}

/// Parse `"3"`, `"-3/4"` or a plain decimal such as `"0.125"` / `"1e-3"`
/// into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty number".into());
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| format!("bad numerator in `{text}`"))?;
        let den: BigInt = den.trim().parse().map_err(|_| format!("bad denominator in `{text}`"))?;
        if den.is_zero() {
            return Err(format!("zero denominator in `{text}`"));
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(text)
}

fn parse_decimal(text: &str) -> Result<Rational, String> {
    let bad = || format!("not a number: `{text}`");
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = text[pos + 1..].parse().map_err(|_| bad())?;
            (&text[..pos], exp)
        }
        None => (text, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i64;
    let magnitude = if scale >= 0 {
        Rational::from_integer(digits * BigInt::from(10).pow(scale as u32))
    } else {
        Rational::new(digits, BigInt::from(10).pow((-scale) as u32))
    };
    Ok(if negative { -magnitude } else { magnitude })
}

/// Exact rational equal to the given finite float.
pub fn rational_from_f64(v: f64) -> Option<Rational> {
    Rational::from_float(v)
}

pub fn rational_from_i64(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}
