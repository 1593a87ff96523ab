//! Exact-rational and high-precision real scalars.
//!
//! The parameter `t` and every quantity of the form `k/(2t+1)` flow through
//! [`Scalar`]. Rational inputs stay exact under arithmetic; irrational inputs
//! are carried as a dyadic approximant with a guaranteed number of correct
//! bits, so that fractional-part computations can be performed well beyond
//! `f64` precision instead of pretending exactness.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default precision (bits) for high-precision real constructors.
pub const DEFAULT_REAL_BITS: u32 = 256;

/// A real scalar that knows whether it is exact.
///
/// `Rational` values are reduced fractions and all arithmetic among them is
/// exact. `Real` values hold a rational approximant `a` with
/// `|x - a| <= 2^-bits`; arithmetic mixing in a `Real` yields a `Real` with a
/// conservatively decreased bit count.
#[derive(Debug, Clone)]
pub enum Scalar {
    Rational(BigRational),
    Real(RealScalar),
}

/// High-precision approximation of an (often irrational) real number.
#[derive(Debug, Clone)]
pub struct RealScalar {
    approx: BigRational,
    bits: u32,
    /// Display-only tag such as `"sqrt(2)"`; never used in arithmetic.
    symbol: Option<String>,
}

impl RealScalar {
    pub fn approx(&self) -> &BigRational {
        &self.approx
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn symbol(&self) -> Option<&str> {
        self.symbol.as_deref()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Reduced fraction `num/den`. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Rational(r)
    }

    /// Exact conversion: every finite `f64` is a dyadic rational.
    pub fn from_f64_exact(x: f64) -> Result<Self> {
        let r = BigRational::from_float(x)
            .ok_or_else(|| Error::invalid("scalar", format!("non-finite value {x}")))?;
        Ok(Scalar::Rational(r))
    }

    /// High-precision real from an approximant with `bits` guaranteed bits.
    pub fn real_from_approx(approx: BigRational, bits: u32, symbol: Option<String>) -> Self {
        Scalar::Real(RealScalar {
            approx,
            bits,
            symbol,
        })
    }

    /// `sqrt(n)` to [`DEFAULT_REAL_BITS`] correct bits via integer Newton.
    pub fn sqrt(n: u64) -> Self {
        Scalar::sqrt_with_bits(n, DEFAULT_REAL_BITS)
    }

    pub fn sqrt_with_bits(n: u64, bits: u32) -> Self {
        let shifted = BigInt::from(n) << (2 * bits as usize);
        let root = shifted.sqrt(); // floor square root
        let approx = BigRational::new(root, BigInt::one() << (bits as usize));
        // floor(sqrt(n * 4^bits)) / 2^bits is within 2^-bits of sqrt(n)
        Scalar::Real(RealScalar {
            approx,
            bits,
            symbol: Some(format!("sqrt({n})")),
        })
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Real(_) => None,
        }
    }

    /// Best available rational approximant (exact for rationals).
    pub fn approx_rational(&self) -> &BigRational {
        match self {
            Scalar::Rational(r) => r,
            Scalar::Real(r) => &r.approx,
        }
    }

    /// Guaranteed correct bits; `None` means exact.
    pub fn precision_bits(&self) -> Option<u32> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Real(r) => Some(r.bits),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.approx_rational().to_f64().unwrap_or(f64::NAN)
    }

    /// True when the value is provably -1/2, or indistinguishable from it at
    /// the stated precision.
    pub fn is_plus_space(&self) -> bool {
        let half = BigRational::new(BigInt::from(-1), BigInt::from(2));
        match self {
            Scalar::Rational(r) => *r == half,
            Scalar::Real(r) => {
                let radius = BigRational::new(BigInt::one(), BigInt::one() << (r.bits as usize));
                (&r.approx - half).abs() <= radius
            }
        }
    }

    /// `2t + 1` with exactness preserved.
    pub fn two_t_plus_one(&self) -> Scalar {
        let two = Scalar::from_int(2);
        let one = Scalar::one();
        &(&two * self) + &one
    }

    fn binary(
        &self,
        other: &Scalar,
        f: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(f(a, b)),
            _ => {
                let bits = self
                    .precision_bits()
                    .into_iter()
                    .chain(other.precision_bits())
                    .min()
                    .unwrap_or(DEFAULT_REAL_BITS)
                    .saturating_sub(2);
                Scalar::Real(RealScalar {
                    approx: f(self.approx_rational(), other.approx_rational()),
                    bits,
                    symbol: None,
                })
            }
        }
    }

    /// Decimal rendering of the approximant with `digits` fractional digits.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let r = self.approx_rational();
        let neg = r.is_negative();
        let abs = r.abs();
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = (abs.numer() * &scale) / abs.denom();
        let int_part = &scaled / &scale;
        let frac_part = &scaled % &scale;
        let mut frac = frac_part.to_string();
        while frac.len() < digits {
            frac.insert(0, '0');
        }
        let frac = frac.trim_end_matches('0');
        let sign = if neg { "-" } else { "" };
        if frac.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac}")
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.approx_rational() == other.approx_rational()
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.approx_rational().partial_cmp(other.approx_rational())
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.binary(rhs, |a, b| std::ops::$trait::$method(a, b))
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl std::ops::Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.approx_rational().is_zero(), "division by zero scalar");
        self.binary(rhs, |a, b| a / b)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Real(r) => Scalar::Real(RealScalar {
                approx: -&r.approx,
                bits: r.bits,
                symbol: None,
            }),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Real(r) => {
                if let Some(sym) = &r.symbol {
                    write!(f, "{sym}")
                } else {
                    write!(f, "{}", self.to_decimal_string(24))
                }
            }
        }
    }
}

/// Fractional part in `[0, 1)` of a rational number.
pub fn frac_part(r: &BigRational) -> BigRational {
    let floored = r.floor();
    r - floored
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer = BigInt::parse_bytes(digits.as_bytes(), 10)?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Some(BigRational::new(BigInt::from(sign) * numer, denom))
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p/q`, decimal strings (parsed exactly), and `sqrt(n)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(arg) = s.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
            let n: u64 = arg
                .trim()
                .parse()
                .map_err(|_| Error::invalid("scalar", format!("bad sqrt argument in {s:?}")))?;
            return Ok(Scalar::sqrt(n));
        }
        if let Some((p, q)) = s.split_once('/') {
            let p = BigInt::from_str(p.trim())
                .map_err(|_| Error::invalid("scalar", format!("bad numerator in {s:?}")))?;
            let q = BigInt::from_str(q.trim())
                .map_err(|_| Error::invalid("scalar", format!("bad denominator in {s:?}")))?;
            if q.is_zero() {
                return Err(Error::invalid("scalar", "zero denominator"));
            }
            return Ok(Scalar::Rational(BigRational::new(p, q)));
        }
        parse_decimal(s)
            .map(Scalar::Rational)
            .ok_or_else(|| Error::invalid("scalar", format!("cannot parse {s:?}")))
    }
}

#[derive(Serialize, Deserialize)]
struct RealRepr {
    value: String,
    precision_bits: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    symbol: Option<String>,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Rational(_) => serializer.serialize_str(&self.to_string()),
            Scalar::Real(r) => RealRepr {
                value: self.to_decimal_string((r.bits as usize) * 302 / 1000 + 2),
                precision_bits: r.bits,
                symbol: r.symbol.clone(),
            }
            .serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Number(f64),
            Real(RealRepr),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => {
                // A symbolic tag like sqrt(2) round-trips through the string form.
                Scalar::from_str(&s).map_err(D::Error::custom)
            }
            Repr::Number(x) => Scalar::from_f64_exact(x).map_err(D::Error::custom),
            Repr::Real(r) => {
                if let Some(sym) = &r.symbol {
                    if let Ok(s) = Scalar::from_str(sym) {
                        return Ok(s);
                    }
                }
                let approx = parse_decimal(&r.value)
                    .ok_or_else(|| D::Error::custom(format!("bad decimal {:?}", r.value)))?;
                Ok(Scalar::real_from_approx(approx, r.precision_bits, r.symbol))
            }
        }
    }
}

/// Integer nearest to a rational, ties toward even (exact arithmetic).
pub fn round_rational(r: &BigRational) -> BigInt {
    r.round().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_stays_exact() {
        let a = Scalar::from_ratio(1, 3);
        let b = Scalar::from_ratio(1, 6);
        let sum = &a + &b;
        assert!(sum.is_rational());
        assert_eq!(
            sum.as_rational().unwrap(),
            &BigRational::new(1.into(), 2.into())
        );
    }

    #[test]
    fn lowest_terms_invariant() {
        let s = Scalar::from_ratio(6, -4);
        let r = s.as_rational().unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn mixing_real_demotes_to_real() {
        let a = Scalar::sqrt(2);
        let b = Scalar::from_int(1);
        let sum = &a + &b;
        assert!(!sum.is_rational());
        assert!(sum.precision_bits().unwrap() >= 64);
    }

    #[test]
    fn sqrt_two_is_accurate() {
        let s = Scalar::sqrt(2);
        let x = s.to_f64();
        assert!((x - std::f64::consts::SQRT_2).abs() < 1e-15);
        // approximant squares to 2 within 2^-250
        let sq = s.approx_rational() * s.approx_rational();
        let err = (sq - BigRational::from_integer(2.into())).abs();
        let tiny = BigRational::new(BigInt::one(), BigInt::one() << 250usize);
        assert!(err < tiny);
    }

    #[test]
    fn plus_space_detection() {
        assert!(Scalar::from_ratio(-1, 2).is_plus_space());
        assert!(!Scalar::from_ratio(-1, 3).is_plus_space());
        assert!(!Scalar::sqrt(2).is_plus_space());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Scalar::from_str("3/4").unwrap(), Scalar::from_ratio(3, 4));
        assert_eq!(
            Scalar::from_str("-0.25").unwrap(),
            Scalar::from_ratio(-1, 4)
        );
        assert_eq!(Scalar::from_str("2").unwrap(), Scalar::from_int(2));
        let s = Scalar::from_str("sqrt(2)").unwrap();
        assert!((s.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn serde_round_trip() {
        let vals = [
            Scalar::from_ratio(-7, 3),
            Scalar::from_int(5),
            Scalar::sqrt(3),
        ];
        for v in vals {
            let json = serde_json::to_string(&v).unwrap();
            let back: Scalar = serde_json::from_str(&json).unwrap();
            assert!((back.to_f64() - v.to_f64()).abs() < 1e-14, "{json}");
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Scalar::from_ratio(1, 4).to_decimal_string(6), "0.25");
        assert_eq!(Scalar::from_ratio(-1, 3).to_decimal_string(5), "-0.33333");
        assert_eq!(Scalar::from_int(12).to_decimal_string(4), "12");
    }
}
