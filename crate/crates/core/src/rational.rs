//! Exact rationals and the helpers shared by every module: the `"p"` /
//! `"p/q"` string form, primitive integer forms, factorials and binomials,
//! and significant-figure rendering.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"` or `"p/q"` with an optional leading `-`. No whitespace,
/// no `+`, nonzero denominator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let numer: BigInt = num.parse().map_err(|_| bad())?;
    let denom: BigInt = match den {
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales a rational vector by a positive factor into coprime integers.
/// The zero vector maps to zeros.
pub fn primitive_form(values: &[Rational]) -> Vec<BigInt> {
    let l = lcm_of_denominators(values);
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| v.numer() * (&l / v.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|v| v / &g).collect()
}

/// Primitive form as rationals with unit denominators.
pub fn primitive_rationals(values: &[Rational]) -> Vec<Rational> {
    primitive_form(values)
        .into_iter()
        .map(Rational::from_integer)
        .collect()
}

/// True when `a = c * b` for some rational `c > 0`.
pub fn same_ray(a: &[Rational], b: &[Rational]) -> bool {
    a.len() == b.len() && primitive_form(a) == primitive_form(b)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Decimal rendering rounded half-to-even at `sig` significant figures, with
/// trailing fractional zeros removed (`0.4`, not `0.400`).
pub fn format_significant(r: &Rational, sig: u32) -> String {
    assert!(sig > 0, "at least one significant figure");
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let x = r.abs();
    let ten = BigInt::from(10);

    // Find e with 10^e <= x < 10^(e+1).
    let mut e: i64 = x.numer().to_string().len() as i64 - x.denom().to_string().len() as i64;
    loop {
        let lo = pow10(e);
        if x < lo {
            e -= 1;
            continue;
        }
        if x >= pow10(e + 1) {
            e += 1;
            continue;
        }
        break;
    }

    // Integer mantissa with `sig` digits: round(x * 10^(sig-1-e)).
    let mut shift = sig as i64 - 1 - e;
    let mut mantissa = round_half_even(&(x.clone() * pow10(shift)));
    if mantissa == ten.pow(sig) {
        mantissa /= &ten;
        shift -= 1;
    }

    let digits = mantissa.to_string();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if shift <= 0 {
        out.push_str(&digits);
        out.push_str(&"0".repeat((-shift) as usize));
        return out;
    }
    let shift = shift as usize;
    let (int_part, frac_part) = if digits.len() > shift {
        let (a, b) = digits.split_at(digits.len() - shift);
        (a.to_string(), b.to_string())
    } else {
        (
            "0".to_string(),
            format!("{}{}", "0".repeat(shift - digits.len()), digits),
        )
    };
    let frac_part = frac_part.trim_end_matches('0');
    out.push_str(&int_part);
    if !frac_part.is_empty() {
        out.push('.');
        out.push_str(frac_part);
    }
    out
}

fn pow10(e: i64) -> Rational {
    let p = BigInt::from(10).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

fn round_half_even(x: &Rational) -> BigInt {
    let floor = x.floor().to_integer();
    let rem = x - Rational::from_integer(floor.clone());
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    if rem > half || (rem == half && floor.is_odd()) {
        floor + 1
    } else {
        floor
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn sign(r: &Rational) -> Sign {
    r.numer().sign()
}

/// Serde adapter storing a rational as its `"p/q"` string.
pub mod serde_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
