//! Exact rational scalars and the literal grammar shared by the CLI and all
//! file formats: `[-]digits[/digits]` or `[-]digits.digits`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, canonical after every operation
/// (positive denominator, fully reduced).
pub type Rational = BigRational;

/// Largest number of fractional digits accepted in a decimal literal.
pub const MAX_FRACTION_DIGITS: usize = 18;

/// Shorthand for small rationals in tests and examples.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for small integers.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses the rational literal grammar. Decimal literals are converted
/// exactly over a power-of-ten denominator, never through binary floats.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::BadRationalLiteral(text.to_owned()));
    }
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let value = if let Some((num, den)) = digits.split_once('/') {
        let n = parse_digits(num).ok_or_else(|| Error::BadRationalLiteral(text.to_owned()))?;
        let d = parse_digits(den).ok_or_else(|| Error::BadRationalLiteral(text.to_owned()))?;
        if d.is_zero() {
            return Err(Error::ZeroDenominator(text.to_owned()));
        }
        Rational::new(n, d)
    } else if let Some((whole, frac)) = digits.split_once('.') {
        if frac.len() > MAX_FRACTION_DIGITS {
            return Err(Error::TooManyFractionDigits(text.to_owned(), MAX_FRACTION_DIGITS));
        }
        let w = parse_digits(whole).ok_or_else(|| Error::BadRationalLiteral(text.to_owned()))?;
        let f = parse_digits(frac).ok_or_else(|| Error::BadRationalLiteral(text.to_owned()))?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        Rational::new(w * &scale + f, scale)
    } else {
        let n = parse_digits(digits).ok_or_else(|| Error::BadRationalLiteral(text.to_owned()))?;
        Rational::from_integer(n)
    };
    Ok(if sign < 0 { -value } else { value })
}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Canonical literal: `n` for integers, `n/d` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Nearest binary64 value. Conversion goes through a scaled 64-bit prefix of
/// numerator and denominator so values far outside the f64 range become
/// +-inf / 0 instead of garbage.
pub fn rational_to_f64(x: &Rational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let (m, e) = to_mantissa_exponent(x);
    if e > 2000 {
        return if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    if e < -2000 {
        return 0.0;
    }
    m * 2f64.powi(e as i32)
}

/// Writes x = m * 2^e with |m| in [1, 2). x must be nonzero.
pub fn to_mantissa_exponent(x: &Rational) -> (f64, i64) {
    debug_assert!(!x.is_zero());
    let (nm, ne) = bigint_to_mantissa_exponent(x.numer());
    let (dm, de) = bigint_to_mantissa_exponent(x.denom());
    let mut m = nm / dm;
    let mut e = ne - de;
    // nm/dm is in (1/2, 2); renormalize once if needed
    if m.abs() < 1.0 {
        m *= 2.0;
        e -= 1;
    }
    (m, e)
}

/// Writes n = m * 2^e with |m| in [1, 2). n must be nonzero.
pub fn bigint_to_mantissa_exponent(n: &BigInt) -> (f64, i64) {
    debug_assert!(!n.is_zero());
    let bits = n.bits();
    if bits <= 53 {
        let v = n.to_f64().expect("<=53 bits fits f64 exactly");
        let e = (bits as i64) - 1;
        return (v / 2f64.powi(e as i32), e);
    }
    let shift = bits - 53;
    let top = n >> shift;
    let v = top.to_f64().expect("53-bit prefix fits f64");
    // v in [2^52, 2^53)
    (v / 2f64.powi(52), shift as i64 + 52)
}

/// Exact binomial coefficient with the usual C(p, q) = 0 for q > p >= 0.
pub fn binomial(p: u64, q: u64) -> BigInt {
    if q > p {
        return BigInt::zero();
    }
    let q = q.min(p - q);
    let mut acc = BigInt::one();
    for i in 0..q {
        acc = acc * BigInt::from(p - i) / BigInt::from(i + 1);
    }
    acc
}

/// x^k for possibly negative bases; k = 0 yields one (0^0 = 1 convention).
pub fn pow_rational(x: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut base = x.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    acc
}
