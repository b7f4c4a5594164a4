//! Extended-range float: an f64 mantissa in [1, 2) paired with a wide
//! base-2 exponent. The grid values grow like rho^n with rho up to ~26, so
//! binary64 alone dies near n ~ 220 while asymptotic checks need n ~ 10^3..10^4.
//!
//! Every operation renormalizes. Add may cancel catastrophically when signs
//! differ (negative parameters); that is inherent and the callers that care
//! (cycle-fine ratio diagnostics) use exact arithmetic instead.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::rational::{bigint_to_mantissa_exponent, Rational};

/// Value = mantissa * 2^exponent, with |mantissa| in [1, 2), or exactly zero
/// (mantissa = 0, exponent = 0). Sign lives in the mantissa.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XFloat {
    mantissa: f64,
    exponent: i64,
}

/// Exponent alignment beyond which the smaller addend cannot affect the sum.
const ALIGN_LIMIT: i64 = 64;

impl XFloat {
    pub const ZERO: XFloat = XFloat { mantissa: 0.0, exponent: 0 };
    pub const ONE: XFloat = XFloat { mantissa: 1.0, exponent: 0 };

    fn normalized(m: f64, e: i64) -> XFloat {
        if m == 0.0 {
            return XFloat::ZERO;
        }
        debug_assert!(m.is_finite(), "non-finite mantissa");
        let biased = ((m.to_bits() >> 52) & 0x7ff) as i64;
        if biased == 0 {
            // subnormal intermediate; scale into the normal range and retry
            return XFloat::normalized(m * 2f64.powi(64), e - 64);
        }
        let k = biased - 1023;
        XFloat {
            mantissa: m / 2f64.powi(k as i32),
            exponent: e.checked_add(k).expect("xfloat exponent overflow"),
        }
    }

    pub fn from_f64(x: f64) -> XFloat {
        XFloat::normalized(x, 0)
    }

    /// 2^l for arbitrary real l, split exactly into exponent and [1,2) mantissa.
    pub fn exp2(l: f64) -> XFloat {
        let k = l.floor();
        XFloat::normalized(2f64.powf(l - k), k as i64)
    }

    pub fn from_bigint(n: &BigInt) -> XFloat {
        if n.is_zero() {
            return XFloat::ZERO;
        }
        let (m, e) = bigint_to_mantissa_exponent(n);
        XFloat::normalized(m, e)
    }

    pub fn from_rational(x: &Rational) -> XFloat {
        if x.is_zero() {
            return XFloat::ZERO;
        }
        XFloat::from_bigint(x.numer()).div(XFloat::from_bigint(x.denom()))
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0.0
    }

    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn add(self, rhs: XFloat) -> XFloat {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exponent >= rhs.exponent { (self, rhs) } else { (rhs, self) };
        let d = hi.exponent - lo.exponent;
        if d > ALIGN_LIMIT {
            return hi;
        }
        XFloat::normalized(hi.mantissa + lo.mantissa * 2f64.powi(-(d as i32)), hi.exponent)
    }

    pub fn mul(self, rhs: XFloat) -> XFloat {
        if self.is_zero() || rhs.is_zero() {
            return XFloat::ZERO;
        }
        XFloat::normalized(
            self.mantissa * rhs.mantissa,
            self.exponent.checked_add(rhs.exponent).expect("xfloat exponent overflow"),
        )
    }

    pub fn div(self, rhs: XFloat) -> XFloat {
        assert!(!rhs.is_zero(), "xfloat division by zero");
        if self.is_zero() {
            return XFloat::ZERO;
        }
        XFloat::normalized(
            self.mantissa / rhs.mantissa,
            self.exponent.checked_sub(rhs.exponent).expect("xfloat exponent overflow"),
        )
    }

    pub fn neg(self) -> XFloat {
        XFloat { mantissa: -self.mantissa, exponent: self.exponent }
    }

    /// Nearest f64; +-inf / 0 when the exponent leaves the binary64 range.
    pub fn to_f64(self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        if self.exponent > 1024 {
            return f64::INFINITY.copysign(self.mantissa);
        }
        if self.exponent < -1074 {
            return 0.0f64.copysign(self.mantissa);
        }
        self.mantissa * 2f64.powi(self.exponent as i32)
    }

    /// self / rhs as f64 (NaN when rhs is zero); exponents cancel first so
    /// ratios of astronomically large values stay representable.
    pub fn ratio_to_f64(self, rhs: XFloat) -> f64 {
        if rhs.is_zero() {
            return f64::NAN;
        }
        if self.is_zero() {
            return 0.0;
        }
        let d = self.exponent - rhs.exponent;
        if d.abs() > 1000 {
            return if d > 0 { f64::INFINITY.copysign(self.mantissa * rhs.mantissa) } else { 0.0 };
        }
        (self.mantissa / rhs.mantissa) * 2f64.powi(d as i32)
    }

    /// log2 |self|; -inf for zero.
    pub fn log2_abs(self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.exponent as f64 + self.mantissa.abs().log2()
    }
}

impl std::ops::Add for XFloat {
    type Output = XFloat;
    fn add(self, rhs: XFloat) -> XFloat {
        XFloat::add(self, rhs)
    }
}

impl std::ops::Mul for XFloat {
    type Output = XFloat;
    fn mul(self, rhs: XFloat) -> XFloat {
        XFloat::mul(self, rhs)
    }
}

impl std::ops::Neg for XFloat {
    type Output = XFloat;
    fn neg(self) -> XFloat {
        XFloat::neg(self)
    }
}
