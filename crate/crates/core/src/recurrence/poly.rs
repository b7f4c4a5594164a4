//! Dense polynomials over exact rationals, ascending degree, no trailing
//! zero coefficients (the zero polynomial is the empty list).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::rational::{rational_to_f64, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval_int(&self, m: i64) -> Rational {
        self.eval(&Rational::from_integer(BigInt::from(m)))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// p(x + s), used when degenerate recurrences are re-indexed.
    pub fn shift_arg(&self, s: i64) -> Poly {
        let s = Rational::from_integer(BigInt::from(s));
        let mut result: Vec<Rational> = Vec::new();
        for c in self.coeffs.iter().rev() {
            // result = result * (x + s) + c
            let mut next = vec![Rational::zero(); result.len() + 1];
            for (i, r) in result.iter().enumerate() {
                next[i + 1] += r;
                next[i] += r * &s;
            }
            if next.is_empty() {
                next.push(Rational::zero());
            }
            next[0] += c;
            result = next;
        }
        Poly::new(result)
    }

    /// All integer roots, exact. Quadratics and below use the discriminant;
    /// higher degrees scan the Cauchy bound window (coefficients in this
    /// project keep it small).
    pub fn integer_roots(&self) -> Vec<i64> {
        if self.is_zero() {
            return vec![];
        }
        match self.degree().unwrap() {
            0 => vec![],
            1 => {
                // c0 + c1 x = 0
                let r = -&self.coeffs[0] / &self.coeffs[1];
                if r.is_integer() {
                    r.to_integer().to_i64().map(|v| vec![v]).unwrap_or_default()
                } else {
                    vec![]
                }
            }
            2 => {
                let (c, b, a) = (&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]);
                let disc = b * b - Rational::from_integer(BigInt::from(4)) * a * c;
                if disc.is_negative() {
                    return vec![];
                }
                let Some(sq) = exact_sqrt(&disc) else { return vec![] };
                let two_a = Rational::from_integer(BigInt::from(2)) * a;
                let mut out = vec![];
                for sign in [1, -1] {
                    let root = (-b + &sq * Rational::from_integer(BigInt::from(sign))) / &two_a;
                    if root.is_integer() {
                        if let Some(v) = root.to_integer().to_i64() {
                            if !out.contains(&v) {
                                out.push(v);
                            }
                        }
                    }
                }
                out.sort_unstable();
                out
            }
            _ => {
                let lead = rational_to_f64(self.leading().unwrap()).abs();
                let bound = 1.0
                    + self
                        .coeffs
                        .iter()
                        .map(|c| rational_to_f64(c).abs() / lead)
                        .fold(0.0f64, f64::max);
                let bound = bound.min(1e6) as i64;
                (-bound..=bound).filter(|&m| self.eval_int(m).is_zero()).collect()
            }
        }
    }
}

/// Exact square root of a nonnegative rational, when it is rational.
fn exact_sqrt(x: &Rational) -> Option<Rational> {
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Clears denominators across all polynomials, divides by the collective
/// content, and flips signs so the first nonzero polynomial's leading
/// coefficient is positive. Makes "equal up to a rational scalar" an exact
/// equality of coefficient lists.
pub fn canonicalize(polys: &[Poly]) -> Vec<Poly> {
    let mut den = BigInt::from(1);
    for p in polys {
        for c in p.coeffs() {
            den = den.lcm(c.denom());
        }
    }
    let mut content = BigInt::zero();
    let scaled: Vec<Vec<BigInt>> = polys
        .iter()
        .map(|p| {
            p.coeffs()
                .iter()
                .map(|c| {
                    let v = (c * Rational::from_integer(den.clone())).to_integer();
                    content = content.gcd(&v);
                    v
                })
                .collect()
        })
        .collect();
    if content.is_zero() {
        return polys.to_vec();
    }
    let mut sign = BigInt::from(1);
    'outer: for p in &scaled {
        if let Some(lead) = p.iter().rev().find(|c| !c.is_zero()) {
            if lead.is_negative() {
                sign = BigInt::from(-1);
            }
            break 'outer;
        }
    }
    let scale = content * sign;
    scaled
        .into_iter()
        .map(|cs| Poly::new(cs.into_iter().map(|c| Rational::from_integer(&c / &scale)).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn canonical_form_strips_trailing_zeros() {
        let p = Poly::new(vec![int(1), int(0), int(0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(Poly::new(vec![int(0)]).is_zero());
    }

    #[test]
    fn eval_and_shift() {
        let p = Poly::from_i64(&[-2726, 2674, 52]); // Example 1's p0
        assert!(p.eval_int(1).is_zero());
        assert_eq!(p.eval_int(0), int(-2726));
        let q = p.shift_arg(2); // q(x) = p(x + 2)
        for m in -3..4 {
            assert_eq!(q.eval_int(m), p.eval_int(m + 2));
        }
    }

    #[test]
    fn integer_roots_quadratic() {
        let p = Poly::from_i64(&[18750, -20625, 1875]); // roots 1 and 10
        assert_eq!(p.integer_roots(), vec![1, 10]);
        let q = Poly::from_i64(&[1, 0, 1]); // no real roots
        assert!(q.integer_roots().is_empty());
        let r = Poly::from_i64(&[2, 1]); // root -2
        assert_eq!(r.integer_roots(), vec![-2]);
        let s = Poly::new(vec![rat(1, 2), int(1)]); // root -1/2, not integer
        assert!(s.integer_roots().is_empty());
    }

    #[test]
    fn integer_roots_cubic_scan() {
        // (x - 3)(x + 1)(x - 7)
        let p = Poly::from_i64(&[21, -17, -9, 1]);
        assert_eq!(p.integer_roots(), vec![-1, 3, 7]);
    }

    #[test]
    fn canonicalize_matches_paper_examples() {
        // scaled and sign-flipped version of Example 2's polynomials
        let polys: Vec<Poly> = [
            vec![rat(-18750, 7), rat(20625, 7), rat(-1875, 7)],
            vec![rat(573500, 7), rat(-457750, 7), rat(41000, 7)],
            vec![rat(-5515600, 7), rat(3443400, 7), rat(-303600, 7)],
            vec![rat(17948160, 7), rat(-9191040, 7), rat(796160, 7)],
            vec![rat(-6967296, 7), rat(3096576, 7), rat(-258048, 7)],
        ]
        .into_iter()
        .map(Poly::new)
        .collect();
        let canon = canonicalize(&polys);
        assert_eq!(canon[0], Poly::from_i64(&[18750, -20625, 1875]));
        assert_eq!(canon[4], Poly::from_i64(&[6967296, -3096576, 258048]));
    }
}
