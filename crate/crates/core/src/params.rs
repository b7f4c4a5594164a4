//! The five weights (A, B, alpha, beta, gamma), their normalization to the
//! alpha = beta = 1 form, and the exact regime predicates built on them.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, rational_to_f64, Rational};

/// Boundary weights A, B and step weights alpha, beta, gamma.
/// Negative values are permitted; operations that need nonnegativity say so.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub a: Rational,
    pub b: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
}

impl Params {
    pub fn new(a: Rational, b: Rational, alpha: Rational, beta: Rational, gamma: Rational) -> Self {
        Params { a, b, alpha, beta, gamma }
    }

    /// The classic Delannoy weights (all ones).
    pub fn classic() -> Self {
        let one = || Rational::from_integer(1.into());
        Params::new(one(), one(), one(), one(), one())
    }

    pub fn all_nonnegative(&self) -> bool {
        !self.a.is_negative()
            && !self.b.is_negative()
            && !self.alpha.is_negative()
            && !self.beta.is_negative()
            && !self.gamma.is_negative()
    }

    fn require_nonnegative(&self) -> Result<()> {
        if self.all_nonnegative() {
            Ok(())
        } else {
            Err(Error::NegativeParameter(self.to_string()))
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(A={}, B={}, alpha={}, beta={}, gamma={})",
            format_rational(&self.a),
            format_rational(&self.b),
            format_rational(&self.alpha),
            format_rational(&self.beta),
            format_rational(&self.gamma),
        )
    }
}

/// Which of alpha, beta vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormKind {
    /// alpha, beta both nonzero: hats are A/alpha, B/beta, gamma/(alpha beta).
    Full,
    /// alpha != 0 = beta: scale rows by alpha^m; hats A/alpha, B, gamma/alpha.
    RowOnly,
    /// beta != 0 = alpha: scale columns by beta^n; hats A, B/beta, gamma/beta.
    ColOnly,
    /// alpha = beta = 0: the closed form gamma^min(m,n) A^(m-min) B^(n-min) applies.
    BothZero,
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NormKind::Full => "full",
            NormKind::RowOnly => "row_only",
            NormKind::ColOnly => "col_only",
            NormKind::BothZero => "both_zero",
        };
        f.write_str(s)
    }
}

/// Result of rescaling f to the alpha, beta in {0, 1} form:
/// f_hat[m][n] = f[m][n] / (scale_row^m * scale_col^n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedParams {
    pub a_hat: Rational,
    pub b_hat: Rational,
    pub gamma_hat: Rational,
    pub scale_row: Rational,
    pub scale_col: Rational,
    pub kind: NormKind,
}

impl NormalizedParams {
    /// The hat parameters repackaged as a Params value (alpha, beta in {0, 1}).
    pub fn as_params(&self) -> Params {
        let one = Rational::from_integer(1.into());
        let zero = Rational::zero();
        let (al, be) = match self.kind {
            NormKind::Full => (one.clone(), one.clone()),
            NormKind::RowOnly => (one.clone(), zero.clone()),
            NormKind::ColOnly => (zero.clone(), one.clone()),
            NormKind::BothZero => (zero.clone(), zero),
        };
        Params::new(self.a_hat.clone(), self.b_hat.clone(), al, be, self.gamma_hat.clone())
    }
}

/// Rescales the parameters so the surviving step weights are 1.
pub fn normalize(p: &Params) -> NormalizedParams {
    let one = Rational::from_integer(1.into());
    match (p.alpha.is_zero(), p.beta.is_zero()) {
        (false, false) => NormalizedParams {
            a_hat: &p.a / &p.alpha,
            b_hat: &p.b / &p.beta,
            gamma_hat: &p.gamma / (&p.alpha * &p.beta),
            scale_row: p.alpha.clone(),
            scale_col: p.beta.clone(),
            kind: NormKind::Full,
        },
        (false, true) => NormalizedParams {
            a_hat: &p.a / &p.alpha,
            b_hat: p.b.clone(),
            gamma_hat: &p.gamma / &p.alpha,
            scale_row: p.alpha.clone(),
            scale_col: one,
            kind: NormKind::RowOnly,
        },
        (true, false) => NormalizedParams {
            a_hat: p.a.clone(),
            b_hat: &p.b / &p.beta,
            gamma_hat: &p.gamma / &p.beta,
            scale_row: one,
            scale_col: p.beta.clone(),
            kind: NormKind::ColOnly,
        },
        (true, true) => NormalizedParams {
            a_hat: p.a.clone(),
            b_hat: p.b.clone(),
            gamma_hat: p.gamma.clone(),
            scale_row: one.clone(),
            scale_col: one,
            kind: NormKind::BothZero,
        },
    }
}

/// True iff f[m][n] = A^m B^n identically, i.e. AB = beta A + alpha B + gamma.
/// Necessity: f[1][1] must equal AB. Sufficiency follows by induction on the
/// recurrence; the condition is uniform in which of alpha, beta vanish.
pub fn is_geometric(p: &Params) -> bool {
    &p.a * &p.b == &p.beta * &p.a + &p.alpha * &p.b + &p.gamma
}

/// The regime pivot alpha beta + sqrt(alpha beta (alpha beta + gamma))
/// as binary64. Parameters must be nonnegative.
pub fn growth_threshold(p: &Params) -> Result<f64> {
    p.require_nonnegative()?;
    let ab = rational_to_f64(&(&p.alpha * &p.beta));
    let g = rational_to_f64(&p.gamma);
    Ok(ab + (ab * (ab + g)).sqrt())
}

/// Exact comparison of a rational x against the irrational threshold:
/// for x >= alpha beta, x >= T iff (x - alpha beta)^2 >= alpha beta (alpha beta + gamma).
/// The threshold itself is never materialized.
pub fn compare_to_threshold(x: &Rational, p: &Params) -> Result<Ordering> {
    p.require_nonnegative()?;
    let ab = &p.alpha * &p.beta;
    if *x < ab {
        return Ok(Ordering::Less);
    }
    let lhs = (x - &ab) * (x - &ab);
    let rhs = &ab * (&ab + &p.gamma);
    Ok(lhs.cmp(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn p(a: i64, b: i64, al: i64, be: i64, g: i64) -> Params {
        Params::new(int(a), int(b), int(al), int(be), int(g))
    }

    #[test]
    fn normalize_full() {
        let n = normalize(&p(5, 4, 3, 2, 1));
        assert_eq!(n.kind, NormKind::Full);
        assert_eq!(n.a_hat, rat(5, 3));
        assert_eq!(n.b_hat, int(2));
        assert_eq!(n.gamma_hat, rat(1, 6));
        let idn = normalize(&p(1, 1, 1, 1, 1));
        assert_eq!((idn.a_hat, idn.b_hat, idn.gamma_hat), (int(1), int(1), int(1)));
    }

    #[test]
    fn normalize_col_only() {
        let n = normalize(&p(2, 3, 0, 2, 4));
        assert_eq!(n.kind, NormKind::ColOnly);
        assert_eq!(n.a_hat, int(2));
        assert_eq!(n.b_hat, rat(3, 2));
        assert_eq!(n.gamma_hat, int(2));
        assert_eq!(n.scale_col, int(2));
        assert_eq!(n.scale_row, int(1));
    }

    #[test]
    fn geometric_criterion() {
        assert!(is_geometric(&p(3, 2, 1, 1, 1))); // 6 = 2 + 3 + 1
        assert!(!is_geometric(&p(1, 1, 1, 1, 1)));
        assert!(is_geometric(&p(3, 3, 1, 1, 3))); // 9 = 3 + 3 + 3
        // alpha = 0: AB = beta A + gamma
        assert!(is_geometric(&Params::new(int(2), int(3), int(0), int(2), int(2))));
    }

    #[test]
    fn threshold_values() {
        let t = growth_threshold(&p(0, 0, 1, 1, 1)).unwrap();
        assert!((t - (1.0 + 2f64.sqrt())).abs() < 1e-14);
        let t = growth_threshold(&p(0, 0, 1, 1, 0)).unwrap();
        assert_eq!(t, 2.0);
        let t = growth_threshold(&p(0, 0, 3, 2, 1)).unwrap();
        assert!((t - (6.0 + 42f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn threshold_predicate_is_exact() {
        let q = p(0, 0, 3, 2, 1); // T = 6 + sqrt(42) ~ 12.4807
        assert_eq!(compare_to_threshold(&int(10), &q).unwrap(), Ordering::Less);
        assert_eq!(compare_to_threshold(&int(12), &q).unwrap(), Ordering::Less);
        assert_eq!(compare_to_threshold(&int(13), &q).unwrap(), Ordering::Greater);
        // exact equality: alpha=beta=1, gamma=0 -> T = 2
        let r = p(0, 0, 1, 1, 0);
        assert_eq!(compare_to_threshold(&int(2), &r).unwrap(), Ordering::Equal);
        // below alpha*beta short-circuits
        assert_eq!(compare_to_threshold(&rat(1, 2), &r).unwrap(), Ordering::Less);
    }

    #[test]
    fn negative_params_rejected_by_threshold() {
        assert!(growth_threshold(&p(1, 1, -1, 1, 1)).is_err());
        assert!(compare_to_threshold(&int(1), &p(1, 1, 1, 1, -1)).is_err());
    }
}
