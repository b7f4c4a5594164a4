//! Diagonal growth: which of the six regimes applies, the growth base rho,
//! the surd-regime constant K, scaled empirical checks at large n, and the
//! ratio-trajectory dynamics (convergence, cycles, unbounded envelopes)
//! that appear once negative parameters are allowed.

use std::cmp::Ordering;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::grid::compute_diagonal_xfloat;
use crate::params::{compare_to_threshold, is_geometric, normalize, NormKind, Params};
use crate::rational::{rat, rational_to_f64, Rational};
use crate::xfloat::XFloat;

/// Which term of the boundary decomposition dominates the diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// Both A beta and B alpha below the threshold: f[n][n] ~ K rho^n / sqrt(n).
    Surd,
    /// B alpha at or above the threshold and maximal: f[n][n] ~ rho^n.
    BDominant,
    /// A beta at or above the threshold and maximal: f[n][n] ~ rho^n.
    ADominant,
    /// A beta = B alpha strictly above the threshold: f[n][n] ~ 2 rho^n.
    Tie,
    /// The diagonal is exactly geometric (AB = beta A + alpha B + gamma,
    /// or any alpha beta = 0 case, where f[n][n] = rho^n identically).
    Geometric,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Regime::Surd => "surd",
            Regime::BDominant => "b_dominant",
            Regime::ADominant => "a_dominant",
            Regime::Tie => "tie",
            Regime::Geometric => "geometric",
        };
        f.write_str(s)
    }
}

/// The exact comparisons that selected the regime. The selection is
/// reproducible from these fields alone.
#[derive(Clone, Debug)]
pub struct RegimeWitnesses {
    pub a_beta: Rational,
    pub b_alpha: Rational,
    /// a_beta versus the threshold alpha beta + sqrt(alpha beta (alpha beta + gamma)).
    pub cmp_a: Ordering,
    /// b_alpha versus the same threshold.
    pub cmp_b: Ordering,
    /// a_beta versus b_alpha.
    pub cmp_ab: Ordering,
    /// AB = beta A + alpha B + gamma holds exactly.
    pub geometric: bool,
    /// alpha beta = 0 (the diagonal is exactly geometric).
    pub degenerate: bool,
}

impl RegimeWitnesses {
    /// Re-derives the regime from the stored comparisons.
    pub fn replay(&self) -> Regime {
        if self.geometric || self.degenerate {
            Regime::Geometric
        } else if self.cmp_a == Ordering::Less && self.cmp_b == Ordering::Less {
            Regime::Surd
        } else if self.cmp_ab == Ordering::Equal {
            if self.cmp_a == Ordering::Greater {
                Regime::Tie
            } else {
                Regime::BDominant
            }
        } else if self.cmp_ab == Ordering::Less {
            Regime::BDominant
        } else {
            Regime::ADominant
        }
    }
}

/// Growth profile of the diagonal: f[n][n] ~ constant * rho^n * n^prefactor.
#[derive(Clone, Debug)]
pub struct AsymptoticForm {
    pub regime: Regime,
    pub rho: f64,
    /// Exact rho when the regime pins a rational value (dominant, tie,
    /// geometric); None in the surd regime where rho is a surd.
    pub rho_exact: Option<Rational>,
    /// -1/2 in the surd regime, 0 otherwise.
    pub prefactor_exponent: Rational,
    /// K in the surd regime (None when gamma = 0, outside the paper's
    /// hypotheses), 1 for a single dominant term, 2 in the tie case.
    pub constant: Option<f64>,
    pub exact_witnesses: RegimeWitnesses,
}

/// Classifies nonnegative parameters per the six threshold cases.
/// Equality with the threshold selects the dominant-term case, matching the
/// inclusive inequalities of the case list.
pub fn classify(p: &Params) -> Result<AsymptoticForm> {
    if !p.all_nonnegative() {
        return Err(Error::NegativeParameter(p.to_string()));
    }
    let a_beta = &p.a * &p.beta;
    let b_alpha = &p.b * &p.alpha;
    let cmp_a = compare_to_threshold(&a_beta, p)?;
    let cmp_b = compare_to_threshold(&b_alpha, p)?;
    let cmp_ab = a_beta.cmp(&b_alpha);
    let degenerate = normalize(p).kind != NormKind::Full;
    let witnesses = RegimeWitnesses {
        a_beta: a_beta.clone(),
        b_alpha: b_alpha.clone(),
        cmp_a,
        cmp_b,
        cmp_ab,
        geometric: is_geometric(p),
        degenerate,
    };
    let regime = witnesses.replay();

    let form = match regime {
        Regime::Geometric => {
            // Exactly geometric diagonals: AB for the product case, else the
            // alpha beta = 0 closed forms gamma^n / (A beta + gamma)^n / (alpha B + gamma)^n.
            let rho = if witnesses.geometric {
                &p.a * &p.b
            } else if p.alpha.is_zero() && p.beta.is_zero() {
                p.gamma.clone()
            } else if p.alpha.is_zero() {
                &a_beta + &p.gamma
            } else {
                &b_alpha + &p.gamma
            };
            AsymptoticForm {
                regime,
                rho: rational_to_f64(&rho),
                rho_exact: Some(rho),
                prefactor_exponent: Rational::zero(),
                constant: Some(1.0),
                exact_witnesses: witnesses,
            }
        }
        Regime::Surd => {
            let ab = rational_to_f64(&(&p.alpha * &p.beta));
            let g = rational_to_f64(&p.gamma);
            let rho = 2.0 * ab + g + 2.0 * (ab * (ab + g)).sqrt();
            let constant = if p.gamma.is_zero() { None } else { Some(surd_constant(p)) };
            AsymptoticForm {
                regime,
                rho,
                rho_exact: None,
                prefactor_exponent: rat(-1, 2),
                constant,
                exact_witnesses: witnesses,
            }
        }
        Regime::BDominant | Regime::Tie => {
            let rho = &p.b * (&p.alpha * &p.b + &p.gamma) / (&p.b - &p.beta);
            AsymptoticForm {
                regime,
                rho: rational_to_f64(&rho),
                rho_exact: Some(rho),
                prefactor_exponent: Rational::zero(),
                constant: Some(if regime == Regime::Tie { 2.0 } else { 1.0 }),
                exact_witnesses: witnesses,
            }
        }
        Regime::ADominant => {
            let rho = &p.a * (&p.a * &p.beta + &p.gamma) / (&p.a - &p.alpha);
            AsymptoticForm {
                regime,
                rho: rational_to_f64(&rho),
                rho_exact: Some(rho),
                prefactor_exponent: Rational::zero(),
                constant: Some(1.0),
                exact_witnesses: witnesses,
            }
        }
    };
    Ok(form)
}

/// The limit of f[n+1][n+1] / f[n][n]; always exists for nonnegative
/// parameters.
pub fn limit_ratio(p: &Params) -> Result<f64> {
    Ok(classify(p)?.rho)
}

fn surd_constant(p: &Params) -> f64 {
    let a = rational_to_f64(&p.a);
    let b = rational_to_f64(&p.b);
    let al = rational_to_f64(&p.alpha);
    let be = rational_to_f64(&p.beta);
    let g = rational_to_f64(&p.gamma);
    let ab = al * be;
    let r = (g / ab + 1.0).sqrt();
    let numer = g * (a * be + b * al - a * b + g);
    let denom = 2.0
        * std::f64::consts::PI.sqrt()
        * r.sqrt()
        * (a * b * ab * (r - 1.0) + ab * g * (r + 1.0) - (a * be + b * al) * g);
    numer / denom
}

/// The surd-regime constant K. Errors outside the surd regime and for
/// gamma = 0 (the K formula's hypotheses require gamma > 0).
pub fn constant_k(p: &Params) -> Result<f64> {
    let form = classify(p)?;
    if form.regime != Regime::Surd {
        return Err(Error::NotSurdRegime(form.regime.to_string()));
    }
    if p.gamma.is_zero() {
        return Err(Error::GammaZeroConstant);
    }
    Ok(surd_constant(p))
}

/// Desk-scale convergence check: returns (rho_hat, k_hat) where
/// rho_hat = f[n+1][n+1] / f[n][n] and k_hat = f[n][n] sqrt(n) / rho^n,
/// both at n = n_max, computed through the scaled XFloat pipeline.
pub fn empirical_growth(p: &Params, n_max: usize) -> Result<(f64, f64)> {
    if n_max < 100 {
        return Err(Error::Unsupported(format!("empirical_growth needs n_max >= 100, got {n_max}")));
    }
    let form = classify(p)?;
    let log2_scale = -form.rho.log2();
    let diag = compute_diagonal_xfloat(p, n_max + 1, log2_scale)?;
    let rho_hat = diag[n_max + 1].ratio_to_f64(diag[n_max]) * form.rho;
    let k_hat = diag[n_max].to_f64() * (n_max as f64).sqrt();
    Ok((rho_hat, k_hat))
}

/// F[n] = f[n+1][n+1] / f[n][n] for n < n_max via XFloat; entries with a zero
/// denominator come back as NaN. Fine for convergent or envelope questions;
/// cycle-fine structure under sign cancellation wants the exact variant.
pub fn ratio_trajectory(p: &Params, n_max: usize) -> Vec<f64> {
    let diag = compute_diagonal_xfloat(p, n_max, 0.0).expect("unscaled diagonal cannot overflow");
    ratios_xfloat(&diag)
}

fn ratios_xfloat(diag: &[XFloat]) -> Vec<f64> {
    (0..diag.len() - 1).map(|n| diag[n + 1].ratio_to_f64(diag[n])).collect()
}

/// Exact-arithmetic ratio trajectory. The grid runs on scaled big integers
/// (g[m][n] = f[m][n] * D^(m+n) for D the common denominator), so the sweep
/// is gcd-free; only the final ratios are converted to binary64.
pub fn ratio_trajectory_exact(p: &Params, n_max: usize) -> Vec<f64> {
    use num_bigint::BigInt;
    use num_integer::Integer;

    let mut d = num_bigint::BigInt::one();
    for x in [&p.a, &p.b, &p.alpha, &p.beta, &p.gamma] {
        let den = x.denom();
        d = &d / d.gcd(den) * den;
    }
    let to_scaled = |x: &Rational| -> BigInt { (x * Rational::from_integer(d.clone())).to_integer() };
    let a_step = to_scaled(&p.alpha);
    let b_step = to_scaled(&p.beta);
    let g_step = to_scaled(&p.gamma) * &d;
    let a0 = to_scaled(&p.a);
    let b0 = to_scaled(&p.b);

    let mut prev: Vec<BigInt> = Vec::with_capacity(n_max + 2);
    prev.push(BigInt::one());
    for n in 1..=n_max + 1 {
        prev.push(&prev[n - 1] * &b0);
    }
    let mut diag: Vec<BigInt> = Vec::with_capacity(n_max + 2);
    diag.push(prev[0].clone());
    let mut col0 = BigInt::one();
    for m in 1..=n_max + 1 {
        col0 *= &a0;
        let mut cur = Vec::with_capacity(n_max + 2);
        cur.push(col0.clone());
        for n in 1..=n_max + 1 {
            let v: BigInt = &a_step * &prev[n] + &b_step * &cur[n - 1] + &g_step * &prev[n - 1];
            cur.push(v);
        }
        diag.push(cur[m].clone());
        prev = cur;
    }
    let d2 = XFloat::from_bigint(&(&d * &d));
    (0..=n_max)
        .map(|n| {
            if diag[n].is_zero() {
                f64::NAN
            } else {
                XFloat::from_bigint(&diag[n + 1]).ratio_to_f64(XFloat::from_bigint(&diag[n])) / d2.to_f64()
            }
        })
        .collect()
}

/// Ratios of an exact diagonal (used when the diagonal came from a
/// P-recurrence extension rather than the grid sweep).
pub fn ratios_of(values: &[Rational]) -> Vec<f64> {
    (0..values.len() - 1)
        .map(|n| {
            if values[n].is_zero() {
                f64::NAN
            } else {
                XFloat::from_rational(&values[n + 1]).ratio_to_f64(XFloat::from_rational(&values[n]))
            }
        })
        .collect()
}

/// Verdict of the trajectory diagnosis.
#[derive(Clone, Debug, PartialEq)]
pub enum RatioKind {
    Converges,
    KCycle(usize),
    Unbounded,
    UndefinedRatio,
    Inconclusive,
}

impl std::fmt::Display for RatioKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RatioKind::Converges => write!(f, "converges"),
            RatioKind::KCycle(k) => write!(f, "{k}-cycle"),
            RatioKind::Unbounded => write!(f, "unbounded"),
            RatioKind::UndefinedRatio => write!(f, "undefined_ratio"),
            RatioKind::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RatioDiagnosis {
    pub kind: RatioKind,
    /// Limit value (converges), the k cycle values in phase order (k-cycle),
    /// or the peak magnitude (unbounded).
    pub witnesses: Vec<f64>,
    pub n_used: usize,
}

pub const MIN_TRAJECTORY: usize = 64;
const MAX_CYCLE: usize = 6;

/// Burn-in half the trajectory, then test k-periodicity for k = 1..6 with
/// tolerance 1e-6 + 1e-4 max|F|; failing that, call the trajectory unbounded
/// when the last quarter's peak exceeds ten times the preceding quarter's.
/// Undefined entries (NaN) are excluded, not fatal.
pub fn diagnose_ratio(trajectory: &[f64]) -> Result<RatioDiagnosis> {
    let len = trajectory.len();
    if len < MIN_TRAJECTORY {
        return Err(Error::TrajectoryTooShort(len, MIN_TRAJECTORY));
    }
    let start = len / 2;
    let window = &trajectory[start..];
    let defined: Vec<f64> = window.iter().copied().filter(|x| !x.is_nan()).collect();
    if defined.len() < 16 {
        return Ok(RatioDiagnosis { kind: RatioKind::UndefinedRatio, witnesses: vec![], n_used: len });
    }
    let max_abs = defined.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let tol = 1e-6 + 1e-4 * max_abs;

    for k in 1..=MAX_CYCLE {
        let periodic = (0..window.len().saturating_sub(k)).all(|i| {
            let (a, b) = (window[i], window[i + k]);
            a.is_nan() || b.is_nan() || (b - a).abs() <= tol
        });
        if !periodic {
            continue;
        }
        if k == 1 {
            let mean = defined.iter().sum::<f64>() / defined.len() as f64;
            return Ok(RatioDiagnosis { kind: RatioKind::Converges, witnesses: vec![mean], n_used: len });
        }
        // phase means, reported in trajectory-index phase order
        let mut sums = vec![0.0; k];
        let mut counts = vec![0usize; k];
        for (i, x) in window.iter().enumerate() {
            if !x.is_nan() {
                sums[(start + i) % k] += x;
                counts[(start + i) % k] += 1;
            }
        }
        let witnesses: Vec<f64> = (0..k)
            .map(|ph| if counts[ph] > 0 { sums[ph] / counts[ph] as f64 } else { f64::NAN })
            .collect();
        return Ok(RatioDiagnosis { kind: RatioKind::KCycle(k), witnesses, n_used: len });
    }

    let quarter = |lo: usize, hi: usize| -> f64 {
        trajectory[lo..hi].iter().filter(|x| !x.is_nan()).fold(0.0f64, |m, x| m.max(x.abs()))
    };
    let last = quarter(3 * len / 4, len);
    let third = quarter(len / 2, 3 * len / 4);
    if third > 0.0 && last > 10.0 * third {
        return Ok(RatioDiagnosis { kind: RatioKind::Unbounded, witnesses: vec![last], n_used: len });
    }
    Ok(RatioDiagnosis { kind: RatioKind::Inconclusive, witnesses: vec![], n_used: len })
}
