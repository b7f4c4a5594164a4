//! Numeric evaluation of the generating functions: the bivariate rational
//! form, the diagonal's algebraic closed form built from the two residues at
//! the small poles, and the classic central integral representation.

use num_traits::Zero;

use crate::asymptotics::limit_ratio;
use crate::error::{Error, Result};
use crate::grid::compute_diagonal;
use crate::params::Params;
use crate::rational::{rational_to_f64, Rational};
use crate::xfloat::XFloat;

const DENOM_GUARD: f64 = 1e-12;

/// Below this z the closed diagonal form loses all significant digits
/// (numerator and one denominator factor are both O(z)); a truncated series
/// of the diagonal is used instead.
pub const SERIES_FALLBACK_Z: f64 = 1e-4;

fn f64_params(p: &Params) -> (f64, f64, f64, f64, f64) {
    (
        rational_to_f64(&p.a),
        rational_to_f64(&p.b),
        rational_to_f64(&p.alpha),
        rational_to_f64(&p.beta),
        rational_to_f64(&p.gamma),
    )
}

/// f(x, y) = sum f[m][n] x^m y^n evaluated through the closed rational form.
///
/// Preconditions: |x| < 1/|A|, |y| < 1/|B| (vacuous for zero A or B), and the
/// sufficient bound |alpha x| + |beta y| + |gamma x y| < 1 for the third
/// denominator factor.
pub fn eval_bivariate(p: &Params, x: f64, y: f64) -> Result<f64> {
    let (a, b, al, be, g) = f64_params(p);
    if a != 0.0 && x.abs() >= 1.0 / a.abs() {
        return Err(Error::GfPrecondition(format!("|x| = {} >= 1/|A| = {}", x.abs(), 1.0 / a.abs())));
    }
    if b != 0.0 && y.abs() >= 1.0 / b.abs() {
        return Err(Error::GfPrecondition(format!("|y| = {} >= 1/|B| = {}", y.abs(), 1.0 / b.abs())));
    }
    let bound = (al * x).abs() + (be * y).abs() + (g * x * y).abs();
    if bound >= 1.0 {
        return Err(Error::GfPrecondition(format!(
            "|alpha x| + |beta y| + |gamma x y| = {bound} >= 1"
        )));
    }
    let numer = 1.0 - al * x - be * y + al * b * x * y + be * a * x * y - a * b * x * y;
    let denom = (1.0 - a * x) * (1.0 - b * y) * (1.0 - al * x - be * y - g * x * y);
    if denom.abs() < DENOM_GUARD {
        return Err(Error::NearZeroDenominator(DENOM_GUARD));
    }
    Ok(numer / denom)
}

/// Truncated diagonal series sum_{n <= terms} f[n][n] z^n in binary64, each
/// term converted through XFloat so huge exact values survive the trip.
pub fn diagonal_series_sum(p: &Params, z: f64, terms: usize) -> f64 {
    let diag = compute_diagonal(p, terms);
    let mut sum = 0.0;
    let mut zp = XFloat::ONE;
    let zx = XFloat::from_f64(z);
    for v in &diag.values {
        sum += XFloat::from_rational(v).mul(zp).to_f64();
        zp = zp * zx;
    }
    sum
}

fn series_terms_for(p: &Params, z: f64, rho: f64) -> usize {
    // geometric tail: once rho z < 1, the remainder after N terms is within
    // a constant of (rho z)^N; aim below 1e-18 relative headroom
    let q = (rho * z.abs()).min(0.9).max(1e-6);
    let n = (1e-18f64.ln() / q.ln()).ceil();
    (n as usize).clamp(8, 400)
}

fn first_summand(p: &Params, z: f64) -> Result<f64> {
    if p.b == p.beta {
        return Ok(0.0);
    }
    let (_, b, al, be, g) = f64_params(p);
    let denom = be - b + al * b * b * z + g * b * z;
    if denom.abs() < DENOM_GUARD {
        return Err(Error::NearZeroDenominator(DENOM_GUARD));
    }
    Ok((-b + be) / denom)
}

fn second_summand(p: &Params, z: f64) -> Result<f64> {
    let (a, b, al, be, g) = f64_params(p);
    let radicand = 1.0 + g * g * z * z - 2.0 * (2.0 * al * be + g) * z;
    if radicand < 0.0 {
        return Err(Error::GfPrecondition(format!("S(z)^2 = {radicand} < 0 at z = {z}")));
    }
    let s = radicand.sqrt();
    let numer = 2.0 * al * z * (al * b + be * a - a * b + g) * (-1.0 + g * z + s);
    let denom = s * (-1.0 + 2.0 * al * b * z + g * z + s) * (2.0 * al + a * (-1.0 + g * z + s));
    if denom.abs() < DENOM_GUARD {
        return Err(Error::NearZeroDenominator(DENOM_GUARD));
    }
    Ok(numer / denom)
}

fn check_diagonal_preconditions(p: &Params, z: f64) -> Result<f64> {
    if !p.all_nonnegative() {
        return Err(Error::NegativeParameter(p.to_string()));
    }
    if z < 0.0 {
        return Err(Error::GfPrecondition(format!("z = {z} < 0")));
    }
    let rho = limit_ratio(p)?;
    if rho > 0.0 && z >= 1.0 / rho {
        return Err(Error::GfPrecondition(format!("z = {z} >= 1/L = {}", 1.0 / rho)));
    }
    Ok(rho)
}

/// G(z) = sum f[n][n] z^n for 0 <= z < 1/L, via the two-residue closed form;
/// for z below `SERIES_FALLBACK_Z`, or whenever alpha = 0 (the second
/// residue degenerates), the truncated series is used instead.
pub fn eval_diagonal_gf(p: &Params, z: f64) -> Result<f64> {
    let rho = check_diagonal_preconditions(p, z)?;
    if z < SERIES_FALLBACK_Z || p.alpha.is_zero() {
        return Ok(diagonal_series_sum(p, z, series_terms_for(p, z, rho)));
    }
    Ok(first_summand(p, z)? + second_summand(p, z)?)
}

/// The two summands of the diagonal closed form (the residues at the small
/// poles s_B and s_-), separately; their sum is eval_diagonal_gf.
pub fn residues_at_small_poles(p: &Params, z: f64) -> Result<(f64, f64)> {
    let _ = check_diagonal_preconditions(p, z)?;
    if p.alpha.is_zero() {
        return Err(Error::Unsupported(
            "residue split needs alpha != 0; the s_- pole degenerates".into(),
        ));
    }
    Ok((first_summand(p, z)?, second_summand(p, z)?))
}

/// Central Delannoy number by quadrature:
/// D[n][n] = (1/pi) Integral_0^pi (3 + 2 sqrt(2) cos t)^(-n-1) dt,
/// the cosine substitution of the classic integral over [3-2sqrt2, 3+2sqrt2]
/// (which removes both endpoint singularities). Composite trapezoid; the
/// integrand is smooth and even-periodic, so convergence is spectral.
pub fn central_integral(n: usize, nodes: usize) -> Result<f64> {
    if nodes < 16 {
        return Err(Error::Unsupported(format!("central_integral needs nodes >= 16, got {nodes}")));
    }
    let c = 2.0 * 2f64.sqrt();
    let h = std::f64::consts::PI / nodes as f64;
    let f = |t: f64| (3.0 + c * t.cos()).powi(-(n as i32) - 1);
    let mut sum = 0.5 * (f(0.0) + f(std::f64::consts::PI));
    for k in 1..nodes {
        sum += f(k as f64 * h);
    }
    Ok(sum * h / std::f64::consts::PI)
}
