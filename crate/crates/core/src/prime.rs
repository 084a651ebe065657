//! The Schottky–Klein prime function of the annulus `A_r = {r < |z| < 1}`:
//!
//! ```text
//! omega(a, b) = (a - b) * prod_{n >= 1} (a - q^n b)(b - q^n a) / ((a - q^n a)(b - q^n b)),  q = r^2
//! ```
//!
//! The product converges for every pair of nonzero arguments. It is truncated
//! after `N` factors, with `N` chosen from a geometric bound on the tail so
//! that the relative truncation error is at most the policy tolerance.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperbolic::ComplexPoint;

/// The annulus `A_r = {r < |z| < 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnulusDomain {
    r: f64,
}

impl AnnulusDomain {
    pub fn new(r: f64) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::domain(format!("annulus modulus must lie in (0, 1), got {r}")));
        }
        Ok(Self { r })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn sqrt_r(&self) -> f64 {
        self.r.sqrt()
    }

    /// Membership in the open annulus.
    pub fn contains(&self, z: ComplexPoint) -> bool {
        let m = z.norm();
        self.r < m && m < 1.0
    }

    /// Euclidean distance from `z` to the nearer boundary circle; negative outside.
    pub fn boundary_gap(&self, z: ComplexPoint) -> f64 {
        let m = z.norm();
        (m - self.r).min(1.0 - m)
    }

    /// `omega(a, b)` under the default truncation policy.
    pub fn omega(&self, a: ComplexPoint, b: ComplexPoint) -> Result<ComplexPoint> {
        prime_omega(*self, a, b, TruncationPolicy::default())
    }
}

/// Stopping rule for the truncated product.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    tol: f64,
    max_terms: usize,
}

impl TruncationPolicy {
    pub const MIN_TOL: f64 = 1e-15;

    pub fn new(tol: f64, max_terms: usize) -> Result<Self> {
        if !(tol >= Self::MIN_TOL) || !tol.is_finite() {
            return Err(Error::domain(format!("truncation tolerance must be >= 1e-15, got {tol}")));
        }
        if max_terms == 0 {
            return Err(Error::domain("max_terms must be at least 1"));
        }
        Ok(Self { tol, max_terms })
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self { tol: 1e-12, max_terms: 10_000 }
    }
}

fn check_argument(name: &str, z: ComplexPoint) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain(format!("{name} = {z} is not finite")));
    }
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::domain(format!("{name} must be nonzero")));
    }
    Ok(())
}

/// Number of factors needed so that the relative truncation error of
/// `omega(a, b)` is at most `tol`.
///
/// With `q = r^2` and `s = |a/b| + |b/a| + 2` this is the least `N` such that
/// `q^(N+1) * s / (1 - q) <= tol / 4` and `q^(N+1) * max(|a/b|, |b/a|) <= 1/2`.
/// The second condition keeps every omitted factor in the region where
/// `|log(1 - x)| <= 2|x|`, which makes the first one a rigorous bound.
pub fn truncation_terms(domain: AnnulusDomain, a: ComplexPoint, b: ComplexPoint, tol: f64) -> Result<u64> {
    check_argument("first argument", a)?;
    check_argument("second argument", b)?;
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let q = domain.r * domain.r;
    let ratio = (b / a).norm();
    Ok(tail_terms(q, ratio + 1.0 / ratio + 2.0, ratio.max(1.0 / ratio), tol))
}

/// Least `N` with `q^(N+1) * weight / (1 - q) <= tol / 4` and `q^(N+1) * spread <= 1/2`.
///
/// `weight` is the sum of the moduli of the terms `x` in the factors
/// `1 - q^n x` (numerator and denominator alike) and `spread` the largest of
/// them. `u64::MAX` means the bound cannot be met.
pub(crate) fn tail_terms(q: f64, weight: f64, spread: f64, tol: f64) -> u64 {
    let target = (tol * (1.0 - q) / (4.0 * weight)).min(0.5 / spread);

    // q^(N+1) <= target  <=>  N + 1 >= ln(target) / ln(q)
    let estimate = (target.ln() / q.ln()).ceil();
    if !estimate.is_finite() || estimate > 1e15 {
        return u64::MAX;
    }
    let mut n = (estimate as u64).saturating_sub(1);
    // fix up rounding in the logarithms
    while n > 0 && q.powf(n as f64) <= target {
        n -= 1;
    }
    while q.powf((n + 1) as f64) > target {
        n += 1;
    }
    n
}

/// Truncated prime function `omega(a, b)` of `A_r`.
///
/// Arguments may lie anywhere in `C \ {0}`. The leading factor `(a - b)` is
/// kept exact so `omega(z, z)` is exactly zero.
pub fn prime_omega(
    domain: AnnulusDomain,
    a: ComplexPoint,
    b: ComplexPoint,
    policy: TruncationPolicy,
) -> Result<ComplexPoint> {
    let terms = truncation_terms(domain, a, b, policy.tol)?;
    if terms > policy.max_terms as u64 {
        return Err(Error::Convergence { needed: terms, max_terms: policy.max_terms });
    }
    let lead = a - b;
    if lead.re == 0.0 && lead.im == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(lead * product_factors(domain.r * domain.r, a, b, terms))
}

/// `prod_{n=1}^{terms} (a - q^n b)(b - q^n a) / (a b (1 - q^n)^2)`.
fn product_factors(q: f64, a: ComplexPoint, b: ComplexPoint, terms: u64) -> ComplexPoint {
    let inv_ab = (a * b).inv();
    let mut acc = Complex64::new(1.0, 0.0);
    let mut real_den = 1.0;
    let mut qn = 1.0;
    for _ in 0..terms {
        qn *= q;
        acc *= (a - b * qn) * (b - a * qn) * inv_ab;
        let d = 1.0 - qn;
        real_den *= d * d;
    }
    acc / real_den
}
