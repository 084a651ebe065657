//! Carathéodory distance on the annulus.
//!
//! Two independent evaluations are provided:
//!
//! * [`caratheodory_annulus`] on `A_r = {r < |z| < 1}`, written with the
//!   Schottky–Klein prime function;
//! * [`simha_caratheodory`] on the symmetric annulus `{1/R < |z| < R}`, a
//!   direct product over powers of `R^4`.
//!
//! [`normalize_annulus`] carries one presentation onto the other. Both closed
//! forms assume the first point is a positive real; general points are first
//! rotated, which is an isometry of either annulus.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperbolic::{mu, ComplexPoint, BELOW_ONE};
use crate::prime::{prime_omega, tail_terms, AnnulusDomain, TruncationPolicy};

/// Points closer than this to a boundary circle of `A_r` are rejected by the
/// metric operations.
pub const BOUNDARY_MARGIN: f64 = 1e-9;

/// The annulus `{1/R < |z| < R}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimhaAnnulus {
    big_r: f64,
}

impl SimhaAnnulus {
    pub fn new(big_r: f64) -> Result<Self> {
        if !(big_r > 1.0) || big_r.is_infinite() {
            return Err(Error::domain(format!("outer radius R must be finite and > 1, got {big_r}")));
        }
        Ok(Self { big_r })
    }

    pub fn outer_radius(&self) -> f64 {
        self.big_r
    }

    pub fn contains(&self, z: ComplexPoint) -> bool {
        let m = z.norm();
        1.0 / self.big_r < m && m < self.big_r
    }
}

/// A distance on both scales: `tanh_scale = tanh(hyperbolic)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceValue {
    pub tanh_scale: f64,
    pub hyperbolic: f64,
}

impl DistanceValue {
    /// Builds the pair from the tanh-scale value, clamping rounding excursions
    /// into `[0, 1)`.
    pub fn from_tanh(tanh_scale: f64) -> Self {
        let t = tanh_scale.clamp(0.0, BELOW_ONE);
        Self { tanh_scale: t, hyperbolic: mu(t).expect("clamped into [0, 1)") }
    }

    /// Builds the pair from `L = -ln(tanh_scale)`, keeping full relative
    /// precision in `1 - tanh_scale` when `L` is small.
    pub fn from_log_defect(defect: f64) -> Self {
        let l = defect.max(f64::MIN_POSITIVE);
        let delta = -(-l).exp_m1();
        Self { tanh_scale: (-l).exp().min(BELOW_ONE), hyperbolic: 0.5 * ((2.0 - delta) / delta).ln() }
    }
}

/// Rotates `(a, b)` so that the first point is a positive real.
fn rotate_first_to_positive_axis(a: ComplexPoint, b: ComplexPoint) -> (f64, ComplexPoint) {
    let m = a.norm();
    if a.im == 0.0 && a.re > 0.0 {
        return (a.re, b);
    }
    (m, b * (a.conj() / m))
}

fn check_in_annulus(domain: AnnulusDomain, name: &str, z: ComplexPoint) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) || domain.boundary_gap(z) <= BOUNDARY_MARGIN {
        return Err(Error::domain(format!(
            "{name} = {z} is not inside A_{} (at least {BOUNDARY_MARGIN} from the boundary)",
            domain.r()
        )));
    }
    Ok(())
}

/// Carathéodory distance on `A_r` through the prime function.
pub fn caratheodory_annulus(domain: AnnulusDomain, a: ComplexPoint, b: ComplexPoint) -> Result<DistanceValue> {
    caratheodory_annulus_with(domain, a, b, TruncationPolicy::default())
}

/// [`caratheodory_annulus`] with an explicit truncation policy.
pub fn caratheodory_annulus_with(
    domain: AnnulusDomain,
    a: ComplexPoint,
    b: ComplexPoint,
    policy: TruncationPolicy,
) -> Result<DistanceValue> {
    check_in_annulus(domain, "first point", a)?;
    check_in_annulus(domain, "second point", b)?;
    if a == b {
        return Ok(DistanceValue::from_tanh(0.0));
    }
    Ok(DistanceValue::from_log_defect(annulus_log_defect(domain, a, b, policy)?))
}

/// `-ln tanh c(a, b)` on `A_r`, without the boundary checks.
///
/// With `x = |a|` and `H(u) = |omega(u, x)| / (x |omega(u, 1/x)|)`, the prime
/// function expression reads `tanh c = H(w) H(-r/|w|) / x`. Written out, `H`
/// is a product of factor pairs `|N| / |D|` with `|D|^2 - |N|^2` known in closed
/// form, so each logarithm is taken through `ln_1p` and stays accurate as a
/// point approaches either boundary circle.
pub(crate) fn annulus_log_defect(
    domain: AnnulusDomain,
    a: ComplexPoint,
    b: ComplexPoint,
    policy: TruncationPolicy,
) -> Result<f64> {
    let r = domain.r();
    // the point nearer the boundary goes second
    let rel_gap = |z: ComplexPoint| {
        let m = z.norm();
        (1.0 - m).min((m - r) / r)
    };
    let (a, b) = if rel_gap(b) <= rel_gap(a) { (a, b) } else { (b, a) };
    let m = b.norm();
    let (x, w) = rotate_first_to_positive_axis(a, b);
    let q = r * r;
    let n = defect_terms(q, policy)?;
    let v = Complex64::new(-r / m, 0.0);
    let (outer, inner) = (-modulus_sqr_minus(b, 1.0, 1.0), modulus_sqr_minus(b, r, r));
    let total = if m >= domain.sqrt_r() {
        outer_defect(q, x, w, outer, n) + inner_defect(r, x, v, q * outer / (m * m), n)
    } else {
        inner_defect(r, x, w, inner, n) + outer_defect(q, x, v, inner / (m * m), n)
    };
    Ok(total.max(0.0))
}

/// Factor pairs needed so the neglected tail is below `tol * 1e-4` of the sum.
fn defect_terms(q: f64, policy: TruncationPolicy) -> Result<usize> {
    if q == 0.0 {
        return Ok(0);
    }
    let target = policy.tol() * 1e-4 * (1.0 - q) / 16.0;
    let n = (target.ln() / q.ln()).ceil().max(1.0);
    if n > policy.max_terms() as f64 {
        return Err(Error::Convergence { needed: n as u64, max_terms: policy.max_terms() });
    }
    Ok(n as usize)
}

/// `|z|^2 - s t` with products and sums taken error-free, so the result keeps
/// its relative precision when `|z|` is close to `sqrt(s t)`.
fn modulus_sqr_minus(z: ComplexPoint, s: f64, t: f64) -> f64 {
    let prod = |a: f64, b: f64| {
        let p = a * b;
        (p, a.mul_add(b, -p))
    };
    let sum = |a: f64, b: f64| {
        let h = a + b;
        let v = h - a;
        (h, (a - (h - v)) + (b - v))
    };
    let (re, re_err) = prod(z.re, z.re);
    let (im, im_err) = prod(z.im, z.im);
    let (st, st_err) = prod(s, t);
    let (m2, m2_err) = sum(re, im);
    let (d, d_err) = sum(m2, -st);
    d + (d_err + m2_err + re_err + im_err - st_err)
}

/// `-ln(|N| / |D|)` from `|N|^2`, `|D|^2` and `gap = |D|^2 - |N|^2`.
fn neg_log_ratio(n2: f64, d2: f64, gap: f64) -> f64 {
    if n2 < 0.25 * d2 {
        -0.5 * (n2 / d2).ln()
    } else {
        -0.5 * (-gap / d2).ln_1p()
    }
}

/// `-ln H(u)`; every gap carries the factor `outer = 1 - |u|^2`.
fn outer_defect(q: f64, x: f64, u: ComplexPoint, outer: f64, terms: usize) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    let xu = u * x;
    let mut sum = neg_log_ratio((u - x).norm_sqr(), (one - xu).norm_sqr(), (1.0 - x) * (1.0 + x) * outer);
    let mut qn = 1.0;
    for _ in 0..terms {
        qn *= q;
        let (qx, qn2) = (qn * x, qn * qn);
        sum += neg_log_ratio((u - qx).norm_sqr(), (one - xu * qn).norm_sqr(), (1.0 - qx * qx) * outer);
        sum += neg_log_ratio((x - u * qn).norm_sqr(), (xu - qn).norm_sqr(), -(x * x - qn2) * outer);
    }
    sum
}

/// `-ln(H(u) / x)`, regrouped so every gap carries the factor `inner = |u|^2 - r^2`.
fn inner_defect(r: f64, x: f64, u: ComplexPoint, inner: f64, terms: usize) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    let (q, r2) = (r * r, r * r);
    let xu = u * x;
    let mut sum = 0.0;
    let mut qn = 1.0;
    for _ in 0..=terms {
        let next = qn * q;
        sum += neg_log_ratio(r2 * (x - u * qn).norm_sqr(), (xu - next).norm_sqr(), inner * (x * x - r2 * qn * qn));
        sum += neg_log_ratio((u - next * x).norm_sqr(), r2 * (one - xu * qn).norm_sqr(), -inner * (1.0 - qn * qn * x * x * r2));
        qn = next;
    }
    sum
}

/// The prime function expression evaluated as written, four `omega` calls.
#[cfg(test)]
fn annulus_tanh_direct(domain: AnnulusDomain, a: ComplexPoint, b: ComplexPoint) -> Result<f64> {
    let r = domain.r();
    let policy = TruncationPolicy::default();
    let (x, w) = rotate_first_to_positive_axis(a, b);
    let xc = Complex64::new(x, 0.0);
    let omega = |p: ComplexPoint, q: ComplexPoint| prime_omega(domain, p, q, policy);

    let head = omega(w, xc)?.norm() / (x * omega(w, Complex64::new(1.0 / x, 0.0))?.norm());
    let m = w.norm();
    let near = Complex64::new(-r / m, 0.0);
    let far = Complex64::new(-m / r, 0.0);
    let tail = omega(xc, near)?.norm() / ((r / m) * omega(xc, far)?.norm());
    Ok(head * tail / x)
}

/// Carathéodory distance on `{1/R < |z| < R}` by the direct product formula.
pub fn simha_caratheodory(domain: SimhaAnnulus, a: ComplexPoint, b: ComplexPoint) -> Result<DistanceValue> {
    simha_caratheodory_with(domain, a, b, TruncationPolicy::default())
}

pub fn simha_caratheodory_with(
    domain: SimhaAnnulus,
    a: ComplexPoint,
    b: ComplexPoint,
    policy: TruncationPolicy,
) -> Result<DistanceValue> {
    let big_r = domain.big_r;
    for (name, z) in [("first point", a), ("second point", b)] {
        let m = z.norm();
        let gap = (m - 1.0 / big_r).min(big_r - m) / big_r;
        if !(z.re.is_finite() && z.im.is_finite()) || gap <= BOUNDARY_MARGIN {
            return Err(Error::domain(format!(
                "{name} = {z} is not inside {{1/R < |z| < R}} for R = {big_r}"
            )));
        }
    }
    if a == b {
        return Ok(DistanceValue::from_tanh(0.0));
    }
    let (x, w) = rotate_first_to_positive_axis(a, b);
    let m = w.norm();
    let first = simha_factor(big_r, Complex64::new(x, 0.0), w, policy)?;
    let second = simha_factor(big_r, Complex64::new(1.0 / x, 0.0), Complex64::new(-m, 0.0), policy)?;
    Ok(DistanceValue::from_tanh(first.norm() * second.norm() / (big_r * m)))
}

/// `(1 - b/a) prod (1 - b/(R^4n a))(1 - a/(R^4n b)) / ((1 - ab/R^(4n-2))(1 - 1/(R^(4n-2) ab)))`.
fn simha_factor(big_r: f64, a: ComplexPoint, b: ComplexPoint, policy: TruncationPolicy) -> Result<ComplexPoint> {
    let one = Complex64::new(1.0, 0.0);
    let lead = one - b / a;
    if lead.re == 0.0 && lead.im == 0.0 {
        return Ok(lead);
    }
    let r2 = big_r * big_r;
    let q = 1.0 / (r2 * r2);
    let ratio = (b / a).norm();
    let prod = (a * b).norm();
    let terms = [ratio, 1.0 / ratio, r2 * prod, r2 / prod];
    let weight: f64 = terms.iter().sum();
    let spread = terms.iter().copied().fold(0.0, f64::max);
    let n = tail_terms(q, weight, spread, policy.tol());
    if n > policy.max_terms() as u64 {
        return Err(Error::Convergence { needed: n, max_terms: policy.max_terms() });
    }

    let (b_over_a, a_over_b, ab, inv_ab) = (b / a, a / b, a * b, (a * b).inv());
    let mut acc = lead;
    let mut qn = 1.0;
    for _ in 0..n {
        qn *= q;
        let qd = qn * r2; // R^-(4n-2)
        acc *= (one - b_over_a * qn) * (one - a_over_b * qn) / ((one - ab * qd) * (one - inv_ab * qd));
    }
    Ok(acc)
}

/// Carries `A_r` onto `{1/R < |z| < R}` by `z -> scale * z`; returns `(D, scale)`
/// with `R = scale = r^(-1/2)`.
pub fn normalize_annulus(domain: AnnulusDomain) -> (SimhaAnnulus, f64) {
    let scale = 1.0 / domain.sqrt_r();
    (SimhaAnnulus { big_r: scale }, scale)
}

/// The circular slit map `f(z) = omega(z, -sqrt r) / (sqrt r * omega(z, -1/sqrt r))`.
///
/// Accepts the closed annulus so boundary behaviour can be inspected.
pub fn slit_map(domain: AnnulusDomain, z: ComplexPoint) -> Result<ComplexPoint> {
    let m = z.norm();
    let r = domain.r();
    if !(z.re.is_finite() && z.im.is_finite()) || m < r * (1.0 - 1e-12) || m > 1.0 + 1e-12 {
        return Err(Error::domain(format!("{z} is outside the closed annulus r <= |z| <= 1, r = {r}")));
    }
    let s = domain.sqrt_r();
    let pol = TruncationPolicy::default();
    let num = prime_omega(domain, z, Complex64::new(-s, 0.0), pol)?;
    let den = prime_omega(domain, z, Complex64::new(-1.0 / s, 0.0), pol)?;
    Ok(num / (den * s))
}

/// `tanh c(z, -sqrt r) = f(z)^2 / z` for real `z` in `(r, 1)`, `f` the slit map.
pub fn tanh_c_minus_sqrt_r(domain: AnnulusDomain, z: f64) -> Result<f64> {
    let r = domain.r();
    if !(z > r && z < 1.0) {
        return Err(Error::domain(format!("z = {z} must lie in ({r}, 1)")));
    }
    let f = slit_map(domain, Complex64::new(z, 0.0))?;
    Ok(f.norm_sqr() / z)
}
