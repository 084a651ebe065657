//! Hyperbolic geometry of the unit disc.
//!
//! Distances come in two scales: the pseudo-hyperbolic distance
//! `|(w - z) / (1 - conj(z) w)|` in `[0, 1)` and the Poincaré distance
//! `mu(rho) = artanh(rho)` in `[0, inf)`. Everything else in the crate that is
//! "on the tanh scale" uses the first convention.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the complex plane.
pub type ComplexPoint = Complex64;

/// Largest `f64` strictly below one.
pub(crate) const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// A point of the open unit disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitDiscPoint(ComplexPoint);

impl UnitDiscPoint {
    pub fn new(value: ComplexPoint) -> Result<Self> {
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::domain(format!("non-finite point {value}")));
        }
        if value.norm() >= 1.0 {
            return Err(Error::domain(format!(
                "{value} is not in the open unit disc (modulus {})",
                value.norm()
            )));
        }
        Ok(Self(value))
    }

    pub fn origin() -> Self {
        Self(Complex64::new(0.0, 0.0))
    }

    pub fn value(self) -> ComplexPoint {
        self.0
    }

    /// `1 - |z|^2`, computed without cancellation near the circle.
    pub(crate) fn defect(self) -> f64 {
        let m = self.0.norm();
        (1.0 - m) * (1.0 + m)
    }
}

impl TryFrom<ComplexPoint> for UnitDiscPoint {
    type Error = Error;

    fn try_from(value: ComplexPoint) -> Result<Self> {
        Self::new(value)
    }
}

impl From<UnitDiscPoint> for ComplexPoint {
    fn from(p: UnitDiscPoint) -> Self {
        p.0
    }
}

/// A radius carried on both the Poincaré scale and the tanh scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusPair {
    pub hyperbolic: f64,
    pub tanh_scale: f64,
}

impl RadiusPair {
    pub fn from_hyperbolic(hyperbolic: f64) -> Result<Self> {
        if !(hyperbolic >= 0.0) || hyperbolic.is_infinite() {
            return Err(Error::domain(format!("hyperbolic radius {hyperbolic} must be finite and >= 0")));
        }
        Ok(Self { hyperbolic, tanh_scale: hyperbolic.tanh().min(BELOW_ONE) })
    }

    pub fn from_tanh(tanh_scale: f64) -> Result<Self> {
        Ok(Self { hyperbolic: mu(tanh_scale)?, tanh_scale })
    }
}

/// The disc automorphism `(xi - z) / (1 - conj(z) xi)` sending `z` to the origin.
pub fn disc_automorphism(z: UnitDiscPoint, xi: UnitDiscPoint) -> ComplexPoint {
    let (z, xi) = (z.0, xi.0);
    (xi - z) / (Complex64::new(1.0, 0.0) - z.conj() * xi)
}

/// Pseudo-hyperbolic distance `|(w - z) / (1 - conj(z) w)|`.
///
/// The result is clamped to the largest double below one, so it stays in
/// `[0, 1)` even when the exact value rounds up to one.
pub fn pseudo_hyperbolic(z: UnitDiscPoint, w: UnitDiscPoint) -> f64 {
    let num = (w.0 - z.0).norm();
    let den = (Complex64::new(1.0, 0.0) - z.0.conj() * w.0).norm();
    (num / den).min(BELOW_ONE)
}

/// `mu(x) = 1/2 log((1 + x) / (1 - x))`, the inverse of `tanh` on `[0, 1)`.
pub fn mu(x: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::domain(format!("mu is defined on [0, 1), got {x}")));
    }
    Ok(0.5 * (x.ln_1p() - (-x).ln_1p()))
}

/// Poincaré distance between two points of the disc.
///
/// Uses `1 - rho^2 = (1 - |z|^2)(1 - |w|^2) / |1 - conj(z) w|^2` so that the
/// value stays accurate when `rho` is within rounding of one.
pub fn poincare_distance(z: UnitDiscPoint, w: UnitDiscPoint) -> f64 {
    let num = (w.0 - z.0).norm();
    let den = (Complex64::new(1.0, 0.0) - z.0.conj() * w.0).norm();
    let rho = num / den;
    if rho < 0.5 {
        return 0.5 * (rho.ln_1p() - (-rho).ln_1p());
    }
    let one_minus_rho_sq = z.defect() * w.defect() / (den * den);
    // artanh(rho) = log((1 + rho) / sqrt(1 - rho^2))
    (1.0 + rho.min(1.0)).ln() - 0.5 * one_minus_rho_sq.ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(re: f64, im: f64) -> UnitDiscPoint {
        UnitDiscPoint::new(Complex64::new(re, im)).unwrap()
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(disc_automorphism(p(0.0, 0.0), p(0.3, 0.4)), Complex64::new(0.3, 0.4));
        assert_eq!(disc_automorphism(p(0.5, 0.0), p(0.5, 0.0)), Complex64::new(0.0, 0.0));
        let v = disc_automorphism(p(0.5, 0.0), p(-0.5, 0.0));
        assert!((v - Complex64::new(-0.8, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rejects_points_off_the_disc() {
        assert!(UnitDiscPoint::new(Complex64::new(1.0, 0.0)).is_err());
        assert!(UnitDiscPoint::new(Complex64::new(0.6, 0.8)).is_err());
        assert!(UnitDiscPoint::new(Complex64::new(f64::NAN, 0.0)).is_err());
        assert!(UnitDiscPoint::new(Complex64::new(0.0, -0.999_999)).is_ok());
    }

    #[test]
    fn pseudo_hyperbolic_examples() {
        let w = p(0.3, -0.4);
        assert_eq!(pseudo_hyperbolic(UnitDiscPoint::origin(), w), 0.5);
        assert_eq!(pseudo_hyperbolic(w, w), 0.0);
        assert!((pseudo_hyperbolic(p(0.5, 0.0), p(-0.5, 0.0)) - 0.8).abs() < 1e-15);
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu(0.0).unwrap(), 0.0);
        assert!((mu(0.37).unwrap().tanh() - 0.37).abs() < 1e-15);
        // 1/2 ln 9
        assert!((mu(0.8).unwrap() - 1.098_612_288_668_109_7).abs() < 1e-14);
        assert!(mu(1.0).is_err());
        assert!(mu(-1e-300).is_err());
        assert!(mu(f64::NAN).is_err());
    }

    #[test]
    fn poincare_examples() {
        let z = p(0.2, 0.1);
        assert_eq!(poincare_distance(z, z), 0.0);
        let d = poincare_distance(UnitDiscPoint::origin(), p(0.5, 0.0));
        // 1/2 ln 3
        assert!((d - 0.549_306_144_334_054_8).abs() < 1e-14);
    }

    #[test]
    fn poincare_distance_is_finite_near_the_circle() {
        let a = p(1.0 - 1e-9, 0.0);
        let b = p(-(1.0 - 1e-9), 0.0);
        let d = poincare_distance(a, b);
        // artanh along a diameter: d(0, a) + d(0, b)
        let half = 0.5 * ((2.0 - 1e-9) / 1e-9f64).ln();
        assert!((d - 2.0 * half).abs() < 1e-6, "{d} vs {}", 2.0 * half);
        assert!(pseudo_hyperbolic(a, b) < 1.0);
    }

    #[test]
    fn radius_pair_round_trip() {
        let rp = RadiusPair::from_tanh(0.5).unwrap();
        assert!((rp.hyperbolic.tanh() - 0.5).abs() < 1e-15);
        let rp = RadiusPair::from_hyperbolic(1.0).unwrap();
        assert!((rp.tanh_scale - 1f64.tanh()).abs() < 1e-16);
        assert!(RadiusPair::from_hyperbolic(-1.0).is_err());
    }

    fn disc_point() -> impl Strategy<Value = UnitDiscPoint> {
        (0.0..0.999f64, 0.0..std::f64::consts::TAU)
            .prop_map(|(m, t)| UnitDiscPoint::new(Complex64::from_polar(m, t)).unwrap())
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
    }

    proptest! {
        #[test]
        fn mobius_invariance(z in disc_point(), a in disc_point(), b in disc_point()) {
            let ga = UnitDiscPoint::new(disc_automorphism(z, a)).unwrap();
            let gb = UnitDiscPoint::new(disc_automorphism(z, b)).unwrap();
            let before = pseudo_hyperbolic(a, b);
            let after = pseudo_hyperbolic(ga, gb);
            // the relative error of rho scales with the conditioning of 1 - rho
            prop_assume!(before < 0.999);
            prop_assert!(rel(before, after) <= 1e-12 || (before - after).abs() < 1e-15,
                "{before} vs {after}");
        }

        #[test]
        fn mu_inverts_tanh(x in 0.0..5.0f64) {
            prop_assert!((mu(x.tanh()).unwrap() - x).abs() <= 1e-12);
        }

        #[test]
        fn tanh_inverts_mu(x in 0.0..(1.0 - 1e-6)) {
            prop_assert!((mu(x).unwrap().tanh() - x).abs() <= 1e-12);
        }

        #[test]
        fn symmetric_and_below_one(a in disc_point(), b in disc_point()) {
            prop_assert_eq!(pseudo_hyperbolic(a, b), pseudo_hyperbolic(b, a));
            prop_assert!(pseudo_hyperbolic(a, b) < 1.0);
        }

        #[test]
        fn poincare_matches_mu_of_pseudo(a in disc_point(), b in disc_point()) {
            let d = poincare_distance(a, b);
            let rho = pseudo_hyperbolic(a, b);
            prop_assume!(rho < 1.0 - 1e-6);
            prop_assert!(rel(d, mu(rho).unwrap()) < 1e-9 || (d - mu(rho).unwrap()).abs() < 1e-14);
        }

        #[test]
        fn triangle_inequality(a in disc_point(), b in disc_point(), c in disc_point()) {
            let (ab, bc, ac) = (poincare_distance(a, b), poincare_distance(b, c), poincare_distance(a, c));
            prop_assert!(ac <= ab + bc + 1e-9 * (1.0 + ac));
        }
    }
}
