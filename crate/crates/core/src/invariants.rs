//! Closed forms and bounds for the squeezing function, the Fridman invariant
//! `H^c` and the injectivity radius function `i^c`.
//!
//! On a finitely punctured disc all three coincide with the distance to the
//! nearest puncture on the pseudo-hyperbolic scale. On a general base domain
//! the same minimum, taken over the base domain's Carathéodory distance, is an
//! upper bound only; [`annulus_gap_report`] quantifies how the bound fails to
//! be attained on a punctured annulus.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::annulus_metric::{annulus_log_defect, caratheodory_annulus, tanh_c_minus_sqrt_r, DistanceValue, BOUNDARY_MARGIN};
use crate::error::{Error, Result};
use crate::hyperbolic::{mu, poincare_distance, pseudo_hyperbolic, ComplexPoint, UnitDiscPoint};
use crate::prime::{AnnulusDomain, TruncationPolicy};

/// Two minima closer than this are reported as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Tolerance used for the strict inequalities in [`annulus_gap_report`].
pub const MARGIN_TOLERANCE: f64 = 1e-10;

/// A planar domain together with its Carathéodory distance.
pub trait CaratheodoryMetric: Sync {
    fn contains(&self, z: ComplexPoint) -> bool;

    /// `tanh c(z, w)`, in `[0, 1)`.
    fn tanh_distance(&self, z: ComplexPoint, w: ComplexPoint) -> Result<f64>;

    /// `c(z, w)` on the hyperbolic scale.
    fn distance(&self, z: ComplexPoint, w: ComplexPoint) -> Result<f64> {
        mu(self.tanh_distance(z, w)?)
    }

    fn describe(&self) -> String;
}

/// The unit disc, where `c` is the Poincaré distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct UnitDisc;

impl CaratheodoryMetric for UnitDisc {
    fn contains(&self, z: ComplexPoint) -> bool {
        UnitDiscPoint::new(z).is_ok()
    }

    fn tanh_distance(&self, z: ComplexPoint, w: ComplexPoint) -> Result<f64> {
        Ok(pseudo_hyperbolic(UnitDiscPoint::new(z)?, UnitDiscPoint::new(w)?))
    }

    fn distance(&self, z: ComplexPoint, w: ComplexPoint) -> Result<f64> {
        Ok(poincare_distance(UnitDiscPoint::new(z)?, UnitDiscPoint::new(w)?))
    }

    fn describe(&self) -> String {
        "unit disc".to_string()
    }
}

impl CaratheodoryMetric for AnnulusDomain {
    fn contains(&self, z: ComplexPoint) -> bool {
        z.re.is_finite() && z.im.is_finite() && self.boundary_gap(z) > BOUNDARY_MARGIN
    }

    fn tanh_distance(&self, z: ComplexPoint, w: ComplexPoint) -> Result<f64> {
        Ok(caratheodory_annulus(*self, z, w)?.tanh_scale)
    }

    fn distance(&self, z: ComplexPoint, w: ComplexPoint) -> Result<f64> {
        Ok(caratheodory_annulus(*self, z, w)?.hyperbolic)
    }

    fn describe(&self) -> String {
        format!("annulus r={}", self.r())
    }
}

/// The base domain `Omega` from which punctures are removed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseDomain {
    UnitDisc,
    Annulus(AnnulusDomain),
}

impl BaseDomain {
    /// Hyperbolic distance without membership checks; callers guarantee both
    /// points are inside.
    pub(crate) fn distance_unchecked(&self, z: ComplexPoint, w: ComplexPoint) -> Result<f64> {
        if z == w {
            return Ok(0.0);
        }
        Ok(match self {
            BaseDomain::UnitDisc => poincare_distance(UnitDiscPoint::new(z)?, UnitDiscPoint::new(w)?),
            BaseDomain::Annulus(a) => {
                DistanceValue::from_log_defect(annulus_log_defect(*a, z, w, TruncationPolicy::default())?).hyperbolic
            }
        })
    }
}

impl CaratheodoryMetric for BaseDomain {
    fn contains(&self, z: ComplexPoint) -> bool {
        match self {
            BaseDomain::UnitDisc => UnitDisc.contains(z),
            BaseDomain::Annulus(a) => a.contains(z),
        }
    }

    fn tanh_distance(&self, z: ComplexPoint, w: ComplexPoint) -> Result<f64> {
        match self {
            BaseDomain::UnitDisc => UnitDisc.tanh_distance(z, w),
            BaseDomain::Annulus(a) => CaratheodoryMetric::tanh_distance(a, z, w),
        }
    }

    fn distance(&self, z: ComplexPoint, w: ComplexPoint) -> Result<f64> {
        match self {
            BaseDomain::UnitDisc => UnitDisc.distance(z, w),
            BaseDomain::Annulus(a) => CaratheodoryMetric::distance(a, z, w),
        }
    }

    fn describe(&self) -> String {
        match self {
            BaseDomain::UnitDisc => UnitDisc.describe(),
            BaseDomain::Annulus(a) => a.describe(),
        }
    }
}

/// `Omega \ K` for a finite puncture set `K`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PuncturedDomain {
    base: BaseDomain,
    punctures: Vec<ComplexPoint>,
}

impl PuncturedDomain {
    pub fn new(base: BaseDomain, punctures: Vec<ComplexPoint>) -> Result<Self> {
        if punctures.is_empty() {
            return Err(Error::domain("puncture set must be nonempty"));
        }
        Self::build(base, punctures)
    }

    /// The base domain itself, with no punctures. Only meaningful for ball
    /// sampling; the invariants need at least one puncture.
    pub fn without_punctures(base: BaseDomain) -> Self {
        Self { base, punctures: Vec::new() }
    }

    fn build(base: BaseDomain, punctures: Vec<ComplexPoint>) -> Result<Self> {
        for (i, p) in punctures.iter().enumerate() {
            if !base.contains(*p) {
                return Err(Error::domain(format!("puncture {p} is not inside the {}", base.describe())));
            }
            if punctures[..i].contains(p) {
                return Err(Error::domain(format!("puncture {p} is listed twice")));
            }
        }
        Ok(Self { base, punctures })
    }

    pub fn base(&self) -> BaseDomain {
        self.base
    }

    pub fn punctures(&self) -> &[ComplexPoint] {
        &self.punctures
    }

    pub fn contains(&self, z: ComplexPoint) -> bool {
        self.base.contains(z) && !self.punctures.contains(&z)
    }
}

fn nearest_pseudo_hyperbolic(z: UnitDiscPoint, punctures: &[UnitDiscPoint]) -> Result<f64> {
    if punctures.is_empty() {
        return Err(Error::domain("puncture set must be nonempty"));
    }
    let mut best = f64::INFINITY;
    for &w in punctures {
        let d = pseudo_hyperbolic(z, w);
        if d == 0.0 {
            return Err(Error::domain(format!("{} is a puncture, not a point of the domain", z.value())));
        }
        best = best.min(d);
    }
    Ok(best)
}

/// Squeezing function of `D \ K`: `min_{w in K} |(w - z) / (1 - conj(z) w)|`.
pub fn squeezing_punctured_disc(z: UnitDiscPoint, punctures: &[UnitDiscPoint]) -> Result<f64> {
    nearest_pseudo_hyperbolic(z, punctures)
}

/// Fridman invariant `H^c` of `D \ K`, which equals the injectivity radius
/// function `i^c` there. Same value as [`squeezing_punctured_disc`].
pub fn fridman_injectivity_punctured_disc(z: UnitDiscPoint, punctures: &[UnitDiscPoint]) -> Result<f64> {
    nearest_pseudo_hyperbolic(z, punctures)
}

/// Indices of the punctures attaining the minimum within [`TIE_TOLERANCE`].
pub fn nearest_punctures<M: CaratheodoryMetric + ?Sized>(
    z: ComplexPoint,
    punctures: &[ComplexPoint],
    metric: &M,
) -> Result<(f64, Vec<usize>)> {
    let values = punctures
        .iter()
        .map(|&w| metric.tanh_distance(z, w))
        .collect::<Result<Vec<_>>>()?;
    let best = values.iter().copied().fold(f64::INFINITY, f64::min);
    let witnesses = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v - best <= TIE_TOLERANCE)
        .map(|(i, _)| i)
        .collect();
    Ok((best, witnesses))
}

/// `min_{w in K} tanh c_Omega(z, w)`, an upper bound for `S`, `H^c` and `i^c`
/// on `Omega \ K`.
pub fn general_upper_bound<M: CaratheodoryMetric + ?Sized>(
    z: ComplexPoint,
    punctures: &[ComplexPoint],
    metric: &M,
) -> Result<f64> {
    if punctures.is_empty() {
        return Err(Error::domain("puncture set must be nonempty"));
    }
    if !metric.contains(z) {
        return Err(Error::domain(format!("{z} is not inside the {}", metric.describe())));
    }
    if punctures.contains(&z) {
        return Err(Error::domain(format!("{z} is a puncture, not a point of the domain")));
    }
    let mut best = f64::INFINITY;
    for &w in punctures {
        best = best.min(metric.tanh_distance(z, w)?);
    }
    Ok(best)
}

/// Squeezing function of the annulus, `max(|z|, r/|z|)`.
pub fn squeezing_annulus(domain: AnnulusDomain, z: ComplexPoint) -> Result<f64> {
    let m = z.norm();
    if !(m > domain.r() && m < 1.0) {
        return Err(Error::domain(format!("{z} is not inside A_{}", domain.r())));
    }
    Ok(m.max(domain.r() / m))
}

/// Converts the tanh-scale Fridman invariant `H` into the original `h = 1 / artanh(H)`.
#[allow(non_snake_case)]
pub fn fridman_h_from_H(H: f64) -> Result<f64> {
    if !(H > 0.0 && H < 1.0) {
        return Err(Error::domain(format!("H must lie in (0, 1), got {H}")));
    }
    Ok(1.0 / mu(H)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub name: String,
    pub formula: String,
    pub value: f64,
}

/// A difference that the theory says is strictly positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Margin {
    pub name: String,
    pub value: f64,
    pub passed: bool,
}

/// One evaluation: inputs, computed values, margins and verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub domain: String,
    pub z: ComplexPoint,
    pub punctures: Vec<ComplexPoint>,
    pub quantities: Vec<Quantity>,
    pub margins: Vec<Margin>,
    /// Punctures attaining the minimum.
    pub witnesses: Vec<ComplexPoint>,
    pub tolerance: f64,
    pub passed: bool,
    /// Not serialized, so that report files are reproducible byte for byte.
    #[serde(skip)]
    pub wall_clock: Duration,
}

impl InvariantReport {
    fn new(domain: String, z: ComplexPoint, punctures: Vec<ComplexPoint>, tolerance: f64) -> Self {
        Self {
            domain,
            z,
            punctures,
            quantities: Vec::new(),
            margins: Vec::new(),
            witnesses: Vec::new(),
            tolerance,
            passed: true,
            wall_clock: Duration::ZERO,
        }
    }

    fn push(&mut self, name: &str, formula: &str, value: f64) {
        self.quantities.push(Quantity { name: name.into(), formula: formula.into(), value });
    }

    fn require_positive(&mut self, name: &str, value: f64) {
        let passed = value > self.tolerance;
        self.passed &= passed;
        self.margins.push(Margin { name: name.into(), value, passed });
    }

    pub fn quantity(&self, name: &str) -> Option<f64> {
        self.quantities.iter().find(|q| q.name == name).map(|q| q.value)
    }

    pub fn margin(&self, name: &str) -> Option<&Margin> {
        self.margins.iter().find(|m| m.name == name)
    }
}

/// Report for `D \ K`: the common value of `S`, `H^c`, `i^c`, the Fridman
/// `h`, and the nearest punctures.
pub fn punctured_disc_report(z: UnitDiscPoint, punctures: &[UnitDiscPoint]) -> Result<InvariantReport> {
    let start = Instant::now();
    let k: Vec<ComplexPoint> = punctures.iter().map(|p| p.value()).collect();
    let mut report = InvariantReport::new(UnitDisc.describe(), z.value(), k.clone(), TIE_TOLERANCE);
    let s = squeezing_punctured_disc(z, punctures)?;
    let h = fridman_injectivity_punctured_disc(z, punctures)?;
    report.push("squeezing", "min_K |(w-z)/(1-conj(z)w)|", s);
    report.push("fridman_H", "min_K |(w-z)/(1-conj(z)w)|", h);
    report.push("injectivity_radius", "min_K |(w-z)/(1-conj(z)w)|", h);
    report.push("fridman_h", "1/artanh(H)", fridman_h_from_H(h)?);
    let (_, idx) = nearest_punctures(z.value(), &k, &UnitDisc)?;
    report.witnesses = idx.into_iter().map(|i| k[i]).collect();
    report.wall_clock = start.elapsed();
    Ok(report)
}

/// Compares the puncture bound with what an annulus with one real puncture
/// `p` admits, for a real base point `z`.
///
/// `p` may range over `(-1, -sqrt r]`; at `p = -sqrt r` the report covers the
/// squeezing-function counterexample, for `p < -sqrt r` it also records how far
/// `tanh c(z, p)` exceeds the minimum `tanh c(z, -sqrt r)` over the negative axis.
pub fn annulus_gap_report(domain: AnnulusDomain, z: f64, p: f64) -> Result<InvariantReport> {
    let start = Instant::now();
    let r = domain.r();
    let s = domain.sqrt_r();
    if !(z > r && z < 1.0) {
        return Err(Error::domain(format!("z = {z} must lie in ({r}, 1)")));
    }
    let at_sqrt_r = (p + s).abs() <= 1e-12 * s;
    if !(p > -1.0 && (p < -s || at_sqrt_r)) {
        return Err(Error::domain(format!("p = {p} must lie in (-1, -sqrt r] = (-1, {})", -s)));
    }
    let zc = Complex64::new(z, 0.0);
    let pc = Complex64::new(p, 0.0);
    let mut report = InvariantReport::new(domain.describe(), zc, vec![pc], MARGIN_TOLERANCE);

    let tanh_zp = caratheodory_annulus(domain, zc, pc)?.tanh_scale;
    let bound = general_upper_bound(zc, &[pc], &domain)?;
    let squeeze = squeezing_annulus(domain, zc)?;
    let closed = tanh_c_minus_sqrt_r(domain, z)?;
    report.push("tanh_c_z_p", "prime-function carath. distance", tanh_zp);
    report.push("upper_bound", "min_K tanh c_A(z,w)", bound);
    report.push("squeezing_annulus", "max(|z|, r/|z|)", squeeze);
    report.push("tanh_c_z_minus_sqrt_r", "f(z)^2/z, slit map f", closed);
    report.push("r_over_z", "r/z", r / z);
    report.witnesses = vec![pc];

    if !at_sqrt_r {
        // -sqrt r lies in every ball of radius close to c(z, p)
        report.require_positive("tanh_c_z_p_minus_min_on_negative_axis", tanh_zp - closed);
    }
    if z < s {
        report.require_positive("tanh_c_z_minus_sqrt_r_minus_r_over_z", closed - r / z);
        report.require_positive("upper_bound_minus_squeezing_annulus", bound - squeeze);
    }
    report.wall_clock = start.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(re: f64, im: f64) -> UnitDiscPoint {
        UnitDiscPoint::new(Complex64::new(re, im)).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn squeezing_examples() {
        assert_eq!(squeezing_punctured_disc(d(0.0, 0.0), &[d(0.5, 0.0)]).unwrap(), 0.5);
        let v = squeezing_punctured_disc(d(0.3, 0.0), &[d(0.5, 0.0), d(-0.5, 0.0)]).unwrap();
        assert!((v - 4.0 / 17.0).abs() < 1e-15);
        let h = fridman_injectivity_punctured_disc(d(0.3, 0.0), &[d(0.5, 0.0), d(-0.5, 0.0)]).unwrap();
        assert_eq!(v, h);
        assert_eq!(fridman_injectivity_punctured_disc(d(0.0, 0.0), &[d(0.5, 0.0)]).unwrap(), 0.5);
    }

    #[test]
    fn squeezing_errors() {
        assert!(squeezing_punctured_disc(d(0.5, 0.0), &[d(0.5, 0.0)]).is_err());
        assert!(squeezing_punctured_disc(d(0.5, 0.0), &[]).is_err());
    }

    #[test]
    fn mobius_covariance() {
        let z = d(0.2, -0.6);
        let k = [d(0.1, 0.1), d(-0.7, 0.2), d(0.5, 0.5)];
        let moved: Vec<_> = k
            .iter()
            .map(|&w| d(crate::hyperbolic::disc_automorphism(z, w).re, crate::hyperbolic::disc_automorphism(z, w).im))
            .collect();
        let a = squeezing_punctured_disc(z, &k).unwrap();
        let b = squeezing_punctured_disc(UnitDiscPoint::origin(), &moved).unwrap();
        assert!((a - b).abs() < 1e-13);
    }

    #[test]
    fn upper_bound_reduces_to_squeezing_on_the_disc() {
        let z = d(0.1, 0.3);
        let k = [d(0.4, -0.2), d(-0.3, 0.5)];
        let kc: Vec<_> = k.iter().map(|p| p.value()).collect();
        assert_eq!(general_upper_bound(z.value(), &kc, &UnitDisc).unwrap(), squeezing_punctured_disc(z, &k).unwrap());
    }

    #[test]
    fn upper_bound_on_the_annulus() {
        let a = AnnulusDomain::new(0.1).unwrap();
        let v = general_upper_bound(c(0.5, 0.0), &[c(-0.5, 0.0)], &a).unwrap();
        let w = caratheodory_annulus(a, c(0.5, 0.0), c(-0.5, 0.0)).unwrap().tanh_scale;
        assert_eq!(v, w);
        let more = general_upper_bound(c(0.5, 0.0), &[c(-0.5, 0.0), c(0.6, 0.1)], &a).unwrap();
        assert!(more <= v);
        assert!(general_upper_bound(c(0.05, 0.0), &[c(-0.5, 0.0)], &a).is_err());
        assert!(general_upper_bound(c(-0.5, 0.0), &[c(-0.5, 0.0)], &a).is_err());
    }

    #[test]
    fn annulus_squeezing_examples() {
        let a = AnnulusDomain::new(0.25).unwrap();
        assert_eq!(squeezing_annulus(a, c(0.5, 0.0)).unwrap(), 0.5);
        assert_eq!(squeezing_annulus(a, c(0.7, 0.0)).unwrap(), 0.7);
        for t in [0.0, 1.0, 2.5, -1.2] {
            let v = squeezing_annulus(a, Complex64::from_polar(0.4, t)).unwrap();
            assert!((v - 0.625).abs() < 1e-15);
        }
        assert!(squeezing_annulus(a, c(0.2, 0.0)).is_err());
        assert!(squeezing_annulus(a, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn fridman_h_examples() {
        assert!((fridman_h_from_H(1f64.tanh()).unwrap() - 1.0).abs() < 1e-14);
        assert!((fridman_h_from_H(0.5).unwrap() - 1.820_478_453_253_674_8).abs() < 1e-13);
        assert!(fridman_h_from_H(1.0 - 1e-12).unwrap() < 0.1);
        assert!(fridman_h_from_H(0.0).is_err());
        assert!(fridman_h_from_H(1.0).is_err());
        assert!(fridman_h_from_H(0.9).unwrap() < fridman_h_from_H(0.8).unwrap());
    }

    #[test]
    fn punctured_domain_validation() {
        assert!(PuncturedDomain::new(BaseDomain::UnitDisc, vec![]).is_err());
        assert!(PuncturedDomain::new(BaseDomain::UnitDisc, vec![c(1.2, 0.0)]).is_err());
        assert!(PuncturedDomain::new(BaseDomain::UnitDisc, vec![c(0.2, 0.0), c(0.2, 0.0)]).is_err());
        let a = BaseDomain::Annulus(AnnulusDomain::new(0.3).unwrap());
        assert!(PuncturedDomain::new(a, vec![c(0.1, 0.0)]).is_err());
        let dom = PuncturedDomain::new(a, vec![c(-0.6, 0.0)]).unwrap();
        assert!(dom.contains(c(0.5, 0.0)) && !dom.contains(c(-0.6, 0.0)));
    }

    #[test]
    fn tied_punctures_are_all_witnesses() {
        let report = punctured_disc_report(d(0.0, 0.0), &[d(0.5, 0.0), d(-0.5, 0.0), d(0.0, 0.7)]).unwrap();
        assert_eq!(report.witnesses, vec![c(0.5, 0.0), c(-0.5, 0.0)]);
        assert_eq!(report.quantity("squeezing"), Some(0.5));
    }

    #[test]
    fn gap_report_margins() {
        let a = AnnulusDomain::new(0.25).unwrap();
        let rep = annulus_gap_report(a, 0.4, -0.5).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!(rep.quantity("tanh_c_z_p").unwrap() > 0.625);
        assert_eq!(rep.quantity("squeezing_annulus"), Some(0.625));
        assert!(rep.margin("tanh_c_z_minus_sqrt_r_minus_r_over_z").unwrap().value > 0.0);

        let rep = annulus_gap_report(a, 0.4, -0.7).unwrap();
        assert!(rep.passed);
        assert!(rep.margin("tanh_c_z_p_minus_min_on_negative_axis").unwrap().value > 0.0);

        assert!(annulus_gap_report(a, 0.4, -0.3).is_err());
        assert!(annulus_gap_report(a, 0.2, -0.7).is_err());
    }

    #[test]
    fn non_hhr_behaviour() {
        let w = d(0.3, 0.4);
        let mut last = f64::INFINITY;
        for k in 1..12 {
            let eps = 0.5f64.powi(k);
            let z = d(0.3 + eps * 0.1, 0.4 - eps * 0.1);
            let s = squeezing_punctured_disc(z, &[w]).unwrap();
            assert!(s < last);
            last = s;
        }
        assert!(last < 1e-3);
    }
}
