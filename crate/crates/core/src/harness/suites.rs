//! Named verification suites.
//!
//! Every suite draws its randomness from a ChaCha stream keyed by the run
//! seed and the suite name, so a suite's output does not depend on which
//! other suites run alongside it.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::RunConfig;
use super::output::SuiteResult;
use crate::annulus_metric::{
    caratheodory_annulus, normalize_annulus, simha_caratheodory, slit_map, tanh_c_minus_sqrt_r,
};
use crate::error::{Error, Result};
use crate::hyperbolic::{disc_automorphism, mu, pseudo_hyperbolic, ComplexPoint, UnitDiscPoint};
use crate::invariants::{
    annulus_gap_report, fridman_injectivity_punctured_disc, general_upper_bound, squeezing_annulus,
    squeezing_punctured_disc, BaseDomain, PuncturedDomain, UnitDisc,
};
use crate::prime::AnnulusDomain;
use crate::topology::{classify, DistanceField, GridSpec};

type SuiteFn = fn(&RunConfig, &mut SuiteResult);

pub struct SuiteDef {
    pub name: &'static str,
    pub formula: &'static str,
    pub tolerance: f64,
    run: SuiteFn,
}

pub const SUITES: &[SuiteDef] = &[
    SuiteDef { name: "prime-antisymmetry", formula: "omega(a,b) = -omega(b,a)", tolerance: 1e-10, run: prime_antisymmetry },
    SuiteDef { name: "prime-conjugation", formula: "omega(conj a,conj b) = conj omega(a,b)", tolerance: 1e-10, run: prime_conjugation },
    SuiteDef { name: "prime-inversion", formula: "omega(1/a,1/b) = -omega(a,b)/(ab)", tolerance: 1e-10, run: prime_inversion },
    SuiteDef { name: "prime-quasi-periodicity", formula: "omega(r^2 a,b) = -b omega(a,b)/a", tolerance: 1e-10, run: prime_quasi_periodicity },
    SuiteDef { name: "cross-formula", formula: "|tanh c_prime - tanh c_simha(scale z, scale w)|", tolerance: 1e-8, run: cross_formula },
    SuiteDef { name: "conjugation-symmetry", formula: "c(z, conj w) = c(z, w), z > 0", tolerance: 1e-10, run: conjugation_symmetry },
    SuiteDef { name: "reflection-identity", formula: "c(z, w) = c(z, r/w), z in (r,1), w in (-1,-r)", tolerance: 1e-10, run: reflection_identity },
    SuiteDef { name: "lemma-min-sqrt-r", formula: "argmin_{w in (-1,-r)} c(z, w) = -sqrt r, offset in grid steps", tolerance: 1.0, run: lemma_min_sqrt_r },
    SuiteDef { name: "slit-boundary", formula: "max ||f(e^it)| - 1|", tolerance: 1e-8, run: slit_boundary },
    SuiteDef { name: "slit-zero", formula: "|f(-sqrt r)|", tolerance: 1e-10, run: slit_zero },
    SuiteDef { name: "slit-inner-circle", formula: "max - min of |f(r e^it)|", tolerance: 1e-6, run: slit_inner_circle },
    SuiteDef { name: "slit-conjugation", formula: "|f(conj z) - conj f(z)|", tolerance: 1e-10, run: slit_conjugation },
    SuiteDef { name: "squeezing-gap", formula: "f(z)^2/z - r/z > tol and > S_A(z), z in (r, sqrt r)", tolerance: 1e-10, run: squeezing_gap },
    SuiteDef { name: "punctured-disc", formula: "S = H^c = i^c = min_K |(w-z)/(1-conj(z)w)|", tolerance: 1e-12, run: punctured_disc },
    SuiteDef { name: "upper-bound", formula: "S, H^c, i^c <= min_K tanh c_Omega(z,w)", tolerance: 1e-12, run: upper_bound },
    SuiteDef { name: "disc-threshold", formula: "simple-connectivity threshold = mu(min_K pseudo-hyp)", tolerance: 2.0, run: disc_threshold },
    SuiteDef { name: "annulus-ball", formula: "ball of A_r\\{p} at 0.99 c(z,p) holds -sqrt r and has a hole", tolerance: 0.01, run: annulus_ball },
    SuiteDef { name: "annulus-squeezing", formula: "S_A(z) = max(|z|, r/|z|)", tolerance: 1e-12, run: annulus_squeezing },
];

const GROUPS: &[(&str, &[&str])] = &[
    ("prime-identities", &["prime-antisymmetry", "prime-conjugation", "prime-inversion", "prime-quasi-periodicity"]),
    ("slit-map", &["slit-boundary", "slit-zero", "slit-inner-circle", "slit-conjugation"]),
    ("theorem-main1", &["punctured-disc", "disc-threshold"]),
    ("theorem-main2", &["punctured-disc"]),
    ("theorem-main3", &["upper-bound"]),
    ("theorem-main10", &["upper-bound"]),
    ("theorem-main11", &["annulus-ball"]),
    ("theorem-main15", &["squeezing-gap"]),
    ("lemma-main500", &["conjugation-symmetry"]),
    ("lemma-main200", &["reflection-identity", "lemma-min-sqrt-r"]),
];

/// Expands suite names, group names and `all` into suite definitions, in
/// declaration order and without duplicates.
pub fn resolve(names: &[String]) -> Result<Vec<&'static SuiteDef>> {
    if names.is_empty() {
        return Err(Error::Config("name at least one suite (or `all`)".into()));
    }
    let mut wanted = vec![false; SUITES.len()];
    for name in names {
        let key = name.replace('_', "-");
        let members: Vec<&str> = if key == "all" {
            SUITES.iter().map(|s| s.name).collect()
        } else if let Some((_, m)) = GROUPS.iter().find(|(g, _)| *g == key) {
            m.to_vec()
        } else {
            vec![key.as_str()]
        };
        for m in members {
            let idx = SUITES.iter().position(|s| s.name == m).ok_or_else(|| Error::UnknownSuite(name.clone()))?;
            wanted[idx] = true;
        }
    }
    Ok(SUITES.iter().zip(wanted).filter(|(_, w)| *w).map(|(s, _)| s).collect())
}

pub fn suite_names() -> Vec<&'static str> {
    let mut names: Vec<&str> = SUITES.iter().map(|s| s.name).collect();
    names.extend(GROUPS.iter().map(|(g, _)| *g));
    names.push("all");
    names
}

/// Runs the named suites; results come back in declaration order.
pub fn run_suites(config: &RunConfig) -> Result<Vec<SuiteResult>> {
    let defs = resolve(&config.targets)?;
    Ok(defs.par_iter().map(|def| run_one(def, config)).collect())
}

fn run_one(def: &SuiteDef, config: &RunConfig) -> SuiteResult {
    let start = Instant::now();
    let tolerance = if def.tolerance > 0.0 && def.name != "disc-threshold" && def.name != "annulus-ball" {
        config.tol_or(def.tolerance)
    } else {
        def.tolerance
    };
    let mut result = SuiteResult::new(def.name, def.formula, tolerance);
    (def.run)(config, &mut result);
    result.wall_clock = start.elapsed();
    result
}

pub(crate) fn rng_for(config: &RunConfig, name: &str) -> ChaCha8Rng {
    // FNV-1a of the suite name selects the stream
    let stream = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(stream);
    rng
}

fn rel_err(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

fn point_with_modulus(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> ComplexPoint {
    Complex64::from_polar(rng.gen_range(lo..hi), rng.gen_range(-PI..PI))
}

/// Uniformly random point of `A_r`, kept `1e-6 (1 - r)` away from the circles.
fn annulus_point(rng: &mut ChaCha8Rng, r: f64) -> ComplexPoint {
    let pad = 1e-6 * (1.0 - r);
    point_with_modulus(rng, r + pad, 1.0 - pad)
}

fn disc_point(rng: &mut ChaCha8Rng, max_modulus: f64) -> UnitDiscPoint {
    let m = max_modulus * rng.gen::<f64>().sqrt();
    UnitDiscPoint::new(Complex64::from_polar(m, rng.gen_range(-PI..PI))).expect("modulus below one")
}

fn sample_modulus(config: &RunConfig, rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    config.r.unwrap_or_else(|| rng.gen_range(lo..hi))
}

const IDENTITY_SAMPLES: usize = 1000;

fn prime_identity(config: &RunConfig, result: &mut SuiteResult, sides: fn(AnnulusDomain, Complex64, Complex64) -> Result<(Complex64, Complex64)>) {
    let mut rng = rng_for(config, &result.suite);
    let n = config.samples.unwrap_or(IDENTITY_SAMPLES);
    for _ in 0..n {
        let r = sample_modulus(config, &mut rng, 0.05, 0.8);
        let a = point_with_modulus(&mut rng, r / 2.0, 2.0);
        let b = point_with_modulus(&mut rng, r / 2.0, 2.0);
        let domain = AnnulusDomain::new(r).expect("r in (0,1)");
        match sides(domain, a, b) {
            Ok((lhs, rhs)) => result.check(rel_err(lhs, rhs)),
            Err(e) => result.fail_case(&e.to_string()),
        }
    }
}

fn prime_antisymmetry(config: &RunConfig, result: &mut SuiteResult) {
    prime_identity(config, result, |d, a, b| Ok((d.omega(a, b)?, -d.omega(b, a)?)));
}

fn prime_conjugation(config: &RunConfig, result: &mut SuiteResult) {
    prime_identity(config, result, |d, a, b| Ok((d.omega(a.conj(), b.conj())?, d.omega(a, b)?.conj())));
}

fn prime_inversion(config: &RunConfig, result: &mut SuiteResult) {
    prime_identity(config, result, |d, a, b| Ok((d.omega(a.inv(), b.inv())?, -d.omega(a, b)? / (a * b))));
}

fn prime_quasi_periodicity(config: &RunConfig, result: &mut SuiteResult) {
    prime_identity(config, result, |d, a, b| {
        let q = d.r() * d.r();
        Ok((d.omega(a * q, b)?, -b * d.omega(a, b)? / a))
    });
}

fn cross_formula(config: &RunConfig, result: &mut SuiteResult) {
    let mut rng = rng_for(config, &result.suite);
    for _ in 0..config.samples.unwrap_or(200) {
        let r = sample_modulus(config, &mut rng, 0.05, 0.7);
        let domain = AnnulusDomain::new(r).expect("r in (0,1)");
        let (a, b) = (annulus_point(&mut rng, r), annulus_point(&mut rng, r));
        let (sym, scale) = normalize_annulus(domain);
        let outcome = caratheodory_annulus(domain, a, b)
            .and_then(|p| Ok((p, simha_caratheodory(sym, a * scale, b * scale)?)));
        match outcome {
            Ok((p, s)) => result.check((p.tanh_scale - s.tanh_scale).abs()),
            Err(e) => result.fail_case(&e.to_string()),
        }
    }
}

fn conjugation_symmetry(config: &RunConfig, result: &mut SuiteResult) {
    let mut rng = rng_for(config, &result.suite);
    for _ in 0..config.samples.unwrap_or(200) {
        let r = sample_modulus(config, &mut rng, 0.05, 0.7);
        let domain = AnnulusDomain::new(r).expect("r in (0,1)");
        let z = Complex64::new(annulus_point(&mut rng, r).norm(), 0.0);
        let w = annulus_point(&mut rng, r);
        let outcome = caratheodory_annulus(domain, z, w)
            .and_then(|a| Ok((a, caratheodory_annulus(domain, z, w.conj())?)));
        match outcome {
            Ok((a, b)) => result.check((a.hyperbolic - b.hyperbolic).abs()),
            Err(e) => result.fail_case(&e.to_string()),
        }
    }
}

const LEMMA_MODULI: [f64; 3] = [0.04, 0.09, 0.25];

fn lemma_moduli(config: &RunConfig) -> Vec<f64> {
    config.r.map_or_else(|| LEMMA_MODULI.to_vec(), |r| vec![r])
}

fn reflection_identity(config: &RunConfig, result: &mut SuiteResult) {
    let mut rng = rng_for(config, &result.suite);
    let moduli = lemma_moduli(config);
    for k in 0..config.samples.unwrap_or(200) {
        let r = moduli[k % moduli.len()];
        let domain = AnnulusDomain::new(r).expect("r in (0,1)");
        let pad = 1e-3 * (1.0 - r);
        let z = Complex64::new(rng.gen_range(r + pad..1.0 - pad), 0.0);
        let w = -rng.gen_range(r + pad..1.0 - pad);
        let outcome = caratheodory_annulus(domain, z, Complex64::new(w, 0.0))
            .and_then(|a| Ok((a, caratheodory_annulus(domain, z, Complex64::new(r / w, 0.0))?)));
        match outcome {
            Ok((a, b)) => result.check((a.hyperbolic - b.hyperbolic).abs()),
            Err(e) => result.fail_case(&e.to_string()),
        }
    }
}

/// Scan of `w -> tanh c(z, w)` over `points` equally spaced points of `(-1, -r)`.
pub struct NegativeAxisScan {
    pub step: f64,
    pub argmin: f64,
    pub min_value: f64,
    pub at_sqrt_r: f64,
    /// Samples farther than `1e-9` from `-sqrt r` whose value does not exceed `at_sqrt_r`.
    pub violations: usize,
}

pub fn scan_negative_axis(domain: AnnulusDomain, z: f64, points: usize) -> Result<NegativeAxisScan> {
    let r = domain.r();
    let step = (1.0 - r) / (points + 1) as f64;
    let zc = Complex64::new(z, 0.0);
    let values = (1..=points)
        .into_par_iter()
        .map(|k| {
            let w = -(r + step * k as f64);
            Ok((w, caratheodory_annulus(domain, zc, Complex64::new(w, 0.0))?.tanh_scale))
        })
        .collect::<Result<Vec<_>>>()?;
    let s = domain.sqrt_r();
    let at_sqrt_r = caratheodory_annulus(domain, zc, Complex64::new(-s, 0.0))?.tanh_scale;
    let (argmin, min_value) = values
        .iter()
        .copied()
        .fold((f64::NAN, f64::INFINITY), |best, (w, v)| if v < best.1 { (w, v) } else { best });
    let violations = values.iter().filter(|(w, v)| (w + s).abs() > 1e-9 && *v <= at_sqrt_r).count();
    Ok(NegativeAxisScan { step, argmin, min_value, at_sqrt_r, violations })
}

fn lemma_min_sqrt_r(config: &RunConfig, result: &mut SuiteResult) {
    let points = config.samples.unwrap_or(10_000).max(10_000);
    for r in lemma_moduli(config) {
        let domain = AnnulusDomain::new(r).expect("r in (0,1)");
        let z = config.z.map_or(0.5 * (r + 1.0), |z| z.re);
        match scan_negative_axis(domain, z, points) {
            Ok(scan) => {
                let offset = (scan.argmin + r.sqrt()).abs();
                result.record(offset / scan.step, offset <= scan.step);
                result.record(scan.violations as f64, scan.violations == 0);
                result.note(&format!("argmin[r={r},z={z}]"), format!("{:.9}", scan.argmin));
            }
            Err(e) => result.fail_case(&e.to_string()),
        }
    }
}

const SLIT_MODULI: [f64; 3] = [0.04, 0.25, 0.5];
const CIRCLE_SAMPLES: usize = 360;

fn slit_moduli(config: &RunConfig) -> Vec<f64> {
    config.r.map_or_else(|| SLIT_MODULI.to_vec(), |r| vec![r])
}

fn circle_moduli(domain: AnnulusDomain, radius: f64) -> Result<Vec<f64>> {
    (0..CIRCLE_SAMPLES)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / CIRCLE_SAMPLES as f64;
            Ok(slit_map(domain, Complex64::from_polar(radius, t))?.norm())
        })
        .collect()
}

fn slit_boundary(config: &RunConfig, result: &mut SuiteResult) {
    for r in slit_moduli(config) {
        let domain = AnnulusDomain::new(r).expect("r in (0,1)");
        match circle_moduli(domain, 1.0) {
            Ok(m) => result.check(m.iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max)),
            Err(e) => result.fail_case(&e.to_string()),
        }
    }
}

fn slit_zero(config: &RunConfig, result: &mut SuiteResult) {
    for r in slit_moduli(config) {
        let domain = AnnulusDomain::new(r).expect("r in (0,1)");
        match slit_map(domain, Complex64::new(-r.sqrt(), 0.0)) {
            Ok(f) => result.check(f.norm()),
            Err(e) => result.fail_case(&e.to_string()),
        }
    }
}

fn slit_inner_circle(config: &RunConfig, result: &mut SuiteResult) {
    for r in slit_moduli(config) {
        let domain = AnnulusDomain::new(r).expect("r in (0,1)");
        match circle_moduli(domain, r) {
            Ok(m) => {
                let lo = m.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = m.iter().copied().fold(0.0, f64::max);
                result.check(hi - lo);
                result.note(&format!("inner_modulus[r={r}]"), format!("{:.12}", 0.5 * (lo + hi)));
            }
            Err(e) => result.fail_case(&e.to_string()),
        }
    }
}

fn slit_conjugation(config: &RunConfig, result: &mut SuiteResult) {
    let mut rng = rng_for(config, &result.suite);
    for r in slit_moduli(config) {
        let domain = AnnulusDomain::new(r).expect("r in (0,1)");
        for _ in 0..CIRCLE_SAMPLES {
            let z = annulus_point(&mut rng, r);
            match slit_map(domain, z).and_then(|f| Ok((f, slit_map(domain, z.conj())?))) {
                Ok((f, g)) => result.check((g - f.conj()).norm()),
                Err(e) => result.fail_case(&e.to_string()),
            }
        }
    }
}

fn squeezing_gap(config: &RunConfig, result: &mut SuiteResult) {
    let n = config.samples.unwrap_or(100);
    let tol = result.tolerance;
    let mut worst = f64::INFINITY;
    for r in slit_moduli(config) {
        let domain = AnnulusDomain::new(r).expect("r in (0,1)");
        let s = r.sqrt();
        for k in 0..n {
            let z = r + (s - r) * (k as f64 + 0.5) / n as f64;
            let margins = tanh_c_minus_sqrt_r(domain, z).and_then(|t| {
                Ok((t - r / z, t - squeezing_annulus(domain, Complex64::new(z, 0.0))?))
            });
            match margins {
                Ok((m1, m2)) => {
                    let m = m1.min(m2);
                    worst = worst.min(m);
                    result.record((tol - m).max(0.0), m > tol);
                }
                Err(e) => result.fail_case(&e.to_string()),
            }
        }
        match annulus_gap_report(domain, 0.5 * (r + s), -s) {
            Ok(rep) => result.record(if rep.passed { 0.0 } else { 1.0 }, rep.passed),
            Err(e) => result.fail_case(&e.to_string()),
        }
    }
    result.note("min_margin", format!("{worst:.6e}"));
}

fn punctured_disc(config: &RunConfig, result: &mut SuiteResult) {
    let mut rng = rng_for(config, &result.suite);
    for _ in 0..config.samples.unwrap_or(500) {
        let z = disc_point(&mut rng, 0.95);
        let count = rng.gen_range(1..=20);
        let k: Vec<UnitDiscPoint> = (0..count).map(|_| disc_point(&mut rng, 0.95)).collect();
        let brute = k
            .iter()
            .map(|&w| disc_automorphism(z, w).norm())
            .fold(f64::INFINITY, f64::min);
        match squeezing_punctured_disc(z, &k).and_then(|s| Ok((s, fridman_injectivity_punctured_disc(z, &k)?))) {
            Ok((s, h)) => result.check((s - brute).abs().max((h - brute).abs()).max((s - h).abs())),
            Err(e) => result.fail_case(&e.to_string()),
        }
    }
}

fn upper_bound(config: &RunConfig, result: &mut SuiteResult) {
    let mut rng = rng_for(config, &result.suite);
    for _ in 0..config.samples.unwrap_or(200) {
        // on the disc the bound is the closed form itself
        let z = disc_point(&mut rng, 0.9);
        let k: Vec<UnitDiscPoint> = (0..rng.gen_range(1..=6)).map(|_| disc_point(&mut rng, 0.9)).collect();
        let kc: Vec<ComplexPoint> = k.iter().map(|p| p.value()).collect();
        match general_upper_bound(z.value(), &kc, &UnitDisc).and_then(|b| Ok((b, squeezing_punctured_disc(z, &k)?))) {
            Ok((b, s)) => result.check((b - s).abs()),
            Err(e) => result.fail_case(&e.to_string()),
        }

        // on an annulus, more punctures can only lower the bound
        let r = sample_modulus(config, &mut rng, 0.05, 0.7);
        let domain = AnnulusDomain::new(r).expect("r in (0,1)");
        let z = annulus_point(&mut rng, r);
        let mut k: Vec<ComplexPoint> = (0..rng.gen_range(1..=4)).map(|_| annulus_point(&mut rng, r)).collect();
        let before = general_upper_bound(z, &k, &domain);
        k.push(annulus_point(&mut rng, r));
        match before.and_then(|b| Ok((b, general_upper_bound(z, &k, &domain)?))) {
            Ok((b, a)) => result.check((a - b).max(0.0)),
            Err(e) => result.fail_case(&e.to_string()),
        }
    }
}

/// One row of the disc threshold experiment.
#[derive(Debug, Clone, Copy)]
pub struct ThresholdCase {
    pub z: ComplexPoint,
    pub w: ComplexPoint,
    pub threshold: f64,
    pub closed_form: f64,
    /// Hyperbolic length of two cell diagonals near the puncture.
    pub slack: f64,
}

impl ThresholdCase {
    pub fn within_slack(&self) -> bool {
        (self.threshold - self.closed_form).abs() <= self.slack
    }
}

/// Random `(z, w)` pair for the disc threshold experiment.
pub fn threshold_pair(rng: &mut ChaCha8Rng) -> (UnitDiscPoint, UnitDiscPoint) {
    loop {
        let z = disc_point(rng, 0.7);
        let w = disc_point(rng, 0.7);
        let rho = pseudo_hyperbolic(z, w);
        if (0.1..0.9).contains(&rho) {
            return (z, w);
        }
    }
}

/// Bisected simple-connectivity threshold of the balls about `z` in `D \ {w}`.
pub fn disc_threshold_case(z: UnitDiscPoint, w: UnitDiscPoint, grid: GridSpec) -> Result<ThresholdCase> {
    let domain = PuncturedDomain::new(BaseDomain::UnitDisc, vec![w.value()])?;
    let field = DistanceField::compute(&domain, z.value(), grid)?;
    let closed_form = mu(pseudo_hyperbolic(z, w))?;
    let threshold = field.simple_connectivity_threshold(1e-3, closed_form + 1.0, 48)?;
    // |d rho| = |dw| / (1 - |w|^2) for the Poincare distance
    let reach = w.value().norm() + 2.0 * grid.cell_diagonal();
    let slack = 2.0 * grid.cell_diagonal() / ((1.0 - reach) * (1.0 + reach));
    Ok(ThresholdCase { z: z.value(), w: w.value(), threshold, closed_form, slack })
}

fn disc_threshold(config: &RunConfig, result: &mut SuiteResult) {
    let mut rng = rng_for(config, &result.suite);
    let grid = match config.grid_spec() {
        Ok(g) => g,
        Err(e) => return result.fail_case(&e.to_string()),
    };
    for _ in 0..config.samples.unwrap_or(10) {
        let (z, w) = threshold_pair(&mut rng);
        match disc_threshold_case(z, w, grid) {
            Ok(case) => result.record((case.threshold - case.closed_form).abs() / case.slack * 2.0, case.within_slack()),
            Err(e) => result.fail_case(&e.to_string()),
        }
    }
    result.note("error_unit", "cells");
}

/// The counterexample ball: `A_r \ {p}` about `z` at `(1 - shrink) c(z, p)`.
#[derive(Debug, Clone, Copy)]
pub struct AnnulusBallCase {
    pub radius: f64,
    pub c_at_sqrt_r: f64,
    pub contains_minus_sqrt_r: bool,
    pub components: usize,
    pub holes: usize,
    pub simply_connected: Option<bool>,
}

pub fn annulus_ball_case(r: f64, z: f64, p: f64, shrink: f64, grid: GridSpec) -> Result<AnnulusBallCase> {
    let annulus = AnnulusDomain::new(r)?;
    let domain = PuncturedDomain::new(BaseDomain::Annulus(annulus), vec![Complex64::new(p, 0.0)])?;
    let zc = Complex64::new(z, 0.0);
    let radius = (1.0 - shrink) * caratheodory_annulus(annulus, zc, Complex64::new(p, 0.0))?.hyperbolic;
    let c_at_sqrt_r = caratheodory_annulus(annulus, zc, Complex64::new(-annulus.sqrt_r(), 0.0))?.hyperbolic;
    let mask = DistanceField::compute(&domain, zc, grid)?.ball(radius);
    let topo = classify(&mask);
    Ok(AnnulusBallCase {
        radius,
        c_at_sqrt_r,
        contains_minus_sqrt_r: mask.contains_point(Complex64::new(-annulus.sqrt_r(), 0.0)),
        components: topo.components,
        holes: topo.holes,
        simply_connected: topo.simply_connected,
    })
}

/// Puncture used by the `annulus-ball` suite unless `--punctures` says otherwise.
pub const DEFAULT_BALL_PUNCTURE: f64 = -0.7;

fn annulus_ball(config: &RunConfig, result: &mut SuiteResult) {
    let r = config.r.unwrap_or(0.25);
    let z = config.z.map_or(0.5, |z| z.re);
    let p = config.punctures.first().map_or(DEFAULT_BALL_PUNCTURE, |p| p.re);
    let grid = match config.grid_spec() {
        Ok(g) => g,
        Err(e) => return result.fail_case(&e.to_string()),
    };
    match annulus_ball_case(r, z, p, result.tolerance, grid) {
        Ok(case) => {
            result.record(0.0, case.contains_minus_sqrt_r);
            result.record(0.0, case.components == 1);
            result.record(0.0, case.simply_connected == Some(false));
            result.note("r", r);
            result.note("z", z);
            result.note("p", p);
            result.note("radius", format!("{:.9}", case.radius));
            result.note("c_z_minus_sqrt_r", format!("{:.9}", case.c_at_sqrt_r));
            result.note("components", case.components);
            result.note("holes", case.holes);
        }
        Err(e) => result.fail_case(&e.to_string()),
    }
}

fn annulus_squeezing(config: &RunConfig, result: &mut SuiteResult) {
    let r = config.r.unwrap_or(0.25);
    let domain = AnnulusDomain::new(r).expect("validated modulus");
    let s = r.sqrt();
    let tol = result.tolerance;
    let mut rng = rng_for(config, &result.suite);
    for k in 0..8 {
        let t = 2.0 * PI * k as f64 / 8.0;
        match squeezing_annulus(domain, Complex64::from_polar(s, t)) {
            Ok(v) => result.check((v - s).abs()),
            Err(e) => result.fail_case(&e.to_string()),
        }
    }
    match super::sweep::squeezing_profile(domain, config.range, config.samples.unwrap_or(100), rng.gen_range(-PI..PI)) {
        Ok(rows) => {
            let mut prev: Option<(f64, f64)> = None;
            for (m, v) in rows {
                result.check((v - m.max(r / m)).abs());
                result.record(0.0, v >= s - tol);
                if let Some((pm, pv)) = prev {
                    let ok = if m <= s { v < pv } else if pm >= s { v > pv } else { true };
                    result.record(0.0, ok);
                }
                prev = Some((m, v));
            }
        }
        Err(e) => result.fail_case(&e.to_string()),
    }
}
