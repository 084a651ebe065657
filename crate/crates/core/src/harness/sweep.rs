use std::time::Instant;

use num_complex::Complex64;

use super::config::{OutputFormat, RunConfig};
use super::output::{SuiteResult, Table};
use super::suites::{disc_threshold_case, rng_for, scan_negative_axis, threshold_pair};
use crate::annulus_metric::{caratheodory_annulus, tanh_c_minus_sqrt_r};
use crate::error::{Error, Result};
use crate::invariants::{squeezing_annulus, MARGIN_TOLERANCE};
use crate::prime::AnnulusDomain;
use crate::topology::svg_heatmap;

pub const SWEEP_TARGETS: &[&str] = &["squeezing-annulus", "sqrt-r-margin", "disc-threshold", "negative-axis"];

/// `(|z|, S_A(|z| e^(i theta)))` for evenly spaced moduli, endpoints included.
pub fn squeezing_profile(
    domain: AnnulusDomain,
    range: Option<(f64, f64)>,
    samples: usize,
    theta: f64,
) -> Result<Vec<(f64, f64)>> {
    let r = domain.r();
    let (lo, hi) = range.unwrap_or((r + 0.01, 0.99));
    if !(lo < hi) || lo <= r || hi >= 1.0 || samples < 2 {
        return Err(Error::EmptyRange(format!("moduli [{lo}, {hi}] with {samples} samples inside ({r}, 1)")));
    }
    (0..samples)
        .map(|k| {
            let m = lo + (hi - lo) * k as f64 / (samples - 1) as f64;
            Ok((m, squeezing_annulus(domain, Complex64::from_polar(m, theta))?))
        })
        .collect()
}

/// Sweep output: a summary plus the rendered table (or SVG).
pub struct SweepOutput {
    pub result: SuiteResult,
    pub table: Table,
    pub svg: Option<String>,
}

pub fn run_sweep(config: &RunConfig) -> Result<SweepOutput> {
    let target = config
        .targets
        .first()
        .ok_or_else(|| Error::Config(format!("sweep needs a target: {}", SWEEP_TARGETS.join(", "))))?;
    let start = Instant::now();
    let mut out = match target.replace('_', "-").as_str() {
        "squeezing-annulus" => sweep_squeezing(config)?,
        "sqrt-r-margin" => sweep_margin(config)?,
        "disc-threshold" => sweep_threshold(config)?,
        "negative-axis" => sweep_negative_axis(config)?,
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    out.result.wall_clock = start.elapsed();
    Ok(out)
}

fn annulus(config: &RunConfig) -> Result<AnnulusDomain> {
    AnnulusDomain::new(config.r.unwrap_or(0.25))
}

fn sweep_squeezing(config: &RunConfig) -> Result<SweepOutput> {
    const FORMULA: &str = "S_A(z) = max(|z|, r/|z|)";
    let domain = annulus(config)?;
    let (r, s) = (domain.r(), domain.sqrt_r());
    let tol = config.tol_or(1e-12);
    let theta = config.z.map_or(0.0, |z| z.arg());
    let rows = squeezing_profile(domain, config.range, config.samples.unwrap_or(100), theta)?;

    let mut result = SuiteResult::new("sweep:squeezing-annulus", FORMULA, tol);
    let mut table = Table::new(&["formula", "tolerance", "r", "modulus", "theta", "squeezing", "minus_sqrt_r", "passed"]);
    let mut prev: Option<(f64, f64)> = None;
    let mut argmin = (f64::NAN, f64::INFINITY);
    for &(m, v) in &rows {
        let mut ok = v >= s - tol && (v - m.max(r / m)).abs() <= tol;
        if let Some((pm, pv)) = prev {
            ok &= if m <= s { v < pv } else if pm >= s { v > pv } else { true };
        }
        if v < argmin.1 {
            argmin = (m, v);
        }
        result.record((v - m.max(r / m)).abs(), ok);
        table.push(vec![FORMULA.into(), tol.into(), r.into(), m.into(), theta.into(), v.into(), (v - s).into(), ok.into()]);
        prev = Some((m, v));
    }
    result.note("sampled_argmin_modulus", format!("{:.9}", argmin.0));
    result.note("sampled_min", format!("{:.9}", argmin.1));

    let svg = (config.format == OutputFormat::Svg)
        .then(|| -> Result<String> {
            let grid = config.grid_spec()?;
            let mut values = vec![f64::NAN; grid.len()];
            for j in 0..grid.ny {
                for i in 0..grid.nx {
                    let p = grid.cell_center(i, j);
                    if domain.contains(p) {
                        values[j * grid.nx + i] = squeezing_annulus(domain, p)?;
                    }
                }
            }
            Ok(svg_heatmap(&grid, &values, s, 1.0))
        })
        .transpose()?;
    Ok(SweepOutput { result, table, svg })
}

fn sweep_margin(config: &RunConfig) -> Result<SweepOutput> {
    const FORMULA: &str = "f(z)^2/z - r/z, f the slit map";
    let domain = annulus(config)?;
    let (r, s) = (domain.r(), domain.sqrt_r());
    let tol = config.tol_or(MARGIN_TOLERANCE);
    let (lo, hi) = config.range.unwrap_or((r, s));
    if !(lo < hi) || lo < r || hi > 1.0 {
        return Err(Error::EmptyRange(format!("z range [{lo}, {hi}] must lie in [{r}, 1]")));
    }
    let n = config.samples.unwrap_or(100);
    let mut result = SuiteResult::new("sweep:sqrt-r-margin", FORMULA, tol);
    let mut table = Table::new(&[
        "formula", "tolerance", "r", "z", "tanh_c_closed_form", "tanh_c_general", "r_over_z", "margin", "passed",
    ]);
    for k in 0..n {
        let z = lo + (hi - lo) * (k as f64 + 0.5) / n as f64;
        let closed = tanh_c_minus_sqrt_r(domain, z)?;
        let general = caratheodory_annulus(domain, Complex64::new(z, 0.0), Complex64::new(-s, 0.0))?.tanh_scale;
        let margin = closed - r / z;
        let ok = margin > tol;
        result.record((tol - margin).max(0.0), ok);
        table.push(vec![
            FORMULA.into(),
            tol.into(),
            r.into(),
            z.into(),
            closed.into(),
            general.into(),
            (r / z).into(),
            margin.into(),
            ok.into(),
        ]);
    }
    Ok(SweepOutput { result, table, svg: None })
}

fn sweep_threshold(config: &RunConfig) -> Result<SweepOutput> {
    const FORMULA: &str = "threshold vs mu(pseudo-hyperbolic(z,w))";
    let grid = config.grid_spec()?;
    let mut rng = rng_for(config, "disc-threshold");
    let mut result = SuiteResult::new("sweep:disc-threshold", FORMULA, 2.0);
    let mut table = Table::new(&[
        "formula", "tolerance_cells", "z", "w", "threshold", "closed_form", "difference", "slack", "passed",
    ]);
    let pairs: Vec<_> = match config.punctures.first() {
        Some(&w) => {
            let z = config.z.unwrap_or_default();
            vec![(crate::UnitDiscPoint::new(z)?, crate::UnitDiscPoint::new(w)?)]
        }
        None => (0..config.samples.unwrap_or(10)).map(|_| threshold_pair(&mut rng)).collect(),
    };
    for (z, w) in pairs {
        let case = disc_threshold_case(z, w, grid)?;
        let diff = case.threshold - case.closed_form;
        result.record(diff.abs() / case.slack * 2.0, case.within_slack());
        table.push(vec![
            FORMULA.into(),
            2.0.into(),
            format!("{}", case.z).into(),
            format!("{}", case.w).into(),
            case.threshold.into(),
            case.closed_form.into(),
            diff.into(),
            case.slack.into(),
            case.within_slack().into(),
        ]);
    }
    Ok(SweepOutput { result, table, svg: None })
}

fn sweep_negative_axis(config: &RunConfig) -> Result<SweepOutput> {
    const FORMULA: &str = "tanh c(z, w), w in (-1, -r)";
    let domain = annulus(config)?;
    let r = domain.r();
    let z = config.z.map_or(0.5 * (1.0 + r), |z| z.re);
    let n = config.samples.unwrap_or(200);
    let mut result = SuiteResult::new("sweep:negative-axis", FORMULA, 0.0);
    let step = (1.0 - r) / (n + 1) as f64;
    let mut table = Table::new(&["formula", "tolerance_grid_step", "r", "z", "w", "tanh_c", "c"]);
    for k in 1..=n {
        let w = -(r + step * k as f64);
        let d = caratheodory_annulus(domain, Complex64::new(z, 0.0), Complex64::new(w, 0.0))?;
        table.push(vec![FORMULA.into(), step.into(), r.into(), z.into(), w.into(), d.tanh_scale.into(), d.hyperbolic.into()]);
    }
    let scan = scan_negative_axis(domain, z, n.max(10_000))?;
    let offset = (scan.argmin + domain.sqrt_r()).abs();
    result.record(offset / scan.step, offset <= scan.step && scan.violations == 0);
    result.note("argmin", format!("{:.9}", scan.argmin));
    result.note("tanh_c_min", format!("{:.15}", scan.min_value));
    Ok(SweepOutput { result, table, svg: None })
}
