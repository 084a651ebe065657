//! Command-line harness: distances, invariants, verification suites,
//! ball experiments and sweeps, written as CSV, JSON or SVG.
//!
//! Exit status: 0 when every suite passes, 1 when one fails, 2 for usage or
//! configuration errors.

pub mod config;
pub mod output;
pub mod suites;
pub mod sweep;

use num_complex::Complex64;
use serde::Serialize;

pub use config::{CommandKind, OutputFormat, RadiusSpec, RunConfig};
pub use output::{SuiteResult, Table};
pub use sweep::run_sweep;

use crate::annulus_metric::{caratheodory_annulus, normalize_annulus, simha_caratheodory};
use crate::error::{Error, Result};
use crate::hyperbolic::{poincare_distance, pseudo_hyperbolic, ComplexPoint, UnitDiscPoint};
use crate::invariants::{
    annulus_gap_report, general_upper_bound, punctured_disc_report, squeezing_annulus, BaseDomain,
    InvariantReport, PuncturedDomain,
};
use crate::topology::{classify, DistanceField, Topology};

/// Verdict of one harness invocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
        }
    }
}

fn verdict(results: &[SuiteResult]) -> Verdict {
    if results.iter().all(|r| r.passed) {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// A rendered artifact plus the suites behind it.
pub struct RunOutput {
    pub results: Vec<SuiteResult>,
    pub contents: String,
}

impl RunOutput {
    pub fn verdict(&self) -> Verdict {
        verdict(&self.results)
    }
}

/// Runs the configured command and writes its artifact to `config.out`
/// (stdout when unset).
pub fn execute(config: &RunConfig) -> Result<RunOutput> {
    config.validate()?;
    let out = match config.command {
        CommandKind::Verify => run_verify(config)?,
        CommandKind::Sweep => {
            let s = run_sweep(config)?;
            let contents = match config.format {
                OutputFormat::Csv => s.table.to_csv()?,
                OutputFormat::Json => output::json_string(&SweepDocument { result: &s.result, table: &s.table })?,
                OutputFormat::Svg => s
                    .svg
                    .ok_or_else(|| Error::Config("svg output is only available for `sweep squeezing-annulus`".into()))?,
            };
            RunOutput { results: vec![s.result], contents }
        }
        CommandKind::Ball => run_ball(config)?,
        CommandKind::Dist => run_dist(config)?,
        CommandKind::Squeeze => run_squeeze(config)?,
    };
    output::emit(config.out.as_deref(), &out.contents)?;
    Ok(out)
}

#[derive(Serialize)]
struct SweepDocument<'a> {
    result: &'a SuiteResult,
    table: &'a Table,
}

/// Runs the named verification suites.
pub fn run_verify(config: &RunConfig) -> Result<RunOutput> {
    let results = suites::run_suites(config)?;
    let contents = match config.format {
        OutputFormat::Csv => output::suites_csv(&results)?,
        OutputFormat::Json => output::json_string(&results)?,
        OutputFormat::Svg => return Err(Error::Config("verify writes csv or json".into())),
    };
    Ok(RunOutput { results, contents })
}

#[derive(Debug, Clone, Serialize)]
pub struct BallReport {
    pub domain: String,
    pub punctures: Vec<ComplexPoint>,
    pub center: ComplexPoint,
    pub radius: f64,
    pub tanh_radius: f64,
    pub grid: crate::topology::GridSpec,
    pub cells_inside: usize,
    pub topology: Topology,
    /// Whether the cell of `-sqrt r` is in the ball (annulus only).
    pub contains_minus_sqrt_r: Option<bool>,
    pub raster: String,
}

/// Samples one ball and classifies it.
pub fn run_ball(config: &RunConfig) -> Result<RunOutput> {
    let base = config.base_domain()?;
    let domain = if config.punctures.is_empty() {
        PuncturedDomain::without_punctures(base)
    } else {
        PuncturedDomain::new(base, config.punctures.clone())?
    };
    let center = config.z.unwrap_or_else(|| match base {
        BaseDomain::UnitDisc => Complex64::new(0.0, 0.0),
        BaseDomain::Annulus(a) => Complex64::new(0.5 * (1.0 + a.r()), 0.0),
    });
    let radius = config
        .radius
        .ok_or_else(|| Error::Config("ball needs --radius or --tanh-radius".into()))?
        .hyperbolic()?;
    let grid = config.grid_spec()?;
    let mask = DistanceField::compute(&domain, center, grid)?.ball(radius);
    let topology = classify(&mask);
    let contains_minus_sqrt_r = match base {
        BaseDomain::Annulus(a) => Some(mask.contains_point(Complex64::new(-a.sqrt_r(), 0.0))),
        BaseDomain::UnitDisc => None,
    };
    let mut result = SuiteResult::new("ball", "cell-center membership c(center, cell) < radius", 0.0);
    result.record(0.0, true);
    result.note("components", topology.components);
    result.note("holes", topology.holes);
    result.note("simply_connected", topology.simply_connected.map_or("n/a".to_string(), |b| b.to_string()));

    let report = BallReport {
        domain: crate::invariants::CaratheodoryMetric::describe(&base),
        punctures: config.punctures.clone(),
        center,
        radius,
        tanh_radius: radius.tanh(),
        grid,
        cells_inside: mask.count(),
        topology,
        contains_minus_sqrt_r,
        raster: mask.to_raster_string(),
    };
    let contents = match config.format {
        OutputFormat::Svg => mask.to_svg(),
        OutputFormat::Json => output::json_string(&report)?,
        OutputFormat::Csv => {
            let mut t = Table::new(&[
                "formula", "tolerance", "domain", "center", "radius", "tanh_radius", "grid", "cells_inside", "components",
                "holes", "simply_connected", "contains_minus_sqrt_r",
            ]);
            let opt = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
            t.push(vec![
                result.formula.as_str().into(),
                grid.cell_diagonal().into(),
                report.domain.clone().into(),
                format!("{center}").into(),
                radius.into(),
                report.tanh_radius.into(),
                format!("{}x{}", grid.nx, grid.ny).into(),
                report.cells_inside.into(),
                topology.components.into(),
                topology.holes.into(),
                opt(topology.simply_connected).into(),
                opt(contains_minus_sqrt_r).into(),
            ]);
            t.to_csv()?
        }
    };
    Ok(RunOutput { results: vec![result], contents })
}

fn require_point(p: Option<ComplexPoint>, flag: &str) -> Result<ComplexPoint> {
    p.ok_or_else(|| Error::Config(format!("missing {flag}")))
}

/// Distance between `--z` and `--w`, on the disc or on `A_r` (both formulas).
pub fn run_dist(config: &RunConfig) -> Result<RunOutput> {
    let z = require_point(config.z, "--z")?;
    let w = require_point(config.w, "--w")?;
    let tol = config.tol_or(1e-8);
    let mut table = Table::new(&["formula", "tolerance", "quantity", "value"]);
    let mut result = SuiteResult::new("dist", "caratheodory distance", tol);
    match config.base_domain()? {
        BaseDomain::UnitDisc => {
            let (zp, wp) = (UnitDiscPoint::new(z)?, UnitDiscPoint::new(w)?);
            table.push(vec!["|(w-z)/(1-conj(z)w)|".into(), tol.into(), "tanh_c".into(), pseudo_hyperbolic(zp, wp).into()]);
            table.push(vec!["artanh |(w-z)/(1-conj(z)w)|".into(), tol.into(), "c".into(), poincare_distance(zp, wp).into()]);
            result.record(0.0, true);
        }
        BaseDomain::Annulus(a) => {
            let prime = caratheodory_annulus(a, z, w)?;
            let (sym, scale) = normalize_annulus(a);
            let simha = simha_caratheodory(sym, z * scale, w * scale)?;
            let diff = (prime.tanh_scale - simha.tanh_scale).abs();
            table.push(vec!["prime-function".into(), tol.into(), "tanh_c".into(), prime.tanh_scale.into()]);
            table.push(vec!["prime-function".into(), tol.into(), "c".into(), prime.hyperbolic.into()]);
            table.push(vec!["simha-product".into(), tol.into(), "tanh_c".into(), simha.tanh_scale.into()]);
            table.push(vec!["simha-product".into(), tol.into(), "c".into(), simha.hyperbolic.into()]);
            table.push(vec!["|prime - simha|".into(), tol.into(), "tanh_c_difference".into(), diff.into()]);
            result.check(diff);
        }
    }
    let contents = match config.format {
        OutputFormat::Csv => table.to_csv()?,
        OutputFormat::Json => output::json_string(&table)?,
        OutputFormat::Svg => return Err(Error::Config("dist writes csv or json".into())),
    };
    Ok(RunOutput { results: vec![result], contents })
}

/// Squeezing-type invariants at `--z`:
/// punctured disc closed forms, annulus squeezing, or (annulus with
/// punctures) the puncture bound and, for real data, the gap report.
pub fn run_squeeze(config: &RunConfig) -> Result<RunOutput> {
    let z = require_point(config.z, "--z")?;
    let base = config.base_domain()?;
    let tol = config.tol_or(crate::invariants::MARGIN_TOLERANCE);
    let report: InvariantReport = match base {
        BaseDomain::UnitDisc => {
            if config.punctures.is_empty() {
                return Err(Error::Config("squeeze on the disc needs --punctures".into()));
            }
            let k = config.punctures.iter().map(|&p| UnitDiscPoint::new(p)).collect::<Result<Vec<_>>>()?;
            punctured_disc_report(UnitDiscPoint::new(z)?, &k)?
        }
        BaseDomain::Annulus(a) => match config.punctures.as_slice() {
            [p] if z.im == 0.0 && p.im == 0.0 && p.re <= -a.sqrt_r() * (1.0 - 1e-12) => annulus_gap_report(a, z.re, p.re)?,
            [] | [_, ..] => {
                let mut rep = annulus_squeezing_report(a, z, tol)?;
                if !config.punctures.is_empty() {
                    PuncturedDomain::new(base, config.punctures.clone())?;
                    let bound = general_upper_bound(z, &config.punctures, &a)?;
                    rep.quantities.push(crate::invariants::Quantity {
                        name: "upper_bound".into(),
                        formula: "min_K tanh c_A(z,w)".into(),
                        value: bound,
                    });
                }
                rep
            }
        },
    };
    let mut result = SuiteResult::new("squeeze", "invariant report", tol);
    result.record(0.0, report.passed);
    let contents = match config.format {
        OutputFormat::Json => output::json_string(&report)?,
        OutputFormat::Csv => {
            let mut t = Table::new(&["formula", "tolerance", "quantity", "value", "passed"]);
            for q in &report.quantities {
                t.push(vec![q.formula.clone().into(), report.tolerance.into(), q.name.clone().into(), q.value.into(), true.into()]);
            }
            for m in &report.margins {
                t.push(vec!["margin".into(), report.tolerance.into(), m.name.clone().into(), m.value.into(), m.passed.into()]);
            }
            t.to_csv()?
        }
        OutputFormat::Svg => return Err(Error::Config("squeeze writes csv or json".into())),
    };
    Ok(RunOutput { results: vec![result], contents })
}

fn annulus_squeezing_report(a: crate::prime::AnnulusDomain, z: ComplexPoint, tol: f64) -> Result<InvariantReport> {
    let value = squeezing_annulus(a, z)?;
    Ok(InvariantReport {
        domain: format!("annulus r={}", a.r()),
        z,
        punctures: Vec::new(),
        quantities: vec![crate::invariants::Quantity {
            name: "squeezing_annulus".into(),
            formula: "max(|z|, r/|z|)".into(),
            value,
        }],
        margins: Vec::new(),
        witnesses: Vec::new(),
        tolerance: tol,
        passed: true,
        wall_clock: std::time::Duration::ZERO,
    })
}
