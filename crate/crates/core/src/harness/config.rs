use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperbolic::{mu, ComplexPoint};
use crate::invariants::BaseDomain;
use crate::prime::AnnulusDomain;
use crate::topology::GridSpec;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Dist,
    Squeeze,
    Verify,
    Ball,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
    Svg,
}

/// A ball radius, on either scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusSpec {
    Hyperbolic(f64),
    Tanh(f64),
}

impl RadiusSpec {
    pub fn hyperbolic(self) -> Result<f64> {
        match self {
            RadiusSpec::Hyperbolic(r) if r > 0.0 && r.is_finite() => Ok(r),
            RadiusSpec::Hyperbolic(r) => Err(Error::Config(format!("radius must be positive, got {r}"))),
            RadiusSpec::Tanh(t) if t > 0.0 && t < 1.0 => mu(t),
            RadiusSpec::Tanh(t) => Err(Error::Config(format!("tanh radius must lie in (0, 1), got {t}"))),
        }
    }
}

/// Everything one invocation of the harness needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    /// Suite names for `verify`, the swept quantity for `sweep`.
    pub targets: Vec<String>,
    pub r: Option<f64>,
    pub punctures: Vec<ComplexPoint>,
    pub z: Option<ComplexPoint>,
    pub w: Option<ComplexPoint>,
    pub radius: Option<RadiusSpec>,
    pub grid: (usize, usize),
    /// Overrides each suite's own tolerance when set.
    pub tol: Option<f64>,
    pub seed: u64,
    pub samples: Option<usize>,
    pub range: Option<(f64, f64)>,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl RunConfig {
    pub fn new(command: CommandKind) -> Self {
        Self {
            command,
            targets: Vec::new(),
            r: None,
            punctures: Vec::new(),
            z: None,
            w: None,
            radius: None,
            grid: (GridSpec::DEFAULT_CELLS, GridSpec::DEFAULT_CELLS),
            tol: None,
            seed: DEFAULT_SEED,
            samples: None,
            range: None,
            out: None,
            format: OutputFormat::Csv,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Config(format!("--tol must be positive, got {t}")));
            }
        }
        if let Some(r) = self.r {
            AnnulusDomain::new(r).map_err(|e| Error::Config(e.to_string()))?;
        }
        if self.grid.0 < GridSpec::MIN_CELLS || self.grid.1 < GridSpec::MIN_CELLS {
            return Err(Error::Config(format!("--grid must be at least 16x16, got {}x{}", self.grid.0, self.grid.1)));
        }
        if let Some((a, b)) = self.range {
            if !(a < b) {
                return Err(Error::EmptyRange(format!("[{a}, {b}]")));
            }
        }
        if self.samples == Some(0) {
            return Err(Error::EmptyRange("zero samples".into()));
        }
        Ok(())
    }

    pub fn base_domain(&self) -> Result<BaseDomain> {
        Ok(match self.r {
            Some(r) => BaseDomain::Annulus(AnnulusDomain::new(r)?),
            None => BaseDomain::UnitDisc,
        })
    }

    pub fn grid_spec(&self) -> Result<GridSpec> {
        GridSpec::covering(&self.base_domain()?, self.grid.0, self.grid.1)
    }

    pub fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

/// Parses `x`, `yi`, `x+yi` or `x-yi` (also `i`, `-i`, exponents allowed).
pub fn parse_complex(text: &str) -> Result<ComplexPoint> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Config(format!("cannot parse complex number `{text}`"));
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return f64::from_str(&s).map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split before the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => f64::from_str(other).map_err(|_| bad())?,
    };
    let re = f64::from_str(re).map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

pub fn parse_complex_list(text: &str) -> Result<Vec<ComplexPoint>> {
    text.split(',').filter(|t| !t.trim().is_empty()).map(parse_complex).collect()
}

/// Parses `NxM`.
pub fn parse_grid(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::Config(format!("grid must look like 1024x1024, got `{text}`"));
    let (a, b) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

/// Parses `a..b` or `a,b`.
pub fn parse_range(text: &str) -> Result<(f64, f64)> {
    let bad = || Error::Config(format!("range must look like 0.26..0.99, got `{text}`"));
    let (a, b) = text.split_once("..").or_else(|| text.split_once(',')).ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}
