use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperbolic::ComplexPoint;
use crate::invariants::BaseDomain;

/// A rectangular grid of `nx * ny` cells over a bounding box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub const MIN_CELLS: usize = 16;
    pub const DEFAULT_CELLS: usize = 1024;

    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64, nx: usize, ny: usize) -> Result<Self> {
        let finite = [xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite());
        if !finite || !(xmin < xmax) || !(ymin < ymax) {
            return Err(Error::Config(format!("invalid bounding box [{xmin}, {xmax}] x [{ymin}, {ymax}]")));
        }
        if nx < Self::MIN_CELLS || ny < Self::MIN_CELLS {
            return Err(Error::Config(format!("grid must be at least 16x16, got {nx}x{ny}")));
        }
        Ok(Self { xmin, xmax, ymin, ymax, nx, ny })
    }

    /// The bounding box of the base domain (the closed unit disc in both
    /// cases) inflated by 5%.
    pub fn covering(_base: &BaseDomain, nx: usize, ny: usize) -> Result<Self> {
        Self::new(-1.05, 1.05, -1.05, 1.05, nx, ny)
    }

    pub fn default_for(base: &BaseDomain) -> Self {
        Self::covering(base, Self::DEFAULT_CELLS, Self::DEFAULT_CELLS).expect("static grid is valid")
    }

    pub fn dx(&self) -> f64 {
        (self.xmax - self.xmin) / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        (self.ymax - self.ymin) / self.ny as f64
    }

    pub fn cell_diagonal(&self) -> f64 {
        self.dx().hypot(self.dy())
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Center of cell `(i, j)`, column `i` and row `j`. Mirrored cells of a
    /// box symmetric about an axis get exactly mirrored coordinates.
    pub fn cell_center(&self, i: usize, j: usize) -> ComplexPoint {
        Complex64::new(
            axis_center(self.xmin, self.xmax, self.nx, i),
            axis_center(self.ymin, self.ymax, self.ny, j),
        )
    }

    /// The cell containing `p`, if inside the box.
    pub fn cell_of(&self, p: ComplexPoint) -> Option<(usize, usize)> {
        let fi = ((p.re - self.xmin) / self.dx()).floor();
        let fj = ((p.im - self.ymin) / self.dy()).floor();
        if fi < 0.0 || fj < 0.0 || fi >= self.nx as f64 || fj >= self.ny as f64 {
            return None;
        }
        Some((fi as usize, fj as usize))
    }

    pub(crate) fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }
}

fn axis_center(lo: f64, hi: f64, n: usize, k: usize) -> f64 {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    mid + half * ((2 * k + 1) as f64 - n as f64) / n as f64
}

/// Boolean raster over a [`GridSpec`], row-major with row 0 at `ymin`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMask {
    spec: GridSpec,
    cells: Vec<bool>,
}

impl GridMask {
    pub fn new(spec: GridSpec, cells: Vec<bool>) -> Result<Self> {
        if cells.len() != spec.len() {
            return Err(Error::Config(format!(
                "raster has {} cells, grid {}x{} needs {}",
                cells.len(),
                spec.nx,
                spec.ny,
                spec.len()
            )));
        }
        Ok(Self { spec, cells })
    }

    pub fn filled(spec: GridSpec, value: bool) -> Self {
        Self { spec, cells: vec![value; spec.len()] }
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cells[self.spec.index(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let k = self.spec.index(i, j);
        self.cells[k] = value;
    }

    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    /// Whether the cell containing `p` is set.
    pub fn contains_point(&self, p: ComplexPoint) -> bool {
        self.spec.cell_of(p).is_some_and(|(i, j)| self.get(i, j))
    }

    pub fn is_subset_of(&self, other: &GridMask) -> bool {
        self.spec == other.spec && self.cells.iter().zip(&other.cells).all(|(&a, &b)| !a || b)
    }

    /// Whether row `j` equals row `ny - 1 - j` for every `j`.
    pub fn is_row_symmetric(&self) -> bool {
        let (nx, ny) = (self.spec.nx, self.spec.ny);
        (0..ny / 2).all(|j| self.cells[j * nx..(j + 1) * nx] == self.cells[(ny - 1 - j) * nx..(ny - j) * nx])
    }

    /// Portable text raster: a header with the grid fields, then one line per
    /// row holding the first cell value followed by alternating run lengths.
    pub fn to_raster_string(&self) -> String {
        let s = &self.spec;
        let mut out = String::new();
        out.push_str("holinv-mask 1\n");
        let _ = writeln!(out, "bbox {:.16e} {:.16e} {:.16e} {:.16e}", s.xmin, s.xmax, s.ymin, s.ymax);
        let _ = writeln!(out, "size {} {}", s.nx, s.ny);
        for row in self.cells.chunks(s.nx) {
            let mut current = row[0];
            let mut run = 0usize;
            out.push(if current { '1' } else { '0' });
            for &c in row {
                if c == current {
                    run += 1;
                } else {
                    let _ = write!(out, " {run}");
                    current = c;
                    run = 1;
                }
            }
            let _ = writeln!(out, " {run}");
        }
        out
    }

    pub fn from_raster_str(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Raster(msg.to_string());
        let mut lines = text.lines();
        if lines.next() != Some("holinv-mask 1") {
            return Err(bad("missing `holinv-mask 1` header"));
        }
        let bbox: Vec<f64> = lines
            .next()
            .and_then(|l| l.strip_prefix("bbox "))
            .ok_or_else(|| bad("missing bbox line"))?
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|e| bad(&e.to_string())))
            .collect::<Result<_>>()?;
        let size: Vec<usize> = lines
            .next()
            .and_then(|l| l.strip_prefix("size "))
            .ok_or_else(|| bad("missing size line"))?
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|e| bad(&e.to_string())))
            .collect::<Result<_>>()?;
        if bbox.len() != 4 || size.len() != 2 {
            return Err(bad("malformed header"));
        }
        let spec = GridSpec::new(bbox[0], bbox[1], bbox[2], bbox[3], size[0], size[1])?;
        let mut cells = Vec::with_capacity(spec.len());
        for j in 0..spec.ny {
            let line = lines.next().ok_or_else(|| bad(&format!("missing row {j}")))?;
            let mut tokens = line.split_whitespace();
            let mut value = match tokens.next() {
                Some("0") => false,
                Some("1") => true,
                _ => return Err(bad(&format!("row {j} must start with 0 or 1"))),
            };
            let start = cells.len();
            for t in tokens {
                let run: usize = t.parse().map_err(|_| bad(&format!("bad run length `{t}` in row {j}")))?;
                cells.extend(std::iter::repeat_n(value, run));
                value = !value;
            }
            if cells.len() - start != spec.nx {
                return Err(bad(&format!("row {j} has {} cells, expected {}", cells.len() - start, spec.nx)));
            }
        }
        Self::new(spec, cells)
    }

    /// Cell heatmap with set cells black.
    pub fn to_svg(&self) -> String {
        let values: Vec<f64> = self.cells.iter().map(|&c| if c { 1.0 } else { 0.0 }).collect();
        svg_heatmap(&self.spec, &values, 0.0, 1.0)
    }
}

/// Grayscale heatmap of one value per cell, `lo` white and `hi` black, on a
/// 256-level ramp. Runs of equal gray within a row share one rectangle.
/// Non-finite values are drawn in white.
pub fn svg_heatmap(spec: &GridSpec, values: &[f64], lo: f64, hi: f64) -> String {
    let level = |v: f64| -> u8 {
        if !v.is_finite() || !(hi > lo) {
            return 255;
        }
        let t = ((v - lo) / (hi - lo)).clamp(0.0, 1.0);
        255 - (t * 255.0).round() as u8
    };
    let (nx, ny) = (spec.nx, spec.ny);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{nx}" height="{ny}" viewBox="0 0 {nx} {ny}" shape-rendering="crispEdges">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{nx}" height="{ny}" fill="rgb(255,255,255)"/>"#);
    for j in 0..ny {
        // SVG y grows downward; put ymax at the top
        let y = ny - 1 - j;
        let row = &values[j * nx..(j + 1) * nx];
        let mut i = 0;
        while i < nx {
            let g = level(row[i]);
            let mut k = i + 1;
            while k < nx && level(row[k]) == g {
                k += 1;
            }
            if g != 255 {
                let _ = writeln!(
                    out,
                    r#"<rect x="{i}" y="{y}" width="{}" height="1" fill="rgb({g},{g},{g})"/>"#,
                    k - i
                );
            }
            i = k;
        }
    }
    out.push_str("</svg>\n");
    out
}
