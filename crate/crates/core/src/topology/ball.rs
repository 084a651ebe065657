use rayon::prelude::*;

use super::grid::{GridMask, GridSpec};
use super::label::{connected_component_count, hole_count};
use crate::error::{Error, Result};
use crate::hyperbolic::ComplexPoint;
use crate::invariants::{CaratheodoryMetric, PuncturedDomain};

/// Punctures must be farther apart than this many cell diagonals, and as far
/// from the boundary of the base domain.
const RESOLUTION_DIAGONALS: f64 = 4.0;

/// Carathéodory distance from a fixed center to every cell center of a grid.
///
/// Cells outside the punctured domain (outside the base domain, or within
/// half a cell diagonal of a puncture) hold `+inf`. Balls of any radius are
/// then a threshold of the same field.
#[derive(Debug, Clone)]
pub struct DistanceField {
    spec: GridSpec,
    values: Vec<f64>,
}

impl DistanceField {
    pub fn compute(domain: &PuncturedDomain, center: ComplexPoint, grid: GridSpec) -> Result<Self> {
        let base = domain.base();
        if !domain.contains(center) {
            return Err(Error::domain(format!("ball center {center} is not in the domain")));
        }
        check_resolution(domain, &grid)?;
        let half_diag = 0.5 * grid.cell_diagonal();
        let punctures = domain.punctures();

        let mut values = vec![f64::INFINITY; grid.len()];
        values
            .par_chunks_mut(grid.nx)
            .enumerate()
            .try_for_each(|(j, row)| -> Result<()> {
                for (i, slot) in row.iter_mut().enumerate() {
                    let p = grid.cell_center(i, j);
                    if !base.contains(p) || punctures.iter().any(|&k| (p - k).norm() <= half_diag) {
                        continue;
                    }
                    *slot = base.distance_unchecked(center, p)?;
                }
                Ok(())
            })?;
        Ok(Self { spec: grid, values })
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Cells at distance strictly less than `radius`.
    pub fn ball(&self, radius: f64) -> GridMask {
        let cells = self.values.iter().map(|&d| d < radius).collect();
        GridMask::new(self.spec, cells).expect("field and grid have the same size")
    }

    /// Whether the ball of `radius` is connected without holes. An empty
    /// ball counts as simply connected, a disconnected one does not.
    pub fn ball_is_simply_connected(&self, radius: f64) -> bool {
        let mask = self.ball(radius);
        match connected_component_count(&mask) {
            0 => true,
            1 => hole_count(&mask) == 0,
            _ => false,
        }
    }

    /// Bisects for the radius where the ball stops being simply connected.
    pub fn simple_connectivity_threshold(&self, radius_lo: f64, radius_hi: f64, steps: u32) -> Result<f64> {
        if !(radius_lo < radius_hi) {
            return Err(Error::Precondition(format!("empty radius range [{radius_lo}, {radius_hi}]")));
        }
        if !self.ball_is_simply_connected(radius_lo) {
            return Err(Error::Precondition(format!("ball of radius {radius_lo} is already not simply connected")));
        }
        if self.ball_is_simply_connected(radius_hi) {
            return Err(Error::Precondition(format!("ball of radius {radius_hi} is still simply connected")));
        }
        let (mut lo, mut hi) = (radius_lo, radius_hi);
        for _ in 0..steps {
            let mid = 0.5 * (lo + hi);
            if self.ball_is_simply_connected(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(hi)
    }
}

fn check_resolution(domain: &PuncturedDomain, grid: &GridSpec) -> Result<()> {
    let min_gap = RESOLUTION_DIAGONALS * grid.cell_diagonal();
    let base = domain.base();
    let punctures = domain.punctures();
    for (i, &p) in punctures.iter().enumerate() {
        let to_boundary = match base {
            crate::invariants::BaseDomain::UnitDisc => 1.0 - p.norm(),
            crate::invariants::BaseDomain::Annulus(a) => a.boundary_gap(p),
        };
        if to_boundary <= min_gap {
            return Err(Error::Resolution(format!(
                "puncture {p} is within {min_gap:.3e} of the boundary; refine the grid"
            )));
        }
        for &q in &punctures[..i] {
            if (p - q).norm() <= min_gap {
                return Err(Error::Resolution(format!(
                    "punctures {q} and {p} are closer than {min_gap:.3e}; refine the grid"
                )));
            }
        }
    }
    Ok(())
}

/// Rasterizes the Carathéodory ball of `radius` (hyperbolic scale) about
/// `center` in the punctured domain.
pub fn sample_metric_ball(
    domain: &PuncturedDomain,
    center: ComplexPoint,
    radius: f64,
    grid: GridSpec,
) -> Result<GridMask> {
    if !(radius > 0.0) {
        return Err(Error::domain(format!("ball radius must be positive, got {radius}")));
    }
    Ok(DistanceField::compute(domain, center, grid)?.ball(radius))
}

/// Smallest radius in `[radius_lo, radius_hi]` at which the sampled ball is no
/// longer simply connected, to within `(radius_hi - radius_lo) / 2^steps`.
pub fn simple_connectivity_threshold(
    domain: &PuncturedDomain,
    center: ComplexPoint,
    grid: GridSpec,
    radius_lo: f64,
    radius_hi: f64,
    steps: u32,
) -> Result<f64> {
    DistanceField::compute(domain, center, grid)?.simple_connectivity_threshold(radius_lo, radius_hi, steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::{poincare_distance, UnitDiscPoint};
    use crate::invariants::BaseDomain;
    use crate::prime::AnnulusDomain;
    use crate::topology::{classify, is_simply_connected};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn grid(n: usize) -> GridSpec {
        GridSpec::covering(&BaseDomain::UnitDisc, n, n).unwrap()
    }

    #[test]
    fn small_ball_is_a_blob() {
        let dom = PuncturedDomain::new(BaseDomain::UnitDisc, vec![c(0.5, 0.0)]).unwrap();
        let m = sample_metric_ball(&dom, c(-0.2, 0.1), 0.2, grid(256)).unwrap();
        assert!(m.count() > 10);
        assert!(is_simply_connected(&m).unwrap());
    }

    #[test]
    fn puncture_becomes_a_hole() {
        let dom = PuncturedDomain::new(BaseDomain::UnitDisc, vec![c(0.5, 0.0)]).unwrap();
        let d = poincare_distance(UnitDiscPoint::origin(), UnitDiscPoint::new(c(0.5, 0.0)).unwrap());
        let m = sample_metric_ball(&dom, c(0.0, 0.0), d + 0.1, grid(256)).unwrap();
        let t = classify(&m);
        assert_eq!((t.components, t.holes), (1, 1));
        assert!(!m.contains_point(c(0.5, 0.0)));
    }

    #[test]
    fn center_and_radius_checks() {
        let dom = PuncturedDomain::new(BaseDomain::UnitDisc, vec![c(0.5, 0.0)]).unwrap();
        assert!(sample_metric_ball(&dom, c(0.5, 0.0), 1.0, grid(64)).is_err());
        assert!(sample_metric_ball(&dom, c(1.5, 0.0), 1.0, grid(64)).is_err());
        assert!(sample_metric_ball(&dom, c(0.0, 0.0), 0.0, grid(64)).is_err());
    }

    #[test]
    fn close_punctures_need_a_finer_grid() {
        let dom = PuncturedDomain::new(BaseDomain::UnitDisc, vec![c(0.5, 0.0), c(0.52, 0.0)]).unwrap();
        let err = sample_metric_ball(&dom, c(0.0, 0.0), 1.0, grid(64)).unwrap_err();
        assert!(matches!(err, Error::Resolution(_)));
        assert!(sample_metric_ball(&dom, c(0.0, 0.0), 1.0, grid(1024)).is_ok());
        let edge = PuncturedDomain::new(BaseDomain::UnitDisc, vec![c(0.99, 0.0)]).unwrap();
        assert!(matches!(sample_metric_ball(&edge, c(0.0, 0.0), 1.0, grid(64)), Err(Error::Resolution(_))));
    }

    #[test]
    fn balls_grow_monotonically() {
        let a = BaseDomain::Annulus(AnnulusDomain::new(0.2).unwrap());
        let dom = PuncturedDomain::new(a, vec![c(-0.6, 0.1)]).unwrap();
        let field = DistanceField::compute(&dom, c(0.5, 0.0), grid(128)).unwrap();
        let mut prev = field.ball(0.1);
        for k in 2..30 {
            let next = field.ball(0.1 * k as f64);
            assert!(prev.is_subset_of(&next));
            prev = next;
        }
    }

    #[test]
    fn threshold_preconditions() {
        let dom = PuncturedDomain::new(BaseDomain::UnitDisc, vec![c(0.5, 0.0)]).unwrap();
        let field = DistanceField::compute(&dom, c(0.0, 0.0), grid(128)).unwrap();
        assert!(matches!(field.simple_connectivity_threshold(0.1, 0.2, 10), Err(Error::Precondition(_))));
        assert!(matches!(field.simple_connectivity_threshold(1.0, 2.0, 10), Err(Error::Precondition(_))));
        assert!(field.simple_connectivity_threshold(0.1, 2.0, 10).is_ok());
    }
}
