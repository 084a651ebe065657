use serde::{Deserialize, Serialize};

use super::grid::GridMask;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Connectivity {
    Four,
    Eight,
}

const N4: [(isize, isize); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
const N8: [(isize, isize); 8] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)];

struct Components {
    count: usize,
    touches_border: Vec<bool>,
}

/// Flood-fills every component of cells equal to `value`.
fn components(mask: &GridMask, value: bool, conn: Connectivity) -> Components {
    let spec = mask.spec();
    let (nx, ny) = (spec.nx, spec.ny);
    let cells = mask.cells();
    let offsets: &[(isize, isize)] = match conn {
        Connectivity::Four => &N4,
        Connectivity::Eight => &N8,
    };
    let mut seen = vec![false; cells.len()];
    let mut stack = Vec::new();
    let mut touches_border = Vec::new();
    for start in 0..cells.len() {
        if seen[start] || cells[start] != value {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut border = false;
        while let Some(k) = stack.pop() {
            let (i, j) = ((k % nx) as isize, (k / nx) as isize);
            if i == 0 || j == 0 || i == nx as isize - 1 || j == ny as isize - 1 {
                border = true;
            }
            for &(di, dj) in offsets {
                let (a, b) = (i + di, j + dj);
                if a < 0 || b < 0 || a >= nx as isize || b >= ny as isize {
                    continue;
                }
                let n = b as usize * nx + a as usize;
                if !seen[n] && cells[n] == value {
                    seen[n] = true;
                    stack.push(n);
                }
            }
        }
        touches_border.push(border);
    }
    Components { count: touches_border.len(), touches_border }
}

/// Number of 4-connected components of set cells.
pub fn connected_component_count(mask: &GridMask) -> usize {
    components(mask, true, Connectivity::Four).count
}

/// Number of 8-connected components of unset cells that do not reach the
/// grid border.
pub fn hole_count(mask: &GridMask) -> usize {
    components(mask, false, Connectivity::Eight)
        .touches_border
        .iter()
        .filter(|&&b| !b)
        .count()
}

/// Whether a single-component mask has no holes.
pub fn is_simply_connected(mask: &GridMask) -> Result<bool> {
    match connected_component_count(mask) {
        1 => Ok(hole_count(mask) == 0),
        n => Err(Error::MultiComponent(n)),
    }
}

/// Topological summary of a mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Topology {
    pub components: usize,
    pub holes: usize,
    /// `None` unless the mask has exactly one component.
    pub simply_connected: Option<bool>,
}

pub fn classify(mask: &GridMask) -> Topology {
    let components = connected_component_count(mask);
    let holes = hole_count(mask);
    Topology { components, holes, simply_connected: (components == 1).then_some(holes == 0) }
}
