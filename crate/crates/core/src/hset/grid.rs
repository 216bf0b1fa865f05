//! Uniform grids of the faces of the chart cube `[-1,1]ᵘ × [-1,1]ˢ`.
//!
//! In the maximum norm `∂B̄ᵤ` is the union of the `2u` facets `{pᵢ = ±1}`, so
//! the exit set `N_c⁻ = ∂B̄ᵤ × B̄ₛ` is the union of `2u` facets of the
//! `n`-cube and `∂N_c` is the union of all `2n`. Every facet is cut into a
//! product grid of closed cells; neighbours share their common face.

use serde::{Deserialize, Serialize};

use super::HSet;
use crate::error::{Error, Result};
use crate::interval::{IBox, Interval};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

impl Side {
    pub fn value(self) -> f64 {
        match self {
            Side::Lower => -1.0,
            Side::Upper => 1.0,
        }
    }
}

/// The facet `{ x_coord = ±1 }` of the unit cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Facet {
    pub coord: usize,
    pub side: Side,
}

/// A closed grid cell lying on a facet of the chart cube.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WallCell {
    pub unstable: IBox,
    pub stable: IBox,
    pub facet: Facet,
}

impl WallCell {
    /// The cell as a box in `Rᵘ × Rˢ`.
    pub fn as_box(&self) -> IBox {
        self.unstable.product(&self.stable)
    }

    /// Rebuilds a cell from a full box, splitting it at `u`.
    pub fn from_box(b: &IBox, u: usize, facet: Facet) -> Self {
        WallCell {
            unstable: b.slice(0..u),
            stable: b.slice(u..b.dim()),
            facet,
        }
    }
}

/// Number of pieces each free coordinate of a facet is cut into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridResolution {
    pub unstable: usize,
    pub stable: usize,
}

impl GridResolution {
    pub fn uniform(k: usize) -> Self {
        GridResolution {
            unstable: k,
            stable: k,
        }
    }
}

impl From<usize> for GridResolution {
    fn from(k: usize) -> Self {
        GridResolution::uniform(k)
    }
}

/// `k`-th of `r` equal closed pieces of `[-1, 1]`. Neighbouring pieces share
/// bit-identical endpoints and the outer endpoints are exactly `±1`.
fn piece(k: usize, r: usize) -> Interval {
    let at = |i: usize| -1.0 + 2.0 * (i as f64) / (r as f64);
    let hi = if k + 1 == r { 1.0 } else { at(k + 1) };
    Interval::new(at(k), hi)
}

/// Deterministic stream of cells over a list of facets.
#[derive(Clone, Debug)]
pub struct GridIter {
    u: usize,
    n: usize,
    res: [usize; 2],
    facets: Vec<Facet>,
    facet_idx: usize,
    // Mixed-radix counter over the free coordinates of the current facet.
    counter: Vec<usize>,
    done: bool,
}

impl GridIter {
    fn new(u: usize, n: usize, res: GridResolution, facets: Vec<Facet>) -> Self {
        let done = facets.is_empty() || res.unstable == 0 || res.stable == 0;
        GridIter {
            u,
            n,
            res: [res.unstable, res.stable],
            facets,
            facet_idx: 0,
            counter: vec![0; n],
            done,
        }
    }

    fn radix(&self, coord: usize) -> usize {
        self.res[usize::from(coord >= self.u)]
    }

    /// Total number of cells the stream yields.
    pub fn cell_count(&self) -> usize {
        self.facets
            .iter()
            .map(|f| {
                (0..self.n)
                    .filter(|&c| c != f.coord)
                    .map(|c| self.radix(c))
                    .product::<usize>()
            })
            .sum()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }
}

impl Iterator for GridIter {
    type Item = WallCell;

    fn next(&mut self) -> Option<WallCell> {
        if self.done {
            return None;
        }
        let facet = self.facets[self.facet_idx];
        let cell: IBox = (0..self.n)
            .map(|c| {
                if c == facet.coord {
                    Interval::point(facet.side.value())
                } else {
                    piece(self.counter[c], self.radix(c))
                }
            })
            .collect();

        // Advance: last free coordinate fastest.
        let mut advanced = false;
        for c in (0..self.n).rev() {
            if c == facet.coord {
                continue;
            }
            self.counter[c] += 1;
            if self.counter[c] < self.radix(c) {
                advanced = true;
                break;
            }
            self.counter[c] = 0;
        }
        if !advanced {
            self.facet_idx += 1;
            self.done = self.facet_idx == self.facets.len();
        }
        Some(WallCell::from_box(&cell, self.u, facet))
    }
}

fn facets_of(coords: std::ops::Range<usize>) -> Vec<Facet> {
    coords
        .flat_map(|coord| {
            [Side::Lower, Side::Upper]
                .into_iter()
                .map(move |side| Facet { coord, side })
        })
        .collect()
}

/// Grid of the exit set `N_c⁻ = ∂B̄ᵤ × B̄ₛ`.
pub fn exit_grid(n: &HSet, res: impl Into<GridResolution>) -> Result<GridIter> {
    if n.u() == 0 {
        return Err(Error::EmptyExitSet);
    }
    Ok(GridIter::new(n.u(), n.dim(), res.into(), facets_of(0..n.u())))
}

/// Grid of the whole boundary `∂(B̄ᵤ × B̄ₛ)`.
pub fn boundary_grid(n: &HSet, res: impl Into<GridResolution>) -> GridIter {
    GridIter::new(n.u(), n.dim(), res.into(), facets_of(0..n.dim()))
}
