//! Non-rigorous point sampling of `g_c` on the exit set and the boundary.
//! Used for plots and as a necessary-condition oracle for the sweeps.

use serde::{Deserialize, Serialize};

use super::{ChartMap, EvalMode};
use crate::dynamics::MapSystem;
use crate::hset::HSet;
use crate::interval::IBox;

/// Chart images of lattice points.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FloatSweep {
    /// `(p, g_c(p))` for lattice points `p` of `∂B̄ᵤ × B̄ₛ`.
    pub exit: Vec<(Vec<f64>, Vec<f64>)>,
    /// `(p, g_c(p))` for lattice points `p` of `∂(B̄ᵤ × B̄ₛ)`.
    pub boundary: Vec<(Vec<f64>, Vec<f64>)>,
    pub u: usize,
}

impl FloatSweep {
    /// `min ‖π_u g_c(p)‖_∞` over the exit samples.
    pub fn min_exit_unstable_norm(&self) -> f64 {
        self.exit
            .iter()
            .map(|(_, y)| norm(&y[..self.u]))
            .fold(f64::INFINITY, f64::min)
    }

    /// `max ‖π_s g_c(p)‖_∞` over the boundary samples.
    pub fn max_boundary_stable_norm(&self) -> f64 {
        self.boundary
            .iter()
            .map(|(_, y)| norm(&y[self.u..]))
            .fold(0.0, f64::max)
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn linspace(k: usize) -> Vec<f64> {
    if k == 1 {
        return vec![0.0];
    }
    (0..k).map(|i| -1.0 + 2.0 * i as f64 / (k - 1) as f64).collect()
}

/// Lattice points with `per_coord` values in each free coordinate of every
/// facet `x_c = ±1`, `c ∈ coords`.
fn facet_lattice(dim: usize, coords: std::ops::Range<usize>, per_coord: usize) -> Vec<Vec<f64>> {
    let values = linspace(per_coord);
    let mut out = Vec::new();
    for c in coords {
        for side in [-1.0, 1.0] {
            let free = dim - 1;
            let total = per_coord.pow(free as u32);
            for mut idx in 0..total {
                let mut p = vec![0.0; dim];
                for (j, slot) in p.iter_mut().enumerate().rev() {
                    if j == c {
                        *slot = side;
                        continue;
                    }
                    *slot = values[idx % per_coord];
                    idx /= per_coord;
                }
                out.push(p);
            }
        }
    }
    out
}

/// Evaluates `g_c` at lattice points of the exit set and of the boundary.
pub fn float_sweep(n: &HSet, map: &dyn MapSystem, k: usize, m: &HSet, per_coord: usize) -> FloatSweep {
    let fc = ChartMap {
        source: n,
        target: m,
        map,
        iterates: k,
        mode: EvalMode::Plain,
    };
    let image = |p: Vec<f64>| {
        let y = fc.eval_plain(&IBox::point(&p)).mid();
        (p, y)
    };
    let dim = n.dim();
    FloatSweep {
        exit: facet_lattice(dim, 0..n.u(), per_coord).into_iter().map(image).collect(),
        boundary: facet_lattice(dim, 0..dim, per_coord).into_iter().map(image).collect(),
        u: n.u(),
    }
}
