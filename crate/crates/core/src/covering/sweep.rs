//! The exit-wall and boundary sweeps with adaptive bisection.
//!
//! Initial cells are processed in fixed-size chunks. Inside a chunk every
//! cell is refined independently (depth-first, deterministic order) on the
//! worker pool; results are folded in cell order, so verdicts, box counts and
//! the reported failing cell do not depend on the number of threads.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{EvalMode, VerifyConfig};
use crate::dynamics::{eval_iterate, MapSystem};
use crate::error::{Error, Result};
use crate::hset::{boundary_grid, exit_grid, stable_inside, unstable_outside, Facet, HSet, WallCell};
use crate::interval::{IBox, IMatrix, Interval};

const CHUNK: usize = 64;
// Refutation probes are evaluated on failing cells at these depths only.
const PROBE_EVERY: usize = 3;

/// `g_c = c_M ∘ gᵏ ∘ c_N⁻¹` with interval evaluation.
pub struct ChartMap<'a> {
    pub source: &'a HSet,
    pub target: &'a HSet,
    pub map: &'a dyn MapSystem,
    pub iterates: usize,
    pub mode: EvalMode,
}

impl ChartMap<'_> {
    #[inline]
    pub fn eval(&self, cell: &IBox) -> IBox {
        match self.mode {
            EvalMode::Plain => self.eval_plain(cell),
            EvalMode::MeanValue => self.eval_mean_value(cell),
        }
    }

    #[inline]
    pub fn eval_plain(&self, cell: &IBox) -> IBox {
        let v = self.source.chart_inv(cell);
        let z = eval_iterate(self.map, self.iterates, &v);
        self.target.chart(&z)
    }

    fn eval_mean_value(&self, cell: &IBox) -> IBox {
        let mut z = self.source.chart_inv(cell);
        let mut d = IMatrix::identity(z.dim());
        for _ in 0..self.iterates {
            d = self.map.derivative(&z).matmul(&d).expect("square Jacobians");
            z = self.map.eval(&z);
        }
        let plain = self.target.chart(&z);
        let jac = self
            .target
            .inverse_matrix()
            .matmul(&d)
            .and_then(|j| j.matmul(self.source.matrix()))
            .expect("matching dimensions");
        let c = cell.mid_box();
        let at_c = self.eval_plain(&c);
        let delta = cell.sub(&c).expect("same dimension");
        let mv = at_c.add(&jac.mul_box_unchecked(&delta)).expect("same dimension");
        // Both contain the exact image, so the intersection is never empty
        // in exact terms; fall back to the plain box on rounding quirks.
        plain.intersect(&mv).unwrap_or(plain)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepKind {
    Exit,
    Entry,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepOutcome {
    Passed,
    /// The test fails at an exact point of some cell.
    Refuted,
    DepthExhausted,
    BudgetExhausted,
}

/// Result and statistics of one sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub kind: SweepKind,
    pub outcome: SweepOutcome,
    pub initial_cells: u64,
    pub boxes: u64,
    pub max_depth: usize,
    /// First failing cell in sweep order, in chart coordinates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_cell: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_facet: Option<Facet>,
    pub wall_time_secs: f64,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.outcome == SweepOutcome::Passed
    }
}

struct CellRun {
    boxes: u64,
    depth: usize,
    failure: Option<(SweepOutcome, IBox)>,
}

trait CellTest: Sync {
    fn passes(&self, cell: &IBox) -> bool;
    /// `true` when the exact values at the point `p` already fail the test.
    fn refuted_at(&self, p: &IBox) -> bool;
}

struct ExitTest<'a> {
    fc: &'a ChartMap<'a>,
    df_c0: &'a IMatrix,
    u: usize,
}

impl ExitTest<'_> {
    /// `(g_c(cell), Dg_c(0)(π_u cell × 0))` restricted to the unstable part.
    #[inline]
    fn images(&self, cell: &IBox) -> (IBox, IBox) {
        let fc = self.fc.eval(cell);
        let mut x = cell.clone();
        for i in self.u..x.dim() {
            x[i] = Interval::ZERO;
        }
        let lx = self.df_c0.mul_box_unchecked(&x);
        (fc, lx)
    }
}

impl CellTest for ExitTest<'_> {
    #[inline]
    fn passes(&self, cell: &IBox) -> bool {
        let (fc, lx) = self.images(cell);
        let z: IBox = (0..self.u).map(|i| fc[i].hull(lx[i])).collect();
        unstable_outside(&z, self.u)
    }

    fn refuted_at(&self, p: &IBox) -> bool {
        let (a, b) = self.images(p);
        (0..self.u).all(|i| a[i].hi().min(b[i].hi()) <= 1.0 && a[i].lo().max(b[i].lo()) >= -1.0)
    }
}

struct EntryTest<'a> {
    fc: &'a ChartMap<'a>,
    u: usize,
}

impl CellTest for EntryTest<'_> {
    #[inline]
    fn passes(&self, cell: &IBox) -> bool {
        stable_inside(&self.fc.eval(cell), self.u)
    }

    fn refuted_at(&self, p: &IBox) -> bool {
        let x = self.fc.eval(p);
        x.coords()[self.u..].iter().any(|c| c.lo() >= 1.0 || c.hi() <= -1.0)
    }
}

fn refine(cell: &IBox, test: &dyn CellTest, cfg: &VerifyConfig) -> CellRun {
    let mut run = CellRun {
        boxes: 0,
        depth: 0,
        failure: None,
    };
    let mut stack = vec![(cell.clone(), 0usize)];
    while let Some((b, depth)) = stack.pop() {
        run.boxes += 1;
        run.depth = run.depth.max(depth);
        if test.passes(&b) {
            continue;
        }
        let at_limit = cfg.fixed_grid || depth >= cfg.max_depth;
        if (at_limit || depth % PROBE_EVERY == 0) && test.refuted_at(&b.mid_box()) {
            run.failure = Some((SweepOutcome::Refuted, b));
            break;
        }
        if at_limit {
            run.failure = Some((SweepOutcome::DepthExhausted, b));
            break;
        }
        if run.boxes >= cfg.budget {
            run.failure = Some((SweepOutcome::BudgetExhausted, b));
            break;
        }
        match b.bisect() {
            Ok((l, r)) => {
                stack.push((r, depth + 1));
                stack.push((l, depth + 1));
            }
            Err(_) => {
                run.failure = Some((SweepOutcome::DepthExhausted, b));
                break;
            }
        }
    }
    run
}

fn run_sweep(kind: SweepKind, cells: Vec<WallCell>, test: &dyn CellTest, cfg: &VerifyConfig) -> Result<SweepReport> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let mut report = SweepReport {
        kind,
        outcome: SweepOutcome::Passed,
        initial_cells: cells.len() as u64,
        boxes: 0,
        max_depth: 0,
        failing_cell: None,
        failing_facet: None,
        wall_time_secs: 0.0,
    };
    let boxes: Vec<(IBox, Facet)> = cells.into_iter().map(|c| (c.as_box(), c.facet)).collect();
    for chunk in boxes.chunks(CHUNK) {
        let runs: Vec<CellRun> = pool.install(|| chunk.par_iter().map(|(b, _)| refine(b, test, cfg)).collect());
        for (run, (_, facet)) in runs.into_iter().zip(chunk) {
            report.boxes += run.boxes;
            report.max_depth = report.max_depth.max(run.depth);
            if let Some((outcome, cell)) = run.failure {
                if report.outcome == SweepOutcome::Passed {
                    report.outcome = outcome;
                    report.failing_cell = Some(cell.iter().map(|c| [c.lo(), c.hi()]).collect());
                    report.failing_facet = Some(*facet);
                }
            }
        }
        if report.outcome != SweepOutcome::Passed {
            break;
        }
        if report.boxes >= cfg.budget {
            report.outcome = SweepOutcome::BudgetExhausted;
            break;
        }
    }
    report.wall_time_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Exit sweep: certifies that the convex homotopy keeps `N_c⁻` away from
/// `M_c`.
pub fn check_exit_condition(fc: &ChartMap<'_>, df_c0: &IMatrix, cfg: &VerifyConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let cells = exit_grid(fc.source, cfg.resolution)?.collect();
    let test = ExitTest {
        fc,
        df_c0,
        u: fc.source.u(),
    };
    run_sweep(SweepKind::Exit, cells, &test, cfg)
}

/// Entry sweep: certifies that `π_s g_c(∂N_c) ⊂ (-1,1)ˢ`.
pub fn check_entry_condition(fc: &ChartMap<'_>, cfg: &VerifyConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let cells = boundary_grid(fc.source, cfg.resolution).collect();
    let test = EntryTest {
        fc,
        u: fc.source.u(),
    };
    run_sweep(SweepKind::Entry, cells, &test, cfg)
}
