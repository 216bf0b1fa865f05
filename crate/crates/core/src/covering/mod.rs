//! Certified covering and backcovering relations.
//!
//! For h-sets `N`, `M` with equal `(u, s)` and a map `g`, let
//! `g_c = c_M ∘ gᵏ ∘ c_N⁻¹` and `A = π_u Dg_c(0)|_{Rᵘ×0}`. The convex homotopy
//! `h(t, p, q) = (1−t) g_c(p, q) + t (A p, 0)` witnesses `N ⇒ M` with degree
//! `sgn det A` once two sweeps succeed:
//!
//! * the exit sweep covers `∂B̄ᵤ × B̄ₛ` with cells `G` and checks that
//!   `π_u hull(g_c(G), Dg_c(0)(π_u G × 0))` misses `[-1,1]ᵘ`;
//! * the entry sweep covers `∂(B̄ᵤ × B̄ₛ)` and checks that `π_s g_c(G)` lies in
//!   `(-1,1)ˢ`; since `g_c` is a diffeomorphism the interior follows.
//!
//! A failure means only that this particular homotopy could not be certified.

mod degree;
mod sample;
mod sweep;
mod verify;

use serde::{Deserialize, Serialize};

use crate::hset::GridResolution;

pub use degree::{compute_degree, DegreeData};
pub use sample::{float_sweep, FloatSweep};
pub use sweep::{check_entry_condition, check_exit_condition, ChartMap, SweepKind, SweepOutcome, SweepReport};
pub use verify::{verify_backcover, verify_cover};

/// How `g_c` is enclosed over a cell.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvalMode {
    /// Stepwise interval composition of the charts and iterates.
    #[default]
    Plain,
    /// Plain enclosure intersected with the mean-value form around the
    /// cell centre.
    MeanValue,
}

/// Knobs of a verification run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// Initial pieces per free facet coordinate.
    pub resolution: GridResolution,
    /// Maximum number of bisections applied to an initial cell.
    pub max_depth: usize,
    /// Worker threads; `0` lets the pool decide.
    pub threads: usize,
    /// Boxes a single relation may evaluate before giving up.
    pub budget: u64,
    /// Use the initial grid only, never bisect.
    pub fixed_grid: bool,
    pub eval_mode: EvalMode,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            resolution: GridResolution::uniform(4),
            max_depth: 30,
            threads: 0,
            budget: 4_000_000_000,
            fixed_grid: false,
            eval_mode: EvalMode::Plain,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> crate::Result<()> {
        if self.budget == 0 {
            return Err(crate::Error::Config("box budget must be positive".into()));
        }
        if self.resolution.unstable == 0 || self.resolution.stable == 0 {
            return Err(crate::Error::Config("grid resolution must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// `N ⇒ M` under `gᵏ`.
    Direct,
    /// `N ⇐ M`: `Mᵀ ⇒ Nᵀ` under `g⁻ᵏ`.
    Back,
    /// Obtained from a verified edge through a reversing symmetry.
    DerivedBySymmetry,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    /// The test fails at an exact point, so no refinement can succeed.
    RefutedCell,
    /// Depth, budget or degree computation ran out before a verdict.
    Inconclusive,
}

/// Verified relation record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoveringCertificate {
    pub source: String,
    pub target: String,
    pub map: String,
    pub iterates: usize,
    pub direction: Direction,
    /// `Direct` or `Back` for a derived edge: the kind of relation it asserts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<Direction>,
    pub degree: Option<i32>,
    pub status: Status,
    pub boxes: u64,
    pub max_depth: usize,
    pub wall_time_secs: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sweeps: Vec<SweepReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CoveringCertificate {
    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified && self.degree.is_some()
    }

    /// `true` if the certificate asserts a backcovering.
    pub fn is_back(&self) -> bool {
        match self.direction {
            Direction::Back => true,
            Direction::Direct => false,
            Direction::DerivedBySymmetry => self.relation == Some(Direction::Back),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates always serialize")
    }
}

/// `|w₁ · … · w_k|` along a chain of certificates; `None` if any degree is
/// unknown.
pub fn chain_degree(chain: &[&CoveringCertificate]) -> Option<i32> {
    chain
        .iter()
        .try_fold(1i32, |acc, c| c.degree.map(|w| acc * w))
        .map(i32::abs)
}
