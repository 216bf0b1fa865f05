//! Affine h-sets in the maximum norm.
//!
//! An h-set `N = 𝔥(x, M)` with `u` unstable and `s` stable directions has
//! support `|N| = M([-1,1]ⁿ) + x` and chart `c_N(v) = M⁻¹(v − x)`. The first
//! `u` columns of `M` span the nominally unstable directions.

mod file;
mod grid;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{imat_inverse, IBox, IMatrix};

pub use file::{Decimal, HSetFile};
pub use grid::{boundary_grid, exit_grid, Facet, GridIter, GridResolution, Side, WallCell};

/// An affine h-set with a certified inverse chart matrix.
#[derive(Clone, Debug, Serialize)]
pub struct HSet {
    name: String,
    center: Vec<f64>,
    columns: Vec<Vec<f64>>,
    u: usize,
    s: usize,
    #[serde(skip)]
    m: IMatrix,
    #[serde(skip)]
    inv_m: IMatrix,
}

impl PartialEq for HSet {
    /// Structural equality: center, ordered columns and the `(u, s)` split.
    /// Names and cached inverses do not take part.
    fn eq(&self, other: &HSet) -> bool {
        self.center == other.center
            && self.columns == other.columns
            && self.u == other.u
            && self.s == other.s
    }
}

impl HSet {
    /// Builds `𝔥(center, columns)` and certifies the inverse of the direction
    /// matrix.
    pub fn new(
        name: impl Into<String>,
        center: Vec<f64>,
        columns: Vec<Vec<f64>>,
        u: usize,
        s: usize,
    ) -> Result<Self> {
        let n = center.len();
        if n == 0 || u + s != n {
            return Err(Error::Domain(format!("u + s = {} but dimension is {n}", u + s)));
        }
        if columns.len() != n || columns.iter().any(|c| c.len() != n) {
            return Err(Error::Domain(format!("direction matrix must be {n}x{n}")));
        }
        if center.iter().chain(columns.iter().flatten()).any(|v| !v.is_finite()) {
            return Err(Error::Domain("h-set data must be finite".into()));
        }
        let m = IMatrix::from_columns(&columns)?;
        let inv_m = imat_inverse(&m)?;
        Ok(HSet {
            name: name.into(),
            center,
            columns,
            u,
            s,
            m,
            inv_m,
        })
    }

    /// `𝔥(x, c₁v₁, …, cₙvₙ)` with the products rounded to nearest.
    pub fn from_scaled(
        name: impl Into<String>,
        center: Vec<f64>,
        directions: &[&[f64]],
        scales: &[f64],
        u: usize,
    ) -> Result<Self> {
        if directions.len() != scales.len() {
            return Err(Error::Domain("one scale per direction required".into()));
        }
        let columns = directions
            .iter()
            .zip(scales)
            .map(|(d, &c)| d.iter().map(|&v| c * v).collect())
            .collect();
        let n = center.len();
        HSet::new(name, center, columns, u, n.saturating_sub(u))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn unstable_columns(&self) -> &[Vec<f64>] {
        &self.columns[..self.u]
    }

    pub fn stable_columns(&self) -> &[Vec<f64>] {
        &self.columns[self.u..]
    }

    /// The direction matrix `M` as a point interval matrix.
    pub fn matrix(&self) -> &IMatrix {
        &self.m
    }

    /// Certified enclosure of `M⁻¹`.
    pub fn inverse_matrix(&self) -> &IMatrix {
        &self.inv_m
    }

    pub fn center_box(&self) -> IBox {
        IBox::point(&self.center)
    }

    /// Enclosure of `c_N(v) = M⁻¹(v − x)`.
    pub fn chart(&self, v: &IBox) -> IBox {
        let shifted: IBox = v
            .iter()
            .zip(&self.center)
            .map(|(a, &x)| *a - x)
            .collect();
        self.inv_m.mul_box_unchecked(&shifted)
    }

    /// Enclosure of `c_N⁻¹(w) = M w + x`.
    pub fn chart_inv(&self, w: &IBox) -> IBox {
        self.m
            .mul_box_unchecked(w)
            .iter()
            .zip(&self.center)
            .map(|(a, &x)| *a + x)
            .collect()
    }

    /// Enclosure of the support `|N|` as an axis-aligned box.
    pub fn support_hull(&self) -> IBox {
        self.chart_inv(&IBox::unit_cube(self.dim()))
    }

    /// `Nᵀ`: same support, unstable and stable roles exchanged.
    pub fn transpose(&self) -> HSet {
        let perm: Vec<usize> = (self.u..self.dim()).chain(0..self.u).collect();
        let columns = perm.iter().map(|&j| self.columns[j].clone()).collect();
        HSet {
            name: transposed_name(&self.name),
            center: self.center.clone(),
            columns,
            u: self.s,
            s: self.u,
            m: self.m.permute_columns(&perm),
            inv_m: self.inv_m.permute_rows(&perm),
        }
    }
}

fn transposed_name(name: &str) -> String {
    name.strip_suffix("^T")
        .map(str::to_owned)
        .unwrap_or_else(|| format!("{name}^T"))
}

/// A linear involution `S` used as a reversing symmetry.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinearReversor {
    rows: Vec<Vec<f64>>,
    #[serde(skip)]
    m: IMatrix,
}

impl LinearReversor {
    /// Accepts `S` only if `S² = I` holds exactly in binary64.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let m = IMatrix::from_rows(&rows)?;
        if !m.is_square() || m.rows() == 0 {
            return Err(Error::Domain("reversor must be a non-empty square matrix".into()));
        }
        let sq = m.matmul(&m)?;
        if sq != IMatrix::identity(m.rows()) {
            return Err(Error::Domain("reversor is not an exact involution".into()));
        }
        Ok(LinearReversor { rows, m })
    }

    /// Diagonal reversor with entries `±1`.
    pub fn diagonal(signs: &[f64]) -> Result<Self> {
        let n = signs.len();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { signs[i] } else { 0.0 }).collect())
            .collect();
        Self::new(rows)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn matrix(&self) -> &IMatrix {
        &self.m
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn apply_box(&self, x: &IBox) -> IBox {
        self.m.mul_box_unchecked(x)
    }

    /// `S x` when it is exactly representable.
    pub fn apply_exact(&self, x: &[f64]) -> Option<Vec<f64>> {
        if x.len() != self.dim() {
            return None;
        }
        let img = self.m.mul_box_unchecked(&IBox::point(x));
        img.iter()
            .map(|c| c.is_point().then(|| c.lo()))
            .collect()
    }

    /// Exact membership in `Fix(S)`.
    pub fn fixes(&self, x: &[f64]) -> bool {
        self.apply_exact(x).is_some_and(|y| y == x)
    }
}

/// `Sᵀ*N`: support `S(|N|)`, center `S(x)`, directions `S·M` with the
/// unstable and stable column blocks exchanged.
pub fn sym_image(s: &LinearReversor, n: &HSet) -> Result<HSet> {
    if s.dim() != n.dim() {
        return Err(Error::Domain("reversor dimension does not match h-set".into()));
    }
    let inexact = || Error::InexactImage(n.name().to_owned());
    let center = s.apply_exact(n.center()).ok_or_else(inexact)?;
    let columns = n
        .stable_columns()
        .iter()
        .chain(n.unstable_columns())
        .map(|c| s.apply_exact(c).ok_or_else(inexact))
        .collect::<Result<Vec<_>>>()?;
    HSet::new(sym_name(n.name()), center, columns, n.s(), n.u())
}

fn sym_name(name: &str) -> String {
    name.strip_prefix("S^T*")
        .map(str::to_owned)
        .unwrap_or_else(|| format!("S^T*{name}"))
}

/// `true` iff `Sᵀ*N = N`: `u = s`, `S(x) = x` and `S(uⱼ) = sⱼ` for every
/// column pair, all exactly.
pub fn st_symmetric_check(s: &LinearReversor, n: &HSet) -> bool {
    if n.u() != n.s() || s.dim() != n.dim() || !s.fixes(n.center()) {
        return false;
    }
    n.unstable_columns()
        .iter()
        .zip(n.stable_columns())
        .all(|(u, st)| s.apply_exact(u).is_some_and(|img| &img == st))
}

/// Outcome of a rigorous separation attempt.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Disjointness {
    /// `|N| ∩ |M| = ∅` is proven.
    Disjoint,
    /// No proof found; the sets may or may not intersect.
    Inconclusive,
}

impl Disjointness {
    pub fn is_disjoint(self) -> bool {
        self == Disjointness::Disjoint
    }
}

/// Tries to prove `|N| ∩ |M| = ∅`.
///
/// A chart-cube cell of `N` is discarded when its image under `c_M ∘ c_N⁻¹`
/// misses `[-1,1]ⁿ` or its support enclosure misses the hull of `|M|`.
/// Cells are bisected up to a fixed depth.
pub fn supports_disjoint(n: &HSet, m: &HSet) -> Disjointness {
    const MAX_DEPTH: usize = 16;
    if n.dim() != m.dim() {
        return Disjointness::Inconclusive;
    }
    let m_hull = m.support_hull();
    let unit = IBox::unit_cube(m.dim());
    let separated = |cell: &IBox| {
        let img = n.chart_inv(cell);
        img.intersect(&m_hull).is_none() || m.chart(&img).intersect(&unit).is_none()
    };
    let mut stack = vec![(IBox::unit_cube(n.dim()), 0usize)];
    while let Some((cell, depth)) = stack.pop() {
        if separated(&cell) {
            continue;
        }
        if depth >= MAX_DEPTH {
            return Disjointness::Inconclusive;
        }
        match cell.bisect() {
            Ok((a, b)) => {
                stack.push((b, depth + 1));
                stack.push((a, depth + 1));
            }
            Err(_) => return Disjointness::Inconclusive,
        }
    }
    Disjointness::Disjoint
}

/// `true` when the box `c_N(v)` lies strictly outside `[-1,1]ᵘ` in the
/// unstable coordinates.
pub(crate) fn unstable_outside(w: &IBox, u: usize) -> bool {
    w.coords()[..u].iter().any(|c| c.lo() > 1.0 || c.hi() < -1.0)
}

/// `true` when every stable coordinate of `w` lies in `(-1, 1)`.
pub(crate) fn stable_inside(w: &IBox, u: usize) -> bool {
    w.coords()[u..].iter().all(|c| c.strictly_inside(-1.0, 1.0))
}
