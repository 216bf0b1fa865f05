//! The reversible map `F(x, y) = (−y + ½f(x+y), x + ½f(x+y))` on `R² × R²`
//! with `f(x₁, x₂) = (x₁(1−x₁) + 4 − x₂, x₂(1−x₂) + 4 + x₁)`.
//!
//! `S(x, y) = (−x, y)` reverses it: `S ∘ F ∘ S ∘ F = Id`. The inverse has the
//! closed form `x = Y − ½f(Y−X)`, `y = ½f(Y−X) − X` for `(X, Y) = F(x, y)`.

use std::sync::Arc;

use super::MapSystem;
use crate::error::{Error, Result};
use crate::hset::LinearReversor;
use crate::interval::{IBox, IMatrix, Interval};

/// Point evaluation of `f`.
pub fn f_point(x1: f64, x2: f64) -> [f64; 2] {
    [x1 * (1.0 - x1) + 4.0 - x2, x2 * (1.0 - x2) + 4.0 + x1]
}

#[inline]
fn f_iv(x1: Interval, x2: Interval) -> [Interval; 2] {
    // x(1−x) = ¼ − (x − ½)², which has no dependency on x.
    let q1 = Interval::point(4.25) - (x1 - 0.5).sqr();
    let q2 = Interval::point(4.25) - (x2 - 0.5).sqr();
    [q1 - x2, q2 + x1]
}

/// Enclosure of `f` over a box in `R²`.
pub fn f_eval(x: &IBox) -> Result<IBox> {
    if x.dim() != 2 {
        return Err(Error::Domain(format!("f expects dimension 2, got {}", x.dim())));
    }
    Ok(IBox::new(f_iv(x[0], x[1])))
}

/// `½ Df(s)` with `Df(s) = [[1 − 2s₁, −1], [1, 1 − 2s₂]]`.
#[inline]
fn half_df(s1: Interval, s2: Interval) -> [[Interval; 2]; 2] {
    let half = Interval::point(0.5);
    [
        [half - s1, Interval::point(-0.5)],
        [half, half - s2],
    ]
}

fn reversor() -> LinearReversor {
    LinearReversor::diagonal(&[-1.0, -1.0, 1.0, 1.0]).expect("diag(-1,-1,1,1) is an involution")
}

/// The four-dimensional reversible quadratic map.
#[derive(Clone, Debug)]
pub struct QuadraticReversibleMap {
    s: LinearReversor,
}

impl QuadraticReversibleMap {
    pub const ID: &'static str = "F-quadratic-4d";

    pub fn new() -> Self {
        QuadraticReversibleMap { s: reversor() }
    }
}

impl Default for QuadraticReversibleMap {
    fn default() -> Self {
        Self::new()
    }
}

impl MapSystem for QuadraticReversibleMap {
    fn id(&self) -> &str {
        Self::ID
    }

    fn dim(&self) -> usize {
        4
    }

    fn eval_point(&self, z: &[f64]) -> Vec<f64> {
        let (x1, x2, y1, y2) = (z[0], z[1], z[2], z[3]);
        let [f1, f2] = f_point(x1 + y1, x2 + y2);
        vec![-y1 + 0.5 * f1, -y2 + 0.5 * f2, x1 + 0.5 * f1, x2 + 0.5 * f2]
    }

    #[inline]
    fn eval(&self, z: &IBox) -> IBox {
        let (x1, x2, y1, y2) = (z[0], z[1], z[2], z[3]);
        let [f1, f2] = f_iv(x1 + y1, x2 + y2);
        let (h1, h2) = (f1.scale(0.5), f2.scale(0.5));
        IBox::new([h1 - y1, h2 - y2, x1 + h1, x2 + h2])
    }

    fn derivative(&self, z: &IBox) -> IMatrix {
        let j = half_df(z[0] + z[2], z[1] + z[3]);
        let one = Interval::ONE;
        let mut m = IMatrix::zeros(4, 4);
        for r in 0..2 {
            for c in 0..2 {
                let id = if r == c { one } else { Interval::ZERO };
                m[(r, c)] = j[r][c];
                m[(r, c + 2)] = j[r][c] - id;
                m[(r + 2, c)] = j[r][c] + id;
                m[(r + 2, c + 2)] = j[r][c];
            }
        }
        m
    }

    fn inverse(&self) -> Option<Arc<dyn MapSystem>> {
        Some(Arc::new(QuadraticInverse::new()))
    }

    fn reversor(&self) -> Option<&LinearReversor> {
        Some(&self.s)
    }
}

/// Closed-form `F⁻¹`.
#[derive(Clone, Debug)]
pub struct QuadraticInverse {
    s: LinearReversor,
}

impl QuadraticInverse {
    pub const ID: &'static str = "F-quadratic-4d^-1";

    pub fn new() -> Self {
        QuadraticInverse { s: reversor() }
    }
}

impl Default for QuadraticInverse {
    fn default() -> Self {
        Self::new()
    }
}

impl MapSystem for QuadraticInverse {
    fn id(&self) -> &str {
        Self::ID
    }

    fn dim(&self) -> usize {
        4
    }

    fn eval_point(&self, z: &[f64]) -> Vec<f64> {
        let (bx1, bx2, by1, by2) = (z[0], z[1], z[2], z[3]);
        let [f1, f2] = f_point(by1 - bx1, by2 - bx2);
        vec![by1 - 0.5 * f1, by2 - 0.5 * f2, 0.5 * f1 - bx1, 0.5 * f2 - bx2]
    }

    #[inline]
    fn eval(&self, z: &IBox) -> IBox {
        let (bx1, bx2, by1, by2) = (z[0], z[1], z[2], z[3]);
        let [f1, f2] = f_iv(by1 - bx1, by2 - bx2);
        let (h1, h2) = (f1.scale(0.5), f2.scale(0.5));
        IBox::new([by1 - h1, by2 - h2, h1 - bx1, h2 - bx2])
    }

    fn derivative(&self, z: &IBox) -> IMatrix {
        let j = half_df(z[2] - z[0], z[3] - z[1]);
        let one = Interval::ONE;
        let mut m = IMatrix::zeros(4, 4);
        for r in 0..2 {
            for c in 0..2 {
                let id = if r == c { one } else { Interval::ZERO };
                m[(r, c)] = j[r][c];
                m[(r, c + 2)] = id - j[r][c];
                m[(r + 2, c)] = -j[r][c] - id;
                m[(r + 2, c + 2)] = j[r][c];
            }
        }
        m
    }

    fn inverse(&self) -> Option<Arc<dyn MapSystem>> {
        Some(Arc::new(QuadraticReversibleMap::new()))
    }

    fn reversor(&self) -> Option<&LinearReversor> {
        Some(&self.s)
    }
}

/// `‖(S∘F∘S∘F)(z) − z‖_∞` in floating point.
pub fn reversibility_residual(z: &[f64]) -> f64 {
    let f = QuadraticReversibleMap::new();
    let flip = |v: Vec<f64>| vec![-v[0], -v[1], v[2], v[3]];
    let w = flip(f.eval_point(&flip(f.eval_point(z))));
    super::max_dist(&w, z)
}

/// Whether the interval evaluation of `S∘F∘S∘F` over `b` contains `b`.
pub fn reversibility_encloses_identity(b: &IBox) -> bool {
    let f = QuadraticReversibleMap::new();
    let s = f.reversor().unwrap();
    let w = s.apply_box(&f.eval(&s.apply_box(&f.eval(b))));
    b.subset_of(&w)
}

/// Residuals of `y₁² + (y₂+1)² = 9` and `(y₁+1)² − y₂² = 1` at a symmetric
/// point `(0, 0, y₁, y₂)`.
pub fn fixed_point_equations_residual(p: &[f64]) -> Result<(f64, f64)> {
    if p.len() != 4 || p[0] != 0.0 || p[1] != 0.0 {
        return Err(Error::Domain("fixed points of F have x₁ = x₂ = 0".into()));
    }
    let (y1, y2) = (p[2], p[3]);
    Ok((
        y1 * y1 + (y2 + 1.0) * (y2 + 1.0) - 9.0,
        (y1 + 1.0) * (y1 + 1.0) - y2 * y2 - 1.0,
    ))
}
