//! Maps with rigorous interval evaluation.

mod linear;
mod quadratic;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hset::LinearReversor;
use crate::interval::{IBox, IMatrix};

pub use linear::LinearMap;
pub use quadratic::{
    f_eval, f_point, fixed_point_equations_residual, reversibility_encloses_identity,
    reversibility_residual, QuadraticInverse, QuadraticReversibleMap,
};

/// A smooth map `Rⁿ → Rⁿ` with enclosures of its values and Jacobian.
///
/// `eval` must enclose `eval_point` at every member of its argument, and
/// `derivative` must enclose the Jacobian at every member.
pub trait MapSystem: Send + Sync {
    /// Stable identifier used in certificates and on the command line.
    fn id(&self) -> &str;

    fn dim(&self) -> usize;

    /// Plain floating-point evaluation (not rigorous).
    fn eval_point(&self, x: &[f64]) -> Vec<f64>;

    fn eval(&self, x: &IBox) -> IBox;

    fn derivative(&self, x: &IBox) -> IMatrix;

    /// The inverse map, when it has an evaluator of its own.
    fn inverse(&self) -> Option<Arc<dyn MapSystem>> {
        None
    }

    /// Reversing symmetry `S` with `S ∘ f ∘ S = f⁻¹`, when known.
    fn reversor(&self) -> Option<&LinearReversor> {
        None
    }
}

/// Stepwise enclosures `z₀, f(z₀), …, fᵏ(z₀)`.
#[derive(Clone, Debug)]
pub struct OrbitSegment {
    pub map_id: String,
    pub points: Vec<IBox>,
    /// `Df(zᵢ)` for `i < k`, when requested.
    pub derivatives: Option<Vec<IMatrix>>,
}

impl OrbitSegment {
    pub fn steps(&self) -> usize {
        self.points.len() - 1
    }

    pub fn last(&self) -> &IBox {
        self.points.last().expect("orbit segments are never empty")
    }

    /// Chain-rule enclosure of `D(fᵏ)(z₀)`.
    pub fn derivative_product(&self) -> Option<IMatrix> {
        let ds = self.derivatives.as_ref()?;
        let n = self.points[0].dim();
        Some(ds.iter().fold(IMatrix::identity(n), |acc, d| {
            d.matmul(&acc).expect("square Jacobians of matching size")
        }))
    }
}

/// `k` steps of stepwise interval composition. No re-centring or other
/// tightening happens between steps.
pub fn iterate(map: &dyn MapSystem, k: usize, z: &IBox, with_derivatives: bool) -> Result<OrbitSegment> {
    if k == 0 {
        return Err(Error::Domain("iterate count must be positive".into()));
    }
    if z.dim() != map.dim() {
        return Err(Error::Domain(format!(
            "{} expects dimension {}, got {}",
            map.id(),
            map.dim(),
            z.dim()
        )));
    }
    let mut points = Vec::with_capacity(k + 1);
    let mut derivatives = with_derivatives.then(|| Vec::with_capacity(k));
    points.push(z.clone());
    for _ in 0..k {
        let cur = points.last().unwrap();
        if let Some(ds) = derivatives.as_mut() {
            ds.push(map.derivative(cur));
        }
        let next = map.eval(cur);
        points.push(next);
    }
    Ok(OrbitSegment {
        map_id: map.id().to_owned(),
        points,
        derivatives,
    })
}

/// `fᵏ(z)` without keeping intermediate enclosures.
#[inline]
pub fn eval_iterate(map: &dyn MapSystem, k: usize, z: &IBox) -> IBox {
    let mut cur = map.eval(z);
    for _ in 1..k {
        cur = map.eval(&cur);
    }
    cur
}

/// Floating-point orbit `x, f(x), …, fᵏ(x)`.
pub fn iterate_point(map: &dyn MapSystem, k: usize, x: &[f64]) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(k + 1);
    out.push(x.to_vec());
    for _ in 0..k {
        let next = map.eval_point(out.last().unwrap());
        out.push(next);
    }
    out
}

/// Sup-norm distance between two points.
pub fn max_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Looks up one of the shipped maps by name.
pub fn map_by_name(name: &str) -> Result<Arc<dyn MapSystem>> {
    match name {
        "F" | QuadraticReversibleMap::ID => Ok(Arc::new(QuadraticReversibleMap::new())),
        "F^-1" | "F-inverse" | QuadraticInverse::ID => Ok(Arc::new(QuadraticInverse::new())),
        other => Err(Error::Config(format!("unknown map `{other}`"))),
    }
}
