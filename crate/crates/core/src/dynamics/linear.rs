use std::sync::Arc;

use super::MapSystem;
use crate::error::Result;
use crate::interval::{imat_inverse, IBox, IMatrix};

/// `x ↦ A x` for a fixed matrix. Mostly useful as a test bed: the exact
/// answer of every covering check is available by hand.
#[derive(Clone, Debug)]
pub struct LinearMap {
    id: String,
    a: IMatrix,
    inv: Option<IMatrix>,
}

impl LinearMap {
    pub fn new(id: impl Into<String>, rows: &[Vec<f64>]) -> Result<Self> {
        let a = IMatrix::from_rows(rows)?;
        let inv = imat_inverse(&a).ok();
        Ok(LinearMap {
            id: id.into(),
            a,
            inv,
        })
    }

    pub fn diagonal(id: impl Into<String>, diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { diag[i] } else { 0.0 }).collect())
            .collect();
        Self::new(id, &rows)
    }

    pub fn identity(n: usize) -> Self {
        LinearMap {
            id: "identity".into(),
            a: IMatrix::identity(n),
            inv: Some(IMatrix::identity(n)),
        }
    }

    pub fn matrix(&self) -> &IMatrix {
        &self.a
    }
}

impl MapSystem for LinearMap {
    fn id(&self) -> &str {
        &self.id
    }

    fn dim(&self) -> usize {
        self.a.rows()
    }

    fn eval_point(&self, x: &[f64]) -> Vec<f64> {
        let m = self.a.mid();
        m.iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn eval(&self, x: &IBox) -> IBox {
        self.a.mul_box_unchecked(x)
    }

    fn derivative(&self, _x: &IBox) -> IMatrix {
        self.a.clone()
    }

    fn inverse(&self) -> Option<Arc<dyn MapSystem>> {
        let inv = self.inv.clone()?;
        Some(Arc::new(LinearMap {
            id: format!("{}^-1", self.id),
            inv: Some(self.a.clone()),
            a: inv,
        }))
    }
}
