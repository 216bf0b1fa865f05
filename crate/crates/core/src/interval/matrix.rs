use std::fmt;

use serde::{Deserialize, Serialize};

use super::{IBox, Interval};
use crate::error::{Error, Result};

/// Dense row-major matrix of intervals.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct IMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Interval>,
}

impl IMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMatrix {
            rows,
            cols,
            data: vec![Interval::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Interval::ONE;
        }
        m
    }

    /// Point matrix from row slices.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Domain("ragged matrix rows".into()));
        }
        Ok(IMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().map(Interval::point).collect(),
        })
    }

    /// Point matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        let c = columns.len();
        let r = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|col| col.len() != r) {
            return Err(Error::Domain("ragged matrix columns".into()));
        }
        let mut m = Self::zeros(r, c);
        for (j, col) in columns.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = Interval::point(v);
            }
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Interval) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IMatrix { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_point(&self) -> bool {
        self.data.iter().all(|x| x.is_point())
    }

    /// Midpoint matrix as rows.
    pub fn mid(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].mid()).collect())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Interval> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Sub-matrix of rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> IMatrix {
        IMatrix::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn transpose(&self) -> IMatrix {
        IMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Columns reordered so that column `j` of the result is column `perm[j]`.
    pub fn permute_columns(&self, perm: &[usize]) -> IMatrix {
        IMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, perm[j])])
    }

    /// Rows reordered so that row `i` of the result is row `perm[i]`.
    pub fn permute_rows(&self, perm: &[usize]) -> IMatrix {
        IMatrix::from_fn(self.rows, self.cols, |i, j| self[(perm[i], j)])
    }

    pub fn matmul(&self, rhs: &IMatrix) -> Result<IMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Domain(format!(
                "shape mismatch: {}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(IMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(Interval::ZERO, |acc, k| acc + self[(i, k)] * rhs[(k, j)])
        }))
    }

    /// `self · v` without shape checks; callers guarantee `v.dim() == cols`.
    #[inline]
    pub(crate) fn mul_box_unchecked(&self, v: &IBox) -> IBox {
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter()
                    .zip(v.iter())
                    .fold(Interval::ZERO, |acc, (a, x)| acc + *a * *x)
            })
            .collect()
    }

    pub fn mul_box(&self, v: &IBox) -> Result<IBox> {
        if v.dim() != self.cols {
            return Err(Error::Domain(format!(
                "shape mismatch: {}x{} matrix on {}-box",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        Ok(self.mul_box_unchecked(v))
    }

    /// `true` when every entry of `self` contains the matching entry of the
    /// identity matrix.
    pub fn encloses_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self[(i, j)].contains(if i == j { 1.0 } else { 0.0 }))
            })
    }

    pub fn max_width(&self) -> f64 {
        self.data.iter().map(|x| x.width()).fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for IMatrix {
    type Output = Interval;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Interval {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Interval {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for i in 0..self.rows {
            l.entry(&&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        l.finish()
    }
}

/// Enclosure of `{ A x : A ∈ m, x ∈ v }`.
pub fn imat_vec(m: &IMatrix, v: &IBox) -> Result<IBox> {
    m.mul_box(v)
}

/// Forward elimination with partial pivoting on `[a | b]`, in place.
///
/// Returns the row permutation parity. Fails with the offending column when a
/// pivot interval contains zero.
fn eliminate(a: &mut IMatrix, b: Option<&mut IMatrix>) -> Result<bool> {
    let n = a.rows;
    let mut b = b;
    let mut odd = false;
    for k in 0..n {
        // Pivot on the largest midpoint magnitude; the choice only needs to
        // be deterministic, soundness comes from the zero-exclusion check.
        let p = (k..n)
            .max_by(|&i, &j| {
                a[(i, k)]
                    .mid()
                    .abs()
                    .partial_cmp(&a[(j, k)].mid().abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then(j.cmp(&i))
            })
            .unwrap_or(k);
        if a[(p, k)].contains_zero() {
            return Err(Error::SingularMatrix { column: k });
        }
        if p != k {
            odd = !odd;
            for j in 0..a.cols {
                a.data.swap(k * a.cols + j, p * a.cols + j);
            }
            if let Some(b) = b.as_deref_mut() {
                for j in 0..b.cols {
                    b.data.swap(k * b.cols + j, p * b.cols + j);
                }
            }
        }
        let pivot = a[(k, k)];
        for i in k + 1..n {
            let factor = a[(i, k)].checked_div(pivot)?;
            if factor == Interval::ZERO {
                continue;
            }
            a[(i, k)] = Interval::ZERO;
            for j in k + 1..a.cols {
                a[(i, j)] = a[(i, j)] - factor * a[(k, j)];
            }
            if let Some(b) = b.as_deref_mut() {
                for j in 0..b.cols {
                    b[(i, j)] = b[(i, j)] - factor * b[(k, j)];
                }
            }
        }
    }
    Ok(odd)
}

/// Rigorous enclosure of `M⁻¹` by interval Gaussian elimination with
/// partial pivoting.
///
/// `SingularMatrix` means the elimination could not certify a pivot, not that
/// the matrix is singular.
pub fn imat_inverse(m: &IMatrix) -> Result<IMatrix> {
    if !m.is_square() {
        return Err(Error::Domain(format!("cannot invert {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut x = IMatrix::identity(n);
    eliminate(&mut a, Some(&mut x))?;
    for k in (0..n).rev() {
        let pivot = a[(k, k)];
        for j in 0..n {
            let mut acc = x[(k, j)];
            for l in k + 1..n {
                acc = acc - a[(k, l)] * x[(l, j)];
            }
            x[(k, j)] = acc.checked_div(pivot)?;
        }
    }
    Ok(x)
}

/// Enclosure of `det M`: cofactor expansion for `n ≤ 3`, interval LU beyond.
pub fn det_enclosure(m: &IMatrix) -> Result<Interval> {
    if !m.is_square() {
        return Err(Error::Domain(format!("determinant of {}x{} matrix", m.rows, m.cols)));
    }
    let e = |i, j| m[(i, j)];
    Ok(match m.rows {
        0 => Interval::ONE,
        1 => e(0, 0),
        2 => e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0),
        3 => {
            e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
                - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
                + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
        }
        n => {
            let mut a = m.clone();
            match eliminate(&mut a, None) {
                Ok(odd) => {
                    let d = (0..n).fold(Interval::ONE, |acc, k| acc * a[(k, k)]);
                    if odd {
                        -d
                    } else {
                        d
                    }
                }
                // Some pivot may vanish; no sign can be certified.
                Err(Error::SingularMatrix { .. }) => Interval::ENTIRE,
                Err(e) => return Err(e),
            }
        }
    })
}

/// Sign of `det M`, certified by an enclosure that excludes zero.
pub fn det_sign(m: &IMatrix) -> Result<i32> {
    let d = det_enclosure(m)?;
    if d.lo() > 0.0 {
        Ok(1)
    } else if d.hi() < 0.0 {
        Ok(-1)
    } else {
        Err(Error::IndeterminateSign { lo: d.lo(), hi: d.hi() })
    }
}
