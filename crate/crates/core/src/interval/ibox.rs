use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::Interval;
use crate::error::{Error, Result};

type Coords = SmallVec<[Interval; 4]>;

/// A product of closed intervals, `[a₁,b₁] × ⋯ × [aₙ,bₙ]`.
///
/// Boxes of dimension up to four live inline without heap allocation.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IBox(Coords);

impl IBox {
    pub fn new(coords: impl IntoIterator<Item = Interval>) -> Self {
        IBox(coords.into_iter().collect())
    }

    /// Degenerate box at a point.
    pub fn point(x: &[f64]) -> Self {
        IBox(x.iter().copied().map(Interval::point).collect())
    }

    /// `[-1, 1]ⁿ`.
    pub fn unit_cube(n: usize) -> Self {
        IBox(std::iter::repeat_n(Interval::UNIT, n).collect())
    }

    pub fn zeros(n: usize) -> Self {
        IBox(std::iter::repeat_n(Interval::ZERO, n).collect())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn coords(&self) -> &[Interval] {
        &self.0
    }

    #[inline]
    pub fn iter(&self) -> impl Iterator<Item = &Interval> {
        self.0.iter()
    }

    pub fn mid(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.mid()).collect()
    }

    pub fn mid_box(&self) -> IBox {
        IBox(self.0.iter().map(|c| Interval::point(c.mid())).collect())
    }

    pub fn contains_point(&self, x: &[f64]) -> bool {
        x.len() == self.dim() && self.0.iter().zip(x).all(|(c, &v)| c.contains(v))
    }

    pub fn subset_of(&self, other: &IBox) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a.subset_of(*b))
    }

    pub fn max_width(&self) -> f64 {
        self.0.iter().map(|c| c.width()).fold(0.0, f64::max)
    }

    /// Index of the widest coordinate; ties go to the lowest index.
    pub fn widest_coord(&self) -> usize {
        let mut best = 0;
        let mut w = f64::NEG_INFINITY;
        for (i, c) in self.0.iter().enumerate() {
            let cw = c.width();
            if cw > w {
                w = cw;
                best = i;
            }
        }
        best
    }

    /// Coordinate-wise hull of `self ∪ other`.
    pub fn hull(&self, other: &IBox) -> Result<IBox> {
        check_dims(self.dim(), other.dim())?;
        Ok(IBox(
            self.0.iter().zip(&other.0).map(|(a, b)| a.hull(*b)).collect(),
        ))
    }

    /// `true` when the boxes share at least one point.
    pub fn intersects(&self, other: &IBox) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a.intersect(*b).is_some())
    }

    /// Splits at the midpoint of the widest coordinate.
    pub fn bisect(&self) -> Result<(IBox, IBox)> {
        let i = self.widest_coord();
        if self.dim() == 0 || self.0[i].width() == 0.0 {
            return Err(Error::DegenerateBox);
        }
        let (a, b) = self.0[i].bisect();
        let mut left = self.clone();
        let mut right = self.clone();
        left.0[i] = a;
        right.0[i] = b;
        Ok((left, right))
    }

    /// The sub-box of coordinates `range`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> IBox {
        IBox(self.0[range].iter().copied().collect())
    }

    /// Concatenation `self × other`.
    pub fn product(&self, other: &IBox) -> IBox {
        IBox(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn add(&self, other: &IBox) -> Result<IBox> {
        check_dims(self.dim(), other.dim())?;
        Ok(IBox(self.0.iter().zip(&other.0).map(|(a, b)| *a + *b).collect()))
    }

    pub fn sub(&self, other: &IBox) -> Result<IBox> {
        check_dims(self.dim(), other.dim())?;
        Ok(IBox(self.0.iter().zip(&other.0).map(|(a, b)| *a - *b).collect()))
    }

    pub fn intersect(&self, other: &IBox) -> Option<IBox> {
        if self.dim() != other.dim() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.intersect(*b))
            .collect::<Option<Coords>>()
            .map(IBox)
    }
}

/// Smallest representable box containing `a ∪ b`.
pub fn box_hull(a: &IBox, b: &IBox) -> Result<IBox> {
    a.hull(b)
}

/// Splits `b` at the midpoint of its widest coordinate.
pub fn box_bisect(b: &IBox) -> Result<(IBox, IBox)> {
    b.bisect()
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::Domain(format!("dimension mismatch: {a} vs {b}")))
    }
}

impl Index<usize> for IBox {
    type Output = Interval;
    #[inline]
    fn index(&self, i: usize) -> &Interval {
        &self.0[i]
    }
}

impl IndexMut<usize> for IBox {
    #[inline]
    fn index_mut(&mut self, i: usize) -> &mut Interval {
        &mut self.0[i]
    }
}

impl FromIterator<Interval> for IBox {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        IBox(iter.into_iter().collect())
    }
}

impl fmt::Debug for IBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}
