use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cell decomposition of `[bp[0], inf)` on every axis.
///
/// Cell `i` on an axis is `[bp[i], bp[i+1])`; the last cell is
/// `[bp[last], inf)`. Vertices are multi-indices into the cell grid and are
/// flattened row-major with the last axis fastest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridGeometry {
    breakpoints: Vec<Vec<f64>>,
}

impl GridGeometry {
    pub fn new(breakpoints: Vec<Vec<f64>>) -> Result<Self> {
        if breakpoints.is_empty() {
            return Err(Error::Geometry("need at least one axis".into()));
        }
        for (axis, bps) in breakpoints.iter().enumerate() {
            if bps.is_empty() {
                return Err(Error::Geometry(format!("axis {} has no breakpoints", axis + 1)));
            }
            if bps.iter().any(|x| !x.is_finite()) {
                return Err(Error::Geometry(format!("axis {} has a non-finite breakpoint", axis + 1)));
            }
            if bps.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Geometry(format!(
                    "breakpoints on axis {} are not strictly increasing",
                    axis + 1
                )));
            }
        }
        Ok(GridGeometry { breakpoints })
    }

    /// Integer breakpoints `0, 1, ..., cells-1` on every axis.
    pub fn unit(shape: &[usize]) -> Result<Self> {
        GridGeometry::new(
            shape
                .iter()
                .map(|&c| (0..c).map(|i| i as f64).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.breakpoints.len()
    }

    pub fn breakpoints(&self) -> &[Vec<f64>] {
        &self.breakpoints
    }

    pub fn axis(&self, i: usize) -> &[f64] {
        &self.breakpoints[i]
    }

    pub fn shape(&self) -> Vec<usize> {
        self.breakpoints.iter().map(Vec::len).collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.breakpoints.iter().map(Vec::len).product()
    }

    pub fn last(&self, axis: usize) -> usize {
        self.breakpoints[axis].len() - 1
    }

    pub fn index(&self, u: &[usize]) -> usize {
        debug_assert_eq!(u.len(), self.n());
        let mut idx = 0;
        for (axis, &x) in u.iter().enumerate() {
            debug_assert!(x < self.breakpoints[axis].len());
            idx = idx * self.breakpoints[axis].len() + x;
        }
        idx
    }

    pub fn vertex(&self, mut idx: usize) -> Vec<usize> {
        let mut u = vec![0; self.n()];
        for axis in (0..self.n()).rev() {
            let len = self.breakpoints[axis].len();
            u[axis] = idx % len;
            idx /= len;
        }
        u
    }

    pub fn contains(&self, u: &[usize]) -> bool {
        u.len() == self.n() && u.iter().zip(&self.breakpoints).all(|(&x, b)| x < b.len())
    }

    pub fn check_vertex(&self, u: &[usize]) -> Result<()> {
        if self.contains(u) {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("vertex {u:?} outside grid of shape {:?}", self.shape())))
        }
    }

    /// All vertices in flat order.
    pub fn vertices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.num_vertices()).map(move |i| self.vertex(i))
    }

    /// `u + e_axis` if it stays inside the grid.
    pub fn successor(&self, u: &[usize], axis: usize) -> Option<Vec<usize>> {
        if u[axis] + 1 < self.breakpoints[axis].len() {
            let mut w = u.to_vec();
            w[axis] += 1;
            Some(w)
        } else {
            None
        }
    }

    /// Half-open extent `[lo, hi)` of cell `i` on `axis`.
    pub fn cell_bounds(&self, axis: usize, i: usize) -> (f64, f64) {
        let b = &self.breakpoints[axis];
        (b[i], b.get(i + 1).copied().unwrap_or(f64::INFINITY))
    }

    /// Cell index containing `x`, or `None` below the first breakpoint.
    pub fn cell_of(&self, axis: usize, x: f64) -> Option<usize> {
        let b = &self.breakpoints[axis];
        if x < b[0] {
            return None;
        }
        Some(b.partition_point(|&y| y <= x) - 1)
    }

    /// Vertex whose cell contains `point`.
    pub fn locate(&self, point: &[f64]) -> Option<Vec<usize>> {
        if point.len() != self.n() {
            return None;
        }
        point
            .iter()
            .enumerate()
            .map(|(axis, &x)| self.cell_of(axis, x))
            .collect()
    }

    /// Lebesgue volume of a cell, `inf` for cells touching a last cell.
    pub fn volume(&self, u: &[usize]) -> f64 {
        let mut v = 1.0;
        for (axis, &i) in u.iter().enumerate() {
            let (lo, hi) = self.cell_bounds(axis, i);
            v *= hi - lo;
        }
        v
    }

    /// Axis-wise union of breakpoints.
    pub fn union(&self, other: &GridGeometry) -> Result<GridGeometry> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch(self.n(), other.n()));
        }
        let bps = self
            .breakpoints
            .iter()
            .zip(&other.breakpoints)
            .map(|(a, b)| {
                let mut m: Vec<f64> = a.iter().chain(b).copied().collect();
                m.sort_by(f64::total_cmp);
                m.dedup();
                m
            })
            .collect();
        GridGeometry::new(bps)
    }

    /// True when every breakpoint of `self` also occurs in `finer`.
    pub fn is_refined_by(&self, finer: &GridGeometry) -> bool {
        self.n() == finer.n()
            && self
                .breakpoints
                .iter()
                .zip(&finer.breakpoints)
                .all(|(a, b)| a.iter().all(|x| b.contains(x)))
    }

    /// Geometry spanned by the given axes, in the given order.
    pub fn restrict(&self, axes: &[usize]) -> Result<GridGeometry> {
        GridGeometry::new(axes.iter().map(|&a| self.breakpoints[a].clone()).collect())
    }

    /// Single cell `[0, inf)` on one axis; stands in for a bare vector space.
    pub fn point() -> GridGeometry {
        GridGeometry { breakpoints: vec![vec![0.0]] }
    }
}

/// A nonempty set of axes (0-based), i.e. a face of the positive cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Face {
    axes: Vec<usize>,
}

impl Face {
    /// Builds a face from 0-based axes within dimension `n`.
    pub fn new(mut axes: Vec<usize>, n: usize) -> Result<Self> {
        axes.sort_unstable();
        axes.dedup();
        if axes.is_empty() {
            return Err(Error::Invalid("a face needs at least one axis".into()));
        }
        if let Some(&a) = axes.iter().find(|&&a| a >= n) {
            return Err(Error::OutOfRange(format!("axis {} in dimension {n}", a + 1)));
        }
        Ok(Face { axes })
    }

    /// Parses a comma separated list of 1-based axes, e.g. `1,2`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let axes = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&a| a >= 1)
                    .map(|a| a - 1)
                    .ok_or_else(|| Error::Invalid(format!("bad axis `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Face::new(axes, n)
    }

    pub fn axes(&self) -> &[usize] {
        &self.axes
    }

    pub fn contains(&self, axis: usize) -> bool {
        self.axes.contains(&axis)
    }

    /// Remaining axes of an `n`-dimensional grid; may be empty.
    pub fn complement(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|a| !self.axes.contains(a)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_roundtrip() {
        let g = GridGeometry::unit(&[2, 3, 4]).unwrap();
        for i in 0..g.num_vertices() {
            assert_eq!(g.index(&g.vertex(i)), i);
        }
        assert_eq!(g.vertex(1), vec![0, 0, 1]);
    }

    #[test]
    fn cells() {
        let g = GridGeometry::new(vec![vec![0.0, 2.0, 5.0]]).unwrap();
        assert_eq!(g.cell_of(0, -1.0), None);
        assert_eq!(g.cell_of(0, 0.0), Some(0));
        assert_eq!(g.cell_of(0, 2.0), Some(1));
        assert_eq!(g.cell_of(0, 100.0), Some(2));
        assert_eq!(g.volume(&[1]), 3.0);
        assert_eq!(g.volume(&[2]), f64::INFINITY);
        assert!(GridGeometry::new(vec![vec![1.0, 1.0]]).is_err());
    }

    #[test]
    fn union_merges() {
        let a = GridGeometry::new(vec![vec![0.0, 1.0]]).unwrap();
        let b = GridGeometry::new(vec![vec![0.0, 0.5]]).unwrap();
        assert_eq!(a.union(&b).unwrap().axis(0), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn faces() {
        let f = Face::parse("2,1", 3).unwrap();
        assert_eq!(f.axes(), &[0, 1]);
        assert_eq!(f.complement(3), vec![2]);
        assert!(Face::parse("4", 3).is_err());
        assert!(Face::new(vec![], 2).is_err());
    }
}
