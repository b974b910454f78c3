//! Vietoris-Rips persistent homology over F2, and Hilbert functions of a
//! density-Rips bifiltration.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::barcode::{Bar, Barcode};
use crate::error::{Error, Result};
use crate::gridmod::{GridGeometry, HilbertFunction};

/// Highest homology degree supported.
pub const MAX_DIM: usize = 2;

/// Symmetric dissimilarity matrix with zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct DistMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("distance matrix must be square".into()));
        }
        for i in 0..n {
            if rows[i][i] != 0.0 {
                return Err(Error::Invalid(format!("nonzero diagonal entry at {i}")));
            }
            for j in 0..n {
                let d = rows[i][j];
                if d.is_nan() || d < 0.0 {
                    return Err(Error::Invalid(format!("entry ({i}, {j}) = {d} is not a nonnegative number")));
                }
                if d != rows[j][i] {
                    return Err(Error::Invalid(format!("matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(DistMatrix { n, data: rows.into_iter().flatten().collect() })
    }

    /// Euclidean distances between points.
    pub fn from_points(points: &[Vec<f64>]) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::Shape("points have different dimensions".into()));
        }
        let rows = points
            .iter()
            .map(|p| {
                points
                    .iter()
                    .map(|q| p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt())
                    .collect()
            })
            .collect();
        DistMatrix::new(rows)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Restriction to the points in `keep`, in order.
    pub fn subset(&self, keep: &[usize]) -> DistMatrix {
        let data = keep.iter().flat_map(|&i| keep.iter().map(move |&j| (i, j))).map(|(i, j)| self.get(i, j)).collect();
        DistMatrix { n: keep.len(), data }
    }
}

/// Simplex with its Rips filtration value.
#[derive(Clone, Debug, PartialEq)]
pub struct FilteredSimplex {
    pub vertices: Vec<usize>,
    pub value: f64,
}

/// Simplices of dimension at most `max_simplex_dim` with value at most
/// `max_radius`, in filtration order (value, then dimension, then vertices).
pub fn rips_filtration(d: &DistMatrix, max_simplex_dim: usize, max_radius: f64) -> Vec<FilteredSimplex> {
    let mut out: Vec<FilteredSimplex> = (0..d.len()).map(|i| FilteredSimplex { vertices: vec![i], value: 0.0 }).collect();
    let mut frontier = out.clone();
    for _ in 0..max_simplex_dim {
        let mut next = Vec::new();
        for s in &frontier {
            let last = *s.vertices.last().expect("nonempty simplex");
            for v in last + 1..d.len() {
                let value = s.vertices.iter().fold(s.value, |m, &u| m.max(d.get(u, v)));
                if value <= max_radius {
                    let mut vertices = s.vertices.clone();
                    vertices.push(v);
                    next.push(FilteredSimplex { vertices, value });
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort_by(|a, b| {
        a.value
            .total_cmp(&b.value)
            .then(a.vertices.len().cmp(&b.vertices.len()))
            .then_with(|| a.vertices.cmp(&b.vertices))
    });
    out
}

/// Barcodes in degrees `0..=max_dim` of the Rips filtration truncated at
/// `max_radius`. Zero-length pairs are dropped; unpaired classes die at
/// infinity.
pub fn vr_barcodes(d: &DistMatrix, max_dim: usize, max_radius: f64) -> Result<Vec<Barcode>> {
    if max_dim > MAX_DIM {
        return Err(Error::OutOfRange(format!("homology degree {max_dim} above {MAX_DIM}")));
    }
    if max_radius.is_nan() {
        return Err(Error::Invalid("max radius is NaN".into()));
    }
    let simplices = rips_filtration(d, max_dim + 1, max_radius);
    let index: HashMap<&[usize], usize> = simplices.iter().enumerate().map(|(i, s)| (s.vertices.as_slice(), i)).collect();
    let mut reduced: Vec<Vec<usize>> = Vec::with_capacity(simplices.len());
    // column owning each pivot row
    let mut owner: HashMap<usize, usize> = HashMap::new();
    let mut paired = vec![false; simplices.len()];
    let mut bars: Vec<Vec<Bar>> = vec![Vec::new(); max_dim + 1];
    for (j, s) in simplices.iter().enumerate() {
        let k = s.vertices.len() - 1;
        let mut col: Vec<usize> = (0..s.vertices.len())
            .filter(|_| k > 0)
            .map(|drop| {
                let face: Vec<usize> = s.vertices.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
                index[face.as_slice()]
            })
            .collect();
        col.sort_unstable();
        while let Some(&other) = col.last().and_then(|low| owner.get(low)) {
            col = symmetric_difference(&col, &reduced[other]);
        }
        if let Some(&low) = col.last() {
            owner.insert(low, j);
            paired[low] = true;
            paired[j] = true;
            let birth = simplices[low].value;
            if birth < s.value {
                bars[k - 1].push(Bar::of(birth, s.value));
            }
        }
        reduced.push(col);
    }
    for (j, s) in simplices.iter().enumerate() {
        let k = s.vertices.len() - 1;
        if !paired[j] && k <= max_dim {
            bars[k].push(Bar::of(s.value, f64::INFINITY));
        }
    }
    Ok(bars.into_iter().map(|b| Barcode::new(b).canonical()).collect())
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Hilbert function of the density-Rips bifiltration in one homology
/// degree. Axis 0 is the density threshold (points with density at least
/// the cell's lower breakpoint), axis 1 the Rips scale; each cell takes the
/// Betti number at its lower corner.
pub fn bifiltration_hilbert(d: &DistMatrix, density: &[f64], radius_bps: &[f64], density_bps: &[f64], degree: usize) -> Result<HilbertFunction> {
    if density.len() != d.len() {
        return Err(Error::DimensionMismatch(density.len(), d.len()));
    }
    if density.iter().any(|x| x.is_nan()) {
        return Err(Error::Invalid("density value is NaN".into()));
    }
    let geometry = GridGeometry::new(vec![density_bps.to_vec(), radius_bps.to_vec()])?;
    let top = *radius_bps.last().expect("validated nonempty");
    let rows: Vec<Vec<usize>> = density_bps
        .par_iter()
        .map(|&delta| {
            let keep: Vec<usize> = (0..d.len()).filter(|&i| density[i] >= delta).collect();
            let bc = vr_barcodes(&d.subset(&keep), degree, top)?.swap_remove(degree);
            Ok(radius_bps.iter().map(|&eps| bc.hilbert_function(eps)).collect())
        })
        .collect::<Result<_>>()?;
    HilbertFunction::new(geometry, rows.concat())
}
