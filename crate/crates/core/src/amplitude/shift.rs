use crate::error::{Error, Result};
use crate::gridmod::GridModule;
use crate::linalg::Matrix;

use super::spec::Norm;

/// Open range of shifts `s` for which `cube_u + s v` meets `cube_w`, as
/// `(lower, upper)`, or `None` when no shift works.
pub fn displacement_range(m: &GridModule, u: &[usize], w: &[usize], v: &[f64]) -> Option<(f64, f64)> {
    let g = m.geometry();
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for axis in 0..g.n() {
        let (a, b) = g.cell_bounds(axis, u[axis]);
        let (c, d) = g.cell_bounds(axis, w[axis]);
        if v[axis] == 0.0 {
            if u[axis] != w[axis] {
                return None;
            }
            continue;
        }
        // a + s v < d and c < b + s v
        lo = lo.max((c - b) / v[axis]);
        hi = hi.min((d - a) / v[axis]);
    }
    (hi > lo.max(0.0)).then_some((lo, hi))
}

/// `inf { eps |v| : M(t <= t + eps v) = 0 for all t }`, read off exactly
/// from the cell geometry: the supremum of all shifts realized by a nonzero
/// composite structure map, scaled by the norm of `v`.
pub fn shift_amplitude(m: &GridModule, v: &[f64], norm: Norm) -> Result<f64> {
    let g = m.geometry();
    if v.len() != g.n() {
        return Err(Error::DimensionMismatch(v.len(), g.n()));
    }
    let nv = g.num_vertices();
    let mut sup = 0.0f64;
    for ui in 0..nv {
        if m.dim_at_index(ui) == 0 {
            continue;
        }
        let u = g.vertex(ui);
        // composites from u to every vertex above it, built in flat order
        let mut reach: Vec<Option<Matrix>> = vec![None; nv];
        reach[ui] = Some(Matrix::identity(m.field(), m.dim_at_index(ui)));
        for wi in ui..nv {
            let w = g.vertex(wi);
            if w.iter().zip(&u).any(|(a, b)| a < b) {
                continue;
            }
            if wi != ui {
                let axis = (0..g.n()).find(|&a| w[a] > u[a]).expect("w above u");
                let mut prev = w.clone();
                prev[axis] -= 1;
                let pm = reach[g.index(&prev)].as_ref().expect("predecessor visited");
                reach[wi] = Some(m.map(axis, &prev).expect("successor").mul(pm));
            }
            let comp = reach[wi].as_ref().expect("set");
            if comp.is_zero() {
                continue;
            }
            if let Some((_, hi)) = displacement_range(m, &u, &w, v) {
                sup = sup.max(hi);
            }
        }
    }
    Ok(if sup == 0.0 { 0.0 } else { norm.of(v) * sup })
}
