//! Morphism calculus on grid modules.

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, quotient_basis, rank, solve_in_span, span_basis, Matrix};

use super::geometry::{Face, GridGeometry};
use super::module::{GridModule, ModuleMorphism};

/// Re-expresses `m` on a geometry whose breakpoints contain those of `m`.
pub fn refine_to(m: &GridModule, finer: &GridGeometry) -> Result<GridModule> {
    let coarse = m.geometry();
    if !coarse.is_refined_by(finer) {
        return Err(Error::Geometry("target grid does not refine the module's grid".into()));
    }
    let n = finer.n();
    // old cell of each new cell, per axis
    let old: Vec<Vec<Option<usize>>> = (0..n)
        .map(|a| finer.axis(a).iter().map(|&x| coarse.cell_of(a, x)).collect())
        .collect();
    let old_vertex = |u: &[usize]| -> Option<Vec<usize>> {
        u.iter().enumerate().map(|(a, &i)| old[a][i]).collect()
    };
    let dims = finer
        .vertices()
        .map(|u| old_vertex(&u).map_or(0, |v| m.dim(&v)))
        .collect::<Vec<_>>();
    let field = m.field();
    GridModule::assemble(field, finer.clone(), dims.clone(), |axis, u| {
        let w = finer.successor(u, axis).expect("successor");
        let du = dims[finer.index(u)];
        let dw = dims[finer.index(&w)];
        match (old_vertex(u), old_vertex(&w)) {
            (Some(ou), Some(ow)) if ou == ow => Ok(Matrix::identity(field, du)),
            (Some(ou), Some(_)) => Ok(m.map(axis, &ou).expect("coarse successor").clone()),
            _ => Ok(Matrix::zeros(field, dw, du)),
        }
    })
}

/// Both modules on the union of their breakpoints.
pub fn common_refinement(a: &GridModule, b: &GridModule) -> Result<(GridModule, GridModule)> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(a.n(), b.n()));
    }
    if a.field() != b.field() {
        return Err(Error::PrimeMismatch(a.field().modulus(), b.field().modulus()));
    }
    let g = a.geometry().union(b.geometry())?;
    Ok((refine_to(a, &g)?, refine_to(b, &g)?))
}

/// Submodule given by a column basis at every vertex. The spans must be
/// closed under the structure maps.
pub(crate) fn submodule_from_spans(m: &GridModule, spans: Vec<Matrix>) -> Result<(GridModule, ModuleMorphism)> {
    let g = m.geometry().clone();
    let dims: Vec<usize> = spans.iter().map(Matrix::cols).collect();
    let sub = GridModule::assemble(m.field(), g.clone(), dims, |axis, u| {
        let idx = g.index(u);
        let w = g.successor(u, axis).expect("successor");
        let pushed = m.map_at_index(axis, idx).mul(&spans[idx]);
        solve_in_span(&spans[g.index(&w)], &pushed)
    })?;
    let incl = ModuleMorphism::new_unchecked(sub.clone(), m.clone(), spans);
    Ok((sub, incl))
}

/// Submodule generated by homogeneous elements `(vertex, coefficients)`.
pub fn submodule_generated(m: &GridModule, gens: &[(Vec<usize>, Vec<i64>)]) -> Result<(GridModule, ModuleMorphism)> {
    let g = m.geometry();
    let f = m.field();
    let mut at: Vec<Vec<Matrix>> = vec![Vec::new(); g.num_vertices()];
    for (u, coeffs) in gens {
        g.check_vertex(u)?;
        if coeffs.len() != m.dim(u) {
            return Err(Error::DimensionMismatch(coeffs.len(), m.dim(u)));
        }
        at[g.index(u)].push(Matrix::column(f, coeffs));
    }
    let mut spans: Vec<Matrix> = Vec::with_capacity(g.num_vertices());
    // flat order visits every predecessor u - e_i before u
    for idx in 0..g.num_vertices() {
        let w = g.vertex(idx);
        let mut acc = Matrix::zeros(f, m.dim_at_index(idx), 0);
        for axis in 0..g.n() {
            if w[axis] == 0 {
                continue;
            }
            let mut u = w.clone();
            u[axis] -= 1;
            let uidx = g.index(&u);
            acc = acc.hstack(&m.map_at_index(axis, uidx).mul(&spans[uidx]));
        }
        for c in &at[idx] {
            acc = acc.hstack(c);
        }
        spans.push(span_basis(&acc));
    }
    submodule_from_spans(m, spans)
}

/// Quotient by subspaces given as independent column bases closed under the
/// structure maps.
pub(crate) fn quotient_by_spans(m: &GridModule, spans: &[Matrix]) -> Result<(GridModule, ModuleMorphism)> {
    let g = m.geometry().clone();
    let f = m.field();
    let mut comps = Vec::with_capacity(spans.len());
    let mut projs = Vec::with_capacity(spans.len());
    for (idx, s) in spans.iter().enumerate() {
        let d = m.dim_at_index(idx);
        let c = quotient_basis(s, d)?;
        let t = s.hstack(&c);
        let tinv = t.inverse()?;
        let rows: Vec<usize> = (s.cols()..d).collect();
        projs.push(tinv.select_rows(&rows));
        comps.push(c);
    }
    let dims: Vec<usize> = comps.iter().map(Matrix::cols).collect();
    let q = GridModule::assemble(f, g.clone(), dims, |axis, u| {
        let idx = g.index(u);
        let w = g.successor(u, axis).expect("successor");
        Ok(projs[g.index(&w)].mul(&m.map_at_index(axis, idx).mul(&comps[idx])))
    })?;
    let proj = ModuleMorphism::new_unchecked(m.clone(), q.clone(), projs);
    Ok((q, proj))
}

/// `m / image(incl)` with its projection.
pub fn quotient(m: &GridModule, incl: &ModuleMorphism) -> Result<(GridModule, ModuleMorphism)> {
    if incl.target() != m {
        return Err(Error::Invalid("inclusion does not land in the module".into()));
    }
    let g = m.geometry();
    for (idx, c) in incl.components().iter().enumerate() {
        if rank(c) != c.cols() {
            return Err(Error::NotInjective(g.vertex(idx)));
        }
    }
    quotient_by_spans(m, incl.components())
}

pub fn kernel(f: &ModuleMorphism) -> Result<(GridModule, ModuleMorphism)> {
    let spans = f.components().iter().map(kernel_basis).collect();
    submodule_from_spans(f.source(), spans)
}

pub fn cokernel(f: &ModuleMorphism) -> Result<(GridModule, ModuleMorphism)> {
    let spans: Vec<Matrix> = f.components().iter().map(span_basis).collect();
    quotient_by_spans(f.target(), &spans)
}

pub fn image(f: &ModuleMorphism) -> Result<(GridModule, ModuleMorphism)> {
    let spans = f.components().iter().map(span_basis).collect();
    submodule_from_spans(f.target(), spans)
}

fn clamp(g: &GridGeometry, u: &[usize], axes: &[usize]) -> Vec<usize> {
    let mut w = u.to_vec();
    for &a in axes {
        w[a] = g.last(a);
    }
    w
}

/// `M_rho`: every rho-axis pushed to its last (unbounded) cell.
pub fn localization(m: &GridModule, rho: &Face) -> Result<GridModule> {
    let g = m.geometry().clone();
    check_face(rho, g.n())?;
    let dims = g.vertices().map(|u| m.dim(&clamp(&g, &u, rho.axes()))).collect::<Vec<_>>();
    GridModule::assemble(m.field(), g.clone(), dims, |axis, u| {
        let cu = clamp(&g, u, rho.axes());
        if rho.contains(axis) {
            Ok(Matrix::identity(m.field(), m.dim(&cu)))
        } else {
            Ok(m.map(axis, &cu).expect("successor").clone())
        }
    })
}

/// `H^0_tau(M)`: elements killed by every push to infinity along an axis of
/// `tau`.
pub fn local_cohomology(m: &GridModule, tau: &Face) -> Result<(GridModule, ModuleMorphism)> {
    let g = m.geometry().clone();
    check_face(tau, g.n())?;
    let mut spans = Vec::with_capacity(g.num_vertices());
    for u in g.vertices() {
        let mut stacked = Matrix::zeros(m.field(), 0, m.dim(&u));
        for &a in tau.axes() {
            let target = clamp(&g, &u, &[a]);
            stacked = stacked.vstack(&m.structure_map(&u, &target)?);
        }
        spans.push(kernel_basis(&stacked));
    }
    submodule_from_spans(m, spans)
}

/// `M / tau`: the colimit along `tau`, read off at the last tau-cells, as a
/// module over the remaining axes. When `tau` covers every axis the result
/// is a single vector space on a one-cell grid.
pub fn quotient_restriction(m: &GridModule, tau: &Face) -> Result<GridModule> {
    let g = m.geometry();
    check_face(tau, g.n())?;
    let rest = tau.complement(g.n());
    let lift = |v: &[usize]| -> Vec<usize> {
        let mut u: Vec<usize> = (0..g.n()).map(|a| g.last(a)).collect();
        for (k, &a) in rest.iter().enumerate() {
            u[a] = v[k];
        }
        u
    };
    if rest.is_empty() {
        let top = lift(&[]);
        let geo = GridGeometry::point();
        return GridModule::assemble(m.field(), geo, vec![m.dim(&top)], |_, _| unreachable!());
    }
    let geo = g.restrict(&rest)?;
    let dims = geo.vertices().map(|v| m.dim(&lift(&v))).collect::<Vec<_>>();
    GridModule::assemble(m.field(), geo, dims, |axis, v| {
        Ok(m.map(rest[axis], &lift(v)).expect("successor").clone())
    })
}

fn check_face(f: &Face, n: usize) -> Result<()> {
    match f.axes().iter().find(|&&a| a >= n) {
        Some(&a) => Err(Error::OutOfRange(format!("axis {} in dimension {n}", a + 1))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Fp;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    fn line(bps: &[f64]) -> GridGeometry {
        GridGeometry::new(vec![bps.to_vec()]).unwrap()
    }

    fn unit2(a: usize, b: usize) -> GridGeometry {
        GridGeometry::unit(&[a, b]).unwrap()
    }

    #[test]
    fn refinement_merges_and_preserves_hilbert() {
        let a = GridModule::interval(f2(), line(&[0.0, 1.0]), &[0], &[Some(0)]).unwrap();
        let b = GridModule::upset(f2(), line(&[0.0, 0.5]), &[1]).unwrap();
        let (ra, rb) = common_refinement(&a, &b).unwrap();
        assert_eq!(ra.geometry().axis(0), &[0.0, 0.5, 1.0]);
        ra.validate().unwrap();
        rb.validate().unwrap();
        for k in -2..12 {
            let t = k as f64 * 0.25;
            assert_eq!(ra.dim_at_point(&[t]), a.dim_at_point(&[t]));
            assert_eq!(rb.dim_at_point(&[t]), b.dim_at_point(&[t]));
        }
        let (same, _) = common_refinement(&a, &a).unwrap();
        assert_eq!(same, a);
    }

    #[test]
    fn generated_submodules() {
        let g = unit2(3, 3);
        let m = GridModule::upset(f2(), g.clone(), &[0, 0]).unwrap();
        let (s, incl) = submodule_generated(&m, &[(vec![0, 0], vec![1])]).unwrap();
        assert_eq!(s.dims(), m.dims());
        incl.validate().unwrap();
        let (z, _) = submodule_generated(&m, &[]).unwrap();
        assert!(z.is_zero());
        let (s, _) = submodule_generated(&m, &[(vec![1, 0], vec![1])]).unwrap();
        let expect = GridModule::upset(f2(), g, &[1, 0]).unwrap();
        assert_eq!(s.dims(), expect.dims());
        assert!(submodule_generated(&m, &[(vec![1, 0], vec![1, 0])]).is_err());
    }

    fn bar02() -> (GridModule, GridModule) {
        let g = line(&[0.0, 1.0, 2.0]);
        let m = GridModule::interval(f2(), g.clone(), &[0], &[Some(1)]).unwrap();
        let sub = GridModule::interval(f2(), g, &[1], &[Some(1)]).unwrap();
        (m, sub)
    }

    #[test]
    fn quotient_of_bar() {
        let (m, sub) = bar02();
        let comps = (0..3)
            .map(|i| {
                let (t, s) = (m.dim_at_index(i), sub.dim_at_index(i));
                let mut c = Matrix::zeros(f2(), t, s);
                if t == 1 && s == 1 {
                    c.set(0, 0, 1);
                }
                c
            })
            .collect();
        let incl = ModuleMorphism::new(sub, m.clone(), comps).unwrap();
        let (q, proj) = quotient(&m, &incl).unwrap();
        assert_eq!(q.dims(), &[1, 0, 0]);
        assert!(incl.then(&proj).unwrap().is_zero());
        let (c, _) = cokernel(&incl).unwrap();
        assert_eq!(c.dims(), &[1, 0, 0]);
        let (k, _) = kernel(&proj).unwrap();
        assert_eq!(k.dims(), &[0, 1, 0]);
        let (all, _) = quotient(&m, &ModuleMorphism::identity(&m)).unwrap();
        assert!(all.is_zero());
        let z = GridModule::zero(f2(), m.geometry().clone());
        let (same, _) = quotient(&m, &ModuleMorphism::zero(&z, &m).unwrap()).unwrap();
        assert_eq!(same, m);
    }

    #[test]
    fn non_injective_quotient_rejected() {
        let (m, _) = bar02();
        let mm = m.direct_sum(&m).unwrap();
        let comps = (0..3)
            .map(|i| {
                let d = m.dim_at_index(i);
                let mut c = Matrix::zeros(f2(), d, 2 * d);
                if d == 1 {
                    c.set(0, 0, 1);
                    c.set(0, 1, 1);
                }
                c
            })
            .collect();
        let fold = ModuleMorphism::new(mm, m.clone(), comps).unwrap();
        assert!(matches!(quotient(&m, &fold), Err(Error::NotInjective(_))));
    }

    #[test]
    fn kernel_cokernel_extremes() {
        let (m, _) = bar02();
        let id = ModuleMorphism::identity(&m);
        assert!(kernel(&id).unwrap().0.is_zero());
        assert!(cokernel(&id).unwrap().0.is_zero());
        let z = ModuleMorphism::zero(&m, &m).unwrap();
        assert_eq!(kernel(&z).unwrap().0.dims(), m.dims());
        assert_eq!(cokernel(&z).unwrap().0.dims(), m.dims());
    }

    #[test]
    fn localization_cases() {
        let g = unit2(3, 2);
        let up = GridModule::upset(f2(), g.clone(), &[0, 0]).unwrap();
        let rho = Face::new(vec![0], 2).unwrap();
        assert_eq!(localization(&up, &rho).unwrap().dims(), up.dims());
        let bounded = GridModule::interval(f2(), g.clone(), &[0, 0], &[Some(1), None]).unwrap();
        assert!(localization(&bounded, &rho).unwrap().is_zero());
        let z = GridModule::zero(f2(), g);
        assert!(localization(&z, &rho).unwrap().is_zero());
    }

    #[test]
    fn local_cohomology_cases() {
        let g = unit2(3, 3);
        let up = GridModule::upset(f2(), g.clone(), &[0, 0]).unwrap();
        for axes in [vec![0], vec![1], vec![0, 1]] {
            let tau = Face::new(axes, 2).unwrap();
            assert!(local_cohomology(&up, &tau).unwrap().0.is_zero());
        }
        let bx = GridModule::interval(f2(), g.clone(), &[0, 0], &[Some(1), Some(1)]).unwrap();
        let tau = Face::new(vec![0, 1], 2).unwrap();
        assert_eq!(local_cohomology(&bx, &tau).unwrap().0.dims(), bx.dims());
        let stripe = GridModule::interval(f2(), g, &[0, 0], &[Some(0), None]).unwrap();
        let tau = Face::new(vec![0], 2).unwrap();
        let (h, incl) = local_cohomology(&stripe, &tau).unwrap();
        assert_eq!(h.dims(), stripe.dims());
        assert!(incl.is_injective());
    }

    #[test]
    fn quotient_restriction_cases() {
        let g = unit2(3, 3);
        let tau = Face::new(vec![0], 2).unwrap();
        let reach = GridModule::interval(f2(), g.clone(), &[1, 1], &[None, Some(1)]).unwrap();
        let qr = quotient_restriction(&reach, &tau).unwrap();
        assert_eq!(qr.n(), 1);
        assert_eq!(qr.dims(), &[0, 1, 0]);
        let short = GridModule::interval(f2(), g.clone(), &[0, 0], &[Some(1), None]).unwrap();
        assert!(quotient_restriction(&short, &tau).unwrap().is_zero());
        let all = Face::new(vec![0, 1], 2).unwrap();
        let up = GridModule::upset(f2(), g, &[2, 2]).unwrap();
        assert_eq!(quotient_restriction(&up, &all).unwrap().dims(), &[1]);
    }
}
