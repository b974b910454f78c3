use crate::error::{Error, Result};
use crate::linalg::{Fp, Matrix};

use super::geometry::GridGeometry;

/// A persistence module on a finite grid with real cell geometry.
///
/// `maps[axis][idx]` is the structure map from vertex `idx` to its successor
/// along `axis`. At vertices without a successor the slot holds the identity,
/// which is the map inside the unbounded last cell.
#[derive(Clone, Debug, PartialEq)]
pub struct GridModule {
    field: Fp,
    geometry: GridGeometry,
    dims: Vec<usize>,
    maps: Vec<Vec<Matrix>>,
}

impl GridModule {
    /// Assembles and validates a module. `map(axis, u)` is only called for
    /// vertices that have a successor along `axis`.
    pub fn from_fn<F>(field: Fp, geometry: GridGeometry, dims: Vec<usize>, mut map: F) -> Result<Self>
    where
        F: FnMut(usize, &[usize]) -> Matrix,
    {
        let m = Self::assemble(field, geometry, dims, |a, u| Ok(map(a, u)))?;
        m.validate()?;
        Ok(m)
    }

    /// Like [`GridModule::from_fn`] but skips the commutativity check. Used by
    /// constructions that are correct by design.
    pub(crate) fn assemble<F>(field: Fp, geometry: GridGeometry, dims: Vec<usize>, mut map: F) -> Result<Self>
    where
        F: FnMut(usize, &[usize]) -> Result<Matrix>,
    {
        if dims.len() != geometry.num_vertices() {
            return Err(Error::Shape(format!(
                "{} dims for a grid with {} vertices",
                dims.len(),
                geometry.num_vertices()
            )));
        }
        let mut maps = Vec::with_capacity(geometry.n());
        for axis in 0..geometry.n() {
            let mut row = Vec::with_capacity(dims.len());
            for idx in 0..dims.len() {
                let u = geometry.vertex(idx);
                let m = match geometry.successor(&u, axis) {
                    Some(_) => map(axis, &u)?,
                    None => Matrix::identity(field, dims[idx]),
                };
                row.push(m);
            }
            maps.push(row);
        }
        Ok(GridModule { field, geometry, dims, maps })
    }

    pub fn zero(field: Fp, geometry: GridGeometry) -> Self {
        let dims = vec![0; geometry.num_vertices()];
        Self::assemble(field, geometry, dims, |_, _| Ok(Matrix::zeros(field, 0, 0)))
            .expect("zero module")
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn geometry(&self) -> &GridGeometry {
        &self.geometry
    }

    pub fn n(&self) -> usize {
        self.geometry.n()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, u: &[usize]) -> usize {
        self.dims[self.geometry.index(u)]
    }

    pub fn dim_at_index(&self, idx: usize) -> usize {
        self.dims[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn max_dim(&self) -> usize {
        self.dims.iter().copied().max().unwrap_or(0)
    }

    /// Pointwise dimension at a real point; zero below the grid.
    pub fn dim_at_point(&self, point: &[f64]) -> usize {
        self.geometry.locate(point).map_or(0, |u| self.dim(&u))
    }

    /// Structure map `u -> u + e_axis`; `None` at the last cell.
    pub fn map(&self, axis: usize, u: &[usize]) -> Option<&Matrix> {
        self.geometry.successor(u, axis)?;
        Some(&self.maps[axis][self.geometry.index(u)])
    }

    pub(crate) fn map_at_index(&self, axis: usize, idx: usize) -> &Matrix {
        &self.maps[axis][idx]
    }

    /// Composite `M(u <= w)` along any monotone path.
    pub fn structure_map(&self, u: &[usize], w: &[usize]) -> Result<Matrix> {
        self.geometry.check_vertex(u)?;
        self.geometry.check_vertex(w)?;
        if u.iter().zip(w).any(|(a, b)| a > b) {
            return Err(Error::Invalid(format!("{u:?} is not below {w:?}")));
        }
        let mut cur = u.to_vec();
        let mut acc = Matrix::identity(self.field, self.dim(u));
        for axis in 0..self.n() {
            while cur[axis] < w[axis] {
                let m = &self.maps[axis][self.geometry.index(&cur)];
                acc = m.mul(&acc);
                cur[axis] += 1;
            }
        }
        Ok(acc)
    }

    /// Checks matrix shapes and commutativity of every square.
    pub fn validate(&self) -> Result<()> {
        let g = &self.geometry;
        for idx in 0..self.dims.len() {
            let u = g.vertex(idx);
            for axis in 0..g.n() {
                let m = &self.maps[axis][idx];
                if m.field() != self.field {
                    return Err(Error::PrimeMismatch(m.field().modulus(), self.field.modulus()));
                }
                let target = match g.successor(&u, axis) {
                    Some(w) => self.dim(&w),
                    None => self.dims[idx],
                };
                if m.shape() != (target, self.dims[idx]) {
                    return Err(Error::Shape(format!(
                        "map along axis {} at {u:?} is {}x{}, expected {}x{}",
                        axis + 1,
                        m.rows(),
                        m.cols(),
                        target,
                        self.dims[idx]
                    )));
                }
            }
        }
        for idx in 0..self.dims.len() {
            let u = g.vertex(idx);
            for i in 0..g.n() {
                let Some(ui) = g.successor(&u, i) else { continue };
                for j in (i + 1)..g.n() {
                    let Some(uj) = g.successor(&u, j) else { continue };
                    let a = self.maps[j][g.index(&ui)].mul(&self.maps[i][idx]);
                    let b = self.maps[i][g.index(&uj)].mul(&self.maps[j][idx]);
                    if a != b {
                        return Err(Error::NotCommutative { vertex: u, axes: (i + 1, j + 1) });
                    }
                }
            }
        }
        Ok(())
    }

    /// Blockwise direct sum on a shared geometry.
    pub fn direct_sum(&self, other: &GridModule) -> Result<GridModule> {
        self.same_grid(other)?;
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        GridModule::assemble(self.field, self.geometry.clone(), dims, |axis, u| {
            let idx = self.geometry.index(u);
            Ok(self.maps[axis][idx].block_diag(&other.maps[axis][idx]))
        })
    }

    pub(crate) fn same_grid(&self, other: &GridModule) -> Result<()> {
        if self.field != other.field {
            return Err(Error::PrimeMismatch(self.field.modulus(), other.field.modulus()));
        }
        if self.geometry != other.geometry {
            return Err(Error::Geometry("modules live on different grids".into()));
        }
        Ok(())
    }

    /// Module that is `F` on the box `lo..=hi` and zero elsewhere. `None` in
    /// `hi` stands for the last cell (unbounded).
    pub fn interval(field: Fp, geometry: GridGeometry, lo: &[usize], hi: &[Option<usize>]) -> Result<GridModule> {
        let n = geometry.n();
        if lo.len() != n || hi.len() != n {
            return Err(Error::DimensionMismatch(lo.len().max(hi.len()), n));
        }
        geometry.check_vertex(lo)?;
        let hi: Vec<usize> = hi
            .iter()
            .enumerate()
            .map(|(a, h)| h.unwrap_or(geometry.last(a)))
            .collect();
        geometry.check_vertex(&hi)?;
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::Invalid(format!("empty box {lo:?}..={hi:?}")));
        }
        let inside = |u: &[usize]| u.iter().enumerate().all(|(a, &x)| lo[a] <= x && x <= hi[a]);
        let dims: Vec<usize> = geometry.vertices().map(|u| inside(&u) as usize).collect();
        let g = geometry.clone();
        let dims2 = dims.clone();
        GridModule::assemble(field, geometry, dims, |axis, u| {
            let w = g.successor(u, axis).expect("successor");
            let (du, dw) = (dims2[g.index(u)], dims2[g.index(&w)]);
            let mut m = Matrix::zeros(field, dw, du);
            if du == 1 && dw == 1 {
                m.set(0, 0, 1);
            }
            Ok(m)
        })
    }

    /// The up-set module `F` on every cell `>= lo`.
    pub fn upset(field: Fp, geometry: GridGeometry, lo: &[usize]) -> Result<GridModule> {
        let hi = vec![None; geometry.n()];
        GridModule::interval(field, geometry, lo, &hi)
    }

    pub fn hilbert(&self) -> HilbertFunction {
        HilbertFunction { geometry: self.geometry.clone(), dims: self.dims.clone() }
    }
}

/// Per-vertex matrices from `source` to `target` commuting with structure maps.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMorphism {
    source: GridModule,
    target: GridModule,
    components: Vec<Matrix>,
}

impl ModuleMorphism {
    pub fn new(source: GridModule, target: GridModule, components: Vec<Matrix>) -> Result<Self> {
        let f = ModuleMorphism { source, target, components };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: GridModule, target: GridModule, components: Vec<Matrix>) -> Self {
        ModuleMorphism { source, target, components }
    }

    pub fn identity(m: &GridModule) -> Self {
        let comps = m.dims.iter().map(|&d| Matrix::identity(m.field, d)).collect();
        ModuleMorphism::new_unchecked(m.clone(), m.clone(), comps)
    }

    pub fn zero(source: &GridModule, target: &GridModule) -> Result<Self> {
        source.same_grid(target)?;
        let comps = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&s, &t)| Matrix::zeros(source.field, t, s))
            .collect();
        Ok(ModuleMorphism::new_unchecked(source.clone(), target.clone(), comps))
    }

    pub fn source(&self) -> &GridModule {
        &self.source
    }

    pub fn target(&self) -> &GridModule {
        &self.target
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    pub fn component(&self, u: &[usize]) -> &Matrix {
        &self.components[self.source.geometry.index(u)]
    }

    /// Checks shapes and naturality.
    pub fn validate(&self) -> Result<()> {
        self.source.same_grid(&self.target)?;
        let g = self.source.geometry();
        if self.components.len() != g.num_vertices() {
            return Err(Error::Shape(format!(
                "{} components for {} vertices",
                self.components.len(),
                g.num_vertices()
            )));
        }
        for (idx, c) in self.components.iter().enumerate() {
            if c.shape() != (self.target.dims[idx], self.source.dims[idx]) {
                return Err(Error::Shape(format!(
                    "component at {:?} is {}x{}, expected {}x{}",
                    g.vertex(idx),
                    c.rows(),
                    c.cols(),
                    self.target.dims[idx],
                    self.source.dims[idx]
                )));
            }
        }
        for idx in 0..self.components.len() {
            let u = g.vertex(idx);
            for axis in 0..g.n() {
                let Some(w) = g.successor(&u, axis) else { continue };
                let widx = g.index(&w);
                let lhs = self.target.maps[axis][idx].mul(&self.components[idx]);
                let rhs = self.components[widx].mul(&self.source.maps[axis][idx]);
                if lhs != rhs {
                    return Err(Error::NotNatural { vertex: u, axis: axis + 1 });
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        if self.target != other.source {
            return Err(Error::Invalid("morphisms are not composable".into()));
        }
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| b.mul(a))
            .collect();
        Ok(ModuleMorphism::new_unchecked(self.source.clone(), other.target.clone(), comps))
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.components.iter().all(|c| crate::linalg::rank(c) == c.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.components.iter().all(|c| crate::linalg::rank(c) == c.rows())
    }
}

/// Pointwise dimensions on a grid, without structure maps.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertFunction {
    pub geometry: GridGeometry,
    pub dims: Vec<usize>,
}

impl HilbertFunction {
    pub fn new(geometry: GridGeometry, dims: Vec<usize>) -> Result<Self> {
        if dims.len() != geometry.num_vertices() {
            return Err(Error::Shape(format!(
                "{} values for {} cells",
                dims.len(),
                geometry.num_vertices()
            )));
        }
        Ok(HilbertFunction { geometry, dims })
    }

    pub fn at(&self, point: &[f64]) -> usize {
        self.geometry.locate(point).map_or(0, |u| self.dims[self.geometry.index(&u)])
    }

    /// Re-expresses the function on a finer geometry.
    pub fn refine_to(&self, finer: &GridGeometry) -> Result<HilbertFunction> {
        if !self.geometry.is_refined_by(finer) {
            return Err(Error::Geometry("target grid does not refine the source grid".into()));
        }
        let dims = finer
            .vertices()
            .map(|u| {
                let lower: Vec<f64> =
                    u.iter().enumerate().map(|(a, &i)| finer.axis(a)[i]).collect();
                self.at(&lower)
            })
            .collect();
        Ok(HilbertFunction { geometry: finer.clone(), dims })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    fn geo(bps: &[&[f64]]) -> GridGeometry {
        GridGeometry::new(bps.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn full_box_is_constant() {
        let g = geo(&[&[0.0, 1.0, 2.0], &[0.0, 1.0]]);
        let m = GridModule::interval(f2(), g.clone(), &[0, 0], &[None, None]).unwrap();
        assert!(m.dims().iter().all(|&d| d == 1));
        for u in g.vertices() {
            for a in 0..2 {
                if let Some(map) = m.map(a, &u) {
                    assert!(map.is_identity());
                }
            }
        }
        m.validate().unwrap();
    }

    #[test]
    fn single_cell_box() {
        let g = geo(&[&[0.0, 2.0], &[0.0, 3.0]]);
        let m = GridModule::interval(f2(), g, &[0, 0], &[Some(0), Some(0)]).unwrap();
        assert_eq!(m.dims(), &[1, 0, 0, 0]);
        assert!(GridModule::interval(f2(), geo(&[&[0.0, 1.0]]), &[1], &[Some(0)]).is_err());
        assert!(GridModule::interval(f2(), geo(&[&[0.0, 1.0]]), &[3], &[None]).is_err());
    }

    #[test]
    fn structure_maps() {
        let g = geo(&[&[0.0, 1.0, 2.0], &[0.0, 1.0]]);
        let m = GridModule::interval(f2(), g, &[0, 0], &[Some(1), None]).unwrap();
        assert!(m.structure_map(&[0, 0], &[0, 0]).unwrap().is_identity());
        assert!(m.structure_map(&[0, 0], &[1, 1]).unwrap().is_identity());
        let z = m.structure_map(&[0, 0], &[2, 1]).unwrap();
        assert_eq!(z.shape(), (0, 1));
        assert!(m.structure_map(&[1, 0], &[0, 0]).is_err());
    }

    #[test]
    fn flipped_entry_is_reported() {
        let g = geo(&[&[0.0, 1.0], &[0.0, 1.0]]);
        let m = GridModule::upset(f2(), g.clone(), &[0, 0]).unwrap();
        let mut broken = m.clone();
        broken.maps[0][g.index(&[0, 0])] = Matrix::zeros(f2(), 1, 1);
        match broken.validate() {
            Err(Error::NotCommutative { vertex, .. }) => assert_eq!(vertex, vec![0, 0]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn direct_sums() {
        let g = geo(&[&[0.0, 1.0], &[0.0, 1.0]]);
        let m = GridModule::interval(f2(), g.clone(), &[0, 1], &[None, None]).unwrap();
        let z = GridModule::zero(f2(), g);
        assert_eq!(m.direct_sum(&z).unwrap(), m);
        let mm = m.direct_sum(&m).unwrap();
        mm.validate().unwrap();
        assert_eq!(mm.max_dim(), 2 * m.max_dim());
    }

    #[test]
    fn hilbert_refinement() {
        let g = geo(&[&[0.0, 1.0]]);
        let m = GridModule::interval(f2(), g, &[0], &[Some(0)]).unwrap();
        let fine = geo(&[&[-1.0, 0.0, 0.5, 1.0]]);
        let h = m.hilbert().refine_to(&fine).unwrap();
        assert_eq!(h.dims, vec![0, 1, 1, 0]);
    }
}
