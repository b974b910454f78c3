//! JSON documents for grid modules and morphisms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Fp, Matrix};

use super::geometry::GridGeometry;
use super::module::{GridModule, ModuleMorphism};

#[derive(Debug, Serialize, Deserialize)]
struct MapDoc {
    /// 1-based.
    axis: usize,
    vertex: Vec<usize>,
    matrix: Vec<Vec<i64>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ModuleDoc {
    prime: u32,
    n: usize,
    breakpoints: Vec<Vec<f64>>,
    dims: Vec<usize>,
    #[serde(default)]
    maps: Vec<MapDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ComponentDoc {
    vertex: Vec<usize>,
    matrix: Vec<Vec<i64>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct MorphismDoc {
    prime: u32,
    n: usize,
    breakpoints: Vec<Vec<f64>>,
    #[serde(default)]
    components: Vec<ComponentDoc>,
}

fn matrix_from_doc(field: Fp, rows: &[Vec<i64>], shape: (usize, usize)) -> Result<Matrix> {
    // an empty row list is the only way to write a matrix with zero rows
    if rows.is_empty() && shape.0 == 0 {
        return Ok(Matrix::zeros(field, 0, shape.1));
    }
    let m = Matrix::from_rows(field, rows)?;
    if m.shape() != shape {
        return Err(Error::Shape(format!(
            "matrix is {}x{}, expected {}x{}",
            m.rows(),
            m.cols(),
            shape.0,
            shape.1
        )));
    }
    Ok(m)
}

fn rows_of(m: &Matrix) -> Vec<Vec<i64>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect()
}

fn geometry_of(n: usize, breakpoints: Vec<Vec<f64>>) -> Result<GridGeometry> {
    if breakpoints.len() != n {
        return Err(Error::DimensionMismatch(breakpoints.len(), n));
    }
    GridGeometry::new(breakpoints)
}

impl GridModule {
    /// Parses and validates a module document.
    pub fn from_json(text: &str) -> Result<GridModule> {
        let doc: ModuleDoc = serde_json::from_str(text)?;
        let field = Fp::new(doc.prime)?;
        let geo = geometry_of(doc.n, doc.breakpoints)?;
        if doc.dims.len() != geo.num_vertices() {
            return Err(Error::Shape(format!(
                "{} dims for a grid with {} vertices",
                doc.dims.len(),
                geo.num_vertices()
            )));
        }
        let nv = geo.num_vertices();
        let mut given: Vec<Vec<Option<Matrix>>> = vec![vec![None; nv]; geo.n()];
        for md in &doc.maps {
            if md.axis == 0 || md.axis > geo.n() {
                return Err(Error::OutOfRange(format!("axis {}", md.axis)));
            }
            let axis = md.axis - 1;
            geo.check_vertex(&md.vertex)?;
            let Some(w) = geo.successor(&md.vertex, axis) else {
                return Err(Error::OutOfRange(format!(
                    "vertex {:?} has no successor along axis {}",
                    md.vertex, md.axis
                )));
            };
            let shape = (doc.dims[geo.index(&w)], doc.dims[geo.index(&md.vertex)]);
            let m = matrix_from_doc(field, &md.matrix, shape)
                .map_err(|e| Error::Invalid(format!("map at {:?} axis {}: {e}", md.vertex, md.axis)))?;
            given[axis][geo.index(&md.vertex)] = Some(m);
        }
        let dims = doc.dims.clone();
        let g2 = geo.clone();
        GridModule::from_fn(field, geo, doc.dims, |axis, u| {
            let idx = g2.index(u);
            given[axis][idx].take().unwrap_or_else(|| {
                let w = g2.successor(u, axis).expect("successor");
                Matrix::zeros(field, dims[g2.index(&w)], dims[idx])
            })
        })
    }

    /// Serializes the module; zero maps are omitted.
    pub fn to_json(&self) -> String {
        let g = self.geometry();
        let mut maps = Vec::new();
        for idx in 0..g.num_vertices() {
            let u = g.vertex(idx);
            for axis in 0..g.n() {
                if let Some(m) = self.map(axis, &u) {
                    if !m.is_zero() {
                        maps.push(MapDoc { axis: axis + 1, vertex: u.clone(), matrix: rows_of(m) });
                    }
                }
            }
        }
        let doc = ModuleDoc {
            prime: self.field().modulus(),
            n: g.n(),
            breakpoints: g.breakpoints().to_vec(),
            dims: self.dims().to_vec(),
            maps,
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }
}

impl ModuleMorphism {
    /// Parses a morphism document between known modules and checks naturality.
    pub fn from_json(text: &str, source: &GridModule, target: &GridModule) -> Result<ModuleMorphism> {
        let doc: MorphismDoc = serde_json::from_str(text)?;
        let field = Fp::new(doc.prime)?;
        if field != source.field() {
            return Err(Error::PrimeMismatch(doc.prime, source.field().modulus()));
        }
        let geo = geometry_of(doc.n, doc.breakpoints)?;
        if &geo != source.geometry() {
            return Err(Error::Geometry("morphism grid differs from the source grid".into()));
        }
        let mut comps: Vec<Matrix> = (0..geo.num_vertices())
            .map(|i| Matrix::zeros(field, target.dim_at_index(i), source.dim_at_index(i)))
            .collect();
        for c in &doc.components {
            geo.check_vertex(&c.vertex)?;
            let idx = geo.index(&c.vertex);
            let shape = (target.dim_at_index(idx), source.dim_at_index(idx));
            comps[idx] = matrix_from_doc(field, &c.matrix, shape)?;
        }
        ModuleMorphism::new(source.clone(), target.clone(), comps)
    }

    pub fn to_json(&self) -> String {
        let g = self.source().geometry();
        let components = self
            .components()
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(i, m)| ComponentDoc { vertex: g.vertex(i), matrix: rows_of(m) })
            .collect();
        let doc = MorphismDoc {
            prime: self.source().field().modulus(),
            n: g.n(),
            breakpoints: g.breakpoints().to_vec(),
            components,
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }
}

/// True when the document looks like a morphism rather than a module.
pub fn is_morphism_doc(text: &str) -> bool {
    serde_json::from_str::<serde_json::Value>(text)
        .map(|v| v.get("components").is_some() && v.get("dims").is_none())
        .unwrap_or(false)
}
