use std::fs;
use std::path::Path;

use amplitudes::gridmod::{is_morphism_doc, to_barcode};
use amplitudes::rips::DistMatrix;
use amplitudes::{Barcode, GridModule};
use anyhow::{bail, Context, Result};

/// A parsed input file: a barcode in the text format or a module document.
pub enum Input {
    Bars(Barcode),
    Module(GridModule),
}

impl Input {
    pub fn load(path: &Path) -> Result<Input> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Input::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Input> {
        if text.trim_start().starts_with('{') {
            if is_morphism_doc(text) {
                bail!("a morphism document is not a module; pass the module files instead");
            }
            Ok(Input::Module(GridModule::from_json(text)?))
        } else {
            Ok(Input::Bars(Barcode::parse(text)?))
        }
    }

    /// Barcode of the input; modules must be one-parameter.
    pub fn barcode(&self) -> Result<Barcode> {
        match self {
            Input::Bars(b) => Ok(b.clone()),
            Input::Module(m) => Ok(to_barcode(m)?),
        }
    }
}

/// Reads a point cloud (one point per row) or a square distance matrix.
/// A non-numeric first row is taken as a header. With `density_col` the last
/// column of a point cloud holds per-point densities.
pub fn load_points(path: &Path, matrix: bool, density_col: bool) -> Result<(DistMatrix, Option<Vec<f64>>)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec?;
        let parsed: std::result::Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(r) => rows.push(r),
            Err(_) if i == 0 => continue,
            Err(e) => bail!("row {}: {e}", i + 1),
        }
    }
    if matrix {
        if density_col {
            bail!("--density-col applies to point clouds, not distance matrices");
        }
        return Ok((DistMatrix::new(rows)?, None));
    }
    let density = if density_col {
        let mut d = Vec::with_capacity(rows.len());
        for r in rows.iter_mut() {
            d.push(r.pop().context("row without a density column")?);
        }
        Some(d)
    } else {
        None
    };
    Ok((DistMatrix::from_points(&rows)?, density))
}

/// Parses `a,b,c` into reals.
pub fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().with_context(|| format!("bad number `{t}`")))
        .collect()
}
