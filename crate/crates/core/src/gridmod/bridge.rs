//! Conversions between barcodes and one-parameter grid modules.

use crate::barcode::{Bar, Barcode};
use crate::error::{Error, Result};
use crate::linalg::{rank, Fp};

use super::geometry::GridGeometry;
use super::module::{GridModule, HilbertFunction};

/// Sorted distinct finite endpoints; `[0]` for an empty barcode.
fn endpoints(bc: &Barcode) -> Result<Vec<f64>> {
    let mut pts = Vec::new();
    for b in bc.iter() {
        if !b.birth.is_finite() {
            return Err(Error::InfiniteBirth(b.birth));
        }
        if b.is_empty() {
            continue;
        }
        pts.push(b.birth);
        if b.death.is_finite() {
            pts.push(b.death);
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    if pts.is_empty() {
        pts.push(0.0);
    }
    Ok(pts)
}

/// Geometry whose breakpoints are the finite endpoints of the bars.
pub fn barcode_geometry(bc: &Barcode) -> Result<GridGeometry> {
    GridGeometry::new(vec![endpoints(bc)?])
}

/// Direct sum of interval modules on the barcode's own geometry.
pub fn from_barcode(field: Fp, bc: &Barcode) -> Result<GridModule> {
    from_barcode_on(field, bc, &barcode_geometry(bc)?)
}

/// Same as [`from_barcode`] on a given geometry containing every endpoint.
pub fn from_barcode_on(field: Fp, bc: &Barcode, geo: &GridGeometry) -> Result<GridModule> {
    if geo.n() != 1 {
        return Err(Error::DimensionMismatch(geo.n(), 1));
    }
    let bps = geo.axis(0);
    let locate = |x: f64| {
        bps.iter()
            .position(|&y| y == x)
            .ok_or_else(|| Error::Geometry(format!("endpoint {x} is not a breakpoint")))
    };
    let mut acc = GridModule::zero(field, geo.clone());
    for b in bc.iter().filter(|b| !b.is_empty()) {
        if !b.birth.is_finite() {
            return Err(Error::InfiniteBirth(b.birth));
        }
        let lo = locate(b.birth)?;
        let hi = if b.is_infinite() { None } else { Some(locate(b.death)? - 1) };
        let iv = GridModule::interval(field, geo.clone(), &[lo], &[hi])?;
        acc = acc.direct_sum(&iv)?;
    }
    Ok(acc)
}

/// Hilbert function of a barcode on its own geometry.
pub fn barcode_hilbert(bc: &Barcode) -> Result<HilbertFunction> {
    let geo = barcode_geometry(bc)?;
    let dims = geo.axis(0).iter().map(|&t| bc.hilbert_function(t)).collect();
    HilbertFunction::new(geo, dims)
}

/// Interval decomposition of a one-parameter module via its rank invariant.
pub fn to_barcode(m: &GridModule) -> Result<Barcode> {
    if m.n() != 1 {
        return Err(Error::Inapplicable {
            spec: "barcode".into(),
            what: format!("a {}-parameter module", m.n()),
        });
    }
    let k = m.geometry().axis(0).len();
    let mut r = vec![vec![0usize; k + 1]; k + 1];
    for i in 0..k {
        for j in i..k {
            r[i][j] = rank(&m.structure_map(&[i], &[j])?);
        }
    }
    let get = |i: isize, j: usize| -> isize {
        if i < 0 || j >= k {
            0
        } else {
            r[i as usize][j] as isize
        }
    };
    let bps = m.geometry().axis(0);
    let mut bars = Vec::new();
    for i in 0..k {
        for j in i..k {
            let ii = i as isize;
            let mult = get(ii, j) - get(ii - 1, j) - get(ii, j + 1) + get(ii - 1, j + 1);
            debug_assert!(mult >= 0);
            let death = if j + 1 < k { bps[j + 1] } else { f64::INFINITY };
            for _ in 0..mult {
                bars.push(Bar::new(bps[i], death)?);
            }
        }
    }
    Ok(Barcode::new(bars))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let f = Fp::new(2).unwrap();
        let bc = Barcode::from_pairs(&[(0.0, 3.0), (1.0, 4.0), (1.0, f64::INFINITY), (0.0, 3.0), (2.0, 2.0)]);
        let m = from_barcode(f, &bc).unwrap();
        m.validate().unwrap();
        assert_eq!(to_barcode(&m).unwrap().canonical(), bc.without_empty().canonical());
        for k in 0..20 {
            let t = k as f64 * 0.25 - 0.5;
            assert_eq!(m.dim_at_point(&[t]), bc.hilbert_function(t));
        }
    }

    #[test]
    fn empty_and_infinite_birth() {
        let f = Fp::new(2).unwrap();
        assert!(from_barcode(f, &Barcode::empty()).unwrap().is_zero());
        let bad = Barcode::new(vec![Bar::of(f64::NEG_INFINITY, 1.0)]);
        assert!(from_barcode(f, &bad).is_err());
    }
}
