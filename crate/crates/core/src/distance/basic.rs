use serde::{Deserialize, Serialize};

use crate::amplitude::{eval_barcode, eval_grid, AmplitudeSpec, Content};
use crate::barcode::Barcode;
use crate::error::{Error, Result};
use crate::gridmod::{barcode_hilbert, GridModule, HilbertFunction};

use super::path::Exactness;
use super::plan::MatchingPlan;

fn abs_diff(a: f64, b: f64) -> f64 {
    if a == b {
        // includes inf - inf, taken to be 0
        0.0
    } else {
        (a - b).abs()
    }
}

/// `|alpha(A) - alpha(B)|` with `inf - inf = 0`.
pub fn abs_distance(spec: &AmplitudeSpec, a: &Barcode, b: &Barcode) -> Result<f64> {
    Ok(abs_diff(eval_barcode(spec, a)?, eval_barcode(spec, b)?))
}

pub fn abs_distance_grid(spec: &AmplitudeSpec, a: &GridModule, b: &GridModule) -> Result<f64> {
    Ok(abs_diff(eval_grid(spec, a)?, eval_grid(spec, b)?))
}

/// `(integral |dim A - dim B|^p d nu)^(1/p)` on the common refinement.
/// Custom contents are only accepted when both grids already coincide.
pub fn lp_hilbert_distance(p: f64, a: &HilbertFunction, b: &HilbertFunction, content: &Content) -> Result<f64> {
    if !p.is_finite() || p < 1.0 {
        return Err(Error::Invalid(format!("exponent {p} outside [1, inf)")));
    }
    let (ra, rb) = if a.geometry == b.geometry {
        (a.clone(), b.clone())
    } else {
        if matches!(content, Content::Custom(_)) {
            return Err(Error::Invalid("custom contents cannot be carried across a refinement".into()));
        }
        let g = a.geometry.union(&b.geometry)?;
        (a.refine_to(&g)?, b.refine_to(&g)?)
    };
    let g = &ra.geometry;
    let mut total = 0.0;
    for (idx, (&x, &y)) in ra.dims.iter().zip(&rb.dims).enumerate() {
        if x == y {
            continue;
        }
        let w = content.weight(g, &g.vertex(idx))?;
        if w == 0.0 {
            continue;
        }
        total += (x.abs_diff(y) as f64).powf(p) * w;
    }
    Ok(if p == 1.0 { total } else { total.powf(1.0 / p) })
}

pub fn lp_hilbert_distance_barcodes(p: f64, a: &Barcode, b: &Barcode, content: &Content) -> Result<f64> {
    lp_hilbert_distance(p, &barcode_hilbert(a)?, &barcode_hilbert(b)?, content)
}

/// `A` belongs to the noise system of `spec` at level `eps`.
pub fn noise_membership(spec: &AmplitudeSpec, eps: f64, a: &Barcode) -> Result<bool> {
    Ok(eval_barcode(spec, a)? <= eps)
}

pub fn noise_membership_grid(spec: &AmplitudeSpec, eps: f64, a: &GridModule) -> Result<bool> {
    Ok(eval_grid(spec, a)? <= eps)
}

/// Machine-readable distance result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub distance_name: String,
    #[serde(with = "crate::serde_ext::ext_real")]
    pub value: f64,
    pub exactness: Exactness,
    pub witness_plan: Option<MatchingPlan>,
}
