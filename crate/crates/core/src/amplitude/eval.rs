use crate::barcode::Barcode;
use crate::error::{Error, Result};
use crate::gridmod::{from_barcode, to_barcode, GridModule, HilbertFunction};
use crate::linalg::Fp;

use super::shift::shift_amplitude;
use super::spec::{AmplitudeSpec, Content};

/// `(sum l^p)^(1/p)`, `max l` for `p = inf`.
pub fn p_norm(lengths: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        return lengths.iter().fold(0.0, |m, &l| m.max(l));
    }
    if lengths.iter().any(|l| l.is_infinite()) {
        return f64::INFINITY;
    }
    if p == 1.0 {
        return lengths.iter().sum();
    }
    lengths.iter().map(|l| l.powf(p)).sum::<f64>().powf(1.0 / p)
}

/// Lebesgue measure of the union of the bars.
pub fn support_length(bc: &Barcode) -> f64 {
    let mut bars: Vec<(f64, f64)> =
        bc.iter().filter(|b| !b.is_empty()).map(|b| (b.birth, b.death)).collect();
    bars.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut total = 0.0;
    let mut cur: Option<(f64, f64)> = None;
    for (b, d) in bars {
        cur = match cur {
            Some((cb, cd)) if b <= cd => Some((cb, cd.max(d))),
            Some((cb, cd)) => {
                total += cd - cb;
                Some((b, d))
            }
            None => Some((b, d)),
        };
    }
    if let Some((cb, cd)) = cur {
        total += cd - cb;
    }
    total
}

pub fn magnitude(bc: &Barcode) -> Result<f64> {
    let mut total = 0.0;
    for b in bc.iter() {
        if !b.birth.is_finite() {
            return Err(Error::InfiniteBirth(b.birth));
        }
        if b.is_empty() {
            continue;
        }
        let tail = if b.is_infinite() { 0.0 } else { (-b.death).exp() };
        total += (-b.birth).exp() - tail;
    }
    Ok(total)
}

/// Evaluates an amplitude on a barcode.
pub fn eval_barcode(spec: &AmplitudeSpec, bc: &Barcode) -> Result<f64> {
    spec.validate()?;
    let lengths = bc.sorted_lengths();
    Ok(match spec {
        AmplitudeSpec::PNorm(p) => p_norm(&lengths, *p),
        AmplitudeSpec::TotPers => p_norm(&lengths, 1.0),
        AmplitudeSpec::TropLen(k) => lengths.iter().take(*k).sum(),
        AmplitudeSpec::Magnitude => magnitude(bc)?,
        AmplitudeSpec::Support => support_length(bc),
        AmplitudeSpec::ShiftAmp { v, .. } => {
            if v.len() != 1 {
                return Err(Error::Inapplicable {
                    spec: spec.to_string(),
                    what: "a barcode".into(),
                });
            }
            // the threshold is a length, independent of the direction's scale
            lengths.first().copied().unwrap_or(0.0)
        }
        AmplitudeSpec::MaxDim | AmplitudeSpec::LpHilbert { .. } => {
            let m = from_barcode(Fp::default(), bc)?;
            eval_grid(spec, &m)?
        }
    })
}

/// `(sum_cells dim^p * nu(cell))^(1/p)` with `0 * inf = 0`.
pub fn lp_integral(h: &HilbertFunction, p: f64, content: &Content) -> Result<f64> {
    let g = &h.geometry;
    let mut total = 0.0;
    for (idx, &d) in h.dims.iter().enumerate() {
        if d == 0 {
            continue;
        }
        let w = content.weight(g, &g.vertex(idx))?;
        if w == 0.0 {
            continue;
        }
        total += (d as f64).powf(p) * w;
    }
    Ok(if p == 1.0 { total } else { total.powf(1.0 / p) })
}

/// Hilbert-only amplitudes.
pub fn eval_hilbert(spec: &AmplitudeSpec, h: &HilbertFunction) -> Result<f64> {
    spec.validate()?;
    match spec {
        AmplitudeSpec::LpHilbert { p, content } => lp_integral(h, *p, content),
        AmplitudeSpec::MaxDim => Ok(h.dims.iter().copied().max().unwrap_or(0) as f64),
        AmplitudeSpec::Support => {
            let g = &h.geometry;
            let mut total = 0.0;
            for (idx, &d) in h.dims.iter().enumerate() {
                if d > 0 {
                    total += g.volume(&g.vertex(idx));
                }
            }
            Ok(total)
        }
        _ => Err(Error::Inapplicable {
            spec: spec.to_string(),
            what: "a Hilbert function".into(),
        }),
    }
}

/// Evaluates an amplitude on a grid module. Barcode amplitudes go through
/// the interval decomposition and need `n = 1`.
pub fn eval_grid(spec: &AmplitudeSpec, m: &GridModule) -> Result<f64> {
    spec.validate()?;
    match spec {
        AmplitudeSpec::LpHilbert { .. } | AmplitudeSpec::MaxDim | AmplitudeSpec::Support => {
            eval_hilbert(spec, &m.hilbert())
        }
        AmplitudeSpec::ShiftAmp { v, norm } => shift_amplitude(m, v, *norm),
        _ if m.n() == 1 => eval_barcode(spec, &to_barcode(m)?),
        _ => Err(Error::Inapplicable {
            spec: spec.to_string(),
            what: format!("a {}-parameter module", m.n()),
        }),
    }
}

/// `sum of the l largest min{b_i, m * l_i}`; not an amplitude.
pub fn tropical_sigma10(bc: &Barcode, l: usize, m: usize) -> f64 {
    let mut terms: Vec<f64> = bc.iter().map(|b| b.birth.min(m as f64 * b.length())).collect();
    terms.sort_by(|a, b| b.total_cmp(a));
    terms.iter().take(l).sum()
}
