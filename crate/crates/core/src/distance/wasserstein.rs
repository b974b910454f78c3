use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::barcode::{Bar, Barcode};
use crate::error::{Error, Result};

use super::assignment::{bottleneck_assignment, hungarian};
use super::plan::MatchingPlan;

/// Ground metric on diagram points `(birth, death)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ground {
    /// `max(|db|, |dd|)`, diagonal cost `(d - b) / 2`.
    #[default]
    Linf,
    /// `|db| + |dd|`, diagonal cost `d - b`.
    L1,
}

impl Ground {
    pub fn pair(self, x: &Bar, y: &Bar) -> f64 {
        let db = (x.birth - y.birth).abs();
        let dd = if x.is_infinite() && y.is_infinite() {
            0.0
        } else {
            (x.death - y.death).abs()
        };
        match self {
            Ground::Linf => db.max(dd),
            Ground::L1 => db + dd,
        }
    }

    pub fn diagonal(self, x: &Bar) -> f64 {
        match self {
            Ground::Linf => x.length() / 2.0,
            Ground::L1 => x.length(),
        }
    }
}

impl FromStr for Ground {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "linf" => Ok(Ground::Linf),
            "l1" => Ok(Ground::L1),
            _ => Err(Error::Invalid(format!("unknown ground metric `{s}`"))),
        }
    }
}

/// Diagonal-augmented `(m+n) x (m+n)` cost matrix. Rows are the bars of `a`
/// followed by diagonal copies of the bars of `b`; columns are the bars of
/// `b` followed by diagonal copies of the bars of `a`.
pub fn augmented_costs<F, G>(a: &[Bar], b: &[Bar], pair: F, delete: G) -> Vec<Vec<f64>>
where
    F: Fn(&Bar, &Bar) -> f64,
    G: Fn(&Bar) -> f64,
{
    let (m, n) = (a.len(), b.len());
    let mut c = vec![vec![f64::INFINITY; m + n]; m + n];
    for i in 0..m {
        for j in 0..n {
            c[i][j] = pair(&a[i], &b[j]);
        }
        c[i][n + i] = delete(&a[i]);
    }
    for j in 0..n {
        c[m + j][j] = delete(&b[j]);
        for i in 0..m {
            c[m + j][n + i] = 0.0;
        }
    }
    c
}

/// Reads the plan off an assignment of the augmented matrix.
pub fn plan_from_assignment(m: usize, n: usize, assign: &[usize]) -> MatchingPlan {
    let mut plan = MatchingPlan::default();
    for (i, &j) in assign.iter().enumerate().take(m) {
        if j < n {
            plan.pairs.push((i, j));
        } else {
            plan.unmatched_m.push(i);
        }
    }
    let mut matched_n = vec![false; n];
    for &(_, j) in &plan.pairs {
        matched_n[j] = true;
    }
    plan.unmatched_n = (0..n).filter(|&j| !matched_n[j]).collect();
    plan
}

fn split(bc: &Barcode) -> (Vec<Bar>, Vec<Bar>) {
    let (mut inf, fin): (Vec<Bar>, Vec<Bar>) = bc.iter().copied().partition(Bar::is_infinite);
    inf.sort_by(|x, y| x.birth.total_cmp(&y.birth));
    (fin, inf)
}

/// p-Wasserstein distance (`p = inf` gives the bottleneck distance).
/// Infinite bars match only each other; differing counts give `inf`.
pub fn wasserstein(p: f64, a: &Barcode, b: &Barcode, ground: Ground) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::Invalid(format!("Wasserstein exponent {p} outside [1, inf]")));
    }
    let (fa, ia) = split(a);
    let (fb, ib) = split(b);
    if ia.len() != ib.len() {
        return Ok(f64::INFINITY);
    }
    let essential: Vec<f64> = ia.iter().zip(&ib).map(|(x, y)| ground.pair(x, y)).collect();
    if p.is_infinite() {
        let c = augmented_costs(&fa, &fb, |x, y| ground.pair(x, y), |x| ground.diagonal(x));
        let (v, _) = bottleneck_assignment(&c);
        return Ok(essential.iter().fold(v, |m, &e| m.max(e)));
    }
    let c = augmented_costs(&fa, &fb, |x, y| ground.pair(x, y).powf(p), |x| ground.diagonal(x).powf(p));
    let (v, _) = hungarian(&c);
    let total = v + essential.iter().map(|e| e.powf(p)).sum::<f64>();
    Ok(if p == 1.0 { total } else { total.powf(1.0 / p) })
}

pub fn bottleneck(a: &Barcode, b: &Barcode) -> Result<f64> {
    wasserstein(f64::INFINITY, a, b, Ground::Linf)
}

/// One-parameter interleaving distance, via the isometry with the
/// bottleneck distance.
pub fn interleaving_1param(a: &Barcode, b: &Barcode) -> Result<f64> {
    bottleneck(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bc(p: &[(f64, f64)]) -> Barcode {
        Barcode::from_pairs(p)
    }

    #[test]
    fn known_pair() {
        let a = bc(&[(0.0, 3.0)]);
        let b = bc(&[(4.0, 5.0)]);
        assert_eq!(bottleneck(&a, &b).unwrap(), 1.5);
        assert_eq!(wasserstein(1.0, &a, &b, Ground::Linf).unwrap(), 2.0);
        assert_eq!(wasserstein(2.0, &a, &a, Ground::Linf).unwrap(), 0.0);
        assert_eq!(interleaving_1param(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn stretched_bar() {
        let eps = 0.25;
        let a = bc(&[(0.0, 2.0)]);
        let b = bc(&[(0.0, 2.0 + 2.0 * eps)]);
        assert_eq!(interleaving_1param(&a, &b).unwrap(), 2.0 * eps);
    }

    #[test]
    fn infinite_bars() {
        let a = bc(&[(0.0, f64::INFINITY), (1.0, 2.0)]);
        let b = bc(&[(0.5, f64::INFINITY)]);
        assert_eq!(bottleneck(&a, &b).unwrap(), 0.5);
        assert_eq!(bottleneck(&a, &bc(&[])).unwrap(), f64::INFINITY);
    }

    #[test]
    fn l1_ground() {
        let a = bc(&[(0.0, 3.0)]);
        let b = bc(&[(1.0, 4.0)]);
        assert_eq!(wasserstein(1.0, &a, &b, Ground::L1).unwrap(), 2.0);
        assert_eq!(wasserstein(1.0, &a, &b, Ground::Linf).unwrap(), 1.0);
    }
}
