use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::amplitude::{eval_barcode, AmplitudeSpec};
use crate::barcode::{Bar, Barcode};
use crate::error::{Error, Result};

/// Partial bijection between the bars of `M` and of `N`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingPlan {
    pub pairs: Vec<(usize, usize)>,
    pub unmatched_m: Vec<usize>,
    pub unmatched_n: Vec<usize>,
}

impl MatchingPlan {
    /// Builds the plan from `assign[i] = Some(j)` for bars of `M`.
    pub fn from_assignment(assign: &[Option<usize>], n: usize) -> MatchingPlan {
        let mut plan = MatchingPlan::default();
        let mut used = vec![false; n];
        for (i, a) in assign.iter().enumerate() {
            match a {
                Some(j) => {
                    plan.pairs.push((i, *j));
                    used[*j] = true;
                }
                None => plan.unmatched_m.push(i),
            }
        }
        plan.unmatched_n = (0..n).filter(|&j| !used[j]).collect();
        plan
    }

    /// Checks that the plan partitions both index sets.
    pub fn validate(&self, m: usize, n: usize) -> Result<()> {
        let mut seen_m = vec![false; m];
        let mut seen_n = vec![false; n];
        let mark = |seen: &mut Vec<bool>, i: usize| -> Result<()> {
            match seen.get_mut(i) {
                Some(s) if !*s => {
                    *s = true;
                    Ok(())
                }
                _ => Err(Error::Invalid(format!("plan index {i} repeated or out of range"))),
            }
        };
        for &(i, j) in &self.pairs {
            mark(&mut seen_m, i)?;
            mark(&mut seen_n, j)?;
        }
        for &i in &self.unmatched_m {
            mark(&mut seen_m, i)?;
        }
        for &j in &self.unmatched_n {
            mark(&mut seen_n, j)?;
        }
        if seen_m.iter().chain(&seen_n).all(|&s| s) {
            Ok(())
        } else {
            Err(Error::Invalid("plan does not cover every bar".into()))
        }
    }
}

/// Kernel and cokernel pieces of the cospan `M -> C <- N` induced by a plan.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CospanFragments {
    pub center: Barcode,
    pub ker_phi: Barcode,
    pub coker_phi: Barcode,
    pub ker_psi: Barcode,
    pub coker_psi: Barcode,
}

fn push(bc: &mut Barcode, b: f64, d: f64) {
    if b < d {
        bc.bars.push(Bar { birth: b, death: d });
    }
}

pub fn overlaps(x: &Bar, y: &Bar) -> bool {
    x.birth.max(y.birth) < x.death.min(y.death)
}

impl CospanFragments {
    /// Adds the fragments of one matched pair.
    pub fn add_pair(&mut self, x: &Bar, y: &Bar) {
        if !overlaps(x, y) {
            self.add_unmatched_m(x);
            self.add_unmatched_n(y);
            return;
        }
        let b = x.birth.min(y.birth);
        let d = x.death.min(y.death);
        push(&mut self.center, b, d);
        push(&mut self.ker_phi, d, x.death);
        push(&mut self.coker_phi, b, x.birth);
        push(&mut self.ker_psi, d, y.death);
        push(&mut self.coker_psi, b, y.birth);
    }

    pub fn add_unmatched_m(&mut self, x: &Bar) {
        push(&mut self.ker_phi, x.birth, x.death);
    }

    pub fn add_unmatched_n(&mut self, y: &Bar) {
        push(&mut self.ker_psi, y.birth, y.death);
    }

    pub fn is_empty(&self) -> bool {
        self.ker_phi.is_empty() && self.coker_phi.is_empty() && self.ker_psi.is_empty() && self.coker_psi.is_empty()
    }
}

/// Fragments of the cospan induced by `plan`.
pub fn matching_cospan(m: &Barcode, n: &Barcode, plan: &MatchingPlan) -> Result<CospanFragments> {
    plan.validate(m.len(), n.len())?;
    let mut fr = CospanFragments::default();
    for &(i, j) in &plan.pairs {
        fr.add_pair(&m.bars[i], &n.bars[j]);
    }
    for &i in &plan.unmatched_m {
        fr.add_unmatched_m(&m.bars[i]);
    }
    for &j in &plan.unmatched_n {
        fr.add_unmatched_n(&n.bars[j]);
    }
    Ok(fr)
}

/// Fold of the four kernel and cokernel amplitudes of a cospan.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum CostFunction {
    Sum,
    Max,
    /// `(sum x_i^p)^(1/p)`; `p = inf` is `Max`.
    LpFold(f64),
}

impl CostFunction {
    pub fn apply(self, x: [f64; 4]) -> f64 {
        match self {
            CostFunction::Sum => x.iter().sum(),
            CostFunction::Max => x.iter().fold(0.0, |m, &v| m.max(v)),
            CostFunction::LpFold(p) if p.is_infinite() => CostFunction::Max.apply(x),
            CostFunction::LpFold(p) if p == 1.0 => CostFunction::Sum.apply(x),
            CostFunction::LpFold(p) => {
                if x.iter().any(|v| v.is_infinite()) {
                    f64::INFINITY
                } else {
                    x.iter().map(|v| v.powf(p)).sum::<f64>().powf(1.0 / p)
                }
            }
        }
    }
}

impl fmt::Display for CostFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostFunction::Sum => write!(f, "sum"),
            CostFunction::Max => write!(f, "max"),
            CostFunction::LpFold(p) => write!(f, "lp:{}", crate::barcode::fmt_real(*p)),
        }
    }
}

impl FromStr for CostFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.to_ascii_lowercase();
        match t.as_str() {
            "sum" => Ok(CostFunction::Sum),
            "max" => Ok(CostFunction::Max),
            _ => {
                let p = t
                    .strip_prefix("lp:")
                    .and_then(|p| if p == "inf" { Some(f64::INFINITY) } else { p.parse().ok() })
                    .filter(|p: &f64| *p >= 1.0)
                    .ok_or_else(|| Error::Invalid(format!("unknown fold `{s}`")))?;
                Ok(CostFunction::LpFold(p))
            }
        }
    }
}

/// The four amplitudes `(ker phi, coker phi, ker psi, coker psi)`.
pub fn cospan_costs(fr: &CospanFragments, spec: &AmplitudeSpec) -> Result<[f64; 4]> {
    Ok([
        eval_barcode(spec, &fr.ker_phi)?,
        eval_barcode(spec, &fr.coker_phi)?,
        eval_barcode(spec, &fr.ker_psi)?,
        eval_barcode(spec, &fr.coker_psi)?,
    ])
}

pub fn cost_of_cospan(fr: &CospanFragments, spec: &AmplitudeSpec, f: CostFunction) -> Result<f64> {
    Ok(f.apply(cospan_costs(fr, spec)?))
}
