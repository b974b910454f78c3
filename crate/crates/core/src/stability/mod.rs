//! Executable catalog of stability inequalities and of known counterexamples.
//!
//! Every entry produces rows `left <= right`. Catalog entries must hold on
//! every sample; counterexamples must violate their row strictly. Samples
//! are derived from `(seed, id, index)` alone, so any failure can be replayed.

mod catalog;
mod counter;
mod sample;

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::amplitude::le_tol;
use crate::error::{Error, Result};

pub use catalog::{case, InequalityCase, CATALOG, STRICT_WITNESS_SPECS};
pub use counter::{ctau_disc_module, COUNTEREXAMPLES};
pub use sample::{random_barcode, sample_seed, SAMPLE_STEP};

/// Witnesses kept per variant in a report.
pub const WITNESS_CAP: usize = 5;

/// One evaluated row `left <= right`.
#[derive(Clone, Debug, PartialEq)]
pub struct Observation {
    pub variant: String,
    pub left: f64,
    pub right: f64,
    pub tol: f64,
    /// Inputs in their text or JSON formats.
    pub inputs: Vec<String>,
}

impl Observation {
    pub fn holds(&self) -> bool {
        le_tol(self.left, self.right, self.tol)
    }

    pub fn strictly_violated(&self) -> bool {
        self.left > self.right
    }
}

/// Serializable, replayable record of one row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub id: String,
    pub seed: u64,
    pub index: usize,
    pub variant: String,
    #[serde(with = "crate::serde_ext::ext_real")]
    pub left: f64,
    #[serde(with = "crate::serde_ext::ext_real")]
    pub right: f64,
    pub inputs: Vec<String>,
}

impl Witness {
    fn new(id: &str, seed: u64, index: usize, o: Observation) -> Self {
        Witness {
            id: id.to_string(),
            seed,
            index,
            variant: o.variant,
            left: o.left,
            right: o.right,
            inputs: o.inputs,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Inequality,
    Counterexample,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub kind: CheckKind,
    pub samples: usize,
    /// Rows evaluated across all samples.
    pub checks: usize,
    /// Rows that broke the expectation: a violated inequality, or a
    /// counterexample row that did not reproduce.
    pub failures: Vec<Witness>,
    /// Notable rows: strict-subadditivity witnesses, or the reproduced
    /// counterexample rows.
    pub witnesses: Vec<Witness>,
    /// Largest finite `right - left` seen.
    #[serde(with = "crate::serde_ext::ext_real")]
    pub max_slack: f64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn slack(o: &Observation) -> Option<f64> {
    let s = o.right - o.left;
    s.is_finite().then_some(s)
}

fn fold_slack(acc: f64, s: Option<f64>) -> f64 {
    match s {
        Some(s) if acc.is_nan() || s > acc => s,
        _ => acc,
    }
}

pub fn is_catalog_id(id: &str) -> bool {
    case(id).is_some()
}

pub fn is_counterexample_id(id: &str) -> bool {
    COUNTEREXAMPLES.iter().any(|(c, _)| *c == id)
}

/// Runs `samples` samples of each catalog entry in `ids`. Samples run in
/// parallel; results are merged in sample order.
pub fn run_catalog(ids: &[&str], seed: u64, samples: usize) -> Result<Vec<CheckReport>> {
    if let Some(bad) = ids.iter().find(|id| !is_catalog_id(id)) {
        return Err(Error::UnknownId(bad.to_string()));
    }
    ids.iter().map(|id| run_entry(id, seed, samples)).collect()
}

fn run_entry(id: &str, seed: u64, samples: usize) -> Result<CheckReport> {
    let outcomes: Vec<(Vec<Observation>, Vec<Observation>)> = (0..samples)
        .into_par_iter()
        .map(|i| catalog::evaluate(id, sample_seed(seed, id, i)))
        .collect::<Result<_>>()?;
    let mut report = CheckReport {
        id: id.to_string(),
        kind: CheckKind::Inequality,
        samples,
        checks: 0,
        failures: Vec::new(),
        witnesses: Vec::new(),
        max_slack: f64::NAN,
    };
    let mut kept: HashMap<String, usize> = HashMap::new();
    for (index, (checks, notable)) in outcomes.into_iter().enumerate() {
        report.checks += checks.len();
        for o in checks {
            report.max_slack = fold_slack(report.max_slack, slack(&o));
            if !o.holds() {
                report.failures.push(Witness::new(id, seed, index, o));
            }
        }
        for o in notable {
            let n = kept.entry(o.variant.clone()).or_default();
            if *n < WITNESS_CAP {
                *n += 1;
                report.witnesses.push(Witness::new(id, seed, index, o));
            }
        }
    }
    Ok(report)
}

/// Runs every registered counterexample. A report passes when each of its
/// rows strictly violates `left <= right`.
pub fn run_counterexamples() -> Result<Vec<CheckReport>> {
    COUNTEREXAMPLES.iter().map(|(id, _)| run_counterexample(id)).collect()
}

pub fn run_counterexample(id: &str) -> Result<CheckReport> {
    let rows = counter::evaluate(id)?;
    let mut report = CheckReport {
        id: id.to_string(),
        kind: CheckKind::Counterexample,
        samples: 1,
        checks: rows.len(),
        failures: Vec::new(),
        witnesses: Vec::new(),
        max_slack: f64::NAN,
    };
    for o in rows {
        report.max_slack = fold_slack(report.max_slack, slack(&o));
        let w = Witness::new(id, 0, 0, o.clone());
        if o.strictly_violated() {
            report.witnesses.push(w);
        } else {
            report.failures.push(w);
        }
    }
    Ok(report)
}

/// Recomputes the row recorded in `w`; returns its `(left, right)`.
pub fn replay(w: &Witness) -> Result<(f64, f64)> {
    let rows = if is_counterexample_id(&w.id) {
        counter::evaluate(&w.id)?
    } else {
        let (mut checks, notable) = catalog::evaluate(&w.id, sample_seed(w.seed, &w.id, w.index))?;
        checks.extend(notable);
        checks
    };
    rows.into_iter()
        .find(|o| o.variant == w.variant)
        .map(|o| (o.left, o.right))
        .ok_or_else(|| Error::Invalid(format!("no row `{}` in {} sample {}", w.variant, w.id, w.index)))
}
