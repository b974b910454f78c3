//! Path metrics restricted to cospans induced by bar matchings.

use serde::{Deserialize, Serialize};

use crate::amplitude::AmplitudeSpec;
use crate::barcode::{Bar, Barcode};
use crate::error::{Error, Result};

use super::assignment::{bottleneck_assignment, hopcroft_karp, hungarian};
use super::plan::{cost_of_cospan, overlaps, CospanFragments, CostFunction, MatchingPlan};
use super::wasserstein::plan_from_assignment;

/// Bars per side above which the exhaustive search refuses to run.
pub const EXHAUSTIVE_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    UpperBound,
}

impl Exactness {
    pub fn as_str(self) -> &'static str {
        match self {
            Exactness::Exact => "exact",
            Exactness::UpperBound => "upper_bound",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathMetric {
    pub value: f64,
    pub exactness: Exactness,
    pub plan: MatchingPlan,
}

/// How the minimization over plans is carried out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Strategy {
    /// Per-pair additive cost; Hungarian on `weight` then fold.
    Additive,
    /// Per-pair max; bottleneck assignment.
    Bottleneck,
    Exhaustive,
}

fn strategy(spec: &AmplitudeSpec, f: CostFunction) -> Strategy {
    let f = match f {
        CostFunction::LpFold(p) if p == 1.0 => CostFunction::Sum,
        CostFunction::LpFold(p) if p.is_infinite() => CostFunction::Max,
        other => other,
    };
    match (spec, f) {
        (AmplitudeSpec::PNorm(p), CostFunction::Sum) if *p == 1.0 => Strategy::Additive,
        (AmplitudeSpec::TotPers | AmplitudeSpec::Magnitude, CostFunction::Sum) => Strategy::Additive,
        (AmplitudeSpec::PNorm(p), CostFunction::LpFold(q)) if p == &q => Strategy::Additive,
        (AmplitudeSpec::PNorm(p), CostFunction::Max) if p.is_infinite() => Strategy::Bottleneck,
        _ => Strategy::Exhaustive,
    }
}

/// Whether the matching family is known to realize the path metric.
pub fn is_exact(spec: &AmplitudeSpec, f: CostFunction) -> bool {
    let sum = matches!(f, CostFunction::Sum) || matches!(f, CostFunction::LpFold(p) if p == 1.0);
    sum && (matches!(spec, AmplitudeSpec::TotPers) || matches!(spec, AmplitudeSpec::PNorm(p) if *p == 1.0))
}

/// Converts disjoint pairs into unmatched bars and sorts the plan.
fn normalize(m: &Barcode, n: &Barcode, plan: MatchingPlan) -> MatchingPlan {
    let mut assign = vec![None; m.len()];
    for (i, j) in plan.pairs {
        if overlaps(&m.bars[i], &n.bars[j]) {
            assign[i] = Some(j);
        }
    }
    MatchingPlan::from_assignment(&assign, n.len())
}

fn pair_fragments(x: Option<&Bar>, y: Option<&Bar>) -> CospanFragments {
    let mut fr = CospanFragments::default();
    match (x, y) {
        (Some(x), Some(y)) => fr.add_pair(x, y),
        (Some(x), None) => fr.add_unmatched_m(x),
        (None, Some(y)) => fr.add_unmatched_n(y),
        (None, None) => {}
    }
    fr
}

fn assignment_plan(spec: &AmplitudeSpec, m: &Barcode, n: &Barcode, f: CostFunction, bottleneck: bool) -> Result<Option<MatchingPlan>> {
    // per-pair weight whose sum (or max) is monotone in the plan cost
    let weight = |x: Option<&Bar>, y: Option<&Bar>| -> Result<f64> {
        let fr = pair_fragments(x, y);
        match (spec, f) {
            (AmplitudeSpec::PNorm(p), CostFunction::LpFold(q)) if !bottleneck && *p == q && q != 1.0 => {
                let all = fr.ker_phi.bars.iter().chain(&fr.coker_phi.bars).chain(&fr.ker_psi.bars).chain(&fr.coker_psi.bars);
                Ok(all.map(|b| b.length().powf(*p)).sum())
            }
            _ if bottleneck => cost_of_cospan(&fr, spec, CostFunction::Max),
            _ => cost_of_cospan(&fr, spec, CostFunction::Sum),
        }
    };
    let (ms, ns) = (&m.bars, &n.bars);
    let (mm, nn) = (ms.len(), ns.len());
    let mut c = vec![vec![f64::INFINITY; mm + nn]; mm + nn];
    for i in 0..mm {
        for j in 0..nn {
            c[i][j] = weight(Some(&ms[i]), Some(&ns[j]))?;
        }
        c[i][nn + i] = weight(Some(&ms[i]), None)?;
    }
    for j in 0..nn {
        c[mm + j][j] = weight(None, Some(&ns[j]))?;
        for i in 0..mm {
            c[mm + j][nn + i] = 0.0;
        }
    }
    let size = mm + nn;
    let adj: Vec<Vec<usize>> = c.iter().map(|row| (0..size).filter(|&j| row[j].is_finite()).collect()).collect();
    if hopcroft_karp(size, size, &adj).iter().any(Option::is_none) {
        return Ok(None);
    }
    let (_, assign) = if bottleneck { bottleneck_assignment(&c) } else { hungarian(&c) };
    Ok(Some(plan_from_assignment(mm, nn, &assign)))
}

fn exhaustive_plan(spec: &AmplitudeSpec, m: &Barcode, n: &Barcode, f: CostFunction) -> Result<(f64, MatchingPlan)> {
    if m.len() > EXHAUSTIVE_LIMIT || n.len() > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge { m: m.len(), n: n.len(), limit: EXHAUSTIVE_LIMIT });
    }
    struct Search<'a> {
        spec: &'a AmplitudeSpec,
        f: CostFunction,
        m: &'a [Bar],
        n: &'a [Bar],
        assign: Vec<Option<usize>>,
        used: Vec<bool>,
        best: f64,
        best_assign: Option<Vec<Option<usize>>>,
    }
    impl Search<'_> {
        fn run(&mut self, i: usize, fr: &CospanFragments) -> Result<()> {
            if i == self.m.len() {
                let mut full = fr.clone();
                for (j, y) in self.n.iter().enumerate() {
                    if !self.used[j] {
                        full.add_unmatched_n(y);
                    }
                }
                let c = cost_of_cospan(&full, self.spec, self.f)?;
                // strict improvement keeps the lexicographically first optimum
                if self.best_assign.is_none() || c < self.best {
                    self.best = c;
                    self.best_assign = Some(self.assign.clone());
                }
                return Ok(());
            }
            if self.best_assign.is_some() && cost_of_cospan(fr, self.spec, self.f)? > self.best {
                return Ok(());
            }
            let x = self.m[i];
            let mut next = fr.clone();
            next.add_unmatched_m(&x);
            self.assign[i] = None;
            self.run(i + 1, &next)?;
            for j in 0..self.n.len() {
                if self.used[j] || !overlaps(&x, &self.n[j]) {
                    continue;
                }
                let mut next = fr.clone();
                next.add_pair(&x, &self.n[j]);
                self.used[j] = true;
                self.assign[i] = Some(j);
                self.run(i + 1, &next)?;
                self.used[j] = false;
            }
            self.assign[i] = None;
            Ok(())
        }
    }
    let mut s = Search {
        spec,
        f,
        m: &m.bars,
        n: &n.bars,
        assign: vec![None; m.len()],
        used: vec![false; n.len()],
        best: f64::INFINITY,
        best_assign: None,
    };
    s.run(0, &CospanFragments::default())?;
    let assign = s.best_assign.expect("at least one plan");
    Ok((s.best, MatchingPlan::from_assignment(&assign, n.len())))
}

/// Minimum of the f-cost over matching-induced cospans `M -> C <- N`.
///
/// Exact for `(rho_1, Sum)` and `(totpers, Sum)`; an upper bound on the
/// path metric otherwise.
pub fn path_metric_1param(spec: &AmplitudeSpec, m: &Barcode, n: &Barcode, f: CostFunction) -> Result<PathMetric> {
    spec.validate()?;
    let exactness = if is_exact(spec, f) { Exactness::Exact } else { Exactness::UpperBound };
    let (value, plan) = match strategy(spec, f) {
        Strategy::Exhaustive => exhaustive_plan(spec, m, n, f)?,
        s => match assignment_plan(spec, m, n, f, s == Strategy::Bottleneck)? {
            Some(plan) => {
                let plan = normalize(m, n, plan);
                let fr = super::plan::matching_cospan(m, n, &plan)?;
                (cost_of_cospan(&fr, spec, f)?, plan)
            }
            None => (f64::INFINITY, MatchingPlan::from_assignment(&vec![None; m.len()], n.len())),
        },
    };
    Ok(PathMetric { value, exactness, plan })
}

/// Same minimization, always by exhaustive search (for cross-checks).
pub fn path_metric_exhaustive(spec: &AmplitudeSpec, m: &Barcode, n: &Barcode, f: CostFunction) -> Result<PathMetric> {
    spec.validate()?;
    let (value, plan) = exhaustive_plan(spec, m, n, f)?;
    let exactness = if is_exact(spec, f) { Exactness::Exact } else { Exactness::UpperBound };
    Ok(PathMetric { value, exactness, plan })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bc(p: &[(f64, f64)]) -> Barcode {
        Barcode::from_pairs(p)
    }

    fn pm(spec: &str, a: &Barcode, b: &Barcode, f: CostFunction) -> PathMetric {
        path_metric_1param(&spec.parse().unwrap(), a, b, f).unwrap()
    }

    #[test]
    fn tropical_pair() {
        let (a, b) = (bc(&[(0.0, 3.0)]), bc(&[(4.0, 5.0)]));
        for k in 1..=3 {
            let r = pm(&format!("trop:{k}"), &a, &b, CostFunction::Sum);
            assert_eq!(r.value, 4.0);
            assert_eq!(r.exactness, Exactness::UpperBound);
        }
    }

    #[test]
    fn shifted_unit_bars() {
        let (a, b) = (bc(&[(0.0, 1.0)]), bc(&[(3.0, 4.0)]));
        for p in ["p1", "p2", "pinf"] {
            assert_eq!(pm(p, &a, &b, CostFunction::Sum).value, 2.0);
            assert_eq!(pm(p, &a, &b, CostFunction::Max).value, 1.0);
        }
        assert_eq!(pm("p1", &a, &b, CostFunction::Sum).exactness, Exactness::Exact);
    }

    #[test]
    fn self_distance_zero() {
        let a = bc(&[(0.0, 3.0), (1.0, 2.0), (2.0, f64::INFINITY)]);
        for s in ["p1", "p2", "pinf", "totpers", "trop:2", "magnitude", "support", "maxdim", "shift:1", "hilbert:1"] {
            assert_eq!(pm(s, &a, &a, CostFunction::Sum).value, 0.0, "{s}");
        }
    }

    #[test]
    fn strategies_agree_with_search() {
        let a = bc(&[(0.0, 3.0), (1.0, 5.0), (2.0, 2.5)]);
        let b = bc(&[(0.5, 3.5), (4.0, 6.0)]);
        for (s, f) in [("p1", CostFunction::Sum), ("magnitude", CostFunction::Sum), ("p2", CostFunction::LpFold(2.0)), ("pinf", CostFunction::Max)] {
            let spec: AmplitudeSpec = s.parse().unwrap();
            let fast = path_metric_1param(&spec, &a, &b, f).unwrap().value;
            let slow = path_metric_exhaustive(&spec, &a, &b, f).unwrap().value;
            assert!((fast - slow).abs() <= 1e-12 * slow.max(1.0), "{s}: {fast} vs {slow}");
        }
    }

    #[test]
    fn infinite_mismatch() {
        let a = bc(&[(0.0, f64::INFINITY)]);
        assert_eq!(pm("p1", &a, &bc(&[]), CostFunction::Sum).value, f64::INFINITY);
        assert_eq!(pm("p1", &a, &bc(&[(1.0, f64::INFINITY)]), CostFunction::Sum).value, 1.0);
    }

    #[test]
    fn too_large() {
        let many = Barcode::from_pairs(&[(0.0, 1.0); 9]);
        let r = path_metric_1param(&AmplitudeSpec::TropLen(1), &many, &many, CostFunction::Sum);
        assert!(matches!(r, Err(Error::TooLarge { .. })));
        assert!(path_metric_1param(&AmplitudeSpec::TotPers, &many, &many, CostFunction::Sum).is_ok());
    }
}
