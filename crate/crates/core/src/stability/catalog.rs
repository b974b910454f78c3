use rand::seq::SliceRandom;
use rand::Rng;

use crate::amplitude::{eval_barcode, eval_grid, shift_amplitude, AmplitudeSpec, Content, Norm};
use crate::barcode::Barcode;
use crate::distance::{abs_distance, bottleneck, interleaving_1param, path_metric_1param, path_metric_exhaustive, CostFunction};
use crate::error::Result;
use crate::gridmod::random::{random_module_sample, random_ses_sample, rng_from_seed};
use crate::gridmod::{local_cohomology, quotient_restriction, Face, GridModule};
use crate::linalg::Fp;

use super::sample::random_barcode;
use super::Observation;

/// One registered inequality `left <= right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InequalityCase {
    pub id: &'static str,
    pub description: &'static str,
    /// Why the check cannot fail through bound slack alone.
    pub soundness: &'static str,
}

pub const CATALOG: &[InequalityCase] = &[
    InequalityCase {
        id: "LIP",
        description: "|alpha(A) - alpha(B)| <= d_alpha(A, B)",
        soundness: "right side is an upper bound on d_alpha, so the check is sound for every amplitude",
    },
    InequalityCase {
        id: "SHIFT-INT",
        description: "d_I <= d_shift on random pairs; d_shift <= 6 d_I on the family (A, 0)",
        soundness: "left half compares against an upper bound; right half uses d_shift(A, 0) = shift(A) exactly",
    },
    InequalityCase {
        id: "HILB-INT",
        description: "bottleneck(A, B) <= 4 d_rho1(A, B)",
        soundness: "d_rho1 is computed exactly by the assignment solver",
    },
    InequalityCase {
        id: "WASS",
        description: "W_p^alg <= d_rho_p <= 4^(1 - 1/p) W_p^alg for p in {1, 2, inf}",
        soundness: "both sides minimized exhaustively over the same matching family (at most 6 bars per side)",
    },
    InequalityCase {
        id: "PNORM",
        description: "d_rho_q <= d_rho_p for p <= q in {1, 2, inf}",
        soundness: "both sides minimized over the same matching family; the bound holds cospan by cospan",
    },
    InequalityCase {
        id: "TROP",
        description: "d_T_l <= max(1, l/k) d_T_k for k, l in {1, 2, 3}",
        soundness: "both sides minimized over the same matching family; the bound holds cospan by cospan",
    },
    InequalityCase {
        id: "MAG",
        description: "d_mag <= d_totpers and mag(A) <= totpers(A) for births >= 0",
        soundness: "both sides minimized over the same matching family; the bound holds cospan by cospan",
    },
    InequalityCase {
        id: "H0-AB",
        description: "alpha(H0_tau(M)) <= alpha(M) for L^p Hilbert, max-dim and shift amplitudes",
        soundness: "both sides exact",
    },
    InequalityCase {
        id: "QR-SHIFT",
        description: "shift'(M / tau) <= shift(M) with v' the transverse part of v",
        soundness: "both sides exact",
    },
    InequalityCase {
        id: "AXIOMS",
        description: "monotonicity and subadditivity on random short exact sequences; additivity where claimed",
        soundness: "all values exact, or within 1e-9 relative for irrational amplitudes",
    },
];

pub fn case(id: &str) -> Option<&'static InequalityCase> {
    CATALOG.iter().find(|c| c.id == id)
}

fn spec(s: &str) -> AmplitudeSpec {
    s.parse().expect("catalog spec literal")
}

fn obs(variant: impl Into<String>, left: f64, right: f64, tol: f64, inputs: &[&Barcode]) -> Observation {
    Observation {
        variant: variant.into(),
        left,
        right,
        tol,
        inputs: inputs.iter().map(|b| b.to_text()).collect(),
    }
}

fn module_obs(variant: impl Into<String>, left: f64, right: f64, tol: f64, m: &GridModule, extra: String) -> Observation {
    Observation {
        variant: variant.into(),
        left,
        right,
        tol,
        inputs: vec![m.to_json(), extra],
    }
}

fn pair(seed: u64, max_bars: usize, inf_rate: f64) -> Result<(Barcode, Barcode)> {
    let mut rng = rng_from_seed(seed);
    let a = random_barcode(rng.gen(), max_bars, (0.0, 4.0), (0.25, 3.0), inf_rate)?;
    let b = random_barcode(rng.gen(), max_bars, (0.0, 4.0), (0.25, 3.0), inf_rate)?;
    Ok((a, b))
}

fn path(s: &AmplitudeSpec, a: &Barcode, b: &Barcode, f: CostFunction) -> Result<f64> {
    Ok(path_metric_1param(s, a, b, f)?.value)
}

fn lip(seed: u64) -> Result<Vec<Observation>> {
    let (a, b) = pair(seed, 4, 0.0)?;
    let mut out = Vec::new();
    for name in ["p1", "p2", "pinf", "totpers", "trop:1", "trop:2", "magnitude"] {
        let s = spec(name);
        let left = abs_distance(&s, &a, &b)?;
        let right = path(&s, &a, &b, CostFunction::Sum)?;
        out.push(obs(name, left, right, s.tolerance(), &[&a, &b]));
    }
    Ok(out)
}

fn shift_int(seed: u64) -> Result<Vec<Observation>> {
    let (a, b) = pair(seed, 4, 0.0)?;
    let s = spec("shift:1");
    let left = interleaving_1param(&a, &b)?;
    let right = path(&s, &a, &b, CostFunction::Sum)?;
    let zero = Barcode::empty();
    let exact = eval_barcode(&s, &a)?;
    Ok(vec![
        obs("d_I <= d_shift", left, right, 0.0, &[&a, &b]),
        obs("d_I <= d_shift on (A, 0)", bottleneck(&a, &zero)?, exact, 0.0, &[&a]),
        obs("d_shift <= 6 d_I on (A, 0)", exact, 6.0 * bottleneck(&a, &zero)?, 0.0, &[&a]),
    ])
}

fn hilb_int(seed: u64) -> Result<Vec<Observation>> {
    let (a, b) = pair(seed, 6, 0.1)?;
    let left = bottleneck(&a, &b)?;
    let right = 4.0 * path(&spec("p1"), &a, &b, CostFunction::Sum)?;
    Ok(vec![obs("bottleneck <= 4 d_rho1", left, right, 0.0, &[&a, &b])])
}

fn wass(seed: u64) -> Result<Vec<Observation>> {
    let (a, b) = pair(seed, 6, 0.0)?;
    let mut out = Vec::new();
    for (name, p) in [("p1", 1.0), ("p2", 2.0), ("pinf", f64::INFINITY)] {
        let s = spec(name);
        let alg = path_metric_exhaustive(&s, &a, &b, CostFunction::LpFold(p))?.value;
        let d = path_metric_exhaustive(&s, &a, &b, CostFunction::Sum)?.value;
        let factor = 4f64.powf(1.0 - 1.0 / p);
        out.push(obs(format!("{name}: W_alg <= d"), alg, d, 1e-9, &[&a, &b]));
        out.push(obs(format!("{name}: d <= factor W_alg"), d, factor * alg, 1e-9, &[&a, &b]));
    }
    Ok(out)
}

fn pnorm(seed: u64) -> Result<Vec<Observation>> {
    let (a, b) = pair(seed, 4, 0.0)?;
    let names = ["p1", "p2", "pinf"];
    let d: Vec<f64> = names.iter().map(|n| path(&spec(n), &a, &b, CostFunction::Sum)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            out.push(obs(format!("d_{} <= d_{}", names[j], names[i]), d[j], d[i], 1e-9, &[&a, &b]));
        }
    }
    Ok(out)
}

fn trop(seed: u64) -> Result<Vec<Observation>> {
    let (a, b) = pair(seed, 4, 0.0)?;
    let d: Vec<f64> = (1..=3).map(|k| path(&AmplitudeSpec::TropLen(k), &a, &b, CostFunction::Sum)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for k in 1..=3usize {
        for l in 1..=3usize {
            if k != l {
                let c = 1f64.max(l as f64 / k as f64);
                out.push(obs(format!("k={k} l={l}"), d[l - 1], c * d[k - 1], 1e-12, &[&a, &b]));
            }
        }
    }
    Ok(out)
}

fn mag(seed: u64) -> Result<Vec<Observation>> {
    let (a, b) = pair(seed, 5, 0.0)?;
    let (m, t) = (spec("magnitude"), spec("totpers"));
    Ok(vec![
        obs("d_mag <= d_totpers", path(&m, &a, &b, CostFunction::Sum)?, path(&t, &a, &b, CostFunction::Sum)?, 1e-9, &[&a, &b]),
        obs("mag <= totpers", eval_barcode(&m, &a)?, eval_barcode(&t, &a)?, 1e-9, &[&a]),
    ])
}

fn random_face<R: Rng>(rng: &mut R, n: usize, proper: bool) -> Face {
    let mut axes: Vec<usize> = (0..n).collect();
    axes.shuffle(rng);
    let max = if proper { n - 1 } else { n };
    let k = rng.gen_range(1..=max);
    axes.truncate(k);
    Face::new(axes, n).expect("axes in range")
}

fn face_text(f: &Face) -> String {
    let axes: Vec<String> = f.axes().iter().map(|a| (a + 1).to_string()).collect();
    format!("tau = {}", axes.join(","))
}

fn h0_ab(seed: u64) -> Result<Vec<Observation>> {
    let mut rng = rng_from_seed(seed);
    let n = rng.gen_range(1..=2);
    let m = random_module_sample(rng.gen(), Fp::default(), n);
    let tau = random_face(&mut rng, n, false);
    let (h, _) = local_cohomology(&m, &tau)?;
    let ones = vec![1.0; n];
    let specs = [
        AmplitudeSpec::hilbert(1.0),
        AmplitudeSpec::hilbert(2.0),
        AmplitudeSpec::LpHilbert { p: 1.0, content: Content::Counting },
        AmplitudeSpec::MaxDim,
        AmplitudeSpec::shift(ones, Norm::Linf),
    ];
    let mut out = Vec::new();
    for s in specs {
        out.push(module_obs(s.to_string(), eval_grid(&s, &h)?, eval_grid(&s, &m)?, s.tolerance(), &m, face_text(&tau)));
    }
    Ok(out)
}

fn qr_shift(seed: u64) -> Result<Vec<Observation>> {
    let mut rng = rng_from_seed(seed);
    let n = if rng.gen_bool(0.8) { 2 } else { 3 };
    let m = random_module_sample(rng.gen(), Fp::default(), n);
    let tau = random_face(&mut rng, n, true);
    let v: Vec<f64> = (0..n).map(|_| *[0.5, 1.0, 2.0].choose(&mut rng).expect("nonempty")).collect();
    let v_t: Vec<f64> = tau.complement(n).iter().map(|&i| v[i]).collect();
    let q = quotient_restriction(&m, &tau)?;
    let left = shift_amplitude(&q, &v_t, Norm::Linf)?;
    let right = shift_amplitude(&m, &v, Norm::Linf)?;
    let extra = format!("{}; v = {:?}", face_text(&tau), v);
    Ok(vec![module_obs("shift'(M/tau) <= shift(M)", left, right, 0.0, &m, extra)])
}

const AXIOM_SPECS_1D: &[&str] = &[
    "p1", "p2", "pinf", "totpers", "trop:1", "trop:2", "trop:3", "magnitude", "support", "maxdim", "shift:1", "hilbert:1",
    "hilbert:2", "hilbert:1:counting",
];
const AXIOM_SPECS_2D: &[&str] = &["support", "maxdim", "shift:1,1", "shift:1,2", "hilbert:1", "hilbert:2", "hilbert:1:counting"];

/// Specs whose strict-subadditivity witnesses are recorded.
pub const STRICT_WITNESS_SPECS: &[&str] = &["maxdim", "trop:1", "shift:1", "shift:1,1", "shift:1,2"];

fn axioms(seed: u64) -> Result<(Vec<Observation>, Vec<Observation>)> {
    let ses = random_ses_sample(seed, Fp::default());
    let names = if ses.b.n() == 1 { AXIOM_SPECS_1D } else { AXIOM_SPECS_2D };
    let inputs = vec![ses.a.to_json(), ses.b.to_json(), ses.c.to_json()];
    let mut checks = Vec::new();
    let mut notable = Vec::new();
    for name in names {
        let s = spec(name);
        let (a, b, c) = (eval_grid(&s, &ses.a)?, eval_grid(&s, &ses.b)?, eval_grid(&s, &ses.c)?);
        let tol = s.tolerance();
        let row = |variant: &str, left: f64, right: f64| Observation {
            variant: format!("{name}: {variant}"),
            left,
            right,
            tol,
            inputs: inputs.clone(),
        };
        checks.push(row("A <= B", a, b));
        checks.push(row("C <= B", c, b));
        checks.push(row("B <= A + C", b, a + c));
        if s.is_additive() {
            checks.push(row("A + C <= B", a + c, b));
        }
        if STRICT_WITNESS_SPECS.contains(name) && b < a + c {
            notable.push(row("strict", b, a + c));
        }
    }
    Ok((checks, notable))
}

/// Evaluates sample `index` of entry `id`. Returns the checked rows and the
/// rows worth recording as witnesses.
pub(crate) fn evaluate(id: &str, sample_seed: u64) -> Result<(Vec<Observation>, Vec<Observation>)> {
    let checks = match id {
        "LIP" => lip(sample_seed)?,
        "SHIFT-INT" => shift_int(sample_seed)?,
        "HILB-INT" => hilb_int(sample_seed)?,
        "WASS" => wass(sample_seed)?,
        "PNORM" => pnorm(sample_seed)?,
        "TROP" => trop(sample_seed)?,
        "MAG" => mag(sample_seed)?,
        "H0-AB" => h0_ab(sample_seed)?,
        "QR-SHIFT" => qr_shift(sample_seed)?,
        "AXIOMS" => return axioms(sample_seed),
        other => return Err(crate::Error::UnknownId(other.to_string())),
    };
    Ok((checks, Vec::new()))
}
