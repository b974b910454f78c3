use crate::amplitude::{c_tau_rank, shift_amplitude, tropical_sigma10, Content, Norm};
use crate::barcode::Barcode;
use crate::error::Result;
use crate::gridmod::{Face, GridGeometry, GridModule, ModuleMorphism, ShortExactSequence};
use crate::linalg::{rank, Fp, Matrix};

use super::Observation;

pub const COUNTEREXAMPLES: &[(&str, &str)] = &[
    ("RANK-SUB", "the rank invariant is not subadditive"),
    ("SIGMA-MONO", "sigma_(1,0)^1 is not monotone under inclusions"),
    ("CTAU-MONO", "c_tau-rank is not monotone under quotients"),
    ("MIN-AMP", "the minimum of two amplitudes need not be subadditive"),
    ("CTAU-DISC", "c_tau-rank is not continuous at 0 for the interleaving distance"),
];

/// Morphism that is the identity wherever both sides are one-dimensional
/// and zero elsewhere.
fn unit_morphism(src: &GridModule, tgt: &GridModule) -> Result<ModuleMorphism> {
    let f = src.field();
    let comps = src
        .dims()
        .iter()
        .zip(tgt.dims())
        .map(|(&s, &t)| if s == 1 && t == 1 { Matrix::identity(f, 1) } else { Matrix::zeros(f, t, s) })
        .collect();
    ModuleMorphism::new(src.clone(), tgt.clone(), comps)
}

fn ses(a: GridModule, b: GridModule, c: GridModule) -> Result<ShortExactSequence> {
    let incl = unit_morphism(&a, &b)?;
    let proj = unit_morphism(&b, &c)?;
    let s = ShortExactSequence { a, b, c, incl, proj };
    s.validate()?;
    Ok(s)
}

fn inputs(s: &ShortExactSequence) -> Vec<String> {
    vec![s.a.to_json(), s.b.to_json(), s.c.to_json()]
}

fn rank_sub() -> Result<Observation> {
    let f = Fp::default();
    let g = GridGeometry::new(vec![vec![0.0, 1.0, 2.0]])?;
    let m = GridModule::interval(f, g.clone(), &[0], &[Some(1)])?;
    let sub = GridModule::interval(f, g.clone(), &[1], &[Some(1)])?;
    let quot = GridModule::interval(f, g.clone(), &[0], &[Some(0)])?;
    let s = ses(sub, m, quot)?;
    // (s, q) = (0, 1.5): both points lie inside [0, 2)
    let (u, w) = (g.locate(&[0.0]).expect("on grid"), g.locate(&[1.5]).expect("on grid"));
    let r = |x: &GridModule| -> Result<f64> { Ok(rank(&x.structure_map(&u, &w)?) as f64) };
    Ok(Observation {
        variant: "rank(0, 1.5): B <= A + C".into(),
        left: r(&s.b)?,
        right: r(&s.a)? + r(&s.c)?,
        tol: 0.0,
        inputs: inputs(&s),
    })
}

fn sigma_mono() -> Result<Observation> {
    let sub = Barcode::from_pairs(&[(2.0, 4.0)]);
    let sup = Barcode::from_pairs(&[(1.0, 4.0)]);
    Ok(Observation {
        variant: "sigma(I[2,4)) <= sigma(I[1,4))".into(),
        left: tropical_sigma10(&sub, 1, 1),
        right: tropical_sigma10(&sup, 1, 1),
        tol: 0.0,
        inputs: vec![sub.to_text(), sup.to_text()],
    })
}

fn ctau_mono() -> Result<Observation> {
    let f = Fp::default();
    let g = GridGeometry::unit(&[5, 1])?;
    let a = GridModule::upset(f, g.clone(), &[4, 0])?;
    let b = GridModule::upset(f, g.clone(), &[2, 0])?;
    let c = GridModule::interval(f, g, &[2, 0], &[Some(3), None])?;
    let s = ses(a, b, c)?;
    let tau = Face::new(vec![0], 2)?;
    let ct = |m: &GridModule| c_tau_rank(m, &tau, &Content::Counting);
    let (va, vb, vc) = (ct(&s.a)?, ct(&s.b)?, ct(&s.c)?);
    let mut inp = inputs(&s);
    inp.push(format!("c values (A, B, C) = ({va}, {vb}, {vc})"));
    Ok(Observation {
        variant: "c(C) <= c(B)".into(),
        left: vc,
        right: vb,
        tol: 0.0,
        inputs: inp,
    })
}

fn min_amp() -> Result<Observation> {
    let f = Fp::default();
    let g = GridGeometry::new(vec![vec![0.0, 1.0]])?;
    let a = GridModule::interval(f, g.clone(), &[0], &[Some(0)])?;
    let b = GridModule::from_fn(f, g.clone(), vec![1, 1], |_, _| Matrix::zeros(f, 1, 1))?;
    let c = GridModule::interval(f, g, &[1], &[None])?;
    let s = ses(a, b, c)?;
    let amp = |m: &GridModule| m.dim(&[0]).min(m.dim(&[1])) as f64;
    Ok(Observation {
        variant: "min(dim_1, dim_2): B <= A + C".into(),
        left: amp(&s.b),
        right: amp(&s.a) + amp(&s.c),
        tol: 0.0,
        inputs: inputs(&s),
    })
}

/// `M_k`: the direct sum of `k` copies of `[0, 1/k) x [0, inf)`.
pub fn ctau_disc_module(k: usize) -> Result<GridModule> {
    let f = Fp::default();
    let g = GridGeometry::new(vec![vec![0.0, 1.0 / k as f64], vec![0.0]])?;
    let one = GridModule::interval(f, g, &[0, 0], &[Some(0), None])?;
    let mut m = one.clone();
    for _ in 1..k {
        m = m.direct_sum(&one)?;
    }
    Ok(m)
}

fn ctau_disc(k: usize) -> Result<Observation> {
    let m = ctau_disc_module(k)?;
    let tau = Face::new(vec![0], 2)?;
    Ok(Observation {
        variant: format!("k={k}: c_tau(M_k) <= shift_diag(M_k)"),
        left: c_tau_rank(&m, &tau, &Content::Lebesgue)?,
        right: shift_amplitude(&m, &[1.0, 1.0], Norm::Linf)?,
        tol: 0.0,
        inputs: vec![m.to_json()],
    })
}

/// Rows of counterexample `id`; each must strictly violate `left <= right`.
pub(crate) fn evaluate(id: &str) -> Result<Vec<Observation>> {
    Ok(match id {
        "RANK-SUB" => vec![rank_sub()?],
        "SIGMA-MONO" => vec![sigma_mono()?],
        "CTAU-MONO" => vec![ctau_mono()?],
        "MIN-AMP" => vec![min_amp()?],
        "CTAU-DISC" => vec![ctau_disc(2)?, ctau_disc(4)?],
        other => return Err(crate::Error::UnknownId(other.to_string())),
    })
}
