use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gridmod::{common_refinement, GridModule, ShortExactSequence};

use super::eval::{eval_grid, lp_integral};
use super::spec::{AmplitudeSpec, Content};

/// Outcome of checking the amplitude axioms on one short exact sequence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub spec: String,
    /// `(alpha(A), alpha(B), alpha(C))`.
    pub values: (f64, f64, f64),
    /// `alpha(A) <= alpha(B)`.
    pub monotonicity_sub: bool,
    /// `alpha(C) <= alpha(B)`.
    pub monotonicity_quot: bool,
    /// `alpha(B) <= alpha(A) + alpha(C)`.
    pub subadditivity: bool,
    /// `alpha(B) = alpha(A) + alpha(C)`.
    pub additivity: bool,
    pub witnesses: Vec<String>,
}

impl AxiomReport {
    /// Monotone and subadditive.
    pub fn is_amplitude_sample(&self) -> bool {
        self.monotonicity_sub && self.monotonicity_quot && self.subadditivity
    }

    /// Subadditive but not additive.
    pub fn is_strict_witness(&self) -> bool {
        self.subadditivity && !self.additivity
    }
}

/// `a <= b` up to a relative tolerance; infinities compare exactly.
pub fn le_tol(a: f64, b: f64, tol: f64) -> bool {
    if a <= b {
        return true;
    }
    if !a.is_finite() || !b.is_finite() {
        return false;
    }
    a - b <= tol * a.abs().max(b.abs()).max(1.0)
}

pub fn eq_tol(a: f64, b: f64, tol: f64) -> bool {
    if a == b {
        return true;
    }
    le_tol(a, b, tol) && le_tol(b, a, tol)
}

pub fn check_axioms(spec: &AmplitudeSpec, ses: &ShortExactSequence) -> Result<AxiomReport> {
    let a = eval_grid(spec, &ses.a)?;
    let b = eval_grid(spec, &ses.b)?;
    let c = eval_grid(spec, &ses.c)?;
    let tol = spec.tolerance();
    let sum = a + c;
    let report = AxiomReport {
        spec: spec.to_string(),
        values: (a, b, c),
        monotonicity_sub: le_tol(a, b, tol),
        monotonicity_quot: le_tol(c, b, tol),
        subadditivity: le_tol(b, sum, tol),
        additivity: eq_tol(b, sum, tol),
        witnesses: Vec::new(),
    };
    let mut witnesses = Vec::new();
    if !report.monotonicity_sub {
        witnesses.push(format!("alpha(A) = {a} > alpha(B) = {b}"));
    }
    if !report.monotonicity_quot {
        witnesses.push(format!("alpha(C) = {c} > alpha(B) = {b}"));
    }
    if !report.subadditivity {
        witnesses.push(format!("alpha(B) = {b} > alpha(A) + alpha(C) = {sum}"));
    }
    if !report.additivity {
        witnesses.push(format!("alpha(B) = {b} != alpha(A) + alpha(C) = {sum}"));
    }
    Ok(AxiomReport { witnesses, ..report })
}

/// Whether `spec` agrees with integrating the Hilbert function against
/// `content` on `m` (relative tolerance 1e-9).
pub fn integral_representation_check(spec: &AmplitudeSpec, content: &Content, m: &GridModule) -> Result<bool> {
    let value = eval_grid(spec, m)?;
    let integral = lp_integral(&m.hilbert(), 1.0, content)?;
    Ok(eq_tol(value, integral, 1e-9))
}

/// Whether `spec` takes the same value on two modules with equal Hilbert
/// functions. Errors when the Hilbert functions differ.
pub fn hilbert_invariance_check(spec: &AmplitudeSpec, m: &GridModule, n: &GridModule) -> Result<bool> {
    let (rm, rn) = common_refinement(m, n)?;
    if rm.dims() != rn.dims() {
        return Err(Error::Invalid("Hilbert functions differ".into()));
    }
    Ok(eval_grid(spec, m)? == eval_grid(spec, n)?)
}
