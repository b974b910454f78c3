use crate::error::Result;
use crate::gridmod::{local_cohomology, quotient_restriction, Face, GridModule};

use super::eval::lp_integral;
use super::spec::Content;

/// `c_tau(M) = || H^0_tau(M) / tau^c ||_1` against `content`, where the
/// content lives on the grid of the remaining `tau` axes.
pub fn c_tau_rank(m: &GridModule, tau: &Face, content: &Content) -> Result<f64> {
    let (h, _) = local_cohomology(m, tau)?;
    let rest = tau.complement(m.n());
    let reduced = if rest.is_empty() {
        h
    } else {
        quotient_restriction(&h, &Face::new(rest, m.n())?)?
    };
    lp_integral(&reduced.hilbert(), 1.0, content)
}
