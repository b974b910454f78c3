use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::barcode::fmt_real;
use crate::error::{Error, Result};
use crate::gridmod::GridGeometry;

/// Norm used to scale the shift direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Norm {
    L1,
    L2,
    Linf,
}

impl Norm {
    pub fn of(self, v: &[f64]) -> f64 {
        match self {
            Norm::L1 => v.iter().map(|x| x.abs()).sum(),
            Norm::L2 => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
            Norm::Linf => v.iter().fold(0.0, |m, x| m.max(x.abs())),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Norm::L1 => "l1",
            Norm::L2 => "l2",
            Norm::Linf => "linf",
        }
    }
}

impl FromStr for Norm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(Norm::L1),
            "l2" => Ok(Norm::L2),
            "linf" => Ok(Norm::Linf),
            _ => Err(Error::Spec(format!("unknown norm `{s}`"))),
        }
    }
}

/// Additive weight on grid cells.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Content {
    /// Product of side lengths; unbounded cells weigh `inf`.
    Lebesgue,
    /// One per bounded cell, `inf` per unbounded cell.
    Counting,
    /// Explicit weight per vertex (flat order) of one fixed geometry.
    Custom(Vec<f64>),
}

impl Content {
    pub fn weight(&self, geo: &GridGeometry, u: &[usize]) -> Result<f64> {
        match self {
            Content::Lebesgue => Ok(geo.volume(u)),
            Content::Counting => {
                let bounded = u.iter().enumerate().all(|(a, &i)| i < geo.last(a));
                Ok(if bounded { 1.0 } else { f64::INFINITY })
            }
            Content::Custom(w) => {
                if w.len() != geo.num_vertices() {
                    return Err(Error::Shape(format!(
                        "custom content has {} weights for {} cells",
                        w.len(),
                        geo.num_vertices()
                    )));
                }
                let x = w[geo.index(u)];
                if x.is_nan() || x < 0.0 {
                    return Err(Error::Invalid(format!("negative content weight {x}")));
                }
                Ok(x)
            }
        }
    }

    /// Integer valued on integer breakpoints, hence exact in floating point.
    pub fn is_exact(&self) -> bool {
        !matches!(self, Content::Custom(_))
    }
}

impl FromStr for Content {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lebesgue" => Ok(Content::Lebesgue),
            "counting" => Ok(Content::Counting),
            _ => Err(Error::Spec(format!("unknown content `{s}`"))),
        }
    }
}

/// Which amplitude to evaluate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum AmplitudeSpec {
    /// `rho_p`, `p` in `[1, inf]`.
    PNorm(f64),
    TotPers,
    /// Sum of the `k` longest bars.
    TropLen(usize),
    Magnitude,
    Support,
    ShiftAmp { v: Vec<f64>, norm: Norm },
    MaxDim,
    /// `p` in `[1, inf)`.
    LpHilbert { p: f64, content: Content },
}

impl AmplitudeSpec {
    pub fn hilbert(p: f64) -> Self {
        AmplitudeSpec::LpHilbert { p, content: Content::Lebesgue }
    }

    pub fn shift(v: Vec<f64>, norm: Norm) -> Self {
        AmplitudeSpec::ShiftAmp { v, norm }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Spec(format!("{self}: {msg}")));
        match self {
            AmplitudeSpec::PNorm(p) if p.is_nan() || *p < 1.0 => bad("p must lie in [1, inf]"),
            AmplitudeSpec::TropLen(0) => bad("k must be positive"),
            AmplitudeSpec::ShiftAmp { v, .. }
                if v.is_empty()
                    || v.iter().any(|x| !x.is_finite() || *x < 0.0)
                    || v.iter().all(|&x| x == 0.0) =>
            {
                bad("direction must be nonnegative, finite and nonzero")
            }
            AmplitudeSpec::LpHilbert { p, .. } if !p.is_finite() || *p < 1.0 => bad("p must lie in [1, inf)"),
            _ => Ok(()),
        }
    }

    /// Values are integers (or infinite) on integer breakpoints, so every
    /// comparison between them is exact.
    pub fn is_exact(&self) -> bool {
        match self {
            AmplitudeSpec::PNorm(p) => *p == 1.0 || p.is_infinite(),
            AmplitudeSpec::Magnitude => false,
            AmplitudeSpec::ShiftAmp { v, norm } => {
                *norm != Norm::L2 && v.iter().all(|&x| x == 0.0 || (x.fract() == 0.0 && (x as u64).is_power_of_two()))
            }
            AmplitudeSpec::LpHilbert { p, content } => *p == 1.0 && content.is_exact(),
            _ => true,
        }
    }

    /// Tolerance used when comparing values of this amplitude.
    pub fn tolerance(&self) -> f64 {
        if self.is_exact() {
            0.0
        } else {
            1e-9
        }
    }

    /// True for specs known to be additive on short exact sequences.
    pub fn is_additive(&self) -> bool {
        matches!(self, AmplitudeSpec::TotPers | AmplitudeSpec::Magnitude)
            || matches!(self, AmplitudeSpec::PNorm(p) if *p == 1.0)
            || matches!(self, AmplitudeSpec::LpHilbert { p, .. } if *p == 1.0)
    }

    /// Specs that need a barcode (one-parameter input).
    pub fn needs_barcode(&self) -> bool {
        matches!(
            self,
            AmplitudeSpec::PNorm(_) | AmplitudeSpec::TotPers | AmplitudeSpec::TropLen(_) | AmplitudeSpec::Magnitude
        )
    }
}

impl fmt::Display for AmplitudeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmplitudeSpec::PNorm(p) if p.is_infinite() => write!(f, "pinf"),
            AmplitudeSpec::PNorm(p) => write!(f, "p{}", fmt_real(*p)),
            AmplitudeSpec::TotPers => write!(f, "totpers"),
            AmplitudeSpec::TropLen(k) => write!(f, "trop:{k}"),
            AmplitudeSpec::Magnitude => write!(f, "magnitude"),
            AmplitudeSpec::Support => write!(f, "support"),
            AmplitudeSpec::ShiftAmp { v, norm } => {
                let vs: Vec<String> = v.iter().map(|x| fmt_real(*x)).collect();
                write!(f, "shift:{}:{}", vs.join(","), norm.name())
            }
            AmplitudeSpec::MaxDim => write!(f, "maxdim"),
            AmplitudeSpec::LpHilbert { p, content } => {
                write!(f, "hilbert:{}", fmt_real(*p))?;
                match content {
                    Content::Lebesgue => Ok(()),
                    Content::Counting => write!(f, ":counting"),
                    Content::Custom(_) => write!(f, ":custom"),
                }
            }
        }
    }
}

fn num(tok: &str, whole: &str) -> Result<f64> {
    match tok {
        "inf" => Ok(f64::INFINITY),
        _ => tok.parse::<f64>().map_err(|_| Error::Spec(whole.to_string())),
    }
}

impl FromStr for AmplitudeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim().to_ascii_lowercase();
        let parts: Vec<&str> = text.split(':').collect();
        let err = || Error::Spec(s.to_string());
        let spec = match parts.as_slice() {
            ["totpers"] => AmplitudeSpec::TotPers,
            ["magnitude"] => AmplitudeSpec::Magnitude,
            ["support"] => AmplitudeSpec::Support,
            ["maxdim"] => AmplitudeSpec::MaxDim,
            ["trop", k] => AmplitudeSpec::TropLen(k.parse().map_err(|_| err())?),
            ["shift", v] | ["shift", v, _] => {
                let norm = match parts.get(2) {
                    Some(n) => n.parse()?,
                    None => Norm::Linf,
                };
                let v = v.split(',').map(|x| num(x.trim(), s)).collect::<Result<Vec<_>>>()?;
                AmplitudeSpec::ShiftAmp { v, norm }
            }
            ["hilbert", p] => AmplitudeSpec::LpHilbert { p: num(p, s)?, content: Content::Lebesgue },
            ["hilbert", p, c] => AmplitudeSpec::LpHilbert { p: num(p, s)?, content: c.parse()? },
            [p] if p.starts_with('p') => AmplitudeSpec::PNorm(num(&p[1..], s)?),
            _ => return Err(err()),
        };
        spec.validate()?;
        Ok(spec)
    }
}
