//! One-parameter barcodes: finite multisets of half-open intervals `[b, d)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A half-open interval `[birth, death)`; `death` may be `+inf`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bar {
    pub birth: f64,
    pub death: f64,
}

impl Bar {
    pub fn new(birth: f64, death: f64) -> Result<Self> {
        if birth.is_nan() || death.is_nan() {
            return Err(Error::Invalid("bar endpoints must not be NaN".into()));
        }
        if birth > death || birth == f64::INFINITY {
            return Err(Error::Invalid(format!("bar [{birth}, {death}) has birth > death")));
        }
        Ok(Bar { birth, death })
    }

    /// Shorthand for tests and literals; panics on invalid input.
    pub fn of(birth: f64, death: f64) -> Self {
        Bar::new(birth, death).expect("invalid bar")
    }

    pub fn length(&self) -> f64 {
        if self.death == f64::INFINITY {
            f64::INFINITY
        } else {
            self.death - self.birth
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.death == f64::INFINITY
    }

    pub fn is_empty(&self) -> bool {
        self.birth == self.death
    }

    pub fn contains(&self, t: f64) -> bool {
        self.birth <= t && t < self.death
    }
}

impl fmt::Display for Bar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", fmt_real(self.birth), fmt_real(self.death))
    }
}

/// A finite multiset of bars. Order carries no meaning.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Barcode {
    pub bars: Vec<Bar>,
}

impl Barcode {
    pub fn new(bars: Vec<Bar>) -> Self {
        Barcode { bars }
    }

    pub fn empty() -> Self {
        Barcode::default()
    }

    /// Builds a barcode from `(birth, death)` pairs; panics on invalid bars.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Self {
        Barcode::new(pairs.iter().map(|&(b, d)| Bar::of(b, d)).collect())
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Bar> {
        self.bars.iter()
    }

    /// Lengths in non-increasing order.
    pub fn sorted_lengths(&self) -> Vec<f64> {
        let mut l: Vec<f64> = self.bars.iter().map(Bar::length).collect();
        l.sort_by(|a, b| b.total_cmp(a));
        l
    }

    /// Number of bars alive at `t`.
    pub fn hilbert_function(&self, t: f64) -> usize {
        self.bars.iter().filter(|b| b.contains(t)).count()
    }

    /// Multiset union.
    pub fn direct_sum(&self, other: &Barcode) -> Barcode {
        let mut bars = self.bars.clone();
        bars.extend_from_slice(&other.bars);
        Barcode { bars }
    }

    /// Bars sorted by (birth, death), for multiset comparison.
    pub fn canonical(&self) -> Barcode {
        let mut bars = self.bars.clone();
        bars.sort_by(|a, b| a.birth.total_cmp(&b.birth).then(a.death.total_cmp(&b.death)));
        Barcode { bars }
    }

    /// Drops zero-length bars.
    pub fn without_empty(&self) -> Barcode {
        Barcode {
            bars: self.bars.iter().copied().filter(|b| !b.is_empty()).collect(),
        }
    }

    pub fn infinite_count(&self) -> usize {
        self.bars.iter().filter(|b| b.is_infinite()).count()
    }

    /// Parses the tab/whitespace separated text format.
    pub fn parse(text: &str) -> Result<Barcode> {
        let mut bars = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(err(format!("expected `birth<TAB>death`, got {} fields", fields.len())));
            }
            let b = parse_real(fields[0]).map_err(&err)?;
            let d = parse_real(fields[1]).map_err(&err)?;
            let bar = Bar::new(b, d).map_err(|e| err(e.to_string()))?;
            bars.push(bar);
        }
        Ok(Barcode { bars })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for b in &self.bars {
            s.push_str(&fmt_real(b.birth));
            s.push('\t');
            s.push_str(&fmt_real(b.death));
            s.push('\n');
        }
        s
    }
}

impl FromStr for Barcode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Barcode::parse(s)
    }
}

impl FromIterator<Bar> for Barcode {
    fn from_iter<I: IntoIterator<Item = Bar>>(iter: I) -> Self {
        Barcode { bars: iter.into_iter().collect() }
    }
}

fn parse_real(tok: &str) -> std::result::Result<f64, String> {
    match tok.to_ascii_lowercase().as_str() {
        "inf" | "+inf" | "infinity" | "+infinity" => Ok(f64::INFINITY),
        "-inf" | "-infinity" => Ok(f64::NEG_INFINITY),
        _ => tok
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("cannot parse `{tok}` as a number")),
    }
}

/// Formats a real with 12 significant digits, trailing zeros trimmed,
/// infinities as `inf` / `-inf`.
pub fn fmt_real(x: f64) -> String {
    if x == f64::INFINITY {
        return "inf".into();
    }
    if x == f64::NEG_INFINITY {
        return "-inf".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let s = format!("{:.11e}", x);
    let (mant, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..15).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, x);
        trim_zeros(&fixed)
    } else {
        format!("{}e{}", trim_zeros(mant), exp)
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths() {
        assert_eq!(Bar::of(0.0, 3.0).length(), 3.0);
        assert_eq!(Bar::of(2.0, 2.0).length(), 0.0);
        assert_eq!(Bar::of(1.0, f64::INFINITY).length(), f64::INFINITY);
        assert!(Bar::new(2.0, 1.0).is_err());
    }

    #[test]
    fn sorted() {
        let bc = Barcode::from_pairs(&[(0.0, 3.0), (0.0, 1.0), (0.0, 5.0)]);
        assert_eq!(bc.sorted_lengths(), vec![5.0, 3.0, 1.0]);
        assert!(Barcode::empty().sorted_lengths().is_empty());
        let bc = Barcode::from_pairs(&[(0.0, f64::INFINITY), (0.0, 1.0)]);
        assert_eq!(bc.sorted_lengths(), vec![f64::INFINITY, 1.0]);
    }

    #[test]
    fn hilbert() {
        let bc = Barcode::from_pairs(&[(0.0, 2.0)]);
        assert_eq!(bc.hilbert_function(1.0), 1);
        assert_eq!(bc.hilbert_function(2.0), 0);
        let split = Barcode::from_pairs(&[(0.0, 1.0), (1.0, 2.0)]);
        for k in -4..12 {
            let t = k as f64 * 0.25;
            assert_eq!(split.hilbert_function(t), bc.hilbert_function(t));
        }
    }

    #[test]
    fn parse_format() {
        let text = "# comment\n0\t3\n  1   inf \n\n2.5\t2.5\n";
        let bc = Barcode::parse(text).unwrap();
        assert_eq!(bc, Barcode::from_pairs(&[(0.0, 3.0), (1.0, f64::INFINITY), (2.5, 2.5)]));
        assert_eq!(Barcode::parse(&bc.to_text()).unwrap(), bc);
        match Barcode::parse("0 1\n3 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(Barcode::parse("4 1"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn formatting() {
        assert_eq!(fmt_real(1.5), "1.5");
        assert_eq!(fmt_real(4.0), "4");
        assert_eq!(fmt_real(f64::INFINITY), "inf");
        assert_eq!(fmt_real(2f64.sqrt()), "1.41421356237");
        assert_eq!(fmt_real(1e20), "1e20");
        assert_eq!(fmt_real(-0.125), "-0.125");
        assert_eq!(fmt_real(1.0 / 3.0), "0.333333333333");
    }
}
