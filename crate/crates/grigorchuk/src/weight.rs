//! Generator weights, stored as integers in units of 10^-4 so that
//! priority queues and comparisons never see floating-point ties.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::word::{Gen, Word};

/// Fixed-point scale: one weight unit is `1 / SCALE`.
pub const SCALE: i64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    units: [i64; 4],
}

impl Weight {
    /// Build from scaled integers (units of 10^-4). All must be positive.
    pub fn from_units(a: i64, b: i64, c: i64, d: i64) -> Result<Weight, Error> {
        let units = [a, b, c, d];
        if units.iter().any(|&u| u <= 0) {
            return Err(Error::Contract(format!("weights must be positive, got {units:?}")));
        }
        Ok(Weight { units })
    }

    /// Build from decimals, rounded to four fraction digits.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Weight, Error> {
        let s = |x: f64| (x * SCALE as f64).round() as i64;
        Weight::from_units(s(a), s(b), s(c), s(d))
    }

    pub fn unit() -> Weight {
        Weight { units: [SCALE; 4] }
    }

    /// The final weights of the construction: a=1, b=3.33, c=2.8, d=1.06.
    pub fn tuned() -> Weight {
        Weight { units: [10_000, 33_300, 28_000, 10_600] }
    }

    pub fn units(&self, g: Gen) -> i64 {
        self.units[g.index()]
    }

    pub fn all_units(&self) -> [i64; 4] {
        self.units
    }

    pub fn get(&self, g: Gen) -> f64 {
        self.units(g) as f64 / SCALE as f64
    }

    pub fn with_units(&self, g: Gen, value: i64) -> Result<Weight, Error> {
        let mut u = self.units;
        u[g.index()] = value;
        Weight::from_units(u[0], u[1], u[2], u[3])
    }

    /// `ω(x) ≤ ω(y) + ω(z)` for every ordering of `{b,c,d}`.
    pub fn is_triangular(&self) -> bool {
        let [_, b, c, d] = self.units;
        b <= c + d && c <= b + d && d <= b + c
    }

    pub fn require_triangular(&self) -> Result<(), Error> {
        if self.is_triangular() {
            Ok(())
        } else {
            Err(Error::Contract(format!("weight {self} is not triangular")))
        }
    }

    /// Weight of the word itself (sum over letters), in scaled units.
    pub fn word_units(&self, w: &Word) -> i64 {
        w.letters().iter().map(|&g| self.units(g)).sum()
    }

    /// Weight of the word itself (sum over letters).
    pub fn weight_of(&self, w: &Word) -> f64 {
        to_real(self.word_units(w))
    }

    pub fn max_units(&self) -> i64 {
        *self.units.iter().max().unwrap()
    }

    /// Rescale so that `ω(a) = 1`.
    pub fn normalized(&self) -> Weight {
        let a = self.units[0] as i128;
        let f = |u: i64| ((u as i128 * SCALE as i128 + a / 2) / a) as i64;
        Weight { units: [SCALE, f(self.units[1]), f(self.units[2]), f(self.units[3])] }
    }
}

pub fn to_real(units: i64) -> f64 {
    units as f64 / SCALE as f64
}

/// Weight of a word as a real number.
pub fn weight_of(w: &Word, omega: &Weight) -> f64 {
    omega.weight_of(w)
}

fn fmt_units(u: i64) -> String {
    let s = format!("{}.{:04}", u / SCALE, u % SCALE);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a={} b={} c={} d={}",
            fmt_units(self.units[0]),
            fmt_units(self.units[1]),
            fmt_units(self.units[2]),
            fmt_units(self.units[3])
        )
    }
}

fn parse_decimal(s: &str) -> Result<i64, Error> {
    let bad = || Error::Parse(format!("bad weight value {s:?}"));
    let (int, frac) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if frac.len() > 4 || !int.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let i: i64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
    let mut f: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    for _ in frac.len()..4 {
        f *= 10;
    }
    Ok(i * SCALE + f)
}

impl FromStr for Weight {
    type Err = Error;

    /// Parse `a=1 b=3.33 c=2.8 d=1.06`; keys may come in any order, all four are required.
    fn from_str(s: &str) -> Result<Weight, Error> {
        let mut units = [0i64; 4];
        let mut seen = [false; 4];
        for tok in s.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {tok:?}")))?;
            let g = match k {
                "a" => Gen::A,
                "b" => Gen::B,
                "c" => Gen::C,
                "d" => Gen::D,
                _ => return Err(Error::Parse(format!("unknown weight key {k:?}"))),
            };
            units[g.index()] = parse_decimal(v)?;
            seen[g.index()] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Parse(format!("weights need all of a,b,c,d: {s:?}")));
        }
        Weight::from_units(units[0], units[1], units[2], units[3])
    }
}

impl serde::Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    #[test]
    fn tuned_weights_round_trip() {
        let p: Weight = "a=1 b=3.33 c=2.8 d=1.06".parse().unwrap();
        assert_eq!(p, Weight::tuned());
        assert_eq!(p.to_string(), "a=1 b=3.33 c=2.8 d=1.06");
        assert!(p.is_triangular());
    }

    #[test]
    fn word_weights() {
        let p = Weight::tuned();
        assert_eq!(p.word_units(&w("cacacaca")), 152_000);
        assert_eq!(p.word_units(&w("dada")), 41_200);
        assert_eq!(p.weight_of(&Word::empty()), 0.0);
    }

    #[test]
    fn triangularity() {
        assert!(!Weight::new(1.0, 3.0, 1.0, 1.0).unwrap().is_triangular());
        assert!(Weight::unit().is_triangular());
        assert!(Weight::new(1.0, 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("a=1 b=2".parse::<Weight>().is_err());
        assert!("a=1 b=2 c=x d=1".parse::<Weight>().is_err());
        assert!("a=1 b=2.123456 c=1 d=1".parse::<Weight>().is_err());
    }

    #[test]
    fn normalization() {
        let w2 = Weight::new(2.0, 6.66, 5.6, 2.12).unwrap().normalized();
        assert_eq!(w2, Weight::tuned());
    }
}
