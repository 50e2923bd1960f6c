//! Weighted growth `γω(n) = #{g : ∂ω(g) ≤ n}`, its restriction to the
//! subgroups `H` and `B`, the subgroup comparison for `H < G`, and the
//! lower-bound arithmetic that turns a cycle ratio `η < 4` into growth
//! at least `exp(n^α)`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use serde::Serialize;

use crate::error::Error;
use crate::group::{act, in_b, in_h, words_equal};
use crate::minform::{Entry, Explorer};
use crate::weight::{to_real, Weight};
use crate::word::{BinaryString, Gen, Word};

/// One entry per element of weight at most `radius` (in units).
pub fn ball(omega: &Weight, radius: i64, budget: usize) -> Result<Vec<Entry>, Error> {
    omega.require_triangular()?;
    if radius < 0 {
        return Err(Error::Contract("negative radius".into()));
    }
    let mut ex = Explorer::with_budget(*omega, budget);
    ex.ensure_radius(radius)?;
    Ok(ex.entries().to_vec())
}

pub fn gamma(omega: &Weight, radius: i64, budget: usize) -> Result<usize, Error> {
    Ok(ball(omega, radius, budget)?.len())
}

/// Subgroup selector for restricted growth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Subgroup {
    G,
    H,
    B,
}

impl Subgroup {
    pub fn contains(self, w: &Word) -> bool {
        match self {
            Subgroup::G => true,
            Subgroup::H => in_h(w),
            Subgroup::B => in_b(w),
        }
    }
}

pub fn gamma_restricted(omega: &Weight, radius: i64, member: Subgroup, budget: usize) -> Result<usize, Error> {
    Ok(ball(omega, radius, budget)?.iter().filter(|e| member.contains(&e.word)).count())
}

/// `(radius, count)` pairs: the count of elements of weight at most each radius.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthTable {
    pub weight: String,
    pub entries: Vec<(i64, usize)>,
}

impl GrowthTable {
    /// Table sampled at the given radii (units).
    pub fn at_radii(omega: &Weight, radii: &[i64], member: Subgroup, budget: usize) -> Result<GrowthTable, Error> {
        let max = radii.iter().copied().max().unwrap_or(0);
        let entries = ball(omega, max, budget)?;
        let mut weights: Vec<i64> = entries.iter().filter(|e| member.contains(&e.word)).map(|e| e.units).collect();
        weights.sort_unstable();
        let rows = radii.iter().map(|&r| (r, weights.partition_point(|&u| u <= r))).collect();
        Ok(GrowthTable { weight: omega.to_string(), entries: rows })
    }

    pub fn counts(&self) -> Vec<usize> {
        self.entries.iter().map(|&(_, c)| c).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("radius,count\n");
        for &(r, c) in &self.entries {
            s.push_str(&format!("{},{}\n", to_real(r), c));
        }
        s
    }
}

/// Second enumeration: elements are told apart by their action on all
/// strings of a fixed depth, and words with equal signatures are
/// compared exactly with the word problem.
pub fn gamma_by_signature(omega: &Weight, radii: &[i64], depth: usize) -> Vec<usize> {
    let max = radii.iter().copied().max().unwrap_or(0);
    let strings: Vec<BinaryString> = BinaryString::all_of_len(depth).collect();
    let signature = |w: &Word| -> Vec<u64> {
        let mut sig = vec![0u64; (strings.len() * depth).div_ceil(64)];
        let mut k = 0;
        for s in &strings {
            for b in act(w, s).0 {
                if b {
                    sig[k / 64] |= 1 << (k % 64);
                }
                k += 1;
            }
        }
        sig
    };
    let mut classes: HashMap<Vec<u64>, Vec<Word>> = HashMap::new();
    let mut found: Vec<i64> = Vec::new();
    let mut heap: BinaryHeap<Reverse<(i64, Word)>> = BinaryHeap::new();
    heap.push(Reverse((0, Word::empty())));
    while let Some(Reverse((units, word))) = heap.pop() {
        if units > max {
            break;
        }
        let bucket = classes.entry(signature(&word)).or_default();
        if bucket.iter().any(|v| words_equal(v, &word)) {
            continue;
        }
        bucket.push(word.clone());
        found.push(units);
        let last = word.letters().last().copied();
        for g in Gen::ALL {
            if Some(g) == last {
                continue;
            }
            let mut next = word.clone();
            next.push(g);
            heap.push(Reverse((units + omega.units(g), next)));
        }
    }
    radii.iter().map(|&r| found.iter().filter(|&&u| u <= r).count()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SbgpRow {
    pub radius: f64,
    pub lower: usize,
    pub middle: usize,
    pub upper: usize,
    pub holds: bool,
}

/// `γω(n − K) ≤ 2 γ^H_ω(n) ≤ γω(n + K)` with `K = ω(a)`, at each sampled radius.
/// Radii below zero are clamped to zero.
pub fn check_sbgp(omega: &Weight, radii: &[i64], budget: usize) -> Result<Vec<SbgpRow>, Error> {
    let k = omega.units(Gen::A);
    let max = radii.iter().copied().max().unwrap_or(0) + k;
    let entries = ball(omega, max, budget)?;
    let count = |r: i64, sub: Subgroup| entries.iter().filter(|e| e.units <= r && sub.contains(&e.word)).count();
    Ok(radii
        .iter()
        .map(|&n| {
            let lower = count((n - k).max(0), Subgroup::G);
            let middle = 2 * count(n, Subgroup::H);
            let upper = count(n + k, Subgroup::G);
            SbgpRow { radius: to_real(n), lower, middle, upper, holds: lower <= middle && middle <= upper }
        })
        .collect())
}

/// `α = log 2 / log η`.
pub fn alpha_of_eta(eta: f64) -> Result<f64, Error> {
    if !(eta > 1.0) {
        return Err(Error::Contract(format!("alpha needs eta > 1, got {eta}")));
    }
    Ok(2f64.ln() / eta.ln())
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundParams {
    pub eta: f64,
    pub k: f64,
    pub l: f64,
    pub gamma_l: u64,
}

impl BoundParams {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.eta > 1.0) || self.k < 0.0 || !(self.l > 0.0) || self.gamma_l <= 4 {
            return Err(Error::Contract(format!("bad bound parameters {self:?}")));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct LowerBound {
    pub m: u32,
    pub x: f64,
    pub log_gamma: f64,
}

/// Certified `log γω(n) ≥ 2^m log(γ(L)/4) + log 4`, with `m` maximal such that
/// `x = η^{-m}(n − K(η^m − 1)/(η − 1)) ≥ L`.
pub fn lower_bound_log_gamma(n: f64, p: &BoundParams) -> Result<LowerBound, Error> {
    p.validate()?;
    let x_of = |m: u32| {
        let em = p.eta.powi(m as i32);
        (n - p.k * (em - 1.0) / (p.eta - 1.0)) / em
    };
    // relative slack so that n = ηL + K lands on m = 1 despite rounding
    let fits = |m: u32| x_of(m) >= p.l * (1.0 - 1e-12);
    if !fits(1) {
        return Err(Error::NoBound(format!("n = {n} is below the first iteration")));
    }
    let mut m = 1;
    while m < 1000 && fits(m + 1) {
        m += 1;
    }
    let log_gamma = 2f64.powi(m as i32) * (p.gamma_l as f64 / 4.0).ln() + 4f64.ln();
    Ok(LowerBound { m, x: x_of(m), log_gamma })
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUDGET: usize = 1_000_000;

    #[test]
    fn small_balls() {
        let unit = Weight::unit();
        assert_eq!(gamma(&unit, 0, BUDGET).unwrap(), 1);
        assert_eq!(gamma(&unit, 10_000, BUDGET).unwrap(), 5);
        assert_eq!(gamma_restricted(&unit, 10_000, Subgroup::H, BUDGET).unwrap(), 4);
    }

    #[test]
    fn unit_growth_values() {
        let t = GrowthTable::at_radii(&Weight::unit(), &(0..=8).map(|n| n * 10_000).collect::<Vec<_>>(), Subgroup::G, BUDGET).unwrap();
        assert_eq!(t.counts(), vec![1, 5, 11, 23, 40, 68, 108, 176, 271]);
        assert!(t.to_csv().starts_with("radius,count\n0,1\n1,5\n"));
    }

    #[test]
    fn signature_backend_agrees_on_small_radii() {
        let radii: Vec<i64> = (0..=5).map(|n| n * 10_000).collect();
        assert_eq!(gamma_by_signature(&Weight::unit(), &radii, 6), vec![1, 5, 11, 23, 40, 68]);
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(ball(&Weight::unit(), 200_000, 100), Err(Error::Budget(_))));
    }

    #[test]
    fn sbgp_at_zero() {
        let rows = check_sbgp(&Weight::unit(), &[0], BUDGET).unwrap();
        assert_eq!((rows[0].lower, rows[0].middle, rows[0].upper), (1, 2, 5));
        assert!(rows[0].holds);
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha_of_eta(4.0).unwrap(), 0.5);
        assert_eq!(alpha_of_eta(2.0).unwrap(), 1.0);
        assert!((alpha_of_eta(3.83414).unwrap() - 0.5157).abs() < 1e-4);
        assert!(alpha_of_eta(1.0).is_err());
    }

    #[test]
    fn one_iteration_bound() {
        let p = BoundParams { eta: 4.0, k: 3.0, l: 5.0, gamma_l: 68 };
        let b = lower_bound_log_gamma(4.0 * 5.0 + 3.0, &p).unwrap();
        assert_eq!(b.m, 1);
        assert!((b.log_gamma - (2.0 * 17f64.ln() + 4f64.ln())).abs() < 1e-12);
        assert!(lower_bound_log_gamma(10.0, &p).is_err());
    }
}
