//! Coordinate hill-climbing on the weight to lower the maximal cycle ratio
//! of a fixed transducer graph.
//!
//! Each round proposes `ω ± step` on every coordinate in order, evaluates
//! the proposals (in parallel), and keeps the first one in that order that
//! strictly lowers `η`. When a round keeps nothing the next, smaller step
//! is used. `ω(a)` is renormalized to 1 after every kept move.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::automaton::graph::TransducerGraph;
use crate::automaton::ratio::RatioGraph;
use crate::error::Error;
use crate::weight::{Weight, SCALE};
use crate::word::Gen;

/// Improvements below this are treated as bisection noise.
const NOISE: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct Schedule {
    pub steps: Vec<f64>,
    pub max_iterations: usize,
    pub coordinates: Vec<Gen>,
    /// Shuffle the proposal order of each round with this seed.
    pub seed: Option<u64>,
}

impl Default for Schedule {
    fn default() -> Schedule {
        Schedule { steps: vec![0.1, 0.05, 0.02, 0.01, 0.005], max_iterations: 2000, coordinates: vec![Gen::B, Gen::C, Gen::D], seed: None }
    }
}

impl Schedule {
    pub fn validate(&self) -> Result<(), Error> {
        if self.steps.is_empty() || self.steps.iter().any(|&s| !(s > 0.0) || !s.is_finite()) {
            return Err(Error::Contract(format!("step sizes must be positive, got {:?}", self.steps)));
        }
        if self.coordinates.is_empty() {
            return Err(Error::Contract("no coordinates to adjust".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceRow {
    pub iteration: usize,
    pub coordinate: char,
    pub step: f64,
    pub eta: f64,
    pub accepted: bool,
    /// The proposed weight, normalized.
    pub weight: Weight,
}

#[derive(Clone, Debug, Serialize)]
pub struct Optimized {
    pub weight: Weight,
    pub eta: f64,
    pub initial_eta: f64,
    pub trace: Vec<TraceRow>,
}

impl Optimized {
    pub fn kept(&self) -> impl Iterator<Item = &TraceRow> {
        self.trace.iter().filter(|r| r.accepted)
    }

    pub fn trace_csv(&self) -> String {
        let mut s = String::from("iteration,coordinate,step,eta,accepted\n");
        for r in &self.trace {
            s.push_str(&format!("{},{},{},{:.6},{}\n", r.iteration, r.coordinate, r.step, r.eta, r.accepted));
        }
        s
    }
}

struct Proposal {
    weight: Weight,
    coordinate: Gen,
    step: f64,
}

/// Hill-climb from `start`; special transitions are ignored.
pub fn optimize_weights(g: &TransducerGraph, start: &Weight, schedule: &Schedule) -> Result<Optimized, Error> {
    start.require_triangular()?;
    schedule.validate()?;
    let rg = RatioGraph::new(g, false)?;
    let mut memo: HashMap<Weight, f64> = HashMap::new();
    let mut current = start.normalized();
    let initial_eta = rg.max_ratio(start)?.ratio;
    let mut eta = rg.max_ratio(&current)?.ratio;
    memo.insert(current, eta);
    let mut rng = schedule.seed.map(ChaCha8Rng::seed_from_u64);
    let mut trace = Vec::new();
    let mut iteration = 0;

    'steps: for &step in &schedule.steps {
        let delta = (step * SCALE as f64).round() as i64;
        loop {
            let mut proposals: Vec<Proposal> = Vec::new();
            for &x in &schedule.coordinates {
                for sign in [1, -1] {
                    let u = current.units(x) + sign * delta;
                    if let Ok(w) = current.with_units(x, u) {
                        if w.is_triangular() {
                            proposals.push(Proposal { weight: w.normalized(), coordinate: x, step: sign as f64 * step });
                        }
                    }
                }
            }
            if let Some(r) = rng.as_mut() {
                proposals.shuffle(r);
            }
            let fresh: Vec<Weight> = proposals.iter().map(|p| p.weight).filter(|w| !memo.contains_key(w)).collect();
            let evaluated: Vec<(Weight, Result<f64, Error>)> = fresh.into_par_iter().map(|w| (w, rg.max_ratio(&w).map(|r| r.ratio))).collect();
            for (w, r) in evaluated {
                memo.insert(w, r?);
            }
            let mut kept = false;
            for p in &proposals {
                if iteration >= schedule.max_iterations {
                    break 'steps;
                }
                iteration += 1;
                let e = memo[&p.weight];
                let accepted = e < eta - NOISE;
                trace.push(TraceRow { iteration, coordinate: p.coordinate.to_char(), step: p.step, eta: e, accepted, weight: p.weight });
                if accepted {
                    current = p.weight;
                    eta = e;
                    kept = true;
                    break;
                }
            }
            if !kept {
                break;
            }
        }
    }
    Ok(Optimized { weight: current, eta, initial_eta, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::graph::{Kind, Label, Origin, Transition};
    use crate::word::{w, PairWord};

    /// One cycle reading `(da,da)` and emitting `(ad)^4`: output is twice the input
    /// letter for letter, so the ratio is 4 for every weight.
    fn balanced() -> TransducerGraph {
        let mut g = TransducerGraph::new(Weight::unit());
        let s = g.add_state(PairWord::default(), Kind::Input, Origin::Declared);
        g.states[s].initial = true;
        let o = g.add_state(PairWord(w("da"), w("da")), Kind::Output, Origin::Inline);
        g.add_transition(Transition { from: s, to: o, label: Label::Input(Gen::D, Gen::D), swap: false, special: false, line: None });
        g.add_transition(Transition { from: o, to: s, label: Label::Output(w("adadadad")), swap: false, special: false, line: None });
        g
    }

    #[test]
    fn weight_independent_ratio_keeps_nothing() {
        let g = balanced();
        let r = optimize_weights(&g, &Weight::unit(), &Schedule::default()).unwrap();
        assert_eq!(r.kept().count(), 0);
        assert!((r.eta - 4.0).abs() < 1e-9);
        assert_eq!(r.eta, r.initial_eta);
    }

    #[test]
    fn rejects_bad_schedule() {
        let s = Schedule { steps: vec![0.1, 0.0], ..Schedule::default() };
        assert!(s.validate().is_err());
    }

    #[test]
    fn csv_header() {
        let r = Optimized { weight: Weight::unit(), eta: 4.0, initial_eta: 4.0, trace: vec![] };
        assert_eq!(r.trace_csv(), "iteration,coordinate,step,eta,accepted\n");
    }
}
