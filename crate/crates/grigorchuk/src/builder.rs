//! Growing a transducer from `(λ,λ)` by resolving hanging edges.
//!
//! Each new state is typed once: if some `v ∈ mf ∩ H` of length at most
//! `N` gives an output transition of high enough quality the state becomes
//! an output state, otherwise it becomes an input state with its nine
//! successors. Special transitions are attached at the end.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::automaton::graph::{input_labels, Kind, Label, Origin, StateId, TransducerGraph, Transition};
use crate::automaton::repair::attach_specials;
use crate::element::{element_of, mul, Element};
use crate::error::Error;
use crate::group::{in_h, psi};
use crate::minform::{enumerate_minimal_forms, shared_explorer, Explorer};
use crate::weight::{to_real, Weight};
use crate::word::{Gen, PairWord, Word};

/// How the output label is picked among those passing the threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CandidateOrder {
    /// Highest quality, then lighter, then canonical word order.
    BestQuality,
    /// The first passing candidate in (weight, canonical word) order.
    Lightest,
}

/// When a candidate is good enough to make its state an output state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Threshold {
    /// `q ≥ 1/η′`.
    Literal,
    /// `q ≥ 2/η′`, which bounds every cycle ratio by `η′`.
    CycleBound,
}

#[derive(Clone, Debug, Serialize)]
pub struct BuildParams {
    pub weight: Weight,
    pub delta: f64,
    pub eta_prime: f64,
    pub max_len: usize,
    pub special_len: usize,
    pub order: CandidateOrder,
    pub threshold: Threshold,
    pub state_budget: usize,
}

impl BuildParams {
    pub fn new(weight: Weight) -> BuildParams {
        BuildParams {
            weight,
            delta: 0.01,
            eta_prime: 4.0,
            max_len: 20,
            special_len: 8,
            order: CandidateOrder::BestQuality,
            threshold: Threshold::CycleBound,
            state_budget: 5000,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        self.weight.require_triangular()?;
        if !(self.delta > 0.0) || !(self.eta_prime > 2.0 && self.eta_prime <= 4.0) || self.max_len < 2 {
            return Err(Error::Contract(format!(
                "need delta > 0, eta' in (2,4] and N >= 2; got delta={}, eta'={}, N={}",
                self.delta, self.eta_prime, self.max_len
            )));
        }
        Ok(())
    }

    fn min_quality(&self) -> f64 {
        match self.threshold {
            Threshold::Literal => 1.0 / self.eta_prime,
            Threshold::CycleBound => 2.0 / self.eta_prime,
        }
    }
}

/// `q = (∂u₀+∂u₁−∂u₀′−∂u₁′)/∂v + δ|∂u₀−∂u₁| − δ|∂u₀′−∂u₁′|`, where
/// `(u₀′,u₁′)` is the successor with `ψ(v)·(u₀′,u₁′) = (u₀,u₁)`.
pub fn quality(u: &PairWord, v: &Word, omega: &Weight, delta: f64) -> Result<f64, Error> {
    if v.is_empty() || !in_h(v) {
        return Err(Error::Contract(format!("quality needs a nonempty word in H, got {v}")));
    }
    let p = psi(v)?;
    let ex = shared_explorer(omega);
    let mut ex = ex.lock().unwrap();
    let mut weigh = |w: &Word| ex.minimal_form(w).map(|e| e.units);
    let (a0, a1) = (weigh(&u.0)?, weigh(&u.1)?);
    let (b0, b1) = (weigh(&p.0.inverse().concat(&u.0))?, weigh(&p.1.inverse().concat(&u.1))?);
    Ok(quality_units(a0, a1, b0, b1, omega.word_units(v), delta))
}

fn quality_units(a0: i64, a1: i64, b0: i64, b1: i64, v: i64, delta: f64) -> f64 {
    to_real(a0 + a1 - b0 - b1) / to_real(v) + delta * to_real((a0 - a1).abs()) - delta * to_real((b0 - b1).abs())
}

/// Candidates scored together before the bound is checked again.
const SCORE_CHUNK: usize = 256;

struct Candidate {
    word: Word,
    units: i64,
    /// Elements of `v₀⁻¹` and `v₁⁻¹`.
    inv0: Element,
    inv1: Element,
    /// Heavier of `∂v₀`, `∂v₁` as words.
    reach: i64,
    /// `∂ω` of the elements `v₀`, `v₁`.
    norm0: i64,
    norm1: i64,
}

impl Candidate {
    /// Upper bound on the quality at a buffer of weights `(a0, a1)`, from `∂(v₀⁻¹u₀) ≥ |∂v₀ − ∂u₀|`.
    fn quality_ceiling(&self, a0: i64, a1: i64, delta: f64) -> f64 {
        let gain = |a: i64, n: i64| a - (n - a).abs();
        to_real(gain(a0, self.norm0) + gain(a1, self.norm1)) / to_real(self.units) + delta * to_real((a0 - a1).abs())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BuildEvent {
    pub state: String,
    pub kind: String,
    pub label: Option<String>,
    pub quality: Option<f64>,
    pub target: Option<String>,
}

#[derive(Clone, Debug)]
pub struct BuildOutput {
    pub graph: TransducerGraph,
    pub log: Vec<BuildEvent>,
}

struct Node {
    buffer: PairWord,
    elems: (Element, Element),
    kind: Option<Kind>,
}

struct Builder<'a> {
    params: &'a BuildParams,
    nodes: Vec<Node>,
    by_elems: HashMap<(Element, Element), StateId>,
    queue: VecDeque<StateId>,
    edges: Vec<Transition>,
    log: Vec<BuildEvent>,
}

impl Builder<'_> {
    fn node(&mut self, ex: &mut Explorer, elems: (Element, Element), word_hint: (&Word, &Word)) -> Result<StateId, Error> {
        if let Some(&id) = self.by_elems.get(&elems) {
            return Ok(id);
        }
        if self.nodes.len() >= self.params.state_budget {
            return Err(Error::Budget(format!("state budget of {} exceeded", self.params.state_budget)));
        }
        let buffer = PairWord(ex.minimal_form(word_hint.0)?.word, ex.minimal_form(word_hint.1)?.word);
        let id = self.nodes.len();
        self.nodes.push(Node { buffer, elems, kind: None });
        self.by_elems.insert(elems, id);
        self.queue.push_back(id);
        Ok(id)
    }
}

/// Run the construction; the result has specials attached.
pub fn build(params: &BuildParams) -> Result<BuildOutput, Error> {
    params.validate()?;
    let omega = params.weight;
    let words = enumerate_minimal_forms(params.max_len, &omega, |w| !w.is_empty() && in_h(w))?;
    let shared = shared_explorer(&omega);
    let mut ex = shared.lock().unwrap();
    let mut cands: Vec<Candidate> = words
        .into_iter()
        .map(|v| {
            let p = psi(&v)?;
            Ok(Candidate {
                units: omega.word_units(&v),
                inv0: element_of(&p.0.inverse()),
                inv1: element_of(&p.1.inverse()),
                reach: omega.word_units(&p.0).max(omega.word_units(&p.1)),
                norm0: ex.minimal_form(&p.0)?.units,
                norm1: ex.minimal_form(&p.1)?.units,
                word: v,
            })
        })
        .collect::<Result<_, Error>>()?;
    cands.sort_by(|x, y| (x.units, x.word.order_key()).cmp(&(y.units, y.word.order_key())));
    let max_reach = cands.iter().map(|c| c.reach).max().unwrap_or(0);
    let min_q = params.min_quality();

    let mut b = Builder { params, nodes: Vec::new(), by_elems: HashMap::new(), queue: VecDeque::new(), edges: Vec::new(), log: Vec::new() };
    let empty = Word::empty();
    b.node(&mut ex, (Element::ONE, Element::ONE), (&empty, &empty))?;

    while let Some(id) = b.queue.pop_front() {
        let buffer = b.nodes[id].buffer.clone();
        let (e0, e1) = b.nodes[id].elems;
        let (a0, a1) = (omega.word_units(&buffer.0), omega.word_units(&buffer.1));
        let mut chosen = None;
        if id != 0 {
            // every successor component weighs at most ∂v_i + ∂u_i
            ex.ensure_radius(max_reach + a0.max(a1))?;
            let exr: &Explorer = &ex;
            let weigh = |e: Element| exr.lookup(e).map(|en| en.units).expect("successor inside the settled ball");
            let score = |i: usize| {
                let c = &cands[i];
                if c.quality_ceiling(a0, a1, params.delta) < min_q {
                    return f64::NEG_INFINITY;
                }
                let s0 = mul(c.inv0, e0);
                let s1 = mul(c.inv1, e1);
                quality_units(a0, a1, weigh(s0), weigh(s1), c.units, params.delta)
            };
            chosen = match params.order {
                CandidateOrder::BestQuality => {
                    // branch and bound: scan by falling ceiling, stop below the best so far
                    let mut order: Vec<(f64, usize)> =
                        (0..cands.len()).map(|i| (cands[i].quality_ceiling(a0, a1, params.delta), i)).filter(|&(c, _)| c >= min_q).collect();
                    order.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));
                    let mut best: Option<(f64, usize)> = None;
                    for chunk in order.chunks(SCORE_CHUNK) {
                        if best.is_some_and(|b| chunk[0].0 < b.0) {
                            break;
                        }
                        let local = chunk
                            .par_iter()
                            .map(|&(_, i)| (score(i), i))
                            .filter(|&(q, _)| q >= min_q)
                            .reduce_with(|x, y| if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) { y } else { x });
                        best = match (best, local) {
                            (Some(x), Some(y)) if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) => Some(y),
                            (None, y) => y,
                            (x, _) => x,
                        };
                    }
                    best
                }
                CandidateOrder::Lightest => (0..cands.len()).into_par_iter().map(|i| (score(i), i)).find_first(|&(q, _)| q >= min_q),
            };
        }
        match chosen {
            Some((q, i)) => {
                let c = &cands[i];
                let s = (mul(c.inv0, e0), mul(c.inv1, e1));
                let (w0, w1) = (ex.lookup(s.0).unwrap().word.clone(), ex.lookup(s.1).unwrap().word.clone());
                let to = b.node(&mut ex, s, (&w0, &w1))?;
                b.nodes[id].kind = Some(Kind::Output);
                b.edges.push(Transition { from: id, to, label: Label::Output(c.word.clone()), swap: false, special: false, line: None });
                b.log.push(BuildEvent {
                    state: buffer.to_string(),
                    kind: "output".into(),
                    label: Some(c.word.to_string()),
                    quality: Some(q),
                    target: Some(b.nodes[to].buffer.to_string()),
                });
            }
            None => {
                b.nodes[id].kind = Some(Kind::Input);
                for (x, y) in input_labels() {
                    let (cx, cy) = (Word(vec![x, Gen::A]), Word(vec![y, Gen::A]));
                    let s = (mul(e0, element_of(&cx)), mul(e1, element_of(&cy)));
                    let (w0, w1) = (buffer.0.concat(&cx), buffer.1.concat(&cy));
                    let to = b.node(&mut ex, s, (&w0, &w1))?;
                    b.edges.push(Transition { from: id, to, label: Label::Input(x, y), swap: false, special: false, line: None });
                }
                b.log.push(BuildEvent { state: buffer.to_string(), kind: "input".into(), label: None, quality: None, target: None });
            }
        }
    }
    drop(ex);

    let mut g = TransducerGraph::new(omega);
    for n in &b.nodes {
        g.add_state(n.buffer.clone(), n.kind.expect("every state is typed"), Origin::Declared);
    }
    g.states[0].initial = true;
    g.states[0].terminal = true;
    g.transitions = b.edges;
    attach_specials(&mut g, params.special_len)?;
    Ok(BuildOutput { graph: g, log: b.log })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    #[test]
    fn first_loop_quality() {
        let q = quality(&PairWord(w("dada"), w("dada")), &w("cacacaca"), &Weight::tuned(), 0.0).unwrap();
        assert!((q - 8.24 / 15.2).abs() < 1e-9, "{q}");
    }

    #[test]
    fn quality_signs() {
        let p = Weight::tuned();
        // ψ(b) = (a, c): the successor of (λ,λ) is (a, c), heavier and unbalanced
        assert!(quality(&PairWord::default(), &w("b"), &p, 0.01).unwrap() < 0.0);
        assert!(quality(&PairWord::default(), &Word::empty(), &p, 0.01).is_err());
        assert!(quality(&PairWord::default(), &w("a"), &p, 0.01).is_err());
    }

    #[test]
    fn fixed_buffer_scores_zero() {
        let q = quality(&PairWord(w("ca"), w("ca")), &w("adadadad"), &Weight::tuned(), 0.01).unwrap();
        assert_eq!(q, 0.0);
    }

    #[test]
    fn tiny_candidate_set_runs_out_of_budget() {
        let mut p = BuildParams::new(Weight::tuned());
        p.max_len = 2;
        p.state_budget = 200;
        assert!(matches!(build(&p), Err(Error::Budget(_))));
    }
}
