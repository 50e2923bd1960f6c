//! Running the transducer on a pair `(h₀, h₁) ∈ ψ(H)`.
//!
//! Both components are cut into chunks `xa`. A light correction `P·…·z`
//! with `P, z ∈ H` makes the first stream a whole number of chunks and
//! lets both streams start with a letter other than `a`. The first stream
//! is padded with `(da)⁴` blocks, which are trivial in `G`, until both
//! streams have the same chunk count up to a tail `t ∈ B` of the second
//! stream; the run consumes chunk pairs and ends with the special
//! transition labelled by the minimal form of `t`.
//!
//! A configuration is `(state, mode)`: in mode 1 the true buffer is the
//! swap of the state's literal buffer, inputs are read swapped and every
//! emitted `v` is written as `a·v·a`.

use std::collections::HashMap;

use serde::Serialize;

use super::graph::{Kind, Label, StateId, TransducerGraph};
use super::ratio::RatioGraph;
use super::verify::is_weight_minimal;
use crate::element::{element_of, Element};
use crate::error::Error;
use crate::group::{free_reduce, in_b, in_h, in_psi_h, psi};
use crate::minform::{enumerate_minimal_forms, minimal_form};
use crate::weight::{to_real, Weight};
use crate::word::{w, Gen, PairWord, Word};

/// Longest correction words tried on the left and on the right.
const PREFIX_LEN: usize = 4;
const SUFFIX_LEN: usize = 6;

#[derive(Clone, Debug)]
struct Correction {
    /// Output prefix and its `ψ`-components.
    prefix: Word,
    prefix_psi: PairWord,
    /// Output suffix and its `ψ`-components.
    suffix: Word,
    suffix_psi: PairWord,
}

impl Correction {
    fn out_units(&self, omega: &Weight) -> i64 {
        omega.word_units(&self.prefix) + omega.word_units(&self.suffix)
    }

    fn in_units(&self, omega: &Weight) -> i64 {
        [&self.prefix_psi.0, &self.prefix_psi.1, &self.suffix_psi.0, &self.suffix_psi.1].iter().map(|x| omega.word_units(x)).sum()
    }
}

/// Precomputed run tables and the additive constant of the weight bound.
#[derive(Clone, Debug)]
pub struct Transducer {
    graph: TransducerGraph,
    table: Vec<[Option<usize>; 9]>,
    output: Vec<Option<usize>>,
    specials: HashMap<(StateId, Element), usize>,
    corrections: Vec<Correction>,
    /// Non-special maximal cycle ratio.
    pub eta: f64,
    pub k: f64,
    pub k_parts: KParts,
}

/// Breakdown of `K`.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct KParts {
    /// `max(out − η/2·in)` over walks in the configuration graph.
    pub acyclic: f64,
    pub special_output: f64,
    pub correction_output: f64,
    /// Conjugation by `a` for the swapped orientation, and the `a` left open by a final mode reset.
    pub conjugation: f64,
    /// `η/2` times the extra input from corrections and padding alignment.
    pub input_overhead: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransduceResult {
    pub output: Word,
    pub weight: f64,
    pub bound: f64,
    /// Chunk pairs consumed, padding included.
    pub steps: usize,
    pub pad_blocks: (usize, usize),
    pub swapped: bool,
}

/// `u` itself when no word for its element is lighter, its minimal form otherwise.
fn lightest_word(u: &Word, omega: &Weight) -> Result<Word, Error> {
    let r = free_reduce(u);
    if is_weight_minimal(&r, omega)? {
        Ok(r)
    } else {
        minimal_form(&r, omega)
    }
}

fn chunks_ok(s: &Word) -> bool {
    s.len() % 2 == 0 && s.letters().chunks(2).all(|c| c[0] != Gen::A && c[1] == Gen::A)
}

fn starts_ok(s: &Word) -> bool {
    s.letters().first() != Some(&Gen::A)
}

const PAD_BLOCK: [(Gen, Gen); 4] = [(Gen::D, Gen::D); 4];

impl Transducer {
    pub fn new(graph: &TransducerGraph) -> Result<Transducer, Error> {
        let omega = graph.weight;
        graph.initial().ok_or_else(|| Error::Contract("graph has no initial state".into()))?;
        let table = graph.input_table();
        let output = graph.output_edge();
        let mut specials = HashMap::new();
        for (i, t) in graph.transitions.iter().enumerate() {
            if let Label::Pad(u) = &t.label {
                specials.insert((t.from, element_of(u)), i);
            }
        }

        let ratio_graph = RatioGraph::new(graph, false)?;
        let report = ratio_graph.max_ratio(&omega)?;
        let eta = report.ratio;
        let acyclic = ratio_graph.max_excess(&omega, eta);

        let special_output = graph
            .transitions
            .iter()
            .filter(|t| t.special)
            .filter_map(|t| t.label.output_word())
            .map(|v| omega.word_units(v))
            .max()
            .unwrap_or(0);

        let prefixes = enumerate_minimal_forms(PREFIX_LEN, &omega, in_h)?;
        let suffixes = enumerate_minimal_forms(SUFFIX_LEN, &omega, in_h)?;
        let mut corrections = Vec::new();
        for z in &suffixes {
            for p in &prefixes {
                corrections.push(Correction { prefix: p.clone(), prefix_psi: psi(p)?, suffix: z.clone(), suffix_psi: psi(z)? });
            }
        }
        corrections.sort_by_key(|c| (c.out_units(&omega), c.in_units(&omega)));
        let correction_output = corrections.iter().map(|c| c.out_units(&omega)).max().unwrap_or(0);
        let correction_input = corrections.iter().map(|c| c.in_units(&omega)).max().unwrap_or(0);
        // padding alignment: at most two (da)^4 blocks beyond the chunk-count gap
        let pad_slack = 8 * (omega.units(Gen::A) + omega.units(Gen::D));

        let a = omega.units(Gen::A);
        let parts = KParts {
            acyclic,
            special_output: to_real(special_output),
            correction_output: to_real(correction_output),
            conjugation: to_real(3 * a),
            input_overhead: eta / 2.0 * to_real(correction_input + pad_slack),
        };
        let k = parts.acyclic + parts.special_output + parts.correction_output + parts.conjugation + parts.input_overhead;
        Ok(Transducer { graph: graph.clone(), table, output, specials, corrections, eta, k, k_parts: parts })
    }

    pub fn graph(&self) -> &TransducerGraph {
        &self.graph
    }

    /// `η·max{∂h₀, ∂h₁} + K` for the given pair.
    pub fn bound(&self, p: &PairWord) -> Result<f64, Error> {
        let omega = &self.graph.weight;
        let h0 = lightest_word(&p.0, omega)?;
        let h1 = lightest_word(&p.1, omega)?;
        Ok(self.eta * omega.weight_of(&h0).max(omega.weight_of(&h1)) + self.k)
    }

    /// A word `v ∈ H` with `ψ(v) = p`.
    pub fn run(&self, p: &PairWord) -> Result<TransduceResult, Error> {
        if !in_psi_h(p) {
            return Err(Error::NotInPsiH(format!("{p}")));
        }
        let omega = self.graph.weight;
        let h0 = lightest_word(&p.0, &omega)?;
        let h1 = lightest_word(&p.1, &omega)?;
        let swapped = h0.len() > h1.len();
        let (h0, h1) = if swapped { (h1, h0) } else { (h0, h1) };

        let mut last_err = None;
        for c in &self.corrections {
            // ψ(P·v·z) = (h0, h1) with ψ(P) = (P0, P1), ψ(z) = (z0, z1)
            let s0 = free_reduce(&c.prefix_psi.0.inverse().concat(&h0).concat(&c.suffix_psi.0.inverse()));
            let s1 = free_reduce(&c.prefix_psi.1.inverse().concat(&h1).concat(&c.suffix_psi.1.inverse()));
            if !chunks_ok(&s0) || !starts_ok(&s1) {
                continue;
            }
            match self.run_streams(&s0, &s1) {
                Ok((body, steps, pads)) => {
                    let mut v = free_reduce(&c.prefix.concat(&body).concat(&c.suffix));
                    if swapped {
                        v = free_reduce(&w("a").concat(&v).concat(&w("a")));
                    }
                    let (o0, o1) = if swapped { (&h1, &h0) } else { (&h0, &h1) };
                    let img = psi(&v)?;
                    if element_of(&img.0) != element_of(o0) || element_of(&img.1) != element_of(o1) {
                        return Err(Error::NotInPsiH(format!("run output {v} has psi = {img}, expected {p}")));
                    }
                    let bound = self.eta * omega.weight_of(o0).max(omega.weight_of(o1)) + self.k;
                    return Ok(TransduceResult { weight: omega.weight_of(&v), output: v, bound, steps, pad_blocks: pads, swapped });
                }
                Err(e) => last_err = Some(e),
            }
        }
        Err(last_err.unwrap_or_else(|| Error::Stuck(format!("no correction makes {p} a whole number of chunks"))))
    }

    /// Choose the split of the second stream, pad, run, and finish.
    fn run_streams(&self, s0: &Word, s1: &Word) -> Result<(Word, usize, (usize, usize)), Error> {
        let m0 = s0.len() / 2;
        let n1 = s1.len() / 2;
        let chunk = |s: &Word, i: usize| (s.letters()[2 * i], s.letters()[2 * i + 1]);
        let mut last = Error::Stuck(format!("no tail of {s1} in B of length at most 8"));
        for j in (0..=n1).rev() {
            let tail = Word(s1.letters()[2 * j..].to_vec());
            if tail.len() > 17 {
                break;
            }
            if !in_b(&tail) {
                continue;
            }
            let diff = j as i64 - m0 as i64;
            if diff.rem_euclid(4) != 0 {
                continue;
            }
            let (e0, e1) = if diff >= 0 { (diff as usize / 4, 0) } else { (0, (-diff) as usize / 4) };
            let mut first: Vec<(Gen, Gen)> = (0..m0).map(|i| chunk(s0, i)).collect();
            let mut second: Vec<(Gen, Gen)> = (0..j).map(|i| chunk(s1, i)).collect();
            for _ in 0..e0 {
                first.extend(PAD_BLOCK);
            }
            for _ in 0..e1 {
                second.extend(PAD_BLOCK);
            }
            match self.consume(&first, &second, &tail) {
                Ok(body) => return Ok((body, first.len(), (e0, e1))),
                Err(e) => last = e,
            }
        }
        Err(last)
    }

    fn consume(&self, first: &[(Gen, Gen)], second: &[(Gen, Gen)], tail: &Word) -> Result<Word, Error> {
        let g = &self.graph;
        let omega = g.weight;
        let mut state = g.initial().unwrap();
        let mut mode = false;
        let mut out = Word::empty();
        let emit = |out: &mut Word, v: &Word, mode: bool| {
            if mode {
                out.push(Gen::A);
            }
            out.0.extend_from_slice(v.letters());
            if mode {
                out.push(Gen::A);
            }
        };
        for (&(x, _), &(y, _)) in first.iter().zip(second) {
            let (lx, ly) = if mode { (y, x) } else { (x, y) };
            let k = super::graph::label_index(lx, ly);
            let ti = self.table[state][k].ok_or_else(|| Error::Stuck(format!("state {} has no input ({}a,{}a)", g.states[state].buffer, lx.to_char(), ly.to_char())))?;
            let t = &g.transitions[ti];
            mode ^= t.swap;
            state = t.to;
            while g.states[state].kind == Kind::Output {
                let oi = self.output[state].ok_or_else(|| Error::Stuck(format!("output state {} has no edge", g.states[state].buffer)))?;
                let o = &g.transitions[oi];
                emit(&mut out, o.label.output_word().unwrap(), mode);
                mode ^= o.swap;
                state = o.to;
            }
        }
        let buf = &g.states[state].buffer;
        // a symmetric buffer reads the same in both modes
        if mode && buf.0 != buf.1 {
            return Err(Error::Stuck(format!("run ends at {buf} in swapped mode")));
        }
        let u = minimal_form(tail, &omega)?;
        let si = self
            .specials
            .get(&(state, element_of(&u)))
            .ok_or_else(|| Error::Stuck(format!("no special transition ({}, {u}) at {buf}", "_".repeat(u.len()))))?;
        let mid = g.transitions[*si].to;
        let o = &g.transitions[self.output[mid].ok_or_else(|| Error::Stuck("special state without output".into()))?];
        emit(&mut out, o.label.output_word().unwrap(), false);
        if o.to != g.initial().unwrap() {
            return Err(Error::Stuck(format!("special output ends at {}", g.states[o.to].buffer)));
        }
        Ok(out)
    }
}

/// One-shot convenience: build the run tables and transduce `p`.
pub fn transduce(g: &TransducerGraph, p: &PairWord) -> Result<TransduceResult, Error> {
    Transducer::new(g)?.run(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunk_shapes() {
        assert!(chunks_ok(&w("dada")));
        assert!(chunks_ok(&Word::empty()));
        assert!(!chunks_ok(&w("dad")));
        assert!(!chunks_ok(&w("adad")));
        assert!(starts_ok(&w("dad")) && !starts_ok(&w("ad")));
    }
}
