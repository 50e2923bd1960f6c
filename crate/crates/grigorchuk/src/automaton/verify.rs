//! Group-exact verification of a transducer graph.
//!
//! Output transitions are checked against the run invariant: an output
//! `v` with `ψ(v) = (v₀, v₁)` from buffer `(u₀, u₁)` to `(u₀′, u₁′)` must
//! satisfy `v₀·u₀′ = u₀` and `v₁·u₁′ = u₁` in `G`.

use rayon::prelude::*;
use serde::Serialize;

use super::graph::{Kind, Label, TransducerGraph};
use crate::element::element_of;
use crate::group::{free_reduce, in_b, in_h, in_psi_h, psi};
use crate::error::Error;
use crate::minform::{element_weight_units, minimal_form};
use crate::weight::Weight;
use crate::word::{Gen, PairWord, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    InputSuccessor,
    OutputNotInH,
    OutputEquation,
    OutputNotMinimal,
    SuccessorCount,
    Nondeterministic,
    SpecialSource,
    SpecialLabel,
    SpecialEquation,
    SpecialTarget,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub transition: Option<usize>,
    pub line: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub input_states: usize,
    pub states: usize,
    pub transitions: usize,
    pub output_transitions: usize,
    pub special_transitions: usize,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, kind: &ViolationKind) -> usize {
        self.violations.iter().filter(|v| &v.kind == kind).count()
    }
}

fn same(u: &Word, v: &Word) -> bool {
    element_of(u) == element_of(v)
}

/// No word for the same element is lighter. Ties with the canonical form are allowed.
pub fn is_weight_minimal(v: &Word, omega: &Weight) -> Result<bool, Error> {
    Ok(element_weight_units(v, omega)? == omega.word_units(v))
}

/// `ψ(v)·target = source` componentwise.
pub fn output_consistent(v: &Word, source: &PairWord, target: &PairWord) -> bool {
    if !in_h(v) {
        return false;
    }
    let p = psi(v).expect("v is in H");
    same(&p.0.concat(&target.0), &source.0) && same(&p.1.concat(&target.1), &source.1)
}

fn target_buffer(g: &TransducerGraph, to: usize, swap: bool) -> PairWord {
    let b = &g.states[to].buffer;
    if swap {
        b.swapped()
    } else {
        b.clone()
    }
}

/// Check every rule; all violations are collected, none is fatal.
pub fn verify_graph(g: &TransducerGraph) -> VerifyReport {
    let omega = g.weight;
    let mut report = VerifyReport {
        input_states: g.input_state_count(),
        states: g.states.len(),
        transitions: g.transitions.len(),
        output_transitions: g.transitions.iter().filter(|t| t.label.is_output()).count(),
        special_transitions: g.transitions.iter().filter(|t| t.special && !t.label.is_output()).count(),
        violations: Vec::new(),
    };

    // structure
    let table = g.input_table();
    for (id, s) in g.states.iter().enumerate() {
        let outs: Vec<&super::graph::Transition> = g.transitions.iter().filter(|t| t.from == id && !t.special).collect();
        let v = |kind, detail: String| Violation { kind, transition: None, line: None, detail };
        match s.kind {
            Kind::Input => {
                let n_inputs = outs.iter().filter(|t| matches!(t.label, Label::Input(..))).count();
                let distinct = table[id].iter().flatten().count();
                if distinct != n_inputs {
                    report.violations.push(v(ViolationKind::Nondeterministic, format!("state {} repeats an input label", s.buffer)));
                }
                if distinct != 9 || outs.len() != n_inputs {
                    report.violations.push(v(ViolationKind::SuccessorCount, format!("input state {} has {distinct} distinct input labels", s.buffer)));
                }
            }
            Kind::Output => {
                let n = g.transitions.iter().filter(|t| t.from == id).count();
                if n != 1 {
                    report.violations.push(v(ViolationKind::SuccessorCount, format!("output state {} has {n} outbound transitions", s.buffer)));
                }
            }
        }
    }

    let checks: Vec<Vec<Violation>> = g
        .transitions
        .par_iter()
        .enumerate()
        .map(|(i, t)| {
            let mut out = Vec::new();
            let mut push = |kind, detail: String| out.push(Violation { kind, transition: Some(i), line: t.line, detail });
            let src = &g.states[t.from].buffer;
            let tgt = target_buffer(g, t.to, t.swap);
            match &t.label {
                Label::Input(x, y) => {
                    let n0 = src.0.concat(&Word(vec![*x, Gen::A]));
                    let n1 = src.1.concat(&Word(vec![*y, Gen::A]));
                    if !(same(&n0, &tgt.0) && same(&n1, &tgt.1)) {
                        push(ViolationKind::InputSuccessor, format!("{src} reading ({}a,{}a) gives ({},{}), not {tgt}", x.to_char(), y.to_char(), free_reduce(&n0), free_reduce(&n1)));
                    }
                }
                Label::Pad(u) => {
                    if g.states[t.from].kind != Kind::Input || !in_psi_h(src) {
                        push(ViolationKind::SpecialSource, format!("special transition at {src}, which is not an input state in psi(H)"));
                    }
                    let minimal = minimal_form(u, &omega).map(|m| &m == u).unwrap_or(false);
                    if !in_b(u) || u.len() > 8 || !minimal {
                        push(ViolationKind::SpecialLabel, format!("pad label {u} is not a minimal form in B of length <= 8"));
                    }
                }
                Label::Output(v) => {
                    if !in_h(v) {
                        push(ViolationKind::OutputNotInH, format!("output {v} has an odd number of a"));
                    } else if t.special {
                        // the run consumed (pad, u) on top of the source of the special edge
                        if !output_consistent(v, src, &tgt) {
                            push(ViolationKind::SpecialEquation, format!("psi({v}) does not take {src} to {tgt}"));
                        }
                        if tgt != PairWord::default() {
                            push(ViolationKind::SpecialTarget, format!("special output ends at {tgt}, not (-,-)"));
                        }
                    } else if !output_consistent(v, src, &tgt) {
                        let p = psi(v).unwrap();
                        push(ViolationKind::OutputEquation, format!("psi({v}) = {p} does not take {src} to {tgt}"));
                    }
                    match is_weight_minimal(v, &omega) {
                        Ok(true) => {}
                        Ok(false) => {
                            let m = minimal_form(v, &omega).unwrap_or_default();
                            push(ViolationKind::OutputNotMinimal, format!("output {v} is not of minimal weight; minimal form is {m}"))
                        }
                        Err(e) => push(ViolationKind::OutputNotMinimal, format!("output {v}: {e}")),
                    }
                }
            }
            out
        })
        .collect();
    report.violations.extend(checks.into_iter().flatten());
    report
}
