//! Graph surgery: end-of-input transitions, and replacement of output
//! labels that fail verification by the lightest consistent ones.

use serde::Serialize;

use super::graph::{Kind, Label, Origin, TransducerGraph, Transition};
use super::preimage::min_preimage;
use super::verify::{is_weight_minimal, output_consistent};
use crate::error::Error;
use crate::group::{free_reduce, in_b, in_psi_h, psi_preimage_basic};
use crate::minform::enumerate_minimal_forms;
use crate::word::{PairWord, Word};

/// Lightest `v` with `ψ(v)·target = source`, if that pair lies in `ψ(H)`.
pub fn lightest_output(source: &PairWord, target: &PairWord, omega: &crate::Weight) -> Result<Option<Word>, Error> {
    let need = PairWord(source.0.concat(&target.0.inverse()), source.1.concat(&target.1.inverse()));
    if !in_psi_h(&need) {
        return Ok(None);
    }
    // the basic constructor always gives a candidate, so its weight bounds the search
    let fallback = free_reduce(&psi_preimage_basic(&need)?);
    min_preimage(&need, omega, omega.word_units(&fallback))
}

/// Add `(pad^|u|, u)` transitions followed by an output to `(λ,λ)` at every
/// input state whose buffer lies in `ψ(H)`, for each `u ∈ mf ∩ B` with `|u| ≤ max_len`.
/// Existing special transitions are dropped first.
pub fn attach_specials(g: &mut TransducerGraph, max_len: usize) -> Result<usize, Error> {
    drop_specials(g);
    let omega = g.weight;
    let start = g.initial().ok_or_else(|| Error::Contract("graph has no initial state".into()))?;
    let pads = enumerate_minimal_forms(max_len, &omega, in_b)?;
    let sources: Vec<usize> = (0..g.states.len()).filter(|&s| g.states[s].kind == Kind::Input && in_psi_h(&g.states[s].buffer)).collect();
    let mut added = 0;
    for s in sources {
        for u in &pads {
            let buf = &g.states[s].buffer;
            let mid_buf = PairWord(buf.0.clone(), buf.1.concat(u));
            let v = lightest_output(&mid_buf, &PairWord::default(), &omega)?
                .ok_or_else(|| Error::Contract(format!("no special preimage for {mid_buf}")))?;
            let mid = g.add_state(mid_buf, Kind::Output, Origin::Special);
            g.add_transition(Transition { from: s, to: mid, label: Label::Pad(u.clone()), swap: false, special: true, line: None });
            g.add_transition(Transition { from: mid, to: start, label: Label::Output(v), swap: false, special: true, line: None });
            added += 1;
        }
    }
    Ok(added)
}

fn drop_specials(g: &mut TransducerGraph) {
    let keep: Vec<bool> = g.states.iter().map(|s| s.origin != Origin::Special).collect();
    let mut remap = vec![usize::MAX; g.states.len()];
    let mut next = 0;
    for (i, &k) in keep.iter().enumerate() {
        if k {
            remap[i] = next;
            next += 1;
        }
    }
    let mut i = 0;
    g.states.retain(|_| {
        i += 1;
        keep[i - 1]
    });
    g.transitions.retain(|t| !t.special);
    for t in &mut g.transitions {
        t.from = remap[t.from];
        t.to = remap[t.to];
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Repair {
    pub line: Option<usize>,
    pub source: String,
    pub old_label: String,
    pub new_label: String,
    pub target: String,
    pub swap: bool,
}

/// Replace every non-special output label that is not a consistent minimal
/// form. The literal target is kept when some label reaches it; otherwise
/// the swapped target is used and the transition is flagged `swap`.
pub fn repair_outputs(g: &mut TransducerGraph) -> Result<Vec<Repair>, Error> {
    let omega = g.weight;
    let mut done = Vec::new();
    for i in 0..g.transitions.len() {
        let t = &g.transitions[i];
        let Label::Output(v) = &t.label else { continue };
        if t.special {
            continue;
        }
        let src = g.states[t.from].buffer.clone();
        let lit = g.states[t.to].buffer.clone();
        let cur = if t.swap { lit.swapped() } else { lit.clone() };
        if output_consistent(v, &src, &cur) && is_weight_minimal(v, &omega)? {
            continue;
        }
        let (nv, swap) = match lightest_output(&src, &lit, &omega)? {
            Some(nv) => (nv, false),
            None => match lightest_output(&src, &lit.swapped(), &omega)? {
                Some(nv) => (nv, true),
                None => return Err(Error::Contract(format!("no output label takes {src} to {lit} in either orientation"))),
            },
        };
        done.push(Repair {
            line: t.line,
            source: src.to_string(),
            old_label: format!("{v}{}", if t.swap { " swap" } else { "" }),
            new_label: format!("{nv}{}", if swap { " swap" } else { "" }),
            target: lit.to_string(),
            swap,
        });
        let t = &mut g.transitions[i];
        t.label = Label::Output(nv);
        t.swap = swap;
    }
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;
    use crate::Weight;

    #[test]
    fn first_loop_label_is_lightest() {
        let v = lightest_output(&PairWord(w("adad"), w("adad")), &PairWord::default(), &Weight::tuned()).unwrap().unwrap();
        assert_eq!(Weight::tuned().word_units(&v), Weight::tuned().word_units(&w("cacacaca")));
    }

    #[test]
    fn wrong_parity_has_no_label() {
        assert!(lightest_output(&PairWord(w("a"), Word::empty()), &PairWord::default(), &Weight::unit()).unwrap().is_none());
    }
}
