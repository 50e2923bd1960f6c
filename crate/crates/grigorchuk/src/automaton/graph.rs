//! Transducer graphs and their line-oriented text format.
//!
//! ```text
//! weights a=1 b=3.33 c=2.8 d=1.06
//! state (-,-) input initial final
//! state (daca,a) output
//! edge (-,-) in (da,da) -> (da,da)
//! edge (-,-) in (ba,da) out cada -> (a,-)
//! edge (ad,-) in (da,da) -> (da,-) swap
//! edge (ad,-) in (ba,da) swap out ada -> (a,-)
//! edge (daca,a) out aca -> (aca,-)
//! special (-,-) pad (____,adad) out cacaca -> (-,-)
//! ```
//!
//! `edge A in L out V -> B` is an input transition into a fresh output
//! state followed by that state's output transition. A `swap` right after
//! the input label says the fresh state holds the coordinate-swapped
//! buffer; a `swap` at the end says the same of the final target.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

use crate::error::Error;
use crate::minform::minimal_form;
use crate::weight::Weight;
use crate::word::{Gen, PairWord, Word};

pub type StateId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Input,
    Output,
}

/// Where a state came from in the text format.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// A `state` line.
    Declared,
    /// Created by an `edge ... out ...` line.
    Inline,
    /// Created by a `special` line.
    Special,
}

#[derive(Clone, Debug)]
pub struct State {
    pub buffer: PairWord,
    pub kind: Kind,
    pub initial: bool,
    pub terminal: bool,
    pub origin: Origin,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    /// Consume `(xa, ya)`.
    Input(Gen, Gen),
    /// Consume `(pad^|u|, u)`.
    Pad(Word),
    /// Emit `v`.
    Output(Word),
}

impl Label {
    pub fn is_output(&self) -> bool {
        matches!(self, Label::Output(_))
    }

    /// The two consumed words.
    pub fn input_words(&self) -> (Word, Word) {
        match self {
            Label::Input(x, y) => (Word(vec![*x, Gen::A]), Word(vec![*y, Gen::A])),
            Label::Pad(u) => (Word::empty(), u.clone()),
            Label::Output(_) => (Word::empty(), Word::empty()),
        }
    }

    pub fn output_word(&self) -> Option<&Word> {
        match self {
            Label::Output(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Input(x, y) => write!(f, "in ({}a,{}a)", x.to_char(), y.to_char()),
            Label::Pad(u) if u.is_empty() => f.write_str("pad (-,-)"),
            Label::Pad(u) => write!(f, "pad ({},{u})", "_".repeat(u.len())),
            Label::Output(v) => write!(f, "out {v}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Transition {
    pub from: StateId,
    pub to: StateId,
    pub label: Label,
    /// The target holds the coordinate swap of the buffer this transition produces.
    pub swap: bool,
    pub special: bool,
    /// Source line in the text it was parsed from, if any.
    pub line: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct TransducerGraph {
    pub weight: Weight,
    pub states: Vec<State>,
    pub transitions: Vec<Transition>,
}

/// Successor order used in listings: `(da,da), (da,ca), ..., (ba,ba)`.
pub const INPUT_ORDER: [Gen; 3] = [Gen::D, Gen::C, Gen::B];

pub fn input_labels() -> impl Iterator<Item = (Gen, Gen)> {
    INPUT_ORDER.into_iter().flat_map(|x| INPUT_ORDER.into_iter().map(move |y| (x, y)))
}

pub(crate) fn label_index(x: Gen, y: Gen) -> usize {
    let pos = |g: Gen| INPUT_ORDER.iter().position(|&h| h == g).unwrap();
    3 * pos(x) + pos(y)
}

impl TransducerGraph {
    pub fn new(weight: Weight) -> TransducerGraph {
        TransducerGraph { weight, states: Vec::new(), transitions: Vec::new() }
    }

    pub fn initial(&self) -> Option<StateId> {
        self.states.iter().position(|s| s.initial)
    }

    pub fn add_state(&mut self, buffer: PairWord, kind: Kind, origin: Origin) -> StateId {
        self.states.push(State { buffer, kind, initial: false, terminal: false, origin });
        self.states.len() - 1
    }

    pub fn add_transition(&mut self, t: Transition) -> usize {
        self.transitions.push(t);
        self.transitions.len() - 1
    }

    pub fn outgoing(&self, s: StateId) -> impl Iterator<Item = (usize, &Transition)> {
        self.transitions.iter().enumerate().filter(move |(_, t)| t.from == s)
    }

    /// Index table: for every input state, its nine input transitions in listing order.
    pub fn input_table(&self) -> Vec<[Option<usize>; 9]> {
        let mut table = vec![[None; 9]; self.states.len()];
        for (i, t) in self.transitions.iter().enumerate() {
            if let Label::Input(x, y) = t.label {
                table[t.from][label_index(x, y)] = Some(i);
            }
        }
        table
    }

    /// The unique outbound transition of each output state.
    pub fn output_edge(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.states.len()];
        for (i, t) in self.transitions.iter().enumerate() {
            if t.label.is_output() {
                out[t.from] = Some(i);
            }
        }
        out
    }

    pub fn input_state_count(&self) -> usize {
        self.states.iter().filter(|s| s.kind == Kind::Input).count()
    }

    /// State counts by origin: declared input, declared output, inline output, special.
    pub fn census(&self) -> Census {
        let mut c = Census::default();
        for s in &self.states {
            match (s.kind, s.origin) {
                (Kind::Input, _) => c.input += 1,
                (Kind::Output, Origin::Declared) => c.declared_output += 1,
                (Kind::Output, Origin::Inline) => c.inline_output += 1,
                (Kind::Output, Origin::Special) => c.special += 1,
            }
        }
        c
    }

    pub fn find_declared(&self, buffer: &PairWord) -> Option<StateId> {
        self.states.iter().position(|s| s.origin == Origin::Declared && &s.buffer == buffer)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct Census {
    pub input: usize,
    pub declared_output: usize,
    pub inline_output: usize,
    pub special: usize,
}

impl Census {
    pub fn total(&self) -> usize {
        self.input + self.declared_output + self.inline_output + self.special
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Graph { line, msg: msg.into() }
}

/// Parse `(xa,ya)` into its two letters.
fn parse_input_label(s: &str, line: usize) -> Result<(Gen, Gen), Error> {
    let p = PairWord::parse(s).map_err(|e| err(line, e.to_string()))?;
    let letter = |w: &Word| -> Result<Gen, Error> {
        match w.letters() {
            [x, Gen::A] if *x != Gen::A => Ok(*x),
            _ => Err(err(line, format!("input label must be (xa,ya), got {s}"))),
        }
    };
    Ok((letter(&p.0)?, letter(&p.1)?))
}

/// Parse `(____,u)`.
fn parse_pad_label(s: &str, line: usize) -> Result<Word, Error> {
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| err(line, format!("bad pad label {s}")))?;
    let (pad, u) = inner.split_once(',').ok_or_else(|| err(line, format!("bad pad label {s}")))?;
    let u = Word::parse(u).map_err(|e| err(line, e.to_string()))?;
    let pad_len = if pad == "-" { 0 } else { pad.chars().count() };
    if !pad.chars().all(|c| c == '_') && pad != "-" || pad_len != u.len() {
        return Err(err(line, format!("pad must be {} copies of _, got {pad:?}", u.len())));
    }
    Ok(u)
}

struct Pending {
    line: usize,
    from: String,
    rest: Vec<String>,
    special: bool,
}

/// Parse the text format; structural problems are reported with their line.
pub fn parse_graph(text: &str) -> Result<TransducerGraph, Error> {
    let mut weight: Option<Weight> = None;
    let mut g = TransducerGraph::new(Weight::unit());
    let mut by_buffer: HashMap<PairWord, StateId> = HashMap::new();
    let mut pending: Vec<Pending> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks[0] {
            "weights" => {
                if weight.is_some() {
                    return Err(err(line, "duplicate weights line"));
                }
                let w: Weight = toks[1..].join(" ").parse().map_err(|e: Error| err(line, e.to_string()))?;
                w.require_triangular().map_err(|e| err(line, e.to_string()))?;
                weight = Some(w);
            }
            "state" => {
                let omega = weight.ok_or_else(|| err(line, "state before weights line"))?;
                if toks.len() < 3 {
                    return Err(err(line, "expected: state (u0,u1) input|output [initial] [final]"));
                }
                let buffer = PairWord::parse(toks[1]).map_err(|e| err(line, e.to_string()))?;
                for (i, part) in [&buffer.0, &buffer.1].into_iter().enumerate() {
                    let mf = minimal_form(part, &omega).map_err(|e| err(line, e.to_string()))?;
                    if &mf != part {
                        return Err(err(line, format!("buffer word {part} (component {i}) is not minimal; minimal form is {mf}")));
                    }
                }
                if by_buffer.contains_key(&buffer) {
                    return Err(err(line, format!("duplicate state {buffer}")));
                }
                let kind = match toks[2] {
                    "input" => Kind::Input,
                    "output" => Kind::Output,
                    k => return Err(err(line, format!("unknown state kind {k:?}"))),
                };
                let id = g.add_state(buffer.clone(), kind, Origin::Declared);
                for flag in &toks[3..] {
                    match *flag {
                        "initial" => g.states[id].initial = true,
                        "final" => g.states[id].terminal = true,
                        f => return Err(err(line, format!("unknown state flag {f:?}"))),
                    }
                }
                by_buffer.insert(buffer, id);
            }
            "edge" | "special" => {
                if toks.len() < 2 {
                    return Err(err(line, "edge without source"));
                }
                pending.push(Pending {
                    line,
                    from: toks[1].to_string(),
                    rest: toks[2..].iter().map(|s| s.to_string()).collect(),
                    special: toks[0] == "special",
                });
            }
            other => return Err(err(line, format!("unknown directive {other:?}"))),
        }
    }

    g.weight = weight.ok_or_else(|| err(text.lines().count().max(1), "no initial state"))?;
    let init: Vec<StateId> = g.states.iter().enumerate().filter(|(_, s)| s.initial).map(|(i, _)| i).collect();
    if init.is_empty() {
        return Err(err(text.lines().count().max(1), "no initial state"));
    }
    if init.len() > 1 {
        return Err(err(1, "more than one initial state"));
    }
    if g.states[init[0]].buffer != PairWord::default() {
        return Err(err(1, "the initial state must be (-,-)"));
    }

    let lookup = |name: &str, line: usize, by_buffer: &HashMap<PairWord, StateId>| -> Result<StateId, Error> {
        let p = PairWord::parse(name).map_err(|e| err(line, e.to_string()))?;
        by_buffer.get(&p).copied().ok_or_else(|| err(line, format!("dangling endpoint {p}")))
    };

    for p in pending {
        let line = p.line;
        let from = lookup(&p.from, line, &by_buffer)?;
        let r: Vec<&str> = p.rest.iter().map(|s| s.as_str()).collect();
        let arrow = r.iter().position(|&t| t == "->").ok_or_else(|| err(line, "missing ->"))?;
        let target = *r.get(arrow + 1).ok_or_else(|| err(line, "missing target after ->"))?;
        let to = lookup(target, line, &by_buffer)?;
        let tail_swap = match &r[arrow + 2..] {
            [] => false,
            ["swap"] => true,
            extra => return Err(err(line, format!("unexpected {extra:?} after target"))),
        };
        let head = &r[..arrow];
        let out_word = |i: usize| -> Result<Word, Error> {
            match head.get(i..) {
                Some(["out", v]) => Word::parse(v).map_err(|e| err(line, e.to_string())),
                _ => Err(err(line, "expected out <word>")),
            }
        };
        if p.special {
            // special A pad (____,u) out V -> B
            if head.len() != 4 || head[0] != "pad" {
                return Err(err(line, "expected: special A pad (____,u) out V -> B"));
            }
            if g.states[from].kind != Kind::Input {
                return Err(err(line, "special transition from a non-input state"));
            }
            let u = parse_pad_label(head[1], line)?;
            let v = out_word(2)?;
            let mid_buf = PairWord(g.states[from].buffer.0.clone(), g.states[from].buffer.1.concat(&u));
            let mid = g.add_state(mid_buf, Kind::Output, Origin::Special);
            g.add_transition(Transition { from, to: mid, label: Label::Pad(u), swap: false, special: true, line: Some(line) });
            g.add_transition(Transition { from: mid, to, label: Label::Output(v), swap: tail_swap, special: true, line: Some(line) });
            continue;
        }
        match head {
            ["in", lab] | ["in", lab, "swap"] => {
                if g.states[from].kind != Kind::Input {
                    return Err(err(line, "input transition from an output state"));
                }
                let (x, y) = parse_input_label(lab, line)?;
                let swap = head.len() == 3 || tail_swap;
                if head.len() == 3 && tail_swap {
                    return Err(err(line, "swap given twice"));
                }
                g.add_transition(Transition { from, to, label: Label::Input(x, y), swap, special: false, line: Some(line) });
            }
            ["in", lab, rest @ ..] => {
                if g.states[from].kind != Kind::Input {
                    return Err(err(line, "input transition from an output state"));
                }
                let (x, y) = parse_input_label(lab, line)?;
                let (in_swap, out_at) = match rest {
                    ["swap", "out", _] => (true, 3),
                    ["out", _] => (false, 2),
                    _ => return Err(err(line, "expected: edge A in (xa,ya) [swap] [out V] -> B [swap]")),
                };
                let v = out_word(out_at)?;
                let fb = &g.states[from].buffer;
                let omega = g.weight;
                let mut buf = PairWord(
                    minimal_form(&fb.0.concat(&Word(vec![x, Gen::A])), &omega)?,
                    minimal_form(&fb.1.concat(&Word(vec![y, Gen::A])), &omega)?,
                );
                if in_swap {
                    buf = buf.swapped();
                }
                let mid = g.add_state(buf, Kind::Output, Origin::Inline);
                g.add_transition(Transition { from, to: mid, label: Label::Input(x, y), swap: in_swap, special: false, line: Some(line) });
                g.add_transition(Transition { from: mid, to, label: Label::Output(v), swap: tail_swap, special: false, line: Some(line) });
            }
            ["out", v] => {
                if g.states[from].kind != Kind::Output {
                    return Err(err(line, "output transition from an input state"));
                }
                let v = Word::parse(v).map_err(|e| err(line, e.to_string()))?;
                g.add_transition(Transition { from, to, label: Label::Output(v), swap: tail_swap, special: false, line: Some(line) });
            }
            _ => return Err(err(line, "expected: edge A in (xa,ya) [swap] [out V] -> B [swap] or edge A out V -> B [swap]")),
        }
    }

    check_structure(&g)?;
    Ok(g)
}

/// Successor counts and determinism.
fn check_structure(g: &TransducerGraph) -> Result<(), Error> {
    let line_of = |s: StateId| {
        g.transitions.iter().find(|t| t.from == s || t.to == s).and_then(|t| t.line).unwrap_or(1)
    };
    for (id, s) in g.states.iter().enumerate() {
        let outs: Vec<&Transition> = g.transitions.iter().filter(|t| t.from == id).collect();
        match s.kind {
            Kind::Input => {
                let mut seen = [false; 9];
                let mut n = 0;
                for t in &outs {
                    if let Label::Input(x, y) = t.label {
                        let k = label_index(x, y);
                        if seen[k] {
                            return Err(err(t.line.unwrap_or(1), format!("state {} has two transitions labelled ({}a,{}a)", s.buffer, x.to_char(), y.to_char())));
                        }
                        seen[k] = true;
                        n += 1;
                    }
                }
                if n != 9 {
                    return Err(err(line_of(id), format!("wrong successor count: input state {} has {n} input transitions, expected 9", s.buffer)));
                }
            }
            Kind::Output => {
                if outs.len() != 1 {
                    return Err(err(line_of(id), format!("wrong successor count: output state {} has {} outbound transitions, expected 1", s.buffer, outs.len())));
                }
            }
        }
    }
    Ok(())
}

fn swap_suffix(swap: bool) -> &'static str {
    if swap {
        " swap"
    } else {
        ""
    }
}

/// Canonical text: weights, declared states, then per input state its nine
/// transitions in listing order, then declared output states, then specials.
pub fn serialize_graph(g: &TransducerGraph) -> String {
    let mut s = String::new();
    writeln!(s, "weights {}", g.weight).unwrap();
    for st in g.states.iter().filter(|st| st.origin == Origin::Declared) {
        let kind = if st.kind == Kind::Input { "input" } else { "output" };
        let mut flags = String::new();
        if st.initial {
            flags.push_str(" initial");
        }
        if st.terminal {
            flags.push_str(" final");
        }
        writeln!(s, "state {} {kind}{flags}", st.buffer).unwrap();
    }
    let table = g.input_table();
    let out_edge = g.output_edge();
    for (id, st) in g.states.iter().enumerate().filter(|(_, st)| st.kind == Kind::Input) {
        for &ti in table[id].iter().flatten() {
            let t = &g.transitions[ti];
            let Label::Input(x, y) = t.label else { unreachable!() };
            let lab = format!("({}a,{}a)", x.to_char(), y.to_char());
            let target = &g.states[t.to];
            if target.origin == Origin::Inline {
                let o = &g.transitions[out_edge[t.to].expect("inline output state has an edge")];
                let v = o.label.output_word().unwrap();
                let in_swap = if t.swap { " swap" } else { "" };
                writeln!(s, "edge {} in {lab}{in_swap} out {v} -> {}{}", st.buffer, g.states[o.to].buffer, swap_suffix(o.swap)).unwrap();
            } else {
                writeln!(s, "edge {} in {lab} -> {}{}", st.buffer, target.buffer, swap_suffix(t.swap)).unwrap();
            }
        }
    }
    for (id, st) in g.states.iter().enumerate() {
        if st.origin == Origin::Declared && st.kind == Kind::Output {
            if let Some(ti) = out_edge[id] {
                let t = &g.transitions[ti];
                writeln!(s, "edge {} out {} -> {}{}", st.buffer, t.label.output_word().unwrap(), g.states[t.to].buffer, swap_suffix(t.swap)).unwrap();
            }
        }
    }
    for t in &g.transitions {
        if let (true, Label::Pad(u)) = (t.special, &t.label) {
            let o = &g.transitions[out_edge[t.to].expect("special state has an edge")];
            let pad = if u.is_empty() { "-".to_string() } else { "_".repeat(u.len()) };
            writeln!(
                s,
                "special {} pad ({pad},{u}) out {} -> {}{}",
                g.states[t.from].buffer,
                o.label.output_word().unwrap(),
                g.states[o.to].buffer,
                swap_suffix(o.swap)
            )
            .unwrap();
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const TOY: &str = "\
weights a=1 b=1 c=1 d=1
state (-,-) input initial final
edge (-,-) in (da,da) out cacacaca -> (-,-)
";

    fn full_toy() -> String {
        // every label loops straight back through one output state
        let mut s = String::from("weights a=1 b=1 c=1 d=1\nstate (-,-) input initial final\n");
        for (x, y) in input_labels() {
            s.push_str(&format!("edge (-,-) in ({}a,{}a) out b -> (-,-)\n", x.to_char(), y.to_char()));
        }
        s
    }

    #[test]
    fn empty_text_has_no_initial_state() {
        let e = parse_graph("").unwrap_err();
        assert!(e.to_string().contains("no initial state"), "{e}");
    }

    #[test]
    fn wrong_successor_count() {
        let e = parse_graph(TOY).unwrap_err();
        assert!(e.to_string().contains("wrong successor count"), "{e}");
    }

    #[test]
    fn round_trip() {
        let text = full_toy();
        let g = parse_graph(&text).unwrap();
        assert_eq!(g.states.len(), 10);
        assert_eq!(serialize_graph(&g), text);
    }

    #[test]
    fn diagnostics_carry_lines() {
        let mut text = full_toy();
        text.push_str("state (-,-) input\n");
        match parse_graph(&text).unwrap_err() {
            Error::Graph { line, msg } => {
                assert_eq!(line, 12);
                assert!(msg.contains("duplicate state"));
            }
            e => panic!("{e}"),
        }
        let text = full_toy().replace("-> (-,-)\n", "-> (a,-)\n");
        assert!(parse_graph(&text).unwrap_err().to_string().contains("dangling endpoint"));
        let text = full_toy() + "state (dada,-) input\n";
        assert!(parse_graph(&text).unwrap_err().to_string().contains("not minimal"));
    }
}
