//! Lightest `ψ`-preimage of a pair, by uniform-cost search.
//!
//! A search state is `(parity of a, R₀, R₁)`: the pair that the rest of
//! the word still has to produce on the two subtrees. Reading `a` swaps
//! `R₀` and `R₁`; reading `x ∈ {b,c,d}` multiplies `Rᵢ` on the left by
//! the section of `x` on side `i`. The goal is `(even, 1, 1)`.
//!
//! The search stops early through a table of `ψ(w)` for every light
//! `w ∈ H`: reaching an even state `(R₀, R₁)` found in the table closes
//! the word with the table entry.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::element::{element_of, Element};
use crate::error::Error;
use crate::group::{free_reduce, in_psi_h};
use crate::group::{in_h, psi};
use crate::minform::{minimal_form, shared_explorer};
use crate::weight::Weight;
use crate::word::{Gen, PairWord, Word};

fn section_word(g: Gen, side: usize) -> Word {
    let s = match (g, side) {
        (Gen::B, 0) | (Gen::C, 0) => Some(Gen::A),
        (Gen::B, _) => Some(Gen::C),
        (Gen::C, _) => Some(Gen::D),
        (Gen::D, 1) => Some(Gen::B),
        _ => None,
    };
    Word(s.into_iter().collect())
}

/// Elements settled before the closing table is cut.
const TABLE_SIZE: usize = 60_000;

/// Lightest `w ∈ H` for each `ψ(w)`, over all `w` up to `radius`.
struct Closing {
    radius: i64,
    best: HashMap<(Element, Element), (i64, Word)>,
}

fn closing_table(omega: &Weight) -> Result<Arc<Closing>, Error> {
    static CACHE: OnceLock<Mutex<HashMap<Weight, Arc<Closing>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(omega) {
        return Ok(t.clone());
    }
    let ex = shared_explorer(omega);
    let mut ex = ex.lock().unwrap();
    while ex.entries().len() < TABLE_SIZE && ex.settled_radius() < i64::MAX {
        let next = ex.settled_radius() + omega.max_units();
        ex.ensure_radius(next)?;
    }
    let radius = ex.settled_radius();
    let mut best = HashMap::new();
    // entries come in weight order, so the first hit per image is the lightest
    for e in ex.entries().iter().filter(|e| e.units <= radius && in_h(&e.word)) {
        let q = psi(&e.word)?;
        best.entry((element_of(&q.0), element_of(&q.1))).or_insert((e.units, e.word.clone()));
    }
    let t = Arc::new(Closing { radius, best });
    cache.lock().unwrap().insert(*omega, t.clone());
    Ok(t)
}

/// Lightest word `v ∈ H` with `ψ(v) = p`, returned in minimal form, or
/// `None` if none weighs at most `max_units`.
pub fn min_preimage(p: &PairWord, omega: &Weight, max_units: i64) -> Result<Option<Word>, Error> {
    if !in_psi_h(p) {
        return Err(Error::NotInPsiH(format!("{p}")));
    }
    omega.require_triangular()?;
    let table = closing_table(omega)?;
    // a path's last even state within `radius` of the goal lies at most
    // one a-x-a step earlier than where the table takes over
    let slack = 2 * omega.units(Gen::A) + omega.max_units();
    let mut found: Option<(i64, Word)> = None;
    type Node = (bool, Element, Element);
    // residual words are kept reduced; elements only serve as keys
    let start = (free_reduce(&p.0), free_reduce(&p.1));
    let key = |c: bool, r: &(Word, Word)| -> Node { (c, element_of(&r.0), element_of(&r.1)) };
    let mut best: HashMap<Node, i64> = HashMap::new();
    let mut parent: HashMap<Node, Option<(Node, Gen)>> = HashMap::new();
    let mut words: HashMap<Node, (Word, Word)> = HashMap::new();
    let mut heap: BinaryHeap<Reverse<(i64, u64, bool, Element, Element)>> = BinaryHeap::new();
    let k0 = key(false, &start);
    best.insert(k0, 0);
    parent.insert(k0, None);
    words.insert(k0, start);
    let mut tick = 0u64;
    heap.push(Reverse((0, tick, k0.0, k0.1, k0.2)));
    let goal: Node = (false, Element::ONE, Element::ONE);
    let path_to = |node: Node, parent: &HashMap<Node, Option<(Node, Gen)>>| {
        let mut letters = Vec::new();
        let mut cur = node;
        while let Some(Some((prev, g))) = parent.get(&cur) {
            letters.push(*g);
            cur = *prev;
        }
        letters.reverse();
        Word(letters)
    };
    while let Some(Reverse((cost, _, c, e0, e1))) = heap.pop() {
        let node = (c, e0, e1);
        if best.get(&node).is_some_and(|&b| b < cost) {
            continue;
        }
        if let Some((total, _)) = &found {
            if cost + table.radius >= *total + slack {
                break;
            }
        }
        if node == goal {
            found = Some((cost, path_to(node, &parent)));
            break;
        }
        if !c {
            if let Some((units, tail)) = table.best.get(&(e0, e1)) {
                let total = cost + units;
                if total <= max_units && found.as_ref().is_none_or(|f| total < f.0) {
                    found = Some((total, path_to(node, &parent).concat(tail)));
                }
            }
        }
        let (r0, r1) = words[&node].clone();
        for g in Gen::ALL {
            let next_cost = cost + omega.units(g);
            if next_cost > max_units {
                continue;
            }
            let (nc, nr) = if g == Gen::A {
                (!c, (r1.clone(), r0.clone()))
            } else {
                (c, (free_reduce(&section_word(g, 0).concat(&r0)), free_reduce(&section_word(g, 1).concat(&r1))))
            };
            let nk = key(nc, &nr);
            if best.get(&nk).is_some_and(|&b| b <= next_cost) {
                continue;
            }
            best.insert(nk, next_cost);
            parent.insert(nk, Some((node, g)));
            words.insert(nk, nr);
            tick += 1;
            heap.push(Reverse((next_cost, tick, nk.0, nk.1, nk.2)));
        }
    }
    match found {
        Some((_, v)) => Ok(Some(minimal_form(&v, omega)?)),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{psi, words_equal};
    use crate::word::w;

    #[test]
    fn recovers_generators() {
        let p = Weight::tuned();
        for h in ["b", "c", "d", "ada", "aba"] {
            let v = min_preimage(&psi(&w(h)).unwrap(), &p, 100_000).unwrap().unwrap();
            assert!(words_equal(&v, &w(h)), "{h} -> {v}");
        }
    }

    #[test]
    fn first_loop_preimage() {
        let p = Weight::tuned();
        let v = min_preimage(&PairWord(w("adad"), w("adad")), &p, 200_000).unwrap().unwrap();
        let img = psi(&v).unwrap();
        assert!(words_equal(&img.0, &w("adad")) && words_equal(&img.1, &w("adad")));
        assert!(p.word_units(&v) <= 152_000);
    }

    #[test]
    fn rejects_pairs_outside_psi_h() {
        assert!(min_preimage(&PairWord(w("a"), Word::empty()), &Weight::unit(), 100_000).is_err());
    }
}
