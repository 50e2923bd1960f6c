//! Minimal forms by uniform-cost search over the Cayley graph.
//!
//! Words are expanded in the order (weight, length, letters under
//! `a < d < c < b`). That order is compatible with appending a letter,
//! so the first word to reach an element is its canonical minimal form,
//! and every prefix of a minimal form is itself a minimal form.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::element::{element_of, Element};
use crate::error::Error;
use crate::group::free_reduce;
use crate::weight::Weight;
use crate::word::{Gen, Word};

/// Default cap on the number of settled elements.
pub const DEFAULT_BUDGET: usize = 10_000_000;

#[derive(Clone, Debug)]
pub struct Entry {
    pub element: Element,
    pub word: Word,
    /// `∂ω` in units of 10^-4.
    pub units: i64,
}

type Key = (i64, usize, Vec<u8>);

fn rank_to_gen(r: u8) -> Gen {
    match r {
        0 => Gen::A,
        1 => Gen::D,
        2 => Gen::C,
        _ => Gen::B,
    }
}

/// Resumable best-first enumeration of `G` under a fixed weight.
pub struct Explorer {
    weight: Weight,
    heap: BinaryHeap<Reverse<Key>>,
    entries: Vec<Entry>,
    index: HashMap<Element, usize>,
    budget: usize,
}

impl Explorer {
    pub fn new(weight: Weight) -> Explorer {
        Explorer::with_budget(weight, DEFAULT_BUDGET)
    }

    /// Explorer that refuses to settle more than `budget` elements.
    pub fn with_budget(weight: Weight, budget: usize) -> Explorer {
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0, 0, Vec::new())));
        Explorer { weight, heap, entries: Vec::new(), index: HashMap::new(), budget }
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    /// Settle every element of weight at most `radius` units.
    pub fn ensure_radius(&mut self, radius: i64) -> Result<(), Error> {
        while let Some(Reverse(top)) = self.heap.peek() {
            if top.0 > radius {
                break;
            }
            let Reverse((units, len, ranks)) = self.heap.pop().unwrap();
            let word = Word(ranks.iter().map(|&r| rank_to_gen(r)).collect());
            let e = element_of(&word);
            if self.index.contains_key(&e) {
                continue;
            }
            if self.entries.len() >= self.budget {
                self.heap.push(Reverse((units, len, ranks)));
                return Err(Error::Budget(format!(
                    "{} elements settled, radius reached {}",
                    self.entries.len(),
                    crate::weight::to_real(self.settled_radius())
                )));
            }
            self.index.insert(e, self.entries.len());
            let last = word.letters().last().copied();
            for g in Gen::ALL {
                if Some(g) == last || (g != Gen::A && last.is_some_and(|l| l != Gen::A)) {
                    continue;
                }
                let mut r = ranks.clone();
                r.push(g.rank());
                self.heap.push(Reverse((units + self.weight.units(g), len + 1, r)));
            }
            self.entries.push(Entry { element: e, word, units });
        }
        Ok(())
    }

    /// Radius up to which the enumeration is complete.
    pub fn settled_radius(&self) -> i64 {
        match self.heap.peek() {
            Some(Reverse(top)) => top.0 - 1,
            None => i64::MAX,
        }
    }

    pub fn lookup(&self, e: Element) -> Option<&Entry> {
        self.index.get(&e).map(|&i| &self.entries[i])
    }

    /// Entries settled so far, in expansion order.
    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Minimal form of `w`; the search runs up to the weight of its free reduction.
    pub fn minimal_form(&mut self, w: &Word) -> Result<Entry, Error> {
        let r = free_reduce(w);
        let e = element_of(&r);
        if let Some(en) = self.lookup(e) {
            return Ok(en.clone());
        }
        self.ensure_radius(self.weight.word_units(&r))?;
        self.lookup(e)
            .cloned()
            .ok_or_else(|| Error::Contract(format!("no minimal form found for {w}")))
    }
}

fn explorers() -> &'static Mutex<HashMap<Weight, Arc<Mutex<Explorer>>>> {
    static CACHE: OnceLock<Mutex<HashMap<Weight, Arc<Mutex<Explorer>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared explorer for a weight, grown on demand.
pub fn shared_explorer(weight: &Weight) -> Arc<Mutex<Explorer>> {
    explorers()
        .lock()
        .unwrap()
        .entry(*weight)
        .or_insert_with(|| Arc::new(Mutex::new(Explorer::new(*weight))))
        .clone()
}

/// The canonical minimum-weight word for the element of `w`.
pub fn minimal_form(w: &Word, omega: &Weight) -> Result<Word, Error> {
    omega.require_triangular()?;
    let ex = shared_explorer(omega);
    let mut ex = ex.lock().unwrap();
    Ok(ex.minimal_form(w)?.word)
}

/// `∂ω` of the element of `w`, in units.
pub fn element_weight_units(w: &Word, omega: &Weight) -> Result<i64, Error> {
    omega.require_triangular()?;
    let ex = shared_explorer(omega);
    let mut ex = ex.lock().unwrap();
    Ok(ex.minimal_form(w)?.units)
}

/// All canonical minimal forms of length at most `max_len` accepted by `filter`.
pub fn enumerate_minimal_forms(max_len: usize, omega: &Weight, filter: impl Fn(&Word) -> bool) -> Result<Vec<Word>, Error> {
    omega.require_triangular()?;
    let ex = shared_explorer(omega);
    let mut ex = ex.lock().unwrap();
    // a reduced word alternates a with b, c, d, so it has at most
    // ceil(L/2) letters of each kind
    let half = max_len.div_ceil(2) as i64;
    let heaviest = [Gen::B, Gen::C, Gen::D].iter().map(|&g| omega.units(g)).max().unwrap();
    ex.ensure_radius(half * (omega.units(Gen::A) + heaviest))?;
    let mut out: Vec<Word> = ex
        .entries()
        .iter()
        .filter(|en| en.word.len() <= max_len && filter(&en.word))
        .map(|en| en.word.clone())
        .collect();
    out.sort_by_key(|w| w.order_key());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{in_b, in_h, words_equal};
    use crate::word::w;

    #[test]
    fn examples() {
        let unit = Weight::unit();
        assert_eq!(minimal_form(&w("dada"), &unit).unwrap(), w("adad"));
        assert_eq!(minimal_form(&w("bc"), &unit).unwrap(), w("d"));
        assert_eq!(minimal_form(&w("bc"), &Weight::tuned()).unwrap(), w("d"));
        assert_eq!(minimal_form(&Word::empty(), &unit).unwrap(), Word::empty());
        assert!(minimal_form(&w("b"), &Weight::new(1.0, 3.0, 1.0, 1.0).unwrap()).is_err());
    }

    #[test]
    fn small_enumerations() {
        let unit = Weight::unit();
        assert_eq!(enumerate_minimal_forms(0, &unit, |_| true).unwrap(), vec![Word::empty()]);
        assert_eq!(enumerate_minimal_forms(1, &unit, |_| true).unwrap().len(), 5);
        // pairwise-distinct H-elements among reduced words of length <= 2
        let h2 = enumerate_minimal_forms(2, &unit, in_h).unwrap();
        assert_eq!(h2.len(), 4);
    }

    #[test]
    fn b_elements_up_to_length_eight() {
        let unit = Weight::unit();
        let bs = enumerate_minimal_forms(8, &unit, in_b).unwrap();
        assert_eq!(bs.len(), 40);
    }

    #[test]
    fn minimal_form_is_equal_and_idempotent() {
        let p = Weight::tuned();
        for word in ["abacabad", "dadadad", "cacacaca", "bab"] {
            let m = minimal_form(&w(word), &p).unwrap();
            assert!(words_equal(&m, &w(word)));
            assert_eq!(minimal_form(&m, &p).unwrap(), m);
            assert!(p.word_units(&m) <= p.word_units(&w(word)));
        }
    }
}
