//! Hash-consed portraits: canonical group elements with O(1) equality.
//!
//! An element is either an atom (`1, a, b, c, d`) or a node
//! `(swap; left, right)` whose children are again canonical. Nodes are
//! interned by `(swap, left, right)`, and the atoms are registered under
//! their own decompositions (`b = (a, c)` and so on), so an element has
//! exactly one id no matter which word produced it.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::group::{free_reduce, sections};
use crate::word::{BinaryString, Gen, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(u32);

impl Element {
    pub const ONE: Element = Element(0);
    pub const A: Element = Element(1);
    pub const B: Element = Element(2);
    pub const C: Element = Element(3);
    pub const D: Element = Element(4);

    pub fn id(self) -> u32 {
        self.0
    }

    pub fn is_one(self) -> bool {
        self == Element::ONE
    }

    pub fn atom(g: Gen) -> Element {
        match g {
            Gen::A => Element::A,
            Gen::B => Element::B,
            Gen::C => Element::C,
            Gen::D => Element::D,
        }
    }

    /// `(swap, left, right)` of this element.
    pub fn node(self) -> (bool, Element, Element) {
        store().read().unwrap().nodes[self.0 as usize]
    }

    /// Apply the element to a binary string.
    pub fn act(self, s: &BinaryString) -> BinaryString {
        let st = store().read().unwrap();
        let mut out = s.0.clone();
        let mut cur = self;
        for bit in out.iter_mut() {
            if cur.is_one() {
                break;
            }
            let (swap, l, r) = st.nodes[cur.0 as usize];
            let next = if *bit { r } else { l };
            *bit ^= swap;
            cur = next;
        }
        BinaryString(out)
    }
}

struct Store {
    nodes: Vec<(bool, Element, Element)>,
    index: HashMap<(bool, Element, Element), Element>,
    words: HashMap<Vec<Gen>, Element>,
    products: HashMap<(Element, Element), Element>,
}

fn store() -> &'static RwLock<Store> {
    static STORE: OnceLock<RwLock<Store>> = OnceLock::new();
    STORE.get_or_init(|| {
        use Element as E;
        let nodes = vec![
            (false, E::ONE, E::ONE),
            (true, E::ONE, E::ONE),
            (false, E::A, E::C),
            (false, E::A, E::D),
            (false, E::ONE, E::B),
        ];
        let index = nodes.iter().enumerate().map(|(i, &n)| (n, Element(i as u32))).collect();
        RwLock::new(Store { nodes, index, words: HashMap::new(), products: HashMap::new() })
    })
}

fn intern(node: (bool, Element, Element)) -> Element {
    if let Some(&e) = store().read().unwrap().index.get(&node) {
        return e;
    }
    let mut st = store().write().unwrap();
    if let Some(&e) = st.index.get(&node) {
        return e;
    }
    let e = Element(st.nodes.len() as u32);
    st.nodes.push(node);
    st.index.insert(node, e);
    e
}

/// The canonical element represented by `w`.
pub fn element_of(w: &Word) -> Element {
    reduced_element(&free_reduce(w))
}

fn reduced_element(r: &Word) -> Element {
    match r.len() {
        0 => return Element::ONE,
        1 => return Element::atom(r.0[0]),
        _ => {}
    }
    if let Some(&e) = store().read().unwrap().words.get(&r.0) {
        return e;
    }
    // sections of a reduced word of length >= 2 are strictly shorter
    let (swap, w0, w1) = sections(r);
    let e = intern((swap, reduced_element(&w0), reduced_element(&w1)));
    store().write().unwrap().words.insert(r.0.clone(), e);
    e
}

fn atom_gen(e: Element) -> Option<Gen> {
    match e {
        Element::A => Some(Gen::A),
        Element::B => Some(Gen::B),
        Element::C => Some(Gen::C),
        Element::D => Some(Gen::D),
        _ => None,
    }
}

/// The product `xy` (act by `x`, then by `y`).
pub fn mul(x: Element, y: Element) -> Element {
    if x.is_one() {
        return y;
    }
    if y.is_one() {
        return x;
    }
    if let (Some(g), Some(h)) = (atom_gen(x), atom_gen(y)) {
        return reduced_element(&free_reduce(&Word(vec![g, h])));
    }
    if let Some(&e) = store().read().unwrap().products.get(&(x, y)) {
        return e;
    }
    let (sx, x0, x1) = x.node();
    let (sy, y0, y1) = y.node();
    let (z0, z1) = if sx { (mul(x0, y1), mul(x1, y0)) } else { (mul(x0, y0), mul(x1, y1)) };
    let e = intern((sx ^ sy, z0, z1));
    store().write().unwrap().products.insert((x, y), e);
    e
}

/// Number of interned elements so far.
pub fn store_size() -> usize {
    store().read().unwrap().nodes.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::act;
    use crate::word::w;

    #[test]
    fn examples() {
        assert_eq!(element_of(&w("dada")), element_of(&w("adad")));
        assert_eq!(element_of(&w("aa")), element_of(&Word::empty()));
        assert_ne!(element_of(&w("ab")), element_of(&w("ba")));
        assert_eq!(element_of(&w("adadadad")), Element::ONE);
        assert_eq!(element_of(&w("cd")), Element::B);
        assert_eq!(element_of(&w("acaaca")), Element::ONE);
        for (u, v) in [("ab", "ca"), ("dada", "dada"), ("bacab", "adacab"), ("b", "b"), ("abadac", "c")] {
            assert_eq!(mul(element_of(&w(u)), element_of(&w(v))), element_of(&w(u).concat(&w(v))), "{u}·{v}");
        }
    }

    #[test]
    fn atoms_are_recognised_from_long_words() {
        // (aca)(aba) has sections (d, a)(c, a) = (dc, aa) = (b, 1), which is ada
        assert_eq!(element_of(&w("acaaba")), element_of(&w("ada")));
    }

    #[test]
    fn portrait_action_matches_word_action() {
        for word in ["abacabad", "dacab", "cadabacad", "b"] {
            let e = element_of(&w(word));
            for s in BinaryString::all_of_len(6) {
                assert_eq!(e.act(&s), act(&w(word), &s), "{word} on {s}");
            }
        }
    }
}
