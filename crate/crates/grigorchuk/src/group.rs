//! The tree action of `a, b, c, d`, free reduction, sections and the
//! contraction word problem, plus the homomorphisms `σ`, `τ` and the
//! membership tests for `H` and `B`.
//!
//! Words act left to right: `act(uv, s) = act(v, act(u, s))`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::error::Error;
use crate::word::{BinaryString, Gen, PairWord, Word};

/// Apply one generator to a binary string in place, starting at `pos`.
fn act_letter(g: Gen, s: &mut [bool], mut pos: usize) {
    let mut g = Some(g);
    while let Some(cur) = g {
        if pos >= s.len() {
            return;
        }
        let bit = s[pos];
        g = match cur {
            Gen::A => {
                s[pos] = !bit;
                None
            }
            Gen::B => Some(if bit { Gen::C } else { Gen::A }),
            Gen::C => Some(if bit { Gen::D } else { Gen::A }),
            Gen::D => {
                if bit {
                    Some(Gen::B)
                } else {
                    None
                }
            }
        };
        pos += 1;
    }
}

/// Image of `s` under the word `w`.
pub fn act(w: &Word, s: &BinaryString) -> BinaryString {
    let mut bits = s.0.clone();
    for &g in w.letters() {
        act_letter(g, &mut bits, 0);
    }
    BinaryString(bits)
}

/// Cancel equal neighbours and merge two distinct letters of `{b,c,d}`
/// into the third, until neither rule applies.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Gen> = Vec::with_capacity(w.len());
    for &x in w.letters() {
        let mut cur = x;
        loop {
            match out.last().copied() {
                Some(t) if t == cur => {
                    out.pop();
                    break;
                }
                Some(t) if t != Gen::A && cur != Gen::A => {
                    out.pop();
                    cur = t.third(cur);
                }
                _ => {
                    out.push(cur);
                    break;
                }
            }
        }
    }
    Word(out)
}

/// Section table: the restrictions of `b, c, d` to the subtrees `0` and `1`.
fn section_of(g: Gen, side: usize) -> Option<Gen> {
    match (g, side) {
        (Gen::B, 0) | (Gen::C, 0) => Some(Gen::A),
        (Gen::B, _) => Some(Gen::C),
        (Gen::C, _) => Some(Gen::D),
        (Gen::D, 0) => None,
        (Gen::D, _) => Some(Gen::B),
        (Gen::A, _) => None,
    }
}

/// Root swap bit and the two sections of `w`: `w(iσ) = (i ⊕ swap) w_i(σ)`.
/// Sections are free-reduced.
pub fn sections(w: &Word) -> (bool, Word, Word) {
    let mut out = [Vec::new(), Vec::new()];
    for (i, sec) in out.iter_mut().enumerate() {
        let mut side = i;
        for &g in w.letters() {
            if g == Gen::A {
                side ^= 1;
            } else if let Some(s) = section_of(g, side) {
                sec.push(s);
            }
        }
    }
    let swap = w.count(Gen::A) % 2 == 1;
    let [w0, w1] = out;
    (swap, free_reduce(&Word(w0)), free_reduce(&Word(w1)))
}

/// `w` preserves the first letter, i.e. has an even number of `a`.
pub fn in_h(w: &Word) -> bool {
    w.count(Gen::A) % 2 == 0
}

/// `ψ(w) = (w₀, w₁)` for `w ∈ H`.
pub fn psi(w: &Word) -> Result<PairWord, Error> {
    if !in_h(w) {
        return Err(Error::Contract(format!("psi: {w} is not in H")));
    }
    let (_, w0, w1) = sections(&free_reduce(w));
    Ok(PairWord(w0, w1))
}

fn trivial_memo() -> &'static RwLock<HashMap<Vec<Gen>, bool>> {
    static MEMO: OnceLock<RwLock<HashMap<Vec<Gen>, bool>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Word problem by contraction: reduce, reject an odd number of `a`,
/// then recurse on both sections, which are strictly shorter.
pub fn is_trivial(w: &Word) -> bool {
    let r = free_reduce(w);
    trivial_reduced(&r)
}

fn trivial_reduced(r: &Word) -> bool {
    if r.is_empty() {
        return true;
    }
    if r.len() <= 1 || !in_h(r) {
        return false;
    }
    if let Some(&v) = trivial_memo().read().unwrap().get(&r.0) {
        return v;
    }
    let (_, w0, w1) = sections(r);
    let v = trivial_reduced(&w0) && trivial_reduced(&w1);
    trivial_memo().write().unwrap().insert(r.0.clone(), v);
    v
}

/// `u = v` in `G`.
pub fn words_equal(u: &Word, v: &Word) -> bool {
    is_trivial(&u.concat(&v.inverse()))
}

/// `σ: a ↦ aca, b ↦ d, c ↦ b, d ↦ c`.
pub fn sigma(w: &Word) -> Word {
    let mut out = Vec::with_capacity(3 * w.len());
    for &g in w.letters() {
        match g {
            Gen::A => out.extend_from_slice(&[Gen::A, Gen::C, Gen::A]),
            Gen::B => out.push(Gen::D),
            Gen::C => out.push(Gen::B),
            Gen::D => out.push(Gen::C),
        }
    }
    free_reduce(&Word(out))
}

/// `τ: a ↦ d, b ↦ 1, c ↦ a, d ↦ a`.
pub fn tau(w: &Word) -> Word {
    let out: Vec<Gen> = w
        .letters()
        .iter()
        .filter_map(|&g| match g {
            Gen::A => Some(Gen::D),
            Gen::B => None,
            Gen::C | Gen::D => Some(Gen::A),
        })
        .collect();
    free_reduce(&Word(out))
}

/// Elements of the dihedral quotient `G/B` of order 8, as permutations of four points.
pub type D8 = [u8; 4];

const D8_ONE: D8 = [0, 1, 2, 3];
const D8_A: D8 = [1, 0, 3, 2];
const D8_D: D8 = [0, 3, 2, 1];

fn d8_mul(x: D8, y: D8) -> D8 {
    // left to right: first x, then y
    [y[x[0] as usize], y[x[1] as usize], y[x[2] as usize], y[x[3] as usize]]
}

/// Image of `w` in `G/B ≅ D₈`: `a ↦ A`, `c, d ↦ D`, `b ↦ 1`.
pub fn quotient_b(w: &Word) -> D8 {
    w.letters().iter().fold(D8_ONE, |acc, &g| match g {
        Gen::A => d8_mul(acc, D8_A),
        Gen::C | Gen::D => d8_mul(acc, D8_D),
        Gen::B => acc,
    })
}

/// The automorphism of `D₈` exchanging `A` and `D`.
fn d8_flip(x: D8) -> D8 {
    let elems = d8_elements();
    for (word, e) in &elems {
        if *e == x {
            let flipped: Vec<Gen> = word.iter().map(|&g| if g == Gen::A { Gen::D } else { Gen::A }).collect();
            return quotient_b(&Word(flipped));
        }
    }
    unreachable!("every D8 element has a word in A, D")
}

fn d8_elements() -> Vec<(Vec<Gen>, D8)> {
    let words: [&[Gen]; 8] = [
        &[],
        &[Gen::A],
        &[Gen::D],
        &[Gen::A, Gen::D],
        &[Gen::D, Gen::A],
        &[Gen::A, Gen::D, Gen::A],
        &[Gen::D, Gen::A, Gen::D],
        &[Gen::A, Gen::D, Gen::A, Gen::D],
    ];
    words.iter().map(|w| (w.to_vec(), quotient_b(&Word(w.to_vec())))).collect()
}

/// `w ∈ B`, the normal closure of `b` (index 8).
pub fn in_b(w: &Word) -> bool {
    quotient_b(w) == D8_ONE
}

/// `(u₀, u₁) ∈ ψ(H)`: the pair lies in the image of `H` under `ψ`.
///
/// Decided in `D₈ × D₈`: `ψ(H)` is the preimage of the graph of the
/// automorphism `A ↔ D`, since `ψ(d) = (1, b)`, `ψ(c) = (a, d)`, ...
/// all satisfy `π(h₁) = flip(π(h₀))`.
pub fn in_psi_h(p: &PairWord) -> bool {
    quotient_b(&p.1) == d8_flip(quotient_b(&p.0))
}

/// The η=4 construction `h = a σ(h₀) a σ(τ(h₀)⁻¹ h₁)`, checked afterwards.
pub fn psi_preimage_basic(p: &PairWord) -> Result<Word, Error> {
    let (h0, h1) = (&p.0, &p.1);
    let first = Word(vec![Gen::A]).concat(&sigma(h0)).concat(&Word(vec![Gen::A]));
    let second = sigma(&tau(h0).inverse().concat(h1));
    let h = free_reduce(&first.concat(&second));
    let img = psi(&h)?;
    if words_equal(&img.0, h0) && words_equal(&img.1, h1) {
        Ok(h)
    } else {
        Err(Error::NotInPsiH(format!("{p} has no preimage in H")))
    }
}

/// Free-reduced words of length exactly `n` (no equal neighbours, no two adjacent letters of `{b,c,d}`).
pub fn reduced_words(n: usize) -> Vec<Word> {
    if n == 0 {
        return vec![Word::empty()];
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, cur: &mut Vec<Gen>, out: &mut Vec<Word>) {
        if cur.len() == n {
            out.push(Word(cur.clone()));
            return;
        }
        for g in Gen::ALL {
            if let Some(&last) = cur.last() {
                if last == g || (last != Gen::A && g != Gen::A) {
                    continue;
                }
            }
            cur.push(g);
            rec(n, cur, out);
            cur.pop();
        }
    }
    rec(n, &mut cur, &mut out);
    out
}
