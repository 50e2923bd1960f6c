use grigorchuk::element::{element_of, mul};
use grigorchuk::group::*;
use grigorchuk::word::w;
use grigorchuk::{BinaryString, Gen, PairWord, Word};
use proptest::prelude::*;

/// Oracle: act letter by letter, straight from the recursive definitions.
fn act_naive(word: &Word, s: &[bool]) -> Vec<bool> {
    let mut s = s.to_vec();
    for &g in word.letters() {
        let mut i = 0;
        if g == Gen::A {
            if let Some(x) = s.first_mut() {
                *x = !*x;
            }
            continue;
        }
        // b = (a,c), c = (a,d), d = (1,b): walk down the ones until a zero decides
        let mut cur = g;
        while i < s.len() {
            if !s[i] {
                let section = match cur {
                    Gen::B | Gen::C => true,
                    _ => false,
                };
                if section && i + 1 < s.len() {
                    s[i + 1] = !s[i + 1];
                }
                break;
            }
            cur = match cur {
                Gen::B => Gen::C,
                Gen::C => Gen::D,
                _ => Gen::B,
            };
            i += 1;
        }
    }
    s
}

fn acts_trivially_to_depth(word: &Word, depth: usize) -> bool {
    BinaryString::all_of_len(depth).all(|s| act_naive(word, &s.0) == s.0)
}

fn word_strategy(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..4usize, 0..=max).prop_map(|v| Word(v.into_iter().map(|i| Gen::ALL[i]).collect()))
}

#[test]
fn action_matches_naive_definition() {
    for n in 0..=5 {
        for word in reduced_words(n) {
            for s in BinaryString::all_of_len(6) {
                assert_eq!(act(&word, &s).0, act_naive(&word, &s.0), "{word} on {s}");
            }
        }
    }
}

#[test]
fn word_problem_agrees_with_action_up_to_six() {
    for n in 0..=6 {
        for word in reduced_words(n) {
            assert_eq!(is_trivial(&word), acts_trivially_to_depth(&word, 8), "{word}");
        }
    }
}

#[test]
fn known_relations() {
    for r in ["aa", "bb", "cc", "dd", "bcd", "adadadad", "acacacacacacacac", "abababababababababababababababab"] {
        assert!(is_trivial(&w(r)), "{r}");
    }
    assert!(!is_trivial(&w("adad")));
    assert!(!is_trivial(&w("acacacac")));
}

#[test]
fn sigma_tau_identity_exhaustive_to_eight() {
    for n in 0..=8 {
        for g in reduced_words(n) {
            let s = sigma(&g);
            let p = psi(&s).unwrap();
            assert!(words_equal(&p.0, &tau(&g)) && words_equal(&p.1, &g), "{g}");
        }
    }
}

proptest! {
    #[test]
    fn free_reduce_keeps_the_element(v in word_strategy(30)) {
        let r = free_reduce(&v);
        prop_assert!(words_equal(&r, &v));
        prop_assert_eq!(free_reduce(&r), r.clone());
        prop_assert!(r.len() <= v.len());
    }

    #[test]
    fn inverse_cancels(v in word_strategy(30)) {
        prop_assert!(is_trivial(&v.concat(&v.inverse())));
    }

    #[test]
    fn action_is_a_homomorphism(u in word_strategy(12), v in word_strategy(12), s in prop::collection::vec(any::<bool>(), 0..10)) {
        let s = BinaryString(s);
        prop_assert_eq!(act(&u.concat(&v), &s), act(&v, &act(&u, &s)));
    }

    #[test]
    fn element_product(u in word_strategy(16), v in word_strategy(16)) {
        prop_assert_eq!(mul(element_of(&u), element_of(&v)), element_of(&u.concat(&v)));
    }

    #[test]
    fn element_equality_is_the_word_problem(u in word_strategy(10), v in word_strategy(10)) {
        prop_assert_eq!(element_of(&u) == element_of(&v), words_equal(&u, &v));
    }

    #[test]
    fn psi_is_multiplicative(u in word_strategy(14), v in word_strategy(14)) {
        prop_assume!(in_h(&u) && in_h(&v));
        let (pu, pv, puv) = (psi(&u).unwrap(), psi(&v).unwrap(), psi(&u.concat(&v)).unwrap());
        prop_assert!(words_equal(&pu.0.concat(&pv.0), &puv.0));
        prop_assert!(words_equal(&pu.1.concat(&pv.1), &puv.1));
    }

    #[test]
    fn basic_preimage_is_short_and_exact(h in word_strategy(14)) {
        prop_assume!(in_h(&h));
        let p = psi(&h).unwrap();
        prop_assert!(in_psi_h(&p));
        let (h0, h1) = (free_reduce(&p.0), free_reduce(&p.1));
        let v = psi_preimage_basic(&PairWord(h0.clone(), h1.clone())).unwrap();
        prop_assert!(words_equal(&v, &h));
        prop_assert!(v.len() <= 4 * h0.len().max(h1.len()) + 12);
    }

    #[test]
    fn b_membership_is_conjugation_invariant(u in word_strategy(12), x in word_strategy(12)) {
        let conj = x.inverse().concat(&u).concat(&x);
        prop_assert_eq!(in_b(&u), in_b(&conj));
    }
}
