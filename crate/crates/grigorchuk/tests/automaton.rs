use grigorchuk::automaton::graph::{Kind, Label, Origin, Transition};
use grigorchuk::automaton::repair::{attach_specials, repair_outputs};
use grigorchuk::automaton::verify::ViolationKind;
use grigorchuk::automaton::*;
use grigorchuk::group::{in_h, psi, words_equal};
use grigorchuk::word::w;
use grigorchuk::{Gen, PairWord, Weight, Word};
use proptest::prelude::*;
use std::sync::OnceLock;

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn without_comments(text: &str) -> String {
    text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect()
}

fn corrected() -> &'static Transducer {
    static T: OnceLock<Transducer> = OnceLock::new();
    T.get_or_init(|| Transducer::new(&parse_graph(&fixture("appendix_corrected.graph")).unwrap()).unwrap())
}

#[test]
fn appendix_census_is_160() {
    let g = parse_graph(&fixture("appendix.graph")).unwrap();
    let c = g.census();
    assert_eq!((c.input, c.declared_output, c.inline_output, c.special), (12, 6, 102, 40));
    assert_eq!(c.total(), 160);
}

#[test]
fn fixtures_round_trip() {
    for name in ["appendix.graph", "appendix_corrected.graph"] {
        let text = fixture(name);
        let s = serialize_graph(&parse_graph(&text).unwrap());
        assert_eq!(s, without_comments(&text), "{name}");
        assert_eq!(serialize_graph(&parse_graph(&s).unwrap()), s);
    }
}

#[test]
fn appendix_specials_regenerate() {
    let text = fixture("appendix.graph");
    let mut g = parse_graph(&text).unwrap();
    assert_eq!(attach_specials(&mut g, 8).unwrap(), 40);
    assert_eq!(serialize_graph(&g), without_comments(&text));
}

#[test]
fn corrected_fixture_regenerates() {
    let mut g = parse_graph(&fixture("appendix.graph")).unwrap();
    let repairs = repair_outputs(&mut g).unwrap();
    assert!(!repairs.is_empty());
    assert_eq!(serialize_graph(&g), without_comments(&fixture("appendix_corrected.graph")));
    assert!(verify_graph(&g).ok());
}

#[test]
fn appendix_first_loop() {
    let g = parse_graph(&fixture("appendix.graph")).unwrap();
    let s = g.initial().unwrap();
    let (i0, t0) = g.outgoing(s).find(|(_, t)| t.label == Label::Input(Gen::D, Gen::D)).unwrap();
    let (i1, t1) = g.outgoing(t0.to).find(|(_, t)| t.label == Label::Input(Gen::D, Gen::D)).unwrap();
    let (i2, t2) = g.outgoing(t1.to).next().unwrap();
    assert_eq!(t2.label, Label::Output(w("cacacaca")));
    assert_eq!(t2.to, s);
    // 2 * 15.2 / (4 * 2.06)
    assert!((walk_ratio(&g, &Weight::tuned(), &[i0, i1, i2]) - 3.6893).abs() < 1e-4);
}

#[test]
fn verify_finds_corrupted_labels() {
    let mut g = parse_graph(&fixture("appendix_corrected.graph")).unwrap();
    assert!(verify_graph(&g).ok());
    let i = g.transitions.iter().position(|t| !t.special && t.label == Label::Output(w("cacacaca"))).unwrap();
    g.transitions[i].label = Label::Output(w("acacacac"));
    let r = verify_graph(&g);
    // same element, same weight: still fine
    assert!(r.ok());
    g.transitions[i].label = Label::Output(w("caca"));
    let r = verify_graph(&g);
    assert_eq!(r.count(&ViolationKind::OutputEquation), 1);
    g.transitions[i].label = Label::Output(w("cacacac"));
    assert_eq!(verify_graph(&g).count(&ViolationKind::OutputNotInH), 1);
}

#[test]
fn verify_finds_missing_successor() {
    let mut g = parse_graph(&fixture("appendix_corrected.graph")).unwrap();
    let i = g.transitions.iter().position(|t| matches!(t.label, Label::Input(..)) && !t.special).unwrap();
    g.transitions.remove(i);
    assert!(verify_graph(&g).count(&ViolationKind::SuccessorCount) >= 1);
}

#[test]
fn special_edges_do_not_count_toward_eta() {
    let g = parse_graph(&fixture("appendix_corrected.graph")).unwrap();
    let a = max_cycle_ratio(&g, &g.weight, false).unwrap();
    let b = max_cycle_ratio(&g, &g.weight, true).unwrap();
    assert!(b.ratio >= a.ratio - 1e-9);
}

#[test]
fn witness_ratio_is_exact() {
    let g = parse_graph(&fixture("appendix.graph")).unwrap();
    let c = max_cycle_ratio(&g, &g.weight, false).unwrap();
    assert!((2.0 * c.out_weight / (c.in_weight0 + c.in_weight1) - c.ratio).abs() < 1e-12);
    assert_eq!(c.transitions.len(), c.modes.len());
}

#[test]
fn ratio_is_scale_invariant() {
    let g = parse_graph(&fixture("appendix_corrected.graph")).unwrap();
    let a = max_cycle_ratio(&g, &Weight::new(1.0, 3.33, 2.8, 1.06).unwrap(), false).unwrap().ratio;
    let b = max_cycle_ratio(&g, &Weight::new(2.0, 6.66, 5.6, 2.12).unwrap(), false).unwrap().ratio;
    assert!((a - b).abs() < 1e-7);
}

#[test]
fn two_state_cycle() {
    let mut g = TransducerGraph::new(Weight::unit());
    let s = g.add_state(PairWord::default(), Kind::Input, Origin::Declared);
    g.states[s].initial = true;
    let o = g.add_state(PairWord(w("da"), w("da")), Kind::Output, Origin::Inline);
    g.add_transition(Transition { from: s, to: o, label: Label::Input(Gen::D, Gen::D), swap: false, special: false, line: None });
    g.add_transition(Transition { from: o, to: s, label: Label::Output(w("adadad")), swap: false, special: false, line: None });
    let c = max_cycle_ratio(&g, &Weight::unit(), false).unwrap();
    assert!((c.ratio - 3.0).abs() < 1e-9);
}

#[test]
fn transduce_first_loop() {
    let r = corrected().run(&PairWord(w("dada"), w("dada"))).unwrap();
    assert_eq!(r.output, w("cacacaca"));
    let r = corrected().run(&PairWord::default()).unwrap();
    assert_eq!(r.output, Word::empty());
}

#[test]
fn transduce_rejects_pairs_outside_psi_h() {
    assert!(matches!(corrected().run(&PairWord(w("a"), w("-"))), Err(grigorchuk::Error::NotInPsiH(_))));
}

fn h_strategy() -> impl Strategy<Value = Word> {
    prop::collection::vec(0..4usize, 0..=14)
        .prop_map(|v| Word(v.into_iter().map(|i| Gen::ALL[i]).collect()))
        .prop_filter("in H", in_h)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transduce_is_sound(h in h_strategy()) {
        let t = corrected();
        let p = psi(&h).unwrap();
        let r = t.run(&p).unwrap();
        prop_assert!(words_equal(&r.output, &h));
        let omega = t.graph().weight;
        let m = grigorchuk::minform::element_weight_units(&p.0, &omega).unwrap().max(grigorchuk::minform::element_weight_units(&p.1, &omega).unwrap());
        prop_assert!(r.weight <= t.eta * grigorchuk::weight::to_real(m) + t.k + 1e-9);
    }

    #[test]
    fn serialized_graph_parses_back(seed in 0u64..1000) {
        // relabel one output transition with an equal word and round-trip
        let mut g = parse_graph(&fixture("appendix_corrected.graph")).unwrap();
        let outs: Vec<usize> = (0..g.transitions.len()).filter(|&i| g.transitions[i].label.is_output()).collect();
        let i = outs[seed as usize % outs.len()];
        if let Label::Output(v) = &g.transitions[i].label {
            let v2 = v.concat(&w("adadadad"));
            g.transitions[i].label = Label::Output(v2);
        }
        let s = serialize_graph(&g);
        prop_assert_eq!(serialize_graph(&parse_graph(&s).unwrap()), s);
    }
}
