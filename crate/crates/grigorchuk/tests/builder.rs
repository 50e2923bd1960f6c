use std::sync::OnceLock;

use grigorchuk::automaton::graph::Label;
use grigorchuk::automaton::{max_cycle_ratio, parse_graph, serialize_graph, verify_graph};
use grigorchuk::builder::*;
use grigorchuk::word::w;
use grigorchuk::{Error, PairWord, Weight};

fn built() -> &'static BuildOutput {
    static B: OnceLock<BuildOutput> = OnceLock::new();
    B.get_or_init(|| build(&BuildParams::new(Weight::tuned())).unwrap())
}

#[test]
fn quality_of_first_loop() {
    let q = quality(&PairWord(w("dada"), w("dada")), &w("cacacaca"), &Weight::tuned(), 0.0).unwrap();
    assert!((q - 8.24 / 15.2).abs() < 1e-9);
    assert!(quality(&PairWord::default(), &w("-"), &Weight::tuned(), 0.0).is_err());
    assert!(quality(&PairWord::default(), &w("ab"), &Weight::tuned(), 0.0).is_err());
}

#[test]
fn built_graph_verifies() {
    let g = &built().graph;
    let r = verify_graph(g);
    assert!(r.ok(), "{:?}", &r.violations[..r.violations.len().min(3)]);
    assert!(max_cycle_ratio(g, &g.weight, false).unwrap().ratio <= 4.0);
}

#[test]
fn built_graph_round_trips() {
    let s = serialize_graph(&built().graph);
    let g = parse_graph(&s).unwrap();
    assert_eq!(serialize_graph(&g), s);
    assert!(verify_graph(&g).ok());
}

#[test]
fn chosen_outputs_pass_the_threshold() {
    let p = BuildParams::new(Weight::tuned());
    let min = 2.0 / p.eta_prime;
    for e in built().log.iter().filter(|e| e.kind == "output") {
        assert!(e.quality.unwrap() >= min, "{e:?}");
        // the logged quality is the one the public formula gives
        let u = PairWord::parse(&e.state).unwrap();
        let v = w(e.label.as_deref().unwrap());
        assert!((quality(&u, &v, &p.weight, p.delta).unwrap() - e.quality.unwrap()).abs() < 1e-9);
    }
}

#[test]
fn start_state_stays_input() {
    let g = &built().graph;
    let s = g.initial().unwrap();
    assert!(g.outgoing(s).all(|(_, t)| matches!(t.label, Label::Input(..) | Label::Pad(_))));
}

#[test]
fn literal_threshold_also_verifies() {
    let mut p = BuildParams::new(Weight::tuned());
    p.threshold = Threshold::Literal;
    let g = build(&p).unwrap().graph;
    assert!(verify_graph(&g).ok());
}

#[test]
fn bad_params_are_rejected() {
    let mut p = BuildParams::new(Weight::tuned());
    p.eta_prime = 5.0;
    assert!(matches!(build(&p), Err(Error::Contract(_))));
    let mut p = BuildParams::new(Weight::tuned());
    p.delta = 0.0;
    assert!(build(&p).is_err());
}

#[test]
fn tiny_candidate_set_exceeds_budget() {
    let mut p = BuildParams::new(Weight::tuned());
    p.max_len = 2;
    p.state_budget = 300;
    assert!(matches!(build(&p), Err(Error::Budget(_))));
}
