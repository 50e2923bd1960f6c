//! Run a transducer on random pairs and compare the output weight with
//! the bound eta * max + K.

use grigorchuk::automaton::{parse_graph, Transducer};
use grigorchuk::group::psi;
use grigorchuk::{Gen, PairWord, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_h(rng: &mut ChaCha8Rng, len: usize) -> Word {
    let mut v = Vec::new();
    let mut a = 0;
    for _ in 0..len {
        let g = [Gen::A, Gen::B, Gen::C, Gen::D][rng.gen_range(0..4)];
        a += (g == Gen::A) as usize;
        v.push(g);
    }
    if a % 2 == 1 {
        v.push(Gen::A);
    }
    Word(v)
}

fn main() -> grigorchuk::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/appendix_corrected.graph");
    let t = Transducer::new(&parse_graph(&std::fs::read_to_string(path)?)?)?;
    println!("eta {:.4} K {:.3} {:?}", t.eta, t.k, t.k_parts);

    let r = t.run(&PairWord(grigorchuk::word::w("dada"), grigorchuk::word::w("dada")))?;
    println!("(dada,dada) -> {} weight {}", r.output, r.weight);

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let h = random_h(&mut rng, 14);
        let p = psi(&h)?;
        let r = t.run(&p)?;
        worst = worst.max(r.weight / r.bound);
    }
    println!("100 samples, largest weight/bound {worst:.3}");
    Ok(())
}
