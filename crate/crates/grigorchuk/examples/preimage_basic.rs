//! The length-4 constructor: any pair in psi(H) has a preimage of length
//! at most about four times the longer component.

use grigorchuk::group::{in_psi_h, psi, psi_preimage_basic, words_equal};
use grigorchuk::word::w;
use grigorchuk::PairWord;

fn main() -> grigorchuk::Result<()> {
    for (u0, u1) in [("dada", "dada"), ("b", "c"), ("abac", "d"), ("-", "-")] {
        let p = PairWord(w(u0), w(u1));
        if !in_psi_h(&p) {
            println!("{p} is not in psi(H)");
            continue;
        }
        let v = psi_preimage_basic(&p)?;
        let back = psi(&v)?;
        let ok = words_equal(&back.0, &p.0) && words_equal(&back.1, &p.1);
        println!("{p}: {v} (length {}), psi matches: {ok}", v.len());
    }
    Ok(())
}
