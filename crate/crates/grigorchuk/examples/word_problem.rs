//! The group on the binary tree: action, free reduction, the word problem,
//! and the two sections of an element of H.

use grigorchuk::group::{act, free_reduce, is_trivial, psi, sigma, tau, words_equal};
use grigorchuk::word::w;
use grigorchuk::BinaryString;

fn main() -> grigorchuk::Result<()> {
    for (word, s) in [("a", "01"), ("b", "0110"), ("d", "1110"), ("abac", "111")] {
        let x = BinaryString::parse(s)?;
        println!("{word} . {s} = {}", act(&w(word), &x));
    }

    println!("reduce(abbcd) = {}", free_reduce(&w("abbcd")));

    // (ad)^4 is the identity, (ad)^2 is not
    for word in ["adadadad", "adad", "bcd", "acabacabacab"] {
        println!("{word:>14} trivial: {}", is_trivial(&w(word)));
    }
    println!("abab == baba: {}", words_equal(&w("abab"), &w("baba")));

    let h = w("abacabad");
    println!("psi({h}) = {}", psi(&h)?);

    // psi(sigma(g)) = (tau(g), g)
    let g = w("adab");
    println!("sigma({g}) = {}, psi = {}, tau = {}", sigma(&g), psi(&sigma(&g))?, tau(&g));
    Ok(())
}
