//! Lower bound on log growth from a cycle ratio below 4.

use grigorchuk::growth::{alpha_of_eta, lower_bound_log_gamma, BoundParams};

fn main() -> grigorchuk::Result<()> {
    let eta = 3.83414;
    let alpha = alpha_of_eta(eta)?;
    println!("eta {eta} alpha {alpha:.4}");
    let p = BoundParams { eta, k: 20.0, l: 10.0, gamma_l: 60 };
    let mut n = 100.0;
    while n < 1e9 {
        let b = lower_bound_log_gamma(n, &p)?;
        println!("n {n:>12.0}  m {:>2}  log gamma >= {:>14.2}  / n^alpha {:.4}", b.m, b.log_gamma, b.log_gamma / f64::powf(n, alpha));
        n *= 10.0;
    }
    Ok(())
}
