//! Brute-force cross-checks of the spanning and cover searches.

use invariance_entropy::cover::cover_rinv;
use invariance_entropy::fixtures;
use invariance_entropy::oracle::{cover_rinv_exhaustive, r_inv_exhaustive};
use invariance_entropy::spanning::{r_inv, DEFAULT_BUDGET};
use invariance_entropy::Result;

fn main() -> Result<()> {
    for name in ["ex1", "ex2", "ex3", "ex4"] {
        let sys = fixtures::system(name);
        let q = fixtures::target(&sys);
        for n in 1..=3 {
            let fast = r_inv(&sys, q, q, n, DEFAULT_BUDGET)?.count;
            let slow = r_inv_exhaustive(&sys, q, q, n, DEFAULT_BUDGET)?;
            println!("{name} n={n}: search {fast}, exhaustive {slow}");
        }
    }
    let (_, c) = fixtures::cover("ex4_a1");
    for n in 1..=4 {
        println!("ex4_a1 n={n}: dp {}, exhaustive {}", cover_rinv(&c, n)?.value, cover_rinv_exhaustive(&c, n)?);
    }
    Ok(())
}
