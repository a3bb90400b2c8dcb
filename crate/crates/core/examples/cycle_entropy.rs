//! Entropy of quasi-invariant partitions: maximum mean cycle weight, the
//! spectral sandwich, and the W_m terms. Prints every value of the EX4 family.

use invariance_entropy::cover::{entropy_bounds, mmcw, wm_entropy_terms};
use invariance_entropy::fixtures;
use invariance_entropy::graphnum::DEFAULT_TOL;
use invariance_entropy::Result;

fn main() -> Result<()> {
    for name in ["ex3_a1", "ex3_a2", "ex3_a3", "ex4_a1", "ex4_a2", "ex4_a3"] {
        let (_, cover) = fixtures::cover(name);
        let ids = cover.cell_ids();
        let m = mmcw(&cover)?;
        let cycle = m.cycle.as_ref().map(|c| c.cells.iter().map(|&i| ids[i].clone()).collect::<Vec<_>>().join(" "));
        let b = entropy_bounds(&cover, DEFAULT_TOL)?;
        println!(
            "{name}: h = {} ({:.6}) cycle [{}]; rho(M) in [{:.9}, {:.9}], rho(W) in [{:.9}, {:.9}], |W|_inf = {}",
            m.value.exact().map_or("?".into(), |v| v.exact_string()),
            m.value.to_f64(),
            cycle.unwrap_or_default(),
            b.rho_m.lo,
            b.rho_m.hi,
            b.rho_w.lo,
            b.rho_w.hi,
            b.norm_linf,
        );
    }

    let (_, a1) = fixtures::cover("ex4_a1");
    for row in wm_entropy_terms(&a1, 8)? {
        println!("m={} max product={} cover r_inv={}", row.m, row.max_product, row.cover_rinv);
    }
    Ok(())
}
