//! Invariant covers: successor sets D(A), quasi-invariant partitions and the
//! minimal expansion number with an optimal strategy.

use invariance_entropy::cover::{cover_rinv, expansion_number};
use invariance_entropy::fixtures;
use invariance_entropy::Result;

fn main() -> Result<()> {
    for name in ["ex1", "ex3_a1", "ex4_a3"] {
        let (_, cover) = fixtures::cover(name);
        let ids = cover.cell_ids();
        println!("{name}: partition={} quasi={}", cover.is_partition(), cover.is_quasi_invariant_partition());
        for (i, id) in ids.iter().enumerate() {
            let d: Vec<&str> = cover.successors(i).iter().map(|&j| ids[j].as_str()).collect();
            println!("  D({id}) = {{{}}}", d.join(","));
        }
        for v in cover.quasi_violations() {
            println!("  {}", cover.describe(&v));
        }
    }

    let (_, ex1) = fixtures::cover("ex1");
    for n in 1..=6 {
        let best = cover_rinv(&ex1, n)?;
        let seqs = best.strategy.sequences(1 << 12).expect("small strategy");
        println!("n={n}: r_inv(n,Q,A,G)={} check={:?}", best.value, expansion_number(&ex1, &seqs));
    }
    Ok(())
}
