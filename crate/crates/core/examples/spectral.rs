//! Exact log values, spectral radius enclosures and the structural rho = 1 test.

use invariance_entropy::graphnum::{rho_is_one, spectral_radius, structural_radius, CountMatrix, LogValue, DEFAULT_TOL};
use invariance_entropy::Result;

fn main() -> Result<()> {
    let third = LogValue::from_u64(3, 2);
    println!("{} = {}", third.exact_string(), third.decimal_string());
    println!("(1/2)log2(4) == log2(2): {}", LogValue::from_u64(4, 2) == LogValue::from_u64(2, 1));

    let w = CountMatrix::from_u64(&[vec![0, 0, 2, 2], vec![0, 0, 1, 0], vec![2, 2, 0, 0], vec![0, 0, 0, 1]]);
    let r = spectral_radius(&w, DEFAULT_TOL)?;
    println!("rho(W) in [{:.12}, {:.12}], sqrt(6) = {:.12}", r.lo, r.hi, 6f64.sqrt());

    let cycle = CountMatrix::from_u64(&[vec![0, 1, 1], vec![1, 0, 0], vec![0, 0, 1]]);
    println!("rho = 1 structurally: {} ({:?})", rho_is_one(&cycle), structural_radius(&cycle).is_some());
    Ok(())
}
