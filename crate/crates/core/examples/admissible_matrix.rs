//! The admissible matrix M_{Q,V}, conditions C.1-C.3, and h_inv = log2 rho(M).

use invariance_entropy::fixtures;
use invariance_entropy::graphnum::DEFAULT_TOL;
use invariance_entropy::spanning::{admissible_matrix, check_conditions, finite_n_identity_check, h_inv_exact, DEFAULT_BUDGET};
use invariance_entropy::textio::{emit_tsv, matrix_table};
use invariance_entropy::Result;

fn main() -> Result<()> {
    let sys = fixtures::ex4();
    let q = fixtures::target(&sys);
    let v = sys.all_inputs();

    print!("{}", emit_tsv(&[matrix_table("M_QU", &admissible_matrix(&sys, q, v)?)]));
    println!("{}", check_conditions(&sys, q, v)?.summary());

    let h = h_inv_exact(&sys, q, v, DEFAULT_TOL)?;
    match &h.exact {
        Some(e) => println!("h_inv = {} (structural)", e.exact_string()),
        None => println!("h_inv in [{:.12}, {:.12}]", h.log2_rho.lo, h.log2_rho.hi),
    }
    for n in 2..=6 {
        let c = finite_n_identity_check(&sys, q, v, n, DEFAULT_BUDGET)?;
        println!("n={n}: r_inv={} |M^(n-1)|_1={} equal={}", c.r_inv, c.norm, c.holds);
    }
    Ok(())
}
