//! Minimal spanning sets r_inv(n, Q) with certificates, and the growth table.

use invariance_entropy::fixtures;
use invariance_entropy::spanning::{check_admissible, entropy_report, enumerate_families, r_inv, DEFAULT_BUDGET};
use invariance_entropy::{ControlWord, Result};

fn main() -> Result<()> {
    let sys = fixtures::ex2();
    let q = sys.state_set(&["0", "2"])?;

    let family = vec![ControlWord(vec![0, 0]), ControlWord(vec![0, 1])];
    let verdict = check_admissible(&sys, q, 0, &family)?;
    println!("{{aa, ab}} admissible at 0: {}", verdict.is_admissible());
    println!("minimal families at 0, n=2: {:?}", enumerate_families(&sys, q, 0, 2, DEFAULT_BUDGET)?.len());

    let res = r_inv(&sys, q, q, 3, DEFAULT_BUDGET)?;
    let words: Vec<String> = res.certificate.words.iter().map(|w| sys.word_string(w)).collect();
    println!("r_inv(3) = {} via {}", res.count, words.join(" "));
    println!("certificate verifies: {}", res.certificate.verify(&sys, q, q));

    let ex1 = fixtures::ex1();
    let q1 = ex1.state_set(&["0", "1"])?;
    let report = entropy_report(&ex1, q1, q1, 6, DEFAULT_BUDGET)?;
    for row in &report.rows {
        let ratio = row.ratio.as_ref().map_or("-".into(), |r| r.decimal_string());
        println!("n={} r_inv={} log2(r)/n={ratio}", row.n, row.r_inv);
    }
    if let Some(ub) = report.upper_bound {
        println!("finite-horizon upper bound {}", ub.decimal_string());
    }
    Ok(())
}
