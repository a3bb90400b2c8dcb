//! Controlled invariance, the sets Q_u, and semi-conjugacy of two systems.

use invariance_entropy::fixtures;
use invariance_entropy::model::{is_semi_conjugacy, ConjugacyPair, Invariance};
use invariance_entropy::{Result, UncertainSystem};

fn main() -> Result<()> {
    let sys = fixtures::ex4();
    let q = sys.state_set(&["0", "1", "2", "3", "4"])?;
    for u in 0..sys.num_inputs() {
        println!("Q_{} = {}", sys.input_id(u), sys.set_string(sys.q_u(q, u)?));
    }
    match sys.is_controlled_invariant(q)? {
        Invariance::Invariant(w) => {
            let picks: Vec<String> = w.iter().map(|&(x, u)| format!("{}->{}", sys.state_id(x), sys.input_id(u))).collect();
            println!("Q is controlled invariant: {}", picks.join(" "));
        }
        Invariance::Violated(v) => println!("Q is not controlled invariant; violating {}", sys.set_string(v)),
    }

    // Merging states 2, 3 and inputs a, b maps `big` onto a three-cycle.
    let big = UncertainSystem::from_edges(
        "big",
        &["0", "1", "2", "3"],
        &["a", "b"],
        &[
            ("0", "a", &["2"]),
            ("0", "b", &["3"]),
            ("1", "a", &["0"]),
            ("1", "b", &["0"]),
            ("2", "a", &["1", "3"]),
            ("2", "b", &["1"]),
            ("3", "a", &["1", "2"]),
            ("3", "b", &["1"]),
        ],
    )?;
    let small = UncertainSystem::from_edges(
        "small",
        &["0", "1", "2"],
        &["a"],
        &[("0", "a", &["2"]), ("1", "a", &["0"]), ("2", "a", &["1"])],
    )?;
    let pair = ConjugacyPair { state_map: vec![0, 1, 2, 2], input_map: vec![0, 0] };
    println!("semi-conjugacy big -> small: {}", is_semi_conjugacy(&big, &small, &pair));
    Ok(())
}
