//! Invariance feedback entropy through the atom refinement, and the
//! refinement search used when no atom refinement exists.

use invariance_entropy::cover::{atom_refinement, ife, refinement_search, SearchOptions};
use invariance_entropy::fixtures;
use invariance_entropy::spanning::DEFAULT_BUDGET;
use invariance_entropy::Result;

fn main() -> Result<()> {
    for sys in [fixtures::ex2(), fixtures::ex4()] {
        let q = fixtures::target(&sys);
        let atoms = atom_refinement(&sys, q, sys.all_inputs())?;
        println!("{}: atom refinement has {} cells", sys.name(), atoms.len());
        let h = ife(&sys, q, sys.all_inputs(), DEFAULT_BUDGET)?;
        println!("  h_fb = {:?} ({:?})", h.value.to_f64(), h.certainty);
    }

    let sys = fixtures::ex4();
    let q = fixtures::target(&sys);
    for max_cells in [3, 5] {
        let opts = SearchOptions { max_cells: Some(max_cells), ..SearchOptions::default() };
        let out = refinement_search(&sys, q, sys.all_inputs(), &opts)?;
        println!(
            "refinements with <= {max_cells} cells: best {:.6} over {} examined (complete: {})",
            out.value.to_f64(),
            out.examined,
            out.complete
        );
    }
    Ok(())
}
