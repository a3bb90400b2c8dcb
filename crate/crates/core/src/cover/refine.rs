//! Derived partitions, refinements of `(A_V, G_V)`, the atom refinement and
//! invariance feedback entropy.

use num_bigint::BigUint;

use super::expansion::cover_rinv;
use super::invariant::{build_cover, InvariantCover};
use super::mmcw::{mmcw, Entropy};
use crate::error::{Error, Result};
use crate::graphnum::LogValue;
use crate::model::{InputSet, StateSet, UncertainSystem};
use crate::spanning::check_conditions;

/// `A'_j = A_j ∖ ⋃_{i<j} A_i` with `G'(A'_j) = G(A_j)`, in stored cell order.
pub fn derived_partition(sys: &UncertainSystem, cover: &InvariantCover) -> Result<InvariantCover> {
    let order: Vec<usize> = (0..cover.len()).collect();
    derived_partition_ordered(sys, cover, &order)
}

/// As [`derived_partition`], taking cells in the given order (a permutation of
/// cell positions). The residual cells keep their ids.
pub fn derived_partition_ordered(
    sys: &UncertainSystem,
    cover: &InvariantCover,
    order: &[usize],
) -> Result<InvariantCover> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..cover.len()).collect::<Vec<_>>() {
        return Err(Error::InvalidCover("cell order is not a permutation of the cells".into()));
    }
    cover.require_quasi()?;
    let mut taken = StateSet::EMPTY;
    let mut cells = Vec::with_capacity(order.len());
    for &j in order {
        let c = &cover.cells()[j];
        let residual = c.states.difference(taken);
        if residual.is_empty() {
            return Err(Error::EmptyResidualCell { cell: c.id.clone() });
        }
        taken = taken.union(c.states);
        cells.push((c.id.clone(), residual, c.input));
    }
    build_cover(sys, cover.target(), cells)
}

/// The singleton partition `{{x} : x ∈ Q}` with `G({x})` the unique `a ∈ V`
/// having `x ∈ Q_a`. Requires (C.1)–(C.3) and `♯(F(x,a) ∩ Q_b) ≤ 1` for all
/// `a, b ∈ V`, `x ∈ Q_a`. Cell ids are the state ids.
pub fn atom_refinement(sys: &UncertainSystem, target: StateSet, inputs: InputSet) -> Result<InvariantCover> {
    sys.require_controlled_invariant(target)?;
    let report = check_conditions(sys, target, inputs)?;
    if !report.all_ok() {
        return Err(Error::ConditionsNotMet { report: Box::new(report), upper_bound: None });
    }
    let q = sys.q_all(target);
    for a in inputs.iter() {
        for x in q[a].iter() {
            for b in inputs.iter() {
                if sys.image(x, a).intersection(q[b]).len() > 1 {
                    return Err(Error::NotAtomRefinable {
                        state: sys.state_id(x).to_string(),
                        input: sys.input_id(a).to_string(),
                        cell_input: sys.input_id(b).to_string(),
                    });
                }
            }
        }
    }
    let cells = target
        .iter()
        .map(|x| {
            let a = inputs.iter().find(|&a| q[a].contains(x)).expect("V covers Q");
            (sys.state_id(x).to_string(), StateSet::singleton(x), a)
        })
        .collect();
    build_cover(sys, target, cells)
}

/// How a reported entropy value relates to `h_fb(Q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certainty {
    Exact,
    UpperBound,
}

#[derive(Clone, Debug)]
pub struct IfeResult {
    pub value: Entropy,
    pub certainty: Certainty,
    /// The cover realizing the value.
    pub cover: InvariantCover,
}

/// `h_fb(Q)` as the maximum mean weight of the atom refinement. Without an atom
/// refinement, the best refinement found within `budget` gives an upper bound.
pub fn ife(sys: &UncertainSystem, target: StateSet, inputs: InputSet, budget: u64) -> Result<IfeResult> {
    match atom_refinement(sys, target, inputs) {
        Ok(cover) => {
            let m = mmcw(&cover)?;
            let certainty = if m.is_exact() { Certainty::Exact } else { Certainty::UpperBound };
            Ok(IfeResult { value: m.value, certainty, cover })
        }
        Err(Error::NotAtomRefinable { .. }) => {
            let opts = SearchOptions { budget, ..SearchOptions::default() };
            let found = refinement_search(sys, target, inputs, &opts)?;
            Ok(IfeResult { value: found.value, certainty: Certainty::UpperBound, cover: found.cover })
        }
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Candidate covers examined beyond the coarsest one.
    pub budget: u64,
    /// Largest number of cells considered; defaults to `♯Q`, the size of the
    /// largest irredundant cover.
    pub max_cells: Option<usize>,
    /// Horizons `1..=horizon` used to bound covers that are not quasi-invariant-partitions.
    pub horizon: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { budget: crate::spanning::DEFAULT_BUDGET, max_cells: None, horizon: 8 }
    }
}

/// How a refinement was scored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scoring {
    /// Exact entropy of a quasi-invariant-partition.
    MaxMeanWeight,
    /// `min_n log₂ r_inv(n, Q, B, G_B) / n`, an upper bound on its entropy.
    ExpansionBound,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// Upper bound on `h_fb(Q)`.
    pub value: Entropy,
    pub scoring: Scoring,
    pub cover: InvariantCover,
    /// Candidate covers examined, excluding the coarsest.
    pub examined: u64,
    /// False when the budget ran out before all refinements were seen.
    pub complete: bool,
}

/// Scores refinements of `(A_V, G_V)` (covers of `Q` by nonempty subsets of the
/// `Q_a`, `a ∈ V`) in nondecreasing cell count, keeping the smallest value.
/// The coarsest refinement is always scored and is not charged to the budget.
pub fn refinement_search(
    sys: &UncertainSystem,
    target: StateSet,
    inputs: InputSet,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    if opts.horizon == 0 {
        return Err(Error::HorizonZero);
    }
    sys.require_controlled_invariant(target)?;
    let report = check_conditions(sys, target, inputs)?;
    if !report.all_ok() {
        return Err(Error::ConditionsNotMet { report: Box::new(report), upper_bound: None });
    }
    let q = sys.q_all(target);
    let blocks: Vec<usize> = inputs.iter().filter(|&a| !q[a].is_empty()).collect();

    let coarsest: Vec<(StateSet, usize)> = blocks.iter().map(|&a| (q[a], a)).collect();
    let (value, scoring, cover) = score(sys, target, &coarsest, opts.horizon)?;
    let mut best = (value, scoring, cover);

    // Candidate cells: every nonempty subset of every Q_a, by block then mask.
    let mut cands: Vec<(StateSet, usize)> = Vec::new();
    for &a in &blocks {
        let members: Vec<usize> = q[a].iter().collect();
        if members.len() > 20 {
            return Err(Error::SearchBudgetExceeded {
                search: "refinement search",
                budget: opts.budget,
                incumbent: None,
            });
        }
        for mask in 1u64..(1 << members.len()) {
            let set: StateSet = (0..members.len()).filter(|i| mask >> i & 1 == 1).map(|i| members[i]).collect();
            cands.push((set, a));
        }
    }
    let max_cells = opts.max_cells.unwrap_or(target.len()).min(cands.len());
    let mut examined = 0u64;
    let mut complete = true;
    'sizes: for k in 1..=max_cells {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if examined >= opts.budget {
                complete = false;
                break 'sizes;
            }
            examined += 1;
            let union = idx.iter().fold(StateSet::EMPTY, |acc, &i| acc.union(cands[i].0));
            let chosen: Vec<(StateSet, usize)> = idx.iter().map(|&i| cands[i]).collect();
            if union == target && chosen != coarsest {
                let (v, s, c) = score(sys, target, &chosen, opts.horizon)?;
                if better(&v, &best.0) {
                    best = (v, s, c);
                }
            }
            if !next_combination(&mut idx, cands.len()) {
                break;
            }
        }
    }
    let (value, scoring, cover) = best;
    Ok(SearchOutcome { value, scoring, cover, examined, complete })
}

/// Entropy of one refinement: exact for quasi-invariant-partitions, otherwise
/// the best finite-horizon expansion bound.
fn score(
    sys: &UncertainSystem,
    target: StateSet,
    cells: &[(StateSet, usize)],
    horizon: usize,
) -> Result<(Entropy, Scoring, InvariantCover)> {
    let named = cells
        .iter()
        .enumerate()
        .map(|(i, &(s, a))| (format!("B{i}"), s, a))
        .collect();
    let cover = build_cover(sys, target, named)?;
    if cover.is_quasi_invariant_partition() {
        let m = mmcw(&cover)?;
        if m.is_exact() {
            return Ok((m.value, Scoring::MaxMeanWeight, cover));
        }
    }
    let mut bound: Option<LogValue> = None;
    for n in 1..=horizon {
        let r: BigUint = cover_rinv(&cover, n)?.value;
        let v = LogValue::new(r, n as u64);
        if bound.as_ref().is_none_or(|b| v < *b) {
            bound = Some(v);
        }
    }
    Ok((Entropy::Exact(bound.expect("horizon ≥ 1")), Scoring::ExpansionBound, cover))
}

fn better(a: &Entropy, b: &Entropy) -> bool {
    match (a, b) {
        (Entropy::Exact(x), Entropy::Exact(y)) => x < y,
        _ => a.to_f64() < b.to_f64(),
    }
}

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ex4_target(sys: &UncertainSystem) -> StateSet {
        sys.state_set(&["0", "1", "2", "3", "4"]).unwrap()
    }

    #[test]
    fn ex3_derived_partitions() {
        let (sys, a1) = fixtures::cover("ex3_a1");
        let d = derived_partition(&sys, &a1).unwrap();
        let cells: Vec<StateSet> = d.cells().iter().map(|c| c.states).collect();
        assert_eq!(cells, vec![sys.state_set(&["0", "1"]).unwrap(), sys.state_set(&["2"]).unwrap()]);
        let before = mmcw(&a1).unwrap().value.to_f64();
        assert!(mmcw(&d).unwrap().value.to_f64() <= before);

        let r = derived_partition_ordered(&sys, &a1, &[1, 0]).unwrap();
        let cells: Vec<StateSet> = r.cells().iter().map(|c| c.states).collect();
        assert_eq!(cells, vec![sys.state_set(&["1", "2"]).unwrap(), sys.state_set(&["0"]).unwrap()]);
        assert!(mmcw(&r).unwrap().value.to_f64() <= before);
    }

    #[test]
    fn partitions_are_their_own_derived_partition() {
        for name in ["ex3_a3", "ex4_a1", "ex4_a2"] {
            let (sys, c) = fixtures::cover(name);
            assert_eq!(derived_partition(&sys, &c).unwrap(), c);
        }
    }

    #[test]
    fn atom_refinements() {
        let sys = fixtures::ex4();
        let atoms = atom_refinement(&sys, ex4_target(&sys), sys.all_inputs()).unwrap();
        let (_, a2) = fixtures::cover("ex4_a2");
        let g = |c: &InvariantCover| c.cells().iter().map(|c| (c.states, c.input)).collect::<Vec<_>>();
        assert_eq!(g(&atoms), g(&a2));

        let sys = fixtures::ex2();
        let q = sys.state_set(&["0", "2"]).unwrap();
        let atoms = atom_refinement(&sys, q, sys.all_inputs()).unwrap();
        assert_eq!(atoms.cell_ids(), ["0", "2"]);
        assert!(matches!(
            atom_refinement(&sys, q, sys.input_set(&["a"]).unwrap()),
            Err(Error::ConditionsNotMet { .. })
        ));
    }

    #[test]
    fn not_atom_refinable() {
        // F(0,a) = {0,1} lands twice in Q_a = {0,1}.
        let sys = UncertainSystem::from_edges(
            "fork",
            &["0", "1"],
            &["a"],
            &[("0", "a", &["0", "1"]), ("1", "a", &["0"])],
        )
        .unwrap();
        let err = atom_refinement(&sys, sys.all_states(), sys.all_inputs()).unwrap_err();
        assert!(matches!(err, Error::NotAtomRefinable { ref state, .. } if state == "0"));
        let out = ife(&sys, sys.all_states(), sys.all_inputs(), 1000).unwrap();
        assert_eq!(out.certainty, Certainty::UpperBound);
    }

    #[test]
    fn ife_values() {
        let sys = fixtures::ex4();
        let r = ife(&sys, ex4_target(&sys), sys.all_inputs(), 1000).unwrap();
        assert_eq!(r.value, Entropy::Exact(LogValue::from_u64(2, 4)));
        assert_eq!(r.certainty, Certainty::Exact);

        let sys = fixtures::ex2();
        let r = ife(&sys, sys.state_set(&["0", "2"]).unwrap(), sys.all_inputs(), 1000).unwrap();
        assert_eq!(r.value, Entropy::Exact(LogValue::from_u64(2, 1)));

        let sys = fixtures::ex1();
        let r = ife(&sys, sys.state_set(&["0", "1"]).unwrap(), sys.all_inputs(), 1000).unwrap();
        assert_eq!(r.value, Entropy::Exact(LogValue::from_u64(2, 1)));
    }

    #[test]
    fn refinement_search_on_ex4() {
        let sys = fixtures::ex4();
        let q = ex4_target(&sys);
        let full = refinement_search(&sys, q, sys.all_inputs(), &SearchOptions::default()).unwrap();
        assert!(full.complete);
        assert_eq!(full.value, Entropy::Exact(LogValue::from_u64(2, 4)));
        assert_eq!(full.cover.len(), 5);

        let coarse = SearchOptions { budget: 0, ..SearchOptions::default() };
        let only = refinement_search(&sys, q, sys.all_inputs(), &coarse).unwrap();
        assert!(!only.complete);
        assert_eq!(only.cover.len(), 3);
        assert_eq!(only.value, Entropy::Exact(LogValue::from_u64(2, 2)));

        let small = SearchOptions { max_cells: Some(3), ..SearchOptions::default() };
        let three = refinement_search(&sys, q, sys.all_inputs(), &small).unwrap();
        assert!(three.complete);
        assert_eq!(three.value, Entropy::Exact(LogValue::from_u64(2, 2)));
    }

    #[test]
    fn combinations_are_lexicographic() {
        let mut idx = vec![0, 1];
        let mut seen = vec![idx.clone()];
        while next_combination(&mut idx, 4) {
            seen.push(idx.clone());
        }
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }
}
