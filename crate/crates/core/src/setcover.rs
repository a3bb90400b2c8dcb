use std::collections::BTreeSet;

use crate::model::StateSet;

/// All inclusion-minimal subfamilies of `candidates` whose union contains
/// `target`, as sorted lists of candidate positions in lexicographic order.
///
/// At most 64 candidates are supported.
pub fn minimal_covers(target: StateSet, candidates: &[StateSet]) -> Vec<Vec<usize>> {
    assert!(candidates.len() <= 64, "at most 64 candidate sets");
    let mut found = BTreeSet::new();
    extend(target, candidates, 0, StateSet::EMPTY, &mut found);
    let mut out: Vec<Vec<usize>> = found
        .into_iter()
        .filter(|&mask| is_minimal(target, candidates, mask))
        .map(|mask| (0..64).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

fn extend(target: StateSet, cands: &[StateSet], chosen: u64, covered: StateSet, out: &mut BTreeSet<u64>) {
    let Some(e) = target.difference(covered).first() else {
        out.insert(chosen);
        return;
    };
    for (i, c) in cands.iter().enumerate() {
        if chosen >> i & 1 == 0 && c.contains(e) {
            extend(target, cands, chosen | 1 << i, covered.union(*c), out);
        }
    }
}

fn is_minimal(target: StateSet, cands: &[StateSet], mask: u64) -> bool {
    let union_without = |skip: usize| {
        (0..cands.len())
            .filter(|&i| i != skip && mask >> i & 1 == 1)
            .fold(StateSet::EMPTY, |acc, i| acc.union(cands[i]))
    };
    (0..cands.len())
        .filter(|&i| mask >> i & 1 == 1)
        .all(|i| !target.is_subset(union_without(i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_exactly_the_minimal_covers() {
        let s = |v: &[usize]| v.iter().copied().collect::<StateSet>();
        let cands = [s(&[0, 1]), s(&[1, 2]), s(&[2]), s(&[0])];
        let covers = minimal_covers(s(&[0, 1, 2]), &cands);
        assert_eq!(covers, vec![vec![0, 1], vec![0, 2], vec![1, 3]]);
        assert_eq!(minimal_covers(StateSet::EMPTY, &cands), vec![Vec::<usize>::new()]);
        assert!(minimal_covers(s(&[5]), &cands).is_empty());
    }

    #[test]
    fn agrees_with_subset_enumeration() {
        let cands: Vec<StateSet> = [3u64, 6, 12, 9, 5, 10, 15].iter().map(|&m| StateSet(m)).collect();
        let target = StateSet(15);
        let mut brute = Vec::new();
        for mask in 0u64..(1 << cands.len()) {
            let union = |m: u64| (0..cands.len()).filter(|i| m >> i & 1 == 1).fold(StateSet::EMPTY, |a, i| a.union(cands[i]));
            if !target.is_subset(union(mask)) {
                continue;
            }
            let minimal = (0..cands.len())
                .filter(|i| mask >> i & 1 == 1)
                .all(|i| !target.is_subset(union(mask & !(1 << i))));
            if minimal {
                brute.push((0..cands.len()).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>());
            }
        }
        brute.sort();
        assert_eq!(minimal_covers(target, &cands), brute);
    }
}
