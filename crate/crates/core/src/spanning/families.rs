//! Enumeration of inclusion-minimal admissible families.
//!
//! The continuation of an admissible tree below a node depends only on the set
//! `I` at that node, the symbol applied there and the remaining depth, so the
//! enumeration is memoized on that triple.

use std::collections::HashMap;
use std::rc::Rc;

use super::words::WordCodec;
use crate::error::{Error, Result};
use crate::model::{ControlWord, StateSet, UncertainSystem};
use crate::setcover::minimal_covers;

/// A word set, as sorted word codes.
pub(crate) type CodeFamily = Vec<u64>;

pub(crate) struct FamilyEnumerator<'a> {
    sys: &'a UncertainSystem,
    target: StateSet,
    q_sets: Vec<StateSet>,
    codec: WordCodec,
    memo: HashMap<(StateSet, usize, usize), Rc<Vec<CodeFamily>>>,
    pub(crate) expansions: u64,
    budget: u64,
}

impl<'a> FamilyEnumerator<'a> {
    pub(crate) fn new(sys: &'a UncertainSystem, target: StateSet, n: usize, budget: u64) -> Result<Self> {
        Ok(Self {
            sys,
            target,
            q_sets: sys.q_all(target),
            codec: WordCodec::new(sys.num_inputs(), n)?,
            memo: HashMap::new(),
            expansions: 0,
            budget,
        })
    }

    pub(crate) fn codec(&self) -> WordCodec {
        self.codec
    }

    fn tick(&mut self, found: usize) -> Result<()> {
        self.expansions += 1;
        if self.expansions > self.budget {
            return Err(Error::SearchBudgetExceeded {
                search: "family enumeration",
                budget: self.budget,
                incumbent: Some(found as u64),
            });
        }
        Ok(())
    }

    /// Minimal admissible families of full length for the point `x`.
    pub(crate) fn for_point(&mut self, x: usize) -> Result<Vec<CodeFamily>> {
        let mut all = Vec::new();
        for u in 0..self.sys.num_inputs() {
            let fams = self.suffixes(StateSet::singleton(x), u, self.codec.word_len())?;
            all.extend(fams.iter().cloned());
        }
        Ok(all)
    }

    /// Minimal suffix families of length `h` whose first symbol `u` is applied to `set`.
    fn suffixes(&mut self, set: StateSet, u: usize, h: usize) -> Result<Rc<Vec<CodeFamily>>> {
        if let Some(hit) = self.memo.get(&(set, u, h)) {
            return Ok(Rc::clone(hit));
        }
        self.tick(0)?;
        let image = self.sys.image_of(set, u);
        let lead = u as u64 * self.codec.place(h - 1);
        let mut out: Vec<CodeFamily> = Vec::new();
        if h == 1 {
            if image.is_subset(self.target) {
                out.push(vec![u as u64]);
            }
        } else if image.is_subset(self.target) {
            for choice in minimal_covers(image, &self.q_sets) {
                let mut parts = Vec::with_capacity(choice.len());
                for &b in &choice {
                    let child = self.suffixes(image.intersection(self.q_sets[b]), b, h - 1)?;
                    parts.push(child);
                }
                if parts.iter().any(|p| p.is_empty()) {
                    continue;
                }
                // Cartesian product of one family per child symbol.
                let mut idx = vec![0usize; parts.len()];
                loop {
                    self.tick(out.len())?;
                    let mut fam: CodeFamily = parts
                        .iter()
                        .zip(&idx)
                        .flat_map(|(p, &i)| p[i].iter().map(|c| lead + c))
                        .collect();
                    fam.sort_unstable();
                    out.push(fam);
                    let mut pos = 0;
                    loop {
                        if pos == idx.len() {
                            break;
                        }
                        idx[pos] += 1;
                        if idx[pos] < parts[pos].len() {
                            break;
                        }
                        idx[pos] = 0;
                        pos += 1;
                    }
                    if pos == idx.len() {
                        break;
                    }
                }
            }
        }
        let out = Rc::new(keep_minimal(out));
        self.memo.insert((set, u, h), Rc::clone(&out));
        Ok(out)
    }
}

fn is_subset_sorted(a: &[u64], b: &[u64]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

/// Drops duplicates and strict supersets; result sorted by (size, words).
pub(crate) fn keep_minimal(mut fams: Vec<CodeFamily>) -> Vec<CodeFamily> {
    fams.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    fams.dedup();
    let mut kept: Vec<CodeFamily> = Vec::with_capacity(fams.len());
    for f in fams {
        if !kept.iter().any(|k| is_subset_sorted(k, &f)) {
            kept.push(f);
        }
    }
    kept
}

/// All inclusion-minimal admissible families of length `n` for the point `x`,
/// each as a lexicographically sorted list of words.
pub fn enumerate_families(
    sys: &UncertainSystem,
    target: StateSet,
    x: usize,
    n: usize,
    budget: u64,
) -> Result<Vec<Vec<ControlWord>>> {
    if n == 0 {
        return Err(Error::HorizonZero);
    }
    sys.check_states(target)?;
    if x >= sys.num_states() {
        return Err(Error::UnknownState(format!("#{x}")));
    }
    if !target.contains(x) {
        return Ok(Vec::new());
    }
    let mut en = FamilyEnumerator::new(sys, target, n, budget)?;
    let codec = en.codec();
    let fams = keep_minimal(en.for_point(x)?);
    Ok(fams
        .into_iter()
        .map(|f| f.into_iter().map(|c| codec.decode(c)).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::spanning::check_admissible;

    fn render(sys: &UncertainSystem, fams: &[Vec<ControlWord>]) -> Vec<Vec<String>> {
        fams.iter()
            .map(|f| f.iter().map(|w| sys.word_string(w)).collect())
            .collect()
    }

    #[test]
    fn ex2_length_two() {
        let sys = fixtures::ex2();
        let q = sys.state_set(&["0", "2"]).unwrap();
        let fams = enumerate_families(&sys, q, 0, 2, 10_000).unwrap();
        assert_eq!(render(&sys, &fams), vec![vec!["aa", "ab"]]);
    }

    #[test]
    fn length_one_unfolds_the_definition() {
        let sys = fixtures::ex4();
        let q = sys.state_set(&["0", "1", "2", "3", "4"]).unwrap();
        for x in q.iter() {
            let fams = enumerate_families(&sys, q, x, 1, 10_000).unwrap();
            let expected: Vec<Vec<ControlWord>> = (0..sys.num_inputs())
                .filter(|&u| sys.image(x, u).is_subset(q))
                .map(|u| vec![ControlWord(vec![u])])
                .collect();
            assert_eq!(fams, expected);
        }
    }

    #[test]
    fn ex4_absorbing_cell() {
        let sys = fixtures::ex4();
        let q = sys.state_set(&["0", "1", "2", "3", "4"]).unwrap();
        let x = sys.state("4").unwrap();
        let fams = enumerate_families(&sys, q, x, 2, 10_000).unwrap();
        assert_eq!(render(&sys, &fams), vec![vec!["cc"]]);
    }

    #[test]
    fn enumerated_families_are_admissible_and_match_brute_force() {
        // Brute force: every subset of U^n checked with the tree builder.
        for sys in [fixtures::ex1(), fixtures::ex2(), fixtures::ex3(), fixtures::ex4()] {
            let q = match sys.name() {
                "ex1" => sys.state_set(&["0", "1"]).unwrap(),
                "ex2" => sys.state_set(&["0", "2"]).unwrap(),
                "ex3" => sys.state_set(&["0", "1", "2"]).unwrap(),
                _ => sys.state_set(&["0", "1", "2", "3", "4"]).unwrap(),
            };
            let n = if sys.num_inputs() == 3 { 2 } else { 3 };
            let codec = WordCodec::new(sys.num_inputs(), n).unwrap();
            for x in q.iter() {
                let mut admissible: Vec<Vec<u64>> = Vec::new();
                for mask in 1u64..(1 << codec.space()) {
                    let ws: Vec<ControlWord> = (0..codec.space())
                        .filter(|c| mask >> c & 1 == 1)
                        .map(|c| codec.decode(c))
                        .collect();
                    if check_admissible(&sys, q, x, &ws).unwrap().is_admissible() {
                        admissible.push((0..codec.space()).filter(|c| mask >> c & 1 == 1).collect());
                    }
                }
                let brute = keep_minimal(admissible);
                let fams = enumerate_families(&sys, q, x, n, 1_000_000).unwrap();
                let fams: Vec<Vec<u64>> = fams
                    .iter()
                    .map(|f| f.iter().map(|w| codec.encode(w.symbols())).collect())
                    .collect();
                assert_eq!(fams, brute, "{} x={x}", sys.name());
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let sys = fixtures::ex2();
        let q = sys.state_set(&["0", "2"]).unwrap();
        assert!(matches!(
            enumerate_families(&sys, q, 0, 4, 2),
            Err(Error::SearchBudgetExceeded { .. })
        ));
    }
}
