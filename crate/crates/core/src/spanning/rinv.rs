//! The minimal spanning-set count `r_inv(n, K, Q)`.
//!
//! Every point of `K` must find one of its minimal admissible families inside
//! the spanning set, so the minimum is a minimum-union choice of one family
//! per point, solved by branch and bound from a greedy incumbent.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::admissible::{check_admissible, AdmissibleTree};
use super::families::{CodeFamily, FamilyEnumerator};
use crate::error::{Error, Result};
use crate::graphnum::LogValue;
use crate::model::{ControlWord, StateSet, UncertainSystem};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A minimum spanning set together with the family each point uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningCertificate {
    pub n: usize,
    /// The spanning set, sorted lexicographically.
    pub words: Vec<ControlWord>,
    /// `(x, family)` for every point of `K`, in state order.
    pub families: Vec<(usize, Vec<ControlWord>)>,
}

impl SpanningCertificate {
    /// Rebuilds each point's admissible tree; `None` if any family fails the
    /// check or is not drawn from the spanning set.
    pub fn trees(&self, sys: &UncertainSystem, target: StateSet) -> Option<Vec<AdmissibleTree>> {
        let words: BTreeSet<&ControlWord> = self.words.iter().collect();
        self.families
            .iter()
            .map(|(x, fam)| {
                if !fam.iter().all(|w| words.contains(w)) {
                    return None;
                }
                check_admissible(sys, target, *x, fam).ok()?.tree()
            })
            .collect()
    }

    pub fn verify(&self, sys: &UncertainSystem, target: StateSet, subset: StateSet) -> bool {
        let covered: StateSet = self.families.iter().map(|(x, _)| *x).collect();
        covered == subset && self.trees(sys, target).is_some()
    }
}

#[derive(Clone, Debug)]
pub struct RinvResult {
    pub count: u64,
    pub certificate: SpanningCertificate,
    pub expansions: u64,
}

pub fn r_inv(sys: &UncertainSystem, target: StateSet, subset: StateSet, n: usize, budget: u64) -> Result<RinvResult> {
    if n == 0 {
        return Err(Error::HorizonZero);
    }
    sys.check_states(target)?;
    if !subset.is_subset(target) {
        return Err(Error::SubsetOutsideTarget { outside: sys.state_names(subset.difference(target)) });
    }
    sys.require_controlled_invariant(target)?;

    let mut en = FamilyEnumerator::new(sys, target, n, budget)?;
    let codec = en.codec();
    let mut points: Vec<(usize, Vec<CodeFamily>)> = Vec::new();
    for x in subset.iter() {
        let fams = super::families::keep_minimal(en.for_point(x)?);
        debug_assert!(!fams.is_empty(), "controlled invariant points always have a family");
        points.push((x, fams));
    }
    points.sort_by_key(|(x, f)| (f.len(), *x));

    let mut solver = Solver {
        points: &points,
        budget,
        expansions: en.expansions,
        best: None,
        choice: vec![0; points.len()],
        union: BTreeSet::new(),
    };
    solver.greedy();
    solver.search(0)?;
    let (count, choice) = solver.best.expect("greedy incumbent");
    let expansions = solver.expansions;

    let mut families: Vec<(usize, Vec<ControlWord>)> = points
        .iter()
        .zip(&choice)
        .map(|((x, fams), &i)| (*x, fams[i].iter().map(|&c| codec.decode(c)).collect()))
        .collect();
    families.sort_by_key(|(x, _)| *x);
    let words: BTreeSet<ControlWord> = families.iter().flat_map(|(_, f)| f.iter().cloned()).collect();
    debug_assert_eq!(words.len(), count);
    Ok(RinvResult {
        count: count as u64,
        certificate: SpanningCertificate { n, words: words.into_iter().collect(), families },
        expansions,
    })
}

struct Solver<'a> {
    points: &'a [(usize, Vec<CodeFamily>)],
    budget: u64,
    expansions: u64,
    best: Option<(usize, Vec<usize>)>,
    choice: Vec<usize>,
    union: BTreeSet<u64>,
}

impl Solver<'_> {
    fn added(&self, fam: &[u64]) -> usize {
        fam.iter().filter(|c| !self.union.contains(c)).count()
    }

    fn greedy(&mut self) {
        let mut union = BTreeSet::new();
        let mut choice = Vec::with_capacity(self.points.len());
        for (_, fams) in self.points {
            let (i, _) = fams
                .iter()
                .enumerate()
                .min_by_key(|(_, f)| f.iter().filter(|c| !union.contains(*c)).count())
                .expect("nonempty family list");
            union.extend(fams[i].iter().copied());
            choice.push(i);
        }
        self.best = Some((union.len(), choice));
    }

    fn search(&mut self, i: usize) -> Result<()> {
        self.expansions += 1;
        if self.expansions > self.budget {
            return Err(Error::SearchBudgetExceeded {
                search: "spanning set search",
                budget: self.budget,
                incumbent: self.best.as_ref().map(|(c, _)| *c as u64),
            });
        }
        let best = self.best.as_ref().map_or(usize::MAX, |(c, _)| *c);
        if i == self.points.len() {
            if self.union.len() < best {
                self.best = Some((self.union.len(), self.choice.clone()));
            }
            return Ok(());
        }
        let fams = &self.points[i].1;
        // A family already inside the union is free and dominates every other choice.
        if let Some(free) = fams.iter().position(|f| self.added(f) == 0) {
            self.choice[i] = free;
            return self.search(i + 1);
        }
        let bound = self.points[i..]
            .iter()
            .map(|(_, fs)| fs.iter().map(|f| self.added(f)).min().unwrap_or(0))
            .max()
            .unwrap_or(0);
        if self.union.len() + bound >= best {
            return Ok(());
        }
        let mut order: Vec<(usize, usize)> = fams.iter().enumerate().map(|(k, f)| (self.added(f), k)).collect();
        order.sort_unstable();
        for (_, k) in order {
            let fresh: Vec<u64> = fams[k].iter().copied().filter(|c| !self.union.contains(c)).collect();
            if self.union.len() + fresh.len() >= self.best.as_ref().map_or(usize::MAX, |(c, _)| *c) {
                continue;
            }
            self.union.extend(fresh.iter().copied());
            self.choice[i] = k;
            let res = self.search(i + 1);
            for c in &fresh {
                self.union.remove(c);
            }
            res?;
        }
        Ok(())
    }
}

/// One row of a finite-horizon entropy table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub n: usize,
    pub r_inv: u64,
    /// `log₂ r_inv / n`; absent when `r_inv = 0` (empty `K`).
    pub ratio: Option<LogValue>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntropyReport {
    pub rows: Vec<ReportRow>,
    /// `min_n log₂ r_inv(n, Q) / n`, reported only for `K = Q`. Upper bound on
    /// `h_inv(Q)`; finite data never certifies a lower bound.
    pub upper_bound: Option<LogValue>,
}

pub fn entropy_report(
    sys: &UncertainSystem,
    target: StateSet,
    subset: StateSet,
    n_max: usize,
    budget: u64,
) -> Result<EntropyReport> {
    if n_max == 0 {
        return Err(Error::HorizonZero);
    }
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let r = r_inv(sys, target, subset, n, budget)?.count;
        let ratio = (r > 0).then(|| LogValue::new(BigUint::from(r), n as u64));
        rows.push(ReportRow { n, r_inv: r, ratio });
    }
    let upper_bound = if subset == target {
        rows.iter().filter_map(|r| r.ratio.clone()).min()
    } else {
        None
    };
    Ok(EntropyReport { rows, upper_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn ex2_doubles_each_step() {
        let sys = fixtures::ex2();
        let q = sys.state_set(&["0", "2"]).unwrap();
        for n in 1..=4 {
            let r = r_inv(&sys, q, q, n, DEFAULT_BUDGET).unwrap();
            assert_eq!(r.count, 1 << n);
            assert!(r.certificate.verify(&sys, q, q));
        }
    }

    #[test]
    fn single_input_suffices() {
        let sys = fixtures::ex4();
        let q = sys.state_set(&["4"]).unwrap();
        assert_eq!(r_inv(&sys, q, q, 1, DEFAULT_BUDGET).unwrap().count, 1);
    }

    #[test]
    fn empty_subset_counts_zero() {
        let sys = fixtures::ex2();
        let q = sys.state_set(&["0", "2"]).unwrap();
        let r = r_inv(&sys, q, StateSet::EMPTY, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.count, 0);
        assert!(r.certificate.words.is_empty());
    }

    #[test]
    fn argument_errors() {
        let sys = fixtures::ex2();
        let q = sys.state_set(&["0", "2"]).unwrap();
        assert!(matches!(r_inv(&sys, q, q, 0, 10), Err(Error::HorizonZero)));
        let stuck = sys.state_set(&["0"]).unwrap();
        assert!(matches!(
            r_inv(&sys, stuck, stuck, 2, 100),
            Err(Error::NotControlledInvariant { .. })
        ));
        assert!(matches!(
            r_inv(&sys, q, sys.state_set(&["0", "1"]).unwrap(), 2, 100),
            Err(Error::SubsetOutsideTarget { .. })
        ));
        assert!(matches!(
            r_inv(&sys, q, q, 6, 5),
            Err(Error::SearchBudgetExceeded { .. })
        ));
    }

    #[test]
    fn report_for_ex2() {
        let sys = fixtures::ex2();
        let q = sys.state_set(&["0", "2"]).unwrap();
        let rep = entropy_report(&sys, q, q, 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.rows.len(), 4);
        for row in &rep.rows {
            assert_eq!(row.ratio, Some(LogValue::from_u64(2, 1)));
        }
        assert_eq!(rep.upper_bound, Some(LogValue::from_u64(2, 1)));

        let one = entropy_report(&sys, q, q, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(one.rows.len(), 1);
        assert_eq!(one.upper_bound, one.rows[0].ratio);
    }

    #[test]
    fn ex4_ratios_decrease() {
        let sys = fixtures::ex4();
        let q = sys.state_set(&["0", "1", "2", "3", "4"]).unwrap();
        let rep = entropy_report(&sys, q, q, 4, DEFAULT_BUDGET).unwrap();
        let ratios: Vec<LogValue> = rep.rows.iter().map(|r| r.ratio.clone().unwrap()).collect();
        assert!(ratios.windows(2).all(|w| w[1] < w[0]));
        assert_eq!(rep.upper_bound.as_ref(), ratios.last());
    }
}
