//! Brute-force reference computations used to cross-check the searches.
//!
//! Both are exponential and meant for small instances only.

use num_bigint::BigUint;
use num_traits::One;

use crate::cover::InvariantCover;
use crate::error::{Error, Result};
use crate::model::{StateSet, UncertainSystem};
use crate::spanning::words::WordCodec;

/// Minimum size of an `(n, K, Q)`-spanning set by include/exclude search over
/// word subsets. Spanning is monotone in the word set, which gives the
/// pruning rule. Word spaces beyond 128 words are rejected.
pub fn r_inv_exhaustive(
    sys: &UncertainSystem,
    target: StateSet,
    subset: StateSet,
    n: usize,
    budget: u64,
) -> Result<u64> {
    if n == 0 {
        return Err(Error::HorizonZero);
    }
    if !subset.is_subset(target) {
        return Err(Error::SubsetOutsideTarget { outside: sys.state_names(subset.difference(target)) });
    }
    sys.require_controlled_invariant(target)?;
    let codec = WordCodec::new(sys.num_inputs(), n)?;
    if codec.space() > 128 {
        return Err(Error::WordSpaceTooLarge { inputs: sys.num_inputs(), len: n });
    }
    let oracle = Spanning { sys, target, q: sys.q_all(target), codec, n };
    let all = if codec.space() == 128 { u128::MAX } else { (1u128 << codec.space()) - 1 };
    // Words reachable in some feasible tree; no other word is ever needed.
    let useful = subset.iter().fold(0u128, |acc, x| acc | oracle.tree_words(x, all));
    let cands: Vec<u128> = (0..128).filter(|c| useful >> c & 1 == 1).map(|c| 1u128 << c).collect();
    let mut rest = vec![0u128; cands.len() + 1];
    for i in (0..cands.len()).rev() {
        rest[i] = rest[i + 1] | cands[i];
    }
    let mut search = Search { oracle: &oracle, subset, cands: &cands, rest: &rest, best: cands.len() as u64 + 1, nodes: 0, budget };
    if !search.spanning(useful) {
        unreachable!("controlled invariant sets always admit spanning sets");
    }
    search.dfs(0, 0, 0)?;
    Ok(search.best)
}

struct Spanning<'a> {
    sys: &'a UncertainSystem,
    target: StateSet,
    q: Vec<StateSet>,
    codec: WordCodec,
    n: usize,
}

impl Spanning<'_> {
    /// Words in `words` with the given prefix, as a mask.
    fn with_prefix(&self, words: u128, prefix: &[usize]) -> u128 {
        let lo = self.codec.encode(&pad(prefix, self.n));
        let span = self.codec.place(self.n - prefix.len());
        let range = if span >= 128 { u128::MAX } else { ((1u128 << span) - 1) << lo };
        words & range
    }

    /// Whether some admissible family for `x` lies inside `words`.
    fn has_family(&self, x: usize, words: u128) -> bool {
        (0..self.sys.num_inputs()).any(|u| self.feasible(StateSet::singleton(x), &[u], words).is_some())
    }

    /// Largest feasible subtree below `prefix` applied to `set`: the words of
    /// its leaves, or `None` when no admissible continuation exists.
    fn feasible(&self, set: StateSet, prefix: &[usize], words: u128) -> Option<u128> {
        if self.with_prefix(words, prefix) == 0 {
            return None;
        }
        let u = *prefix.last().expect("nonempty prefix");
        let image = self.sys.image_of(set, u);
        if prefix.len() == self.n {
            return image.is_subset(self.target).then(|| 1u128 << self.codec.encode(prefix));
        }
        let mut covered = StateSet::EMPTY;
        let mut leaves = 0u128;
        let mut child = prefix.to_vec();
        child.push(0);
        for b in 0..self.sys.num_inputs() {
            let part = image.intersection(self.q[b]);
            if part.is_empty() {
                continue;
            }
            *child.last_mut().expect("pushed") = b;
            if let Some(w) = self.feasible(part, &child, words) {
                covered = covered.union(self.q[b]);
                leaves |= w;
            }
        }
        image.is_subset(covered).then_some(leaves)
    }

    fn tree_words(&self, x: usize, words: u128) -> u128 {
        (0..self.sys.num_inputs())
            .filter_map(|u| self.feasible(StateSet::singleton(x), &[u], words))
            .fold(0, |a, b| a | b)
    }
}

fn pad(prefix: &[usize], n: usize) -> Vec<usize> {
    let mut w = prefix.to_vec();
    w.resize(n, 0);
    w
}

struct Search<'a> {
    oracle: &'a Spanning<'a>,
    subset: StateSet,
    cands: &'a [u128],
    rest: &'a [u128],
    best: u64,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn spanning(&self, words: u128) -> bool {
        self.subset.iter().all(|x| self.oracle.has_family(x, words))
    }

    fn dfs(&mut self, i: usize, chosen: u128, count: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded { search: "exhaustive spanning search", budget: self.budget, incumbent: Some(self.best) });
        }
        if count >= self.best {
            return Ok(());
        }
        if self.spanning(chosen) {
            self.best = count;
            return Ok(());
        }
        if i == self.cands.len() || count + 1 >= self.best || !self.spanning(chosen | self.rest[i]) {
            return Ok(());
        }
        self.dfs(i + 1, chosen | self.cands[i], count + 1)?;
        self.dfs(i + 1, chosen, count)
    }
}

/// `r_inv(n, Q, A, G)` by enumerating, at every prefix, all covering subsets
/// of cells (not just minimal ones or those meeting the image). The subtrees of
/// different children are minimized independently; no memoization is used.
pub fn cover_rinv_exhaustive(cover: &InvariantCover, n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::HorizonZero);
    }
    if cover.len() > 16 {
        return Err(Error::InvalidCover("exhaustive search supports at most 16 cells".into()));
    }
    let cells = cover.cells();
    let covering = |need: StateSet| -> Vec<Vec<usize>> {
        (1u32..(1 << cells.len()))
            .map(|mask| (0..cells.len()).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|d| need.is_subset(d.iter().fold(StateSet::EMPTY, |acc, &i| acc.union(cells[i].states))))
            .collect()
    };
    fn below(cells: &[crate::cover::Cell], covering: &dyn Fn(StateSet) -> Vec<Vec<usize>>, a: usize, h: usize) -> BigUint {
        if h == 0 {
            return BigUint::one();
        }
        covering(cells[a].image)
            .iter()
            .map(|d| {
                let worst = d.iter().map(|&b| below(cells, covering, b, h - 1)).max().expect("nonempty");
                worst * BigUint::from(d.len())
            })
            .min()
            .expect("the full cell set covers every image")
    }
    Ok(covering(cover.target())
        .iter()
        .map(|d| {
            let worst = d.iter().map(|&b| below(cells, &covering, b, n - 1)).max().expect("nonempty");
            worst * BigUint::from(d.len())
        })
        .min()
        .expect("the cells cover the target"))
}
