//! The minimal expansion number `r_inv(n, Q, A, G)` and the `W_m` terms.
//!
//! `N(S)` is a maximum over root-to-leaf paths of a product of branching
//! counts, and the branching below a prefix depends only on its last cell and
//! the remaining length. Subtrees of distinct children are chosen
//! independently, so the optimum factorizes through the DP
//! `V(A,0) = 1`, `V(A,h) = min_D ♯D · max_{B∈D} V(B,h-1)`.

use num_bigint::BigUint;
use num_traits::One;

use super::invariant::InvariantCover;
use crate::error::{Error, Result};
use crate::graphnum::LogValue;
use crate::model::StateSet;
use crate::setcover::minimal_covers;

/// Optimal branching choices found by [`cover_rinv`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverStrategy {
    pub n: usize,
    /// Initial cells `P(α)`.
    pub initial: Vec<usize>,
    /// `choices[h][A]`: successor cells chosen after `A` with `h` steps left
    /// (`1 ≤ h ≤ n-1`; index 0 is unused).
    pub choices: Vec<Vec<Vec<usize>>>,
}

impl CoverStrategy {
    /// Expands the strategy into the sequence set `S ⊆ A^n` it describes,
    /// in lexicographic order. Returns `None` past `limit` sequences.
    pub fn sequences(&self, limit: usize) -> Option<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut path = Vec::with_capacity(self.n);
        for &a in &self.initial {
            path.push(a);
            if !self.expand(&mut path, &mut out, limit) {
                return None;
            }
            path.pop();
        }
        out.sort();
        Some(out)
    }

    fn expand(&self, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, limit: usize) -> bool {
        let left = self.n - path.len();
        if left == 0 {
            out.push(path.clone());
            return out.len() <= limit;
        }
        let last = *path.last().expect("nonempty path");
        for &b in &self.choices[left][last] {
            path.push(b);
            if !self.expand(path, out, limit) {
                return false;
            }
            path.pop();
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverRinv {
    pub value: BigUint,
    pub strategy: CoverStrategy,
}

pub fn cover_rinv(cover: &InvariantCover, n: usize) -> Result<CoverRinv> {
    if n == 0 {
        return Err(Error::HorizonZero);
    }
    let cells: Vec<StateSet> = cover.cells().iter().map(|c| c.states).collect();
    let k = cells.len();
    // Minimal covering subfamilies of each image; they never change with h.
    let options: Vec<Vec<Vec<usize>>> = cover
        .cells()
        .iter()
        .map(|c| minimal_covers(c.image, &cells))
        .collect();

    let mut value = vec![BigUint::one(); k];
    let mut choices = vec![Vec::new(); n];
    for h in 1..n {
        let mut next = Vec::with_capacity(k);
        let mut chosen = Vec::with_capacity(k);
        for opts in &options {
            let (v, d) = best_choice(opts, &value);
            next.push(v);
            chosen.push(d);
        }
        value = next;
        choices[h] = chosen;
    }
    let (value, initial) = best_choice(&minimal_covers(cover.target(), &cells), &value);
    Ok(CoverRinv { value, strategy: CoverStrategy { n, initial, choices } })
}

/// `min_D ♯D · max_{B∈D} v(B)`; the first minimizer in the given order wins.
fn best_choice(options: &[Vec<usize>], value: &[BigUint]) -> (BigUint, Vec<usize>) {
    let mut best: Option<(BigUint, &Vec<usize>)> = None;
    for d in options {
        let worst = d.iter().map(|&b| &value[b]).max().cloned().unwrap_or_else(BigUint::one);
        let cost = worst * BigUint::from(d.len());
        if best.as_ref().is_none_or(|(b, _)| cost < *b) {
            best = Some((cost, d));
        }
    }
    let (v, d) = best.expect("invariant covers always admit a covering subfamily");
    (v, d.clone())
}

/// `N(S)` evaluated literally from the definition, or `None` when `S` is not
/// `(n, Q)`-spanning in the cover. Sequences are lists of cell positions.
pub fn expansion_number(cover: &InvariantCover, seqs: &[Vec<usize>]) -> Option<BigUint> {
    let n = seqs.first()?.len();
    if n == 0 || seqs.iter().any(|s| s.len() != n || s.iter().any(|&c| c >= cover.len())) {
        return None;
    }
    let cells = cover.cells();
    let union = |ids: &mut dyn Iterator<Item = usize>| ids.fold(StateSet::EMPTY, |acc, c| acc.union(cells[c].states));
    let initial: Vec<usize> = dedup(seqs.iter().map(|s| s[0]));
    if !cover.target().is_subset(union(&mut initial.iter().copied())) {
        return None;
    }
    // P(α|[0,t]): cells following the prefix α[0..=t] somewhere in S.
    let next_after = |prefix: &[usize]| -> Vec<usize> {
        dedup(seqs.iter().filter(|s| s.starts_with(prefix)).map(|s| s[prefix.len()]))
    };
    let mut best = BigUint::from(0u32);
    for s in seqs {
        let mut prod = BigUint::from(initial.len());
        for t in 0..n - 1 {
            let p = next_after(&s[..=t]);
            if !cells[s[t]].image.is_subset(union(&mut p.iter().copied())) {
                return None;
            }
            prod *= BigUint::from(p.len());
        }
        best = best.max(prod);
    }
    Some(best)
}

fn dedup(it: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = it.collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// One row of the `W_m` table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WmRow {
    pub m: usize,
    /// `max_{α∈W_m} Π_{i≤m-2} ♯D(α(i))`.
    pub max_product: BigUint,
    /// `log₂` of the product, i.e. the maximal weight sum.
    pub term: LogValue,
    /// `r_inv(m, Q, A, G)` from the expansion DP.
    pub cover_rinv: BigUint,
    /// Whether `cover_rinv = ♯A · max_product`.
    pub identity_holds: bool,
}

/// The maximal `W_m` weight sums for `m = 1..=m_max`, each checked against the
/// expansion DP.
pub fn wm_entropy_terms(cover: &InvariantCover, m_max: usize) -> Result<Vec<WmRow>> {
    if m_max == 0 {
        return Err(Error::HorizonZero);
    }
    cover.require_quasi()?;
    let g = cover.digraph();
    let k = cover.len();
    // best[A]: largest product over admissible sequences starting at A of the
    // current length, counting all but the last cell.
    let mut best = vec![BigUint::one(); k];
    let mut rows = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        if m > 1 {
            best = (0..k)
                .map(|a| {
                    let tail = g.succ[a].iter().map(|&b| &best[b]).max().expect("D(A) is nonempty");
                    tail * BigUint::from(g.counts[a])
                })
                .collect();
        }
        let max_product = best.iter().max().cloned().expect("nonempty cover");
        let r = cover_rinv(cover, m)?.value;
        rows.push(WmRow {
            m,
            term: LogValue::log2_of(max_product.clone()),
            identity_holds: r == &max_product * BigUint::from(k),
            cover_rinv: r,
            max_product,
        });
    }
    Ok(rows)
}
