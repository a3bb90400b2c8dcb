//! Checking that a word set is an admissible family for a point.

use crate::error::{Error, Result};
use crate::model::{ControlWord, StateSet, UncertainSystem};

/// One node of an admissible tree: the word prefix ending in the symbol applied
/// at this node, and the set of states it is applied to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub prefix: ControlWord,
    pub set: StateSet,
}

/// The branching certificate that a word set is admissible for `root`.
///
/// Nodes are listed in depth-first, lexicographic prefix order. The node with a
/// prefix of length `i + 1` holds `I^i`, the states the `i`-th symbol acts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleTree {
    pub root: usize,
    pub depth: usize,
    pub nodes: Vec<TreeNode>,
}

impl AdmissibleTree {
    /// Root-to-leaf words.
    pub fn words(&self) -> Vec<ControlWord> {
        self.nodes
            .iter()
            .filter(|n| n.prefix.len() == self.depth)
            .map(|n| n.prefix.clone())
            .collect()
    }

    pub fn leaves(&self) -> usize {
        self.nodes.iter().filter(|n| n.prefix.len() == self.depth).count()
    }
}

/// The first condition a word set violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    EmptyFamily,
    PointOutsideTarget,
    /// Words do not share their first symbol.
    SharedFirstSymbol,
    /// `F(I, u)` is not covered by the `Q_b` of the continuing symbols.
    CoverageInclusion { prefix: ControlWord, uncovered: StateSet },
    /// `F(I, u) ∩ Q_b` is empty for a continuing symbol `b`.
    EmptyIntersection { prefix: ControlWord, symbol: usize },
    /// At the last step `F(I, u)` leaves `Q`.
    FinalInclusion { prefix: ControlWord, escaping: StateSet },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admissibility {
    Admissible(AdmissibleTree),
    Rejected(Rejection),
}

impl Admissibility {
    pub fn tree(self) -> Option<AdmissibleTree> {
        match self {
            Admissibility::Admissible(t) => Some(t),
            Admissibility::Rejected(_) => None,
        }
    }

    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible(_))
    }
}

pub fn check_admissible(
    sys: &UncertainSystem,
    target: StateSet,
    x: usize,
    words: &[ControlWord],
) -> Result<Admissibility> {
    sys.check_states(target)?;
    let Some(first) = words.first() else {
        return Ok(Admissibility::Rejected(Rejection::EmptyFamily));
    };
    let n = first.len();
    if n == 0 {
        return Err(Error::HorizonZero);
    }
    for w in words {
        if w.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: w.len() });
        }
        if let Some(&u) = w.symbols().iter().find(|&&u| u >= sys.num_inputs()) {
            return Err(Error::UnknownInput(format!("#{u}")));
        }
    }
    if !target.contains(x) {
        return Ok(Admissibility::Rejected(Rejection::PointOutsideTarget));
    }
    let mut sorted: Vec<&[usize]> = words.iter().map(|w| w.symbols()).collect();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.iter().any(|w| w[0] != sorted[0][0]) {
        return Ok(Admissibility::Rejected(Rejection::SharedFirstSymbol));
    }

    let q_sets = sys.q_all(target);
    let mut nodes = Vec::new();
    let walk = Walk { sys, target, q_sets: &q_sets, n };
    match walk.node(&sorted, 0, StateSet::singleton(x), &mut nodes) {
        Ok(()) => Ok(Admissibility::Admissible(AdmissibleTree { root: x, depth: n, nodes })),
        Err(r) => Ok(Admissibility::Rejected(r)),
    }
}

struct Walk<'a> {
    sys: &'a UncertainSystem,
    target: StateSet,
    q_sets: &'a [StateSet],
    n: usize,
}

impl Walk<'_> {
    /// `group` shares the prefix `[0..=i]`; `set` is `I^i`.
    fn node(
        &self,
        group: &[&[usize]],
        i: usize,
        set: StateSet,
        nodes: &mut Vec<TreeNode>,
    ) -> std::result::Result<(), Rejection> {
        let prefix = ControlWord(group[0][..=i].to_vec());
        let u = group[0][i];
        nodes.push(TreeNode { prefix: prefix.clone(), set });
        let image = self.sys.image_of(set, u);
        if i + 1 == self.n {
            let escaping = image.difference(self.target);
            return if escaping.is_empty() {
                Ok(())
            } else {
                Err(Rejection::FinalInclusion { prefix, escaping })
            };
        }
        let children: Vec<&[&[usize]]> = group.chunk_by(|a, b| a[i + 1] == b[i + 1]).collect();
        let covered = children
            .iter()
            .fold(StateSet::EMPTY, |acc, c| acc.union(self.q_sets[c[0][i + 1]]));
        let uncovered = image.difference(covered);
        if !uncovered.is_empty() {
            return Err(Rejection::CoverageInclusion { prefix, uncovered });
        }
        for child in children {
            let b = child[0][i + 1];
            let next = image.intersection(self.q_sets[b]);
            if next.is_empty() {
                return Err(Rejection::EmptyIntersection { prefix, symbol: b });
            }
            self.node(child, i + 1, next, nodes)?;
        }
        Ok(())
    }
}
