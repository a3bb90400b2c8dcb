use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graphnum::CountMatrix;
use crate::model::{StateSet, UncertainSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    pub states: StateSet,
    pub input: usize,
    /// `F(A, G(A))`.
    pub image: StateSet,
}

/// A validated invariant cover `(A, G)` of a target set `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCover {
    target: StateSet,
    cells: Vec<Cell>,
}

/// Builds `(A, G)` from `(id, cell, input)` triples, checking that the cells
/// cover `Q` and that every cell maps into `Q` under its input.
pub fn build_cover(
    sys: &UncertainSystem,
    target: StateSet,
    cells: Vec<(String, StateSet, usize)>,
) -> Result<InvariantCover> {
    sys.check_states(target)?;
    if target.is_empty() {
        return Err(Error::InvalidCover("target set is empty".into()));
    }
    let mut seen = HashSet::new();
    let mut built = Vec::with_capacity(cells.len());
    for (id, states, input) in cells {
        if !seen.insert(id.clone()) {
            return Err(Error::InvalidCover(format!("duplicate cell id `{id}`")));
        }
        if states.is_empty() {
            return Err(Error::InvalidCover(format!("cell `{id}` is empty")));
        }
        if !states.is_subset(target) {
            return Err(Error::InvalidCover(format!(
                "cell `{id}` has states outside the target: {}",
                sys.set_string(states.difference(target))
            )));
        }
        if input >= sys.num_inputs() {
            return Err(Error::UnknownInput(format!("#{input}")));
        }
        let image = sys.image_of(states, input);
        if !image.is_subset(target) {
            return Err(Error::NotInvariantCell {
                cell: id,
                escaping: sys.state_names(image.difference(target)),
            });
        }
        built.push(Cell { id, states, input, image });
    }
    let covered = built.iter().fold(StateSet::EMPTY, |acc, c| acc.union(c.states));
    if covered != target {
        return Err(Error::NotACover { uncovered: sys.state_names(target.difference(covered)) });
    }
    Ok(InvariantCover { target, cells: built })
}

/// Successor structure of a cover: `D(A)`, `♯D(A)`, `M` and `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverDigraph {
    /// `D(A)` as sorted cell positions.
    pub succ: Vec<Vec<usize>>,
    /// `♯D(A)`; the weight is `w(A) = log₂ ♯D(A)`.
    pub counts: Vec<u64>,
    pub m: CountMatrix,
    pub w: CountMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuasiViolation {
    /// The cell has no private part.
    NoPrivatePart { cell: usize },
    /// `F(A, G(A))` misses the private part of `B` relative to `D(A)`.
    SuccessorNotPrivate { cell: usize, successor: usize },
}

impl InvariantCover {
    pub fn target(&self) -> StateSet {
        self.target
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell_ids(&self) -> Vec<String> {
        self.cells.iter().map(|c| c.id.clone()).collect()
    }

    pub fn cell_index(&self, id: &str) -> Option<usize> {
        self.cells.iter().position(|c| c.id == id)
    }

    pub fn is_partition(&self) -> bool {
        let total: usize = self.cells.iter().map(|c| c.states.len()).sum();
        total == self.target.len()
    }

    /// `D(A)` for the cell at position `i`.
    pub fn successors(&self, i: usize) -> Vec<usize> {
        let image = self.cells[i].image;
        (0..self.cells.len()).filter(|&j| self.cells[j].states.intersects(image)).collect()
    }

    pub fn digraph(&self) -> CoverDigraph {
        let n = self.cells.len();
        let succ: Vec<Vec<usize>> = (0..n).map(|i| self.successors(i)).collect();
        let counts: Vec<u64> = succ.iter().map(|s| s.len() as u64).collect();
        let mut m_rows = vec![vec![0u64; n]; n];
        let mut w_rows = vec![vec![0u64; n]; n];
        for (i, s) in succ.iter().enumerate() {
            for &j in s {
                m_rows[i][j] = 1;
                w_rows[i][j] = counts[i];
            }
        }
        let labels = self.cell_ids();
        CoverDigraph {
            m: CountMatrix::from_rows(labels.clone(), &m_rows),
            w: CountMatrix::from_rows(labels, &w_rows),
            succ,
            counts,
        }
    }

    /// All violations of the two quasi-invariant-partition conditions, in cell order.
    pub fn quasi_violations(&self) -> Vec<QuasiViolation> {
        let n = self.cells.len();
        let union_except = |skip: usize, among: &[usize]| {
            among
                .iter()
                .filter(|&&j| j != skip)
                .fold(StateSet::EMPTY, |acc, &j| acc.union(self.cells[j].states))
        };
        let all: Vec<usize> = (0..n).collect();
        let mut out = Vec::new();
        for i in 0..n {
            if self.cells[i].states.difference(union_except(i, &all)).is_empty() {
                out.push(QuasiViolation::NoPrivatePart { cell: i });
            }
        }
        for i in 0..n {
            let d = self.successors(i);
            for &b in &d {
                let private = self.cells[b].states.difference(union_except(b, &d));
                if !self.cells[i].image.intersects(private) {
                    out.push(QuasiViolation::SuccessorNotPrivate { cell: i, successor: b });
                }
            }
        }
        out
    }

    pub fn is_quasi_invariant_partition(&self) -> bool {
        self.quasi_violations().is_empty()
    }

    pub(crate) fn require_quasi(&self) -> Result<()> {
        match self.quasi_violations().first() {
            None => Ok(()),
            Some(v) => Err(Error::NotQuasiPartition(self.describe(v))),
        }
    }

    pub fn describe(&self, v: &QuasiViolation) -> String {
        match *v {
            QuasiViolation::NoPrivatePart { cell } => {
                format!("cell `{}` lies in the union of the other cells", self.cells[cell].id)
            }
            QuasiViolation::SuccessorNotPrivate { cell, successor } => format!(
                "image of `{}` misses the private part of `{}`",
                self.cells[cell].id, self.cells[successor].id
            ),
        }
    }
}
