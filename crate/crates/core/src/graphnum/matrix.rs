use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A square matrix of nonnegative big integers with row/column labels.
#[derive(Clone, PartialEq, Eq)]
pub struct CountMatrix {
    labels: Vec<String>,
    entries: Vec<BigUint>,
}

impl CountMatrix {
    pub fn zeros(labels: Vec<String>) -> Self {
        let n = labels.len();
        Self { labels, entries: vec![BigUint::zero(); n * n] }
    }

    pub fn identity(labels: Vec<String>) -> Self {
        let mut m = Self::zeros(labels);
        for i in 0..m.order() {
            m.set(i, i, BigUint::one());
        }
        m
    }

    pub fn from_rows(labels: Vec<String>, rows: &[Vec<u64>]) -> Self {
        let n = labels.len();
        assert_eq!(rows.len(), n, "row count must match label count");
        let mut m = Self::zeros(labels);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigUint::from(v));
            }
        }
        m
    }

    /// Unlabelled matrix; labels default to row numbers.
    pub fn from_u64(rows: &[Vec<u64>]) -> Self {
        let labels = (0..rows.len()).map(|i| i.to_string()).collect();
        Self::from_rows(labels, rows)
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.entries[i * self.order() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigUint) {
        let n = self.order();
        self.entries[i * n + j] = v;
    }

    pub fn is_nonzero(&self, i: usize, j: usize) -> bool {
        !self.get(i, j).is_zero()
    }

    /// Successor lists of the support digraph.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n)
            .map(|i| (0..n).filter(|&j| self.is_nonzero(i, j)).collect())
            .collect()
    }

    pub fn is_zero_one(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero() || e.is_one())
    }

    pub fn to_u64_rows(&self) -> Option<Vec<Vec<u64>>> {
        let n = self.order();
        (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).to_u64()).collect())
            .collect()
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        let n = self.order();
        (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).to_f64().unwrap_or(f64::INFINITY)).collect())
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        let n = self.order();
        let mut out = Self::zeros(self.labels.clone());
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `M^k` by repeated squaring; `M^0` is the identity.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut result = Self::identity(self.labels.clone());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base).expect("same order");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same order");
            }
        }
        result
    }

    /// Entry sum `Σ |a_ij|`.
    pub fn norm_l1(&self) -> BigUint {
        self.entries.iter().sum()
    }

    /// Largest entry `max |a_ij|` (not the row-sum norm).
    pub fn norm_linf(&self) -> BigUint {
        self.entries.iter().max().cloned().unwrap_or_default()
    }
}

impl fmt::Debug for CountMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order();
        let mut rows = f.debug_map();
        for i in 0..n {
            let row: Vec<String> = (0..n).map(|j| self.get(i, j).to_string()).collect();
            rows.entry(&self.labels[i], &row);
        }
        rows.finish()
    }
}
