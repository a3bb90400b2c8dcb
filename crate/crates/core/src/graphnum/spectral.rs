//! Certified spectral radius enclosures for nonnegative matrices.
//!
//! The radius of a nonnegative matrix is the largest radius of its irreducible
//! diagonal blocks. Each block `B` is handled by Collatz–Wielandt bounds
//! `min_i (Av)_i/v_i ≤ ρ(A) ≤ max_i (Av)_i/v_i` on `A = B + I`, which is
//! primitive, so the power iteration converges even for periodic blocks.

use num_bigint::BigUint;
use num_traits::One;

use super::graph::{is_cyclic_component, scc};
use super::logvalue::LogValue;
use super::matrix::CountMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-9;
const MAX_ITERATIONS: usize = 2_000_000;

/// `lo ≤ ρ ≤ hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadiusEnclosure {
    pub lo: f64,
    pub hi: f64,
    /// Set when the structural test proves `ρ = 1` exactly.
    pub exact_one: bool,
}

impl RadiusEnclosure {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// Enclosure of `log₂ ρ`. A zero lower end maps to `-∞`.
    pub fn log2(&self) -> LogInterval {
        if self.exact_one {
            return LogInterval { lo: 0.0, hi: 0.0 };
        }
        LogInterval { lo: self.lo.max(0.0).log2(), hi: self.hi.log2() }
    }
}

/// A closed interval of reals, used for logarithms of enclosed radii.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogInterval {
    pub lo: f64,
    pub hi: f64,
}

impl std::ops::Sub for LogInterval {
    type Output = Self;

    fn sub(self, other: Self) -> Self {
        Self { lo: self.lo - other.hi, hi: self.hi - other.lo }
    }
}

impl LogInterval {
    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn min(self, other: Self) -> Self {
        Self { lo: self.lo.min(other.lo), hi: self.hi.min(other.hi) }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Exact radius available when every cyclic strongly connected component of
/// the support is a single simple cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructuralRadius {
    /// No cycles at all: the matrix is nilpotent and `ρ = 0`.
    Acyclic,
    /// `ρ = 2^value`, attained on the given component.
    Cycle { log2_rho: LogValue, component: Vec<usize> },
}

/// For matrices whose cyclic components are all simple cycles, the radius is
/// the largest geometric mean of entries along those cycles. Returns `None`
/// when some cyclic component has a vertex of in-component out-degree ≠ 1.
pub fn structural_radius(m: &CountMatrix) -> Option<StructuralRadius> {
    let adj = m.adjacency();
    let mut best: Option<(LogValue, Vec<usize>)> = None;
    for comp in scc(&adj) {
        if !is_cyclic_component(&adj, &comp) {
            continue;
        }
        let mut product = BigUint::one();
        for &v in &comp {
            let inside: Vec<usize> = adj[v].iter().copied().filter(|w| comp.contains(w)).collect();
            if inside.len() != 1 {
                return None;
            }
            product *= m.get(v, inside[0]);
        }
        let value = LogValue::new(product, comp.len() as u64);
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, comp));
        }
    }
    Some(match best {
        None => StructuralRadius::Acyclic,
        Some((log2_rho, component)) => StructuralRadius::Cycle { log2_rho, component },
    })
}

/// Exact `ρ(M) = 1` test for 0/1 matrices: the support has a cycle and every
/// cyclic component is a simple cycle.
pub fn rho_is_one(m: &CountMatrix) -> bool {
    m.is_zero_one()
        && matches!(
            structural_radius(m),
            Some(StructuralRadius::Cycle { ref log2_rho, .. }) if log2_rho.is_zero()
        )
}

pub fn spectral_radius(m: &CountMatrix, tol: f64) -> Result<RadiusEnclosure> {
    assert!(tol > 0.0, "tolerance must be positive");
    let adj = m.adjacency();
    let entries = m.to_f64_rows();
    let mut lo: f64 = 0.0;
    let mut hi: f64 = 0.0;
    for comp in scc(&adj) {
        if !is_cyclic_component(&adj, &comp) {
            continue;
        }
        let (blo, bhi) = block_radius(&entries, &comp, tol)?;
        lo = lo.max(blo);
        hi = hi.max(bhi);
    }
    let exact_one = rho_is_one(m);
    Ok(RadiusEnclosure { lo, hi, exact_one })
}

fn block_radius(entries: &[Vec<f64>], comp: &[usize], tol: f64) -> Result<(f64, f64)> {
    let k = comp.len();
    if k == 1 {
        let w = entries[comp[0]][comp[0]];
        return Ok((w, w));
    }
    // Shifted block A = B + I.
    let a: Vec<Vec<f64>> = comp
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            comp.iter()
                .enumerate()
                .map(|(j, &c)| entries[r][c] + if i == j { 1.0 } else { 0.0 })
                .collect()
        })
        .collect();
    // Relative rounding slack for a k-term dot product and one division.
    let slack = 4.0 * (k as f64 + 2.0) * f64::EPSILON;
    let mut v = vec![1.0f64; k];
    let mut best_lo = 0.0f64;
    let mut best_hi = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let w: Vec<f64> = a
            .iter()
            .map(|row| row.iter().zip(&v).map(|(x, y)| x * y).sum())
            .collect();
        let (mut rlo, mut rhi) = (f64::INFINITY, 0.0f64);
        for (wi, vi) in w.iter().zip(&v) {
            let r = wi / vi;
            rlo = rlo.min(r);
            rhi = rhi.max(r);
        }
        best_lo = best_lo.max(rlo * (1.0 - slack) - 1.0);
        best_hi = best_hi.min(rhi * (1.0 + slack) - 1.0);
        if best_hi - best_lo <= tol {
            return Ok((best_lo.max(0.0), best_hi));
        }
        let scale = w.iter().copied().fold(0.0, f64::max);
        v = w.into_iter().map(|x| x / scale).collect();
    }
    Err(Error::NonConvergence(MAX_ITERATIONS))
}
