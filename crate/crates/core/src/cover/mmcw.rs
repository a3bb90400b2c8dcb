//! Maximum mean cycle weight and the spectral bounds on cover entropy.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::One;

use super::invariant::InvariantCover;
use crate::error::{Error, Result};
use crate::graphnum::{
    karp_max_mean, log2_big, rho_is_one, simple_cycles, spectral_radius, structural_radius,
    LogInterval, LogValue, RadiusEnclosure, StructuralRadius, DEFAULT_CYCLE_CAP,
};

/// Agreement required between the exact cycle maximum and Karp's DP.
pub const KARP_TOLERANCE: f64 = 1e-9;

/// An irreducible periodic sequence, rotated to start at its smallest cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub cells: Vec<usize>,
    /// `Π ♯D(A_i)`.
    pub weight_product: BigUint,
}

impl Cycle {
    pub fn period(&self) -> usize {
        self.cells.len()
    }

    pub fn mean_weight(&self) -> LogValue {
        LogValue::new(self.weight_product.clone(), self.period() as u64)
    }
}

/// An entropy value: exact, or a float when exactness was given up.
#[derive(Clone, Debug, PartialEq)]
pub enum Entropy {
    Exact(LogValue),
    /// Only the floating Karp value is available (cycle cap exceeded).
    Approximate(f64),
}

impl Entropy {
    pub fn to_f64(&self) -> f64 {
        match self {
            Entropy::Exact(v) => v.to_f64(),
            Entropy::Approximate(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&LogValue> {
        match self {
            Entropy::Exact(v) => Some(v),
            Entropy::Approximate(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mmcw {
    pub value: Entropy,
    /// A maximizing cycle; absent when exactness was given up.
    pub cycle: Option<Cycle>,
    /// Number of simple cycles compared.
    pub cycles: usize,
    /// Karp's floating maximum mean.
    pub karp: f64,
}

impl Mmcw {
    pub fn is_exact(&self) -> bool {
        self.cycle.is_some()
    }

    /// `|exact − karp|`, zero when only the Karp value exists.
    pub fn karp_gap(&self) -> f64 {
        (self.value.to_f64() - self.karp).abs()
    }
}

pub fn mmcw(cover: &InvariantCover) -> Result<Mmcw> {
    mmcw_with_cap(cover, DEFAULT_CYCLE_CAP)
}

/// Exact maximum mean weight over all simple cycles of `M`. Ties go to the
/// shorter cycle, then to the lexicographically smaller cell sequence.
/// Past `cap` cycles the floating Karp value is returned instead.
pub fn mmcw_with_cap(cover: &InvariantCover, cap: usize) -> Result<Mmcw> {
    cover.require_quasi()?;
    let g = cover.digraph();
    let weights: Vec<f64> = g.counts.iter().map(|&c| (c as f64).log2()).collect();
    let karp = karp_max_mean(&g.succ, &weights).expect("every cell has a successor, so M has a cycle");
    let cycles = match simple_cycles(&g.succ, cap) {
        Ok(c) => c,
        Err(Error::CycleBudgetExceeded(_)) => {
            return Ok(Mmcw { value: Entropy::Approximate(karp), cycle: None, cycles: cap, karp })
        }
        Err(e) => return Err(e),
    };
    let mut best: Option<(LogValue, Cycle)> = None;
    for cells in &cycles {
        let product: BigUint = cells.iter().map(|&c| BigUint::from(g.counts[c])).product();
        let cand = Cycle { cells: cells.clone(), weight_product: product };
        let value = cand.mean_weight();
        let better = match &best {
            None => true,
            Some((bv, bc)) => match value.cmp(bv) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => (cand.period(), &cand.cells) < (bc.period(), &bc.cells),
            },
        };
        if better {
            best = Some((value, cand));
        }
    }
    let (value, cycle) = best.expect("nonempty cycle list");
    let out = Mmcw { value: Entropy::Exact(value), cycle: Some(cycle), cycles: cycles.len(), karp };
    debug_assert!(out.karp_gap() <= KARP_TOLERANCE, "karp disagrees: {out:?}");
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct EntropyBounds {
    pub rho_m: RadiusEnclosure,
    pub rho_w: RadiusEnclosure,
    /// Largest entry of `W`.
    pub norm_linf: BigUint,
    /// `log₂ ρ(W) − log₂ ρ(M)`.
    pub lower: LogInterval,
    /// `min(log₂ ‖W‖_∞, log₂ ρ(W))`.
    pub upper: LogInterval,
    /// `log₂ ρ(W)` when `ρ(M) = 1` holds exactly; then lower and upper meet.
    pub exact: Option<LogValue>,
}

pub fn entropy_bounds(cover: &InvariantCover, tol: f64) -> Result<EntropyBounds> {
    cover.require_quasi()?;
    let g = cover.digraph();
    let rho_m = spectral_radius(&g.m, tol)?;
    let rho_w = spectral_radius(&g.w, tol)?;
    let norm_linf = g.w.norm_linf();
    let log_w = rho_w.log2();
    let lower = log_w - rho_m.log2();
    let upper = LogInterval::point(log2_big(&norm_linf)).min(log_w);
    let exact = if rho_is_one(&g.m) {
        // Same support as M, so every cyclic component of W is a simple cycle.
        match structural_radius(&g.w) {
            Some(StructuralRadius::Cycle { log2_rho, .. }) => Some(log2_rho),
            _ => None,
        }
    } else {
        None
    };
    Ok(EntropyBounds { rho_m, rho_w, norm_linf, lower, upper, exact })
}

/// `Π ♯D` over a cell sequence, for reporting.
pub fn weight_product(cover: &InvariantCover, cells: &[usize]) -> BigUint {
    let g = cover.digraph();
    cells.iter().fold(BigUint::one(), |acc, &c| acc * BigUint::from(g.counts[c]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graphnum::DEFAULT_TOL;

    fn exact(name: &str) -> (Mmcw, InvariantCover) {
        let (_, c) = fixtures::cover(name);
        (mmcw(&c).unwrap(), c)
    }

    #[test]
    fn ex3_values() {
        let (m, c) = exact("ex3_a1");
        assert_eq!(m.value, Entropy::Exact(LogValue::from_u64(2, 1)));
        let cyc = m.cycle.unwrap();
        assert_eq!(cyc.period(), 1);
        assert_eq!(c.cells()[cyc.cells[0]].id, "A11");
        assert_eq!(exact("ex3_a2").0.value, Entropy::Exact(LogValue::from_u64(2, 1)));
        let (m, _) = exact("ex3_a3");
        assert_eq!(m.value, Entropy::Exact(LogValue::from_u64(2, 2)));
        assert_eq!(m.cycle.unwrap().period(), 2);
    }

    #[test]
    fn ex4_values() {
        assert_eq!(exact("ex4_a1").0.value, Entropy::Exact(LogValue::from_u64(2, 2)));
        let (m, c) = exact("ex4_a2");
        assert_eq!(m.value, Entropy::Exact(LogValue::from_u64(2, 4)));
        let ids: Vec<&str> = m.cycle.as_ref().unwrap().cells.iter().map(|&i| c.cells()[i].id.as_str()).collect();
        assert_eq!(ids, ["A20", "A22", "A21", "A23"]);
        assert_eq!(exact("ex4_a3").0.value, Entropy::Exact(LogValue::from_u64(2, 1)));
        for name in ["ex3_a1", "ex3_a2", "ex3_a3", "ex4_a1", "ex4_a2", "ex4_a3"] {
            assert!(exact(name).0.karp_gap() <= KARP_TOLERANCE, "{name}");
        }
    }

    #[test]
    fn cap_falls_back_to_karp() {
        let (_, c) = fixtures::cover("ex3_a3");
        let m = mmcw_with_cap(&c, 1).unwrap();
        assert!(!m.is_exact());
        assert!((m.value.to_f64() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn ex4_bounds() {
        let (_, a1) = fixtures::cover("ex4_a1");
        let b = entropy_bounds(&a1, DEFAULT_TOL).unwrap();
        assert!(b.rho_m.exact_one);
        assert_eq!(b.exact, Some(LogValue::from_u64(2, 2)));
        assert!(b.rho_w.contains(2f64.sqrt()));
        assert_eq!(b.norm_linf, BigUint::from(2u32));

        let (_, a3) = fixtures::cover("ex4_a3");
        let b = entropy_bounds(&a3, DEFAULT_TOL).unwrap();
        assert!(b.rho_m.contains(2f64.sqrt()) && b.rho_w.contains(6f64.sqrt()));
        assert!(b.lower.contains(0.5 * 3f64.log2()));
        assert!((b.upper.hi - 1.0).abs() < 1e-12 && (b.upper.lo - 1.0).abs() < 1e-12);
        assert_eq!(b.exact, None);
    }

    #[test]
    fn single_cell_bounds_are_zero() {
        let sys = fixtures::ex4();
        let q = sys.state_set(&["4"]).unwrap();
        let cover = crate::cover::build_cover(&sys, q, vec![("A".into(), q, 2)]).unwrap();
        let b = entropy_bounds(&cover, DEFAULT_TOL).unwrap();
        assert_eq!(b.exact, Some(LogValue::zero()));
        assert_eq!((b.lower.lo, b.lower.hi, b.upper.hi), (0.0, 0.0, 0.0));
        assert_eq!(mmcw(&cover).unwrap().value, Entropy::Exact(LogValue::zero()));
    }
}
