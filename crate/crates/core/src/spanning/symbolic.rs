//! The admissible matrix `M_{Q,V}` and the closed form `h_inv(Q) = log₂ ρ(M_{Q,V})`
//! under conditions (C.1)–(C.3).

use num_bigint::BigUint;

use super::rinv::r_inv;
use crate::error::{Error, Result};
use crate::graphnum::{
    spectral_radius, structural_radius, CountMatrix, LogInterval, LogValue, RadiusEnclosure,
    StructuralRadius,
};
use crate::model::{InputSet, StateSet, UncertainSystem};

/// `M_ab = 1` iff some `x ∈ Q_a` has `F(x,a) ∩ Q_b ≠ ∅`; rows and columns
/// follow the index order of `V`.
pub fn admissible_matrix(sys: &UncertainSystem, target: StateSet, inputs: InputSet) -> Result<CountMatrix> {
    sys.check_states(target)?;
    sys.check_inputs(inputs)?;
    let q = sys.q_all(target);
    let v: Vec<usize> = inputs.iter().collect();
    let rows: Vec<Vec<u64>> = v
        .iter()
        .map(|&a| {
            v.iter()
                .map(|&b| q[a].iter().any(|x| sys.image(x, a).intersects(q[b])) as u64)
                .collect()
        })
        .collect();
    Ok(CountMatrix::from_rows(sys.input_names(inputs), &rows))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C2Check {
    pub from: usize,
    pub to: usize,
    /// `K = {x ∈ Q_a : F(x,a) ∩ Q_b ≠ ∅}`.
    pub witness: StateSet,
    /// `Q_b ∖ F(K, a)`; empty when the pair passes.
    pub missing: StateSet,
}

/// Result of checking a candidate input set `V` against (C.1)–(C.3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    pub inputs: InputSet,
    /// `Q ⊆ ⋃_{a∈V} Q_a`.
    pub covers: bool,
    pub uncovered: StateSet,
    pub c1_ok: bool,
    /// `(a, b, Q_a ∩ Q_b)` for overlapping pairs `a < b`.
    pub c1_violations: Vec<(usize, usize, StateSet)>,
    pub c2_ok: bool,
    /// One entry per `M_ab = 1`, passing or not.
    pub c2_checks: Vec<C2Check>,
    pub c3_ok: bool,
    /// `(c, Q_c)` for inputs outside `V` with nonempty `Q_c`.
    pub c3_violations: Vec<(usize, StateSet)>,
}

impl CoverReport {
    pub fn all_ok(&self) -> bool {
        self.covers && self.c1_ok && self.c2_ok && self.c3_ok
    }

    pub fn c2_violations(&self) -> impl Iterator<Item = &C2Check> {
        self.c2_checks.iter().filter(|c| !c.missing.is_empty())
    }

    pub fn summary(&self) -> String {
        let mut failed = Vec::new();
        if !self.covers {
            failed.push("cover");
        }
        if !self.c1_ok {
            failed.push("C.1");
        }
        if !self.c2_ok {
            failed.push("C.2");
        }
        if !self.c3_ok {
            failed.push("C.3");
        }
        if failed.is_empty() {
            "all conditions hold".to_string()
        } else {
            format!("failed {}", failed.join(", "))
        }
    }
}

pub fn check_conditions(sys: &UncertainSystem, target: StateSet, inputs: InputSet) -> Result<CoverReport> {
    sys.check_states(target)?;
    sys.check_inputs(inputs)?;
    let q = sys.q_all(target);
    let v: Vec<usize> = inputs.iter().collect();

    let covered = v.iter().fold(StateSet::EMPTY, |acc, &a| acc.union(q[a]));
    let uncovered = target.difference(covered);

    let mut c1_violations = Vec::new();
    for (i, &a) in v.iter().enumerate() {
        for &b in &v[i + 1..] {
            let overlap = q[a].intersection(q[b]);
            if !overlap.is_empty() {
                c1_violations.push((a, b, overlap));
            }
        }
    }

    let mut c2_checks = Vec::new();
    for &a in &v {
        for &b in &v {
            let witness: StateSet = q[a].iter().filter(|&x| sys.image(x, a).intersects(q[b])).collect();
            if witness.is_empty() {
                continue; // M_ab = 0
            }
            let missing = q[b].difference(sys.image_of(witness, a));
            c2_checks.push(C2Check { from: a, to: b, witness, missing });
        }
    }

    let c3_violations: Vec<(usize, StateSet)> = (0..sys.num_inputs())
        .filter(|&c| !inputs.contains(c) && !q[c].is_empty())
        .map(|c| (c, q[c]))
        .collect();

    Ok(CoverReport {
        inputs,
        covers: uncovered.is_empty(),
        uncovered,
        c1_ok: c1_violations.is_empty(),
        c1_violations,
        c2_ok: c2_checks.iter().all(|c| c.missing.is_empty()),
        c2_checks,
        c3_ok: c3_violations.is_empty(),
        c3_violations,
    })
}

#[derive(Clone, Debug)]
pub struct HinvExact {
    pub matrix: CountMatrix,
    pub radius: RadiusEnclosure,
    /// Enclosure of `log₂ ρ(M_{Q,V}) = h_inv(Q)`.
    pub log2_rho: LogInterval,
    /// Exact value when the support is a union of simple cycles (then `ρ = 1`).
    pub exact: Option<LogValue>,
}

/// `h_inv(Q) = log₂ ρ(M_{Q,V})`, valid under (C.1)–(C.3).
///
/// When the conditions fail the error still carries the enclosure of
/// `log₂ ρ(M_{Q,V})` if `V` covers `Q`, which is then only an upper bound.
pub fn h_inv_exact(sys: &UncertainSystem, target: StateSet, inputs: InputSet, tol: f64) -> Result<HinvExact> {
    sys.require_controlled_invariant(target)?;
    let report = check_conditions(sys, target, inputs)?;
    let matrix = admissible_matrix(sys, target, inputs)?;
    let radius = spectral_radius(&matrix, tol)?;
    if !report.all_ok() {
        let upper_bound = report.covers.then(|| {
            let l = radius.log2();
            (l.lo, l.hi)
        });
        return Err(Error::ConditionsNotMet { report: Box::new(report), upper_bound });
    }
    let exact = match structural_radius(&matrix) {
        Some(StructuralRadius::Cycle { log2_rho, .. }) => Some(log2_rho),
        _ => None,
    };
    Ok(HinvExact { log2_rho: radius.log2(), matrix, radius, exact })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub n: usize,
    pub r_inv: u64,
    pub norm: BigUint,
    pub holds: bool,
}

/// Compares `r_inv(n, Q)` against `‖M_{Q,V}^{n-1}‖₁`; the two agree under (C.1)–(C.3).
pub fn finite_n_identity_check(
    sys: &UncertainSystem,
    target: StateSet,
    inputs: InputSet,
    n: usize,
    budget: u64,
) -> Result<IdentityCheck> {
    if n < 2 {
        return Err(Error::HorizonTooShort { min: 2, got: n });
    }
    let report = check_conditions(sys, target, inputs)?;
    if !report.all_ok() {
        return Err(Error::ConditionsNotMet { report: Box::new(report), upper_bound: None });
    }
    let r = r_inv(sys, target, target, n, budget)?.count;
    let norm = admissible_matrix(sys, target, inputs)?.pow(n as u64 - 1).norm_l1();
    Ok(IdentityCheck { n, r_inv: r, holds: BigUint::from(r) == norm, norm })
}
