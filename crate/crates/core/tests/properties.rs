mod common;

use invariance_entropy::cover::{
    atom_refinement, cover_rinv, derived_partition, entropy_bounds, mmcw, wm_entropy_terms, InvariantCover,
};
use invariance_entropy::fixtures;
use invariance_entropy::graphnum::{log2_big, simple_cycles, spectral_radius, CountMatrix, DEFAULT_CYCLE_CAP};
use invariance_entropy::model::is_semi_conjugacy;
use invariance_entropy::oracle::{cover_rinv_exhaustive, r_inv_exhaustive};
use invariance_entropy::spanning::{check_conditions, finite_n_identity_check, r_inv, DEFAULT_BUDGET};
use invariance_entropy::textio::{parse_system, serialize_system};
use invariance_entropy::{Error, StateSet, UncertainSystem};
use num_bigint::BigUint;
use proptest::prelude::*;
use proptest::sample::Index;

const TOL: f64 = 1e-9;

fn arb_system(max_states: usize, max_inputs: usize) -> impl Strategy<Value = UncertainSystem> {
    (1..=max_states, 1..=max_inputs).prop_flat_map(|(n, m)| {
        proptest::collection::vec(1u64..(1 << n), n * m).prop_map(move |imgs| {
            let imgs: Vec<StateSet> = imgs.into_iter().map(StateSet).collect();
            UncertainSystem::from_images("arb", n, m, &imgs).unwrap()
        })
    })
}

/// A system with a nonempty controlled invariant target picked by `idx`.
fn arb_target(max_states: usize, max_inputs: usize) -> impl Strategy<Value = (UncertainSystem, StateSet)> {
    (arb_system(max_states, max_inputs), any::<Index>()).prop_filter_map("no invariant set", |(sys, idx)| {
        let sets = common::invariant_subsets(&sys);
        (!sets.is_empty()).then(|| {
            let q = sets[idx.index(sets.len())];
            (sys, q)
        })
    })
}

fn sub(q: StateSet, bits: u64) -> StateSet {
    let s = StateSet(q.bits() & bits);
    if s.is_empty() {
        StateSet::singleton(q.first().unwrap())
    } else {
        s
    }
}

fn count(sys: &UncertainSystem, q: StateSet, k: StateSet, n: usize) -> u64 {
    r_inv(sys, q, k, n, DEFAULT_BUDGET).unwrap().count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn q_u_inside_target_and_invariance_is_their_union(sys in arb_system(5, 3), bits in 1u64..32) {
        let q = StateSet(bits & sys.all_states().bits());
        prop_assume!(!q.is_empty());
        let mut union = StateSet::EMPTY;
        for u in 0..sys.num_inputs() {
            let qu = sys.q_u(q, u).unwrap();
            prop_assert!(qu.is_subset(q));
            union = union.union(qu);
        }
        prop_assert_eq!(sys.is_controlled_invariant(q).unwrap().holds(), union == q);
    }

    #[test]
    fn searches_are_deterministic((sys, q) in arb_target(5, 3), n in 1usize..=3) {
        let a = r_inv(&sys, q, q, n, DEFAULT_BUDGET).unwrap();
        let b = r_inv(&sys, q, q, n, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(a.count, b.count);
        prop_assert_eq!(a.certificate.words, b.certificate.words);
    }

    #[test]
    fn certificates_revalidate((sys, q) in arb_target(5, 3), bits: u64, n in 1usize..=3) {
        let k = sub(q, bits);
        let res = r_inv(&sys, q, k, n, DEFAULT_BUDGET).unwrap();
        prop_assert!(res.certificate.verify(&sys, q, k));
        prop_assert_eq!(res.certificate.words.len() as u64, res.count);
    }

    #[test]
    fn subset_rule((sys, q) in arb_target(5, 3), b1: u64, b2: u64, n in 1usize..=3) {
        let (k1, k2) = (sub(q, b1), sub(q, b2));
        let (a, b, u) = (count(&sys, q, k1, n), count(&sys, q, k2, n), count(&sys, q, k1.union(k2), n));
        prop_assert!(a.max(b) <= u && u <= a + b, "{} {} {}", a, b, u);
    }

    #[test]
    fn semi_conjugacy_is_monotone(seed: u64, n in 1usize..=3) {
        let mut rng = common::rng(seed);
        let (s1, s2, c) = common::semi_conjugate_pair(&mut rng);
        prop_assert!(is_semi_conjugacy(&s1, &s2, &c));
        let sets = common::invariant_subsets(&s1);
        prop_assume!(!sets.is_empty());
        let q = sets[(seed % sets.len() as u64) as usize];
        prop_assert!(count(&s2, c.map_states(q), c.map_states(q), n) <= count(&s1, q, q, n));
    }

    #[test]
    fn spanning_search_matches_exhaustive((sys, q) in arb_target(4, 3), n in 1usize..=4) {
        let fast = count(&sys, q, q, n);
        let slow = r_inv_exhaustive(&sys, q, q, n, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn cover_bound_dominates_r_inv((sys, q) in arb_target(5, 3), seed: u64, n in 1usize..=4) {
        let mut rng = common::rng(seed);
        let c = common::random_cover(&mut rng, &sys, q, 4);
        prop_assume!(c.is_some());
        let c = c.unwrap();
        let cr = cover_rinv(&c, n).unwrap().value;
        prop_assert!(BigUint::from(count(&sys, q, q, n)) <= cr);
        if c.len() <= 3 && n <= 3 {
            prop_assert_eq!(cover_rinv_exhaustive(&c, n).unwrap(), cr);
        }
    }

    #[test]
    fn quasi_partition_identities_and_bounds((sys, q) in arb_target(5, 3), seed: u64) {
        let mut rng = common::rng(seed);
        let mut covers: Vec<InvariantCover> = common::random_cover(&mut rng, &sys, q, 4).into_iter().collect();
        covers.extend(atom_refinement(&sys, q, sys.all_inputs()).ok());
        for c in covers.iter().filter(|c| c.is_quasi_invariant_partition()) {
            let m = mmcw(c).unwrap();
            let w = m.value.to_f64();
            let b = entropy_bounds(c, TOL).unwrap();
            prop_assert!(b.lower.lo <= w + TOL && w <= b.upper.hi + TOL);
            prop_assert!(b.rho_m.hi >= 1.0 - TOL && b.rho_w.hi >= b.rho_m.lo - TOL);
            let counts = c.digraph().counts;
            let min_w = counts.iter().map(|&k| (k as f64).log2()).fold(f64::INFINITY, f64::min);
            let max_w = counts.iter().map(|&k| (k as f64).log2()).fold(0.0, f64::max);
            prop_assert!(b.lower.hi >= min_w - TOL, "lower {:?} below min w {}", b.lower, min_w);
            for row in wm_entropy_terms(c, 8).unwrap() {
                prop_assert!(row.identity_holds);
                prop_assert_eq!(&row.cover_rinv, &(BigUint::from(c.len()) * &row.max_product));
                let gap = (log2_big(&row.max_product) / row.m as f64 - w).abs();
                prop_assert!(gap <= (w + c.len() as f64 * max_w) / row.m as f64 + TOL);
            }
            match derived_partition(&sys, c) {
                Ok(d) => prop_assert!(mmcw(&d).unwrap().value.to_f64() <= w + TOL),
                Err(Error::EmptyResidualCell { .. }) => {}
                Err(e) => prop_assert!(false, "{}", e),
            }
        }
    }

    #[test]
    fn r_inv_equals_matrix_norm_under_conditions((sys, q) in arb_target(5, 3), n in 2usize..=4) {
        let report = check_conditions(&sys, q, sys.all_inputs()).unwrap();
        prop_assume!(report.all_ok());
        let check = finite_n_identity_check(&sys, q, sys.all_inputs(), n, DEFAULT_BUDGET).unwrap();
        prop_assert!(check.holds, "{:?}", check);
    }

    #[test]
    fn enclosures_are_tight(seed: u64, order in 1usize..=8, density in 0.05f64..0.6) {
        let mut rng = common::rng(seed);
        let m = common::random_01(&mut rng, order, density);
        let e = spectral_radius(&m, TOL).unwrap();
        prop_assert!(e.lo <= e.hi && e.width() <= TOL);
    }

    #[test]
    fn simple_cycles_are_closed_walks(seed: u64, order in 1usize..=7, density in 0.05f64..0.5) {
        let mut rng = common::rng(seed);
        let m = common::random_01(&mut rng, order, density);
        let adj = m.adjacency();
        for cycle in simple_cycles(&adj, DEFAULT_CYCLE_CAP).unwrap() {
            let mut seen = cycle.clone();
            seen.sort_unstable();
            seen.dedup();
            prop_assert_eq!(seen.len(), cycle.len());
            for (i, &v) in cycle.iter().enumerate() {
                prop_assert!(m.is_nonzero(v, cycle[(i + 1) % cycle.len()]));
            }
        }
    }

    #[test]
    fn systems_round_trip(sys in arb_system(5, 3)) {
        let text = serialize_system(&sys);
        let back = parse_system(&text).unwrap();
        prop_assert_eq!(serialize_system(&back), text);
    }

    #[test]
    fn diagnostics_are_stable(sys in arb_system(4, 2), line in 0usize..8, junk in "[a-z0-9 >:-]{0,12}") {
        let mut lines: Vec<String> = serialize_system(&sys).lines().map(str::to_string).collect();
        let at = line.min(lines.len());
        lines.insert(at, junk);
        let text = lines.join("\n");
        let a = parse_system(&text).err().map(|e| e.to_string());
        let b = parse_system(&text).err().map(|e| e.to_string());
        prop_assert_eq!(a, b);
    }
}

/// r_inv(n + p) <= r_inv(n) r_inv(p) fails for this system under the
/// set-valued admissible family definition; a literal brute force agrees.
#[test]
fn subadditivity_counterexample() {
    let text = "system witness\nstates 0 1 2 3\ninputs a b\n\
        trans 0 a -> 0 1\ntrans 0 b -> 2\ntrans 1 a -> 3\ntrans 1 b -> 0 1\n\
        trans 2 a -> 0\ntrans 2 b -> 0\ntrans 3 a -> 2\ntrans 3 b -> 0 3\n";
    let sys = parse_system(text).unwrap();
    let q = sys.state_set(&["0", "1", "3"]).unwrap();
    let r: Vec<u64> = (1..=4).map(|n| count(&sys, q, q, n)).collect();
    assert_eq!(r, [2, 3, 6, 11]);
    for n in 1..=4 {
        assert_eq!(r_inv_exhaustive(&sys, q, q, n, DEFAULT_BUDGET).unwrap(), r[n - 1]);
    }
    assert!(r[3] > r[1] * r[1]);
}

/// Powers bound the radius from above and the gap closes as k grows.
#[test]
fn norm_powers_approach_radius() {
    for name in ["ex4_a1", "ex4_a2", "ex4_a3"] {
        let g = fixtures::cover(name).1.digraph();
        for m in [&g.m, &g.w] {
            let rho = spectral_radius(m, TOL).unwrap();
            let root = |k: u64| -> f64 { (log2_big(&m.pow(k).norm_l1()) / k as f64).exp2() };
            let (g8, g64) = (root(8) - rho.lo, root(64) - rho.lo);
            assert!(g64 >= -TOL, "{name}: norm root below the radius");
            assert!(g64 <= g8 + TOL, "{name}: gap grew from {g8} to {g64}");
        }
    }
}

#[test]
fn identity_matrix_radius_is_one() {
    let m = CountMatrix::from_u64(&[vec![1, 0], vec![0, 1]]);
    assert!(spectral_radius(&m, TOL).unwrap().contains(1.0));
}
