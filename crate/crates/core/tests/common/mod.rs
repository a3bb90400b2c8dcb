//! Random generators shared by the integration tests.
#![allow(dead_code)]

use invariance_entropy::cover::{build_cover, InvariantCover};
use invariance_entropy::graphnum::CountMatrix;
use invariance_entropy::model::{ConjugacyPair, StateSet, UncertainSystem};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonempty random subset of `set`.
pub fn nonempty_subset(rng: &mut impl Rng, set: StateSet) -> StateSet {
    let items: Vec<usize> = set.iter().collect();
    loop {
        let s: StateSet = items.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}

/// A strict system with `states` states and `inputs` inputs. Images are small
/// on average so that nontrivial controlled invariant sets are common.
pub fn random_system_sized(rng: &mut impl Rng, states: usize, inputs: usize) -> UncertainSystem {
    let images: Vec<StateSet> = (0..states * inputs)
        .map(|_| {
            let size = if rng.gen_bool(0.5) { 1 } else { rng.gen_range(1..=states) };
            let mut all: Vec<usize> = (0..states).collect();
            all.shuffle(rng);
            all[..size].iter().copied().collect()
        })
        .collect();
    UncertainSystem::from_images("random", states, inputs, &images).expect("generated images are strict")
}

pub fn random_system(rng: &mut impl Rng, max_states: usize, max_inputs: usize) -> UncertainSystem {
    let states = rng.gen_range(1..=max_states);
    let inputs = rng.gen_range(1..=max_inputs);
    random_system_sized(rng, states, inputs)
}

/// Every nonempty controlled invariant subset, by enumeration.
pub fn invariant_subsets(sys: &UncertainSystem) -> Vec<StateSet> {
    let n = sys.num_states();
    (1u64..(1 << n))
        .map(StateSet)
        .filter(|&q| sys.is_controlled_invariant(q).map(|r| r.holds()).unwrap_or(false))
        .collect()
}

/// A random system together with a random nonempty controlled invariant set.
pub fn system_with_target(rng: &mut impl Rng, max_states: usize, max_inputs: usize) -> (UncertainSystem, StateSet) {
    loop {
        let sys = random_system(rng, max_states, max_inputs);
        let sets = invariant_subsets(&sys);
        if let Some(&q) = sets.choose(rng) {
            return (sys, q);
        }
    }
}

/// A random invariant cover of `q` with at most `max_cells` cells, each a
/// random nonempty subset of some `Q_u`.
pub fn random_cover(rng: &mut impl Rng, sys: &UncertainSystem, q: StateSet, max_cells: usize) -> Option<InvariantCover> {
    let qs = sys.q_all(q);
    let usable: Vec<usize> = (0..sys.num_inputs()).filter(|&u| !qs[u].is_empty()).collect();
    for _ in 0..100 {
        let k = rng.gen_range(1..=max_cells);
        let cells: Vec<(String, StateSet, usize)> = (0..k)
            .map(|i| {
                let u = *usable.choose(rng).expect("q is controlled invariant");
                (format!("C{i}"), nonempty_subset(rng, qs[u]), u)
            })
            .collect();
        if let Ok(c) = build_cover(sys, q, cells) {
            return Some(c);
        }
    }
    None
}

/// A semi-conjugate pair `(Σ₁, Σ₂, (π, r))`. `Σ₂` is drawn first and `Σ₁` is
/// built so that every `F₂(π(x), r(u))` lies in `π(F₁(x, u))`.
pub fn semi_conjugate_pair(rng: &mut impl Rng) -> (UncertainSystem, UncertainSystem, ConjugacyPair) {
    let s2 = random_system(rng, 3, 2);
    let n1 = rng.gen_range(s2.num_states()..=5);
    let m1 = rng.gen_range(s2.num_inputs()..=3);
    // Surjective maps: the first preimages cover the codomain in order.
    let onto = |rng: &mut ChaCha8Rng, n: usize, m: usize| -> Vec<usize> {
        let mut v: Vec<usize> = (0..n).map(|i| if i < m { i } else { rng.gen_range(0..m) }).collect();
        v.shuffle(rng);
        v
    };
    let mut local = ChaCha8Rng::seed_from_u64(rng.gen());
    let state_map = onto(&mut local, n1, s2.num_states());
    let input_map = onto(&mut local, m1, s2.num_inputs());
    let mut images = Vec::with_capacity(n1 * m1);
    for x in 0..n1 {
        for u in 0..m1 {
            let target = s2.image(state_map[x], input_map[u]);
            let mut img = StateSet::EMPTY;
            for y in target.iter() {
                let pre: Vec<usize> = (0..n1).filter(|&z| state_map[z] == y).collect();
                img.insert(*pre.choose(rng).expect("surjective"));
            }
            if rng.gen_bool(0.3) {
                img.insert(rng.gen_range(0..n1));
            }
            images.push(img);
        }
    }
    let s1 = UncertainSystem::from_images("lift", n1, m1, &images).expect("strict");
    (s1, s2, ConjugacyPair { state_map, input_map })
}

/// A random 0/1 matrix of the given order and edge density.
pub fn random_01(rng: &mut impl Rng, order: usize, density: f64) -> CountMatrix {
    let rows: Vec<Vec<u64>> = (0..order).map(|_| (0..order).map(|_| rng.gen_bool(density) as u64).collect()).collect();
    CountMatrix::from_u64(&rows)
}

/// A 0/1 matrix whose cyclic components are exactly the cycles of a random
/// permutation, plus random edges running forward between those cycles.
pub fn random_cycle_dag(rng: &mut impl Rng, order: usize) -> CountMatrix {
    let mut perm: Vec<usize> = (0..order).collect();
    perm.shuffle(rng);
    let mut comp = vec![usize::MAX; order];
    let mut count = 0;
    for start in 0..order {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut v = start;
        while comp[v] == usize::MAX {
            comp[v] = count;
            v = perm[v];
        }
        count += 1;
    }
    let mut rows = vec![vec![0u64; order]; order];
    for v in 0..order {
        rows[v][perm[v]] = 1;
        for w in 0..order {
            if comp[v] < comp[w] && rng.gen_bool(0.3) {
                rows[v][w] = 1;
            }
        }
    }
    CountMatrix::from_u64(&rows)
}
