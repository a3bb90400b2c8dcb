//! Finite uncertain control systems and their elementary set operations.
//!
//! States and inputs are interned to dense indices when a system is built, so
//! every set of states or inputs is a 64-bit mask. A system therefore has at
//! most 64 states and 64 inputs.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of states or inputs a system may declare.
pub const MAX_IDS: usize = 64;

macro_rules! bitset {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(pub u64);

        impl $name {
            pub const EMPTY: Self = Self(0);

            pub fn singleton(i: usize) -> Self {
                Self(1u64 << i)
            }

            /// The set `{0, .., n-1}`.
            pub fn full(n: usize) -> Self {
                if n >= 64 {
                    Self(u64::MAX)
                } else {
                    Self((1u64 << n) - 1)
                }
            }

            pub fn bits(self) -> u64 {
                self.0
            }

            pub fn contains(self, i: usize) -> bool {
                i < 64 && self.0 >> i & 1 == 1
            }

            pub fn insert(&mut self, i: usize) {
                self.0 |= 1u64 << i;
            }

            pub fn remove(&mut self, i: usize) {
                self.0 &= !(1u64 << i);
            }

            pub fn is_empty(self) -> bool {
                self.0 == 0
            }

            pub fn len(self) -> usize {
                self.0.count_ones() as usize
            }

            pub fn union(self, other: Self) -> Self {
                Self(self.0 | other.0)
            }

            pub fn intersection(self, other: Self) -> Self {
                Self(self.0 & other.0)
            }

            pub fn difference(self, other: Self) -> Self {
                Self(self.0 & !other.0)
            }

            pub fn is_subset(self, other: Self) -> bool {
                self.0 & !other.0 == 0
            }

            pub fn intersects(self, other: Self) -> bool {
                self.0 & other.0 != 0
            }

            /// Smallest member, if any.
            pub fn first(self) -> Option<usize> {
                (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
            }

            /// Members in ascending index order.
            pub fn iter(self) -> impl Iterator<Item = usize> {
                let mut rest = self.0;
                std::iter::from_fn(move || {
                    if rest == 0 {
                        None
                    } else {
                        let i = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        Some(i)
                    }
                })
            }
        }

        impl FromIterator<usize> for $name {
            fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
                let mut s = Self::EMPTY;
                for i in iter {
                    s.insert(i);
                }
                s
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.debug_set().entries(self.iter()).finish()
            }
        }
    };
}

bitset!(
    /// A subset of a system's states, by state index.
    StateSet
);
bitset!(
    /// A subset of a system's inputs, by input index.
    InputSet
);

/// A finite control word, stored as input indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ControlWord(pub Vec<usize>);

impl ControlWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[usize] {
        &self.0
    }
}

/// A pair of maps `(π, r)` between the states and inputs of two systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyPair {
    pub state_map: Vec<usize>,
    pub input_map: Vec<usize>,
}

impl ConjugacyPair {
    pub fn identity(sys: &UncertainSystem) -> Self {
        Self {
            state_map: (0..sys.num_states()).collect(),
            input_map: (0..sys.num_inputs()).collect(),
        }
    }

    pub fn map_states(&self, set: StateSet) -> StateSet {
        set.iter().map(|x| self.state_map[x]).collect()
    }
}

/// Outcome of a controlled-invariance check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invariance {
    /// One input per state of `Q` (in state order) keeping all successors inside `Q`.
    Invariant(Vec<(usize, usize)>),
    /// States of `Q` for which every input can leave `Q`.
    Violated(StateSet),
}

impl Invariance {
    pub fn holds(&self) -> bool {
        matches!(self, Invariance::Invariant(_))
    }
}

/// A system `(X, U, F)` with a strict set-valued transition map.
#[derive(Clone, Debug)]
pub struct UncertainSystem {
    name: String,
    states: Vec<String>,
    inputs: Vec<String>,
    /// Row-major `[state][input]` images.
    trans: Vec<StateSet>,
    state_index: HashMap<String, usize>,
    input_index: HashMap<String, usize>,
}

impl PartialEq for UncertainSystem {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.states == other.states
            && self.inputs == other.inputs
            && self.trans == other.trans
    }
}

impl Eq for UncertainSystem {}

fn intern(kind: &str, ids: &[String]) -> Result<HashMap<String, usize>> {
    if ids.is_empty() {
        return Err(Error::InvalidSystem(format!("no {kind} declared")));
    }
    if ids.len() > MAX_IDS {
        return Err(Error::InvalidSystem(format!(
            "{} {kind} declared, at most {MAX_IDS} supported",
            ids.len()
        )));
    }
    let mut map = HashMap::with_capacity(ids.len());
    for (i, id) in ids.iter().enumerate() {
        if map.insert(id.clone(), i).is_some() {
            return Err(Error::InvalidSystem(format!("duplicate {kind} id `{id}`")));
        }
    }
    Ok(map)
}

impl UncertainSystem {
    /// Builds a system from images given row-major as `images[x][u]`.
    ///
    /// Rejects missing or empty images and images naming undeclared states.
    pub fn new(
        name: impl Into<String>,
        states: Vec<String>,
        inputs: Vec<String>,
        images: Vec<Vec<StateSet>>,
    ) -> Result<Self> {
        let state_index = intern("states", &states)?;
        let input_index = intern("inputs", &inputs)?;
        if images.len() != states.len() {
            return Err(Error::InvalidSystem(format!(
                "expected images for {} states, got {}",
                states.len(),
                images.len()
            )));
        }
        let all = StateSet::full(states.len());
        let mut trans = Vec::with_capacity(states.len() * inputs.len());
        for (x, row) in images.into_iter().enumerate() {
            if row.len() != inputs.len() {
                return Err(Error::InvalidSystem(format!(
                    "state `{}` has {} images, expected {}",
                    states[x],
                    row.len(),
                    inputs.len()
                )));
            }
            for (u, img) in row.into_iter().enumerate() {
                if img.is_empty() {
                    return Err(Error::InvalidSystem(format!(
                        "F({}, {}) is empty",
                        states[x], inputs[u]
                    )));
                }
                if !img.is_subset(all) {
                    return Err(Error::InvalidSystem(format!(
                        "F({}, {}) names undeclared states",
                        states[x], inputs[u]
                    )));
                }
                trans.push(img);
            }
        }
        Ok(Self {
            name: name.into(),
            states,
            inputs,
            trans,
            state_index,
            input_index,
        })
    }

    /// Convenience constructor from string ids and an edge list `(x, u, F(x,u))`.
    pub fn from_edges(
        name: &str,
        states: &[&str],
        inputs: &[&str],
        edges: &[(&str, &str, &[&str])],
    ) -> Result<Self> {
        let states: Vec<String> = states.iter().map(|s| s.to_string()).collect();
        let inputs: Vec<String> = inputs.iter().map(|s| s.to_string()).collect();
        let si = intern("states", &states)?;
        let ui = intern("inputs", &inputs)?;
        let mut images = vec![vec![StateSet::EMPTY; inputs.len()]; states.len()];
        for (x, u, img) in edges {
            let x = *si.get(*x).ok_or_else(|| Error::UnknownState(x.to_string()))?;
            let u = *ui.get(*u).ok_or_else(|| Error::UnknownInput(u.to_string()))?;
            for y in img.iter() {
                let y = *si.get(*y).ok_or_else(|| Error::UnknownState(y.to_string()))?;
                images[x][u].insert(y);
            }
        }
        Self::new(name, states, inputs, images)
    }

    /// Builds a system with states named `0..n` and inputs `a, b, ..` from
    /// row-major images. Intended for generated systems.
    pub fn from_images(name: &str, n_states: usize, n_inputs: usize, images: &[StateSet]) -> Result<Self> {
        if images.len() != n_states * n_inputs {
            return Err(Error::InvalidSystem("image table has the wrong size".into()));
        }
        let states = (0..n_states).map(|i| i.to_string()).collect();
        let inputs = (0..n_inputs).map(default_input_name).collect();
        let rows = images.chunks(n_inputs.max(1)).map(|c| c.to_vec()).collect();
        Self::new(name, states, inputs, rows)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn state_ids(&self) -> &[String] {
        &self.states
    }

    pub fn input_ids(&self) -> &[String] {
        &self.inputs
    }

    pub fn state_id(&self, x: usize) -> &str {
        &self.states[x]
    }

    pub fn input_id(&self, u: usize) -> &str {
        &self.inputs[u]
    }

    pub fn state(&self, id: &str) -> Result<usize> {
        self.state_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownState(id.to_string()))
    }

    pub fn input(&self, id: &str) -> Result<usize> {
        self.input_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownInput(id.to_string()))
    }

    pub fn all_states(&self) -> StateSet {
        StateSet::full(self.num_states())
    }

    pub fn all_inputs(&self) -> InputSet {
        InputSet::full(self.num_inputs())
    }

    pub fn state_set<S: AsRef<str>>(&self, ids: &[S]) -> Result<StateSet> {
        ids.iter().map(|s| self.state(s.as_ref())).collect()
    }

    pub fn input_set<S: AsRef<str>>(&self, ids: &[S]) -> Result<InputSet> {
        ids.iter().map(|s| self.input(s.as_ref())).collect()
    }

    /// `F(x, u)`.
    pub fn image(&self, x: usize, u: usize) -> StateSet {
        self.trans[x * self.inputs.len() + u]
    }

    /// `F(I, u)`, the union of the images of every state in `set`.
    pub fn image_of(&self, set: StateSet, u: usize) -> StateSet {
        set.iter().fold(StateSet::EMPTY, |acc, x| acc.union(self.image(x, u)))
    }

    pub fn check_states(&self, set: StateSet) -> Result<()> {
        match set.difference(self.all_states()).first() {
            None => Ok(()),
            Some(i) => Err(Error::UnknownState(format!("#{i}"))),
        }
    }

    pub fn check_inputs(&self, set: InputSet) -> Result<()> {
        match set.difference(self.all_inputs()).first() {
            None => Ok(()),
            Some(i) => Err(Error::UnknownInput(format!("#{i}"))),
        }
    }

    /// `Q_u = {x ∈ Q : F(x,u) ⊆ Q}`.
    pub fn q_u(&self, target: StateSet, u: usize) -> Result<StateSet> {
        if u >= self.num_inputs() {
            return Err(Error::UnknownInput(format!("#{u}")));
        }
        self.check_states(target)?;
        Ok(self.q_u_unchecked(target, u))
    }

    pub(crate) fn q_u_unchecked(&self, target: StateSet, u: usize) -> StateSet {
        target
            .iter()
            .filter(|&x| self.image(x, u).is_subset(target))
            .collect()
    }

    /// `Q_u` for every input, indexed by input.
    pub fn q_all(&self, target: StateSet) -> Vec<StateSet> {
        (0..self.num_inputs())
            .map(|u| self.q_u_unchecked(target, u))
            .collect()
    }

    pub fn is_controlled_invariant(&self, target: StateSet) -> Result<Invariance> {
        self.check_states(target)?;
        let mut witness = Vec::new();
        let mut violating = StateSet::EMPTY;
        for x in target.iter() {
            match (0..self.num_inputs()).find(|&u| self.image(x, u).is_subset(target)) {
                Some(u) => witness.push((x, u)),
                None => violating.insert(x),
            }
        }
        Ok(if violating.is_empty() {
            Invariance::Invariant(witness)
        } else {
            Invariance::Violated(violating)
        })
    }

    /// Fails with `NotControlledInvariant` unless `target` is controlled invariant.
    pub fn require_controlled_invariant(&self, target: StateSet) -> Result<()> {
        match self.is_controlled_invariant(target)? {
            Invariance::Invariant(_) => Ok(()),
            Invariance::Violated(v) => Err(Error::NotControlledInvariant {
                violating: self.state_names(v),
            }),
        }
    }

    pub fn state_names(&self, set: StateSet) -> Vec<String> {
        set.iter().map(|x| self.states[x].clone()).collect()
    }

    pub fn input_names(&self, set: InputSet) -> Vec<String> {
        set.iter().map(|u| self.inputs[u].clone()).collect()
    }

    /// Renders a word by concatenating input ids, or joining them with `.`
    /// when some id is longer than one character.
    pub fn word_string(&self, word: &ControlWord) -> String {
        let sep = if self.inputs.iter().all(|s| s.len() == 1) { "" } else { "." };
        word.0
            .iter()
            .map(|&u| self.inputs[u].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn set_string(&self, set: StateSet) -> String {
        format!("{{{}}}", self.state_names(set).join(","))
    }
}

fn default_input_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("u{i}")
    }
}

/// Checks `F₂(π(x), r(u)) ⊆ π(F₁(x,u))` for every state and input of `s1`.
pub fn is_semi_conjugacy(s1: &UncertainSystem, s2: &UncertainSystem, c: &ConjugacyPair) -> bool {
    if c.state_map.len() != s1.num_states() || c.input_map.len() != s1.num_inputs() {
        return false;
    }
    if c.state_map.iter().any(|&y| y >= s2.num_states())
        || c.input_map.iter().any(|&v| v >= s2.num_inputs())
    {
        return false;
    }
    (0..s1.num_states()).all(|x| {
        (0..s1.num_inputs()).all(|u| {
            let lifted = c.map_states(s1.image(x, u));
            s2.image(c.state_map[x], c.input_map[u]).is_subset(lifted)
        })
    })
}
