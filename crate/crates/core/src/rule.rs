//! Local transition rules given as tables.
//!
//! A [`RuleTable`] stores one entry per canonical neighbor key under its
//! declared symmetry: the sorted multiset for permutation symmetry, the least
//! rotation for rotation symmetry. A [`FullTable`] stores every
//! `(center, neighbors)` tuple and is what symmetry classification runs on.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::lattice::Geometry;
use crate::state::StateSet;
use crate::tuples::{self, count_tuples};
use crate::State;

/// Dense lookup tables are built when `|Q|^(n+1)` does not exceed this.
const DENSE_LIMIT: u128 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Rotation,
    Permutation,
}

impl Symmetry {
    pub fn name(self) -> &'static str {
        match self {
            Symmetry::Rotation => "rotation",
            Symmetry::Permutation => "permutation",
        }
    }

    /// Canonicalizes a neighbor tuple in place.
    pub fn canonicalize<T: Ord + Copy>(self, neighbors: &mut [T]) {
        match self {
            Symmetry::Permutation => neighbors.sort_unstable(),
            Symmetry::Rotation => tuples::min_rotation(neighbors),
        }
    }

    /// Calls `f` on each canonical neighbor tuple of state ranks.
    pub fn for_each_class(self, k: usize, n: usize, f: impl FnMut(&[usize]) -> bool) -> bool {
        match self {
            Symmetry::Permutation => tuples::for_each_multiset(k, n, f),
            Symmetry::Rotation => tuples::for_each_rotation_class(k, n, f),
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Strongest symmetry a full table satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryClass {
    Permutation,
    RotationOnly,
    None,
}

impl SymmetryClass {
    pub fn name(self) -> &'static str {
        match self {
            SymmetryClass::Permutation => "permutation",
            SymmetryClass::RotationOnly => "rotation-only",
            SymmetryClass::None => "none",
        }
    }

    pub fn as_symmetry(self) -> Option<Symmetry> {
        match self {
            SymmetryClass::Permutation => Some(Symmetry::Permutation),
            SymmetryClass::RotationOnly => Some(Symmetry::Rotation),
            SymmetryClass::None => None,
        }
    }
}

impl From<Symmetry> for SymmetryClass {
    fn from(s: Symmetry) -> Self {
        match s {
            Symmetry::Permutation => SymmetryClass::Permutation,
            Symmetry::Rotation => SymmetryClass::RotationOnly,
        }
    }
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Anything that maps a center and an ordered neighbor tuple to a new state.
pub trait LocalRule {
    fn geometry(&self) -> Geometry;
    fn states(&self) -> &StateSet;
    /// Declared (tables) or structural (flows) symmetry.
    fn symmetry(&self) -> SymmetryClass;
    fn eval(&self, center: State, neighbors: &[State]) -> Result<State>;
}

fn check_arity(geometry: Geometry, neighbors: usize) -> Result<()> {
    if neighbors != geometry.arity() {
        return Err(Error::Arity {
            expected: geometry.arity(),
            found: neighbors,
        });
    }
    Ok(())
}

/// Mixed-radix index of `(center, neighbors...)` over `k` states.
fn full_index(k: usize, center: usize, neighbors: &[usize]) -> usize {
    neighbors.iter().fold(center, |acc, &n| acc * k + n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleTable {
    geometry: Geometry,
    states: StateSet,
    symmetry: Symmetry,
    // Keyed by [center, canonical neighbors...] in state values.
    entries: BTreeMap<Vec<State>, State>,
    // Result ranks for every full tuple, when small enough.
    dense: Option<Vec<u32>>,
}

impl RuleTable {
    /// Builds a table from `(center, neighbors, result)` entries. Entries may
    /// use any neighbor order; they are canonicalized under `symmetry`, and
    /// two entries of the same class must agree. With `default_identity`,
    /// missing classes map to their center.
    pub fn new(
        geometry: Geometry,
        states: StateSet,
        symmetry: Symmetry,
        entries: impl IntoIterator<Item = (State, Vec<State>, State)>,
        default_identity: bool,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (center, mut neighbors, result) in entries {
            check_arity(geometry, neighbors.len())?;
            states.require(center)?;
            for &n in &neighbors {
                states.require(n)?;
            }
            if !states.contains(result) {
                return Err(Error::Closure {
                    center,
                    neighbors,
                    value: result as i128,
                });
            }
            symmetry.canonicalize(&mut neighbors);
            let mut key = Vec::with_capacity(neighbors.len() + 1);
            key.push(center);
            key.extend_from_slice(&neighbors);
            if let Some(&prev) = map.get(&key) {
                if prev != result {
                    return Err(Error::ConflictingEntry { center, neighbors });
                }
            }
            map.insert(key, result);
        }

        let k = states.len();
        let n = geometry.arity();
        let mut missing = None;
        for g in 0..k {
            symmetry.for_each_class(k, n, |t| {
                let mut key = Vec::with_capacity(n + 1);
                key.push(states.state(g));
                key.extend(t.iter().map(|&i| states.state(i)));
                if let alloc::collections::btree_map::Entry::Vacant(slot) = map.entry(key) {
                    if !default_identity {
                        missing = Some(slot.into_key());
                        return false;
                    }
                    slot.insert(states.state(g));
                }
                true
            });
            if let Some(key) = missing.take() {
                return Err(Error::IncompleteTable {
                    center: key[0],
                    neighbors: key[1..].to_vec(),
                });
            }
        }
        Self::finish(geometry, states, symmetry, map)
    }

    /// Evaluates `f` once per canonical class.
    pub fn from_fn(
        geometry: Geometry,
        states: StateSet,
        symmetry: Symmetry,
        mut f: impl FnMut(State, &[State]) -> Result<State>,
    ) -> Result<Self> {
        let k = states.len();
        let n = geometry.arity();
        let mut map = BTreeMap::new();
        let mut err = None;
        for g in 0..k {
            symmetry.for_each_class(k, n, |t| {
                let center = states.state(g);
                let neighbors: Vec<State> = t.iter().map(|&i| states.state(i)).collect();
                match f(center, &neighbors) {
                    Ok(r) if states.contains(r) => {
                        let mut key = vec![center];
                        key.extend_from_slice(&neighbors);
                        map.insert(key, r);
                        true
                    }
                    Ok(r) => {
                        err = Some(Error::Closure {
                            center,
                            neighbors,
                            value: r as i128,
                        });
                        false
                    }
                    Err(e) => {
                        err = Some(e);
                        false
                    }
                }
            });
            if let Some(e) = err.take() {
                return Err(e);
            }
        }
        Self::finish(geometry, states, symmetry, map)
    }

    fn finish(
        geometry: Geometry,
        states: StateSet,
        symmetry: Symmetry,
        entries: BTreeMap<Vec<State>, State>,
    ) -> Result<Self> {
        let q = states.quiescent();
        let mut table = RuleTable {
            geometry,
            states,
            symmetry,
            entries,
            dense: None,
        };
        let quiet = vec![q; geometry.arity()];
        let r = table.lookup(q, &quiet)?;
        if r != q {
            return Err(Error::NotQuiescent(r));
        }
        table.dense = table.build_dense();
        Ok(table)
    }

    fn build_dense(&self) -> Option<Vec<u32>> {
        let k = self.states.len();
        let n = self.geometry.arity();
        if count_tuples(k, n + 1) > DENSE_LIMIT {
            return None;
        }
        let mut dense = vec![0u32; count_tuples(k, n + 1) as usize];
        let mut key = vec![0; n + 1];
        for g in 0..k {
            tuples::for_each_tuple(k, n, |t| {
                key[0] = self.states.state(g);
                for (slot, &i) in key[1..].iter_mut().zip(t) {
                    *slot = self.states.state(i);
                }
                self.symmetry.canonicalize(&mut key[1..]);
                let r = self.entries[&key];
                dense[full_index(k, g, t)] = self.states.index_of(r).unwrap() as u32;
                true
            });
        }
        Some(dense)
    }

    /// Lookup on state ranks; the neighbors must yield exactly `arity` ranks.
    pub(crate) fn lookup_ranks(&self, g: usize, neighbors: impl Iterator<Item = usize>) -> State {
        let k = self.states.len();
        if let Some(dense) = &self.dense {
            let idx = neighbors.fold(g, |acc, j| acc * k + j);
            return self.states.state(dense[idx] as usize);
        }
        let mut key: Vec<State> = Vec::with_capacity(self.geometry.arity() + 1);
        key.push(self.states.state(g));
        key.extend(neighbors.map(|j| self.states.state(j)));
        self.symmetry.canonicalize(&mut key[1..]);
        self.entries[&key]
    }

    pub fn symmetry_kind(&self) -> Symmetry {
        self.symmetry
    }

    pub fn lookup(&self, center: State, neighbors: &[State]) -> Result<State> {
        check_arity(self.geometry, neighbors.len())?;
        let g = self.states.require(center)?;
        if let Some(dense) = &self.dense {
            let k = self.states.len();
            let mut idx = g;
            for &n in neighbors {
                idx = idx * k + self.states.require(n)?;
            }
            return Ok(self.states.state(dense[idx] as usize));
        }
        let mut key = Vec::with_capacity(neighbors.len() + 1);
        key.push(center);
        for &n in neighbors {
            self.states.require(n)?;
            key.push(n);
        }
        self.symmetry.canonicalize(&mut key[1..]);
        self.entries
            .get(&key)
            .copied()
            .ok_or_else(|| Error::IncompleteTable {
                center,
                neighbors: neighbors.to_vec(),
            })
    }

    /// Canonical entries as `(center, neighbors, result)` in sorted order.
    pub fn entries(&self) -> impl Iterator<Item = (State, &[State], State)> + '_ {
        self.entries.iter().map(|(k, &r)| (k[0], &k[1..], r))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Returns a copy with the canonical class of `(center, neighbors)` mapped
    /// to `result`.
    pub fn with_entry(&self, center: State, neighbors: &[State], result: State) -> Result<Self> {
        check_arity(self.geometry, neighbors.len())?;
        let mut key = Vec::with_capacity(neighbors.len() + 1);
        key.push(center);
        key.extend_from_slice(neighbors);
        self.symmetry.canonicalize(&mut key[1..]);
        if !self.states.contains(result) {
            return Err(Error::Closure {
                center,
                neighbors: neighbors.to_vec(),
                value: result as i128,
            });
        }
        let mut entries = self.entries.clone();
        if entries.insert(key, result).is_none() {
            return Err(Error::IncompleteTable {
                center,
                neighbors: neighbors.to_vec(),
            });
        }
        Self::finish(self.geometry, self.states.clone(), self.symmetry, entries)
    }

    /// Every ordered tuple spelled out; fails when the full table would
    /// exceed the dense size limit.
    pub fn to_full(&self) -> Result<FullTable> {
        FullTable::from_fn(self.geometry, self.states.clone(), |g, ns| {
            self.lookup(g, ns)
                .expect("canonical table covers every tuple")
        })
    }

    /// Strongest symmetry the table actually has. A rotation table is also
    /// permutation-symmetric when swapping two neighbors never matters.
    pub fn strongest_symmetry(&self) -> SymmetryClass {
        if self.symmetry == Symmetry::Permutation {
            return SymmetryClass::Permutation;
        }
        let mut swapped = Vec::with_capacity(self.geometry.arity());
        for (g, ns, r) in self.entries() {
            swapped.clear();
            swapped.extend_from_slice(ns);
            swapped.swap(0, 1);
            if self.lookup(g, &swapped) != Ok(r) {
                return SymmetryClass::RotationOnly;
            }
        }
        SymmetryClass::Permutation
    }
}

impl LocalRule for RuleTable {
    fn geometry(&self) -> Geometry {
        self.geometry
    }

    fn states(&self) -> &StateSet {
        &self.states
    }

    fn symmetry(&self) -> SymmetryClass {
        self.symmetry.into()
    }

    fn eval(&self, center: State, neighbors: &[State]) -> Result<State> {
        self.lookup(center, neighbors)
    }
}

/// A rule given on every ordered `(center, neighbors)` tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullTable {
    geometry: Geometry,
    states: StateSet,
    values: Vec<u32>,
}

impl FullTable {
    pub fn from_fn(
        geometry: Geometry,
        states: StateSet,
        mut f: impl FnMut(State, &[State]) -> State,
    ) -> Result<Self> {
        let k = states.len();
        let n = geometry.arity();
        let size = count_tuples(k, n + 1);
        if size > DENSE_LIMIT {
            return Err(Error::BudgetExceeded {
                budget: DENSE_LIMIT as u64,
                required: size,
            });
        }
        let mut values = vec![0u32; size as usize];
        let mut ns = vec![0; n];
        let mut err = None;
        for g in 0..k {
            tuples::for_each_tuple(k, n, |t| {
                for (slot, &i) in ns.iter_mut().zip(t) {
                    *slot = states.state(i);
                }
                let r = f(states.state(g), &ns);
                match states.index_of(r) {
                    Some(ri) => {
                        values[full_index(k, g, t)] = ri as u32;
                        true
                    }
                    None => {
                        err = Some(Error::Closure {
                            center: states.state(g),
                            neighbors: ns.clone(),
                            value: r as i128,
                        });
                        false
                    }
                }
            });
            if let Some(e) = err.take() {
                return Err(e);
            }
        }
        Ok(FullTable {
            geometry,
            states,
            values,
        })
    }

    /// Builds a full table from explicit ordered entries; every tuple must be
    /// listed exactly once (or consistently).
    pub fn from_entries(
        geometry: Geometry,
        states: StateSet,
        entries: impl IntoIterator<Item = (State, Vec<State>, State)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (g, ns, r) in entries {
            check_arity(geometry, ns.len())?;
            states.require(g)?;
            for &n in &ns {
                states.require(n)?;
            }
            if let Some(&prev) = map.get(&(g, ns.clone())) {
                if prev != r {
                    return Err(Error::ConflictingEntry {
                        center: g,
                        neighbors: ns,
                    });
                }
            }
            map.insert((g, ns), r);
        }
        let mut missing = None;
        let table = Self::from_fn(geometry, states, |g, ns| match map.get(&(g, ns.to_vec())) {
            Some(&r) => r,
            None => {
                if missing.is_none() {
                    missing = Some((g, ns.to_vec()));
                }
                g
            }
        })?;
        if let Some((center, neighbors)) = missing {
            return Err(Error::IncompleteTable { center, neighbors });
        }
        Ok(table)
    }

    /// Builds directly from result ranks in mixed-radix order; used by
    /// enumerators. `values.len()` must be `|Q|^(n+1)` with ranks `< |Q|`.
    pub fn from_ranks(geometry: Geometry, states: StateSet, values: Vec<u32>) -> Result<Self> {
        let size = count_tuples(states.len(), geometry.arity() + 1);
        if values.len() as u128 != size {
            return Err(Error::InvalidArgument("rank vector has the wrong length"));
        }
        if values.iter().any(|&v| v as usize >= states.len()) {
            return Err(Error::InvalidArgument("rank out of range"));
        }
        Ok(FullTable {
            geometry,
            states,
            values,
        })
    }

    fn rank_at(&self, g: usize, ns: &[usize]) -> u32 {
        self.values[full_index(self.states.len(), g, ns)]
    }

    /// Strongest symmetry of this table: permutation implies rotation.
    pub fn classify_symmetry(&self) -> SymmetryClass {
        let k = self.states.len();
        let n = self.geometry.arity();
        let mut rotated = vec![0usize; n];
        let mut swapped = vec![0usize; n];
        let mut rotation = true;
        let mut permutation = true;
        for g in 0..k {
            tuples::for_each_tuple(k, n, |t| {
                let r = self.rank_at(g, t);
                rotated[..n - 1].copy_from_slice(&t[1..]);
                rotated[n - 1] = t[0];
                if self.rank_at(g, &rotated) != r {
                    rotation = false;
                    permutation = false;
                    return false;
                }
                if permutation {
                    swapped.copy_from_slice(t);
                    swapped.swap(0, 1);
                    if self.rank_at(g, &swapped) != r {
                        permutation = false;
                    }
                }
                true
            });
            if !rotation {
                break;
            }
        }
        // A cyclic shift and one transposition generate the symmetric group.
        match (rotation, permutation) {
            (true, true) => SymmetryClass::Permutation,
            (true, false) => SymmetryClass::RotationOnly,
            _ => SymmetryClass::None,
        }
    }

    /// Canonical table under `symmetry`, if the full table has it.
    pub fn to_rule_table(&self, symmetry: Symmetry) -> Result<RuleTable> {
        let class = self.classify_symmetry();
        let ok = match symmetry {
            Symmetry::Permutation => class == SymmetryClass::Permutation,
            Symmetry::Rotation => class != SymmetryClass::None,
        };
        if !ok {
            return Err(Error::NotApplicable);
        }
        RuleTable::from_fn(self.geometry, self.states.clone(), symmetry, |g, ns| {
            self.eval(g, ns)
        })
    }
}

impl LocalRule for FullTable {
    fn geometry(&self) -> Geometry {
        self.geometry
    }

    fn states(&self) -> &StateSet {
        &self.states
    }

    fn symmetry(&self) -> SymmetryClass {
        self.classify_symmetry()
    }

    fn eval(&self, center: State, neighbors: &[State]) -> Result<State> {
        check_arity(self.geometry, neighbors.len())?;
        let k = self.states.len();
        let mut idx = self.states.require(center)?;
        for &n in neighbors {
            idx = idx * k + self.states.require(n)?;
        }
        Ok(self.states.state(self.values[idx] as usize))
    }
}

/// Free-function form of [`FullTable::classify_symmetry`].
pub fn classify_symmetry(table: &FullTable) -> SymmetryClass {
    table.classify_symmetry()
}
