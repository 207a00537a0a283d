use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::State;

/// A finite set of integer states together with its quiescent state.
///
/// States are kept sorted so that a state's index is its rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    states: Vec<State>,
    quiescent: State,
}

impl StateSet {
    /// Rejects duplicates; order of `states` does not matter.
    pub fn new(states: impl IntoIterator<Item = State>, quiescent: State) -> Result<Self> {
        let mut states: Vec<State> = states.into_iter().collect();
        if states.is_empty() {
            return Err(Error::EmptyStateSet);
        }
        states.sort_unstable();
        if let Some(w) = states.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateState(w[0]));
        }
        if states.binary_search(&quiescent).is_err() {
            return Err(Error::QuiescentNotInSet(quiescent));
        }
        Ok(StateSet { states, quiescent })
    }

    /// The contiguous range `lo..=hi`.
    pub fn range(lo: State, hi: State, quiescent: State) -> Result<Self> {
        Self::new(lo..=hi, quiescent)
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn quiescent(&self) -> State {
        self.quiescent
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn contains(&self, s: State) -> bool {
        self.states.binary_search(&s).is_ok()
    }

    pub fn index_of(&self, s: State) -> Option<usize> {
        self.states.binary_search(&s).ok()
    }

    pub fn require(&self, s: State) -> Result<usize> {
        self.index_of(s).ok_or(Error::StateNotInSet(s))
    }

    pub fn min(&self) -> State {
        self.states[0]
    }

    pub fn max(&self) -> State {
        self.states[self.states.len() - 1]
    }

    pub fn state(&self, index: usize) -> State {
        self.states[index]
    }

    pub fn quiescent_index(&self) -> usize {
        self.states.binary_search(&self.quiescent).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sets() {
        assert_eq!(StateSet::new([], 0), Err(Error::EmptyStateSet));
        assert_eq!(StateSet::new([0, 1, 1], 0), Err(Error::DuplicateState(1)));
        assert_eq!(StateSet::new([0, 1], 2), Err(Error::QuiescentNotInSet(2)));
    }

    #[test]
    fn sorted_indexing() {
        let q = StateSet::new([3, -1, 0], 0).unwrap();
        assert_eq!(q.states(), &[-1, 0, 3]);
        assert_eq!(q.index_of(3), Some(2));
        assert_eq!(q.quiescent_index(), 1);
        assert_eq!(q.require(7), Err(Error::StateNotInSet(7)));
    }
}
