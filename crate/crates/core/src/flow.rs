//! Two-argument integer flows between states.
//!
//! A flow `flow(x, y)` is the amount a cell in state `x` receives from a
//! neighbor in state `y`. Rules built from an antisymmetric flow conserve the
//! total sum, since every transfer is matched by its opposite.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::state::StateSet;
use crate::State;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlowFunction {
    states: StateSet,
    // |Q| x |Q|, indexed by state rank.
    values: Vec<i64>,
}

impl FlowFunction {
    pub fn zero(states: StateSet) -> Self {
        let n = states.len();
        FlowFunction {
            states,
            values: vec![0; n * n],
        }
    }

    /// Builds an antisymmetric flow from `(x, y, v)` triples. Each triple also
    /// sets `(y, x)` to `-v`; a triple that contradicts an earlier one is an
    /// error, a consistent restatement is accepted.
    pub fn antisymmetric(
        states: StateSet,
        pairs: impl IntoIterator<Item = (State, State, i64)>,
    ) -> Result<Self> {
        let n = states.len();
        let mut values = vec![0i64; n * n];
        let mut set = vec![false; n * n];
        for (x, y, v) in pairs {
            let i = states.require(x)?;
            let j = states.require(y)?;
            let neg = v.checked_neg().ok_or(Error::Overflow("flow value"))?;
            for (a, b, val) in [(i, j, v), (j, i, neg)] {
                let k = a * n + b;
                if set[k] && values[k] != val {
                    return Err(Error::NotAntisymmetric {
                        x: states.state(a),
                        y: states.state(b),
                        forward: values[k],
                        backward: val,
                    });
                }
                values[k] = val;
                set[k] = true;
            }
            if i == j && v != 0 {
                return Err(Error::NotAntisymmetric {
                    x,
                    y,
                    forward: v,
                    backward: v,
                });
            }
        }
        Ok(FlowFunction { states, values })
    }

    /// Builds a flow pointwise without any symmetry assumption.
    pub fn from_fn(states: StateSet, mut f: impl FnMut(State, State) -> i64) -> Self {
        let n = states.len();
        let mut values = Vec::with_capacity(n * n);
        for &x in states.states() {
            for &y in states.states() {
                values.push(f(x, y));
            }
        }
        FlowFunction { states, values }
    }

    pub fn states(&self) -> &StateSet {
        &self.states
    }

    pub fn get(&self, x: State, y: State) -> Result<i64> {
        let i = self.states.require(x)?;
        let j = self.states.require(y)?;
        Ok(self.get_index(i, j))
    }

    #[inline]
    pub fn get_index(&self, i: usize, j: usize) -> i64 {
        self.values[i * self.states.len() + j]
    }

    /// First `(x, y)` (by state rank, `x <= y`) with `flow(x, y) != -flow(y, x)`.
    pub fn antisymmetry_violation(&self) -> Option<(State, State, i64, i64)> {
        let n = self.states.len();
        for i in 0..n {
            for j in i..n {
                let (f, b) = (self.get_index(i, j), self.get_index(j, i));
                if f.checked_neg() != Some(b) {
                    return Some((self.states.state(i), self.states.state(j), f, b));
                }
            }
        }
        None
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetry_violation().is_none()
    }

    pub fn check_antisymmetric(&self) -> Result<()> {
        match self.antisymmetry_violation() {
            None => Ok(()),
            Some((x, y, forward, backward)) => Err(Error::NotAntisymmetric {
                x,
                y,
                forward,
                backward,
            }),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Nonzero entries as `(x, y, v)` in rank order.
    pub fn nonzero(&self) -> impl Iterator<Item = (State, State, i64)> + '_ {
        let n = self.states.len();
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(move |(k, &v)| (self.states.state(k / n), self.states.state(k % n), v))
    }

    /// Same flow on states relabeled `s -> s + shift`.
    pub fn shifted(&self, shift: State) -> Result<Self> {
        let shifted = self
            .states
            .states()
            .iter()
            .map(|&s| s.checked_add(shift).ok_or(Error::Overflow("state shift")))
            .collect::<Result<Vec<_>>>()?;
        let q = self
            .states
            .quiescent()
            .checked_add(shift)
            .ok_or(Error::Overflow("state shift"))?;
        // Shifting preserves order, so the value matrix is unchanged.
        Ok(FlowFunction {
            states: StateSet::new(shifted, q)?,
            values: self.values.clone(),
        })
    }
}
