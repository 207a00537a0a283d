use alloc::vec::Vec;

use crate::lattice::{Cell, Geometry};
use crate::State;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid {geometry} torus {width}x{height}: {reason}")]
    InvalidDims {
        geometry: Geometry,
        width: usize,
        height: usize,
        reason: &'static str,
    },
    #[error("geometry mismatch: expected {expected}, found {found}")]
    GeometryMismatch { expected: Geometry, found: Geometry },
    #[error("state set is empty")]
    EmptyStateSet,
    #[error("duplicate state {0}")]
    DuplicateState(State),
    #[error("quiescent state {0} is not in the state set")]
    QuiescentNotInSet(State),
    #[error("state {0} is not in the state set")]
    StateNotInSet(State),
    #[error("expected {expected} neighbors, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("closure violation: rule maps center {center} with neighbors {neighbors:?} to {value}, outside the state set")]
    Closure {
        center: State,
        neighbors: Vec<State>,
        value: i128,
    },
    #[error("quiescence violation: f(q,...,q) = {0}")]
    NotQuiescent(State),
    #[error("rule table has no entry for center {center} with neighbors {neighbors:?}")]
    IncompleteTable {
        center: State,
        neighbors: Vec<State>,
    },
    #[error("conflicting entries for center {center} with neighbors {neighbors:?}")]
    ConflictingEntry {
        center: State,
        neighbors: Vec<State>,
    },
    #[error("flow is not antisymmetric at ({x}, {y}): {forward} vs {backward}")]
    NotAntisymmetric {
        x: State,
        y: State,
        forward: i64,
        backward: i64,
    },
    #[error(
        "rule is not rotation- or permutation-symmetric; the flow characterization does not apply"
    )]
    NotApplicable,
    #[error("enumeration needs {required} configurations, budget is {budget}")]
    BudgetExceeded { budget: u64, required: u128 },
    #[error("configuration length {found} does not match torus size {expected}")]
    ConfigLength { expected: usize, found: usize },
    #[error("incompatible dimensions: {0}")]
    IncompatibleDims(&'static str),
    #[error("embedding does not preserve adjacency at source cell {0:?}")]
    AdjacencyMismatch(Cell),
    #[error("malformed encoding at {cell:?} (value {value}): {reason}")]
    MalformedEncoding {
        cell: Cell,
        value: State,
        reason: &'static str,
    },
    #[error("states must satisfy 0 < min and max < bound {bound} (min {min}, max {max})")]
    NotNormalized {
        min: State,
        max: State,
        bound: State,
    },
    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),
    #[error("{0} is not a sum of exactly two payloads")]
    NotDecomposable(i64),
    #[error("spacer state {0} collides with an existing state")]
    SpacerCollision(State),
    #[error("rule is not flow-backed")]
    NotFlowBacked,
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
