//! Number-conserving cellular automata on triangular and hexagonal tori.
//!
//! The crate covers lattice geometry ([`lattice`]), rules and the global step
//! ([`rule`], [`ca`]), the flow decomposition of symmetric conserving rules
//! ([`flow`], [`theory`]), brute-force conservation oracles
//! ([`conservation`]) and the step-by-step simulations between the two
//! lattices ([`xsim`]).
//!
//! Everything is `no_std` with `alloc`.

#![no_std]

extern crate alloc;

pub mod ca;
pub mod conservation;
pub mod error;
pub mod flow;
pub mod lattice;
pub mod rule;
pub mod state;
pub mod theory;
pub mod tuples;
pub mod xsim;

/// Cell states are machine integers; sums are taken in `i128`.
pub type State = i64;

pub use ca::{apply_rule, evolve, step, total_sum, CellularAutomaton, Configuration, Rule};
pub use error::{Error, Result};
pub use flow::FlowFunction;
pub use lattice::{Cell, ColorClass, Geometry, Orientation, TorusDims};
pub use rule::{FullTable, LocalRule, RuleTable, Symmetry, SymmetryClass};
pub use state::StateSet;
