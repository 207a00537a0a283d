//! Cellular automata, torus configurations and the synchronous global step.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::flow::FlowFunction;
use crate::lattice::{Cell, Geometry, NeighborTable, TorusDims};
use crate::rule::{LocalRule, RuleTable, SymmetryClass};
use crate::state::StateSet;
use crate::tuples;
use crate::State;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    Table(RuleTable),
    /// `center + sum of flow(center, neighbor)`.
    Flow(FlowFunction),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellularAutomaton {
    geometry: Geometry,
    rule: Rule,
    // Closure over every neighbor tuple was verified at construction.
    closed: bool,
}

impl CellularAutomaton {
    pub fn from_table(table: RuleTable) -> Self {
        CellularAutomaton {
            geometry: table.geometry(),
            rule: Rule::Table(table),
            closed: true,
        }
    }

    /// Flow-backed automaton. The flow must be antisymmetric and the rule
    /// closed over every `|Q| * C(|Q|+n-1, n)` canonical tuple.
    pub fn from_flow(flow: FlowFunction, geometry: Geometry) -> Result<Self> {
        flow.check_antisymmetric()?;
        let states = flow.states();
        let k = states.len();
        let n = geometry.arity();
        let mut err = None;
        for g in 0..k {
            tuples::for_each_multiset(k, n, |t| {
                let value = t.iter().fold(states.state(g) as i128, |acc, &j| {
                    acc + flow.get_index(g, j) as i128
                });
                if State::try_from(value).map_or(true, |v| !states.contains(v)) {
                    err = Some(Error::Closure {
                        center: states.state(g),
                        neighbors: t.iter().map(|&j| states.state(j)).collect(),
                        value,
                    });
                    return false;
                }
                true
            });
            if let Some(e) = err.take() {
                return Err(e);
            }
        }
        Ok(CellularAutomaton {
            geometry,
            rule: Rule::Flow(flow),
            closed: true,
        })
    }

    /// Flow-backed automaton whose closure is only checked as it runs: any
    /// step producing a value outside the state set fails. Used for lifted
    /// automata whose state set is closed on valid encodings only.
    pub fn from_flow_open(flow: FlowFunction, geometry: Geometry) -> Result<Self> {
        flow.check_antisymmetric()?;
        Ok(CellularAutomaton {
            geometry,
            rule: Rule::Flow(flow),
            closed: false,
        })
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn flow(&self) -> Option<&FlowFunction> {
        match &self.rule {
            Rule::Flow(f) => Some(f),
            Rule::Table(_) => None,
        }
    }

    pub fn table(&self) -> Option<&RuleTable> {
        match &self.rule {
            Rule::Table(t) => Some(t),
            Rule::Flow(_) => None,
        }
    }

    /// Whether closure was verified over all neighbor tuples.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn quiescent(&self) -> State {
        self.states().quiescent()
    }

    /// Evaluates the local rule on state ranks, returning the new value
    /// (which may lie outside the state set for open flow rules).
    #[inline]
    fn eval_ranks(&self, g: usize, neighbors: impl Iterator<Item = usize>) -> i128 {
        match &self.rule {
            Rule::Flow(f) => neighbors.fold(f.states().state(g) as i128, |acc, j| {
                acc + f.get_index(g, j) as i128
            }),
            Rule::Table(t) => t.lookup_ranks(g, neighbors) as i128,
        }
    }

    fn closure_error(&self, center: State, neighbors: &[State], value: i128) -> Error {
        Error::Closure {
            center,
            neighbors: neighbors.to_vec(),
            value,
        }
    }
}

impl LocalRule for CellularAutomaton {
    fn geometry(&self) -> Geometry {
        self.geometry
    }

    fn states(&self) -> &StateSet {
        match &self.rule {
            Rule::Table(t) => t.states(),
            Rule::Flow(f) => f.states(),
        }
    }

    fn symmetry(&self) -> SymmetryClass {
        match &self.rule {
            Rule::Table(t) => t.symmetry_kind().into(),
            Rule::Flow(_) => SymmetryClass::Permutation,
        }
    }

    fn eval(&self, center: State, neighbors: &[State]) -> Result<State> {
        apply_rule(self, center, neighbors)
    }
}

/// Applies the local rule of `ca` to one neighborhood.
pub fn apply_rule(ca: &CellularAutomaton, center: State, neighbors: &[State]) -> Result<State> {
    if neighbors.len() != ca.geometry.arity() {
        return Err(Error::Arity {
            expected: ca.geometry.arity(),
            found: neighbors.len(),
        });
    }
    match &ca.rule {
        Rule::Table(t) => t.lookup(center, neighbors),
        Rule::Flow(f) => {
            let states = f.states();
            let g = states.require(center)?;
            let mut ranks = [0usize; 6];
            for (slot, &n) in ranks.iter_mut().zip(neighbors) {
                *slot = states.require(n)?;
            }
            let value = ca.eval_ranks(g, ranks[..neighbors.len()].iter().copied());
            match State::try_from(value) {
                Ok(v) if states.contains(v) => Ok(v),
                _ => Err(ca.closure_error(center, neighbors, value)),
            }
        }
    }
}

/// States on every cell of a torus, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    dims: TorusDims,
    cells: Vec<State>,
}

impl Configuration {
    pub fn new(dims: TorusDims, cells: Vec<State>) -> Result<Self> {
        if cells.len() != dims.len() {
            return Err(Error::ConfigLength {
                expected: dims.len(),
                found: cells.len(),
            });
        }
        Ok(Configuration { dims, cells })
    }

    pub fn filled(dims: TorusDims, state: State) -> Self {
        Configuration {
            dims,
            cells: vec![state; dims.len()],
        }
    }

    /// Uniform sample over `alphabet`.
    pub fn random<R: Rng + ?Sized>(dims: TorusDims, alphabet: &[State], rng: &mut R) -> Self {
        let cells = (0..dims.len())
            .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
            .collect();
        Configuration { dims, cells }
    }

    pub fn dims(&self) -> &TorusDims {
        &self.dims
    }

    pub fn cells(&self) -> &[State] {
        &self.cells
    }

    pub fn cells_mut(&mut self) -> &mut [State] {
        &mut self.cells
    }

    pub fn into_cells(self) -> Vec<State> {
        self.cells
    }

    pub fn get(&self, cell: Cell) -> State {
        self.cells[self.dims.index(cell)]
    }

    pub fn set(&mut self, cell: Cell, state: State) {
        let i = self.dims.index(cell);
        self.cells[i] = state;
    }

    /// Every value must lie in `states`.
    pub fn validate(&self, states: &StateSet) -> Result<()> {
        match self.cells.iter().find(|&&s| !states.contains(s)) {
            Some(&s) => Err(Error::StateNotInSet(s)),
            None => Ok(()),
        }
    }

    /// Cyclic translation by `(dx, dy)`; cell `c` moves to `c + (dx, dy)`.
    pub fn translated(&self, dx: i64, dy: i64) -> Self {
        let mut out = self.clone();
        for cell in self.dims.cells() {
            let to = Cell::new(cell.x + dx, cell.y + dy);
            out.set(to, self.get(cell));
        }
        out
    }
}

/// Exact sum of all cells.
pub fn total_sum(config: &Configuration) -> i128 {
    config.cells.iter().map(|&s| s as i128).sum()
}

/// Reusable stepping state for repeated steps on one torus.
#[derive(Debug, Clone)]
pub struct Stepper<'a> {
    ca: &'a CellularAutomaton,
    dims: TorusDims,
    neighbors: NeighborTable,
    ranks: Vec<usize>,
}

impl<'a> Stepper<'a> {
    pub fn new(ca: &'a CellularAutomaton, dims: TorusDims) -> Result<Self> {
        if dims.geometry() != ca.geometry {
            return Err(Error::GeometryMismatch {
                expected: ca.geometry,
                found: dims.geometry(),
            });
        }
        Ok(Stepper {
            ca,
            dims,
            neighbors: dims.neighbor_table(),
            ranks: vec![0; dims.len()],
        })
    }

    /// One synchronous update from `input` into `output`.
    pub fn step_into(&mut self, input: &Configuration, output: &mut Configuration) -> Result<()> {
        if input.dims != self.dims || output.dims != self.dims {
            return Err(Error::IncompatibleDims(
                "configuration torus differs from stepper torus",
            ));
        }
        let states = self.ca.states();
        for (r, &s) in self.ranks.iter_mut().zip(&input.cells) {
            *r = states.require(s)?;
        }
        for i in 0..self.dims.len() {
            let ns = self.neighbors.of(i);
            let value = self
                .ca
                .eval_ranks(self.ranks[i], ns.iter().map(|&j| self.ranks[j]));
            let v = match State::try_from(value) {
                Ok(v) if self.ca.closed || states.contains(v) => v,
                _ => {
                    let neighbors: Vec<State> = ns.iter().map(|&j| input.cells[j]).collect();
                    return Err(self.ca.closure_error(input.cells[i], &neighbors, value));
                }
            };
            output.cells[i] = v;
        }
        Ok(())
    }

    pub fn step(&mut self, input: &Configuration) -> Result<Configuration> {
        let mut out = input.clone();
        self.step_into(input, &mut out)?;
        Ok(out)
    }
}

/// Synchronous global update of every cell.
pub fn step(ca: &CellularAutomaton, config: &Configuration) -> Result<Configuration> {
    Stepper::new(ca, config.dims)?.step(config)
}

/// `t`-fold iterate of [`step`].
pub fn evolve(ca: &CellularAutomaton, config: &Configuration, t: usize) -> Result<Configuration> {
    let mut stepper = Stepper::new(ca, config.dims)?;
    let mut cur = config.clone();
    let mut next = config.clone();
    for _ in 0..t {
        stepper.step_into(&cur, &mut next)?;
        core::mem::swap(&mut cur, &mut next);
    }
    Ok(cur)
}
