//! Step-by-step simulations between the two lattices.
//!
//! * Triangular in hexagonal, one step per step: the up and down triangles
//!   become the first two hexagonal color classes, the third class is filled
//!   with a fresh spacer state whose flows are all zero.
//! * Hexagonal in triangular, two steps per step: hexagonal cells become up
//!   triangles, down triangles are zero-initialized gatherers. In the first
//!   step every state cell `s_i` sends the payload `p_i` to each of its three
//!   gatherers; in the second, a cell holding `s_i - 3p_i` reads the other two
//!   payloads out of each gatherer sum and takes back `p_i` plus its two
//!   hexagonal flows, which empties the gatherers exactly.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ca::{total_sum, CellularAutomaton, Configuration, Stepper};
use crate::error::{Error, Result};
use crate::flow::FlowFunction;
use crate::lattice::{hex_color, tri_orientation, Cell, Geometry, Orientation, TorusDims};
use crate::rule::LocalRule;
use crate::state::StateSet;
use crate::tuples;
use crate::State;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    TriInHex,
    HexInTri,
}

/// Injective cell map from a simulated torus into a simulator torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingMap {
    direction: Direction,
    source: TorusDims,
    target: TorusDims,
    // Source index -> target cell.
    image: Vec<Cell>,
    // Target index -> source index.
    preimage: Vec<Option<usize>>,
}

impl EmbeddingMap {
    /// Up triangle `(x, y)` goes to hexagonal `(x, (3y - x) / 2)` (class 0),
    /// down triangle `(x, y)` to `(x, (3y - x + 1) / 2)` (class 1).
    ///
    /// The map is well defined and bijective onto classes 0 and 1 exactly
    /// when the hexagonal torus has the same width, `2 * hex height =
    /// 3 * tri height`, and the hexagonal height divides half the width.
    pub fn tri_in_hex(tri: TorusDims, hex: TorusDims) -> Result<Self> {
        expect_geometry(&tri, Geometry::Triangular)?;
        expect_geometry(&hex, Geometry::Hexagonal)?;
        if hex.width() % 3 != 0 || hex.height() % 3 != 0 {
            return Err(Error::IncompatibleDims(
                "hexagonal width and height must be multiples of 3",
            ));
        }
        if 3 * tri.len() != 2 * hex.len() {
            return Err(Error::IncompatibleDims(
                "triangle count must equal the size of two hexagonal color classes",
            ));
        }
        if tri.width() != hex.width()
            || 2 * hex.height() != 3 * tri.height()
            || (hex.width() / 2) % hex.height() != 0
        {
            return Err(Error::IncompatibleDims(
                "need equal widths, 2*hex height = 3*tri height, and hex height dividing width/2",
            ));
        }
        let image = tri
            .cells()
            .map(|c| {
                let shift = match tri_orientation(c) {
                    Orientation::Up => 0,
                    Orientation::Down => 1,
                };
                hex.wrap(Cell::new(c.x, (3 * c.y - c.x + shift).div_euclid(2)))
            })
            .collect();
        Self::finish(Direction::TriInHex, tri, hex, image)
    }

    /// Hexagonal `(i, j)` goes to the up triangle `((2i + j) mod 2W, j)` on a
    /// `2W x H` triangular torus; needs `H ≡ 0 (mod 2W)`.
    pub fn hex_in_tri(hex: TorusDims) -> Result<Self> {
        expect_geometry(&hex, Geometry::Hexagonal)?;
        if hex.height() % (2 * hex.width()) != 0 {
            return Err(Error::IncompatibleDims(
                "hexagonal height must be a multiple of twice its width",
            ));
        }
        let tri = TorusDims::triangular(2 * hex.width(), hex.height())?;
        let image = hex
            .cells()
            .map(|c| tri.wrap(Cell::new(2 * c.x + c.y, c.y)))
            .collect();
        Self::finish(Direction::HexInTri, hex, tri, image)
    }

    fn finish(
        direction: Direction,
        source: TorusDims,
        target: TorusDims,
        image: Vec<Cell>,
    ) -> Result<Self> {
        let mut preimage = vec![None; target.len()];
        for (i, &c) in image.iter().enumerate() {
            let t = target.index(c);
            if preimage[t].is_some() {
                return Err(Error::IncompatibleDims("cell map is not injective"));
            }
            preimage[t] = Some(i);
        }
        let map = EmbeddingMap {
            direction,
            source,
            target,
            image,
            preimage,
        };
        map.verify_adjacency()?;
        Ok(map)
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn source(&self) -> TorusDims {
        self.source
    }

    pub fn target(&self) -> TorusDims {
        self.target
    }

    pub fn image(&self, cell: Cell) -> Cell {
        self.image[self.source.index(cell)]
    }

    pub fn preimage(&self, cell: Cell) -> Option<Cell> {
        self.preimage[self.target.index(cell)].map(|i| self.source.cell(i))
    }

    /// Target cells that stand for a source cell's neighbors: the class-0/1
    /// hexagonal neighbors for triangles, or the up triangles reached through
    /// the three adjacent gatherers for hexagons.
    pub fn designated_neighbors(&self, target_cell: Cell) -> Vec<Cell> {
        let t = &self.target;
        match self.direction {
            Direction::TriInHex => t
                .neighbors(target_cell)
                .iter()
                .copied()
                .filter(|&n| hex_color(n).value() != 2)
                .collect(),
            Direction::HexInTri => {
                let mut out = Vec::with_capacity(6);
                for g in t.neighbors(target_cell).iter() {
                    let mut skipped = false;
                    for &n in t.neighbors(*g).iter() {
                        if n == target_cell && !skipped {
                            skipped = true;
                        } else {
                            out.push(n);
                        }
                    }
                }
                out
            }
        }
    }

    /// Checks, for every source cell, that the images of its neighbors are
    /// exactly (as a multiset) its image's designated neighbors.
    pub fn verify_adjacency(&self) -> Result<()> {
        for (i, &img) in self.image.iter().enumerate() {
            let cell = self.source.cell(i);
            let mut expected: Vec<Cell> = self
                .source
                .neighbors(cell)
                .iter()
                .map(|&n| self.image(n))
                .collect();
            let mut found = self.designated_neighbors(img);
            expected.sort_unstable();
            found.sort_unstable();
            let class_ok = match self.direction {
                Direction::TriInHex => {
                    let want = match tri_orientation(cell) {
                        Orientation::Up => 0,
                        Orientation::Down => 1,
                    };
                    hex_color(img).value() == want
                }
                Direction::HexInTri => tri_orientation(img) == Orientation::Up,
            };
            if !class_ok || expected != found {
                return Err(Error::AdjacencyMismatch(cell));
            }
        }
        Ok(())
    }
}

fn expect_geometry(dims: &TorusDims, geometry: Geometry) -> Result<()> {
    if dims.geometry() != geometry {
        return Err(Error::GeometryMismatch {
            expected: geometry,
            found: dims.geometry(),
        });
    }
    Ok(())
}

/// Encoder/decoder pair between simulated and simulator configurations.
pub trait ConfigCodec {
    /// Simulated -> simulator.
    fn encode(&self, config: &Configuration) -> Result<Configuration>;
    /// Simulator -> simulated; defined on encodings (and their images after
    /// each full simulated step).
    fn decode(&self, config: &Configuration) -> Result<Configuration>;
}

/// Parameters of the triangular-in-hexagonal lift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpacerParameters {
    pub spacer: State,
}

/// Parameters of the hexagonal-in-triangular lift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PayloadParameters {
    /// Strict upper bound `M` on the hexagonal states.
    pub bound: State,
    /// `p_i = 2^(ceil(lg M) + i)`.
    pub payloads: Vec<i64>,
    /// Hexagonal states `s_i` in index order.
    pub hex_states: Vec<State>,
}

impl PayloadParameters {
    pub fn payload_of(&self, state: State) -> Option<i64> {
        self.hex_states
            .binary_search(&state)
            .ok()
            .map(|i| self.payloads[i])
    }
}

fn flow_of(ca: &CellularAutomaton, geometry: Geometry) -> Result<&FlowFunction> {
    if ca.geometry() != geometry {
        return Err(Error::GeometryMismatch {
            expected: geometry,
            found: ca.geometry(),
        });
    }
    let flow = ca.flow().ok_or(Error::NotFlowBacked)?;
    flow.check_antisymmetric()?;
    Ok(flow)
}

/// Hexagonal automaton simulating `tri` in one step per step.
///
/// The hexagonal states are the triangular ones plus the spacer `q'`
/// (default `max + 1`), which is also the hexagonal quiescent state. Flows
/// between triangular states are copied, flows involving `q'` are zero.
///
/// Closure of the lifted rule is guaranteed only on encodings (three state
/// neighbors and three spacers), so it is checked as the automaton runs.
pub fn lift_tri_to_hex(
    tri: &CellularAutomaton,
    spacer: Option<State>,
) -> Result<(CellularAutomaton, SpacerParameters)> {
    let phi = flow_of(tri, Geometry::Triangular)?;
    let qt = phi.states();
    let spacer = match spacer {
        Some(s) => s,
        None => qt
            .max()
            .checked_add(1)
            .ok_or(Error::Overflow("spacer state"))?,
    };
    if qt.contains(spacer) {
        return Err(Error::SpacerCollision(spacer));
    }
    let states = StateSet::new(qt.states().iter().copied().chain([spacer]), spacer)?;
    let psi = FlowFunction::antisymmetric(states, phi.nonzero())?;
    let hex = CellularAutomaton::from_flow_open(psi, Geometry::Hexagonal)?;
    Ok((hex, SpacerParameters { spacer }))
}

/// Triangular configurations in a hexagonal torus, spacer on class 2.
#[derive(Debug, Clone)]
pub struct TriInHexCodec {
    map: EmbeddingMap,
    spacer: State,
    tri_states: StateSet,
}

impl TriInHexCodec {
    pub fn new(
        tri: TorusDims,
        hex: TorusDims,
        spacer: State,
        tri_states: StateSet,
    ) -> Result<Self> {
        if tri_states.contains(spacer) {
            return Err(Error::SpacerCollision(spacer));
        }
        Ok(TriInHexCodec {
            map: EmbeddingMap::tri_in_hex(tri, hex)?,
            spacer,
            tri_states,
        })
    }

    pub fn map(&self) -> &EmbeddingMap {
        &self.map
    }
}

impl ConfigCodec for TriInHexCodec {
    fn encode(&self, config: &Configuration) -> Result<Configuration> {
        encode_tri_config(config, &self.map, self.spacer)
    }

    fn decode(&self, config: &Configuration) -> Result<Configuration> {
        decode_hex_config(config, &self.map, self.spacer, &self.tri_states)
    }
}

pub fn encode_tri_config(
    config: &Configuration,
    map: &EmbeddingMap,
    spacer: State,
) -> Result<Configuration> {
    if map.direction != Direction::TriInHex || *config.dims() != map.source {
        return Err(Error::IncompatibleDims(
            "configuration does not match the embedding source",
        ));
    }
    let mut out = Configuration::filled(map.target, spacer);
    for (i, &s) in config.cells().iter().enumerate() {
        out.set(map.image[i], s);
    }
    Ok(out)
}

pub fn decode_hex_config(
    config: &Configuration,
    map: &EmbeddingMap,
    spacer: State,
    tri_states: &StateSet,
) -> Result<Configuration> {
    if map.direction != Direction::TriInHex || *config.dims() != map.target {
        return Err(Error::IncompatibleDims(
            "configuration does not match the embedding target",
        ));
    }
    decode_with(
        config,
        map,
        |v| v == spacer,
        "spacer cell does not hold the spacer state",
        tri_states,
        "state cell holds a value outside the triangular states",
    )
}

/// Reads state cells back through the map. Filler cells (spacers or
/// gatherers) are checked first, so a mid-phase configuration reports its
/// filler cells rather than its transient state values.
fn decode_with(
    config: &Configuration,
    map: &EmbeddingMap,
    filler_ok: impl Fn(State) -> bool,
    filler_reason: &'static str,
    states: &StateSet,
    state_reason: &'static str,
) -> Result<Configuration> {
    for cell in map.target.cells() {
        let value = config.get(cell);
        if map.preimage(cell).is_none() && !filler_ok(value) {
            return Err(Error::MalformedEncoding {
                cell,
                value,
                reason: filler_reason,
            });
        }
    }
    let mut cells = vec![0; map.source.len()];
    for (i, &cell) in map.image.iter().enumerate() {
        let value = config.get(cell);
        if !states.contains(value) {
            return Err(Error::MalformedEncoding {
                cell,
                value,
                reason: state_reason,
            });
        }
        cells[i] = value;
    }
    Configuration::new(map.source, cells)
}

/// Smallest `e` with `2^e >= m`, for `m >= 1`.
fn ceil_lg(m: State) -> u32 {
    if m <= 1 {
        0
    } else {
        64 - ((m - 1) as u64).leading_zeros()
    }
}

/// Triangular automaton simulating `hex` in two steps per step.
///
/// Requires `0 < min(s)` and `max(s) < bound` (default bound `max + 1`).
/// With `p_i = 2^(ceil(lg bound) + i)` the flow is
///
/// * `φ(0, s_i) = p_i`,
/// * `φ(s_i - 3p_i, p_i + p_j + p_k) = p_i + ψ(s_i, s_j) + ψ(s_i, s_k)` for
///   every `i` and unordered `{j, k}`,
///
/// completed antisymmetrically, all other flows zero, quiescent state 0.
/// The state set is `{0} ∪ {s_i} ∪ {s_i - 3p_i} ∪ {p_i + p_j + p_k}`, which is
/// closed under the two-step dynamics from encodings; closure elsewhere is
/// checked as the automaton runs.
pub fn lift_hex_to_tri(
    hex: &CellularAutomaton,
    bound: Option<State>,
) -> Result<(CellularAutomaton, PayloadParameters)> {
    let psi = flow_of(hex, Geometry::Hexagonal)?;
    let qh = psi.states();
    let (min, max) = (qh.min(), qh.max());
    let bound = match bound {
        Some(b) => b,
        None => max.checked_add(1).ok_or(Error::Overflow("state bound"))?,
    };
    if min <= 0 || max >= bound {
        return Err(Error::NotNormalized { min, max, bound });
    }
    let m = qh.len();
    let base = ceil_lg(bound);
    // Largest value is three copies of the largest payload.
    if base as usize + m + 1 >= 63 {
        return Err(Error::Overflow("payload exceeds 64-bit range"));
    }
    let payloads: Vec<i64> = (0..m).map(|i| 1i64 << (base as usize + i)).collect();
    let hex_states = qh.states().to_vec();

    let mut states = vec![0];
    states.extend_from_slice(&hex_states);
    states.extend(hex_states.iter().zip(&payloads).map(|(&s, &p)| s - 3 * p));
    let mut triples = Vec::new();
    tuples::for_each_multiset(m, 3, |t| {
        states.push(t.iter().map(|&i| payloads[i]).sum());
        true
    });
    for (i, (&s, &p)) in hex_states.iter().zip(&payloads).enumerate() {
        triples.push((0, s, p));
        tuples::for_each_multiset(m, 2, |jk| {
            let (j, k) = (jk[0], jk[1]);
            let gatherer = p + payloads[j] + payloads[k];
            let flow = p + psi.get_index(i, j) + psi.get_index(i, k);
            triples.push((s - 3 * p, gatherer, flow));
            true
        });
    }
    // Distinct payload triples can share a sum (8 + 8 + 32 = 16 + 16 + 16).
    states.sort_unstable();
    states.dedup();
    let tri_states = StateSet::new(states, 0)?;
    let phi = FlowFunction::antisymmetric(tri_states, triples)?;
    let tri = CellularAutomaton::from_flow_open(phi, Geometry::Triangular)?;
    Ok((
        tri,
        PayloadParameters {
            bound,
            payloads,
            hex_states,
        },
    ))
}

/// Recovers the unordered pair `{j, k}` (as `j <= k`) with
/// `payloads[j] + payloads[k] == sum`, for distinct power-of-two payloads.
pub fn decode_payload_pair(sum: i64, payloads: &[i64]) -> Result<(usize, usize)> {
    let find = |v: i64| payloads.iter().position(|&p| p == v);
    if sum <= 0 {
        return Err(Error::NotDecomposable(sum));
    }
    let (j, k) = match sum.count_ones() {
        // Two equal payloads carry into the next bit.
        1 => {
            let j = find(sum / 2).ok_or(Error::NotDecomposable(sum))?;
            (j, j)
        }
        2 => {
            let low = sum & sum.wrapping_neg();
            let a = find(low).ok_or(Error::NotDecomposable(sum))?;
            let b = find(sum - low).ok_or(Error::NotDecomposable(sum))?;
            (a.min(b), a.max(b))
        }
        _ => return Err(Error::NotDecomposable(sum)),
    };
    Ok((j, k))
}

/// Hexagonal configurations in a triangular torus, gatherers on down triangles.
#[derive(Debug, Clone)]
pub struct HexInTriCodec {
    map: EmbeddingMap,
    hex_states: StateSet,
}

impl HexInTriCodec {
    pub fn new(hex: TorusDims, hex_states: StateSet) -> Result<Self> {
        Ok(HexInTriCodec {
            map: EmbeddingMap::hex_in_tri(hex)?,
            hex_states,
        })
    }

    pub fn map(&self) -> &EmbeddingMap {
        &self.map
    }
}

impl ConfigCodec for HexInTriCodec {
    fn encode(&self, config: &Configuration) -> Result<Configuration> {
        encode_hex_config(config, &self.map)
    }

    fn decode(&self, config: &Configuration) -> Result<Configuration> {
        decode_tri_config(config, &self.map, &self.hex_states)
    }
}

pub fn encode_hex_config(config: &Configuration, map: &EmbeddingMap) -> Result<Configuration> {
    if map.direction != Direction::HexInTri || *config.dims() != map.source {
        return Err(Error::IncompatibleDims(
            "configuration does not match the embedding source",
        ));
    }
    let mut out = Configuration::filled(map.target, 0);
    for (i, &s) in config.cells().iter().enumerate() {
        out.set(map.image[i], s);
    }
    Ok(out)
}

pub fn decode_tri_config(
    config: &Configuration,
    map: &EmbeddingMap,
    hex_states: &StateSet,
) -> Result<Configuration> {
    if map.direction != Direction::HexInTri || *config.dims() != map.target {
        return Err(Error::IncompatibleDims(
            "configuration does not match the embedding target",
        ));
    }
    decode_with(
        config,
        map,
        |v| v == 0,
        "gatherer is not empty",
        hex_states,
        "state cell holds a value outside the hexagonal states",
    )
}

/// Shifts every state of a flow-backed hexagonal automaton so the least
/// becomes positive (`shift = 0` if it already is). The flow is relabeled,
/// `ψ'(x + shift, y + shift) = ψ(x, y)`, so `F'(c + shift) = F(c) + shift`.
pub fn normalize_states(hex: &CellularAutomaton) -> Result<(CellularAutomaton, State)> {
    let psi = flow_of(hex, Geometry::Hexagonal)?;
    let min = psi.states().min();
    let shift = if min > 0 { 0 } else { 1 - min };
    let shifted = psi.shifted(shift)?;
    let ca = if hex.is_closed() {
        CellularAutomaton::from_flow(shifted, Geometry::Hexagonal)?
    } else {
        CellularAutomaton::from_flow_open(shifted, Geometry::Hexagonal)?
    };
    Ok((ca, shift))
}

/// A simulator `A`, a simulated `B`, the step ratio and the codec.
pub struct SimulationPair<'a> {
    pub simulator: &'a CellularAutomaton,
    pub simulated: &'a CellularAutomaton,
    pub tau: usize,
    pub codec: &'a dyn ConfigCodec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimFailureKind {
    /// `decode(encode(c)) != c`.
    RoundTrip,
    /// `decode(F_A^tau(encode(c))) != F_B(c)`.
    Mismatch {
        expected: Configuration,
        found: Configuration,
    },
    /// The simulator changed its total sum at an intermediate step.
    SumDrift {
        step: usize,
        before: i128,
        after: i128,
    },
    Codec(Error),
    Step(Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimFailure {
    pub index: usize,
    pub config: Configuration,
    pub kind: SimFailureKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationReport {
    pub checked: usize,
    pub failure: Option<SimFailure>,
}

impl SimulationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn check_one(
    pair: &SimulationPair<'_>,
    c: &Configuration,
) -> core::result::Result<(), SimFailureKind> {
    let encoded = pair.codec.encode(c).map_err(SimFailureKind::Codec)?;
    let back = pair.codec.decode(&encoded).map_err(SimFailureKind::Codec)?;
    if back != *c {
        return Err(SimFailureKind::RoundTrip);
    }
    let expected = crate::ca::step(pair.simulated, c).map_err(SimFailureKind::Step)?;
    let mut stepper =
        Stepper::new(pair.simulator, *encoded.dims()).map_err(SimFailureKind::Step)?;
    let sum = total_sum(&encoded);
    let mut cur = encoded;
    for s in 0..pair.tau {
        let next = stepper.step(&cur).map_err(SimFailureKind::Step)?;
        let after = total_sum(&next);
        if after != sum {
            return Err(SimFailureKind::SumDrift {
                step: s + 1,
                before: sum,
                after,
            });
        }
        cur = next;
    }
    let found = pair.codec.decode(&cur).map_err(SimFailureKind::Codec)?;
    if found != expected {
        return Err(SimFailureKind::Mismatch { expected, found });
    }
    Ok(())
}

/// Checks `decode(encode(c)) = c` and `decode(F_A^tau(encode(c))) = F_B(c)`
/// for each configuration, plus sum preservation in `A` at every step.
/// Stops at the first failure.
pub fn verify_step_simulation(
    pair: &SimulationPair<'_>,
    corpus: impl IntoIterator<Item = Configuration>,
) -> SimulationReport {
    let mut checked = 0;
    for (index, c) in corpus.into_iter().enumerate() {
        checked += 1;
        if let Err(kind) = check_one(pair, &c) {
            return SimulationReport {
                checked,
                failure: Some(SimFailure {
                    index,
                    config: c,
                    kind,
                }),
            };
        }
    }
    SimulationReport {
        checked,
        failure: None,
    }
}

/// `count` uniform configurations over `alphabet`, deterministic in `seed`.
pub fn random_corpus(
    dims: TorusDims,
    alphabet: &[State],
    count: usize,
    seed: u64,
) -> Vec<Configuration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| Configuration::random(dims, alphabet, &mut rng))
        .collect()
}

/// Every configuration of `dims` over `alphabet`, if there are at most
/// `budget` of them.
pub fn exhaustive_corpus(
    dims: TorusDims,
    alphabet: &[State],
    budget: u64,
) -> Result<Vec<Configuration>> {
    let required = tuples::count_tuples(alphabet.len(), dims.len());
    if required > u128::from(budget) {
        return Err(Error::BudgetExceeded { budget, required });
    }
    let mut out = Vec::with_capacity(required as usize);
    tuples::for_each_tuple(alphabet.len(), dims.len(), |t| {
        out.push(Configuration::new(dims, t.iter().map(|&i| alphabet[i]).collect()).unwrap());
        true
    });
    Ok(out)
}

/// Codec that passes configurations through unchanged.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityCodec;

impl ConfigCodec for IdentityCodec {
    fn encode(&self, config: &Configuration) -> Result<Configuration> {
        Ok(config.clone())
    }

    fn decode(&self, config: &Configuration) -> Result<Configuration> {
        Ok(config.clone())
    }
}

/// Both lifts bundled with their codecs, for callers that only know the
/// direction at run time.
pub struct Lifted {
    pub simulator: CellularAutomaton,
    pub tau: usize,
    pub codec: Box<dyn ConfigCodec>,
}

/// Lifts `simulated` in the given direction and builds the codec for the
/// simulated torus `dims`. For triangular sources the hexagonal torus is
/// the one of the same width and 3/2 the height.
pub fn lift_with_codec(
    simulated: &CellularAutomaton,
    direction: Direction,
    dims: TorusDims,
) -> Result<Lifted> {
    match direction {
        Direction::TriInHex => {
            let (hex, params) = lift_tri_to_hex(simulated, None)?;
            let hex_dims = TorusDims::hexagonal(dims.width(), 3 * dims.height() / 2)?;
            let codec =
                TriInHexCodec::new(dims, hex_dims, params.spacer, simulated.states().clone())?;
            Ok(Lifted {
                simulator: hex,
                tau: 1,
                codec: Box::new(codec),
            })
        }
        Direction::HexInTri => {
            let (tri, _) = lift_hex_to_tri(simulated, None)?;
            let codec = HexInTriCodec::new(dims, simulated.states().clone())?;
            Ok(Lifted {
                simulator: tri,
                tau: 2,
                codec: Box::new(codec),
            })
        }
    }
}
