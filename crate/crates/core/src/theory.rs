//! Flow decomposition of symmetric triangular and hexagonal rules.
//!
//! A rotation- or permutation-symmetric triangular rule `t` conserves the sum
//! iff `t(g,a,b,c) = g + φ(g,a) + φ(g,b) + φ(g,c)` for an antisymmetric `φ`,
//! and that `φ` is necessarily
//! `φ(g,a) = t(g,a,q,q) - t(g,q,q,q) - t(q,g,q,q) + q`.
//! The same holds for permutation-symmetric hexagonal rules with six
//! neighbors and `ψ(g,x) = δ(g,x,q,..,q) - δ(g,q,..,q) - δ(q,g,q,..,q) + q`.
//!
//! The checkers here extract the flow, test antisymmetry, and test that the
//! flow reconstructs the rule on every neighbor class. The remaining
//! identities (the triangular balance `δ(g,a,b,c) = 0`, the hexagonal
//! 19-cell balance and its four reductions) are necessary conditions and are
//! checked independently.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ca::CellularAutomaton;
use crate::error::{Error, Result};
use crate::flow::FlowFunction;
use crate::lattice::Geometry;
use crate::rule::{LocalRule, Symmetry, SymmetryClass};
use crate::state::StateSet;
use crate::tuples;
use crate::State;

/// Why a symmetric rule failed the flow characterization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NcFailure {
    Antisymmetry {
        x: State,
        y: State,
        forward: i64,
        backward: i64,
    },
    Reconstruction {
        center: State,
        neighbors: Vec<State>,
        expected: i128,
        actual: State,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcVerdict {
    pub conserving: bool,
    pub failure: Option<NcFailure>,
    /// The flow extracted by the closed-form formula, returned in every case.
    pub extracted_flow: FlowFunction,
}

/// A tuple where an identity fails, with both sides evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub tuple: Vec<State>,
    pub lhs: i128,
    pub rhs: i128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    /// First counterexample of each of the four reductions, in order.
    pub lemmas: [Option<Witness>; 4],
    /// First counterexample of the 19-cell balance.
    pub balance: Option<Witness>,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.lemmas.iter().all(Option::is_none) && self.balance.is_none()
    }
}

/// How many hexagonal neighborhoods the 19-cell balance is checked on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

fn require_geometry<R: LocalRule + ?Sized>(rule: &R, geometry: Geometry) -> Result<()> {
    if rule.geometry() != geometry {
        return Err(Error::GeometryMismatch {
            expected: geometry,
            found: rule.geometry(),
        });
    }
    Ok(())
}

fn to_i64(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow("flow value"))
}

/// `rule(center, [x, q, ..., q])` and friends.
struct Eval<'a, R: ?Sized> {
    rule: &'a R,
    q: State,
    buf: Vec<State>,
}

impl<'a, R: LocalRule + ?Sized> Eval<'a, R> {
    fn new(rule: &'a R) -> Self {
        let q = rule.states().quiescent();
        Eval {
            rule,
            q,
            buf: vec![q; rule.geometry().arity()],
        }
    }

    /// Evaluates with the listed leading neighbors and quiescent padding.
    fn at(&mut self, center: State, leading: &[State]) -> Result<i128> {
        self.buf.fill(self.q);
        self.buf[..leading.len()].copy_from_slice(leading);
        Ok(self.rule.eval(center, &self.buf)? as i128)
    }
}

fn extract_flow<R: LocalRule + ?Sized>(rule: &R) -> Result<FlowFunction> {
    let states = rule.states().clone();
    let q = states.quiescent() as i128;
    let mut e = Eval::new(rule);
    let mut err = None;
    let flow = FlowFunction::from_fn(states, |g, a| {
        let v =
            (|| -> Result<i64> { to_i64(e.at(g, &[a])? - e.at(g, &[])? - e.at(e.q, &[g])? + q) })();
        v.unwrap_or_else(|x| {
            err.get_or_insert(x);
            0
        })
    });
    match err {
        Some(e) => Err(e),
        None => Ok(flow),
    }
}

/// `φ(g,a) = t(g,a,q,q) - t(g,q,q,q) - t(q,g,q,q) + q`, computed pointwise.
pub fn extract_flow_tri<R: LocalRule + ?Sized>(rule: &R) -> Result<FlowFunction> {
    require_geometry(rule, Geometry::Triangular)?;
    extract_flow(rule)
}

/// `ψ(g,x) = δ(g,x,q,q,q,q,q) - δ(g,q,...,q) - δ(q,g,q,...,q) + q`.
pub fn extract_flow_hex<R: LocalRule + ?Sized>(rule: &R) -> Result<FlowFunction> {
    require_geometry(rule, Geometry::Hexagonal)?;
    extract_flow(rule)
}

/// Flow-backed automaton `g + Σ flow(g, n_i)`, closure checked exhaustively.
pub fn build_rule_from_flow(flow: FlowFunction, geometry: Geometry) -> Result<CellularAutomaton> {
    CellularAutomaton::from_flow(flow, geometry)
}

fn check_nc<R: LocalRule + ?Sized>(rule: &R, symmetry: Symmetry) -> Result<NcVerdict> {
    let flow = extract_flow(rule)?;
    if let Some((x, y, forward, backward)) = flow.antisymmetry_violation() {
        return Ok(NcVerdict {
            conserving: false,
            failure: Some(NcFailure::Antisymmetry {
                x,
                y,
                forward,
                backward,
            }),
            extracted_flow: flow,
        });
    }
    let states = rule.states();
    let k = states.len();
    let n = rule.geometry().arity();
    let mut neighbors = vec![0; n];
    let mut failure = None;
    let mut err = None;
    for g in 0..k {
        // Both sides are invariant under the declared symmetry, so one tuple
        // per class suffices.
        symmetry.for_each_class(k, n, |t| {
            for (slot, &j) in neighbors.iter_mut().zip(t) {
                *slot = states.state(j);
            }
            let center = states.state(g);
            let expected = t
                .iter()
                .fold(center as i128, |acc, &j| acc + flow.get_index(g, j) as i128);
            match rule.eval(center, &neighbors) {
                Ok(actual) if actual as i128 == expected => true,
                Ok(actual) => {
                    failure = Some(NcFailure::Reconstruction {
                        center,
                        neighbors: neighbors.clone(),
                        expected,
                        actual,
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
        if failure.is_some() {
            break;
        }
    }
    Ok(NcVerdict {
        conserving: failure.is_none(),
        failure,
        extracted_flow: flow,
    })
}

/// Decides conservation of a rotation- or permutation-symmetric triangular
/// rule. Asymmetric rules yield [`Error::NotApplicable`].
pub fn check_nc_tri<R: LocalRule + ?Sized>(rule: &R) -> Result<NcVerdict> {
    require_geometry(rule, Geometry::Triangular)?;
    let symmetry = rule.symmetry().as_symmetry().ok_or(Error::NotApplicable)?;
    check_nc(rule, symmetry)
}

/// Decides conservation of a permutation-symmetric hexagonal rule.
pub fn check_nc_hex<R: LocalRule + ?Sized>(rule: &R) -> Result<NcVerdict> {
    require_geometry(rule, Geometry::Hexagonal)?;
    if rule.symmetry() != SymmetryClass::Permutation {
        return Err(Error::NotApplicable);
    }
    check_nc(rule, Symmetry::Permutation)
}

/// Checks the triangular balance
/// `t(a,g,q,q) + t(b,g,q,q) + t(c,g,q,q) + t(g,a,b,c) + 2t(q,a,q,q) + 2t(q,b,q,q)
///  + 2t(q,c,q,q) - a - b - c - g - 6q = 0` on every `(g,a,b,c)`.
pub fn check_delta_identity_tri<R: LocalRule + ?Sized>(rule: &R) -> Result<Option<Witness>> {
    require_geometry(rule, Geometry::Triangular)?;
    let states = rule.states();
    let q = states.quiescent() as i128;
    let mut e = Eval::new(rule);
    let mut witness = None;
    let mut err = None;
    tuples::for_each_tuple(states.len(), 4, |t| {
        let [g, a, b, c] = [0, 1, 2, 3].map(|i| states.state(t[i]));
        let r = (|| -> Result<(i128, i128)> {
            let lhs = e.at(a, &[g])?
                + e.at(b, &[g])?
                + e.at(c, &[g])?
                + e.at(g, &[a, b, c])?
                + 2 * (e.at(e.q, &[a])? + e.at(e.q, &[b])? + e.at(e.q, &[c])?);
            let rhs = (a + b + c + g) as i128 + 6 * q;
            Ok((lhs, rhs))
        })();
        match r {
            Ok((lhs, rhs)) if lhs == rhs => true,
            Ok((lhs, rhs)) => {
                witness = Some(Witness {
                    tuple: vec![g, a, b, c],
                    lhs,
                    rhs,
                });
                false
            }
            Err(x) => {
                err = Some(x);
                false
            }
        }
    });
    match err {
        Some(x) => Err(x),
        None => Ok(witness),
    }
}

/// Both sides of the 19-cell balance around a center `g` with neighbors
/// `a..f` in cyclic order:
///
/// ```text
/// g+a+b+c+d+e+f+12q = δ(g,a,b,c,d,e,f)
///   + δ(a,b,f,g,q,q,q) + δ(b,a,c,g,q,q,q) + δ(c,b,d,g,q,q,q)
///   + δ(d,c,e,g,q,q,q) + δ(e,d,f,g,q,q,q) + δ(f,a,e,g,q,q,q)
///   + Σ_{x ∈ a..f} δ(q,x,q,q,q,q,q)
///   + δ(q,a,b,..) + δ(q,b,c,..) + δ(q,c,d,..) + δ(q,d,e,..) + δ(q,e,f,..) + δ(q,f,a,..)
/// ```
fn balance_sides<R: LocalRule + ?Sized>(
    e: &mut Eval<'_, R>,
    t: [State; 7],
) -> Result<(i128, i128)> {
    let [g, a, b, c, d, ee, f] = t;
    let q = e.q;
    let ring = [a, b, c, d, ee, f];
    let lhs = t.iter().map(|&s| s as i128).sum::<i128>() + 12 * q as i128;
    let mut rhs = e.at(g, &ring)?;
    for i in 0..6 {
        let prev = ring[(i + 5) % 6];
        let x = ring[i];
        let next = ring[(i + 1) % 6];
        // First-ring cell: its other neighbors are the two ring cells beside it.
        rhs += e.at(x, &[prev, next, g])?;
        rhs += e.at(q, &[x])?;
        rhs += e.at(q, &[x, next])?;
    }
    Ok((lhs, rhs))
}

/// Checks the 19-cell balance on every (or a sample of) neighborhoods.
pub fn check_hex_eq1<R: LocalRule + ?Sized>(rule: &R, scope: Scope) -> Result<Option<Witness>> {
    require_geometry(rule, Geometry::Hexagonal)?;
    if rule.symmetry() != SymmetryClass::Permutation {
        return Err(Error::NotApplicable);
    }
    let states = rule.states();
    let mut e = Eval::new(rule);
    let mut check = |t: [State; 7]| -> Result<Option<Witness>> {
        let (lhs, rhs) = balance_sides(&mut e, t)?;
        Ok((lhs != rhs).then(|| Witness {
            tuple: t.to_vec(),
            lhs,
            rhs,
        }))
    };
    let mut out = Ok(None);
    match scope {
        Scope::Exhaustive => {
            tuples::for_each_tuple(states.len(), 7, |t| {
                let vals = core::array::from_fn(|i| states.state(t[i]));
                match check(vals) {
                    Ok(None) => true,
                    other => {
                        out = other;
                        false
                    }
                }
            });
        }
        Scope::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let vals = core::array::from_fn(|_| states.state(rng.gen_range(0..states.len())));
                match check(vals) {
                    Ok(None) => {}
                    other => return other,
                }
            }
        }
    }
    out
}

fn first_failure<const N: usize>(
    k: usize,
    states: &crate::state::StateSet,
    mut sides: impl FnMut([State; N]) -> Result<(i128, i128)>,
) -> Result<Option<Witness>> {
    let mut out = Ok(None);
    tuples::for_each_tuple(k, N, |t| {
        let vals = core::array::from_fn(|i| states.state(t[i]));
        match sides(vals) {
            Ok((lhs, rhs)) if lhs == rhs => true,
            Ok((lhs, rhs)) => {
                out = Ok(Some(Witness {
                    tuple: vals.to_vec(),
                    lhs,
                    rhs,
                }));
                false
            }
            Err(x) => {
                out = Err(x);
                false
            }
        }
    });
    out
}

/// Checks the four hexagonal reductions and the 19-cell balance, reporting
/// the first counterexample of each.
///
/// 1. `δ(g,x,y,z,q,q,q) = g+x+y+z+12q - δ(x,g,..) - δ(q,x,y,g,..) - δ(y,g,..)
///    - δ(q,y,z,g,..) - δ(z,g,..) - δ(q,x,z,g,..) - 3δ(q,x,..) - 3δ(q,y,..) - 3δ(q,z,..)`
/// 2. `δ(q,x,y,q,..) = 11q+x+y - 5δ(q,x,..) - 5δ(q,y,..) - δ(x,q,..) - δ(y,q,..)`
/// 3. `8q+x+y = 3δ(q,x,..) + 3δ(q,y,..) + δ(q,x,y,..) + δ(q,y,x,..) + δ(x,y,..) + δ(y,x,..)`
/// 4. `x = -6q + 6δ(q,x,..) + δ(x,q,..)`
pub fn check_hex_lemmas<R: LocalRule + ?Sized>(rule: &R) -> Result<LemmaReport> {
    require_geometry(rule, Geometry::Hexagonal)?;
    if rule.symmetry() != SymmetryClass::Permutation {
        return Err(Error::NotApplicable);
    }
    let states = rule.states();
    let k = states.len();
    let q = states.quiescent();
    let qi = q as i128;
    let mut e = Eval::new(rule);

    let l1 = first_failure::<4>(k, states, |[g, x, y, z]| {
        let lhs = e.at(g, &[x, y, z])?;
        let rhs = (g + x + y + z) as i128 + 12 * qi
            - e.at(x, &[g])?
            - e.at(q, &[x, y, g])?
            - e.at(y, &[g])?
            - e.at(q, &[y, z, g])?
            - e.at(z, &[g])?
            - e.at(q, &[x, z, g])?
            - 3 * (e.at(q, &[x])? + e.at(q, &[y])? + e.at(q, &[z])?);
        Ok((lhs, rhs))
    })?;
    let l2 = first_failure::<2>(k, states, |[x, y]| {
        let lhs = e.at(q, &[x, y])?;
        let rhs = 11 * qi + (x + y) as i128
            - 5 * e.at(q, &[x])?
            - 5 * e.at(q, &[y])?
            - e.at(x, &[])?
            - e.at(y, &[])?;
        Ok((lhs, rhs))
    })?;
    let l3 = first_failure::<2>(k, states, |[x, y]| {
        let lhs = 8 * qi + (x + y) as i128;
        let rhs = 3 * e.at(q, &[x])?
            + 3 * e.at(q, &[y])?
            + e.at(q, &[x, y])?
            + e.at(q, &[y, x])?
            + e.at(x, &[y])?
            + e.at(y, &[x])?;
        Ok((lhs, rhs))
    })?;
    let l4 = first_failure::<1>(k, states, |[x]| {
        Ok((x as i128, -6 * qi + 6 * e.at(q, &[x])? + e.at(x, &[])?))
    })?;
    let balance = check_hex_eq1(rule, Scope::Exhaustive)?;
    Ok(LemmaReport {
        lemmas: [l1, l2, l3, l4],
        balance,
    })
}

/// Random antisymmetric flow over `states` whose rule is closed.
///
/// Starts from the zero flow and makes `moves` proposals, each adding `±1`
/// to one pair `(x, y)`, `x < y`; a proposal is kept only if the resulting
/// rule stays closed. Deterministic in `seed`.
pub fn random_closed_flow(
    states: &StateSet,
    geometry: Geometry,
    moves: usize,
    seed: u64,
) -> FlowFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = states.len();
    let mut values = vec![0i64; k * k];
    if k < 2 {
        return FlowFunction::zero(states.clone());
    }
    for _ in 0..moves {
        let x = rng.gen_range(0..k);
        let mut y = rng.gen_range(0..k - 1);
        if y >= x {
            y += 1;
        }
        let d = if rng.gen::<bool>() { 1 } else { -1 };
        values[x * k + y] += d;
        values[y * k + x] -= d;
        let candidate = FlowFunction::from_fn(states.clone(), |a, b| {
            values[states.index_of(a).unwrap() * k + states.index_of(b).unwrap()]
        });
        if CellularAutomaton::from_flow(candidate, geometry).is_err() {
            values[x * k + y] -= d;
            values[y * k + x] += d;
        }
    }
    FlowFunction::from_fn(states.clone(), |a, b| {
        values[states.index_of(a).unwrap() * k + states.index_of(b).unwrap()]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule::{FullTable, RuleTable};
    use crate::state::StateSet;

    fn osmosis_t_flow() -> FlowFunction {
        FlowFunction::antisymmetric(StateSet::range(0, 3, 0).unwrap(), [(0, 3, 1)]).unwrap()
    }

    fn osmosis_h_flow() -> FlowFunction {
        FlowFunction::antisymmetric(StateSet::range(1, 7, 1).unwrap(), [(1, 7, 1)]).unwrap()
    }

    fn identity(geometry: Geometry, states: StateSet) -> RuleTable {
        RuleTable::new(geometry, states, Symmetry::Permutation, [], true).unwrap()
    }

    /// OR of the center and its neighbors over {0, 1}.
    fn copy_rule() -> RuleTable {
        RuleTable::from_fn(
            Geometry::Triangular,
            StateSet::range(0, 1, 0).unwrap(),
            Symmetry::Permutation,
            |g, ns| Ok(g.max(*ns.iter().max().unwrap())),
        )
        .unwrap()
    }

    #[test]
    fn extract_tri_examples() {
        let ca = build_rule_from_flow(osmosis_t_flow(), Geometry::Triangular).unwrap();
        assert_eq!(extract_flow_tri(&ca).unwrap(), osmosis_t_flow());
        let table = ca.table().cloned();
        assert!(table.is_none());

        let id = identity(Geometry::Triangular, StateSet::range(0, 3, 0).unwrap());
        assert!(extract_flow_tri(&id).unwrap().is_zero());

        // Pairs with the quiescent state are antisymmetric for every quiescent
        // rule; the copy rule breaks antisymmetry on the diagonal.
        let phi = extract_flow_tri(&copy_rule()).unwrap();
        assert_eq!(phi.get(0, 1), Ok(1));
        assert_eq!(phi.get(1, 0), Ok(-1));
        assert_eq!(phi.get(1, 1), Ok(-1));
        assert!(!phi.is_antisymmetric());
    }

    #[test]
    fn build_examples() {
        let ca = build_rule_from_flow(osmosis_t_flow(), Geometry::Triangular).unwrap();
        assert_eq!(ca.eval(0, &[3, 3, 0]), Ok(2));
        let bad =
            FlowFunction::antisymmetric(StateSet::range(0, 1, 0).unwrap(), [(0, 1, 1)]).unwrap();
        // First canonical tuple out of range is (0; 0,1,1) -> 2; (0; 1,1,1) -> 3 also is.
        match build_rule_from_flow(bad.clone(), Geometry::Triangular) {
            Err(Error::Closure {
                center: 0,
                neighbors,
                value: 2,
            }) => assert_eq!(neighbors, [0, 1, 1]),
            other => panic!("{other:?}"),
        }
        let open = CellularAutomaton::from_flow_open(bad, Geometry::Triangular).unwrap();
        assert!(matches!(
            open.eval(0, &[1, 1, 1]),
            Err(Error::Closure { value: 3, .. })
        ));
        let zero = FlowFunction::zero(StateSet::range(0, 2, 0).unwrap());
        let id = build_rule_from_flow(zero, Geometry::Hexagonal).unwrap();
        assert_eq!(id.eval(2, &[0, 1, 2, 0, 1, 2]), Ok(2));
    }

    #[test]
    fn check_nc_tri_examples() {
        let ca = build_rule_from_flow(osmosis_t_flow(), Geometry::Triangular).unwrap();
        let v = check_nc_tri(&ca).unwrap();
        assert!(v.conserving);
        assert_eq!(v.extracted_flow, osmosis_t_flow());

        let v = check_nc_tri(&copy_rule()).unwrap();
        assert!(!v.conserving);
        assert_eq!(
            v.failure,
            Some(NcFailure::Antisymmetry {
                x: 1,
                y: 1,
                forward: -1,
                backward: -1
            })
        );

        let id = identity(Geometry::Triangular, StateSet::range(0, 3, 0).unwrap());
        let v = check_nc_tri(&id).unwrap();
        assert!(v.conserving && v.extracted_flow.is_zero());

        let skew = FullTable::from_fn(
            Geometry::Triangular,
            StateSet::range(0, 1, 0).unwrap(),
            |g, ns| {
                if ns == [1, 0, 0] {
                    1 - g
                } else {
                    g
                }
            },
        )
        .unwrap();
        assert_eq!(check_nc_tri(&skew), Err(Error::NotApplicable));
    }

    #[test]
    fn check_nc_hex_examples() {
        let ca = build_rule_from_flow(osmosis_h_flow(), Geometry::Hexagonal).unwrap();
        assert!(check_nc_hex(&ca).unwrap().conserving);
        let table = RuleTable::from_fn(
            Geometry::Hexagonal,
            osmosis_h_flow().states().clone(),
            Symmetry::Permutation,
            |g, ns| ca.eval(g, ns),
        )
        .unwrap();
        assert!(check_nc_hex(&table).unwrap().conserving);
        assert_eq!(extract_flow_hex(&table).unwrap(), osmosis_h_flow());

        let perturbed = table.with_entry(3, &[2, 2, 4, 5, 6, 7], 4).unwrap();
        let v = check_nc_hex(&perturbed).unwrap();
        assert!(!v.conserving);
        assert_eq!(
            v.failure,
            Some(NcFailure::Reconstruction {
                center: 3,
                neighbors: vec![2, 2, 4, 5, 6, 7],
                expected: 3,
                actual: 4
            })
        );
        let id = identity(Geometry::Hexagonal, StateSet::range(0, 2, 0).unwrap());
        assert!(check_nc_hex(&id).unwrap().conserving);
    }

    #[test]
    fn delta_identity_tri() {
        let ca = build_rule_from_flow(osmosis_t_flow(), Geometry::Triangular).unwrap();
        assert_eq!(check_delta_identity_tri(&ca), Ok(None));
        let id = identity(Geometry::Triangular, StateSet::range(0, 3, 0).unwrap());
        assert_eq!(check_delta_identity_tri(&id), Ok(None));
        assert!(check_delta_identity_tri(&copy_rule()).unwrap().is_some());
    }

    /// The balance as printed: `e` missing on the left and `δ(q,a,..)` listed
    /// twice among the single-neighbor terms.
    fn printed_balance<R: LocalRule>(rule: &R, t: [State; 7]) -> (i128, i128) {
        let mut e = Eval::new(rule);
        let [g, a, b, c, d, ee, f] = t;
        let q = e.q;
        let lhs = (g + a + b + c + d + f) as i128 + 12 * q as i128;
        let mut rhs = e.at(g, &[a, b, c, d, ee, f]).unwrap();
        for (x, y, z) in [
            (a, b, f),
            (b, a, c),
            (c, b, d),
            (d, c, ee),
            (ee, d, f),
            (f, a, ee),
        ] {
            rhs += e.at(x, &[y, z, g]).unwrap();
        }
        for x in [a, b, c, d, ee, a] {
            rhs += e.at(q, &[x]).unwrap();
        }
        for (x, y) in [(a, b), (b, c), (c, d), (d, ee), (ee, f), (f, a)] {
            rhs += e.at(q, &[x, y]).unwrap();
        }
        (lhs, rhs)
    }

    #[test]
    fn printed_balance_fails_on_identity_corrected_holds() {
        let id = identity(Geometry::Hexagonal, StateSet::range(0, 2, 0).unwrap());
        let t = [0, 0, 0, 0, 0, 2, 1];
        let (lhs, rhs) = printed_balance(&id, t);
        assert_ne!(lhs, rhs);
        let mut e = Eval::new(&id);
        let (lhs, rhs) = balance_sides(&mut e, t).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(check_hex_eq1(&id, Scope::Exhaustive), Ok(None));
    }

    #[test]
    fn hex_lemmas_on_osmosis() {
        let ca = build_rule_from_flow(osmosis_h_flow(), Geometry::Hexagonal).unwrap();
        let report = check_hex_lemmas(&ca).unwrap();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn hex_lemma_four_on_singleton() {
        let id = identity(Geometry::Hexagonal, StateSet::new([0], 0).unwrap());
        assert!(check_hex_lemmas(&id).unwrap().all_pass());
    }

    #[test]
    fn perturbed_hex_rule_fails_lemmas_and_balance() {
        let ca = build_rule_from_flow(osmosis_h_flow(), Geometry::Hexagonal).unwrap();
        let table = RuleTable::from_fn(
            Geometry::Hexagonal,
            osmosis_h_flow().states().clone(),
            Symmetry::Permutation,
            |g, ns| ca.eval(g, ns),
        )
        .unwrap();
        // A two-neighbor entry, so the reductions see it.
        let perturbed = table.with_entry(1, &[2, 3, 1, 1, 1, 1], 2).unwrap();
        let report = check_hex_lemmas(&perturbed).unwrap();
        assert!(!report.all_pass());
        assert!(report.balance.is_some());
        let sampled = check_hex_eq1(
            &perturbed,
            Scope::Sample {
                count: 200_000,
                seed: 3,
            },
        )
        .unwrap();
        assert!(sampled.is_some());
    }
}
