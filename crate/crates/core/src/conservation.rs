//! Conservation oracles that do not rely on the flow characterization:
//! exhaustive and seeded-random sum checks on a torus, and a census that
//! compares both verdicts over whole rule spaces.

use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ca::{total_sum, CellularAutomaton, Configuration, Stepper};
use crate::error::{Error, Result};
use crate::lattice::{Geometry, TorusDims};
use crate::rule::{FullTable, LocalRule, RuleTable, Symmetry};
use crate::state::StateSet;
use crate::theory::{check_nc_hex, check_nc_tri};
use crate::tuples::{self, count_multisets, count_tuples};
use crate::State;

/// Default exhaustive budget, in configurations.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Default seed for randomized checks.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Conserving,
    NotConserving,
    /// The budget ran out before the space was covered.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumFailure {
    /// The configuration whose evolution changed the sum.
    pub config: Configuration,
    /// Steps taken from `config` before the failing step.
    pub step: usize,
    pub sum_before: i128,
    pub sum_after: i128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub verdict: Verdict,
    pub configs_checked: u64,
    pub failure: Option<SumFailure>,
    pub torus: TorusDims,
    pub seed: Option<u64>,
}

impl OracleReport {
    pub fn conserving(&self) -> bool {
        self.verdict == Verdict::Conserving
    }
}

/// Enumerates every configuration of `dims` over `alphabet` (the automaton's
/// state set when `None`) and checks that one step preserves the sum.
/// At most `budget` configurations are visited.
pub fn brute_force_nc(
    ca: &CellularAutomaton,
    dims: TorusDims,
    budget: u64,
    alphabet: Option<&[State]>,
) -> Result<OracleReport> {
    let alphabet: Vec<State> = match alphabet {
        Some(a) => a.to_vec(),
        None => ca.states().states().to_vec(),
    };
    if alphabet.is_empty() {
        return Err(Error::EmptyStateSet);
    }
    for &s in &alphabet {
        ca.states().require(s)?;
    }
    let mut stepper = Stepper::new(ca, dims)?;
    let required = count_tuples(alphabet.len(), dims.len());
    let mut config = Configuration::filled(dims, alphabet[0]);
    let mut next = config.clone();
    let mut checked = 0u64;
    let mut failure = None;
    let mut err = None;
    let complete = tuples::for_each_tuple(alphabet.len(), dims.len(), |t| {
        if checked >= budget {
            return false;
        }
        for (cell, &i) in config.cells_mut().iter_mut().zip(t) {
            *cell = alphabet[i];
        }
        checked += 1;
        if let Err(e) = stepper.step_into(&config, &mut next) {
            err = Some(e);
            return false;
        }
        let (before, after) = (total_sum(&config), total_sum(&next));
        if before != after {
            failure = Some(SumFailure {
                config: config.clone(),
                step: 0,
                sum_before: before,
                sum_after: after,
            });
            return false;
        }
        true
    });
    if let Some(e) = err {
        return Err(e);
    }
    let verdict = if failure.is_some() {
        Verdict::NotConserving
    } else if complete && u128::from(checked) == required {
        Verdict::Conserving
    } else {
        Verdict::Unknown
    };
    Ok(OracleReport {
        verdict,
        configs_checked: checked,
        failure,
        torus: dims,
        seed: None,
    })
}

/// Samples `trials` uniform configurations, evolves each for `steps` steps
/// and checks the sum after every step. Deterministic in `seed`.
pub fn random_nc_test(
    ca: &CellularAutomaton,
    dims: TorusDims,
    trials: u64,
    steps: usize,
    seed: u64,
) -> Result<OracleReport> {
    if trials == 0 || steps == 0 {
        return Err(Error::InvalidArgument(
            "trials and steps must be at least 1",
        ));
    }
    let alphabet = ca.states().states().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stepper = Stepper::new(ca, dims)?;
    let mut next = Configuration::filled(dims, ca.quiescent());
    for trial in 0..trials {
        let start = Configuration::random(dims, &alphabet, &mut rng);
        let sum = total_sum(&start);
        let mut cur = start.clone();
        for s in 0..steps {
            stepper.step_into(&cur, &mut next)?;
            let after = total_sum(&next);
            if after != sum {
                return Ok(OracleReport {
                    verdict: Verdict::NotConserving,
                    configs_checked: trial + 1,
                    failure: Some(SumFailure {
                        config: start,
                        step: s,
                        sum_before: sum,
                        sum_after: after,
                    }),
                    torus: dims,
                    seed: Some(seed),
                });
            }
            core::mem::swap(&mut cur, &mut next);
        }
    }
    Ok(OracleReport {
        verdict: Verdict::Conserving,
        configs_checked: trials,
        failure: None,
        torus: dims,
        seed: Some(seed),
    })
}

/// How the rule space of a census was enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusMode {
    /// Every full table; symmetric ones are kept.
    FullTables,
    /// Every permutation-symmetric canonical table.
    CanonicalTables,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub table: RuleTable,
    pub theorem_conserving: bool,
    pub oracle: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub mode: CensusMode,
    pub tables_enumerated: u64,
    /// Tables with rotation or permutation symmetry.
    pub symmetric: u64,
    /// Symmetric tables that also fix the quiescent neighborhood; only these
    /// are automata and only these are checked.
    pub checked: u64,
    pub theorem_conserving: u64,
    pub oracle_conserving: u64,
    pub oracle_unknown: u64,
    pub disagreements: Vec<Disagreement>,
    /// The tables both methods call conserving.
    pub conserving_rules: Vec<RuleTable>,
}

/// Runs the flow theorem and the brute-force oracle on every symmetric rule
/// over `states` and records where they disagree.
///
/// Full tables are enumerated when there are at most `table_budget` of them;
/// otherwise permutation-symmetric canonical tables are enumerated (which
/// must themselves fit the budget). `config_budget` bounds each oracle run.
pub fn oracle_vs_theorem_census(
    geometry: Geometry,
    states: &StateSet,
    dims: TorusDims,
    table_budget: u64,
    config_budget: u64,
) -> Result<Census> {
    if dims.geometry() != geometry {
        return Err(Error::GeometryMismatch {
            expected: geometry,
            found: dims.geometry(),
        });
    }
    let k = states.len();
    let n = geometry.arity();
    let full_len = count_tuples(k, n + 1);
    let full_tables = if full_len < 128 {
        count_tuples(k, full_len as usize)
    } else {
        u128::MAX
    };
    let mut census = Census {
        mode: CensusMode::FullTables,
        tables_enumerated: 0,
        symmetric: 0,
        checked: 0,
        theorem_conserving: 0,
        oracle_conserving: 0,
        oracle_unknown: 0,
        disagreements: Vec::new(),
        conserving_rules: Vec::new(),
    };

    let visit = |census: &mut Census, table: RuleTable| -> Result<()> {
        census.checked += 1;
        let theorem = match geometry {
            Geometry::Triangular => check_nc_tri(&table)?,
            Geometry::Hexagonal => check_nc_hex(&table)?,
        }
        .conserving;
        let ca = CellularAutomaton::from_table(table.clone());
        let oracle = brute_force_nc(&ca, dims, config_budget, None)?.verdict;
        census.theorem_conserving += u64::from(theorem);
        match oracle {
            Verdict::Conserving => census.oracle_conserving += 1,
            Verdict::Unknown => census.oracle_unknown += 1,
            Verdict::NotConserving => {}
        }
        let agree = match oracle {
            Verdict::Conserving => theorem,
            Verdict::NotConserving => !theorem,
            Verdict::Unknown => true,
        };
        if !agree {
            census.disagreements.push(Disagreement {
                table,
                theorem_conserving: theorem,
                oracle,
            });
        } else if theorem && oracle == Verdict::Conserving {
            census.conserving_rules.push(table);
        }
        Ok(())
    };

    let q = states.quiescent_index();
    if full_tables <= u128::from(table_budget) {
        let mut ranks = vec![0u32; full_len as usize];
        let mut err = None;
        tuples::for_each_tuple(k, full_len as usize, |t| {
            census.tables_enumerated += 1;
            for (r, &v) in ranks.iter_mut().zip(t) {
                *r = v as u32;
            }
            let full = match FullTable::from_ranks(geometry, states.clone(), ranks.clone()) {
                Ok(f) => f,
                Err(e) => {
                    err = Some(e);
                    return false;
                }
            };
            let class = full.classify_symmetry();
            let Some(sym) = class.as_symmetry() else {
                return true;
            };
            census.symmetric += 1;
            // Index of (q; q, ..., q) in mixed radix.
            let quiet = (0..=n).fold(0usize, |acc, _| acc * k + q);
            if ranks[quiet] as usize != q {
                return true;
            }
            let table = match full.to_rule_table(sym) {
                Ok(t) => t,
                Err(e) => {
                    err = Some(e);
                    return false;
                }
            };
            if let Err(e) = visit(&mut census, table) {
                err = Some(e);
                return false;
            }
            true
        });
        if let Some(e) = err {
            return Err(e);
        }
        return Ok(census);
    }

    census.mode = CensusMode::CanonicalTables;
    let classes = k as u128 * count_multisets(k, n);
    let canonical_tables = if classes < 128 {
        count_tuples(k, classes as usize)
    } else {
        u128::MAX
    };
    if canonical_tables > u128::from(table_budget) {
        return Err(Error::BudgetExceeded {
            budget: table_budget,
            required: canonical_tables,
        });
    }
    let mut keys: Vec<(State, Vec<State>)> = Vec::new();
    for g in 0..k {
        tuples::for_each_multiset(k, n, |t| {
            keys.push((
                states.state(g),
                t.iter().map(|&i| states.state(i)).collect(),
            ));
            true
        });
    }
    let mut err = None;
    tuples::for_each_tuple(k, keys.len(), |t| {
        census.tables_enumerated += 1;
        census.symmetric += 1;
        let entries = keys
            .iter()
            .zip(t)
            .map(|((g, ns), &r)| (*g, ns.clone(), states.state(r)));
        let table = match RuleTable::new(
            geometry,
            states.clone(),
            Symmetry::Permutation,
            entries,
            false,
        ) {
            Ok(t) => t,
            Err(Error::NotQuiescent(_)) => return true,
            Err(e) => {
                err = Some(e);
                return false;
            }
        };
        if let Err(e) = visit(&mut census, table) {
            err = Some(e);
            return false;
        }
        true
    });
    match err {
        Some(e) => Err(e),
        None => Ok(census),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::FlowFunction;
    use crate::theory::build_rule_from_flow;

    fn osmosis_t() -> CellularAutomaton {
        let f =
            FlowFunction::antisymmetric(StateSet::range(0, 3, 0).unwrap(), [(0, 3, 1)]).unwrap();
        build_rule_from_flow(f, Geometry::Triangular).unwrap()
    }

    fn copy_rule() -> CellularAutomaton {
        CellularAutomaton::from_table(
            RuleTable::from_fn(
                Geometry::Triangular,
                StateSet::range(0, 1, 0).unwrap(),
                Symmetry::Permutation,
                |g, ns| Ok(g.max(*ns.iter().max().unwrap())),
            )
            .unwrap(),
        )
    }

    #[test]
    fn identity_conserves() {
        let id = CellularAutomaton::from_table(
            RuleTable::new(
                Geometry::Triangular,
                StateSet::range(0, 2, 0).unwrap(),
                Symmetry::Permutation,
                [],
                true,
            )
            .unwrap(),
        );
        let r = brute_force_nc(
            &id,
            TorusDims::triangular(4, 2).unwrap(),
            DEFAULT_BUDGET,
            None,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Conserving);
        assert_eq!(r.configs_checked, 3u64.pow(8));
        assert!(
            random_nc_test(&id, TorusDims::triangular(4, 4).unwrap(), 10, 5, 1)
                .unwrap()
                .conserving()
        );
    }

    #[test]
    fn osmosis_on_sub_alphabet() {
        let r = brute_force_nc(
            &osmosis_t(),
            TorusDims::triangular(4, 4).unwrap(),
            DEFAULT_BUDGET,
            Some(&[0, 3]),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Conserving);
        assert_eq!(r.configs_checked, 1 << 16);
    }

    #[test]
    fn copy_rule_fails_with_witness() {
        let dims = TorusDims::triangular(4, 2).unwrap();
        let r = brute_force_nc(&copy_rule(), dims, DEFAULT_BUDGET, None).unwrap();
        assert_eq!(r.verdict, Verdict::NotConserving);
        let w = r.failure.unwrap();
        assert_ne!(w.sum_before, w.sum_after);
        let after = crate::ca::step(&copy_rule(), &w.config).unwrap();
        assert_eq!(total_sum(&after), w.sum_after);
    }

    #[test]
    fn budget_gives_unknown() {
        let r = brute_force_nc(
            &osmosis_t(),
            TorusDims::triangular(4, 4).unwrap(),
            1000,
            None,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Unknown);
        assert_eq!(r.configs_checked, 1000);
        assert!(r.failure.is_none());
    }

    #[test]
    fn random_is_reproducible() {
        let ca = copy_rule();
        let dims = TorusDims::triangular(6, 6).unwrap();
        let a = random_nc_test(&ca, dims, 5, 3, 42).unwrap();
        let b = random_nc_test(&ca, dims, 5, 3, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.verdict, Verdict::NotConserving);
        assert!(random_nc_test(&ca, dims, 0, 3, 42).is_err());
    }

    #[test]
    fn small_tri_census() {
        let states = StateSet::range(0, 1, 0).unwrap();
        let census = oracle_vs_theorem_census(
            Geometry::Triangular,
            &states,
            TorusDims::triangular(4, 2).unwrap(),
            1 << 16,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(census.mode, CensusMode::FullTables);
        assert_eq!(census.tables_enumerated, 1 << 16);
        assert_eq!(census.symmetric, 256);
        assert_eq!(census.checked, 128);
        assert!(
            census.disagreements.is_empty(),
            "{:?}",
            census.disagreements
        );
        assert_eq!(census.theorem_conserving, 1);
    }
}
