//! Exhaustive enumeration over list colorings of small instances.
//!
//! The enumerator walks candidate colorings in lexicographic order
//! (vertex-major, list-order minor) with one sound pruning rule: a
//! partial assignment is abandoned as soon as some vertex whose whole
//! out-neighborhood is already colored exceeds its bound. Pruned
//! subtrees contain no valid colorings, so existence answers and counts
//! are exact.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gen::{gen_random_digraph, gen_random_lists, gen_random_tournament, mix_seed};
use crate::graph::{ColorId, Coloring, Digraph};
use crate::instance::RankedInstance;
use crate::rational::Rational;

/// Default cap on the candidate space `prod |L(v)|`.
pub const DEFAULT_CANDIDATE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("candidate space {} exceeds budget {budget}",
            candidates.map_or("overflows u64".to_string(), |c| c.to_string()))]
    BudgetExceeded { candidates: Option<u64>, budget: u64 },
}

/// The per-vertex bound the enumerator checks.
#[derive(Debug, Clone, Copy)]
pub enum OracleConstraint<'a> {
    /// `den * count <= num * out_degree(v)`.
    Fraction(Rational),
    /// `count <= rank of the worn color`; colors outside the ranked
    /// instance's list fail the check.
    Ranks(&'a RankedInstance),
}

impl OracleConstraint<'_> {
    fn holds(&self, d: &Digraph, v: usize, color: ColorId, count: usize) -> bool {
        match self {
            OracleConstraint::Fraction(f) => {
                let (p, q) = (f.numerator() as i128, f.denominator() as i128);
                q * count as i128 <= p * d.out_degree(v) as i128
            }
            OracleConstraint::Ranks(inst) => match inst.rank(v, color) {
                Some(rank) => rank.cmp_int(count as i64) != std::cmp::Ordering::Less,
                None => false,
            },
        }
    }
}

/// The total number of candidate colorings, if it fits in u64.
pub fn candidate_space(lists: &[Vec<ColorId>]) -> Option<u64> {
    lists
        .iter()
        .try_fold(1u64, |acc, l| acc.checked_mul(l.len() as u64))
}

fn check_budget(lists: &[Vec<ColorId>], budget: u64) -> Result<u64, OracleError> {
    match candidate_space(lists) {
        Some(c) if c <= budget => Ok(c),
        c => Err(OracleError::BudgetExceeded { candidates: c, budget }),
    }
}

fn enumerate(
    d: &Digraph,
    lists: &[Vec<ColorId>],
    constraint: OracleConstraint<'_>,
    budget: u64,
    count_all: bool,
) -> Result<(Option<Coloring>, u64), OracleError> {
    check_budget(lists, budget)?;
    let n = d.n();
    assert_eq!(lists.len(), n, "one color list per vertex");

    if n == 0 {
        // The one empty coloring is vacuously valid.
        let first = Coloring::from_vec(vec![]);
        return Ok((Some(first), 1));
    }

    // finalize[p] = vertices whose constraint becomes fully determined
    // once position p is assigned (itself and all out-neighbors).
    let mut finalize: Vec<Vec<usize>> = vec![Vec::new(); n];
    for u in 0..n {
        let last = d.out_neighbors(u).iter().copied().fold(u, usize::max);
        finalize[last].push(u);
    }

    let mut colors: Vec<ColorId> = vec![0; n];
    let mut choice: Vec<usize> = vec![0; n];
    let mut first: Option<Coloring> = None;
    let mut count = 0u64;
    let mut pos = 0usize;

    loop {
        if choice[pos] == lists[pos].len() {
            if pos == 0 {
                return Ok((first, count));
            }
            pos -= 1;
            choice[pos] += 1;
            continue;
        }
        colors[pos] = lists[pos][choice[pos]];
        let pruned = finalize[pos].iter().any(|&u| {
            let c = colors[u];
            let same = d
                .out_neighbors(u)
                .iter()
                .filter(|&&w| colors[w] == c)
                .count();
            !constraint.holds(d, u, c, same)
        });
        if pruned {
            choice[pos] += 1;
            continue;
        }
        if pos == n - 1 {
            if first.is_none() {
                first = Some(Coloring::from_vec(colors.clone()));
                if !count_all {
                    return Ok((first, 1));
                }
            }
            count += 1;
            choice[pos] += 1;
            continue;
        }
        pos += 1;
        choice[pos] = 0;
    }
}

/// First valid coloring in lexicographic order, or `None` when the
/// whole candidate space is exhausted.
pub fn exhaustive_list_coloring(
    d: &Digraph,
    lists: &[Vec<ColorId>],
    constraint: OracleConstraint<'_>,
    budget: u64,
) -> Result<Option<Coloring>, OracleError> {
    enumerate(d, lists, constraint, budget, false).map(|(first, _)| first)
}

/// Exact number of valid colorings.
pub fn count_valid_colorings(
    d: &Digraph,
    lists: &[Vec<ColorId>],
    constraint: OracleConstraint<'_>,
    budget: u64,
) -> Result<u64, OracleError> {
    enumerate(d, lists, constraint, budget, true).map(|(_, count)| count)
}

/// Parameters for the 3-list counterexample search.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub trials: u64,
    pub n_max: usize,
    pub seed: u64,
    pub budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            trials: 500,
            n_max: 6,
            seed: 0,
            budget: DEFAULT_CANDIDATE_BUDGET,
        }
    }
}

/// An instance that admits no majority coloring from its 3-lists,
/// together with the size of the exhausted candidate space.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub trial: u64,
    pub digraph: Digraph,
    pub lists: Vec<Vec<ColorId>>,
    pub candidates_exhausted: u64,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub trials_run: u64,
    pub skipped_budget: u64,
    pub counterexample: Option<Counterexample>,
}

/// Samples random small digraphs (tournaments and density-varied random
/// digraphs) with random 3-lists and exhaustively tests each for a
/// majority coloring. Finding nothing is evidence, not proof. Trials
/// are independent and deterministic from `(seed, trial index)`; the
/// first counterexample by trial index is returned.
pub fn search_majority3_counterexample(config: &SearchConfig) -> SearchReport {
    let half = Rational::new(1, 2).unwrap();
    let mut skipped = 0u64;
    for trial in 0..config.trials {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(config.seed, trial));
        let n = rng.random_range(1..=config.n_max.max(1));
        let kind = rng.random_range(0..4u32);
        let graph_seed: u64 = rng.random();
        let lists_seed: u64 = rng.random();
        let digraph = if kind == 0 {
            gen_random_tournament(n, graph_seed)
        } else {
            let p = Rational::new(kind as i64, 4).unwrap();
            gen_random_digraph(n, p, graph_seed).expect("p in [0,1]")
        };
        let palette = rng.random_range(3..=6usize);
        let lists = gen_random_lists(n, palette, 3, lists_seed).expect("3 <= palette");

        match exhaustive_list_coloring(
            &digraph,
            &lists,
            OracleConstraint::Fraction(half),
            config.budget,
        ) {
            Ok(Some(_)) => {}
            Ok(None) => {
                let candidates_exhausted =
                    candidate_space(&lists).expect("within budget");
                return SearchReport {
                    trials_run: trial + 1,
                    skipped_budget: skipped,
                    counterexample: Some(Counterexample {
                        trial,
                        digraph,
                        lists,
                        candidates_exhausted,
                    }),
                };
            }
            Err(OracleError::BudgetExceeded { .. }) => skipped += 1,
        }
    }
    SearchReport {
        trials_run: config.trials,
        skipped_budget: skipped,
        counterexample: None,
    }
}
