//! Rank-free coloring procedures.
//!
//! - Acyclic digraphs: greedy 2-coloring along reverse topological
//!   order; at most half of each out-neighborhood matches.
//! - Arbitrary digraphs: split edges into two acyclic halves by a
//!   vertex order, 2-color each, and combine into 4 product colors.
//! - Undirected graphs: local search that recolors any vertex with more
//!   than `deg/k` same-colored neighbors; each move strictly lowers the
//!   number of monochromatic edges, so it ends within `|E|` moves.
//! - A best-effort list/rank variant of that local search with an
//!   iteration cap (no termination proof).

use thiserror::Error;

use crate::graph::{ColorId, Coloring, Cyclic, Digraph, UndirectedGraph};
use crate::instance::{validate_lists, InstanceError};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaselineError {
    #[error(transparent)]
    Cyclic(#[from] Cyclic),
    #[error("order is not a permutation of 0..{n}")]
    NotAPermutation { n: usize },
    #[error("k must be at least 2, got {k}")]
    InvalidK { k: u32 },
    #[error("vertex {vertex}: rank sum below degree {degree}")]
    RankSumBelowDegree { vertex: usize, degree: usize },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// 2-colors an acyclic digraph so at most half of each vertex's
/// out-neighbors share its color. Vertices are processed in reverse
/// topological order; each takes the color held by fewer of its
/// (already colored) out-neighbors, ties to color 0.
pub fn greedy_acyclic_2color(d: &Digraph) -> Result<Coloring, BaselineError> {
    let order = d.topological_order()?;
    let mut coloring = Coloring::uniform(d.n(), 0);
    for &v in order.iter().rev() {
        let mut count = [0usize; 2];
        for &w in d.out_neighbors(v) {
            count[coloring.color(w) as usize] += 1;
        }
        coloring.set(v, if count[0] <= count[1] { 0 } else { 1 });
    }
    Ok(coloring)
}

/// 4-colors an arbitrary digraph: edges going forward in `order` form
/// one acyclic digraph, backward edges the other; each is greedily
/// 2-colored and the pair is packed as `2 * forward + backward`.
/// Matches in the product need matches in both halves, so at most half
/// of each out-neighborhood shares the final color.
pub fn split_product_4color(d: &Digraph, order: &[usize]) -> Result<Coloring, BaselineError> {
    let n = d.n();
    let mut position = vec![usize::MAX; n];
    if order.len() != n {
        return Err(BaselineError::NotAPermutation { n });
    }
    for (i, &v) in order.iter().enumerate() {
        if v >= n || position[v] != usize::MAX {
            return Err(BaselineError::NotAPermutation { n });
        }
        position[v] = i;
    }

    let mut forward = Vec::new();
    let mut backward = Vec::new();
    for &(u, v) in d.edges() {
        if position[u] < position[v] {
            forward.push((u, v));
        } else {
            backward.push((u, v));
        }
    }
    let d1 = Digraph::from_edges(n, forward).expect("subset of a simple digraph");
    let d2 = Digraph::from_edges(n, backward).expect("subset of a simple digraph");
    let c1 = greedy_acyclic_2color(&d1).expect("forward edges follow the order");
    let c2 = greedy_acyclic_2color(&d2).expect("backward edges reverse the order");

    let colors = (0..n).map(|v| 2 * c1.color(v) + c2.color(v)).collect();
    Ok(Coloring::from_vec(colors))
}

/// One recoloring move of a local search and the monochromatic-edge
/// count right after it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveRecord {
    pub vertex: usize,
    pub from: ColorId,
    pub to: ColorId,
    pub mono_edges_after: usize,
}

/// A finished k-color local search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSearchRun {
    pub coloring: Coloring,
    pub initial_mono_edges: usize,
    pub moves: Vec<MoveRecord>,
}

/// k-colors an undirected graph so every vertex has at most `deg/k`
/// same-colored neighbors.
///
/// Starts all-zero and repeatedly recolors the lowest-id violating
/// vertex to a color held by fewest of its neighbors. Every move
/// strictly decreases the monochromatic-edge count, which bounds the
/// number of moves by `|E|`.
pub fn local_search_kcolor(g: &UndirectedGraph, k: u32) -> Result<LocalSearchRun, BaselineError> {
    if k < 2 {
        return Err(BaselineError::InvalidK { k });
    }
    let n = g.n();
    let k = k as usize;
    let mut colors = vec![0 as ColorId; n];
    // counts[v][c] = neighbors of v currently wearing c.
    let mut counts: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut row = vec![0usize; k];
            row[0] = g.degree(v);
            row
        })
        .collect();
    let mut mono = g.edge_count();
    let initial_mono_edges = mono;
    let mut moves = Vec::new();

    'scan: loop {
        for v in 0..n {
            let current = colors[v] as usize;
            if k * counts[v][current] > g.degree(v) {
                // At least one color is held by at most deg/k < current
                // count neighbors, so the minimum is strictly smaller.
                let (target, &target_count) = counts[v]
                    .iter()
                    .enumerate()
                    .min_by_key(|&(c, &cnt)| (cnt, c))
                    .expect("k >= 2");
                debug_assert!(target_count < counts[v][current]);
                mono = mono - counts[v][current] + target_count;
                for &w in g.neighbors(v) {
                    counts[w][current] -= 1;
                    counts[w][target] += 1;
                }
                colors[v] = target as ColorId;
                moves.push(MoveRecord {
                    vertex: v,
                    from: current as ColorId,
                    to: target as ColorId,
                    mono_edges_after: mono,
                });
                continue 'scan;
            }
        }
        break;
    }

    Ok(LocalSearchRun {
        coloring: Coloring::from_vec(colors),
        initial_mono_edges,
        moves,
    })
}

/// Outcome of the capped list/rank local search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ListSearchOutcome {
    /// Every vertex satisfies `count <= rank of its color`.
    Converged { coloring: Coloring, moves: usize },
    /// The cap was hit; `best_coloring` is the fewest-violation state
    /// seen along the way.
    IterationCap {
        best_coloring: Coloring,
        best_violations: usize,
        moves: usize,
    },
}

/// Suggested iteration cap: a generous multiple of the uniform
/// variant's `|E|` bound.
pub fn default_max_iters(g: &UndirectedGraph) -> usize {
    10 * g.edge_count() + g.n()
}

/// Best-effort list/rank local search on an undirected graph.
///
/// Requires per-vertex rank sums of at least the degree. A vertex
/// violating `count <= rank(color)` always has a list color with
/// `count < rank` to move to, but no potential function is known for
/// this variant, so the search may cycle; it stops at `max_iters`.
pub fn local_search_list_ranks(
    g: &UndirectedGraph,
    lists: &[Vec<ColorId>],
    ranks: &[Vec<Rational>],
    max_iters: usize,
) -> Result<ListSearchOutcome, BaselineError> {
    let n = g.n();
    validate_lists(n, lists)?;
    if ranks.len() != n || lists.iter().zip(ranks).any(|(l, r)| l.len() != r.len()) {
        return Err(BaselineError::Instance(InstanceError::RankShapeMismatch {
            vertex: ranks.len().min(n),
        }));
    }
    for (v, row) in ranks.iter().enumerate() {
        let sum = Rational::checked_sum(row).expect("rank sum overflow");
        if sum.cmp_int(g.degree(v) as i64) == std::cmp::Ordering::Less {
            return Err(BaselineError::RankSumBelowDegree { vertex: v, degree: g.degree(v) });
        }
    }

    // choice[v] = index into lists[v]; start at the first list color.
    let mut choice = vec![0usize; n];
    // counts[v][i] = neighbors of v wearing lists[v][i].
    let mut counts: Vec<Vec<usize>> = (0..n).map(|v| vec![0usize; lists[v].len()]).collect();
    for v in 0..n {
        for &w in g.neighbors(v) {
            let wc = lists[w][choice[w]];
            if let Some(i) = lists[v].iter().position(|&c| c == wc) {
                counts[v][i] += 1;
            }
        }
    }

    let violates = |counts: &[Vec<usize>], choice: &[usize], v: usize| {
        ranks[v][choice[v]].cmp_int(counts[v][choice[v]] as i64) == std::cmp::Ordering::Less
    };
    let violation_count = |counts: &[Vec<usize>], choice: &[usize]| {
        (0..n).filter(|&v| violates(counts, choice, v)).count()
    };

    let snapshot = |choice: &[usize]| {
        Coloring::from_vec((0..n).map(|v| lists[v][choice[v]]).collect())
    };

    let mut best_violations = violation_count(&counts, &choice);
    let mut best_choice = choice.clone();
    let mut moves = 0usize;

    'scan: loop {
        if best_violations == 0 {
            return Ok(ListSearchOutcome::Converged { coloring: snapshot(&choice), moves });
        }
        for v in 0..n {
            if !violates(&counts, &choice, v) {
                continue;
            }
            if moves == max_iters {
                return Ok(ListSearchOutcome::IterationCap {
                    best_coloring: snapshot(&best_choice),
                    best_violations,
                    moves,
                });
            }
            // Candidates with strict headroom; min neighbor count, then
            // lowest color id.
            let target = (0..lists[v].len())
                .filter(|&i| {
                    ranks[v][i].cmp_int(counts[v][i] as i64) == std::cmp::Ordering::Greater
                })
                .min_by_key(|&i| (counts[v][i], lists[v][i]))
                .expect("rank sums at least degree guarantee a slot");
            let old = lists[v][choice[v]];
            let new = lists[v][target];
            for &w in g.neighbors(v) {
                if let Some(i) = lists[w].iter().position(|&c| c == old) {
                    counts[w][i] -= 1;
                }
                if let Some(i) = lists[w].iter().position(|&c| c == new) {
                    counts[w][i] += 1;
                }
            }
            choice[v] = target;
            moves += 1;
            let now = violation_count(&counts, &choice);
            if now < best_violations {
                best_violations = now;
                best_choice = choice.clone();
            }
            continue 'scan;
        }
        // No violating vertex: converged.
        return Ok(ListSearchOutcome::Converged { coloring: snapshot(&choice), moves });
    }
}
