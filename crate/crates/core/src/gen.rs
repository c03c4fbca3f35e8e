//! Seeded random instance generators.
//!
//! All generators are pure functions of their arguments: the PRNG is
//! ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded through `seed_from_u64`,
//! so the same seed reproduces the same graph on every run. Edge
//! probabilities are exact rationals; sparse graphs are sampled in
//! O(n + m) by drawing geometric gaps between included pairs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use thiserror::Error;

use crate::graph::{ColorId, Digraph, UndirectedGraph};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("edge probability {p} outside [0, 1]")]
    InvalidProbability { p: Rational },
    #[error("list size {list_size} exceeds palette size {palette}")]
    ListLargerThanPalette { list_size: usize, palette: usize },
    #[error("list size must be at least 1")]
    ZeroListSize,
}

/// Derives an independent sub-seed, e.g. one per search trial.
/// SplitMix64 finalizer over the pair.
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn check_probability(p: Rational) -> Result<(), GenError> {
    if p.is_negative() || p > Rational::ONE {
        Err(GenError::InvalidProbability { p })
    } else {
        Ok(())
    }
}

/// Yields the flat indices of a Bernoulli(p) subset of `0..total`,
/// ascending. Gap lengths between successes are geometric, so the cost
/// is proportional to the number of successes.
fn sample_indices(total: u64, p: Rational, rng: &mut ChaCha8Rng) -> Vec<u64> {
    if p == Rational::ZERO || total == 0 {
        return Vec::new();
    }
    if p == Rational::ONE {
        return (0..total).collect();
    }
    let pf = p.numerator() as f64 / p.denominator() as f64;
    let geo = Geometric::new(pf).expect("probability in (0, 1)");
    let mut out = Vec::new();
    let mut idx = geo.sample(rng);
    while idx < total {
        out.push(idx);
        let gap = geo.sample(rng);
        match idx.checked_add(gap + 1) {
            Some(next) => idx = next,
            None => break,
        }
    }
    out
}

/// Maps a flat index in `0..n(n-1)` to the ordered pair it names.
fn ordered_pair(n: usize, idx: u64) -> (usize, usize) {
    let row = (idx / (n as u64 - 1)) as usize;
    let rem = (idx % (n as u64 - 1)) as usize;
    let col = if rem >= row { rem + 1 } else { rem };
    (row, col)
}

/// Maps ascending flat indices in `0..n(n-1)/2` to unordered pairs
/// `(i, j)` with `i < j`, walking rows incrementally.
fn unordered_pairs(n: usize, indices: &[u64]) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(indices.len());
    let mut row = 0usize;
    let mut row_start = 0u64;
    for &idx in indices {
        while idx >= row_start + (n - 1 - row) as u64 {
            row_start += (n - 1 - row) as u64;
            row += 1;
        }
        let j = row + 1 + (idx - row_start) as usize;
        out.push((row, j));
    }
    out
}

/// Random digraph: each ordered pair `(u, v)`, `u != v`, becomes an edge
/// independently with probability `p`.
pub fn gen_random_digraph(n: usize, p: Rational, seed: u64) -> Result<Digraph, GenError> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n < 2 {
        return Ok(Digraph::from_edges(n, []).unwrap());
    }
    let total = (n as u64) * (n as u64 - 1);
    let edges: Vec<(usize, usize)> = sample_indices(total, p, &mut rng)
        .into_iter()
        .map(|idx| ordered_pair(n, idx))
        .collect();
    Ok(Digraph::from_edges(n, edges).unwrap())
}

/// Random tournament: exactly one of `(u, v)`, `(v, u)` per unordered
/// pair, orientation uniform.
pub fn gen_random_tournament(n: usize, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<bool>() {
                edges.push((u, v));
            } else {
                edges.push((v, u));
            }
        }
    }
    Digraph::from_edges(n, edges).unwrap()
}

/// Random DAG: a uniform vertex order is drawn, then each pair gets a
/// forward edge (w.r.t. that order) independently with probability `p`.
pub fn gen_random_dag(n: usize, p: Rational, seed: u64) -> Result<Digraph, GenError> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n < 2 {
        return Ok(Digraph::from_edges(n, []).unwrap());
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let total = (n as u64) * (n as u64 - 1) / 2;
    let indices = sample_indices(total, p, &mut rng);
    let edges: Vec<(usize, usize)> = unordered_pairs(n, &indices)
        .into_iter()
        .map(|(i, j)| (perm[i], perm[j]))
        .collect();
    Ok(Digraph::from_edges(n, edges).unwrap())
}

/// Random undirected graph: each unordered pair becomes an edge
/// independently with probability `p`.
pub fn gen_random_undirected(n: usize, p: Rational, seed: u64) -> Result<UndirectedGraph, GenError> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n < 2 {
        return Ok(UndirectedGraph::from_edges(n, []).unwrap());
    }
    let total = (n as u64) * (n as u64 - 1) / 2;
    let indices = sample_indices(total, p, &mut rng);
    Ok(UndirectedGraph::from_edges(n, unordered_pairs(n, &indices)).unwrap())
}

/// A uniform random permutation of `0..n`.
pub fn gen_random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    perm
}

/// Per-vertex color lists: each list is a uniform `list_size`-subset of
/// `{0, .., palette-1}`, stored ascending.
pub fn gen_random_lists(
    n: usize,
    palette: usize,
    list_size: usize,
    seed: u64,
) -> Result<Vec<Vec<ColorId>>, GenError> {
    if list_size == 0 {
        return Err(GenError::ZeroListSize);
    }
    if list_size > palette {
        return Err(GenError::ListLargerThanPalette { list_size, palette });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lists = Vec::with_capacity(n);
    for _ in 0..n {
        // Partial Fisher-Yates: the first `list_size` slots end up a
        // uniform subset.
        let mut pool: Vec<ColorId> = (0..palette as ColorId).collect();
        for i in 0..list_size {
            let j = rng.random_range(i..palette);
            pool.swap(i, j);
        }
        let mut list: Vec<ColorId> = pool[..list_size].to_vec();
        list.sort_unstable();
        lists.push(list);
    }
    Ok(lists)
}
