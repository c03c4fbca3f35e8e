//! Helpers shared by the integration suites.
// Each test binary compiles this module separately and uses a subset.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use majority_coloring::gen::{gen_random_digraph, mix_seed};
use majority_coloring::{ColorId, Digraph, RankedInstance, Rational};

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den).unwrap()
}

/// A random instance guaranteed feasible at t = 2: list sizes 1..=4
/// from a palette of 8, rank profiles perturbed around `2 d+ / |L|`
/// (negative entries included) and then topped up so every rank sum is
/// at least `2 d+`.
pub fn random_feasible_instance(n: usize, p: Rational, seed: u64) -> RankedInstance {
    let digraph = gen_random_digraph(n, p, seed).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, 0x5eed));
    let mut lists: Vec<Vec<ColorId>> = Vec::with_capacity(n);
    let mut ranks: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for v in 0..n {
        let len = rng.random_range(1..=4usize);
        let mut palette: Vec<ColorId> = (0..8).collect();
        for i in 0..len {
            let j = rng.random_range(i..8);
            palette.swap(i, j);
        }
        let mut list: Vec<ColorId> = palette[..len].to_vec();
        list.sort_unstable();

        let need = 2 * digraph.out_degree(v) as i64;
        let base = rat(need, len as i64);
        let mut row: Vec<Rational> = (0..len)
            .map(|_| {
                let jitter = rat(rng.random_range(-4..=4), rng.random_range(1..=3));
                base.checked_add(&jitter).unwrap()
            })
            .collect();
        let sum = Rational::checked_sum(&row).unwrap();
        if sum.cmp_int(need) == std::cmp::Ordering::Less {
            let deficit = Rational::from_int(need).checked_sub(&sum).unwrap();
            row[0] = row[0].checked_add(&deficit).unwrap();
        }
        lists.push(list);
        ranks.push(row);
    }
    RankedInstance::new(digraph, lists, ranks).unwrap()
}

/// All `2^(n choose 2)` tournaments on `n` vertices.
pub fn all_tournaments(n: usize) -> Vec<Digraph> {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            pairs.push((u, v));
        }
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges = pairs.iter().enumerate().map(|(k, &(u, v))| {
            if (mask >> k) & 1 == 0 {
                (u, v)
            } else {
                (v, u)
            }
        });
        out.push(Digraph::from_edges(n, edges).unwrap());
    }
    out
}
