//! List-coloring instances: a digraph together with per-vertex color
//! lists and an exact rational rank for every list entry.

use thiserror::Error;

use crate::graph::{ColorId, Digraph};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("expected one color list per vertex ({n}), got {got}")]
    ListCountMismatch { n: usize, got: usize },
    #[error("vertex {vertex} has an empty color list")]
    EmptyList { vertex: usize },
    #[error("vertex {vertex} lists color {color} more than once")]
    DuplicateColor { vertex: usize, color: ColorId },
    #[error("rank shape does not match list shape at vertex {vertex}")]
    RankShapeMismatch { vertex: usize },
}

/// Validates that `lists` assigns every vertex of an `n`-vertex graph a
/// nonempty list of distinct colors.
pub fn validate_lists(n: usize, lists: &[Vec<ColorId>]) -> Result<(), InstanceError> {
    if lists.len() != n {
        return Err(InstanceError::ListCountMismatch { n, got: lists.len() });
    }
    for (v, list) in lists.iter().enumerate() {
        if list.is_empty() {
            return Err(InstanceError::EmptyList { vertex: v });
        }
        let mut seen = list.clone();
        seen.sort_unstable();
        for w in seen.windows(2) {
            if w[0] == w[1] {
                return Err(InstanceError::DuplicateColor { vertex: v, color: w[0] });
            }
        }
    }
    Ok(())
}

/// A digraph with color lists and one rank per list entry. Ranks are
/// indexed by list position, parallel to `lists`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedInstance {
    digraph: Digraph,
    lists: Vec<Vec<ColorId>>,
    ranks: Vec<Vec<Rational>>,
}

impl RankedInstance {
    pub fn new(
        digraph: Digraph,
        lists: Vec<Vec<ColorId>>,
        ranks: Vec<Vec<Rational>>,
    ) -> Result<Self, InstanceError> {
        validate_lists(digraph.n(), &lists)?;
        if ranks.len() != lists.len() {
            return Err(InstanceError::RankShapeMismatch { vertex: ranks.len().min(lists.len()) });
        }
        for (v, (list, rs)) in lists.iter().zip(&ranks).enumerate() {
            if list.len() != rs.len() {
                return Err(InstanceError::RankShapeMismatch { vertex: v });
            }
        }
        Ok(RankedInstance { digraph, lists, ranks })
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn n(&self) -> usize {
        self.digraph.n()
    }

    pub fn list(&self, v: usize) -> &[ColorId] {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[Vec<ColorId>] {
        &self.lists
    }

    pub fn ranks_of(&self, v: usize) -> &[Rational] {
        &self.ranks[v]
    }

    pub fn ranks(&self) -> &[Vec<Rational>] {
        &self.ranks
    }

    /// Rank of `color` at `v`, or `None` when the color is not listed.
    pub fn rank(&self, v: usize, color: ColorId) -> Option<Rational> {
        self.lists[v]
            .iter()
            .position(|&c| c == color)
            .map(|i| self.ranks[v][i])
    }
}
