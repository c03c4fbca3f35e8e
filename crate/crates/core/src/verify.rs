//! Independent coloring verifiers.
//!
//! Everything here is deliberately brute-force: count neighbors, compare
//! exactly. No code is shared with the algorithms being checked, so
//! these functions double as the ground truth in property tests.

use std::fmt;

use thiserror::Error;

use crate::graph::{ColorId, Coloring, Digraph, UndirectedGraph};
use crate::instance::RankedInstance;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("coloring covers {got} vertices, graph has {n}")]
    SizeMismatch { n: usize, got: usize },
    #[error("fraction {fraction} outside [0, 1]")]
    FractionOutOfRange { fraction: Rational },
}

/// A single violated constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The vertex wears a color absent from its list.
    ColorNotInList { vertex: usize, color: ColorId },
    /// Too many same-colored neighbors: `count` observed, `allowed` is
    /// the exact bound that was exceeded.
    CountExceedsBound {
        vertex: usize,
        color: ColorId,
        count: usize,
        allowed: Rational,
        bound: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ColorNotInList { vertex, color } => {
                write!(f, "vertex {vertex}: color {color} not in list")
            }
            Violation::CountExceedsBound { vertex, color, count, allowed, bound } => write!(
                f,
                "vertex {vertex}: {count} same-colored (color {color}) exceeds {bound} = {allowed}"
            ),
        }
    }
}

/// Outcome of a verification pass: `ok()` iff no violations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            writeln!(f, "ok")
        } else {
            for v in &self.violations {
                writeln!(f, "{v}")?;
            }
            writeln!(f, "{} violation(s)", self.violations.len())
        }
    }
}

fn same_color_count(neighbors: &[usize], c: &Coloring, color: ColorId) -> usize {
    neighbors.iter().filter(|&&w| c.color(w) == color).count()
}

/// Checks `c(v) in L(v)` and that the number of out-neighbors sharing
/// `c(v)` is at most the rank of `c(v)` at `v`, per vertex.
pub fn verify_rank_coloring(
    inst: &RankedInstance,
    c: &Coloring,
) -> Result<VerifyReport, VerifyError> {
    let d = inst.digraph();
    if c.len() != d.n() {
        return Err(VerifyError::SizeMismatch { n: d.n(), got: c.len() });
    }
    let mut report = VerifyReport::default();
    for v in 0..d.n() {
        let color = c.color(v);
        let Some(rank) = inst.rank(v, color) else {
            report.violations.push(Violation::ColorNotInList { vertex: v, color });
            continue;
        };
        let count = same_color_count(d.out_neighbors(v), c, color);
        if rank.cmp_int(count as i64) == std::cmp::Ordering::Less {
            report.violations.push(Violation::CountExceedsBound {
                vertex: v,
                color,
                count,
                allowed: rank,
                bound: "rank".into(),
            });
        }
    }
    Ok(report)
}

/// Checks, per vertex, `q * count <= p * out_degree` for the fraction
/// `p/q` — integer arithmetic only.
pub fn verify_majority_fraction(
    d: &Digraph,
    c: &Coloring,
    fraction: Rational,
) -> Result<VerifyReport, VerifyError> {
    if fraction.is_negative() || fraction > Rational::ONE {
        return Err(VerifyError::FractionOutOfRange { fraction });
    }
    if c.len() != d.n() {
        return Err(VerifyError::SizeMismatch { n: d.n(), got: c.len() });
    }
    let (p, q) = (fraction.numerator() as i128, fraction.denominator() as i128);
    let mut report = VerifyReport::default();
    for v in 0..d.n() {
        let color = c.color(v);
        let count = same_color_count(d.out_neighbors(v), c, color);
        if q * count as i128 > p * d.out_degree(v) as i128 {
            let allowed = Rational::new(
                fraction.numerator().saturating_mul(d.out_degree(v) as i64),
                fraction.denominator(),
            )
            .unwrap_or(fraction);
            report.violations.push(Violation::CountExceedsBound {
                vertex: v,
                color,
                count,
                allowed,
                bound: format!("{fraction} of out-degree"),
            });
        }
    }
    Ok(report)
}

/// Checks, per vertex, `k * count <= degree` over the undirected
/// neighborhood.
pub fn verify_undirected_fraction(
    g: &UndirectedGraph,
    c: &Coloring,
    k: u32,
) -> Result<VerifyReport, VerifyError> {
    if c.len() != g.n() {
        return Err(VerifyError::SizeMismatch { n: g.n(), got: c.len() });
    }
    let mut report = VerifyReport::default();
    for v in 0..g.n() {
        let color = c.color(v);
        let count = same_color_count(g.neighbors(v), c, color);
        if (k as u128) * count as u128 > g.degree(v) as u128 {
            report.violations.push(Violation::CountExceedsBound {
                vertex: v,
                color,
                count,
                allowed: Rational::new(g.degree(v) as i64, k.max(1) as i64).unwrap(),
                bound: format!("1/{k} of degree"),
            });
        }
    }
    Ok(report)
}
