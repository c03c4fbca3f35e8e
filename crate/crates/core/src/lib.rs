//! Majority colorings of digraphs from color lists with rational ranks.
//!
//! A *majority coloring* gives every vertex a color worn by at most
//! half of its out-neighbors. This crate colors digraphs from
//! per-vertex color lists under a more general contract: every list
//! color carries an exact rational *rank*, and the output coloring
//! keeps each vertex's same-colored out-neighbor count within the rank
//! of its chosen color. Whenever every vertex's ranks sum to at least
//! twice its out-degree (and lists have at most four colors), a valid
//! coloring exists and [`engine::color_with_ranks`] finds one in
//! O(t * edges) time.
//!
//! Two ready-made rank profiles come from that guarantee:
//! - [`engine::build_majority4_instance`]: 4-lists ranked at
//!   `out_degree / 2` — solutions are majority colorings, so every
//!   digraph is majority-colorable from arbitrary 4-lists.
//! - [`engine::build_twothirds3_instance`]: 3-lists padded with a
//!   negatively-ranked fictitious color — solutions match at most 2/3
//!   of each out-neighborhood.
//!
//! Alongside the solver: rank-free baselines ([`baselines`]), exhaustive
//! small-instance oracles and a counterexample search ([`oracle`]),
//! independent verifiers ([`verify`]), seeded generators ([`gen`]), and
//! a line-based text format ([`io`]).

pub mod baselines;
pub mod engine;
pub mod gen;
pub mod graph;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod rational;
pub mod verify;

pub use graph::{ColorId, Coloring, Digraph, UndirectedGraph};
pub use instance::RankedInstance;
pub use rational::Rational;
