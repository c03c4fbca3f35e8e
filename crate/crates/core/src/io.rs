//! Text instance format.
//!
//! One record per line, whitespace-separated fields, `#` starts a
//! comment. Records:
//!
//! ```text
//! n <count>            vertex count; exactly once, first record
//! e <u> <v>            directed edge u -> v
//! u <a> <b>            undirected edge {a, b}
//! l <v> <c1> <c2> ...  color list of v
//! r <v> <c> <rank>     rank of color c at v, as `int` or `num/den`
//! ```
//!
//! A file uses either `e` or `u` lines, never both. Colorings are a
//! separate format: one `<v> <color>` line per vertex, ascending v.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{ColorId, Coloring, Digraph, GraphError, UndirectedGraph};
use crate::instance::{validate_lists, InstanceError, RankedInstance};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("line {line}: mixing directed (`e`) and undirected (`u`) edges")]
    MixedEdgeKinds { line: usize },
    #[error("line {line}: duplicate list for vertex {vertex}")]
    DuplicateList { line: usize, vertex: usize },
    #[error("line {line}: duplicate rank for vertex {vertex} color {color}")]
    DuplicateRank { line: usize, vertex: usize, color: ColorId },
    #[error("line {line}: rank names color {color} not in the list of vertex {vertex}")]
    RankForColorNotInList { line: usize, vertex: usize, color: ColorId },
    #[error("missing rank for vertex {vertex} color {color}")]
    MissingRank { vertex: usize, color: ColorId },
    #[error("vertex {vertex} has no color list but other vertices do")]
    MissingList { vertex: usize },
    #[error("ranks require color lists")]
    RanksWithoutLists,
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

fn malformed(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Malformed { line, message: message.into() }
}

/// The graph part of a parsed instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedGraph {
    Directed(Digraph),
    Undirected(UndirectedGraph),
}

/// A parsed instance file. `ranks` is present iff the file carried any
/// `r` line, in which case every list entry has one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedInstance {
    pub graph: ParsedGraph,
    pub lists: Option<Vec<Vec<ColorId>>>,
    pub ranks: Option<Vec<Vec<Rational>>>,
}

impl ParsedInstance {
    pub fn n(&self) -> usize {
        match &self.graph {
            ParsedGraph::Directed(d) => d.n(),
            ParsedGraph::Undirected(g) => g.n(),
        }
    }

    pub fn digraph(&self) -> Option<&Digraph> {
        match &self.graph {
            ParsedGraph::Directed(d) => Some(d),
            ParsedGraph::Undirected(_) => None,
        }
    }

    pub fn undirected(&self) -> Option<&UndirectedGraph> {
        match &self.graph {
            ParsedGraph::Undirected(g) => Some(g),
            ParsedGraph::Directed(_) => None,
        }
    }

    /// Converts a directed instance with lists and ranks into a
    /// [`RankedInstance`].
    pub fn into_ranked(self) -> Result<RankedInstance, ParseError> {
        let ParsedInstance { graph, lists, ranks } = self;
        let digraph = match graph {
            ParsedGraph::Directed(d) => d,
            ParsedGraph::Undirected(_) => {
                return Err(malformed(0, "ranked instances must be directed"))
            }
        };
        let lists = lists.ok_or_else(|| malformed(0, "instance has no color lists"))?;
        let ranks = ranks.ok_or_else(|| malformed(0, "instance has no ranks"))?;
        Ok(RankedInstance::new(digraph, lists, ranks)?)
    }
}

fn parse_field<T: std::str::FromStr>(
    line: usize,
    field: Option<&str>,
    what: &str,
) -> Result<T, ParseError> {
    let raw = field.ok_or_else(|| malformed(line, format!("missing {what}")))?;
    raw.parse()
        .map_err(|_| malformed(line, format!("invalid {what} {raw:?}")))
}

fn check_vertex(line: usize, v: usize, n: usize) -> Result<(), ParseError> {
    if v >= n {
        Err(ParseError::Graph {
            line,
            source: GraphError::VertexOutOfRange { vertex: v, n },
        })
    } else {
        Ok(())
    }
}

/// Parses an instance file.
pub fn parse_instance(text: &str) -> Result<ParsedInstance, ParseError> {
    let mut n: Option<usize> = None;
    let mut directed_edges: Vec<(usize, usize)> = Vec::new();
    let mut undirected_edges: Vec<(usize, usize)> = Vec::new();
    let mut seen_edges: std::collections::HashSet<(usize, usize)> = Default::default();
    let mut lists: Vec<Option<Vec<ColorId>>> = Vec::new();
    // (vertex, color, rank, line) collected first; resolved against lists at the end.
    let mut rank_records: Vec<(usize, ColorId, Rational, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut fields = content.split_whitespace();
        let Some(tag) = fields.next() else { continue };

        if n.is_none() && tag != "n" {
            return Err(malformed(line, "first record must be `n <count>`"));
        }
        match tag {
            "n" => {
                if n.is_some() {
                    return Err(malformed(line, "duplicate `n` record"));
                }
                let count: usize = parse_field(line, fields.next(), "vertex count")?;
                n = Some(count);
                lists = vec![None; count];
            }
            "e" | "u" => {
                let nn = n.unwrap();
                let a: usize = parse_field(line, fields.next(), "vertex id")?;
                let b: usize = parse_field(line, fields.next(), "vertex id")?;
                check_vertex(line, a, nn)?;
                check_vertex(line, b, nn)?;
                if a == b {
                    return Err(ParseError::Graph {
                        line,
                        source: GraphError::SelfLoop { vertex: a },
                    });
                }
                if tag == "e" {
                    if !undirected_edges.is_empty() {
                        return Err(ParseError::MixedEdgeKinds { line });
                    }
                    if !seen_edges.insert((a, b)) {
                        return Err(ParseError::Graph {
                            line,
                            source: GraphError::DuplicateEdge { u: a, v: b },
                        });
                    }
                    directed_edges.push((a, b));
                } else {
                    if !directed_edges.is_empty() {
                        return Err(ParseError::MixedEdgeKinds { line });
                    }
                    if !seen_edges.insert((a.min(b), a.max(b))) {
                        return Err(ParseError::Graph {
                            line,
                            source: GraphError::DuplicateEdge { u: a.min(b), v: a.max(b) },
                        });
                    }
                    undirected_edges.push((a, b));
                }
            }
            "l" => {
                let nn = n.unwrap();
                let v: usize = parse_field(line, fields.next(), "vertex id")?;
                check_vertex(line, v, nn)?;
                if lists[v].is_some() {
                    return Err(ParseError::DuplicateList { line, vertex: v });
                }
                let mut colors = Vec::new();
                for field in fields.by_ref() {
                    let c: ColorId = field
                        .parse()
                        .map_err(|_| malformed(line, format!("invalid color id {field:?}")))?;
                    colors.push(c);
                }
                if colors.is_empty() {
                    return Err(malformed(line, format!("empty color list for vertex {v}")));
                }
                let mut sorted = colors.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(malformed(line, format!("repeated color in list of vertex {v}")));
                }
                lists[v] = Some(colors);
            }
            "r" => {
                let nn = n.unwrap();
                let v: usize = parse_field(line, fields.next(), "vertex id")?;
                check_vertex(line, v, nn)?;
                let c: ColorId = parse_field(line, fields.next(), "color id")?;
                let rank: Rational = parse_field(line, fields.next(), "rank")?;
                rank_records.push((v, c, rank, line));
            }
            other => {
                return Err(malformed(line, format!("unknown record tag {other:?}")));
            }
        }
        if let Some(extra) = fields.next() {
            if tag != "l" {
                return Err(malformed(line, format!("unexpected trailing field {extra:?}")));
            }
        }
    }

    let n = n.ok_or_else(|| malformed(0, "missing `n <count>` record"))?;

    // Ids, loops, and duplicates were validated per line, so the
    // builders cannot fail here.
    let graph = if undirected_edges.is_empty() {
        ParsedGraph::Directed(Digraph::from_edges(n, directed_edges).expect("validated edges"))
    } else {
        ParsedGraph::Undirected(
            UndirectedGraph::from_edges(n, undirected_edges).expect("validated edges"),
        )
    };

    let any_list = lists.iter().any(Option::is_some);
    let lists = if any_list {
        let mut out = Vec::with_capacity(n);
        for (v, list) in lists.into_iter().enumerate() {
            out.push(list.ok_or(ParseError::MissingList { vertex: v })?);
        }
        validate_lists(n, &out)?;
        Some(out)
    } else {
        None
    };

    let ranks = if rank_records.is_empty() {
        None
    } else {
        let lists = lists.as_ref().ok_or(ParseError::RanksWithoutLists)?;
        let mut ranks: Vec<Vec<Option<Rational>>> =
            lists.iter().map(|l| vec![None; l.len()]).collect();
        for (v, c, rank, line) in rank_records {
            let Some(pos) = lists[v].iter().position(|&x| x == c) else {
                return Err(ParseError::RankForColorNotInList { line, vertex: v, color: c });
            };
            if ranks[v][pos].is_some() {
                return Err(ParseError::DuplicateRank { line, vertex: v, color: c });
            }
            ranks[v][pos] = Some(rank);
        }
        let mut out = Vec::with_capacity(n);
        for (v, rs) in ranks.into_iter().enumerate() {
            let mut row = Vec::with_capacity(rs.len());
            for (i, r) in rs.into_iter().enumerate() {
                row.push(r.ok_or(ParseError::MissingRank { vertex: v, color: lists[v][i] })?);
            }
            out.push(row);
        }
        Some(out)
    };

    Ok(ParsedInstance { graph, lists, ranks })
}

/// Serializes an instance. Output is deterministic: edges sorted, lists
/// and ranks ascending by vertex.
pub fn write_instance(inst: &ParsedInstance) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", inst.n()).unwrap();
    match &inst.graph {
        ParsedGraph::Directed(d) => {
            for &(u, v) in d.edges() {
                writeln!(out, "e {u} {v}").unwrap();
            }
        }
        ParsedGraph::Undirected(g) => {
            for &(a, b) in g.edges() {
                writeln!(out, "u {a} {b}").unwrap();
            }
        }
    }
    if let Some(lists) = &inst.lists {
        for (v, list) in lists.iter().enumerate() {
            write!(out, "l {v}").unwrap();
            for c in list {
                write!(out, " {c}").unwrap();
            }
            out.push('\n');
        }
        if let Some(ranks) = &inst.ranks {
            for (v, row) in ranks.iter().enumerate() {
                for (c, r) in lists[v].iter().zip(row) {
                    writeln!(out, "r {v} {c} {r}").unwrap();
                }
            }
        }
    }
    out
}

pub fn write_ranked_instance(inst: &RankedInstance) -> String {
    write_instance(&ParsedInstance {
        graph: ParsedGraph::Directed(inst.digraph().clone()),
        lists: Some(inst.lists().to_vec()),
        ranks: Some(inst.ranks().to_vec()),
    })
}

/// Parses a coloring file against a known vertex count. Every vertex
/// must be assigned exactly once.
pub fn parse_coloring(text: &str, n: usize) -> Result<Coloring, ParseError> {
    let mut colors: Vec<Option<ColorId>> = vec![None; n];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut fields = content.split_whitespace();
        let Some(first) = fields.next() else { continue };
        let v: usize = first
            .parse()
            .map_err(|_| malformed(line, format!("invalid vertex id {first:?}")))?;
        check_vertex(line, v, n)?;
        let c: ColorId = parse_field(line, fields.next(), "color id")?;
        if fields.next().is_some() {
            return Err(malformed(line, "unexpected trailing field"));
        }
        if colors[v].is_some() {
            return Err(malformed(line, format!("vertex {v} colored twice")));
        }
        colors[v] = Some(c);
    }
    let mut out = Vec::with_capacity(n);
    for (v, c) in colors.into_iter().enumerate() {
        out.push(c.ok_or_else(|| malformed(0, format!("vertex {v} has no color")))?);
    }
    Ok(Coloring::from_vec(out))
}

/// One `<v> <color>` line per vertex, ascending.
pub fn write_coloring(c: &Coloring) -> String {
    let mut out = String::new();
    for (v, color) in c.as_slice().iter().enumerate() {
        writeln!(out, "{v} {color}").unwrap();
    }
    out
}
