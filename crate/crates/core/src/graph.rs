//! Directed and undirected graph representations with dense vertex ids.
//!
//! Vertices are the ids `0..n-1`. Graphs are simple (no self-loops, no
//! duplicate edges) and immutable after construction, so they can be
//! shared freely across threads.

use thiserror::Error;

/// A color identifier. Colorings and color lists use non-negative ids.
pub type ColorId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },
    #[error("vertex id {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// Returned by [`Digraph::topological_order`] when the graph has a
/// directed cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("digraph contains a directed cycle")]
pub struct Cyclic;

/// A simple loop-free directed graph on vertices `0..n-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl Digraph {
    /// Builds a digraph from directed edges `(u, v)` meaning `u -> v`.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
        for &(u, v) in &edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge { u: w[0].0, v: w[0].1 });
            }
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for adj in &mut in_adj {
            adj.sort_unstable();
        }
        Ok(Digraph {
            n,
            edges,
            out_adj,
            in_adj,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in sorted order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Out-neighbors of `v`, ascending.
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    /// In-neighbors of `v`, ascending.
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    /// Kahn's algorithm with a min-heap over ready vertices, so ties go
    /// to the lowest id and the order is reproducible. On success every
    /// edge `(u, v)` has `u` before `v` in the returned order.
    pub fn topological_order(&self) -> Result<Vec<usize>, Cyclic> {
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;

        let mut in_deg: Vec<usize> = (0..self.n).map(|v| self.in_degree(v)).collect();
        let mut ready: BinaryHeap<Reverse<usize>> = (0..self.n)
            .filter(|&v| in_deg[v] == 0)
            .map(Reverse)
            .collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            for &w in self.out_neighbors(v) {
                in_deg[w] -= 1;
                if in_deg[w] == 0 {
                    ready.push(Reverse(w));
                }
            }
        }
        if order.len() == self.n {
            Ok(order)
        } else {
            Err(Cyclic)
        }
    }
}

/// A simple undirected graph on vertices `0..n-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl UndirectedGraph {
    /// Builds a graph from unordered edges; `(u, v)` and `(v, u)` denote
    /// the same edge.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| if u <= v { (u, v) } else { (v, u) })
            .collect();
        for &(u, v) in &edges {
            if v >= n {
                let vertex = if u >= n { u } else { v };
                return Err(GraphError::VertexOutOfRange { vertex, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge { u: w[0].0, v: w[0].1 });
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(UndirectedGraph { n, edges, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted `(min, max)` pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }
}

/// A total assignment of colors to the vertices of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<ColorId>,
}

impl Coloring {
    pub fn from_vec(colors: Vec<ColorId>) -> Self {
        Coloring { colors }
    }

    pub fn uniform(n: usize, color: ColorId) -> Self {
        Coloring {
            colors: vec![color; n],
        }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, v: usize) -> ColorId {
        self.colors[v]
    }

    pub fn set(&mut self, v: usize, color: ColorId) {
        self.colors[v] = color;
    }

    pub fn as_slice(&self) -> &[ColorId] {
        &self.colors
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn digraph(n: usize, edges: &[(usize, usize)]) -> Digraph {
        Digraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn adjacency_is_mutually_consistent() {
        let d = digraph(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]);
        for &(u, v) in d.edges() {
            assert!(d.out_neighbors(u).contains(&v));
            assert!(d.in_neighbors(v).contains(&u));
            assert!(d.has_edge(u, v));
        }
        assert_eq!(d.out_degree(0), 2);
        assert_eq!(d.in_degree(0), 1);
        assert!(!d.has_edge(1, 0));
    }

    #[test]
    fn self_loop_rejected() {
        assert_eq!(
            Digraph::from_edges(2, [(1, 1)]),
            Err(GraphError::SelfLoop { vertex: 1 })
        );
    }

    #[test]
    fn duplicate_edge_rejected() {
        assert_eq!(
            Digraph::from_edges(2, [(0, 1), (0, 1)]),
            Err(GraphError::DuplicateEdge { u: 0, v: 1 })
        );
        // Opposite orientations are two distinct directed edges.
        assert!(Digraph::from_edges(2, [(0, 1), (1, 0)]).is_ok());
    }

    #[test]
    fn out_of_range_rejected() {
        assert_eq!(
            Digraph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn topological_order_of_path_is_unique() {
        let d = digraph(3, &[(0, 1), (1, 2)]);
        assert_eq!(d.topological_order(), Ok(vec![0, 1, 2]));
    }

    #[test]
    fn topological_order_detects_cycle() {
        let d = digraph(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(d.topological_order(), Err(Cyclic));
    }

    #[test]
    fn topological_order_of_empty_graph_is_identity() {
        let d = digraph(4, &[]);
        // Min-heap tie-break makes the order ascending by id.
        assert_eq!(d.topological_order(), Ok(vec![0, 1, 2, 3]));
    }

    #[test]
    fn zero_vertex_graph() {
        let d = digraph(0, &[]);
        assert_eq!(d.topological_order(), Ok(vec![]));
        assert_eq!(d.edge_count(), 0);
    }

    #[test]
    fn undirected_edges_normalized() {
        let g = UndirectedGraph::from_edges(3, [(2, 0), (1, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 2), (1, 2)]);
        assert_eq!(g.degree(2), 2);
        assert_eq!(g.neighbors(2), &[0, 1]);
        assert_eq!(
            UndirectedGraph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { u: 0, v: 1 })
        );
    }

    /// Exhaustive DFS cycle detection, the independent check for the
    /// queue-based topological sort.
    fn dfs_has_cycle(d: &Digraph) -> bool {
        const WHITE: u8 = 0;
        const GRAY: u8 = 1;
        const BLACK: u8 = 2;
        let mut state = vec![WHITE; d.n()];
        for start in 0..d.n() {
            if state[start] != WHITE {
                continue;
            }
            // Iterative DFS with an explicit neighbor cursor.
            let mut stack = vec![(start, 0usize)];
            state[start] = GRAY;
            while let Some(&mut (v, ref mut cursor)) = stack.last_mut() {
                if let Some(&w) = d.out_neighbors(v).get(*cursor) {
                    *cursor += 1;
                    match state[w] {
                        GRAY => return true,
                        WHITE => {
                            state[w] = GRAY;
                            stack.push((w, 0));
                        }
                        _ => {}
                    }
                } else {
                    state[v] = BLACK;
                    stack.pop();
                }
            }
        }
        false
    }

    proptest! {
        #[test]
        fn topo_order_agrees_with_dfs_cycle_detection(
            n in 1usize..10,
            edge_bits in proptest::collection::vec(any::<bool>(), 90)) {
            let mut edges = Vec::new();
            let mut idx = 0;
            for u in 0..n {
                for v in 0..n {
                    if u != v {
                        if edge_bits[idx] {
                            edges.push((u, v));
                        }
                        idx += 1;
                    }
                }
            }
            let d = Digraph::from_edges(n, edges).unwrap();
            match d.topological_order() {
                Ok(order) => {
                    prop_assert!(!dfs_has_cycle(&d));
                    let mut pos = vec![0; n];
                    for (i, &v) in order.iter().enumerate() {
                        pos[v] = i;
                    }
                    for &(u, v) in d.edges() {
                        prop_assert!(pos[u] < pos[v]);
                    }
                }
                Err(Cyclic) => prop_assert!(dfs_has_cycle(&d)),
            }
        }
    }
}
