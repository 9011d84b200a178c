//! Immutable simple undirected graphs and the neighborhood arithmetic the
//! rest of the crate is written against.

mod generators;
pub mod io;
mod vertex_set;

use std::collections::VecDeque;

use serde::Serialize;

pub use generators::{generate, Family};
pub use vertex_set::VertexSet;

use crate::error::{Error, Result};

/// Bitset adjacency rows are kept only up to this order (64 words per row).
const BITSET_LIMIT: usize = 64 * 64;

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<usize>>,
    rows: Option<Vec<VertexSet>>,
}

/// Degrees in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Largest degree, δ₁.
    pub fn max(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// Smallest degree, δ.
    pub fn min(&self) -> usize {
        self.0.last().copied().unwrap_or(0)
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse; self-loops and out-of-range endpoints are errors.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let rows = (n <= BITSET_LIMIT).then(|| {
            adj.iter()
                .map(|list| VertexSet::from_indices(n, list.iter().copied()).expect("in range"))
                .collect()
        });
        Ok(Self { n, m, adj, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        match &self.rows {
            Some(rows) => rows[v].clone(),
            None => VertexSet::from_indices(self.n, self.adj[v].iter().copied()).expect("in range"),
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match &self.rows {
            Some(rows) => rows[u].contains(v),
            None => self.adj[u].binary_search(&v).is_ok(),
        }
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence(d)
    }

    /// The common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.min_degree();
        (self.n > 0 && self.max_degree() == d).then_some(d)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// `δ_X(v)`: the number of neighbors `v` has in `x`.
    pub fn degree_in(&self, v: usize, x: &VertexSet) -> usize {
        match &self.rows {
            Some(rows) => rows[v].intersection_len(x),
            None => self.adj[v].iter().filter(|&&u| x.contains(u)).count(),
        }
    }

    /// `N_X(v)`.
    pub fn neighbors_in(&self, v: usize, x: &VertexSet) -> VertexSet {
        self.neighbor_set(v).intersection(x)
    }

    /// `∂(S)`: vertices outside `s` with at least one neighbor in `s`.
    pub fn boundary(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.n);
        for v in s.iter() {
            for &u in &self.adj[v] {
                if !s.contains(u) {
                    out.insert(u);
                }
            }
        }
        out
    }

    /// Number of edges with exactly one endpoint in `s`.
    pub fn cut_size(&self, s: &VertexSet) -> usize {
        s.iter().map(|v| self.degree(v) - self.degree_in(v, s)).sum()
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Line graph: one vertex per edge (in `edges()` order), adjacent iff the
    /// edges share an endpoint. Also returns the edge behind each vertex.
    pub fn line_graph(&self) -> Result<(Graph, Vec<(usize, usize)>)> {
        let edges: Vec<_> = self.edges().collect();
        if edges.is_empty() {
            return Err(Error::NoEdges);
        }
        let mut incident = vec![Vec::new(); self.n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            incident[u].push(i);
            incident[v].push(i);
        }
        let mut line_edges = Vec::new();
        for list in &incident {
            for (a, &i) in list.iter().enumerate() {
                for &j in &list[a + 1..] {
                    line_edges.push((i, j));
                }
            }
        }
        Ok((Graph::from_edge_list(edges.len(), &line_edges)?, edges))
    }

    /// Adjacency rows as single words, for the exhaustive solvers.
    pub(crate) fn adjacency_masks(&self) -> Option<Vec<u64>> {
        (self.n <= 64).then(|| {
            self.adj.iter().map(|list| list.iter().fold(0u64, |acc, &u| acc | 1 << u)).collect()
        })
    }

    pub(crate) fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.universe() != self.n {
            return Err(Error::UniverseMismatch { set: s.universe(), graph: self.n });
        }
        Ok(())
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.m)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &e).unwrap()
    }

    fn set(n: usize, items: &[usize]) -> VertexSet {
        VertexSet::from_indices(n, items.iter().copied()).unwrap()
    }

    #[test]
    fn from_edge_list_examples() {
        let k3 = Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.m(), 3);
        let e = Graph::from_edge_list(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(e.m(), 1);
        assert!(matches!(Graph::from_edge_list(2, &[(0, 0)]), Err(Error::SelfLoop(0))));
        assert!(matches!(
            Graph::from_edge_list(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn degree_in_examples() {
        let k3 = generate(&Family::Complete(3)).unwrap();
        assert_eq!(k3.degree_in(0, &set(3, &[1, 2])), 2);
        let p3 = path(3);
        assert_eq!(p3.degree_in(1, &set(3, &[0])), 1);
        assert_eq!(p3.degree_in(1, &VertexSet::empty(3)), 0);
        assert_eq!(p3.degree_in(1, &VertexSet::full(3)), p3.degree(1));
    }

    #[test]
    fn boundary_examples() {
        let k3 = generate(&Family::Complete(3)).unwrap();
        assert_eq!(k3.boundary(&set(3, &[0])).to_vec(), vec![1, 2]);
        let p4 = path(4);
        assert_eq!(p4.boundary(&set(4, &[1, 2])).to_vec(), vec![0, 3]);
        assert!(p4.boundary(&VertexSet::full(4)).is_empty());
        assert!(p4.boundary(&VertexSet::empty(4)).is_empty());
    }

    #[test]
    fn degree_sequence_is_sorted() {
        let p = path(4);
        let d = p.degree_sequence();
        assert_eq!(d.as_slice(), &[2, 2, 1, 1]);
        assert_eq!((d.max(), d.min()), (2, 1));
    }

    #[test]
    fn line_graph_examples() {
        let (l3, _) = generate(&Family::Complete(3)).unwrap().line_graph().unwrap();
        assert_eq!((l3.n(), l3.m(), l3.regular_degree()), (3, 3, Some(2)));
        let (l5, _) = generate(&Family::Cycle(5)).unwrap().line_graph().unwrap();
        assert_eq!((l5.n(), l5.m(), l5.regular_degree()), (5, 5, Some(2)));

        // L(K4) is the octahedron: edges sharing no endpoint are the only non-adjacent pairs.
        let k4 = generate(&Family::Complete(4)).unwrap();
        let (l, map) = k4.line_graph().unwrap();
        assert_eq!((l.n(), l.regular_degree()), (6, Some(4)));
        for i in 0..6 {
            for j in i + 1..6 {
                let (a, b) = map[i];
                let (c, d) = map[j];
                let share = a == c || a == d || b == c || b == d;
                assert_eq!(l.has_edge(i, j), share);
            }
        }
        assert!(matches!(Graph::from_edge_list(3, &[]).unwrap().line_graph(), Err(Error::NoEdges)));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..14).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..40).prop_map(move |pairs| {
                let e: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
                Graph::from_edge_list(n, &e).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn adjacency_invariants(g in arb_graph()) {
            let total: usize = (0..g.n()).map(|v| g.degree(v)).sum();
            prop_assert_eq!(total, 2 * g.m());
            for v in 0..g.n() {
                prop_assert!(!g.neighbors(v).contains(&v));
                for &u in g.neighbors(v) {
                    prop_assert!(g.neighbors(u).contains(&v));
                }
            }
        }

        #[test]
        fn boundary_and_partition_identity(g in arb_graph(), mask in any::<u64>()) {
            let s = VertexSet::from_indices(g.n(), (0..g.n()).filter(|i| mask >> i & 1 == 1)).unwrap();
            let b = g.boundary(&s);
            prop_assert!(b.is_disjoint(&s));
            let sc = s.complement();
            for v in 0..g.n() {
                prop_assert_eq!(g.degree_in(v, &s) + g.degree_in(v, &sc), g.degree(v));
                if b.contains(v) {
                    prop_assert!(g.degree_in(v, &s) >= 1);
                }
                if !s.contains(v) && g.degree_in(v, &s) >= 1 {
                    prop_assert!(b.contains(v));
                }
            }
        }

        #[test]
        fn line_graph_of_regular(n in 5usize..13, d in 2usize..5, seed in any::<u64>()) {
            prop_assume!(n * d % 2 == 0 && d < n);
            let g = generate(&Family::RandomRegular { n, d, seed }).unwrap();
            let (l, _) = g.line_graph().unwrap();
            prop_assert_eq!(l.n(), n * d / 2);
            prop_assert_eq!(l.regular_degree(), Some(2 * (d - 1)));
        }
    }
}
