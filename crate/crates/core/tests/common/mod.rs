//! Subset-enumeration oracle, written against raw adjacency masks so it
//! shares no code with the library's solvers or predicates.
#![allow(dead_code)]

use alliance_core::Graph;

pub struct Brute {
    pub n: usize,
    adj: Vec<u32>,
    deg: Vec<i64>,
}

impl Brute {
    pub fn new(g: &Graph) -> Self {
        assert!(g.n() <= 24, "oracle is for small graphs");
        let n = g.n();
        let mut adj = vec![0u32; n];
        for (u, v) in g.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let deg = adj.iter().map(|a| a.count_ones() as i64).collect();
        Brute { n, adj, deg }
    }

    fn all(&self) -> u32 {
        if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 }
    }

    pub fn is_oa(&self, s: u32, r: i64) -> bool {
        if s == 0 {
            return false;
        }
        (0..self.n).filter(|&v| s & (1 << v) == 0 && self.adj[v] & s != 0).all(|v| {
            let inside = (self.adj[v] & s).count_ones() as i64;
            inside >= self.deg[v] - inside + r
        })
    }

    pub fn dominates(&self, s: u32, k: u32) -> bool {
        (0..self.n).filter(|&v| s & (1 << v) == 0).all(|v| (self.adj[v] & s).count_ones() >= k)
    }

    pub fn is_goa(&self, s: u32, r: i64) -> bool {
        self.is_oa(s, r) && self.dominates(s, 1)
    }

    pub fn is_cover(&self, s: u32) -> bool {
        (0..self.n).all(|v| s & (1 << v) != 0 || self.adj[v] & !s == 0)
    }

    pub fn is_independent(&self, s: u32) -> bool {
        (0..self.n).all(|v| s & (1 << v) == 0 || self.adj[v] & s == 0)
    }

    /// Smallest cardinality of a nonempty set satisfying `pred`.
    pub fn min_size(&self, pred: impl Fn(u32) -> bool) -> Option<usize> {
        (1..=self.all()).filter(|&s| pred(s)).map(|s| s.count_ones() as usize).min()
    }

    pub fn oa(&self, r: i64) -> usize {
        self.min_size(|s| self.is_oa(s, r)).expect("V qualifies")
    }

    pub fn goa(&self, r: i64) -> usize {
        self.min_size(|s| self.is_goa(s, r)).expect("V qualifies")
    }

    pub fn gamma_k(&self, k: u32) -> usize {
        self.min_size(|s| self.dominates(s, k)).expect("V qualifies")
    }

    pub fn vertex_cover(&self) -> usize {
        if self.adj.iter().all(|&a| a == 0) {
            return 0;
        }
        self.min_size(|s| self.is_cover(s)).expect("V qualifies")
    }

    pub fn alpha(&self) -> usize {
        (1..=self.all()).filter(|&s| self.is_independent(s)).map(|s| s.count_ones() as usize).max().unwrap_or(0)
    }
}
