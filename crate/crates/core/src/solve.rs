//! Exact minimizers for `a_r^o`, `γ_r^o`, `γ`, `γ_k`, `α` and minimum vertex
//! cover.
//!
//! All minimizers share one search: cardinalities are tried in increasing
//! order and, within a cardinality, subsets are visited in lexicographic
//! order, so the first accepted set is the lexicographically smallest
//! optimum. Subtrees are cut when some vertex already decided to lie outside
//! the set cannot reach its neighbor quota with the remaining picks.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::alliance::{min_degree_r_range, valid_r_range};
use crate::bounds::ceil_half;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest order the solvers accept without `allow_large`.
pub const SOLVER_LIMIT: usize = 40;
/// Hard ceiling imposed by the single-word subset representation.
pub const HARD_LIMIT: usize = 64;

const DEADLINE_POLL: u64 = 1 << 14;

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    /// Lift the `SOLVER_LIMIT` guardrail (up to `HARD_LIMIT`).
    pub allow_large: bool,
    /// Fan out over first-vertex subtrees on the current rayon pool.
    pub parallel: bool,
    pub deadline: Option<Instant>,
}

impl SolveOptions {
    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.deadline = Some(Instant::now() + timeout);
        self
    }
}

/// Optimum, its lexicographically smallest witness, and search statistics.
#[derive(Debug, Clone, Serialize)]
pub struct SolveResult {
    #[serde(rename = "r", skip_serializing_if = "Option::is_none")]
    pub parameter: Option<i64>,
    pub optimum: usize,
    pub witness: VertexSet,
    #[serde(rename = "nodes")]
    pub nodes_explored: u64,
    pub pruned: u64,
    #[serde(rename = "ms", serialize_with = "as_millis")]
    pub elapsed: Duration,
}

fn as_millis<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

/// A minimization target expressed as a per-vertex neighbor quota for the
/// vertices left outside the set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    Offensive { r: i64 },
    GlobalOffensive { r: i64 },
    Dominating,
    KDominating { k: usize },
    VertexCover,
}

impl Problem {
    fn parameter(&self) -> Option<i64> {
        match *self {
            Problem::Offensive { r } | Problem::GlobalOffensive { r } => Some(r),
            Problem::KDominating { k } => Some(k as i64),
            _ => None,
        }
    }
}

#[derive(Debug, Default, Clone, Copy)]
struct Stats {
    nodes: u64,
    pruned: u64,
}

impl std::ops::AddAssign for Stats {
    fn add_assign(&mut self, o: Self) {
        self.nodes += o.nodes;
        self.pruned += o.pruned;
    }
}

struct Engine {
    n: usize,
    adj: Vec<u64>,
    /// Minimum number of neighbors inside the set for an outside vertex.
    need: Vec<i64>,
    /// `true`: every outside vertex must meet its quota. `false`: only
    /// outside vertices with at least one neighbor inside (the boundary).
    every_outside: bool,
    deadline: Option<Instant>,
}

#[inline]
fn low_bits(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

impl Engine {
    fn new(g: &Graph, problem: Problem, deadline: Option<Instant>) -> Self {
        let n = g.n();
        let deg = |v: usize| g.degree(v) as i64;
        let (need, every_outside): (Vec<i64>, bool) = match problem {
            Problem::Offensive { r } => ((0..n).map(|v| ceil_half(deg(v) + r)).collect(), false),
            Problem::GlobalOffensive { r } => ((0..n).map(|v| ceil_half(deg(v) + r).max(1)).collect(), true),
            Problem::Dominating => (vec![1; n], true),
            Problem::KDominating { k } => (vec![k as i64; n], true),
            Problem::VertexCover => ((0..n).map(deg).collect(), true),
        };
        Self { n, adj: g.adjacency_masks().expect("order checked"), need, every_outside, deadline }
    }

    #[inline]
    fn quota_ok(&self, v: usize, inside: i64) -> bool {
        inside >= self.need[v] || (!self.every_outside && inside == 0)
    }

    fn accepts(&self, chosen: u64) -> bool {
        let out = !chosen & low_bits(self.n);
        iter_bits(out).all(|v| self.quota_ok(v, (self.adj[v] & chosen).count_ones() as i64))
    }

    /// Some vertex below `next` is outside and cannot be satisfied any more.
    fn hopeless(&self, chosen: u64, next: usize, slots: usize) -> bool {
        let decided_out = !chosen & low_bits(next);
        let cand = low_bits(self.n) & !low_bits(next);
        iter_bits(decided_out).any(|v| {
            let inside = (self.adj[v] & chosen).count_ones() as i64;
            if !self.every_outside && inside == 0 {
                return false;
            }
            let reachable = (self.adj[v] & cand).count_ones().min(slots as u32) as i64;
            inside + reachable < self.need[v]
        })
    }

    fn dfs(&self, chosen: u64, next: usize, slots: usize, st: &mut Stats) -> Result<Option<u64>> {
        st.nodes += 1;
        if st.nodes.is_multiple_of(DEADLINE_POLL) {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(Error::Timeout);
                }
            }
        }
        if self.hopeless(chosen, next, slots) {
            st.pruned += 1;
            return Ok(None);
        }
        if slots == 0 {
            return Ok(self.accepts(chosen).then_some(chosen));
        }
        for j in next..=self.n - slots {
            if let Some(found) = self.dfs(chosen | 1 << j, j + 1, slots - 1, st)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }

    fn search_size(&self, k: usize, parallel: bool, st: &mut Stats) -> Result<Option<u64>> {
        if k == 0 || !parallel {
            return self.dfs(0, 0, k, st);
        }
        st.nodes += 1;
        let best = AtomicUsize::new(usize::MAX);
        let branches: Vec<Result<(Option<u64>, Stats)>> = (0..=self.n - k)
            .into_par_iter()
            .map(|j| {
                let mut local = Stats::default();
                if j > best.load(Ordering::Relaxed) {
                    return Ok((None, local));
                }
                let found = self.dfs(1 << j, j + 1, k - 1, &mut local)?;
                if found.is_some() {
                    best.fetch_min(j, Ordering::Relaxed);
                }
                Ok((found, local))
            })
            .collect();
        let mut answer = None;
        for branch in branches {
            let (found, local) = branch?;
            *st += local;
            // branches are in first-vertex order, so the first hit is the lex-min
            if answer.is_none() {
                answer = found;
            }
        }
        Ok(answer)
    }
}

fn iter_bits(mut w: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (w != 0).then(|| {
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            b
        })
    })
}

fn check_order(g: &Graph, opts: &SolveOptions) -> Result<()> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > HARD_LIMIT {
        return Err(Error::TooLarge { n, limit: HARD_LIMIT });
    }
    if n > SOLVER_LIMIT && !opts.allow_large {
        return Err(Error::TooLarge { n, limit: SOLVER_LIMIT });
    }
    Ok(())
}

/// Smallest cardinality worth trying: the degree lower bound `⌈(δ+r)/2⌉`
/// inside its range of validity, otherwise 1 (0 for vertex cover).
fn floor_size(g: &Graph, problem: Problem) -> usize {
    match problem {
        Problem::Offensive { r } | Problem::GlobalOffensive { r } => {
            if g.min_degree() >= 1 && min_degree_r_range(g).contains(r) {
                ceil_half(g.min_degree() as i64 + r).max(1) as usize
            } else {
                1
            }
        }
        Problem::VertexCover => 0,
        _ => 1,
    }
}

fn validate(g: &Graph, problem: Problem, opts: &SolveOptions) -> Result<()> {
    check_order(g, opts)?;
    match problem {
        Problem::Offensive { r } | Problem::GlobalOffensive { r } => valid_r_range(g).check(r),
        Problem::KDominating { k: 0 } => {
            Err(Error::Precondition("k-domination needs k >= 1".into()))
        }
        _ => Ok(()),
    }
}

/// Exhaustive minimization with an optional cardinality cap: returns `None`
/// when no feasible set of size `<= max_size` exists.
pub fn minimize_bounded(
    g: &Graph,
    problem: Problem,
    max_size: Option<usize>,
    opts: &SolveOptions,
) -> Result<Option<SolveResult>> {
    validate(g, problem, opts)?;
    let start = Instant::now();
    let engine = Engine::new(g, problem, opts.deadline);
    let mut st = Stats::default();
    let top = max_size.unwrap_or(g.n()).min(g.n());
    for k in floor_size(g, problem)..=top {
        if let Some(mask) = engine.search_size(k, opts.parallel, &mut st)? {
            return Ok(Some(SolveResult {
                parameter: problem.parameter(),
                optimum: k,
                witness: VertexSet::from_mask(g.n(), mask),
                nodes_explored: st.nodes,
                pruned: st.pruned,
                elapsed: start.elapsed(),
            }));
        }
    }
    Ok(None)
}

pub fn minimize(g: &Graph, problem: Problem, opts: &SolveOptions) -> Result<SolveResult> {
    minimize_bounded(g, problem, None, opts)?
        .ok_or_else(|| Error::OracleIntegrity(format!("{problem:?}: the full vertex set was rejected")))
}

/// `a_r^o(G)`.
pub fn min_offensive_alliance(g: &Graph, r: i64, opts: &SolveOptions) -> Result<SolveResult> {
    minimize(g, Problem::Offensive { r }, opts)
}

/// `γ_r^o(G)`.
pub fn min_global_offensive_alliance(g: &Graph, r: i64, opts: &SolveOptions) -> Result<SolveResult> {
    minimize(g, Problem::GlobalOffensive { r }, opts)
}

/// `γ(G)`.
pub fn min_dominating(g: &Graph, opts: &SolveOptions) -> Result<SolveResult> {
    minimize(g, Problem::Dominating, opts)
}

/// `γ_k(G)`. For `k > δ₁` only the full vertex set qualifies and is returned.
pub fn min_k_dominating(g: &Graph, k: usize, opts: &SolveOptions) -> Result<SolveResult> {
    validate(g, Problem::KDominating { k }, opts)?;
    if k > g.max_degree() {
        return Ok(SolveResult {
            parameter: Some(k as i64),
            optimum: g.n(),
            witness: VertexSet::full(g.n()),
            nodes_explored: 0,
            pruned: 0,
            elapsed: Duration::ZERO,
        });
    }
    minimize(g, Problem::KDominating { k }, opts)
}

/// `α(G)` with the lexicographically smallest maximum independent set.
pub fn independence_number(g: &Graph, opts: &SolveOptions) -> Result<SolveResult> {
    check_order(g, opts)?;
    let start = Instant::now();
    let n = g.n();
    let adj = g.adjacency_masks().expect("order checked");
    // each edge of a maximal matching excludes one vertex
    let mut matched = 0u64;
    let mut matching = 0;
    for (u, v) in g.edges() {
        if matched & (1 << u | 1 << v) == 0 {
            matched |= 1 << u | 1 << v;
            matching += 1;
        }
    }
    let mut st = Stats::default();
    for k in (0..=n - matching).rev() {
        if let Some(mask) = independent_dfs(&adj, 0, low_bits(n), k, &mut st, opts.deadline)? {
            return Ok(SolveResult {
                parameter: None,
                optimum: k,
                witness: VertexSet::from_mask(n, mask),
                nodes_explored: st.nodes,
                pruned: st.pruned,
                elapsed: start.elapsed(),
            });
        }
    }
    unreachable!("the empty set is independent")
}

fn independent_dfs(
    adj: &[u64],
    chosen: u64,
    cand: u64,
    slots: usize,
    st: &mut Stats,
    deadline: Option<Instant>,
) -> Result<Option<u64>> {
    st.nodes += 1;
    if st.nodes.is_multiple_of(DEADLINE_POLL) && deadline.is_some_and(|d| Instant::now() > d) {
        return Err(Error::Timeout);
    }
    if slots == 0 {
        return Ok(Some(chosen));
    }
    if (cand.count_ones() as usize) < slots {
        st.pruned += 1;
        return Ok(None);
    }
    let mut rest = cand;
    while rest != 0 {
        let j = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if let Some(found) = independent_dfs(adj, chosen | 1 << j, rest & !adj[j], slots - 1, st, deadline)? {
            return Ok(Some(found));
        }
        if (rest.count_ones() as usize) < slots {
            break;
        }
    }
    Ok(None)
}

/// Minimum vertex cover, cross-checked against `n − α(G)`.
pub fn min_vertex_cover(g: &Graph, opts: &SolveOptions) -> Result<SolveResult> {
    let cover = minimize(g, Problem::VertexCover, opts)?;
    let alpha = independence_number(g, opts)?;
    if cover.optimum + alpha.optimum != g.n() {
        return Err(Error::OracleIntegrity(format!(
            "vertex cover {} + independence number {} != n = {}",
            cover.optimum,
            alpha.optimum,
            g.n()
        )));
    }
    Ok(cover)
}
