//! Set predicates: offensive and global offensive r-alliances, domination,
//! k-domination, vertex covers and independent sets.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Closed integer interval of admissible `r` values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RRange {
    pub lo: i64,
    pub hi: i64,
}

impl RRange {
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, r: i64) -> bool {
        self.lo <= r && r <= self.hi
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    pub(crate) fn check(&self, r: i64) -> Result<()> {
        if self.contains(r) {
            Ok(())
        } else {
            Err(Error::ROutOfRange { r, lo: self.lo, hi: self.hi })
        }
    }
}

/// `[2 − δ₁, δ₁]`, with `δ₁` the maximum degree. Empty for edgeless graphs.
pub fn valid_r_range(g: &Graph) -> RRange {
    let d1 = g.max_degree() as i64;
    RRange { lo: 2 - d1, hi: d1 }
}

/// `[2 − δ, δ]` with `δ` the minimum degree: the range the degree bounds
/// and the degree-based constructions are stated for.
pub fn min_degree_r_range(g: &Graph) -> RRange {
    let d = g.min_degree() as i64;
    RRange { lo: 2 - d, hi: d }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Margin {
    pub vertex: usize,
    /// `δ_S(v) − δ_S̄(v) − r`; non-negative iff `v` satisfies the condition.
    pub margin: i64,
}

/// Per-boundary-vertex evidence for the alliance condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AllianceReport {
    pub holds: bool,
    pub r: i64,
    #[serde(rename = "global")]
    pub is_global: bool,
    /// Margins for every vertex of `∂(S)`, ascending by vertex.
    pub margins: Vec<Margin>,
    /// Vertices of `S̄` violating the checked condition.
    pub failing: Vec<usize>,
}

impl AllianceReport {
    pub fn violations(&self) -> impl Iterator<Item = &Margin> {
        self.margins.iter().filter(|m| m.margin < 0)
    }
}

fn check_alliance_input(g: &Graph, s: &VertexSet, r: i64) -> Result<()> {
    g.check_set(s)?;
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    valid_r_range(g).check(r)
}

/// Evaluates `δ_S(v) ≥ δ_S̄(v) + r` on `∂(S)`. The equivalent form
/// `δ(v) ≥ 2·δ_S̄(v) + r` is evaluated alongside and must agree.
pub fn is_offensive_r_alliance(g: &Graph, s: &VertexSet, r: i64) -> Result<AllianceReport> {
    check_alliance_input(g, s, r)?;
    let outside = s.complement();
    let mut margins = Vec::new();
    let mut failing = Vec::new();
    let mut dominated = 0;
    for v in outside.iter() {
        let in_s = g.degree_in(v, s) as i64;
        if in_s == 0 {
            continue;
        }
        dominated += 1;
        let out_s = g.degree(v) as i64 - in_s;
        let margin = in_s - out_s - r;
        let ok_first = in_s >= out_s + r;
        let ok_second = g.degree(v) as i64 >= 2 * out_s + r;
        assert_eq!(ok_first, ok_second, "alliance condition forms disagree at vertex {v}");
        if !ok_first {
            failing.push(v);
        }
        margins.push(Margin { vertex: v, margin });
    }
    Ok(AllianceReport {
        holds: failing.is_empty(),
        r,
        is_global: dominated == outside.len(),
        margins,
        failing,
    })
}

/// Offensive r-alliance that is also dominating (`∂(S) = S̄`). Undominated
/// vertices are listed in `failing`.
pub fn is_global_offensive_r_alliance(g: &Graph, s: &VertexSet, r: i64) -> Result<AllianceReport> {
    let mut report = is_offensive_r_alliance(g, s, r)?;
    if !report.is_global {
        for v in s.complement().iter() {
            if g.degree_in(v, s) == 0 {
                report.failing.push(v);
            }
        }
        report.failing.sort_unstable();
    }
    report.holds = report.failing.is_empty();
    Ok(report)
}

pub fn is_dominating(g: &Graph, s: &VertexSet) -> bool {
    is_k_dominating(g, s, 1)
}

/// Every vertex outside `s` has at least `k` neighbors in `s`.
pub fn is_k_dominating(g: &Graph, s: &VertexSet, k: usize) -> bool {
    s.complement().iter().all(|v| g.degree_in(v, s) >= k)
}

pub fn is_vertex_cover(g: &Graph, s: &VertexSet) -> bool {
    g.edges().all(|(u, v)| s.contains(u) || s.contains(v))
}

pub fn is_independent(g: &Graph, s: &VertexSet) -> bool {
    s.iter().all(|v| g.degree_in(v, s) == 0)
}
