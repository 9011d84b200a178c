//! Gadget constructions that carry minimum offensive and global offensive
//! alliance questions from one graph to another, plus small-instance
//! verifiers for their claimed size correspondences.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::alliance::{
    is_dominating, is_global_offensive_r_alliance, is_offensive_r_alliance, is_vertex_cover, AllianceReport,
};
use crate::error::{Error, Result};
use crate::graph::{io, Graph, VertexSet};
use crate::solve::{
    min_dominating, min_offensive_alliance, min_vertex_cover, minimize_bounded, Problem, SolveOptions,
};

/// Default cap on gadget order.
pub const DEFAULT_BUDGET: usize = 64;
/// Largest order for which the regular-graph verifier checks every subset.
pub const SUBSET_CHECK_LIMIT: usize = 20;

/// Where a gadget vertex came from. Layers, clique indices and A-vertex
/// indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    Original(usize),
    Layer { v: usize, layer: u8 },
    Clique(usize),
    AVertex { v: usize, i: usize },
    BVertex { v: usize, subset: Vec<usize> },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Original(v) => write!(f, "original({v})"),
            Provenance::Layer { v, layer } => write!(f, "layer({v},{layer})"),
            Provenance::Clique(j) => write!(f, "clique({j})"),
            Provenance::AVertex { v, i } => write!(f, "avertex({v},{i})"),
            Provenance::BVertex { v, subset } => {
                let items: Vec<String> = subset.iter().map(|i| i.to_string()).collect();
                write!(f, "bvertex({v},{{{}}})", items.join(","))
            }
        }
    }
}

impl Serialize for Provenance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GadgetKind {
    /// Offensive r-alliance to offensive (r−1)-alliance.
    Downshift,
    /// Dominating set to global offensive r-alliance, r ≤ 1.
    GoaLow,
    /// Dominating set to global offensive r-alliance, r ≥ 2.
    GoaHigh,
}

impl std::str::FromStr for GadgetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "downshift" => Ok(GadgetKind::Downshift),
            "goa-low" => Ok(GadgetKind::GoaLow),
            "goa-high" => Ok(GadgetKind::GoaHigh),
            other => Err(Error::Precondition(format!("unknown gadget kind `{other}`"))),
        }
    }
}

/// `k ↦ scale·k + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SizeMap {
    pub scale: i64,
    pub offset: i64,
}

impl SizeMap {
    pub fn apply(&self, k: usize) -> i64 {
        self.scale * k as i64 + self.offset
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionArtifact {
    pub kind: GadgetKind,
    /// Parameter of the source problem.
    pub r: i64,
    /// Parameter of the target problem on `gprime`.
    pub target_r: i64,
    #[serde(skip)]
    pub source: Graph,
    #[serde(skip)]
    pub gprime: Graph,
    pub labels: Vec<Provenance>,
    pub size_map: SizeMap,
    pub preconditions_met: bool,
}

impl ReductionArtifact {
    /// Problem solved on the source graph.
    pub fn source_problem(&self) -> Problem {
        match self.kind {
            GadgetKind::Downshift => Problem::Offensive { r: self.r },
            GadgetKind::GoaLow | GadgetKind::GoaHigh => Problem::Dominating,
        }
    }

    /// Problem solved on the gadget.
    pub fn target_problem(&self) -> Problem {
        match self.kind {
            GadgetKind::Downshift => Problem::Offensive { r: self.target_r },
            GadgetKind::GoaLow | GadgetKind::GoaHigh => Problem::GlobalOffensive { r: self.target_r },
        }
    }

    pub fn vertex_of(&self, tag: &Provenance) -> Option<usize> {
        self.labels.iter().position(|t| t == tag)
    }

    /// Label map `{vertex: tag}` as JSON.
    pub fn labels_json(&self) -> serde_json::Value {
        let map: BTreeMap<String, String> =
            self.labels.iter().enumerate().map(|(v, t)| (v.to_string(), t.to_string())).collect();
        serde_json::json!({
            "kind": self.kind,
            "r": self.r,
            "target_r": self.target_r,
            "size_map": self.size_map,
            "preconditions_met": self.preconditions_met,
            "labels": map,
        })
    }

    /// Edge list of `gprime` in the canonical text format.
    pub fn edge_list(&self) -> String {
        io::to_edge_list(&self.gprime)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ReductionOptions {
    pub budget: usize,
    /// When false, a gadget whose stated preconditions fail is still built
    /// (if structurally possible) and flagged `preconditions_met = false`.
    pub enforce_preconditions: bool,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions { budget: DEFAULT_BUDGET, enforce_preconditions: true }
    }
}

fn check_budget(size: usize, opts: &ReductionOptions) -> Result<()> {
    if size > opts.budget {
        return Err(Error::BudgetExceeded { size, budget: opts.budget });
    }
    Ok(())
}

fn precondition(met: bool, opts: &ReductionOptions, what: impl FnOnce() -> String) -> Result<bool> {
    if !met && opts.enforce_preconditions {
        return Err(Error::Precondition(what()));
    }
    Ok(met)
}

/// Three layers `V×{1,2,3}` plus a clique on `n−r+2` vertices. Layers 1 and
/// 2 copy `G`; `(u,3)` is joined to `(u,1)`, `(u,2)` and every clique
/// vertex. Vertex ids are layer-major, clique last.
pub fn oa_downshift_gadget(g: &Graph, r: i64, opts: &ReductionOptions) -> Result<ReductionArtifact> {
    let n = g.n();
    let clique = n as i64 - r + 2;
    if clique < 1 {
        return Err(Error::Precondition(format!("clique size n - r + 2 = {clique} must be at least 1")));
    }
    let clique = clique as usize;
    let size = 3 * n + clique;
    check_budget(size, opts)?;

    let layer = |v: usize, l: usize| (l - 1) * n + v;
    let c = |j: usize| 3 * n + j;
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        edges.push((layer(u, 1), layer(v, 1)));
        edges.push((layer(u, 2), layer(v, 2)));
    }
    for u in 0..n {
        edges.push((layer(u, 1), layer(u, 3)));
        edges.push((layer(u, 2), layer(u, 3)));
        for j in 0..clique {
            edges.push((layer(u, 3), c(j)));
        }
    }
    for i in 0..clique {
        for j in i + 1..clique {
            edges.push((c(i), c(j)));
        }
    }
    let mut labels = Vec::with_capacity(size);
    for l in 1..=3u8 {
        labels.extend((0..n).map(|v| Provenance::Layer { v, layer: l }));
    }
    labels.extend((1..=clique).map(Provenance::Clique));

    Ok(ReductionArtifact {
        kind: GadgetKind::Downshift,
        r,
        target_r: r - 1,
        source: g.clone(),
        gprime: Graph::from_edge_list(size, &edges)?,
        labels,
        size_map: SizeMap { scale: 2, offset: 0 },
        preconditions_met: true,
    })
}

fn goa_size_map(g: &Graph, r: i64) -> SizeMap {
    SizeMap { scale: 1, offset: (r - 1) * g.n() as i64 + 2 * g.m() as i64 }
}

fn a_count(g: &Graph, v: usize, r: i64) -> Result<usize> {
    let c = g.degree(v) as i64 + r - 1;
    if c < 0 {
        return Err(Error::Precondition(format!("vertex {v} would get {c} attachments")));
    }
    Ok(c as usize)
}

/// For `r ≤ 1`: each vertex `v` gets `δ(v)+r−1` pendant paths `v–a–b`.
/// Ids: originals, then every A-vertex, then every B-vertex, each group
/// ordered by owner and chain index.
pub fn goa_gadget_low(g: &Graph, r: i64, opts: &ReductionOptions) -> Result<ReductionArtifact> {
    if r > 1 {
        return Err(Error::Precondition(format!("low-r gadget needs r <= 1, got {r}")));
    }
    let need = r.unsigned_abs() as usize + 1;
    let met = precondition(g.min_degree() >= need, opts, || {
        format!("minimum degree {} < |r| + 1 = {need}", g.min_degree())
    })?;
    let n = g.n();
    let counts = (0..n).map(|v| a_count(g, v, r)).collect::<Result<Vec<_>>>()?;
    let total_a: usize = counts.iter().sum();
    let size = n + 2 * total_a;
    check_budget(size, opts)?;

    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let mut labels: Vec<Provenance> = (0..n).map(Provenance::Original).collect();
    let mut b_labels = Vec::with_capacity(total_a);
    let mut next_a = n;
    for (v, &c) in counts.iter().enumerate() {
        for i in 1..=c {
            let a = next_a;
            let b = a + total_a;
            edges.push((v, a));
            edges.push((a, b));
            labels.push(Provenance::AVertex { v, i });
            b_labels.push(Provenance::BVertex { v, subset: vec![i] });
            next_a += 1;
        }
    }
    labels.extend(b_labels);

    Ok(ReductionArtifact {
        kind: GadgetKind::GoaLow,
        r,
        target_r: r,
        source: g.clone(),
        gprime: Graph::from_edge_list(size, &edges)?,
        labels,
        size_map: goa_size_map(g, r),
        preconditions_met: met,
    })
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Lexicographic `k`-subsets of `1..=n`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i + 1) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// For `r ≥ 2`: each vertex `v` gets an independent set `A(v)` of
/// `δ(v)+r−1` vertices, and one B-vertex per `r`-subset of `A(v)`, adjacent
/// to exactly the members of that subset. Ids: originals, all A-vertices,
/// then B-vertices by owner and lexicographic subset.
pub fn goa_gadget_high(g: &Graph, r: i64, opts: &ReductionOptions) -> Result<ReductionArtifact> {
    if r < 2 {
        return Err(Error::Precondition(format!("high-r gadget needs r >= 2, got {r}")));
    }
    let met = precondition(g.min_degree() >= 1, opts, || "graph has an isolated vertex".into())?;
    let n = g.n();
    let k = r as usize;
    let counts = (0..n).map(|v| a_count(g, v, r)).collect::<Result<Vec<_>>>()?;
    let total_a: usize = counts.iter().sum();
    let total_b = counts.iter().fold(0usize, |acc, &c| acc.saturating_add(binomial(c, k)));
    let size = n.saturating_add(total_a).saturating_add(total_b);
    check_budget(size, opts)?;

    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let mut labels: Vec<Provenance> = (0..n).map(Provenance::Original).collect();
    let mut first_a = Vec::with_capacity(n);
    for (v, &c) in counts.iter().enumerate() {
        first_a.push(labels.len());
        for i in 1..=c {
            edges.push((v, labels.len()));
            labels.push(Provenance::AVertex { v, i });
        }
    }
    for (v, &c) in counts.iter().enumerate() {
        for subset in subsets(c, k) {
            let b = labels.len();
            for &i in &subset {
                edges.push((first_a[v] + i - 1, b));
            }
            labels.push(Provenance::BVertex { v, subset });
        }
    }

    Ok(ReductionArtifact {
        kind: GadgetKind::GoaHigh,
        r,
        target_r: r,
        source: g.clone(),
        gprime: Graph::from_edge_list(size, &edges)?,
        labels,
        size_map: goa_size_map(g, r),
        preconditions_met: met,
    })
}

pub fn build_gadget(g: &Graph, kind: GadgetKind, r: i64, opts: &ReductionOptions) -> Result<ReductionArtifact> {
    match kind {
        GadgetKind::Downshift => oa_downshift_gadget(g, r, opts),
        GadgetKind::GoaLow => goa_gadget_low(g, r, opts),
        GadgetKind::GoaHigh => goa_gadget_high(g, r, opts),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MappedCertificate {
    pub set: VertexSet,
    pub predicted_size: i64,
    pub report: AllianceReport,
}

/// Carries a source solution into the gadget: `S×{1,2}` for the downshift,
/// `D ∪ A` for the dominating-set gadgets. The image is checked with the
/// target predicate; a failing image is returned as `Error::Uncertified`.
pub fn map_certificate(artifact: &ReductionArtifact, source_solution: &VertexSet) -> Result<MappedCertificate> {
    let g = &artifact.source;
    g.check_set(source_solution)?;
    let mut set = VertexSet::empty(artifact.gprime.n());
    match artifact.kind {
        GadgetKind::Downshift => {
            let rep = is_offensive_r_alliance(g, source_solution, artifact.r)?;
            if !rep.holds {
                return Err(Error::InvalidCertificate(format!(
                    "not an offensive {}-alliance (failing at {:?})",
                    artifact.r, rep.failing
                )));
            }
            for v in source_solution.iter() {
                set.insert(v);
                set.insert(g.n() + v);
            }
        }
        GadgetKind::GoaLow | GadgetKind::GoaHigh => {
            if source_solution.is_empty() || !is_dominating(g, source_solution) {
                return Err(Error::InvalidCertificate("not a dominating set".into()));
            }
            for (v, tag) in artifact.labels.iter().enumerate() {
                match tag {
                    Provenance::Original(u) if source_solution.contains(*u) => set.insert(v),
                    Provenance::AVertex { .. } => set.insert(v),
                    _ => {}
                }
            }
        }
    }
    let report = match artifact.kind {
        GadgetKind::Downshift => is_offensive_r_alliance(&artifact.gprime, &set, artifact.target_r)?,
        _ => is_global_offensive_r_alliance(&artifact.gprime, &set, artifact.target_r)?,
    };
    if !report.holds {
        return Err(Error::Uncertified(Box::new(report)));
    }
    Ok(MappedCertificate { predicted_size: artifact.size_map.apply(source_solution.len()), set, report })
}

#[derive(Debug, Clone, Serialize)]
pub struct GadgetVerification {
    pub kind: GadgetKind,
    pub r: i64,
    pub source_optimum: usize,
    pub predicted: i64,
    /// `None` when nothing of size `<= predicted + 1` exists.
    pub target_optimum: Option<usize>,
    pub target_witness: Option<VertexSet>,
    pub gprime_order: usize,
    pub holds: bool,
}

/// Solves the source exactly, then searches the gadget only up to the
/// predicted optimum plus one. Exact whenever the search stops below that.
pub fn verify_gadget_equivalence(artifact: &ReductionArtifact, opts: &SolveOptions) -> Result<GadgetVerification> {
    let source = match artifact.kind {
        GadgetKind::Downshift => min_offensive_alliance(&artifact.source, artifact.r, opts)?,
        _ => min_dominating(&artifact.source, opts)?,
    };
    let predicted = artifact.size_map.apply(source.optimum);
    let cap = usize::try_from(predicted + 1).unwrap_or(0);
    let found = minimize_bounded(&artifact.gprime, artifact.target_problem(), Some(cap), opts)?;
    let target_optimum = found.as_ref().map(|s| s.optimum);
    Ok(GadgetVerification {
        kind: artifact.kind,
        r: artifact.r,
        source_optimum: source.optimum,
        predicted,
        holds: target_optimum.map(|t| t as i64) == Some(predicted),
        target_optimum,
        target_witness: found.map(|s| s.witness),
        gprime_order: artifact.gprime.n(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RegularVcVerification {
    pub r: i64,
    pub vertex_cover: usize,
    pub offensive: usize,
    pub optima_equal: bool,
    /// Number of nonempty subsets compared; 0 when the order is above
    /// `SUBSET_CHECK_LIMIT`.
    pub subsets_checked: u64,
    /// First subset on which the two predicates disagree.
    pub mismatch: Option<VertexSet>,
    pub holds: bool,
}

/// On a connected `r`-regular graph with `r ≥ 3`, or a connected cubic
/// graph with `r = 2`, offensive `r`-alliances and vertex covers coincide.
/// Compares the optima, and for small graphs every nonempty subset.
pub fn verify_regular_vc_equivalence(g: &Graph, r: i64, opts: &SolveOptions) -> Result<RegularVcVerification> {
    let d = g.regular_degree().ok_or_else(|| Error::Precondition("graph is not regular".into()))?;
    if !g.is_connected() {
        return Err(Error::Precondition("graph is not connected".into()));
    }
    let fits = (r >= 3 && d as i64 == r) || (r == 2 && d == 3);
    if !fits {
        return Err(Error::Precondition(format!(
            "needs an r-regular graph with r >= 3, or a cubic graph with r = 2; got {d}-regular with r = {r}"
        )));
    }
    let vertex_cover = min_vertex_cover(g, opts)?.optimum;
    let offensive = min_offensive_alliance(g, r, opts)?.optimum;

    let n = g.n();
    let mut subsets_checked = 0;
    let mut mismatch = None;
    if n <= SUBSET_CHECK_LIMIT {
        for mask in 1u64..(1u64 << n) {
            let s = VertexSet::from_mask(n, mask);
            subsets_checked += 1;
            if is_vertex_cover(g, &s) != is_offensive_r_alliance(g, &s, r)?.holds {
                mismatch = Some(s);
                break;
            }
        }
    }
    let optima_equal = vertex_cover == offensive;
    Ok(RegularVcVerification {
        r,
        vertex_cover,
        offensive,
        optima_equal,
        subsets_checked,
        holds: optima_equal && mismatch.is_none(),
        mismatch,
    })
}
