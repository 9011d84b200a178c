//! Corpus runs: every instance of a family list is solved exactly for each
//! admissible r, all bounds and constructions are evaluated, and every
//! inequality between them is checked.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::alliance::{min_degree_r_range, valid_r_range};
use crate::bounds::{self, BoundsOptions};
use crate::error::{Error, Result};
use crate::graph::{generate, Family, Graph};
use crate::solve::{self, SolveOptions};
use crate::witness;

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(60);

/// A family with an inclusive range per parameter, e.g. `cycle:3-10` or
/// `complete_bipartite:1-4,1-4`. `random_regular:COUNT,N_RANGE,D_RANGE`
/// draws `COUNT` connected graphs from the corpus seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    pub name: String,
    pub ranges: Vec<(u64, u64)>,
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownFamily(s.to_string());
        let (name, params) = s.split_once(':').unwrap_or((s, ""));
        let mut ranges = Vec::new();
        if !params.is_empty() {
            for p in params.split(',') {
                let (lo, hi) = p.trim().split_once('-').unwrap_or((p.trim(), p.trim()));
                let lo: u64 = lo.parse().map_err(|_| bad())?;
                let hi: u64 = hi.parse().map_err(|_| bad())?;
                if lo > hi {
                    return Err(bad());
                }
                ranges.push((lo, hi));
            }
        }
        if name == "random_regular" && ranges.len() != 3 {
            return Err(Error::InfeasibleParameters("random_regular takes COUNT,N_RANGE,D_RANGE".into()));
        }
        Ok(FamilySpec { name: name.to_string(), ranges })
    }
}

impl std::fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name)?;
        for (i, (lo, hi)) in self.ranges.iter().enumerate() {
            f.write_str(if i == 0 { ":" } else { "," })?;
            if lo == hi {
                write!(f, "{lo}")?;
            } else {
                write!(f, "{lo}-{hi}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RPolicy {
    /// Every r in `[2 − δ₁, δ₁]`.
    AllValid,
    /// The listed values that fall inside each graph's valid range.
    List(Vec<i64>),
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusSpec {
    pub families: Vec<FamilySpec>,
    pub r_policy: RPolicy,
    /// Largest order solved exactly; larger instances are skipped.
    pub solver_budget: usize,
    pub seed: u64,
    #[serde(skip)]
    pub timeout: Duration,
    #[serde(skip)]
    pub workers: usize,
}

impl CorpusSpec {
    pub fn new(families: &[&str]) -> Result<Self> {
        Ok(CorpusSpec {
            families: families.iter().map(|f| f.parse()).collect::<Result<_>>()?,
            r_policy: RPolicy::AllValid,
            solver_budget: 12,
            seed: 0,
            timeout: DEFAULT_TIMEOUT,
            workers: 1,
        })
    }

    /// Complete graphs, cycles, paths, complete bipartite graphs, the
    /// Petersen graph, prisms, hypercubes and 30 connected random regular
    /// graphs, all of order at most 12.
    pub fn standard() -> Self {
        Self::new(&[
            "complete:2-8",
            "cycle:3-10",
            "path:2-8",
            "complete_bipartite:1-4,1-4",
            "petersen",
            "prism:3-6",
            "hypercube:2-3",
            "random_regular:30,6-12,3-4",
        ])
        .expect("standard corpus parses")
    }

    pub fn instances(&self) -> Result<Vec<Family>> {
        let mut out: Vec<Family> = Vec::new();
        for spec in &self.families {
            if spec.name == "random_regular" {
                for fam in self.random_regular(spec)? {
                    if !out.contains(&fam) {
                        out.push(fam);
                    }
                }
                continue;
            }
            let mut combos: Vec<Vec<u64>> = vec![Vec::new()];
            for &(lo, hi) in &spec.ranges {
                combos = combos.into_iter().flat_map(|c| (lo..=hi).map(move |x| [c.clone(), vec![x]].concat())).collect();
            }
            for c in combos {
                // K_{a,b} and K_{b,a} are the same graph
                if spec.name == "complete_bipartite" && c.len() == 2 && c[0] > c[1] {
                    continue;
                }
                let text = if c.is_empty() {
                    spec.name.clone()
                } else {
                    let p: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                    format!("{}:{}", spec.name, p.join(","))
                };
                let fam: Family = text.parse()?;
                if !out.contains(&fam) {
                    out.push(fam);
                }
            }
        }
        Ok(out)
    }

    fn random_regular(&self, spec: &FamilySpec) -> Result<Vec<Family>> {
        let count = spec.ranges[0].0 as usize;
        let (nlo, nhi) = spec.ranges[1];
        let (dlo, dhi) = spec.ranges[2];
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::with_capacity(count);
        let mut draws = 0;
        while out.len() < count {
            draws += 1;
            if draws > 1000 * count.max(1) {
                return Err(Error::InfeasibleParameters(format!("cannot draw {count} graphs from `{spec}`")));
            }
            let n = rng.gen_range(nlo..=nhi) as usize;
            let d = rng.gen_range(dlo..=dhi) as usize;
            let seed: u64 = rng.gen();
            if (n * d) % 2 == 1 || d >= n {
                continue;
            }
            let fam = Family::RandomRegular { n, d, seed };
            if generate(&fam).map(|g| g.is_connected()).unwrap_or(false) {
                out.push(fam);
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    Skipped,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub r: i64,
    pub status: RowStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// `γ_r^o`
    pub goa: Option<usize>,
    /// `a_r^o`
    pub oa: Option<usize>,
    pub gamma: Option<usize>,
    pub gamma_r: Option<usize>,
    pub alpha: Option<usize>,
    pub vertex_cover: Option<usize>,
    pub bounds: BTreeMap<String, Option<i64>>,
    pub kn_formula: Option<i64>,
    pub witness_degree: Option<usize>,
    pub witness_cut: Option<usize>,
    pub witness_independent: Option<usize>,
    pub printed_upper_violated: Option<bool>,
    pub tight: Vec<String>,
    pub violations: Vec<String>,
}

impl BenchRow {
    fn blank(id: &str, g: &Graph, r: i64) -> Self {
        BenchRow {
            id: id.to_string(),
            n: g.n(),
            m: g.m(),
            min_degree: g.min_degree(),
            max_degree: g.max_degree(),
            r,
            status: RowStatus::Ok,
            note: None,
            goa: None,
            oa: None,
            gamma: None,
            gamma_r: None,
            alpha: None,
            vertex_cover: None,
            bounds: BTreeMap::new(),
            kn_formula: None,
            witness_degree: None,
            witness_cut: None,
            witness_independent: None,
            printed_upper_violated: None,
            tight: Vec::new(),
            violations: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub rows: usize,
    pub skipped: usize,
    pub errors: usize,
    pub violations: usize,
    pub printed_upper_falsified: usize,
    pub tight: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub schema: u32,
    pub spec: CorpusSpec,
    pub rows: Vec<BenchRow>,
    /// Cross-r checks per instance (monotonicity, parity collapse, cubic
    /// vertex covers).
    pub graph_violations: Vec<String>,
    pub summary: Summary,
}

struct GraphFacts {
    gamma: usize,
    alpha: usize,
    vertex_cover: usize,
}

fn r_values(g: &Graph, policy: &RPolicy) -> Vec<i64> {
    let range = valid_r_range(g);
    match policy {
        RPolicy::AllValid => range.iter().collect(),
        RPolicy::List(rs) => rs.iter().copied().filter(|&r| range.contains(r)).collect(),
    }
}

fn run_instance(spec: &CorpusSpec, fam: &Family) -> (Vec<BenchRow>, Vec<String>) {
    let id = fam.to_string();
    let g = match generate(fam) {
        Ok(g) => g,
        Err(e) => return (Vec::new(), vec![format!("{id}: {e}")]),
    };
    let rs = r_values(&g, &spec.r_policy);
    let skip_all = |note: String, status: RowStatus| -> Vec<BenchRow> {
        rs.iter()
            .map(|&r| {
                let mut row = BenchRow::blank(&id, &g, r);
                row.status = status;
                row.note = Some(note.clone());
                row
            })
            .collect()
    };
    if g.n() > spec.solver_budget {
        return (skip_all(format!("n = {} exceeds solver budget {}", g.n(), spec.solver_budget), RowStatus::Skipped), Vec::new());
    }
    let opts = SolveOptions { deadline: Some(Instant::now() + spec.timeout), ..SolveOptions::default() };
    let result = (|| -> Result<Vec<BenchRow>> {
        let facts = GraphFacts {
            gamma: solve::min_dominating(&g, &opts)?.optimum,
            alpha: solve::independence_number(&g, &opts)?.optimum,
            vertex_cover: solve::min_vertex_cover(&g, &opts)?.optimum,
        };
        rs.iter().map(|&r| evaluate(&id, fam, &g, r, &facts, &opts)).collect()
    })();
    match result {
        Ok(rows) => {
            let checks = graph_checks(&id, &g, &rows);
            (rows, checks)
        }
        Err(Error::Timeout) => (skip_all("timeout".into(), RowStatus::Skipped), Vec::new()),
        Err(e) => (skip_all(e.to_string(), RowStatus::Error), Vec::new()),
    }
}

fn evaluate(id: &str, fam: &Family, g: &Graph, r: i64, facts: &GraphFacts, opts: &SolveOptions) -> Result<BenchRow> {
    let mut row = BenchRow::blank(id, g, r);
    let report = bounds::bounds_report(g, r, &BoundsOptions { solve: opts.clone(), skip_exact: false })?;
    let goa = solve::min_global_offensive_alliance(g, r, opts)?;
    let oa = solve::min_offensive_alliance(g, r, opts)?.optimum;
    let n = g.n() as i64;
    row.goa = Some(goa.optimum);
    row.oa = Some(oa);
    row.gamma = Some(facts.gamma);
    row.alpha = Some(facts.alpha);
    row.vertex_cover = Some(facts.vertex_cover);
    let gamma_r = if r >= 1 { Some(solve::min_k_dominating(g, r as usize, opts)?) } else { None };
    row.gamma_r = gamma_r.as_ref().map(|s| s.optimum);

    let v = &mut row.violations;
    v.extend(report.violations());
    if report.exact != Some(goa.optimum as i64) {
        v.push(format!("bounds report exact {:?} != solver {}", report.exact, goa.optimum));
    }
    if oa > goa.optimum {
        v.push(format!("a_r^o = {oa} > γ_r^o = {}", goa.optimum));
    }
    if goa.optimum < facts.gamma {
        v.push(format!("γ_r^o = {} < γ = {}", goa.optimum, facts.gamma));
    }
    if let Some(lower) = report.value("degree_lower") {
        if (oa as i64) < lower {
            v.push(format!("a_r^o = {oa} < degree_lower = {lower}"));
        }
    }
    row.printed_upper_violated = report.printed_upper_falsified();

    if let Family::Complete(k) = *fam {
        if let Ok(formula) = bounds::kn_formula(k, r) {
            row.kn_formula = Some(formula);
            if oa as i64 != formula || goa.optimum as i64 != formula {
                v.push(format!("K_n closed form {formula} vs a_r^o = {oa}, γ_r^o = {}", goa.optimum));
            }
            let odd = (k as i64 - 1 + r).rem_euclid(2) == 1;
            if odd && report.entry("degree_upper_printed").is_some_and(|e| e.applicable) && row.printed_upper_violated != Some(true) {
                v.push("printed ceiling form not violated although δ + r is odd".into());
            }
        }
    }

    if min_degree_r_range(g).contains(r) {
        match witness::thm31_witness(g, r) {
            Ok(c) => {
                row.witness_degree = Some(c.size());
                if Some(c.size() as i64) != report.value("degree_upper") {
                    v.push(format!("degree construction size {} != {:?}", c.size(), report.value("degree_upper")));
                }
            }
            Err(e) => v.push(format!("degree construction: {e}")),
        }
    }
    if let Some(h) = &gamma_r {
        match witness::thm32_witness(g, r, &h.witness) {
            Ok(c) => {
                row.witness_cut = Some(c.size());
                let bound = bounds::floor_half(h.optimum as i64 + n);
                if c.size() as i64 > bound || c.size() < goa.optimum {
                    v.push(format!("cut construction size {} outside [{}, {bound}]", c.size(), goa.optimum));
                }
            }
            Err(e) => v.push(format!("cut construction: {e}")),
        }
    }
    if g.min_degree() >= 1 && r <= g.min_degree() as i64 {
        match witness::independent_complement_witness(g, r) {
            Ok(c) => {
                row.witness_independent = Some(c.size());
                if c.size() < g.n() - facts.alpha || c.size() < goa.optimum {
                    v.push(format!("independent complement size {} below n − α or γ_r^o", c.size()));
                }
            }
            Err(e) => v.push(format!("independent complement: {e}")),
        }
    }

    for e in &report.entries {
        row.bounds.insert(e.name.to_string(), e.value);
        if e.tight == Some(true) && !e.falsified_as_printed {
            row.tight.push(e.name.to_string());
        }
    }
    Ok(row)
}

/// Checks across consecutive r for one graph.
fn graph_checks(id: &str, g: &Graph, rows: &[BenchRow]) -> Vec<String> {
    let mut out = Vec::new();
    let by_r: BTreeMap<i64, &BenchRow> = rows.iter().filter(|r| r.status == RowStatus::Ok).map(|r| (r.r, r)).collect();
    for (&r, row) in &by_r {
        if let Some(next) = by_r.get(&(r + 1)) {
            if next.oa < row.oa {
                out.push(format!("{id}: a^o drops from r = {r} to r = {}", r + 1));
            }
            if next.goa < row.goa {
                out.push(format!("{id}: γ^o drops from r = {r} to r = {}", r + 1));
            }
            let spec_r = (row.bounds.get("spectral_lower"), next.bounds.get("spectral_lower"));
            if let (Some(Some(a)), Some(Some(b))) = spec_r {
                if b < a {
                    out.push(format!("{id}: spectral lower bound drops from r = {r} to r = {}", r + 1));
                }
            }
        }
    }
    let degrees = g.degree_sequence();
    let all_even = degrees.as_slice().iter().all(|d| d % 2 == 0);
    let all_odd = degrees.as_slice().iter().all(|d| d % 2 == 1);
    if all_even || all_odd {
        // r and r + 1 give the same per-vertex thresholds when δ(v) + r is odd
        let parity = if all_even { 1 } else { 0 };
        for (&r, row) in &by_r {
            if r.rem_euclid(2) != parity {
                continue;
            }
            if let Some(next) = by_r.get(&(r + 1)) {
                if next.oa != row.oa || next.goa != row.goa {
                    out.push(format!("{id}: parity collapse fails between r = {r} and r = {}", r + 1));
                }
            }
        }
    }
    if g.regular_degree() == Some(3) && g.is_connected() {
        for r in [2, 3] {
            if let Some(row) = by_r.get(&r) {
                if row.oa != row.vertex_cover {
                    out.push(format!("{id}: cubic graph has a_{r}^o = {:?} but vertex cover {:?}", row.oa, row.vertex_cover));
                }
            }
        }
    }
    out
}

pub fn run_corpus(spec: &CorpusSpec) -> Result<BenchReport> {
    let instances = spec.instances()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("worker pool: {e}")))?;
    let results: Vec<(Vec<BenchRow>, Vec<String>)> =
        pool.install(|| instances.par_iter().map(|fam| run_instance(spec, fam)).collect());

    let mut rows = Vec::new();
    let mut graph_violations = Vec::new();
    for (r, c) in results {
        rows.extend(r);
        graph_violations.extend(c);
    }
    let mut summary = Summary { instances: instances.len(), rows: rows.len(), ..Summary::default() };
    for row in &rows {
        match row.status {
            RowStatus::Skipped => summary.skipped += 1,
            RowStatus::Error => summary.errors += 1,
            RowStatus::Ok => {}
        }
        summary.violations += row.violations.len();
        if row.printed_upper_violated == Some(true) {
            summary.printed_upper_falsified += 1;
        }
        for t in &row.tight {
            *summary.tight.entry(t.clone()).or_default() += 1;
        }
    }
    summary.violations += graph_violations.len();
    Ok(BenchReport { schema: 1, spec: spec.clone(), rows, graph_violations, summary })
}

const COLUMNS: [&str; 16] = [
    "id", "n", "m", "δ", "r", "status", "a_r^o", "γ_r^o", "γ", "γ_r", "α", "vc", "deg_lo", "deg_up", "spec_lo", "violations",
];

fn cells(row: &BenchRow) -> Vec<String> {
    let o = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
    let b = |name: &str| row.bounds.get(name).copied().flatten().map_or("-".to_string(), |v| v.to_string());
    vec![
        row.id.clone(),
        row.n.to_string(),
        row.m.to_string(),
        row.min_degree.to_string(),
        row.r.to_string(),
        format!("{:?}", row.status).to_lowercase(),
        o(row.oa),
        o(row.goa),
        o(row.gamma),
        o(row.gamma_r),
        o(row.alpha),
        o(row.vertex_cover),
        b("degree_lower"),
        b("degree_upper"),
        b("spectral_lower"),
        row.violations.len().to_string(),
    ]
}

impl BenchReport {
    pub fn has_violations(&self) -> bool {
        self.summary.violations > 0 || self.summary.errors > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut grid = vec![COLUMNS.iter().map(|c| c.to_string()).collect::<Vec<_>>()];
        grid.extend(self.rows.iter().map(cells));
        let widths: Vec<usize> =
            (0..COLUMNS.len()).map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for r in &grid {
            let line: Vec<String> = r.iter().zip(&widths).map(|(cell, w)| format!("{cell:<w$}")).collect();
            writeln!(out, "{}", line.join("  ").trim_end()).unwrap();
        }
        for v in self.rows.iter().flat_map(|r| r.violations.iter().map(move |v| format!("{} r={}: {v}", r.id, r.r))) {
            writeln!(out, "violation: {v}").unwrap();
        }
        for v in &self.graph_violations {
            writeln!(out, "violation: {v}").unwrap();
        }
        let s = &self.summary;
        writeln!(
            out,
            "{} instances, {} rows, {} skipped, {} errors, {} violations, printed ceiling form falsified on {} rows",
            s.instances, s.rows, s.skipped, s.errors, s.violations, s.printed_upper_falsified
        )
        .unwrap();
        out
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Precondition(format!("csv: {e}"));
        w.write_record(COLUMNS).map_err(csv_err)?;
        for row in &self.rows {
            w.write_record(cells(row)).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Precondition(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_spec_parses() {
        let s: FamilySpec = "complete_bipartite:1-4,2".parse().unwrap();
        assert_eq!(s.ranges, vec![(1, 4), (2, 2)]);
        assert_eq!(s.to_string(), "complete_bipartite:1-4,2");
        assert!("cycle:5-3".parse::<FamilySpec>().is_err());
        assert!("random_regular:3".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn instances_expand() {
        let spec = CorpusSpec::new(&["complete:2-4", "complete_bipartite:1-2,1-2", "petersen"]).unwrap();
        let ids: Vec<String> = spec.instances().unwrap().iter().map(|f| f.to_string()).collect();
        assert_eq!(
            ids,
            ["complete:2", "complete:3", "complete:4", "complete_bipartite:1,1", "complete_bipartite:1,2", "complete_bipartite:2,2", "petersen"]
        );
    }

    #[test]
    fn random_regular_draws_are_connected_and_seeded() {
        let mut spec = CorpusSpec::new(&["random_regular:5,6-10,3-4"]).unwrap();
        spec.seed = 11;
        let a = spec.instances().unwrap();
        assert_eq!(a.len(), 5);
        assert_eq!(a, spec.instances().unwrap());
        for f in &a {
            let g = generate(f).unwrap();
            assert!(g.is_connected() && g.n() <= 10);
        }
    }

    #[test]
    fn small_run_is_clean() {
        let spec = CorpusSpec::new(&["complete:2-5", "cycle:4-6"]).unwrap();
        let rep = run_corpus(&spec).unwrap();
        assert!(!rep.has_violations(), "{}", rep.to_table());
        let k5 = rep.rows.iter().find(|r| r.id == "complete:5" && r.r == 1).unwrap();
        assert_eq!(k5.printed_upper_violated, Some(true));
        assert_eq!(k5.kn_formula, Some(3));
        assert!(rep.to_csv().unwrap().lines().count() == rep.rows.len() + 1);
    }

    #[test]
    fn budget_skips() {
        let mut spec = CorpusSpec::new(&["cycle:5-6"]).unwrap();
        spec.solver_budget = 5;
        let rep = run_corpus(&spec).unwrap();
        assert!(rep.rows.iter().any(|r| r.status == RowStatus::Skipped && r.n == 6));
        assert!(!rep.has_violations());
    }
}
