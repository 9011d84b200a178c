//! Closed-form and spectral bounds on `a_r^o` and `γ_r^o`.
//!
//! Every closed-form bound is evaluated in exact integer arithmetic. The
//! spectral bound divides by `μ*·(1 + SPECTRAL_TOL)` before its ceiling so
//! that eigensolver error can only weaken it.

pub mod spectral;

use std::fmt::Write;

use serde::Serialize;

use crate::alliance::{min_degree_r_range, valid_r_range};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solve::{self, SolveOptions, SOLVER_LIMIT};

pub use spectral::{
    fiedler_indicator_check, indicator_quotient, laplacian_matrix, laplacian_spectral_radius, SpectralReport,
    SPECTRAL_TOL,
};

/// `⌈a/2⌉` for any sign of `a`.
pub fn ceil_half(a: i64) -> i64 {
    -(-a).div_euclid(2)
}

/// `⌊a/2⌋` for any sign of `a`.
pub fn floor_half(a: i64) -> i64 {
    a.div_euclid(2)
}

/// `⌈a/b⌉` for `b > 0`.
pub fn ceil_div(a: i64, b: i64) -> i64 {
    -(-a).div_euclid(b)
}

/// Degree bounds `⌈(δ+r)/2⌉ ≤ a_r^o ≤ γ_r^o ≤ n − ⌊(δ−r+2)/2⌋`, plus the
/// ceiling variant `n − ⌈(δ−r+2)/2⌉`, which is smaller by one whenever
/// `δ + r` is odd and then fails (e.g. `K₅`, `r = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeBounds {
    pub lower: i64,
    pub upper_printed: i64,
    pub upper_proof: i64,
}

pub fn degree_bounds(g: &Graph, r: i64) -> Result<DegreeBounds> {
    let range = min_degree_r_range(g);
    if range.is_empty() || !range.contains(r) {
        return Err(Error::Inapplicable {
            bound: "degree bounds",
            reason: format!("r = {r} outside [2 - δ, δ] = [{}, {}]", range.lo, range.hi),
        });
    }
    let n = g.n() as i64;
    let delta = g.min_degree() as i64;
    Ok(DegreeBounds {
        lower: ceil_half(delta + r),
        upper_printed: n - ceil_half(delta - r + 2),
        upper_proof: n - floor_half(delta - r + 2),
    })
}

/// `⌈(n/μ*)·⌈(δ+r)/2⌉⌉` with `μ*` inflated by `1 + SPECTRAL_TOL`.
pub fn spectral_lower_bound_from(n: usize, min_degree: usize, r: i64, mu_star: f64) -> i64 {
    let k = ceil_half(min_degree as i64 + r);
    let inflated = mu_star * (1.0 + SPECTRAL_TOL);
    (n as f64 / inflated * k as f64).ceil() as i64
}

pub fn spectral_lower_bound(g: &Graph, r: i64) -> Result<i64> {
    valid_r_range(g).check(r)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mu = laplacian_spectral_radius(g, SPECTRAL_TOL)?.mu_star;
    Ok(spectral_lower_bound_from(g.n(), g.min_degree(), r, mu))
}

/// `⌊(γ_r + n)/2⌋`, given `gamma_r = γ_r(G)`.
pub fn kdom_upper_bound(g: &Graph, r: i64, gamma_r: usize) -> Result<i64> {
    if r < 1 {
        return Err(Error::Inapplicable { bound: "k-domination upper bound", reason: format!("needs r >= 1, got {r}") });
    }
    Ok(floor_half(gamma_r as i64 + g.n() as i64))
}

/// `⌊n(2r+1)/(2r+2)⌋` for `1 ≤ r ≤ δ`.
pub fn cockayne_upper_bound(g: &Graph, r: i64) -> Result<i64> {
    let delta = g.min_degree() as i64;
    if r < 1 || r > delta {
        return Err(Error::Inapplicable { bound: "Cockayne upper bound", reason: format!("needs 1 <= r <= δ = {delta}") });
    }
    let n = g.n() as i64;
    Ok((n * (2 * r + 1)).div_euclid(2 * r + 2))
}

#[derive(Debug, Clone, Serialize)]
pub struct LineGraphBound {
    /// `(n/4)·⌈(2(δ−1)+r)/2⌉` before rounding.
    pub raw: f64,
    /// Integer-rounded bound on `γ_r^o(L(G))`.
    pub value: i64,
    /// μ* of the line graph.
    pub mu_line: f64,
    /// Whether `μ*(L(G)) = 2δ` to within `SPECTRAL_TOL`. Fails when the
    /// adjacency spectrum of `L(G)` does not reach −2 (odd cycles).
    pub mu_line_is_2delta: bool,
}

/// Lower bound `γ_r^o(L(G)) ≥ ⌈(n/4)·⌈(2(δ−1)+r)/2⌉⌉` for connected
/// δ-regular `G` with δ ≥ 2. Since `μ*(L(G)) ≤ 2δ` always, the bound stays
/// valid when the spectral identity is not attained.
pub fn line_graph_lower_bound(g: &Graph, r: i64) -> Result<LineGraphBound> {
    let inapplicable = |reason: String| Err(Error::Inapplicable { bound: "line-graph lower bound", reason });
    let Some(delta) = g.regular_degree() else {
        return inapplicable("graph is not regular".into());
    };
    if delta < 2 {
        return inapplicable(format!("needs δ >= 2, got {delta}"));
    }
    if !g.is_connected() {
        return inapplicable("graph is disconnected".into());
    }
    let (line, _) = g.line_graph()?;
    valid_r_range(&line).check(r)?;
    let k = ceil_half(2 * (delta as i64 - 1) + r);
    let n = g.n() as i64;
    let mu_line = laplacian_spectral_radius(&line, SPECTRAL_TOL)?.mu_star;
    let two_delta = 2.0 * delta as f64;
    if mu_line > two_delta * (1.0 + SPECTRAL_TOL) {
        return Err(Error::OracleIntegrity(format!("μ*(L(G)) = {mu_line} exceeds 2δ = {two_delta}")));
    }
    Ok(LineGraphBound {
        raw: n as f64 * k as f64 / 4.0,
        value: ceil_div(n * k, 4),
        mu_line,
        mu_line_is_2delta: (mu_line - two_delta).abs() <= SPECTRAL_TOL * two_delta,
    })
}

/// `γ_{⌈(δ+r)/2⌉}(G) ≤ γ_r^o(G) ≤ n − α(G)`; the upper half needs
/// `1 ≤ δ` and `r ≤ δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sandwich {
    pub lower: i64,
    pub upper: Option<i64>,
}

/// `gamma_k` must be `γ_k(G)` for `k = ⌈(δ+r)/2⌉`, `alpha` must be `α(G)`.
pub fn sandwich_bounds(g: &Graph, r: i64, alpha: usize, gamma_k: usize) -> Result<Sandwich> {
    let delta = g.min_degree() as i64;
    if r < 2 - delta {
        return Err(Error::Inapplicable { bound: "sandwich bounds", reason: format!("needs r >= 2 - δ = {}", 2 - delta) });
    }
    let upper = (delta >= 1 && r <= delta).then(|| g.n() as i64 - alpha as i64);
    Ok(Sandwich { lower: gamma_k as i64, upper })
}

/// The k-domination order used by the lower half of the sandwich.
pub fn sandwich_k(g: &Graph, r: i64) -> i64 {
    ceil_half(g.min_degree() as i64 + r)
}

/// `a_r^o(K_n) = ⌈(n+r−1)/2⌉` for `3 − n ≤ r ≤ n − 1`.
pub fn kn_formula(n: usize, r: i64) -> Result<i64> {
    let n = n as i64;
    if n < 2 || r < 3 - n || r > n - 1 {
        return Err(Error::ROutOfRange { r, lo: 3 - n, hi: n - 1 });
    }
    Ok(ceil_half(n + r - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub kind: BoundKind,
    pub value: Option<i64>,
    pub applicable: bool,
    pub note: String,
    /// Reserved for the ceiling form of the degree upper bound; excluded
    /// from validity checks.
    pub falsified_as_printed: bool,
    pub tight: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub schema: u32,
    pub r: i64,
    pub n: usize,
    pub min_degree: usize,
    pub entries: Vec<BoundEntry>,
    /// `γ_r^o` when the exact solver ran.
    pub exact: Option<i64>,
}

#[derive(Debug, Clone, Default)]
pub struct BoundsOptions {
    pub solve: SolveOptions,
    /// Skip every computation that needs an exact solver.
    pub skip_exact: bool,
}

impl BoundsReport {
    fn push(&mut self, name: &'static str, kind: BoundKind, computed: Result<i64>) -> Result<()> {
        let (value, note) = match computed {
            Ok(v) => (Some(v), String::new()),
            Err(e @ (Error::Inapplicable { .. } | Error::Disconnected | Error::TooLarge { .. } | Error::ROutOfRange { .. })) => {
                (None, e.to_string())
            }
            Err(e) => return Err(e),
        };
        self.entries.push(BoundEntry {
            name,
            kind,
            applicable: value.is_some(),
            value,
            note,
            falsified_as_printed: false,
            tight: None,
        });
        Ok(())
    }

    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn value(&self, name: &str) -> Option<i64> {
        self.entry(name).and_then(|e| e.value)
    }

    fn mark_tightness(&mut self) {
        if let Some(exact) = self.exact {
            for e in &mut self.entries {
                e.tight = e.value.map(|v| v == exact);
            }
        }
    }

    /// Inequalities that fail among applicable entries (the printed ceiling
    /// form excluded), including comparisons against the exact value.
    pub fn violations(&self) -> Vec<String> {
        let checked: Vec<_> = self.entries.iter().filter(|e| e.applicable && !e.falsified_as_printed).collect();
        let mut out = Vec::new();
        for lo in checked.iter().filter(|e| e.kind == BoundKind::Lower) {
            for hi in checked.iter().filter(|e| e.kind == BoundKind::Upper) {
                if lo.value > hi.value {
                    out.push(format!("{} = {:?} > {} = {:?}", lo.name, lo.value, hi.name, hi.value));
                }
            }
            if let (Some(v), Some(x)) = (lo.value, self.exact) {
                if v > x {
                    out.push(format!("{} = {v} > exact {x}", lo.name));
                }
            }
        }
        for hi in checked.iter().filter(|e| e.kind == BoundKind::Upper) {
            if let (Some(v), Some(x)) = (hi.value, self.exact) {
                if v < x {
                    out.push(format!("{} = {v} < exact {x}", hi.name));
                }
            }
        }
        out
    }

    /// `Some(true)` when the exact optimum exceeds the printed ceiling form.
    pub fn printed_upper_falsified(&self) -> Option<bool> {
        let printed = self.value("degree_upper_printed")?;
        Some(self.exact? > printed)
    }

    pub fn to_table(&self) -> String {
        let mut rows = vec![["bound".to_string(), "kind".into(), "value".into(), "applicable".into(), "tight".into()]];
        for e in &self.entries {
            let mut name = e.name.to_string();
            if e.falsified_as_printed {
                name.push('*');
            }
            rows.push([
                name,
                format!("{:?}", e.kind).to_lowercase(),
                e.value.map_or("-".into(), |v| v.to_string()),
                if e.applicable { "yes".into() } else { "no".into() },
                e.tight.map_or("-".into(), |t| if t { "yes".into() } else { "no".into() }),
            ]);
        }
        rows.push([
            "exact".into(),
            "-".into(),
            self.exact.map_or("-".into(), |v| v.to_string()),
            "-".into(),
            "-".into(),
        ]);
        let widths: Vec<usize> = (0..5).map(|c| rows.iter().map(|r| r[c].len()).max().unwrap()).collect();
        let mut out = format!("r = {}  n = {}  δ = {}\n", self.r, self.n, self.min_degree);
        for row in &rows {
            let line: Vec<String> = row.iter().zip(&widths).map(|(cell, w)| format!("{cell:<w$}")).collect();
            writeln!(out, "{}", line.join("  ").trim_end()).unwrap();
        }
        if self.entries.iter().any(|e| e.falsified_as_printed) {
            out.push_str("* ceiling form as printed; falsified when δ + r is odd\n");
        }
        out
    }
}

/// Evaluates every bound on `γ_r^o(G)` for one `r`, together with the exact
/// value when the graph is within the solver limit.
pub fn bounds_report(g: &Graph, r: i64, opts: &BoundsOptions) -> Result<BoundsReport> {
    valid_r_range(g).check(r)?;
    let mut rep = BoundsReport { schema: 1, r, n: g.n(), min_degree: g.min_degree(), entries: Vec::new(), exact: None };
    let exact_ok = !opts.skip_exact && (g.n() <= SOLVER_LIMIT || opts.solve.allow_large);
    let need_exact = |what: &str| -> Result<()> {
        if exact_ok {
            Ok(())
        } else {
            Err(Error::Inapplicable { bound: "exact-solver bound", reason: format!("{what} needs the exact solver") })
        }
    };

    let deg = degree_bounds(g, r);
    rep.push("degree_lower", BoundKind::Lower, deg.as_ref().map(|d| d.lower).map_err(clone_inapplicable))?;
    rep.push("degree_upper_printed", BoundKind::Upper, deg.as_ref().map(|d| d.upper_printed).map_err(clone_inapplicable))?;
    if let Some(e) = rep.entries.last_mut() {
        e.falsified_as_printed = true;
        e.note = "ceiling form as printed; falsified when δ + r is odd".into();
    }
    rep.push("degree_upper", BoundKind::Upper, deg.map(|d| d.upper_proof))?;

    rep.push("spectral_lower", BoundKind::Lower, spectral_lower_bound(g, r))?;

    let kdom = need_exact("γ_r").and_then(|_| {
        if r < 1 {
            return kdom_upper_bound(g, r, 0);
        }
        let gamma_r = solve::min_k_dominating(g, r as usize, &opts.solve)?.optimum;
        kdom_upper_bound(g, r, gamma_r)
    });
    rep.push("kdom_upper", BoundKind::Upper, kdom)?;
    rep.push("cockayne_upper", BoundKind::Upper, cockayne_upper_bound(g, r))?;

    let k = sandwich_k(g, r);
    let sandwich_lower = need_exact("γ_k").and_then(|_| {
        if k < 1 {
            return Err(Error::Inapplicable { bound: "sandwich lower", reason: "needs r >= 2 - δ".into() });
        }
        Ok(solve::min_k_dominating(g, k as usize, &opts.solve)?.optimum as i64)
    });
    rep.push("kdom_sandwich_lower", BoundKind::Lower, sandwich_lower)?;
    let sandwich_upper = need_exact("α").and_then(|_| {
        let delta = g.min_degree() as i64;
        if delta < 1 || r > delta {
            return Err(Error::Inapplicable { bound: "independence upper", reason: format!("needs 1 <= δ and r <= δ = {delta}") });
        }
        let alpha = solve::independence_number(g, &opts.solve)?.optimum;
        Ok(g.n() as i64 - alpha as i64)
    });
    rep.push("independence_upper", BoundKind::Upper, sandwich_upper)?;

    if exact_ok {
        rep.exact = Some(solve::min_global_offensive_alliance(g, r, &opts.solve)?.optimum as i64);
    }
    rep.mark_tightness();
    Ok(rep)
}

/// Bounds report for `γ_r^o(L(G))`, including the line-graph bound derived
/// from `G`.
pub fn line_graph_bounds_report(g: &Graph, r: i64, opts: &BoundsOptions) -> Result<BoundsReport> {
    let (line, _) = g.line_graph()?;
    let mut rep = bounds_report(&line, r, opts)?;
    rep.push("line_graph_lower", BoundKind::Lower, line_graph_lower_bound(g, r).map(|b| b.value))?;
    rep.mark_tightness();
    Ok(rep)
}

fn clone_inapplicable(e: &Error) -> Error {
    match e {
        Error::Inapplicable { bound, reason } => Error::Inapplicable { bound, reason: reason.clone() },
        other => Error::Precondition(other.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn fam(f: Family) -> Graph {
        generate(&f).unwrap()
    }

    #[test]
    fn half_rounding() {
        assert_eq!((ceil_half(5), ceil_half(-5), ceil_half(4), ceil_half(0)), (3, -2, 2, 0));
        assert_eq!((floor_half(5), floor_half(-5), floor_half(-4)), (2, -3, -2));
        assert_eq!((ceil_div(6, 4), ceil_div(-3, 4), ceil_div(8, 4)), (2, 0, 2));
    }

    #[test]
    fn degree_bound_examples() {
        let k5 = fam(Family::Complete(5));
        assert_eq!(degree_bounds(&k5, 1).unwrap(), DegreeBounds { lower: 3, upper_printed: 2, upper_proof: 3 });
        let c4 = fam(Family::Cycle(4));
        assert_eq!(degree_bounds(&c4, 2).unwrap(), DegreeBounds { lower: 2, upper_printed: 3, upper_proof: 3 });
        // n + r − 1 even on K_n: both upper forms coincide with the closed form
        let k6 = fam(Family::Complete(6));
        let b = degree_bounds(&k6, 1).unwrap();
        assert_eq!((b.upper_printed, b.upper_proof), (3, 3));
        assert_eq!(kn_formula(6, 1).unwrap(), 3);
        assert!(matches!(degree_bounds(&c4, 3), Err(Error::Inapplicable { .. })));
        assert!(matches!(degree_bounds(&c4, -1), Err(Error::Inapplicable { .. })));
    }

    #[test]
    fn spectral_examples() {
        assert_eq!(spectral_lower_bound(&fam(Family::Complete(5)), 1).unwrap(), 3);
        assert_eq!(spectral_lower_bound(&fam(Family::Cycle(4)), 1).unwrap(), 2);
        assert_eq!(spectral_lower_bound(&fam(Family::Petersen), 1).unwrap(), 4);
        let split = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(spectral_lower_bound(&split, 1), Err(Error::Disconnected)));
    }

    #[test]
    fn closed_form_examples() {
        let k5 = fam(Family::Complete(5));
        let c6 = fam(Family::Cycle(6));
        let c4 = fam(Family::Cycle(4));
        assert_eq!(kdom_upper_bound(&k5, 1, 1).unwrap(), 3);
        assert_eq!(kdom_upper_bound(&c6, 1, 2).unwrap(), 4);
        assert_eq!(kdom_upper_bound(&c4, 2, 2).unwrap(), 3);
        assert!(kdom_upper_bound(&c4, 0, 2).is_err());
        assert_eq!(cockayne_upper_bound(&k5, 1).unwrap(), 3);
        assert_eq!(cockayne_upper_bound(&c4, 1).unwrap(), 3);
        assert_eq!(cockayne_upper_bound(&c4, 2).unwrap(), 3);
        assert!(cockayne_upper_bound(&c4, 3).is_err());
        assert_eq!(kn_formula(5, 1).unwrap(), 3);
        assert_eq!(kn_formula(4, -1).unwrap(), 1);
        assert_eq!(kn_formula(6, 5).unwrap(), 5);
        assert!(kn_formula(4, 4).is_err());
        assert!(kn_formula(4, -2).is_err());
    }

    #[test]
    fn line_graph_examples() {
        let b = line_graph_lower_bound(&fam(Family::Complete(4)), 1).unwrap();
        assert_eq!((b.raw, b.value), (3.0, 3));
        assert!(b.mu_line_is_2delta && (b.mu_line - 6.0).abs() < 1e-8 * 6.0);
        let b = line_graph_lower_bound(&fam(Family::Cycle(6)), 1).unwrap();
        assert_eq!((b.raw, b.value), (3.0, 3));
        let b = line_graph_lower_bound(&fam(Family::Cycle(5)), 1).unwrap();
        assert_eq!((b.raw, b.value), (2.5, 3));
        assert!(!b.mu_line_is_2delta && b.mu_line < 4.0);
        assert!(line_graph_lower_bound(&fam(Family::Path(4)), 1).is_err());
    }

    #[test]
    fn sandwich_examples() {
        let k5 = fam(Family::Complete(5));
        assert_eq!(sandwich_k(&k5, 1), 3);
        assert_eq!(sandwich_bounds(&k5, 1, 1, 3).unwrap(), Sandwich { lower: 3, upper: Some(4) });
        let c6 = fam(Family::Cycle(6));
        assert_eq!(sandwich_bounds(&c6, 1, 3, 2).unwrap().upper, Some(3));
        assert_eq!(sandwich_bounds(&c6, 2, 3, 2).unwrap().upper, Some(3));
    }

    #[test]
    fn report_for_c4() {
        let rep = bounds_report(&fam(Family::Cycle(4)), 1, &BoundsOptions::default()).unwrap();
        assert_eq!(rep.value("spectral_lower"), Some(2));
        assert_eq!(rep.value("cockayne_upper"), Some(3));
        assert_eq!(rep.exact, Some(2));
        assert!(rep.violations().is_empty());
        let table = rep.to_table();
        assert!(table.contains("spectral_lower") && table.contains("cockayne_upper"));
    }

    #[test]
    fn report_flags_printed_ceiling_on_k5() {
        let rep = bounds_report(&fam(Family::Complete(5)), 1, &BoundsOptions::default()).unwrap();
        assert_eq!(rep.printed_upper_falsified(), Some(true));
        assert!(rep.violations().is_empty());
        assert!(rep.entry("degree_upper_printed").unwrap().falsified_as_printed);
    }
}
