//! Largest Laplacian eigenvalue `μ*` and the indicator-vector form of its
//! variational characterization.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Relative tolerance used for μ* and for comparisons against it.
pub const SPECTRAL_TOL: f64 = 1e-8;
/// Power-iteration budget before switching to the dense solver.
pub const MAX_POWER_ITERATIONS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenMethod {
    PowerIteration,
    Dense,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    pub mu_star: f64,
    pub iterations: usize,
    /// `‖L·x − μ*·x‖ / ‖x‖` for the returned vector.
    pub residual: f64,
    /// Unit vector whose Rayleigh quotient is `mu_star`.
    pub rayleigh_witness: Vec<f64>,
    pub method: EigenMethod,
}

fn laplacian_apply(g: &Graph, x: &[f64], y: &mut [f64]) {
    for v in 0..g.n() {
        let s: f64 = g.neighbors(v).iter().map(|&u| x[u]).sum();
        y[v] = g.degree(v) as f64 * x[v] - s;
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|a| a * a).sum::<f64>().sqrt()
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn laplacian_matrix(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            g.degree(i) as f64
        } else if g.has_edge(i, j) {
            -1.0
        } else {
            0.0
        }
    })
}

fn residual_of(g: &Graph, x: &[f64], mu: f64) -> f64 {
    let mut y = vec![0.0; x.len()];
    laplacian_apply(g, x, &mut y);
    let r: f64 = y.iter().zip(x).map(|(a, b)| (a - mu * b).powi(2)).sum::<f64>().sqrt();
    r / norm(x)
}

enum Run {
    Converged(SpectralReport),
    Stalled(f64),
}

fn power_iterate(g: &Graph, start: Vec<f64>, tol: f64) -> Run {
    let n = g.n();
    let start_norm = norm(&start);
    let mut x: Vec<f64> = start.iter().map(|a| a / start_norm).collect();
    let mut y = vec![0.0; n];
    let mut best_residual = f64::INFINITY;
    for it in 1..=MAX_POWER_ITERATIONS {
        laplacian_apply(g, &x, &mut y);
        let mu = dot(&x, &y);
        let residual = y.iter().zip(&x).map(|(a, b)| (a - mu * b).powi(2)).sum::<f64>().sqrt();
        best_residual = best_residual.min(residual);
        if residual <= tol * mu {
            return Run::Converged(SpectralReport {
                mu_star: mu,
                iterations: it,
                residual,
                rayleigh_witness: x,
                method: EigenMethod::PowerIteration,
            });
        }
        let ny = norm(&y);
        if ny == 0.0 {
            break;
        }
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / ny;
        }
    }
    Run::Stalled(best_residual)
}

/// Deterministic start vector with no symmetry, from a splitmix64 stream.
fn generic_start(n: usize) -> Vec<f64> {
    let mut state = 0x9e37_79b9_7f4a_7c15_u64;
    (0..n)
        .map(|_| {
            state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
            z ^= z >> 31;
            0.5 + (z >> 11) as f64 / (1u64 << 53) as f64
        })
        .collect()
}

/// Power iteration on `L = D − A` from the normalized start vector
/// `(1, 2, …, n)`, stopping once the residual is below `tol·μ`.
///
/// That start vector is orthogonal to the top eigenvector whenever the top
/// eigenvector is symmetric under reversing the vertex order (paths, for
/// one), so a second run from a generic vector is made and the larger
/// converged value kept. Falls back to a dense symmetric eigensolve if
/// either run stalls or the result lands below the `Δ + 1` floor.
pub fn laplacian_spectral_radius(g: &Graph, tol: f64) -> Result<SpectralReport> {
    let n = g.n();
    if n < 2 {
        return Err(Error::Precondition("spectral radius needs n >= 2".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    if g.m() == 0 {
        let x = vec![1.0 / (n as f64).sqrt(); n];
        return Ok(SpectralReport {
            mu_star: 0.0,
            iterations: 0,
            residual: 0.0,
            rayleigh_witness: x,
            method: EigenMethod::PowerIteration,
        });
    }

    let first = power_iterate(g, (1..=n).map(|i| i as f64).collect(), tol);
    let second = power_iterate(g, generic_start(n), tol);
    let (a, b) = match (first, second) {
        (Run::Converged(a), Run::Converged(b)) => (a, b),
        (Run::Stalled(r), _) | (_, Run::Stalled(r)) => return dense_radius(g, tol, r),
    };
    let iterations = a.iterations + b.iterations;
    let mut best = if b.mu_star > a.mu_star * (1.0 + tol) { b } else { a };
    best.iterations = iterations;
    let floor = g.max_degree() as f64 + 1.0;
    if best.mu_star < floor * (1.0 - tol) {
        return dense_radius(g, tol, best.residual);
    }
    Ok(best)
}

fn dense_radius(g: &Graph, tol: f64, best_residual: f64) -> Result<SpectralReport> {
    let eig = SymmetricEigen::new(laplacian_matrix(g));
    let (idx, &mu) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("n >= 2");
    let x: Vec<f64> = eig.eigenvectors.column(idx).iter().copied().collect();
    let residual = residual_of(g, &x, mu);
    if residual > tol * mu.max(1.0) {
        return Err(Error::NonConvergence { residual: best_residual.min(residual) });
    }
    Ok(SpectralReport { mu_star: mu, iterations: MAX_POWER_ITERATIONS, residual, rayleigh_witness: x, method: EigenMethod::Dense })
}

/// Value of the variational quotient at the indicator vector of `s`:
/// `n · Σ_{v∈S̄} δ_S(v) / (|S|·(n − |S|))`.
pub fn indicator_quotient(g: &Graph, s: &VertexSet) -> Result<f64> {
    g.check_set(s)?;
    let n = g.n();
    let k = s.len();
    if k == 0 || k == n {
        return Err(Error::Precondition("indicator check needs a nonempty proper subset".into()));
    }
    let cut: usize = s.complement().iter().map(|v| g.degree_in(v, s)).sum();
    Ok(n as f64 * cut as f64 / (k as f64 * (n - k) as f64))
}

/// Whether `μ* ≥ n·Σ_{v∈S̄} δ_S(v) / (|S|(n−|S|))` holds, up to relative
/// tolerance `SPECTRAL_TOL`.
pub fn fiedler_indicator_check(g: &Graph, s: &VertexSet, mu_star: f64) -> Result<bool> {
    let rhs = indicator_quotient(g, s)?;
    Ok(rhs <= mu_star * (1.0 + SPECTRAL_TOL) + f64::EPSILON)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn mu(f: Family) -> SpectralReport {
        laplacian_spectral_radius(&generate(&f).unwrap(), SPECTRAL_TOL).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= SPECTRAL_TOL * b.abs().max(1.0)
    }

    #[test]
    fn closed_forms() {
        assert!(close(mu(Family::Complete(5)).mu_star, 5.0));
        assert!(close(mu(Family::Cycle(4)).mu_star, 4.0));
        assert!(close(mu(Family::CompleteBipartite(1, 3)).mu_star, 4.0));
        assert!(close(mu(Family::Petersen).mu_star, 5.0));
        // odd cycle: 2 − 2cos(4π/5)
        let c5 = 2.0 - 2.0 * (4.0 * std::f64::consts::PI / 5.0).cos();
        assert!(close(mu(Family::Cycle(5)).mu_star, c5));
    }

    #[test]
    fn witness_has_small_residual() {
        let rep = mu(Family::RandomRegular { n: 12, d: 3, seed: 3 });
        assert!(rep.residual <= SPECTRAL_TOL * rep.mu_star);
        assert!((norm(&rep.rayleigh_witness) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn dense_fallback_agrees() {
        for f in [Family::Petersen, Family::Prism(5), Family::Hypercube(3), Family::Path(7)] {
            let g = generate(&f).unwrap();
            let a = laplacian_spectral_radius(&g, SPECTRAL_TOL).unwrap();
            let b = dense_radius(&g, SPECTRAL_TOL, f64::INFINITY).unwrap();
            assert_eq!(b.method, EigenMethod::Dense);
            assert!(close(a.mu_star, b.mu_star), "{f}: {} vs {}", a.mu_star, b.mu_star);
        }
    }

    #[test]
    fn preconditions() {
        let k1 = Graph::from_edge_list(1, &[]).unwrap();
        assert!(laplacian_spectral_radius(&k1, 1e-8).is_err());
        let e = Graph::from_edge_list(3, &[]).unwrap();
        assert_eq!(laplacian_spectral_radius(&e, 1e-8).unwrap().mu_star, 0.0);
        let k3 = generate(&Family::Complete(3)).unwrap();
        assert!(laplacian_spectral_radius(&k3, 0.0).is_err());
    }

    #[test]
    fn indicator_examples() {
        let k5 = generate(&Family::Complete(5)).unwrap();
        let s = VertexSet::from_indices(5, [0, 1, 2]).unwrap();
        assert!(close(indicator_quotient(&k5, &s).unwrap(), 5.0));
        assert!(fiedler_indicator_check(&k5, &s, 5.0).unwrap());

        let c4 = generate(&Family::Cycle(4)).unwrap();
        let s = VertexSet::from_indices(4, [0, 2]).unwrap();
        assert!(close(indicator_quotient(&c4, &s).unwrap(), 4.0));

        let two_edges = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        let s = VertexSet::from_indices(4, [0, 1]).unwrap();
        assert_eq!(indicator_quotient(&two_edges, &s).unwrap(), 0.0);
        assert!(fiedler_indicator_check(&two_edges, &s, 2.0).unwrap());

        assert!(indicator_quotient(&c4, &VertexSet::empty(4)).is_err());
        assert!(indicator_quotient(&c4, &VertexSet::full(4)).is_err());
    }
}
