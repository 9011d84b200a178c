use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

const PAIRING_ATTEMPTS: usize = 100_000;

/// Named graph families. `Display`/`FromStr` use the `name:params` form,
/// e.g. `cycle:5` or `random_regular:10,3,42`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    CompleteBipartite(usize, usize),
    Petersen,
    /// `C_k × K_2`; `Prism(3)` is the triangular prism.
    Prism(usize),
    RandomRegular { n: usize, d: usize, seed: u64 },
    Hypercube(usize),
}

pub fn generate(family: &Family) -> Result<Graph> {
    use Family::*;
    let infeasible = |msg: String| Err(Error::InfeasibleParameters(msg));
    match *family {
        Complete(n) => {
            let e: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            Graph::from_edge_list(n, &e)
        }
        Cycle(n) => {
            if n < 3 {
                return infeasible(format!("cycle needs n >= 3, got {n}"));
            }
            let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::from_edge_list(n, &e)
        }
        Path(n) => {
            let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Graph::from_edge_list(n, &e)
        }
        CompleteBipartite(a, b) => {
            let e: Vec<_> = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))).collect();
            Graph::from_edge_list(a + b, &e)
        }
        Petersen => {
            let mut e = Vec::with_capacity(15);
            for i in 0..5 {
                e.push((i, (i + 1) % 5));
                e.push((i, i + 5));
                e.push((5 + i, 5 + (i + 2) % 5));
            }
            Graph::from_edge_list(10, &e)
        }
        Prism(k) => {
            if k < 3 {
                return infeasible(format!("prism needs k >= 3, got {k}"));
            }
            let mut e = Vec::with_capacity(3 * k);
            for i in 0..k {
                e.push((i, (i + 1) % k));
                e.push((k + i, k + (i + 1) % k));
                e.push((i, k + i));
            }
            Graph::from_edge_list(2 * k, &e)
        }
        Hypercube(dim) => {
            if dim > 16 {
                return infeasible(format!("hypercube dimension {dim} too large"));
            }
            let n = 1usize << dim;
            let e: Vec<_> = (0..n)
                .flat_map(|v| (0..dim).map(move |b| (v, v ^ (1 << b))).filter(|(u, w)| u < w))
                .collect();
            Graph::from_edge_list(n, &e)
        }
        RandomRegular { n, d, seed } => random_regular(n, d, seed),
    }
}

/// Configuration (pairing) model, rejecting pairings with loops or parallel
/// edges. Deterministic for a fixed seed.
fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if n * d % 2 == 1 {
        return Err(Error::InfeasibleParameters(format!("n*d must be even (n={n}, d={d})")));
    }
    if d > 0 && d >= n {
        return Err(Error::InfeasibleParameters(format!("degree {d} needs more than {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'attempt: for _ in 0..PAIRING_ATTEMPTS {
        points.shuffle(&mut rng);
        let mut seen = HashSet::with_capacity(points.len() / 2);
        let mut edges = Vec::with_capacity(points.len() / 2);
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        return Graph::from_edge_list(n, &edges);
    }
    Err(Error::InfeasibleParameters(format!(
        "no simple pairing for n={n}, d={d} after {PAIRING_ATTEMPTS} attempts"
    )))
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Family::*;
        match self {
            Complete(n) => write!(f, "complete:{n}"),
            Cycle(n) => write!(f, "cycle:{n}"),
            Path(n) => write!(f, "path:{n}"),
            CompleteBipartite(a, b) => write!(f, "complete_bipartite:{a},{b}"),
            Petersen => write!(f, "petersen"),
            Prism(k) => write!(f, "prism:{k}"),
            RandomRegular { n, d, seed } => write!(f, "random_regular:{n},{d},{seed}"),
            Hypercube(d) => write!(f, "hypercube:{d}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = s.split_once(':').unwrap_or((s, ""));
        let nums: Vec<u64> = if params.is_empty() {
            Vec::new()
        } else {
            params
                .split(',')
                .map(|p| p.trim().parse::<u64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::UnknownFamily(s.to_string()))?
        };
        let arity = |k: usize| {
            if nums.len() == k {
                Ok(())
            } else {
                Err(Error::InfeasibleParameters(format!("`{name}` takes {k} parameter(s)")))
            }
        };
        let u = |i: usize| nums[i] as usize;
        Ok(match name {
            "complete" | "K" => {
                arity(1)?;
                Family::Complete(u(0))
            }
            "cycle" | "C" => {
                arity(1)?;
                Family::Cycle(u(0))
            }
            "path" | "P" => {
                arity(1)?;
                Family::Path(u(0))
            }
            "complete_bipartite" | "bipartite" => {
                arity(2)?;
                Family::CompleteBipartite(u(0), u(1))
            }
            "star" => {
                arity(1)?;
                Family::CompleteBipartite(1, u(0).saturating_sub(1))
            }
            "petersen" => {
                arity(0)?;
                Family::Petersen
            }
            "prism" => match nums.len() {
                0 => Family::Prism(3),
                _ => {
                    arity(1)?;
                    Family::Prism(u(0))
                }
            },
            "hypercube" | "Q" => {
                arity(1)?;
                Family::Hypercube(u(0))
            }
            "random_regular" => {
                arity(3)?;
                Family::RandomRegular { n: u(0), d: u(1), seed: nums[2] }
            }
            _ => return Err(Error::UnknownFamily(name.to_string())),
        })
    }
}
