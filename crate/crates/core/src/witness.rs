//! Polynomial-time constructions of global offensive r-alliances. Every
//! returned set has been re-checked by the alliance predicate.

use serde::Serialize;

use crate::alliance::{
    is_global_offensive_r_alliance, is_independent, is_k_dominating, min_degree_r_range, AllianceReport,
};
use crate::bounds::{ceil_half, floor_half};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// Complement of a trimmed closed neighborhood of a minimum-degree vertex.
    Thm31,
    /// An r-dominating set plus the smaller side of a locally maximal cut.
    Thm32,
    /// Complement of a greedy maximal independent set.
    IndependentComplement,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessCertificate {
    pub witness: VertexSet,
    pub claimed_bound: usize,
    pub report: AllianceReport,
    pub construction: Construction,
}

impl WitnessCertificate {
    pub fn size(&self) -> usize {
        self.witness.len()
    }
}

fn certify(g: &Graph, witness: VertexSet, r: i64, claimed_bound: usize, construction: Construction) -> Result<WitnessCertificate> {
    let report = is_global_offensive_r_alliance(g, &witness, r)?;
    if !report.holds || !report.is_global || witness.len() > claimed_bound {
        return Err(Error::Uncertified(Box::new(report)));
    }
    Ok(WitnessCertificate { witness, claimed_bound, report, construction })
}

/// Takes the smallest-index vertex `v` of minimum degree, removes from
/// `{v} ∪ N(v)` the `⌈(δ+r)/2⌉` smallest neighbors, and returns the
/// complement, of size `n − ⌊(δ−r+2)/2⌋`.
pub fn thm31_witness(g: &Graph, r: i64) -> Result<WitnessCertificate> {
    let range = min_degree_r_range(g);
    if range.is_empty() || !range.contains(r) {
        return Err(Error::ROutOfRange { r, lo: range.lo, hi: range.hi });
    }
    let delta = g.min_degree();
    let v = (0..g.n()).find(|&u| g.degree(u) == delta).expect("n >= 1");
    let y_len = ceil_half(delta as i64 + r) as usize;
    let mut s = VertexSet::empty(g.n());
    s.insert(v);
    for &u in &g.neighbors(v)[y_len..] {
        s.insert(u);
    }
    let witness = s.complement();
    // each u in S sees at most |S| − 1 vertices of S, which leaves enough outside
    for u in s.iter() {
        let inside = g.degree_in(u, &s) as i64;
        let outside = g.degree(u) as i64 - inside;
        assert!(outside >= inside + r && outside >= 1, "construction chain fails at {u}");
    }
    let claimed = g.n() - floor_half(delta as i64 - r + 2) as usize;
    debug_assert_eq!(witness.len(), claimed);
    certify(g, witness, r, claimed, Construction::Thm31)
}

/// A bipartition of some vertex set with no vertex having more neighbors on
/// its own side than across.
#[derive(Debug, Clone)]
pub struct LocalCut {
    /// The smaller side (ties: the side holding the smallest vertex).
    pub x: VertexSet,
    pub y: VertexSet,
    pub swaps: usize,
}

/// Single-vertex swap local search for a locally maximal cut of the
/// subgraph induced by `part`. Starts from alternating ranks and sweeps in
/// ascending vertex order; every swap raises the cut, so at most `m` swaps
/// happen.
pub fn local_max_cut(g: &Graph, part: &VertexSet) -> LocalCut {
    let n = g.n();
    let members = part.to_vec();
    let mut side_a = VertexSet::empty(n);
    for (rank, &v) in members.iter().enumerate() {
        if rank % 2 == 0 {
            side_a.insert(v);
        }
    }
    let mut swaps = 0;
    loop {
        let mut moved = false;
        for &v in &members {
            let in_a = side_a.contains(v);
            let same = g.neighbors(v).iter().filter(|&&u| part.contains(u) && side_a.contains(u) == in_a).count();
            let across = g.neighbors(v).iter().filter(|&&u| part.contains(u) && side_a.contains(u) != in_a).count();
            if same > across {
                if in_a {
                    side_a.remove(v);
                } else {
                    side_a.insert(v);
                }
                swaps += 1;
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    let side_b = part.difference(&side_a);
    let a_first = match side_a.len().cmp(&side_b.len()) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => side_a.min() <= side_b.min() || side_b.is_empty(),
    };
    let (x, y) = if a_first { (side_a, side_b) } else { (side_b, side_a) };
    LocalCut { x, y, swaps }
}

/// `W = H ∪ X` where `X` is the smaller side of a locally maximal cut of
/// `H̄`; `|W| ≤ ⌊(|H| + n)/2⌋`.
pub fn thm32_witness(g: &Graph, r: i64, h: &VertexSet) -> Result<WitnessCertificate> {
    g.check_set(h)?;
    if r < 1 {
        return Err(Error::ROutOfRange { r, lo: 1, hi: g.max_degree() as i64 });
    }
    if h.is_empty() || !is_k_dominating(g, h, r as usize) {
        return Err(Error::Precondition(format!("H is not an {r}-dominating set")));
    }
    let outside = h.complement();
    let cut = local_max_cut(g, &outside);
    for v in cut.y.iter() {
        assert!(g.degree_in(v, &cut.x) >= g.degree_in(v, &cut.y), "cut not locally maximal at {v}");
    }
    let witness = h.union(&cut.x);
    let claimed = floor_half((h.len() + g.n()) as i64) as usize;
    certify(g, witness, r, claimed, Construction::Thm32)
}

/// Greedy maximal independent set in ascending index order.
pub fn greedy_independent_set(g: &Graph) -> VertexSet {
    let mut ind = VertexSet::empty(g.n());
    for v in 0..g.n() {
        if g.degree_in(v, &ind) == 0 {
            ind.insert(v);
        }
    }
    ind
}

/// Complement of a greedy maximal independent set (`r ≤ δ`, `δ ≥ 1`).
pub fn independent_complement_witness(g: &Graph, r: i64) -> Result<WitnessCertificate> {
    let delta = g.min_degree() as i64;
    if delta < 1 || r > delta {
        return Err(Error::Precondition(format!("needs 1 <= δ and r <= δ = {delta}, got r = {r}")));
    }
    let ind = greedy_independent_set(g);
    debug_assert!(is_independent(g, &ind));
    let claimed = g.n() - ind.len();
    certify(g, ind.complement(), r, claimed, Construction::IndependentComplement)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use crate::solve::{min_global_offensive_alliance, min_k_dominating, SolveOptions};

    fn fam(f: Family) -> Graph {
        generate(&f).unwrap()
    }

    fn set(n: usize, items: &[usize]) -> VertexSet {
        VertexSet::from_indices(n, items.iter().copied()).unwrap()
    }

    #[test]
    fn thm31_examples() {
        let k5 = fam(Family::Complete(5));
        let c = thm31_witness(&k5, 1).unwrap();
        assert_eq!(c.size(), 3);
        assert_eq!(min_global_offensive_alliance(&k5, 1, &SolveOptions::default()).unwrap().optimum, 3);

        let c4 = fam(Family::Cycle(4));
        let c = thm31_witness(&c4, 2).unwrap();
        assert_eq!(c.size(), 3);
        assert_eq!(min_global_offensive_alliance(&c4, 2, &SolveOptions::default()).unwrap().optimum, 2);

        for n in 2..9usize {
            let kn = fam(Family::Complete(n));
            for r in (3 - n as i64)..=(n as i64 - 1) {
                if (n as i64 + r - 1) % 2 == 0 {
                    assert_eq!(thm31_witness(&kn, r).unwrap().size() as i64, crate::bounds::kn_formula(n, r).unwrap());
                }
            }
        }
        assert!(thm31_witness(&c4, 3).is_err());
    }

    #[test]
    fn thm32_examples() {
        let c6 = fam(Family::Cycle(6));
        let c = thm32_witness(&c6, 1, &set(6, &[0, 3])).unwrap();
        assert!(c.size() <= 4 && c.report.holds);

        let k5 = fam(Family::Complete(5));
        let c = thm32_witness(&k5, 1, &set(5, &[0])).unwrap();
        assert_eq!(c.size(), 3);
        assert_eq!(c.witness.to_vec(), vec![0, 1, 3]);

        let full = thm32_witness(&c6, 2, &VertexSet::full(6)).unwrap();
        assert!(full.witness.is_full());

        assert!(matches!(thm32_witness(&c6, 1, &set(6, &[0])), Err(Error::Precondition(_))));
    }

    #[test]
    fn thm32_with_optimal_h_meets_kdom_bound() {
        for f in [Family::Petersen, Family::Cycle(7), Family::Prism(4), Family::Hypercube(3)] {
            let g = fam(f);
            for r in 1..=g.min_degree() as i64 {
                let h = min_k_dominating(&g, r as usize, &SolveOptions::default()).unwrap();
                let c = thm32_witness(&g, r, &h.witness).unwrap();
                assert!(c.size() as i64 <= crate::bounds::floor_half((h.optimum + g.n()) as i64));
            }
        }
    }

    #[test]
    fn local_cut_terminates_within_m_swaps() {
        let g = fam(Family::RandomRegular { n: 12, d: 4, seed: 9 });
        let cut = local_max_cut(&g, &VertexSet::full(12));
        assert!(cut.swaps <= g.m());
        assert!(cut.x.len() <= cut.y.len());
        for v in 0..12 {
            let (own, other) = if cut.x.contains(v) { (&cut.x, &cut.y) } else { (&cut.y, &cut.x) };
            assert!(g.degree_in(v, other) >= g.degree_in(v, own));
        }
    }

    #[test]
    fn independent_complement_examples() {
        let c6 = fam(Family::Cycle(6));
        let c = independent_complement_witness(&c6, 1).unwrap();
        assert_eq!(c.witness.to_vec(), vec![1, 3, 5]);
        for n in 3..8 {
            let kn = fam(Family::Complete(n));
            assert_eq!(independent_complement_witness(&kn, n as i64 - 1).unwrap().size(), n - 1);
        }
        let pet = fam(Family::Petersen);
        let c = independent_complement_witness(&pet, 1).unwrap();
        assert!((6..=7).contains(&c.size()));
        assert!(independent_complement_witness(&c6, 3).is_err());
    }
}
