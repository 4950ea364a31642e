//! 4-clique detection with one 6SUM query over Z₃ᵗ.
//!
//! Node `a` gets the indicator vector `x_a` of its design set, and edge
//! `(a, b)` becomes `x_a + x_b`. Six edges sum to zero exactly when every node
//! they touch is touched a multiple of three times, which for six distinct
//! edges means a 4-clique.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::prand::{build_design, design_to_label, DesignFamily, DesignStrategy, Label};
use crate::solvers::is_4clique;
use crate::z3::Z3Vector;

#[derive(Clone, Copy, Debug)]
pub struct CliqueConfig {
    pub c: f64,
    pub strategy: DesignStrategy,
    pub seed: u64,
}

impl Default for CliqueConfig {
    fn default() -> Self {
        CliqueConfig {
            c: 23.0,
            strategy: DesignStrategy::Polynomial,
            seed: 0,
        }
    }
}

pub type SixSumSolver<'a> = dyn FnMut(&[Z3Vector]) -> Result<Option<[usize; 6]>> + 'a;

/// Ternary design labels, one per node. Fails unless pairwise intersections
/// stay below a 1/11 fraction of the set size.
pub fn clique_labels(g: &Graph, config: &CliqueConfig) -> Result<(DesignFamily, Vec<Z3Vector>)> {
    let family = build_design(g.node_count().max(2), config.c, config.strategy, config.seed)?;
    if 11 * family.intersection_bound() >= family.set_size() {
        return Err(Error::param(format!(
            "design intersection bound {} is not below 1/11 of set size {}",
            family.intersection_bound(),
            family.set_size()
        )));
    }
    let labels = (0..g.node_count())
        .map(|a| match design_to_label(&family, a, 3)? {
            Label::Ternary(v) => Ok(v),
            _ => unreachable!("base 3 gives ternary labels"),
        })
        .collect::<Result<_>>()?;
    Ok((family, labels))
}

/// One vector per edge `u < v`, in `Graph::edges` order.
pub fn edge_vectors(g: &Graph, labels: &[Z3Vector]) -> (Vec<Z3Vector>, Vec<(usize, usize)>) {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let values = edges.iter().map(|&(u, v)| &labels[u] + &labels[v]).collect();
    (values, edges)
}

/// The four nodes behind six edges, if each is touched exactly three times.
pub fn decode_quadruple(edges: [(usize, usize); 6]) -> Result<[usize; 4]> {
    let mut touched: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    touched.sort_unstable();
    let mut nodes = touched.clone();
    nodes.dedup();
    for &a in &nodes {
        let k = touched.iter().filter(|&&x| x == a).count();
        if k == 6 {
            return Err(Error::Soundness(format!("node {a} touched by all six edges")));
        }
        if k != 3 {
            return Err(Error::Soundness(format!("node {a} touched {k} times")));
        }
    }
    nodes
        .try_into()
        .map_err(|n: Vec<usize>| Error::Soundness(format!("six edges span {} nodes", n.len())))
}

/// A 4-clique of `g`, found through one 6SUM call.
pub fn detect_4clique_via_6sum(
    g: &Graph,
    solver: &mut SixSumSolver,
    config: &CliqueConfig,
) -> Result<Option<[usize; 4]>> {
    if g.edge_count() < 6 {
        return Ok(None);
    }
    let (_, labels) = clique_labels(g, config)?;
    let (values, edges) = edge_vectors(g, &labels);
    let Some(idx) = solver(&values)? else {
        return Ok(None);
    };
    let mut sorted = idx;
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) || sorted[5] >= edges.len() {
        return Err(Error::Soundness(format!(
            "6SUM witness {idx:?} does not name six distinct edges"
        )));
    }
    let quad = decode_quadruple(idx.map(|i| edges[i]))?;
    if !is_4clique(g, quad) {
        return Err(Error::Soundness(format!("nodes {quad:?} are not a 4-clique")));
    }
    Ok(Some(quad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::gen_graph;
    use crate::solvers::{detect_4clique_bruteforce, solve_6sum_z3};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn solver(v: &[Z3Vector]) -> Result<Option<[usize; 6]>> {
        Ok(solve_6sum_z3(v))
    }

    #[test]
    fn examples() {
        let k4 = Graph::from_edges(5, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        let q = detect_4clique_via_6sum(&k4, &mut solver, &CliqueConfig::default()).unwrap();
        assert_eq!(q, Some([1, 2, 3, 4]));

        let k3_pendants = Graph::from_edges(7, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5), (5, 6)]);
        let q = detect_4clique_via_6sum(&k3_pendants, &mut solver, &CliqueConfig::default()).unwrap();
        assert_eq!(q, None);
    }

    #[test]
    fn weak_designs_are_rejected() {
        let g = Graph::from_edges(4, [(0, 1)]);
        let config = CliqueConfig {
            c: 5.0,
            ..Default::default()
        };
        assert!(clique_labels(&g, &config).is_err());
    }

    /// Sums of up to twelve labels (six edges) vanish only when every label
    /// occurs a multiple of three times.
    #[test]
    fn zero_sums_need_multiplicities_divisible_by_three() {
        let g = Graph::from_edges(8, []);
        let (_, labels) = clique_labels(&g, &CliqueConfig::default()).unwrap();
        let m = labels.len();
        let check = |picks: &[usize]| {
            let mut sum = Z3Vector::zero(labels[0].len());
            let mut counts = vec![0; m];
            for &p in picks {
                sum.add_assign(&labels[p]);
                counts[p] += 1;
            }
            assert_eq!(sum.is_zero(), counts.iter().all(|c| c % 3 == 0), "{picks:?}");
        };
        // Every multiset of six labels.
        let mut picks = [0usize; 6];
        loop {
            check(&picks);
            let Some(p) = (0..6).rev().find(|&p| picks[p] + 1 < m) else {
                break;
            };
            picks[p] += 1;
            for q in p + 1..6 {
                picks[q] = picks[p];
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20_000 {
            let k = rng.gen_range(1..=12);
            let picks: Vec<usize> = (0..k).map(|_| rng.gen_range(0..m)).collect();
            check(&picks);
        }
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for t in 0..60 {
            let n = rng.gen_range(4..24);
            let max_edges = n * (n - 1) / 2;
            let m = rng.gen_range(0..=max_edges.min(3 * n));
            let g = gen_graph(n, m, 0, t).unwrap();
            let got = detect_4clique_via_6sum(&g, &mut solver, &CliqueConfig::default()).unwrap();
            assert_eq!(got.is_some(), detect_4clique_bruteforce(&g).is_some());
        }
    }
}
