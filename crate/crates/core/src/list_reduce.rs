//! Listing up to `t` triangles with nothing but a triangle detector.
//!
//! Stage one lists every triangle through a node of degree above `δm` and
//! deletes those nodes. Stage two blows the rest up into a tripartite graph
//! with three copies of every node, so each triangle appears six times, once
//! per choice of which copy plays which corner. Stage three splits each part
//! in two by one generator bit per node, giving eight subgraphs that share
//! out the triangles exactly and each hold at most `(1/4 + γ)` of the edges;
//! children the detector calls triangle-free are dropped, and no more than
//! `6t` live subproblems are kept per level.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::BitString;
use crate::detect_reduce::Answer;
use crate::error::{Error, Result};
use crate::graph::{Graph, Triangle, TripartiteGraph};
use crate::prand::{small_bias_bits, SmallBiasSpec};
use crate::solvers::{detect_triangle, list_all_triangles};

/// A triangle detector: any graph in, a triangle, a bare yes, or no out.
pub type Detector<'a> = dyn FnMut(&Graph) -> Result<Answer<Triangle>> + 'a;

/// The baseline detector wrapped as a [`Detector`].
pub fn oracle_detector(g: &Graph) -> Result<Answer<Triangle>> {
    Ok(Answer::from_option(detect_triangle(g)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ListingParams {
    /// Nodes of degree above `delta · m` are handled directly.
    pub delta: f64,
    /// Children may hold up to `(1/4 + gamma)` of their parent's edges.
    pub gamma: f64,
    /// Closeness of the generator's 4-wise marginals to uniform.
    pub alpha: f64,
    /// Subproblems with at most this many edges are solved by brute force.
    pub base_edges: usize,
    /// Independence order of the generator.
    pub k: u32,
    /// Generator seeds tried, in order, before switching to random splits.
    pub seed_tries: u64,
    /// Random splits tried after the generator seeds run out.
    pub random_tries: u32,
    /// Seeds the random fallback.
    pub seed: u64,
}

impl Default for ListingParams {
    fn default() -> Self {
        let gamma = 0.05;
        ListingParams {
            delta: gamma,
            gamma,
            alpha: gamma * gamma / 64.0,
            base_edges: 64,
            k: 4,
            seed_tries: 4096,
            random_tries: 64,
            seed: 0,
        }
    }
}

impl ListingParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma < 0.25) {
            return Err(Error::param(format!("gamma {} outside (0, 1/4)", self.gamma)));
        }
        if !(self.delta > 0.0) || !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::param("delta and alpha must be positive"));
        }
        if self.base_edges < 3 {
            return Err(Error::param("base case needs at least 3 edges"));
        }
        Ok(())
    }
}

/// Triangles through high-degree nodes, and the graph without them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage1 {
    pub triangles: Vec<Triangle>,
    /// Same node ids as the input; high-degree nodes are left isolated.
    pub residual: Graph,
    pub high: Vec<usize>,
}

/// Every triangle through a node of degree `> delta · m`, at most `t` of them.
pub fn stage1_high_degree(g: &Graph, delta: f64, t: usize) -> Stage1 {
    let threshold = delta * g.edge_count() as f64;
    let high: Vec<usize> = (0..g.node_count())
        .filter(|&v| g.degree(v) as f64 > threshold)
        .collect();
    let triangles = triangles_through(g, &high, t);
    let is_high = {
        let mut mark = vec![false; g.node_count()];
        for &h in &high {
            mark[h] = true;
        }
        mark
    };
    let residual = Graph::from_edges(g.node_count(), g.edges().filter(|&(u, v)| !is_high[u] && !is_high[v]));
    Stage1 {
        triangles,
        residual,
        high,
    }
}

/// Distinct triangles containing at least one of `hubs`, up to `cap`, by
/// testing every edge against each hub's adjacency.
fn triangles_through(g: &Graph, hubs: &[usize], cap: usize) -> Vec<Triangle> {
    let mut found = BTreeSet::new();
    'outer: for &h in hubs {
        for (a, b) in g.edges() {
            if a != h && b != h && g.has_edge(a, h) && g.has_edge(b, h) {
                found.insert(Triangle::new(h, a, b).expect("distinct corners"));
                if found.len() >= cap {
                    break 'outer;
                }
            }
        }
    }
    found.into_iter().collect()
}

/// Three copies of `V`; copy `i` of node `v` is `i·n + v`. Every edge `{a, b}`
/// becomes the six edges `(a_i, b_j)`, `i ≠ j`.
pub fn stage2_tripartite(g: &Graph) -> TripartiteGraph {
    let n = g.node_count();
    let mut edges = Vec::with_capacity(6 * g.edge_count());
    for (a, b) in g.edges() {
        for i in 0..3 {
            for j in (0..3).filter(|&j| j != i) {
                edges.push((i * n + a, j * n + b));
            }
        }
    }
    TripartiteGraph::new(Graph::from_edges(3 * n, edges), [0..n, n..2 * n, 2 * n..3 * n])
        .expect("copies of an edge join different parts")
}

/// How a split was chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionChoice {
    /// Generator seed, the first in enumeration order that balanced.
    Seed(u64),
    /// Index of a truly random split, used once the seed budget ran out.
    Random(u32),
}

impl fmt::Display for PartitionChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionChoice::Seed(s) => write!(f, "{s}"),
            PartitionChoice::Random(i) => write!(f, "r{i}"),
        }
    }
}

/// A split of a tripartite edge set into eight subgraphs. Child `c` takes the
/// nodes of part `p` whose bit equals bit `p` of `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub children: [Vec<(usize, usize)>; 8],
    pub choice: PartitionChoice,
    nodes: Vec<usize>,
    bits: BitString,
}

impl Partition {
    /// The side of `v`, if `v` is touched by the split edges.
    pub fn side(&self, v: usize) -> Option<bool> {
        self.nodes.binary_search(&v).ok().map(|i| self.bits.get(i))
    }

    /// The child holding a triangle whose corners lie in distinct parts.
    pub fn child_of(&self, t: &Triangle, part_of: impl Fn(usize) -> usize) -> Option<usize> {
        let mut c = 0;
        for v in t.nodes() {
            if self.side(v)? {
                c |= 1 << part_of(v);
            }
        }
        Some(c)
    }

    pub fn child_sizes(&self) -> [usize; 8] {
        std::array::from_fn(|c| self.children[c].len())
    }
}

fn part_index(parts: &[Range<usize>; 3], v: usize) -> usize {
    parts
        .iter()
        .position(|p| p.contains(&v))
        .expect("node outside every part")
}

/// The two children an edge between parts `pu`, `pv` with sides `bu`, `bv` goes to.
fn children_of_edge(pu: usize, bu: bool, pv: usize, bv: bool) -> [usize; 2] {
    let base = (bu as usize) << pu | (bv as usize) << pv;
    let free = 3 - pu - pv;
    [base, base | 1 << free]
}

/// Generator for `n` bits; if the requested closeness would need a field
/// beyond 32 bits, the closest supported closeness is used instead.
fn generator_spec(n: usize, k: u32, alpha: f64) -> Result<SmallBiasSpec> {
    SmallBiasSpec::new(n, k, alpha).or_else(|_| {
        let loosest = n.max(1) as f64 * 2f64.powf(k as f64 / 2.0) / 2f64.powi(32) * 1.000_001;
        log::warn!("generator for {n} bits: closeness {alpha} loosened to {loosest}");
        SmallBiasSpec::new(n, k, loosest.min(1.0))
    })
}

/// Split a tripartite edge set so that every child keeps at most
/// `(1/4 + γ)` of the edges, trying generator seeds in order.
pub fn partition_edges(
    edges: &[(usize, usize)],
    parts: &[Range<usize>; 3],
    params: &ListingParams,
    salt: u64,
) -> Result<Partition> {
    let mut nodes: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    nodes.sort_unstable();
    nodes.dedup();
    let local: Vec<(usize, usize, usize, usize)> = edges
        .iter()
        .map(|&(u, v)| {
            let iu = nodes.binary_search(&u).unwrap();
            let iv = nodes.binary_search(&v).unwrap();
            (iu, part_index(parts, u), iv, part_index(parts, v))
        })
        .collect();
    let bound = (0.25 + params.gamma) * edges.len() as f64;
    let balanced = |bits: &BitString| {
        let mut counts = [0usize; 8];
        for &(iu, pu, iv, pv) in &local {
            for c in children_of_edge(pu, bits.get(iu), pv, bits.get(iv)) {
                counts[c] += 1;
            }
        }
        counts.iter().all(|&c| c as f64 <= bound)
    };
    let finish = |bits: BitString, choice: PartitionChoice| {
        let mut children: [Vec<(usize, usize)>; 8] = Default::default();
        for (&(u, v), &(iu, pu, iv, pv)) in edges.iter().zip(&local) {
            for c in children_of_edge(pu, bits.get(iu), pv, bits.get(iv)) {
                children[c].push((u, v));
            }
        }
        Partition {
            children,
            choice,
            nodes: nodes.clone(),
            bits,
        }
    };

    let spec = generator_spec(nodes.len(), params.k, params.alpha)?;
    let space = if spec.seed_bits() >= 64 {
        u64::MAX
    } else {
        1u64 << spec.seed_bits()
    };
    let tries = params.seed_tries.min(space);
    for seed in 0..tries {
        let bits = small_bias_bits(&spec, seed)?;
        if balanced(&bits) {
            return Ok(finish(bits, PartitionChoice::Seed(seed)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    for i in 0..params.random_tries {
        let bits = BitString::random(nodes.len(), &mut rng);
        if balanced(&bits) {
            log::debug!("partition of {} edges fell back to random split {i}", edges.len());
            return Ok(finish(bits, PartitionChoice::Random(i)));
        }
    }

    Err(Error::SeedsExhausted {
        seeds: tries,
        random: params.random_tries,
    })
}

/// [`partition_edges`] on a whole tripartite graph.
pub fn balanced_partition(h: &TripartiteGraph, params: &ListingParams) -> Result<Partition> {
    let edges: Vec<(usize, usize)> = h.graph().edges().collect();
    partition_edges(&edges, h.parts(), params, 0)
}

/// One line of the recursion trace: `depth edges detector_result seed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRow {
    pub depth: usize,
    pub edges: usize,
    /// `Some(true)` triangle, `Some(false)` none, `None` certified by the parent.
    pub detector: Option<bool>,
    /// The split that produced this subproblem; `None` at the root.
    pub seed: Option<PartitionChoice>,
}

impl fmt::Display for TraceRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let result = match self.detector {
            Some(true) => "yes",
            Some(false) => "no",
            None => "inherited",
        };
        match self.seed {
            Some(s) => write!(f, "{} {} {} {}", self.depth, self.edges, result, s),
            None => write!(f, "{} {} {} -", self.depth, self.edges, result),
        }
    }
}

/// One split performed during stage three.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionRecord {
    pub depth: usize,
    pub parent_edges: usize,
    pub child_edges: [usize; 8],
    pub choice: PartitionChoice,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ListingStats {
    pub stage1_triangles: usize,
    pub tripartite_edges: usize,
    pub detector_calls: usize,
    /// Live subproblems at each depth, after truncation.
    pub live_per_depth: Vec<usize>,
    /// Largest subproblem, in edges, at each depth.
    pub max_edges_per_depth: Vec<usize>,
    pub partitions: Vec<PartitionRecord>,
    pub trace: Vec<TraceRow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Listing {
    pub triangles: Vec<Triangle>,
    pub stats: ListingStats,
}

struct Subproblem {
    edges: Vec<(usize, usize)>,
    /// A triangle known to lie in this subproblem, in tripartite ids.
    cert: Option<Triangle>,
}

/// At least `min(t', z(H))` distinct triangles of `h` (truncated to `t'`),
/// using only `detector` to prune. Triangles use the node ids of `h`.
pub fn stage3_recurse(
    h: &TripartiteGraph,
    t_prime: usize,
    detector: &mut Detector<'_>,
    params: &ListingParams,
    stats: &mut ListingStats,
) -> Result<Vec<Triangle>> {
    params.validate()?;
    let parts = h.parts().clone();
    let part_of = |v: usize| part_index(&parts, v);
    let mut out: BTreeSet<Triangle> = BTreeSet::new();
    if t_prime == 0 {
        return Ok(Vec::new());
    }
    let root_edges: Vec<(usize, usize)> = h.graph().edges().collect();
    stats.tripartite_edges = root_edges.len();
    stats.detector_calls += 1;
    let root = detector(h.graph())?;
    stats.trace.push(TraceRow {
        depth: 0,
        edges: root_edges.len(),
        detector: Some(root.is_yes()),
        seed: None,
    });
    let cert = match root {
        Answer::No => return Ok(Vec::new()),
        Answer::Found(t) => Some(t),
        Answer::Yes => None,
    };
    let mut live = vec![Subproblem {
        edges: root_edges,
        cert,
    }];
    let mut depth = 0;
    let mut salt = 0u64;
    while !live.is_empty() && out.len() < t_prime {
        stats.live_per_depth.push(live.len());
        stats
            .max_edges_per_depth
            .push(live.iter().map(|s| s.edges.len()).max().unwrap_or(0));
        let mut next = Vec::new();
        for sp in live {
            if out.len() >= t_prime {
                break;
            }
            let need = t_prime - out.len();
            let (g, map) = Graph::compact_from_edges(&sp.edges);
            let to_host = |t: &Triangle| t.map(|x| map[x]).expect("compact ids are distinct");
            if sp.edges.len() <= params.base_edges {
                out.extend(list_all_triangles(&g, need).iter().map(to_host));
                continue;
            }
            // nodes heavy inside this subproblem are handled directly
            let threshold = params.delta * g.edge_count() as f64;
            let heavy: Vec<usize> = (0..g.node_count())
                .filter(|&v| g.degree(v) as f64 > threshold)
                .collect();
            let mut residual = sp.edges.clone();
            if !heavy.is_empty() {
                out.extend(triangles_through(&g, &heavy, need).iter().map(to_host));
                let heavy_host: BTreeSet<usize> = heavy.iter().map(|&v| map[v]).collect();
                residual.retain(|(u, v)| !heavy_host.contains(u) && !heavy_host.contains(v));
                if out.len() >= t_prime {
                    break;
                }
            }
            if residual.len() <= params.base_edges {
                let (rg, rmap) = Graph::compact_from_edges(&residual);
                let need = t_prime - out.len();
                out.extend(
                    list_all_triangles(&rg, need)
                        .iter()
                        .map(|t| t.map(|x| rmap[x]).unwrap()),
                );
                continue;
            }
            salt += 1;
            let split = partition_edges(&residual, &parts, params, salt)?;
            stats.partitions.push(PartitionRecord {
                depth,
                parent_edges: residual.len(),
                child_edges: split.child_sizes(),
                choice: split.choice,
            });
            let cert_child = sp.cert.and_then(|t| split.child_of(&t, part_of));
            for (c, child) in split.children.iter().enumerate() {
                if child.is_empty() {
                    continue;
                }
                let cert = if cert_child == Some(c) {
                    stats.trace.push(TraceRow {
                        depth: depth + 1,
                        edges: child.len(),
                        detector: None,
                        seed: Some(split.choice),
                    });
                    sp.cert
                } else {
                    let (cg, cmap) = Graph::compact_from_edges(child);
                    stats.detector_calls += 1;
                    let answer = detector(&cg)?;
                    stats.trace.push(TraceRow {
                        depth: depth + 1,
                        edges: child.len(),
                        detector: Some(answer.is_yes()),
                        seed: Some(split.choice),
                    });
                    match answer {
                        Answer::No => continue,
                        Answer::Yes => None,
                        Answer::Found(t) => {
                            let t = t.map(|x| cmap[x]).expect("compact ids are distinct");
                            Some(t)
                        }
                    }
                };
                next.push(Subproblem {
                    edges: child.clone(),
                    cert,
                });
            }
        }
        // each live subproblem is worth at least one more triangle
        next.truncate(t_prime.saturating_sub(out.len()));
        live = next;
        depth += 1;
    }
    Ok(out.into_iter().take(t_prime).collect())
}

/// `min(t, z)` distinct triangles of `g`, found with `detector` as the only
/// source of information about the graph below the brute-force size.
pub fn list_triangles(g: &Graph, t: usize, detector: &mut Detector<'_>, params: &ListingParams) -> Result<Listing> {
    if t == 0 {
        return Err(Error::param("t must be at least 1"));
    }
    params.validate()?;
    let mut stats = ListingStats::default();
    let s1 = stage1_high_degree(g, params.delta, t);
    stats.stage1_triangles = s1.triangles.len();
    let mut triangles = s1.triangles;
    if triangles.len() < t {
        let h = stage2_tripartite(&s1.residual);
        let rest = t - triangles.len();
        let lifted = stage3_recurse(&h, 6 * rest, detector, params, &mut stats)?;
        let n = g.node_count();
        let projected: BTreeSet<Triangle> = lifted
            .iter()
            .map(|tr| tr.map(|x| x % n).expect("a lifted triangle uses three distinct nodes"))
            .collect();
        triangles.extend(projected.into_iter().take(rest));
    }
    triangles.truncate(t);
    Ok(Listing { triangles, stats })
}
