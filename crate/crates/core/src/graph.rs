//! Simple undirected graphs over dense node ids, plus the tripartite view used
//! by the listing reduction and the convolution-3XOR graph.

use std::collections::BTreeSet;
use std::ops::Range;

use crate::error::{Error, Result};

/// Undirected simple graph with sorted adjacency lists.
///
/// Node ids are dense (`0..node_count`). Each node carries the label it had
/// in the input it was built from; file I/O and user-facing output use labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    labels: Vec<u64>,
    edge_count: usize,
}

/// Repairs made while normalizing an edge list.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NormalizeReport {
    pub self_loops: usize,
    pub duplicate_edges: usize,
}

impl NormalizeReport {
    pub fn is_clean(&self) -> bool {
        self.self_loops == 0 && self.duplicate_edges == 0
    }
}

/// Build a graph from labelled endpoints. Self-loops and repeated edges are
/// dropped and counted; only labels that occur in some kept edge become
/// nodes, numbered in increasing label order.
pub fn normalize_graph(edges: &[(u64, u64)]) -> (Graph, NormalizeReport) {
    let mut report = NormalizeReport::default();
    let mut set = BTreeSet::new();
    for &(u, v) in edges {
        if u == v {
            report.self_loops += 1;
            continue;
        }
        if !set.insert((u.min(v), u.max(v))) {
            report.duplicate_edges += 1;
        }
    }
    let mut labels: Vec<u64> = set.iter().flat_map(|&(u, v)| [u, v]).collect();
    labels.sort_unstable();
    labels.dedup();
    let index = |l: u64| labels.binary_search(&l).unwrap();
    let dense: Vec<(usize, usize)> = set.iter().map(|&(u, v)| (index(u), index(v))).collect();
    let mut g = Graph::from_edges(labels.len(), dense);
    g.labels = labels;
    if !report.is_clean() {
        log::warn!(
            "normalized edge list: dropped {} self-loops and {} duplicate edges",
            report.self_loops,
            report.duplicate_edges
        );
    }
    (g, report)
}

impl Graph {
    /// Graph on `n` dense nodes labelled `0..n`. Loops and duplicates are
    /// dropped silently; isolated nodes are kept.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) outside {n} nodes");
            if u != v {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
        let mut edge_count = 0;
        for list in adjacency.iter_mut() {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Graph {
            adjacency,
            labels: (0..n as u64).collect(),
            edge_count: edge_count / 2,
        }
    }

    pub fn empty() -> Graph {
        Graph::from_edges(0, [])
    }

    pub fn with_labels(mut self, labels: Vec<u64>) -> Result<Graph> {
        if labels.len() != self.node_count() {
            return Err(Error::param("label count differs from node count"));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn label(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn labelled_edges(&self) -> Vec<(u64, u64)> {
        self.edges().map(|(u, v)| (self.labels[u], self.labels[v])).collect()
    }

    pub fn contains_triangle(&self, t: &Triangle) -> bool {
        let [a, b, c] = t.nodes();
        c < self.node_count() && self.has_edge(a, b) && self.has_edge(b, c) && self.has_edge(a, c)
    }

    /// Subgraph on the given edges, compacted to the nodes they touch. Returns
    /// the subgraph and the map from its node ids back to ids of `self`.
    pub fn compact_from_edges(edges: &[(usize, usize)]) -> (Graph, Vec<usize>) {
        let mut nodes: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        nodes.sort_unstable();
        nodes.dedup();
        let index = |x: usize| nodes.binary_search(&x).unwrap();
        let g = Graph::from_edges(nodes.len(), edges.iter().map(|&(u, v)| (index(u), index(v))));
        (g, nodes)
    }
}

/// A triangle as its three node ids in increasing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangle([usize; 3]);

impl Triangle {
    /// `None` unless the three nodes are distinct.
    pub fn new(a: usize, b: usize, c: usize) -> Option<Triangle> {
        let mut n = [a, b, c];
        n.sort_unstable();
        (n[0] != n[1] && n[1] != n[2]).then_some(Triangle(n))
    }

    pub fn nodes(&self) -> [usize; 3] {
        self.0
    }

    pub fn map(&self, f: impl Fn(usize) -> usize) -> Option<Triangle> {
        Triangle::new(f(self.0[0]), f(self.0[1]), f(self.0[2]))
    }

    /// Recognize three distinct edges in which every endpoint occurs twice.
    pub fn from_edges(edges: [(usize, usize); 3]) -> Option<Triangle> {
        let mut norm = edges.map(|(u, v)| (u.min(v), u.max(v)));
        norm.sort_unstable();
        if norm[0] == norm[1] || norm[1] == norm[2] || norm.iter().any(|&(u, v)| u == v) {
            return None;
        }
        let mut nodes: Vec<usize> = norm.iter().flat_map(|&(u, v)| [u, v]).collect();
        nodes.sort_unstable();
        let distinct = [nodes[0], nodes[2], nodes[4]];
        let twice = nodes.chunks(2).all(|c| c[0] == c[1]);
        if !twice {
            return None;
        }
        Triangle::new(distinct[0], distinct[1], distinct[2])
    }
}

/// A graph whose nodes split into three contiguous id ranges with no edge
/// inside a range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripartiteGraph {
    graph: Graph,
    parts: [Range<usize>; 3],
}

impl TripartiteGraph {
    pub fn new(graph: Graph, parts: [Range<usize>; 3]) -> Result<Self> {
        if parts[0].start != 0
            || parts[0].end != parts[1].start
            || parts[1].end != parts[2].start
            || parts[2].end != graph.node_count()
        {
            return Err(Error::Invariant("parts must tile the node range".into()));
        }
        let t = TripartiteGraph { graph, parts };
        if let Some((u, v)) = t.graph.edges().find(|&(u, v)| t.part_of(u) == t.part_of(v)) {
            return Err(Error::Invariant(format!("edge ({u}, {v}) inside one part")));
        }
        Ok(t)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn parts(&self) -> &[Range<usize>; 3] {
        &self.parts
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.parts
            .iter()
            .position(|p| p.contains(&v))
            .expect("node outside every part")
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_drops_loops_and_duplicates() {
        let (g, report) = normalize_graph(&[(1, 2), (2, 1), (3, 3)]);
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.labels(), &[1, 2]);
        assert_eq!(
            report,
            NormalizeReport {
                self_loops: 1,
                duplicate_edges: 1
            }
        );
    }

    #[test]
    fn normalize_empty_and_triangle() {
        let (g, _) = normalize_graph(&[]);
        assert_eq!((g.node_count(), g.edge_count()), (0, 0));
        let (k3, r) = normalize_graph(&[(1, 2), (2, 3), (1, 3)]);
        assert!(r.is_clean());
        assert_eq!(k3.edge_count(), 3);
        assert!(k3.contains_triangle(&Triangle::new(0, 1, 2).unwrap()));
    }

    #[test]
    fn normalize_is_idempotent() {
        let (g, _) = normalize_graph(&[(10, 4), (4, 7), (7, 7), (10, 7), (4, 10), (99, 3)]);
        let (h, report) = normalize_graph(&g.labelled_edges());
        assert!(report.is_clean());
        assert_eq!(g, h);
    }

    #[test]
    fn triangle_from_edges_requires_each_node_twice() {
        assert_eq!(Triangle::from_edges([(0, 1), (2, 1), (0, 2)]), Triangle::new(0, 1, 2));
        assert_eq!(Triangle::from_edges([(0, 1), (1, 2), (2, 3)]), None);
        assert_eq!(Triangle::from_edges([(0, 1), (1, 0), (0, 1)]), None);
        assert_eq!(Triangle::new(1, 1, 2), None);
    }

    #[test]
    fn tripartite_rejects_inner_edges() {
        let g = Graph::from_edges(3, [(0, 1)]);
        assert!(TripartiteGraph::new(g.clone(), [0..1, 1..2, 2..3]).is_ok());
        assert!(TripartiteGraph::new(g, [0..2, 2..2, 2..3]).is_err());
    }
}
