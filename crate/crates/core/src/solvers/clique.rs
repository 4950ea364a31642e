use super::list_all_triangles;
use crate::graph::Graph;

pub fn is_4clique(g: &Graph, q: [usize; 4]) -> bool {
    (0..4).all(|a| (a + 1..4).all(|b| q[a] != q[b] && g.has_edge(q[a], q[b])))
}

/// A 4-clique (sorted node ids), found by extending each triangle with a
/// common neighbour of its three corners.
pub fn detect_4clique_bruteforce(g: &Graph) -> Option<[usize; 4]> {
    for t in list_all_triangles(g, usize::MAX) {
        let [a, b, c] = t.nodes();
        let w = g
            .neighbors(a)
            .iter()
            .copied()
            .find(|&w| w != b && w != c && g.has_edge(b, w) && g.has_edge(c, w));
        if let Some(w) = w {
            let mut q = [a, b, c, w];
            q.sort_unstable();
            return Some(q);
        }
    }
    None
}
