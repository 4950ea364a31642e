use crate::graph::{Graph, Triangle};

/// Any one triangle, or `None`.
///
/// Edges are oriented from lower to higher (degree, id) rank; every triangle
/// is then found exactly once as a path `u → v → w` closed by `u → w`, and the
/// work is `O(m^1.5)`.
pub fn detect_triangle(g: &Graph) -> Option<Triangle> {
    let n = g.node_count();
    let rank = |v: usize| (g.degree(v), v);
    let out: Vec<Vec<usize>> = (0..n)
        .map(|u| g.neighbors(u).iter().copied().filter(|&v| rank(v) > rank(u)).collect())
        .collect();
    let mut mark = vec![usize::MAX; n];
    for u in 0..n {
        for &v in &out[u] {
            mark[v] = u;
        }
        for &v in &out[u] {
            if let Some(&w) = out[v].iter().find(|&&w| mark[w] == u) {
                return Triangle::new(u, v, w);
            }
        }
    }
    None
}

/// Up to `cap` distinct triangles, in two phases split at degree `√m`:
/// first every triangle through a light node (reported from its smallest
/// light corner), then the triangles among heavy nodes only.
pub fn list_all_triangles(g: &Graph, cap: usize) -> Vec<Triangle> {
    let mut out = Vec::new();
    if cap == 0 {
        return out;
    }
    let threshold = (g.edge_count() as f64).sqrt();
    let heavy: Vec<bool> = (0..g.node_count()).map(|v| g.degree(v) as f64 > threshold).collect();

    for v in (0..g.node_count()).filter(|&v| !heavy[v]) {
        let nb = g.neighbors(v);
        let owns = |x: usize| heavy[x] || x > v;
        for (ai, &a) in nb.iter().enumerate() {
            if !owns(a) {
                continue;
            }
            for &b in &nb[ai + 1..] {
                if owns(b) && g.has_edge(a, b) {
                    out.push(Triangle::new(v, a, b).unwrap());
                    if out.len() == cap {
                        return out;
                    }
                }
            }
        }
    }

    let hubs: Vec<usize> = (0..g.node_count()).filter(|&v| heavy[v]).collect();
    for &a in &hubs {
        let nb: Vec<usize> = g.neighbors(a).iter().copied().filter(|&x| heavy[x] && x > a).collect();
        for (bi, &b) in nb.iter().enumerate() {
            for &c in &nb[bi + 1..] {
                if g.has_edge(b, c) {
                    out.push(Triangle::new(a, b, c).unwrap());
                    if out.len() == cap {
                        return out;
                    }
                }
            }
        }
    }
    out
}
