use std::path::Path;

use anyhow::{bail, Result};
use triweb::solvers::{
    detect_4clique_bruteforce, detect_triangle, list_all_triangles, solve_3sum_quadratic, solve_3xor_quadratic,
    solve_3xor_wht, solve_6sum_z3, solve_c3xor_bruteforce,
};

use crate::common::{join, load_array, load_graph, load_ints, load_vectors, load_z3, triangle_labels, Outcome};

pub const SOLVERS: &[&str] = &[
    "3sum.quad",
    "3xor.quad",
    "3xor.wht",
    "c3xor.brute",
    "tri.detect",
    "tri.listall",
    "4clique.brute",
    "6sum.mitm",
];

pub struct SolveOptions {
    /// Listing cap for `tri.listall`.
    pub cap: usize,
    /// Width cap for `3xor.wht`.
    pub wht_cap: usize,
}

/// Lines to print; the first is the verdict.
pub fn run(name: &str, input: &Path, opts: &SolveOptions) -> Result<(Outcome, Vec<String>)> {
    let yes = |rest: String| (Outcome::Yes, vec![format!("YES {rest}").trim_end().to_string()]);
    let no = || (Outcome::No, vec!["NO".to_string()]);
    Ok(match name {
        "3sum.quad" => match solve_3sum_quadratic(&load_ints(input)?) {
            Some(w) => yes(join(w.indices())),
            None => no(),
        },
        "3xor.quad" => match solve_3xor_quadratic(load_vectors(input)?.vectors()) {
            Some(w) => yes(join(w.indices())),
            None => no(),
        },
        "3xor.wht" => {
            let s = load_vectors(input)?;
            match solve_3xor_wht(s.vectors(), s.width(), opts.wht_cap)?.witness {
                Some(w) => yes(join(w.indices())),
                None => no(),
            }
        }
        "c3xor.brute" => match solve_c3xor_bruteforce(&load_array(input)?) {
            Some(w) => yes(format!("{} {}", w.i, w.j)),
            None => no(),
        },
        "tri.detect" => {
            let g = load_graph(input)?;
            match detect_triangle(&g) {
                Some(t) => yes(triangle_labels(&g, &t)),
                None => no(),
            }
        }
        "tri.listall" => {
            let g = load_graph(input)?;
            let all = list_all_triangles(&g, opts.cap);
            if all.is_empty() {
                no()
            } else {
                let mut lines = vec![format!("YES {}", all.len())];
                lines.extend(all.iter().map(|t| triangle_labels(&g, t)));
                (Outcome::Yes, lines)
            }
        }
        "4clique.brute" => {
            let g = load_graph(input)?;
            match detect_4clique_bruteforce(&g) {
                Some(q) => {
                    let mut l = q.map(|v| g.label(v));
                    l.sort_unstable();
                    yes(join(l))
                }
                None => no(),
            }
        }
        "6sum.mitm" => match solve_6sum_z3(load_z3(input)?.elements()) {
            Some(idx) => yes(join(idx)),
            None => no(),
        },
        other => bail!("unknown solver {other:?}; known: {}", SOLVERS.join(", ")),
    })
}
