//! Length reduction for 3XOR, 3XOR ↔ convolution 3XOR in both directions,
//! convolution 3SUM → 3SUM, and convolution 3XOR → triangle listing.

use std::collections::HashMap;
use std::fmt::Write as _;

use log::{debug, info};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::graph::{Graph, Triangle, TripartiteGraph};
use crate::instance::{BitVectorSet, C3xorArray};
use crate::prand::XorHashKeys;
use crate::solvers::{Witness3, WitnessC3xor};

fn lg(n: usize) -> f64 {
    (n.max(1) as f64).log2()
}

/// Output width of the length reduction: `⌈3 lg n⌉`.
pub fn reduced_width(n: usize) -> usize {
    (3.0 * lg(n)).ceil().max(1.0) as usize
}

/// Vectors after hashing. Hashing can merge values, so this is an indexed
/// multiset: position `i` is the image of input `i`.
#[derive(Clone, Debug)]
pub struct LengthReduced {
    pub vectors: Vec<BitString>,
    pub width: usize,
    /// `None` when the input was already short enough.
    pub keys: Option<XorHashKeys>,
}

/// Hash every vector down to `⌈3 lg n⌉` bits with a random linear map.
/// Solutions survive because the map is linear; new ones can appear, with
/// probability below `C(n,3) / n³ < 1/6` for a fixed solution-free input.
pub fn reduce_length(set: &BitVectorSet, seed: u64) -> Result<LengthReduced> {
    let target = reduced_width(set.len());
    if set.width() <= target {
        return Ok(LengthReduced {
            vectors: set.vectors().to_vec(),
            width: set.width(),
            keys: None,
        });
    }
    let keys = XorHashKeys::random(set.width(), target, &mut ChaCha8Rng::seed_from_u64(seed));
    let vectors = set.vectors().iter().map(|v| keys.apply(v)).collect::<Result<_>>()?;
    Ok(LengthReduced {
        vectors,
        width: target,
        keys: Some(keys),
    })
}

pub fn is_3xor_solution(vectors: &[BitString], w: &Witness3) -> bool {
    let [i, j, k] = w.indices();
    k < vectors.len() && (&(&vectors[i] ^ &vectors[j]) ^ &vectors[k]).is_zero()
}

/// Solve 3XOR on the length-reduced instance, checking each witness against
/// the original vectors and redrawing the hash when it is spurious.
/// Returns the witness and the number of hash draws used.
pub fn solve_3xor_with_length_reduction(
    set: &BitVectorSet,
    solver: &mut dyn FnMut(&[BitString]) -> Result<Option<Witness3>>,
    seed: u64,
    rounds: u32,
) -> Result<(Option<Witness3>, u32)> {
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    for round in 1..=rounds {
        let reduced = reduce_length(set, seeds.gen())?;
        match solver(&reduced.vectors)? {
            None => return Ok((None, round)),
            Some(w) if is_3xor_solution(set.vectors(), &w) => return Ok((Some(w), round)),
            Some(w) if reduced.keys.is_none() => {
                return Err(Error::Soundness(format!("solver returned non-solution {w:?}")))
            }
            Some(w) => debug!("spurious witness {w:?} after hashing, redrawing"),
        }
    }
    Err(Error::RoundsExhausted { rounds })
}

/// Elements grouped by hash value, in insertion order within each bucket.
#[derive(Clone, Debug)]
pub struct BucketIndex {
    keys: XorHashKeys,
    buckets: Vec<Vec<usize>>,
    tau: usize,
}

impl BucketIndex {
    /// `elements` are indices into `vectors`.
    pub fn new(vectors: &[BitString], elements: &[usize], keys: XorHashKeys, tau: usize) -> Result<Self> {
        let r = keys.output_width();
        if r >= 31 {
            return Err(Error::param(format!("{r} hash bits is too many buckets")));
        }
        let mut buckets = vec![Vec::new(); 1 << r];
        for &e in elements {
            buckets[keys.bucket(&vectors[e])?].push(e);
        }
        Ok(BucketIndex { keys, buckets, tau })
    }

    pub fn keys(&self) -> &XorHashKeys {
        &self.keys
    }

    pub fn bucket_count(&self) -> usize {
        self.buckets.len()
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn bucket(&self, h: usize) -> &[usize] {
        &self.buckets[h]
    }

    pub fn is_overloaded(&self, h: usize) -> bool {
        self.buckets[h].len() > self.tau
    }

    /// Elements sitting in buckets with more than `τ` elements.
    pub fn overloaded(&self) -> impl Iterator<Item = usize> + '_ {
        self.buckets.iter().filter(|b| b.len() > self.tau).flatten().copied()
    }

    /// Largest load among buckets that are not overloaded.
    pub fn max_regular_load(&self) -> usize {
        self.buckets
            .iter()
            .map(Vec::len)
            .filter(|&l| l <= self.tau)
            .max()
            .unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ViaC3xorParams {
    /// Hash to `⌊(1 - α) lg n⌋` bits.
    pub alpha: f64,
    /// Calls of the inner solver per array while it keeps answering no.
    pub amplify: u32,
    /// Error probability of one inner call, used for the reported bound.
    pub solver_error: f64,
    pub seed: u64,
}

impl Default for ViaC3xorParams {
    fn default() -> Self {
        ViaC3xorParams {
            alpha: 0.25,
            amplify: 1,
            solver_error: 0.0,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ViaC3xorReport {
    pub witness: Option<Witness3>,
    /// Set when the witness came from the direct check of overloaded elements.
    pub direct: bool,
    pub buckets: usize,
    pub tau: usize,
    pub overloaded: usize,
    pub arrays: usize,
    pub solver_calls: usize,
    /// Inner witnesses that failed verification.
    pub rejected: usize,
    /// Union bound on the chance of a missed solution.
    pub error_bound: f64,
}

pub type C3xorSolver<'a> = dyn FnMut(&C3xorArray) -> Result<Option<WitnessC3xor>> + 'a;

/// Hash width used by [`solve_3xor_via_c3xor`] for `n` elements.
pub fn bucket_bits(n: usize, alpha: f64) -> usize {
    ((1.0 - alpha) * lg(n)).floor().max(1.0) as usize
}

/// Decide 3XOR with calls to a convolution-3XOR solver.
pub fn solve_3xor_via_c3xor(
    set: &BitVectorSet,
    solver: &mut C3xorSolver,
    params: ViaC3xorParams,
) -> Result<ViaC3xorReport> {
    if !(0.0..1.0).contains(&params.alpha) {
        return Err(Error::param(format!("alpha must lie in [0, 1), got {}", params.alpha)));
    }
    let r = bucket_bits(set.len(), params.alpha);
    let keys = XorHashKeys::random(set.width(), r, &mut ChaCha8Rng::seed_from_u64(params.seed));
    solve_3xor_via_c3xor_with_keys(set, keys, solver, params)
}

pub fn solve_3xor_via_c3xor_with_keys(
    set: &BitVectorSet,
    keys: XorHashKeys,
    solver: &mut C3xorSolver,
    params: ViaC3xorParams,
) -> Result<ViaC3xorReport> {
    let vectors = set.vectors();
    let n = vectors.len();
    // Distinct values: a solution can never use the zero vector.
    let elements: Vec<usize> = (0..n).filter(|&i| !vectors[i].is_zero()).collect();
    let r = keys.output_width();
    let tau = (3 * n >> r).max(1);
    let index = BucketIndex::new(vectors, &elements, keys, tau)?;
    let mut report = ViaC3xorReport {
        buckets: index.bucket_count(),
        tau,
        ..Default::default()
    };

    let position: HashMap<&BitString, usize> = vectors.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let heavy: Vec<usize> = index.overloaded().collect();
    report.overloaded = heavy.len();
    for &x in &heavy {
        for &y in &elements {
            if y == x {
                continue;
            }
            if let Some(&z) = position.get(&(&vectors[x] ^ &vectors[y])) {
                if let Some(w) = Witness3::new(x, y, z) {
                    report.witness = Some(w);
                    report.direct = true;
                    return Ok(report);
                }
            }
        }
    }

    let load = index.max_regular_load();
    let size = index.bucket_count() << 2;
    let regular: Vec<usize> = (0..index.bucket_count()).filter(|&h| !index.is_overloaded(h)).collect();
    debug!(
        "3xor via c3xor: n={n} r={r} tau={tau} overloaded={} load={load}",
        heavy.len()
    );
    for i in 0..load {
        for j in 0..load {
            for k in 0..load {
                let mut cells: Vec<Option<BitString>> = vec![None; size];
                let mut owner: Vec<Option<usize>> = vec![None; size];
                for &h in &regular {
                    let b = index.bucket(h);
                    for (tag, pick) in [(1, i), (2, j), (3, k)] {
                        if let Some(&e) = b.get(pick) {
                            cells[h << 2 | tag] = Some(vectors[e].clone());
                            owner[h << 2 | tag] = Some(e);
                        }
                    }
                }
                let array = C3xorArray::new(set.width(), cells)?;
                report.arrays += 1;
                for _ in 0..params.amplify.max(1) {
                    report.solver_calls += 1;
                    let Some(WitnessC3xor { i: p, j: q }) = solver(&array)? else {
                        continue;
                    };
                    let found = (p < size && q < size)
                        .then(|| Witness3::new(owner[p]?, owner[q]?, owner[p ^ q]?))
                        .flatten()
                        .filter(|w| is_3xor_solution(vectors, w));
                    match found {
                        Some(w) => {
                            report.witness = Some(w);
                            report.error_bound = 0.0;
                            return Ok(report);
                        }
                        None => report.rejected += 1,
                    }
                }
            }
        }
    }
    report.error_bound = (report.arrays as f64 * params.solver_error.powi(params.amplify.max(1) as i32)).min(1.0);
    Ok(report)
}

pub type ThreeXorSolver<'a> = dyn FnMut(&[BitString]) -> Result<Option<Witness3>> + 'a;

/// Decide convolution 3XOR with one 3XOR call on `{A[i] ∘ i}`.
///
/// Pairs using index 0 or `i = j` all need `A[0] = 0`, which is checked up
/// front and answered with `(0, 0)`.
pub fn solve_c3xor_via_3xor(a: &C3xorArray, solver: &mut ThreeXorSolver) -> Result<Option<WitnessC3xor>> {
    if a.get(0).is_some_and(BitString::is_zero) {
        return Ok(Some(WitnessC3xor { i: 0, j: 0 }));
    }
    let s = a.index_bits();
    let cells: Vec<usize> = (0..a.len()).filter(|&i| a.get(i).is_some()).collect();
    let set = cells
        .iter()
        .map(|&i| Ok(a.get(i).expect("present").concat(&BitString::from_u64(s, i as u64)?)))
        .collect::<Result<Vec<_>>>()?;
    let Some(w) = solver(&set)? else {
        return Ok(None);
    };
    let [x, y, _] = w.indices();
    let (i, j) = (cells[x], cells[y]);
    if !a.is_solution(i, j) {
        return Err(Error::Soundness(format!(
            "3XOR witness {w:?} decodes to non-solution ({i}, {j})"
        )));
    }
    Ok(Some(WitnessC3xor { i, j }))
}

/// Convolution 3SUM with integer indices: `A[i] + A[j] = A[i + j]`, `i + j < n`.
pub fn solve_c3sum_bruteforce(a: &[i64]) -> Option<(usize, usize)> {
    let n = a.len();
    for i in 0..n {
        for j in i..n - i {
            if a[i] as i128 + a[j] as i128 == a[i + j] as i128 {
                return Some((i, j));
            }
        }
    }
    None
}

pub type ThreeSumSolver<'a> = dyn FnMut(&[i128]) -> Result<Option<Witness3>> + 'a;

/// Decide convolution 3SUM with one 3SUM call.
///
/// Each cell becomes `v_i = A[i]·2^(s+1) + i`; the spare bit below the value
/// takes the carry of `i + j`. The 3SUM input is `{v_i} ∪ {-v_k}`, so a zero
/// sum reads `v_i + v_j = v_k`. Pairs with `i = j` are checked directly since
/// a 3SUM witness uses three distinct elements.
pub fn solve_c3sum_via_3sum(a: &[i64], solver: &mut ThreeSumSolver) -> Result<Option<(usize, usize)>> {
    let n = a.len();
    if let Some(i) = a.iter().position(|&x| x < 0) {
        return Err(Error::param(format!("entry {i} is negative")));
    }
    if let Some(i) = (0..n).find(|&i| 2 * i < n && a[i] as i128 * 2 == a[2 * i] as i128) {
        return Ok(Some((i, i)));
    }
    let s = (usize::BITS - n.leading_zeros()) as u32;
    let shift = 1i128
        .checked_shl(s + 1)
        .filter(|&m| m > 0)
        .ok_or_else(|| Error::param("entry width overflow"))?;
    let mut values = Vec::with_capacity(2 * n);
    for (i, &x) in a.iter().enumerate() {
        let v = (x as i128)
            .checked_mul(shift)
            .and_then(|v| v.checked_add(i as i128))
            .ok_or_else(|| Error::param(format!("entry width overflow at index {i}")))?;
        values.push(v);
    }
    let negated: Vec<i128> = values.iter().map(|v| -v).collect();
    values.extend(negated);
    let Some(w) = solver(&values)? else {
        return Ok(None);
    };
    let idx = w.indices();
    let (pos, neg): (Vec<usize>, Vec<usize>) = idx.iter().partition(|&&t| t < n);
    let neg: Vec<usize> = neg.into_iter().map(|t| t - n).collect();
    // Either v_i + v_j = v_k or -v_i - v_j = -v_k.
    let (i, j, k) = match (pos.as_slice(), neg.as_slice()) {
        ([i, j], [k]) | ([k], [i, j]) => (*i, *j, *k),
        _ => return Err(Error::Soundness(format!("3SUM witness {w:?} has no C3SUM reading"))),
    };
    let (i, j) = (i.min(j), i.max(j));
    if i + j != k || a[i] as i128 + a[j] as i128 != a[k] as i128 {
        return Err(Error::Soundness(format!(
            "3SUM witness {w:?} decodes to non-solution ({i}, {j})"
        )));
    }
    Ok(Some((i, j)))
}

/// Tripartite graph whose triangles are the pairs `(a, b)` with
/// `h(A[i]) ⊕ h(A[j]) = h(A[b])`, where `i = a ⊕ (b_h ∘ 0ˢ)`,
/// `j = a ⊕ (0ˢ ∘ b_ℓ)` and `b = b_h ∘ b_ℓ`.
///
/// Node ids: `(b_h, x)` is `b_h·R + x`, `(b_ℓ, y)` is `√n·R + b_ℓ·R + y`,
/// `(a)` is `2·√n·R + a`.
#[derive(Clone, Debug)]
pub struct CxorGraph {
    graph: TripartiteGraph,
    keys: XorHashKeys,
    /// Hash value per (padded) cell; absent cells get a random filler.
    hashes: Vec<usize>,
    half_bits: usize,
}

/// `(i, j)` for the pair `(a, b)` at half width `s`.
pub fn pair_to_indices(a: usize, b: usize, s: usize) -> (usize, usize) {
    let b_h = b >> s;
    let b_l = b & ((1 << s) - 1);
    (a ^ (b_h << s), a ^ b_l)
}

/// Inverse of [`pair_to_indices`].
pub fn indices_to_pair(i: usize, j: usize, s: usize) -> (usize, usize) {
    let b = i ^ j;
    (i ^ ((b >> s) << s), b)
}

/// Smallest `4^s ≥ max(n, 4)`.
pub fn padded_len(n: usize) -> usize {
    let mut len = 4;
    while len < n {
        len *= 4;
    }
    len
}

pub fn build_cxor_graph(a: &C3xorArray, keys: &XorHashKeys, filler_seed: u64) -> Result<CxorGraph> {
    if keys.input_width() != a.width() {
        return Err(Error::WidthMismatch {
            expected: a.width(),
            actual: keys.input_width(),
        });
    }
    let r = keys.output_width();
    if r >= 31 {
        return Err(Error::param(format!("{r} hash bits is too many")));
    }
    let n = padded_len(a.len());
    let s = n.trailing_zeros() as usize / 2;
    let root = 1usize << s;
    let big_r = 1usize << r;
    let mut filler = ChaCha8Rng::seed_from_u64(filler_seed);
    let hashes = (0..n)
        .map(|i| match a.entries().get(i).and_then(Option::as_ref) {
            Some(v) => keys.bucket(v),
            None => Ok(filler.gen_range(0..big_r)),
        })
        .collect::<Result<Vec<_>>>()?;

    let lo = root * big_r;
    let a_base = 2 * lo;
    let mut edges = Vec::with_capacity(2 * n * root + n * big_r);
    for node in 0..n {
        for half in 0..root {
            edges.push((half * big_r + hashes[node ^ (half << s)], a_base + node));
            edges.push((lo + half * big_r + hashes[node ^ half], a_base + node));
        }
    }
    for b in 0..n {
        let (b_h, b_l) = (b >> s, b & (root - 1));
        for x in 0..big_r {
            edges.push((b_h * big_r + x, lo + b_l * big_r + (x ^ hashes[b])));
        }
    }
    let graph = Graph::from_edges(a_base + n, edges);
    let graph = TripartiteGraph::new(graph, [0..lo, lo..a_base, a_base..a_base + n])?;
    Ok(CxorGraph {
        graph,
        keys: keys.clone(),
        hashes,
        half_bits: s,
    })
}

impl CxorGraph {
    pub fn tripartite(&self) -> &TripartiteGraph {
        &self.graph
    }

    pub fn graph(&self) -> &Graph {
        self.graph.graph()
    }

    pub fn keys(&self) -> &XorHashKeys {
        &self.keys
    }

    /// Padded array length `n = 4^s`.
    pub fn cells(&self) -> usize {
        self.hashes.len()
    }

    pub fn half_bits(&self) -> usize {
        self.half_bits
    }

    pub fn hash_of(&self, cell: usize) -> usize {
        self.hashes[cell]
    }

    /// Whether `(a, b)` satisfies `h(A[i]) ⊕ h(A[j]) = h(A[b])`.
    pub fn star(&self, a: usize, b: usize) -> bool {
        let (i, j) = pair_to_indices(a, b, self.half_bits);
        self.hashes[i] ^ self.hashes[j] == self.hashes[b]
    }

    /// The pair `(a, b)` behind a triangle.
    pub fn decode(&self, t: &Triangle) -> Result<(usize, usize)> {
        let big_r = 1usize << self.keys.output_width();
        let [p, q, a] = t.nodes();
        let parts = self.graph.parts();
        if !(parts[0].contains(&p) && parts[1].contains(&q) && parts[2].contains(&a)) {
            return Err(Error::Invariant(format!(
                "{t:?} is not a triangle across the three parts"
            )));
        }
        let b_h = p / big_r;
        let b_l = (q - parts[1].start) / big_r;
        Ok((a - parts[2].start, b_h << self.half_bits | b_l))
    }

    /// One `part label hash` line per node, in node order.
    pub fn annotations(&self) -> String {
        let big_r = 1usize << self.keys.output_width();
        let parts = self.graph.parts();
        let mut out = String::new();
        for v in 0..self.graph().node_count() {
            let line = match self.graph.part_of(v) {
                0 => format!("bh {} {}", v / big_r, v % big_r),
                1 => format!("bl {} {}", (v - parts[1].start) / big_r, (v - parts[1].start) % big_r),
                _ => format!("a {} -", v - parts[2].start),
            };
            let _ = writeln!(out, "{line}");
        }
        out
    }
}

/// Pairs `(a, b)` that satisfy the hash condition but are not solutions.
pub fn false_pairs(a: &C3xorArray, g: &CxorGraph) -> usize {
    let n = g.cells();
    let padded = a.padded_to(n).expect("padding to a larger power of two");
    let mut count = 0;
    for x in 0..n {
        for b in 0..n {
            if g.star(x, b) {
                let (i, j) = pair_to_indices(x, b, g.half_bits());
                if !padded.is_solution(i, j) {
                    count += 1;
                }
            }
        }
    }
    count
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ListingOutcome {
    Found(WitnessC3xor),
    /// Every pair passing the hash test was checked.
    NotFound,
    /// Each round hit the listing cap without a genuine pair.
    ProbableNo {
        rounds: u32,
    },
}

#[derive(Clone, Debug)]
pub struct ListingReport {
    pub outcome: ListingOutcome,
    pub rounds: u32,
    /// Triangles returned by the lister, per round.
    pub listed: Vec<usize>,
    pub edges: usize,
}

pub type Lister<'a> = dyn FnMut(&Graph, usize) -> Result<Vec<Triangle>> + 'a;

/// Decide convolution 3XOR by listing up to `m` triangles of the hash graph.
/// Hash width is `lg √n`.
pub fn solve_c3xor_via_listing(a: &C3xorArray, lister: &mut Lister, retries: u32, seed: u64) -> Result<ListingReport> {
    let n = padded_len(a.len());
    let s = n.trailing_zeros() as usize / 2;
    let padded = a.padded_to(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut listed = Vec::new();
    let mut edges = 0;
    for round in 1..=retries.max(1) {
        let keys = XorHashKeys::random(a.width(), s, &mut rng);
        let g = build_cxor_graph(a, &keys, rng.gen())?;
        let m = g.graph().edge_count();
        edges = m;
        let triangles = lister(g.graph(), m)?;
        listed.push(triangles.len());
        for t in &triangles {
            let (x, b) = g.decode(t)?;
            let (i, j) = pair_to_indices(x, b, s);
            if padded.is_solution(i, j) {
                return Ok(ListingReport {
                    outcome: ListingOutcome::Found(WitnessC3xor { i, j }),
                    rounds: round,
                    listed,
                    edges,
                });
            }
        }
        if triangles.len() < m {
            return Ok(ListingReport {
                outcome: ListingOutcome::NotFound,
                rounds: round,
                listed,
                edges,
            });
        }
        info!("round {round}: {m} triangles listed, none genuine; redrawing keys");
    }
    let rounds = retries.max(1);
    Ok(ListingReport {
        outcome: ListingOutcome::ProbableNo { rounds },
        rounds,
        listed,
        edges,
    })
}
