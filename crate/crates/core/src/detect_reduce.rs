//! Triangle detection by a single 3SUM or 3XOR query.
//!
//! Every node gets a label `X_a` and every edge the value `X_a - X_b` (or
//! `X_a ⊕ X_b`). A triangle `a, b, c` always gives three values summing to
//! zero. With design labels the converse holds too: a zero-sum triple uses
//! each label once with each sign, which pins down a triangle. With random
//! labels a spurious triple has probability at most 1/2 per round, and any
//! returned witness is checked against the graph before it is believed.

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::graph::{Graph, Triangle};
use crate::prand::{build_design, design_to_label, DesignFamily, DesignStrategy, Label};
use crate::solvers::{three_sum_indexed, three_xor_indexed, SumValue, Witness3};

/// What a solver reports: a witness, a bare "yes", or "no".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Answer<W> {
    Found(W),
    Yes,
    No,
}

impl<W> Answer<W> {
    pub fn from_option(w: Option<W>) -> Self {
        w.map_or(Answer::No, Answer::Found)
    }

    pub fn is_yes(&self) -> bool {
        !matches!(self, Answer::No)
    }

    /// Forget the witness.
    pub fn decision(self) -> Answer<W> {
        match self {
            Answer::Found(_) | Answer::Yes => Answer::Yes,
            Answer::No => Answer::No,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Randomized,
    Deterministic,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rand" | "randomized" => Ok(Mode::Randomized),
            "det" | "deterministic" => Ok(Mode::Deterministic),
            other => Err(Error::param(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetectConfig {
    pub mode: Mode,
    pub seed: u64,
    /// Labelings tried in randomized mode before giving up.
    pub rounds: u32,
    pub strategy: DesignStrategy,
    /// Design constant for deterministic 3SUM/3XOR labels; the intersection
    /// ratio is about `2/c` and must stay below 1/5.
    pub c: f64,
}

impl Default for DetectConfig {
    fn default() -> Self {
        DetectConfig {
            mode: Mode::Deterministic,
            seed: 0,
            rounds: 20,
            strategy: DesignStrategy::Polynomial,
            c: 11.0,
        }
    }
}

impl DetectConfig {
    pub fn randomized(seed: u64) -> Self {
        DetectConfig {
            mode: Mode::Randomized,
            seed,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Detection {
    pub contains_triangle: bool,
    /// Present whenever the solver supplied a witness.
    pub triangle: Option<Triangle>,
    /// Labelings used.
    pub rounds: u32,
}

/// Node labels, edge values and the edge each value came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLabeling<V> {
    pub node_labels: Vec<V>,
    pub edge_values: Vec<V>,
    /// `back_map[i]` is the directed edge that produced `edge_values[i]`.
    pub back_map: Vec<(usize, usize)>,
}

impl<V> EdgeLabeling<V> {
    /// The triangle formed by the edges behind a witness, if they form one.
    pub fn triangle(&self, w: &Witness3) -> Option<Triangle> {
        triangle_behind(&self.back_map, w)
    }
}

fn triangle_behind(back_map: &[(usize, usize)], w: &Witness3) -> Option<Triangle> {
    let [i, j, k] = w.indices();
    Triangle::from_edges([*back_map.get(i)?, *back_map.get(j)?, *back_map.get(k)?])
}

/// One value `X_a ⊕ X_b` per undirected edge.
pub fn xor_labeling(g: &Graph, node_labels: Vec<BitString>) -> EdgeLabeling<BitString> {
    let back_map: Vec<(usize, usize)> = g.edges().collect();
    let edge_values = back_map
        .iter()
        .map(|&(a, b)| &node_labels[a] ^ &node_labels[b])
        .collect();
    EdgeLabeling {
        node_labels,
        edge_values,
        back_map,
    }
}

/// Values `X_a - X_b` and `X_b - X_a` for every edge.
pub fn sum_labeling(g: &Graph, node_labels: Vec<BigInt>) -> EdgeLabeling<BigInt> {
    let mut back_map = Vec::with_capacity(2 * g.edge_count());
    let mut edge_values = Vec::with_capacity(2 * g.edge_count());
    for (a, b) in g.edges() {
        let d = &node_labels[a] - &node_labels[b];
        edge_values.push(-&d);
        back_map.push((b, a));
        edge_values.push(d);
        back_map.push((a, b));
    }
    EdgeLabeling {
        node_labels,
        edge_values,
        back_map,
    }
}

/// Random label width `⌈3 lg m⌉`.
fn random_width(g: &Graph) -> usize {
    ((3.0 * (g.edge_count().max(2) as f64).log2()).ceil() as usize).max(1)
}

fn design_for(g: &Graph, config: &DetectConfig) -> Result<DesignFamily> {
    build_design(g.node_count().max(2), config.c, config.strategy, config.seed)
}

/// The labels a deterministic run would use, one per node.
pub fn design_labels(g: &Graph, config: &DetectConfig, base: u32) -> Result<Vec<Label>> {
    let family = design_for(g, config)?;
    (0..g.node_count()).map(|a| design_to_label(&family, a, base)).collect()
}

/// Decide triangle-freeness with one 3XOR query per round. The solver sees
/// a multiset: equal values at different indices are separate elements.
pub fn detect_via_3xor(
    g: &Graph,
    solver: &mut dyn FnMut(&[BitString]) -> Result<Answer<Witness3>>,
    config: &DetectConfig,
) -> Result<Detection> {
    match config.mode {
        Mode::Deterministic => {
            let labels = design_labels(g, config, 2)?
                .into_iter()
                .map(|l| match l {
                    Label::Binary(b) => b,
                    _ => unreachable!("base 2 gives binary labels"),
                })
                .collect();
            let labeling = xor_labeling(g, labels);
            let answer = solver(&labeling.edge_values)?;
            exact(g, &labeling, answer)
        }
        Mode::Randomized => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let width = random_width(g);
            let back_map: Vec<(usize, usize)> = g.edges().collect();
            randomized(g, &back_map, config.rounds, || {
                let labels = (0..g.node_count())
                    .map(|_| BitString::random(width, &mut rng))
                    .collect();
                solver(&xor_labeling(g, labels).edge_values)
            })
        }
    }
}

/// Decide triangle-freeness with one 3SUM query per round. Values are handed
/// to the solver as `T`; labels that do not fit give [`Error::LabelOverflow`].
pub fn detect_via_3sum<T: SumValue>(
    g: &Graph,
    solver: &mut dyn FnMut(&[T]) -> Result<Answer<Witness3>>,
    config: &DetectConfig,
) -> Result<Detection> {
    let convert = |values: &[BigInt]| -> Result<Vec<T>> {
        values
            .iter()
            .map(|v| T::from_bigint(v).ok_or(Error::LabelOverflow))
            .collect()
    };
    match config.mode {
        Mode::Deterministic => {
            let labels = design_labels(g, config, 10)?
                .into_iter()
                .map(|l| match l {
                    Label::Decimal(v) => v,
                    _ => unreachable!("base 10 gives decimal labels"),
                })
                .collect();
            let labeling = sum_labeling(g, labels);
            let answer = solver(&convert(&labeling.edge_values)?)?;
            exact(g, &labeling, answer)
        }
        Mode::Randomized => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let width = random_width(g);
            let back_map = sum_labeling(g, vec![BigInt::default(); g.node_count()]).back_map;
            randomized(g, &back_map, config.rounds, || {
                let labels = (0..g.node_count())
                    .map(|_| BigInt::from_biguint(num_bigint::Sign::Plus, random_biguint(width, &mut rng)))
                    .collect();
                solver(&convert(&sum_labeling(g, labels).edge_values)?)
            })
        }
    }
}

fn random_biguint(width: usize, rng: &mut ChaCha8Rng) -> num_bigint::BigUint {
    let bits = BitString::random(width, rng);
    let mut bytes = Vec::with_capacity(bits.words().len() * 8);
    for w in bits.words() {
        bytes.extend_from_slice(&w.to_le_bytes());
    }
    num_bigint::BigUint::from_bytes_le(&bytes)
}

/// Deterministic labels: any witness must be a triangle.
fn exact<V>(g: &Graph, labeling: &EdgeLabeling<V>, answer: Answer<Witness3>) -> Result<Detection> {
    let (contains_triangle, triangle) = match answer {
        Answer::No => (false, None),
        Answer::Yes => (true, None),
        Answer::Found(w) => {
            let t = labeling
                .triangle(&w)
                .filter(|t| g.contains_triangle(t))
                .ok_or_else(|| Error::Soundness(format!("witness {:?} is not a triangle", w.indices())))?;
            (true, Some(t))
        }
    };
    Ok(Detection {
        contains_triangle,
        triangle,
        rounds: 1,
    })
}

/// Random labels, repeated. A "no" from any round is final, since a triangle
/// always produces a zero triple. A witness is kept only if it checks out;
/// a bare "yes" is believed only once every round has said it.
fn randomized(
    g: &Graph,
    back_map: &[(usize, usize)],
    rounds: u32,
    mut round: impl FnMut() -> Result<Answer<Witness3>>,
) -> Result<Detection> {
    if rounds == 0 {
        return Err(Error::param("randomized detection needs at least one round"));
    }
    let mut spurious = 0;
    for r in 0..rounds {
        match round()? {
            Answer::No => {
                return Ok(Detection {
                    contains_triangle: false,
                    triangle: None,
                    rounds: r + 1,
                })
            }
            Answer::Found(w) => match triangle_behind(back_map, &w).filter(|t| g.contains_triangle(t)) {
                Some(t) => {
                    return Ok(Detection {
                        contains_triangle: true,
                        triangle: Some(t),
                        rounds: r + 1,
                    })
                }
                None => {
                    spurious += 1;
                    log::debug!("round {r}: spurious witness, relabelling");
                }
            },
            Answer::Yes => {}
        }
    }
    if spurious == rounds {
        return Err(Error::RoundsExhausted { rounds });
    }
    Ok(Detection {
        contains_triangle: true,
        triangle: None,
        rounds,
    })
}

/// The quadratic 3XOR solver in the shape the reduction expects.
pub fn xor_witness_solver(values: &[BitString]) -> Result<Answer<Witness3>> {
    Ok(Answer::from_option(three_xor_indexed(values)))
}

/// The quadratic 3SUM solver in the shape the reduction expects.
pub fn sum_witness_solver<T: SumValue>(values: &[T]) -> Result<Answer<Witness3>> {
    Ok(Answer::from_option(three_sum_indexed(values)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::detect_triangle;

    fn k3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)])
    }

    fn star() -> Graph {
        Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    }

    fn c4() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    }

    #[test]
    fn deterministic_examples() {
        let config = DetectConfig::default();
        let d = detect_via_3xor(&k3(), &mut xor_witness_solver, &config).unwrap();
        assert!(d.contains_triangle);
        assert_eq!(d.triangle, Triangle::new(0, 1, 2));
        assert!(
            !detect_via_3xor(&star(), &mut xor_witness_solver, &config)
                .unwrap()
                .contains_triangle
        );

        let d = detect_via_3sum::<BigInt>(&k3(), &mut sum_witness_solver, &config).unwrap();
        assert_eq!(d.triangle, Triangle::new(0, 1, 2));
        assert!(
            !detect_via_3sum::<BigInt>(&c4(), &mut sum_witness_solver, &config)
                .unwrap()
                .contains_triangle
        );
    }

    #[test]
    fn narrow_integers_overflow_on_design_labels() {
        // 60 nodes need labels of 121 decimal digits
        let path = Graph::from_edges(60, (0..59).map(|i| (i, i + 1)));
        let err = detect_via_3sum::<i64>(&path, &mut sum_witness_solver, &DetectConfig::default());
        assert!(matches!(err, Err(Error::LabelOverflow)));
        let small = detect_via_3sum::<i64>(&k3(), &mut sum_witness_solver, &DetectConfig::default()).unwrap();
        assert!(small.contains_triangle);
        let ok = detect_via_3sum::<i64>(&k3(), &mut sum_witness_solver, &DetectConfig::randomized(1)).unwrap();
        assert!(ok.contains_triangle);
    }

    #[test]
    fn sum_labeling_has_both_orientations() {
        let l = sum_labeling(&k3(), vec![BigInt::from(1), BigInt::from(10), BigInt::from(100)]);
        assert_eq!(l.edge_values.len(), 6);
        for pair in l.edge_values.chunks(2) {
            assert_eq!(&pair[0] + &pair[1], BigInt::from(0));
        }
    }

    #[test]
    fn small_graphs_agree_with_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for trial in 0..60 {
            let n = rng.gen_range(3..12);
            let edges: Vec<(usize, usize)> = (0..rng.gen_range(0..20))
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
                .collect();
            let g = Graph::from_edges(n, edges);
            let truth = detect_triangle(&g).is_some();
            let det = DetectConfig::default();
            let rnd = DetectConfig::randomized(trial);
            assert_eq!(
                detect_via_3xor(&g, &mut xor_witness_solver, &det)
                    .unwrap()
                    .contains_triangle,
                truth
            );
            assert_eq!(
                detect_via_3xor(&g, &mut xor_witness_solver, &rnd)
                    .unwrap()
                    .contains_triangle,
                truth
            );
            assert_eq!(
                detect_via_3sum::<BigInt>(&g, &mut sum_witness_solver, &det)
                    .unwrap()
                    .contains_triangle,
                truth
            );
            assert_eq!(
                detect_via_3sum::<i64>(&g, &mut sum_witness_solver, &rnd)
                    .unwrap()
                    .contains_triangle,
                truth
            );
        }
    }

    #[test]
    fn decision_only_solvers() {
        let mut decide = |v: &[BitString]| Ok(Answer::from_option(three_xor_indexed(v)).decision());
        let d = detect_via_3xor(&k3(), &mut decide, &DetectConfig::randomized(3)).unwrap();
        assert!(d.contains_triangle);
        assert_eq!(d.triangle, None);
        assert_eq!(d.rounds, 20);

        let mut liar = |_: &[BitString]| Ok(Answer::Found(Witness3::new(0, 1, 2).unwrap()));
        let err = detect_via_3xor(&star(), &mut liar, &DetectConfig::randomized(3));
        assert!(matches!(err, Err(Error::RoundsExhausted { rounds: 20 })));
        let err = detect_via_3xor(&star(), &mut liar, &DetectConfig::default());
        assert!(matches!(err, Err(Error::Soundness(_))));
    }
}
