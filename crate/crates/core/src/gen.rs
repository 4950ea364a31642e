//! Seeded instance generators, with optional planted witnesses.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{
    magnitude_bound_for, BitVectorSet, C3xorArray, Instance, IntegerSet, Z3VectorSet, DEFAULT_MAGNITUDE_EXPONENT,
};
use crate::solvers::{solve_3sum_quadratic, solve_3xor_quadratic, solve_6sum_z3, solve_c3xor_bruteforce};
use crate::z3::Z3Vector;

/// Attempts at drawing an instance without a solution before giving up.
const MAX_REJECTIONS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    ThreeSum,
    ThreeXor,
    C3xor,
    SixSumZ3,
}

impl std::str::FromStr for InstanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "3sum" => Ok(InstanceKind::ThreeSum),
            "3xor" => Ok(InstanceKind::ThreeXor),
            "c3xor" => Ok(InstanceKind::C3xor),
            "6sum_z3" | "6sum" => Ok(InstanceKind::SixSumZ3),
            other => Err(Error::param(format!("unknown instance kind {other:?}"))),
        }
    }
}

/// A generated instance and, if one was planted, its witness indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Planted {
    pub instance: Instance,
    pub witness: Option<Vec<usize>>,
}

/// Bits per vector for generated 3XOR instances: `max(3, ⌈3 lg n⌉)`.
pub fn default_xor_width(n: usize) -> usize {
    ((3.0 * (n.max(2) as f64).log2()).ceil() as usize).max(3)
}

/// Vector length for generated 6SUM instances: `⌈6 log₃ n⌉`.
pub fn default_z3_len(n: usize) -> usize {
    ((6.0 * (n.max(2) as f64).ln() / 3f64.ln()).ceil() as usize).max(1)
}

/// Random simple graph on `n` nodes with `m` edges and at least `planted`
/// triangles, each planted on its own node triple.
pub fn gen_graph(n: usize, m: usize, planted: usize, seed: u64) -> Result<Graph> {
    let max_edges = n * n.saturating_sub(1) / 2;
    if m > max_edges {
        return Err(Error::param(format!("{m} edges do not fit on {n} nodes")));
    }
    if planted > 0 && n < 3 {
        return Err(Error::param(format!(
            "cannot plant {planted} triangles with n={n}, m={m}"
        )));
    }
    let triples = n as u128 * n.saturating_sub(1) as u128 * n.saturating_sub(2) as u128 / 6;
    if planted as u128 > triples {
        return Err(Error::param(format!("only {triples} node triples exist")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut used: HashSet<[usize; 3]> = HashSet::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    while used.len() < planted {
        let mut t = if 3 * planted <= n {
            let i = used.len();
            [order[3 * i], order[3 * i + 1], order[3 * i + 2]]
        } else {
            let t = rand::seq::index::sample(&mut rng, n, 3);
            [t.index(0), t.index(1), t.index(2)]
        };
        t.sort_unstable();
        if used.insert(t) {
            edges.extend([(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]);
        }
    }
    if edges.len() > m {
        return Err(Error::param(format!(
            "{planted} planted triangles need more than {m} edges"
        )));
    }
    if 2 * m > max_edges {
        let mut rest: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|e| !edges.contains(e))
            .collect();
        rest.shuffle(&mut rng);
        let need = m - edges.len();
        edges.extend(rest.into_iter().take(need));
    } else {
        while edges.len() < m {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                edges.insert((u.min(v), u.max(v)));
            }
        }
    }
    Ok(Graph::from_edges(n, edges))
}

pub fn gen_planted_instance(kind: InstanceKind, n: usize, plant: bool, seed: u64) -> Result<Planted> {
    let min = if kind == InstanceKind::SixSumZ3 { 6 } else { 3 };
    if n < min {
        return Err(Error::param(format!("{kind:?} instances need n >= {min}, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if plant {
        return match kind {
            InstanceKind::ThreeSum => planted_3sum(n, &mut rng),
            InstanceKind::ThreeXor => planted_3xor(n, &mut rng),
            InstanceKind::C3xor => planted_c3xor(n, &mut rng),
            InstanceKind::SixSumZ3 => planted_6sum(n, &mut rng),
        };
    }
    for _ in 0..MAX_REJECTIONS {
        let instance = match kind {
            InstanceKind::ThreeSum => {
                let set = IntegerSet::new(distinct_ints(n, &mut rng, Vec::new()))?;
                if solve_3sum_quadratic(&set).is_some() {
                    continue;
                }
                Instance::ThreeSum(set)
            }
            InstanceKind::ThreeXor => {
                let width = default_xor_width(n);
                let vectors = distinct_vectors(n, width, &mut rng, Vec::new());
                if solve_3xor_quadratic(&vectors).is_some() {
                    continue;
                }
                Instance::ThreeXor(BitVectorSet::new(width, vectors)?)
            }
            InstanceKind::C3xor => {
                let a = random_c3xor(n, &mut rng)?;
                if solve_c3xor_bruteforce(&a).is_some() {
                    continue;
                }
                Instance::C3xor(a)
            }
            InstanceKind::SixSumZ3 => {
                let t = default_z3_len(n);
                let elements: Vec<Z3Vector> = (0..n).map(|_| random_z3(t, &mut rng)).collect();
                if solve_6sum_z3(&elements).is_some() {
                    continue;
                }
                Instance::SixSumZ3(Z3VectorSet::new(t, elements)?)
            }
        };
        return Ok(Planted {
            instance,
            witness: None,
        });
    }
    Err(Error::Solver(format!(
        "no solution-free {kind:?} instance of size {n} in {MAX_REJECTIONS} draws"
    )))
}

fn distinct_ints(n: usize, rng: &mut ChaCha8Rng, mut values: Vec<i64>) -> Vec<i64> {
    let bound = magnitude_bound_for(n, DEFAULT_MAGNITUDE_EXPONENT) as i64;
    let mut seen: HashSet<i64> = values.iter().copied().collect();
    while values.len() < n {
        let v = rng.gen_range(-bound..=bound);
        if seen.insert(v) {
            values.push(v);
        }
    }
    values
}

fn distinct_vectors(n: usize, width: usize, rng: &mut ChaCha8Rng, mut vectors: Vec<BitString>) -> Vec<BitString> {
    let mut seen: HashSet<BitString> = vectors.iter().cloned().collect();
    while vectors.len() < n {
        let v = BitString::random(width, rng);
        if seen.insert(v.clone()) {
            vectors.push(v);
        }
    }
    vectors
}

fn random_z3(t: usize, rng: &mut ChaCha8Rng) -> Z3Vector {
    let digits: Vec<u8> = (0..t).map(|_| rng.gen_range(0..3)).collect();
    Z3Vector::from_digits(&digits).expect("digits below 3")
}

/// Move the first `planted` items to random positions; returns the shuffled
/// items and the sorted positions the planted ones landed on.
fn scatter<T>(items: Vec<T>, planted: usize, rng: &mut ChaCha8Rng) -> (Vec<T>, Vec<usize>) {
    let mut perm: Vec<usize> = (0..items.len()).collect();
    perm.shuffle(rng);
    let mut slots: Vec<Option<T>> = std::iter::repeat_with(|| None).take(items.len()).collect();
    for (p, item) in items.into_iter().enumerate() {
        slots[perm[p]] = Some(item);
    }
    let mut witness = perm[..planted].to_vec();
    witness.sort_unstable();
    (
        slots.into_iter().map(|s| s.expect("perm is a bijection")).collect(),
        witness,
    )
}

fn planted_3sum(n: usize, rng: &mut ChaCha8Rng) -> Result<Planted> {
    let bound = magnitude_bound_for(n, DEFAULT_MAGNITUDE_EXPONENT) as i64;
    let (a, b, c) = loop {
        let a = rng.gen_range(-bound..=bound);
        let b = rng.gen_range(-bound..=bound);
        let c = -a - b;
        if c.abs() <= bound && a != b && b != c && a != c {
            break (a, b, c);
        }
    };
    let (values, witness) = scatter(distinct_ints(n, rng, vec![a, b, c]), 3, rng);
    Ok(Planted {
        instance: Instance::ThreeSum(IntegerSet::new(values)?),
        witness: Some(witness),
    })
}

fn planted_3xor(n: usize, rng: &mut ChaCha8Rng) -> Result<Planted> {
    let width = default_xor_width(n);
    let (a, b) = loop {
        let a = BitString::random(width, rng);
        let b = BitString::random(width, rng);
        if !a.is_zero() && !b.is_zero() && a != b {
            break (a, b);
        }
    };
    let c = &a ^ &b;
    let (vectors, witness) = scatter(distinct_vectors(n, width, rng, vec![a, b, c]), 3, rng);
    Ok(Planted {
        instance: Instance::ThreeXor(BitVectorSet::new(width, vectors)?),
        witness: Some(witness),
    })
}

/// Random array with about a quarter of the cells absent and `A[0]` never the
/// zero vector, which would be a solution on its own.
fn random_c3xor(n: usize, rng: &mut ChaCha8Rng) -> Result<C3xorArray> {
    if !n.is_power_of_two() {
        return Err(Error::param(format!(
            "C3XOR arrays need a power-of-two length, got {n}"
        )));
    }
    let width = default_xor_width(n);
    let entries = (0..n)
        .map(|i| {
            if rng.gen_bool(0.25) {
                return None;
            }
            loop {
                let v = BitString::random(width, rng);
                if i != 0 || !v.is_zero() {
                    return Some(v);
                }
            }
        })
        .collect();
    C3xorArray::new(width, entries)
}

fn planted_c3xor(n: usize, rng: &mut ChaCha8Rng) -> Result<Planted> {
    let a = random_c3xor(n, rng)?;
    let width = a.width();
    let mut entries = a.entries().to_vec();
    let i = rng.gen_range(1..n);
    let j = loop {
        let j = rng.gen_range(1..n);
        if j != i {
            break j;
        }
    };
    for idx in [i, j] {
        if entries[idx].is_none() {
            entries[idx] = Some(BitString::random(width, rng));
        }
    }
    let sum = entries[i].as_ref().unwrap() ^ entries[j].as_ref().unwrap();
    entries[i ^ j] = Some(sum);
    Ok(Planted {
        instance: Instance::C3xor(C3xorArray::new(width, entries)?),
        witness: Some(vec![i, j]),
    })
}

fn planted_6sum(n: usize, rng: &mut ChaCha8Rng) -> Result<Planted> {
    let t = default_z3_len(n);
    let mut elements: Vec<Z3Vector> = (0..5).map(|_| random_z3(t, rng)).collect();
    let mut sum = Z3Vector::zero(t);
    for e in &elements {
        sum.add_assign(e);
    }
    elements.push(-&sum);
    while elements.len() < n {
        elements.push(random_z3(t, rng));
    }
    let (elements, witness) = scatter(elements, 6, rng);
    Ok(Planted {
        instance: Instance::SixSumZ3(Z3VectorSet::new(t, elements)?),
        witness: Some(witness),
    })
}
