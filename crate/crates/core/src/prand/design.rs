//! Set families with small pairwise intersections, used to give nodes labels
//! whose sums or xors cannot collide by accident.

use num_bigint::{BigInt, Sign};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::z3::Z3Vector;

/// Largest `m` for which the randomized strategy runs its pairwise check.
pub const DEFAULT_VERIFICATION_CAP: usize = 1 << 16;

/// Resampling rounds before the randomized strategy gives up.
const MAX_RESAMPLE_ROUNDS: usize = 64;

/// Largest field size tried by the polynomial strategy.
const MAX_FIELD: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DesignStrategy {
    /// Uniform random sets at `|S| = c² lg m` in `[50 c³ lg m]`, checked pairwise.
    RandomizedVerified,
    /// Graphs of polynomials of degree at most `d` over a prime field.
    Polynomial,
}

impl std::str::FromStr for DesignStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "randomized" | "randomized_verified" => Ok(DesignStrategy::RandomizedVerified),
            "polynomial" => Ok(DesignStrategy::Polynomial),
            other => Err(Error::param(format!("unknown design strategy {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DesignFamily {
    sets: Vec<Vec<usize>>,
    universe: usize,
    set_size: usize,
    intersection_bound: usize,
    c: Option<f64>,
    strategy: Option<DesignStrategy>,
}

impl DesignFamily {
    /// Check every invariant and build the family. Sets are sorted on the way in.
    pub fn new(mut sets: Vec<Vec<usize>>, universe: usize, set_size: usize, intersection_bound: usize) -> Result<Self> {
        for (i, s) in sets.iter_mut().enumerate() {
            s.sort_unstable();
            if s.len() != set_size || s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Invariant(format!(
                    "set {i} does not have {set_size} distinct members"
                )));
            }
            if s.last().is_some_and(|&x| x >= universe) {
                return Err(Error::Invariant(format!("set {i} leaves the universe [{universe}]")));
            }
        }
        if let Some((i, j, size)) = worst_intersection(&sets, universe, intersection_bound) {
            return Err(Error::Invariant(format!(
                "sets {i} and {j} share {size} > {intersection_bound} elements"
            )));
        }
        Ok(DesignFamily {
            sets,
            universe,
            set_size,
            intersection_bound,
            c: None,
            strategy: None,
        })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn set(&self, i: usize) -> &[usize] {
        &self.sets[i]
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn set_size(&self) -> usize {
        self.set_size
    }

    pub fn intersection_bound(&self) -> usize {
        self.intersection_bound
    }

    pub fn c(&self) -> Option<f64> {
        self.c
    }

    pub fn strategy(&self) -> Option<DesignStrategy> {
        self.strategy
    }

    /// Largest pairwise intersection, by exhaustive comparison.
    pub fn max_intersection(&self) -> usize {
        // Exact over all pairs: row i counts its overlap with every j > i
        // through an element-to-sets index.
        let mut holders: Vec<Vec<u32>> = vec![Vec::new(); self.universe];
        for (i, s) in self.sets.iter().enumerate() {
            for &x in s {
                holders[x].push(i as u32);
            }
        }
        let mut counts = vec![0usize; self.sets.len()];
        let mut best = 0;
        for (i, s) in self.sets.iter().enumerate() {
            for &x in s {
                for &j in holders[x].iter().filter(|&&j| j as usize > i) {
                    counts[j as usize] += 1;
                }
            }
            for c in &mut counts[i + 1..] {
                best = best.max(*c);
                *c = 0;
            }
        }
        best
    }

    /// Header `m u set_size bound`, then one line of sorted members per set.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {} {}\n",
            self.sets.len(),
            self.universe,
            self.set_size,
            self.intersection_bound
        );
        for s in &self.sets {
            let line: Vec<String> = s.iter().map(usize::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let head = parse_numbers(header, 1)?;
        let [m, u, size, bound] = head[..] else {
            return Err(Error::parse(1, "header needs m u set_size bound"));
        };
        let mut sets = Vec::with_capacity(m);
        for (no, line) in lines {
            sets.push(parse_numbers(line, no + 1)?);
        }
        if sets.len() != m {
            return Err(Error::parse(
                0,
                format!("header promises {m} sets, found {}", sets.len()),
            ));
        }
        DesignFamily::new(sets, u, size, bound)
    }
}

fn parse_numbers(line: &str, line_no: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::parse(line_no, format!("bad number {t:?}")))
        })
        .collect()
}

/// Every pair `(i, j)`, `i < j`, whose intersection exceeds `bound`, found with
/// an inverted index so the work is `Σ |Sᵢ ∩ Sⱼ|` rather than `m² · |S|`.
fn violations(sets: &[Vec<usize>], universe: usize, bound: usize) -> Vec<(usize, usize, usize)> {
    let mut owners: Vec<Vec<u32>> = vec![Vec::new(); universe];
    let mut counts = vec![0usize; sets.len()];
    let mut touched = Vec::new();
    let mut bad = Vec::new();
    for (j, s) in sets.iter().enumerate() {
        for &x in s {
            for &i in &owners[x] {
                if counts[i as usize] == 0 {
                    touched.push(i as usize);
                }
                counts[i as usize] += 1;
            }
        }
        for &i in &touched {
            if counts[i] > bound {
                bad.push((i, j, counts[i]));
            }
            counts[i] = 0;
        }
        touched.clear();
        for &x in s {
            owners[x].push(j as u32);
        }
    }
    bad
}

fn worst_intersection(sets: &[Vec<usize>], universe: usize, bound: usize) -> Option<(usize, usize, usize)> {
    violations(sets, universe, bound).into_iter().max_by_key(|v| v.2)
}

/// Build `m` sets by `strategy`; `c` fixes the intersection-to-size ratio,
/// roughly `2/c`.
pub fn build_design(m: usize, c: f64, strategy: DesignStrategy, seed: u64) -> Result<DesignFamily> {
    build_design_with_cap(m, c, strategy, seed, DEFAULT_VERIFICATION_CAP)
}

pub fn build_design_with_cap(
    m: usize,
    c: f64,
    strategy: DesignStrategy,
    seed: u64,
    cap: usize,
) -> Result<DesignFamily> {
    if m < 2 {
        return Err(Error::param(format!("design needs m >= 2, got {m}")));
    }
    if !(c > 1.0) || !c.is_finite() {
        return Err(Error::param(format!("design needs c > 1, got {c}")));
    }
    let mut family = match strategy {
        DesignStrategy::RandomizedVerified => randomized(m, c, seed, cap)?,
        DesignStrategy::Polynomial => polynomial(m, c)?,
    };
    family.c = Some(c);
    family.strategy = Some(strategy);
    Ok(family)
}

fn randomized(m: usize, c: f64, seed: u64, cap: usize) -> Result<DesignFamily> {
    if m > cap {
        return Err(Error::VerificationCap { sets: m, cap });
    }
    let lg = (m as f64).log2().ceil();
    let set_size = (c * c * lg).ceil() as usize;
    let universe = (50.0 * c * c * c * lg).ceil() as usize;
    let bound = (2.0 * c * lg).floor() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let mut s = sample(rng, universe, set_size).into_vec();
        s.sort_unstable();
        s
    };
    let mut sets: Vec<Vec<usize>> = (0..m).map(|_| draw(&mut rng)).collect();
    for _ in 0..MAX_RESAMPLE_ROUNDS {
        let bad = violations(&sets, universe, bound);
        if bad.is_empty() {
            return DesignFamily::new(sets, universe, set_size, bound);
        }
        log::debug!("design: resampling {} offending sets", bad.len());
        for (_, j, _) in bad {
            sets[j] = draw(&mut rng);
        }
    }
    Err(Error::Invariant(format!(
        "random design for m={m} still violates the bound after {MAX_RESAMPLE_ROUNDS} rounds"
    )))
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|p| p * p <= q).all(|p| q % p != 0)
}

/// Smallest prime `q` with `d = ⌊2q/c⌋` and `q^(d+1) ≥ m`.
pub fn polynomial_parameters(m: usize, c: f64) -> Result<(u64, usize)> {
    for q in (2..=MAX_FIELD).filter(|&q| is_prime(q)) {
        let d = (2.0 * q as f64 / c).floor() as usize;
        let mut count = 1u128;
        for _ in 0..=d {
            count = count.saturating_mul(q as u128);
            if count >= m as u128 {
                return Ok((q, d));
            }
        }
    }
    Err(Error::NoPrimeField(format!(
        "no prime up to {MAX_FIELD} fits m={m}, c={c}"
    )))
}

fn polynomial(m: usize, c: f64) -> Result<DesignFamily> {
    let (q, d) = polynomial_parameters(m, c)?;
    let q_us = q as usize;
    let mut sets = Vec::with_capacity(m);
    for i in 0..m {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut rest = i;
        for _ in 0..=d {
            coeffs.push((rest % q_us) as u64);
            rest /= q_us;
        }
        let set: Vec<usize> = (0..q)
            .map(|x| {
                let y = coeffs.iter().rev().fold(0u64, |acc, &a| (acc * x + a) % q);
                (x * q + y) as usize
            })
            .collect();
        sets.push(set);
    }
    let family = DesignFamily {
        sets,
        universe: q_us * q_us,
        set_size: q_us,
        intersection_bound: d,
        c: None,
        strategy: None,
    };
    debug_assert!(family.max_intersection() <= d);
    Ok(family)
}

/// A design set rendered as a node label in one of three number systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Label {
    /// Decimal digit 1 at each member position.
    Decimal(BigInt),
    /// Bit 1 at each member position.
    Binary(BitString),
    /// Z₃ digit 1 at each member position.
    Ternary(Z3Vector),
}

pub fn design_to_label(family: &DesignFamily, i: usize, base: u32) -> Result<Label> {
    if i >= family.len() {
        return Err(Error::param(format!("set {i} out of range for {} sets", family.len())));
    }
    let set = family.set(i);
    match base {
        10 => {
            let mut digits = vec![0u8; set.last().map_or(0, |&x| x + 1)];
            for &x in set {
                digits[x] = 1;
            }
            let value = BigInt::from_radix_le(Sign::Plus, &digits, 10).expect("digits below 10");
            Ok(Label::Decimal(value))
        }
        2 => Ok(Label::Binary(BitString::from_positions(
            family.universe,
            set.iter().copied(),
        )?)),
        3 => {
            let mut v = Z3Vector::zero(family.universe);
            for &x in set {
                v.set(x, 1)?;
            }
            Ok(Label::Ternary(v))
        }
        other => Err(Error::param(format!("unknown label base {other}"))),
    }
}
