//! Plain-text instance formats.
//!
//! * `edges`: header `n m`, then one `u v` line per edge, by node label.
//! * `ints`: one decimal integer per line.
//! * `hexvecs`: header `n l`, then one hex string per vector.
//! * `c3xor`: header `n w`, then `index hex` or `index -` for an absent cell.
//! * `z3vecs`: header `n t`, then one base-3 digit string per vector.
//!
//! Hex and base-3 strings are big-endian: the last character holds bit (or
//! digit) 0. Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::graph::{normalize_graph, Graph};
use crate::instance::{BitVectorSet, C3xorArray, Instance, IntegerSet, Z3VectorSet};
use crate::z3::Z3Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Edges,
    Ints,
    HexVecs,
    Z3Vecs,
    C3xor,
}

impl Format {
    pub fn of(instance: &Instance) -> Format {
        match instance {
            Instance::Graph(_) => Format::Edges,
            Instance::ThreeSum(_) => Format::Ints,
            Instance::ThreeXor(_) => Format::HexVecs,
            Instance::C3xor(_) => Format::C3xor,
            Instance::SixSumZ3(_) => Format::Z3Vecs,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Format::Edges => "edges",
            Format::Ints => "ints",
            Format::HexVecs => "hexvecs",
            Format::Z3Vecs => "z3vecs",
            Format::C3xor => "c3xor",
        }
    }
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edges" => Ok(Format::Edges),
            "ints" => Ok(Format::Ints),
            "hexvecs" => Ok(Format::HexVecs),
            "z3vecs" => Ok(Format::Z3Vecs),
            "c3xor" => Ok(Format::C3xor),
            other => Err(Error::param(format!("unknown format {other:?}"))),
        }
    }
}

pub fn to_text(instance: &Instance) -> String {
    let mut out = String::new();
    match instance {
        Instance::Graph(g) => {
            let _ = writeln!(out, "{} {}", g.node_count(), g.edge_count());
            for (u, v) in g.labelled_edges() {
                let _ = writeln!(out, "{u} {v}");
            }
        }
        Instance::ThreeSum(s) => {
            for v in s.values() {
                let _ = writeln!(out, "{v}");
            }
        }
        Instance::ThreeXor(s) => {
            let _ = writeln!(out, "{} {}", s.len(), s.width());
            for v in s.vectors() {
                let _ = writeln!(out, "{}", v.to_hex());
            }
        }
        Instance::C3xor(a) => {
            let _ = writeln!(out, "{} {}", a.len(), a.width());
            for (i, cell) in a.entries().iter().enumerate() {
                match cell {
                    Some(v) => writeln!(out, "{i} {}", v.to_hex()),
                    None => writeln!(out, "{i} -"),
                }
                .expect("writing to a String");
            }
        }
        Instance::SixSumZ3(s) => {
            let _ = writeln!(out, "{} {}", s.len(), s.dimension());
            for v in s.elements() {
                let _ = writeln!(out, "{}", v.to_digit_string());
            }
        }
    }
    out
}

/// Non-blank, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn field<T: std::str::FromStr>(token: Option<&str>, line: usize, what: &str) -> Result<T> {
    let token = token.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("bad {what} {token:?}")))
}

fn header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<(usize, usize)> {
    let (no, line) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
    let mut parts = line.split_whitespace();
    let a = field(parts.next(), no, "header count")?;
    let b = field(parts.next(), no, "header width")?;
    if parts.next().is_some() {
        return Err(Error::parse(no, "header has extra fields"));
    }
    Ok((a, b))
}

fn expect_count(found: usize, promised: usize, what: &str) -> Result<()> {
    if found != promised {
        return Err(Error::parse(
            0,
            format!("header promises {promised} {what}, found {found}"),
        ));
    }
    Ok(())
}

pub fn parse_instance(text: &str, format: Format) -> Result<Instance> {
    let mut lines = content_lines(text);
    match format {
        Format::Edges => {
            let (n, m) = header(&mut lines)?;
            let mut edges = Vec::with_capacity(m);
            for (no, line) in lines {
                let mut parts = line.split_whitespace();
                let u: u64 = field(parts.next(), no, "node label")?;
                let v: u64 = field(parts.next(), no, "node label")?;
                if parts.next().is_some() {
                    return Err(Error::parse(no, "edge line has extra fields"));
                }
                edges.push((u, v));
            }
            expect_count(edges.len(), m, "edges")?;
            Ok(Instance::Graph(with_isolated_nodes(&edges, n)?))
        }
        Format::Ints => {
            let mut values = Vec::new();
            for (no, line) in lines {
                values.push(field(Some(&line.replace('\u{2212}', "-")), no, "integer")?);
            }
            Ok(Instance::ThreeSum(IntegerSet::new(values)?))
        }
        Format::HexVecs => {
            let (n, width) = header(&mut lines)?;
            let mut vectors = Vec::with_capacity(n);
            for (no, line) in lines {
                vectors.push(BitString::from_hex(line, width).map_err(|e| Error::parse(no, e.to_string()))?);
            }
            expect_count(vectors.len(), n, "vectors")?;
            Ok(Instance::ThreeXor(BitVectorSet::new(width, vectors)?))
        }
        Format::C3xor => {
            let (n, width) = header(&mut lines)?;
            let mut entries: Vec<Option<Option<BitString>>> = vec![None; n];
            for (no, line) in lines {
                let mut parts = line.split_whitespace();
                let i: usize = field(parts.next(), no, "index")?;
                let value = parts.next().ok_or_else(|| Error::parse(no, "missing value"))?;
                if i >= n {
                    return Err(Error::parse(no, format!("index {i} outside 0..{n}")));
                }
                if entries[i].is_some() {
                    return Err(Error::parse(no, format!("index {i} given twice")));
                }
                let cell = match value {
                    "-" => None,
                    hex => Some(BitString::from_hex(hex, width).map_err(|e| Error::parse(no, e.to_string()))?),
                };
                entries[i] = Some(cell);
            }
            if let Some(i) = entries.iter().position(Option::is_none) {
                return Err(Error::parse(0, format!("no line for index {i}")));
            }
            Ok(Instance::C3xor(C3xorArray::new(
                width,
                entries.into_iter().flatten().collect(),
            )?))
        }
        Format::Z3Vecs => {
            let (n, t) = header(&mut lines)?;
            let mut elements = Vec::with_capacity(n);
            for (no, line) in lines {
                let v = Z3Vector::from_digit_string(line).map_err(|e| Error::parse(no, e.to_string()))?;
                if v.len() != t {
                    return Err(Error::parse(no, format!("expected {t} digits, found {}", v.len())));
                }
                elements.push(v);
            }
            expect_count(elements.len(), n, "vectors")?;
            Ok(Instance::SixSumZ3(Z3VectorSet::new(t, elements)?))
        }
    }
}

/// Normalize labelled edges, then add isolated nodes up to `n`, taking the
/// smallest labels not already used.
fn with_isolated_nodes(edges: &[(u64, u64)], n: usize) -> Result<Graph> {
    let (g, _) = normalize_graph(edges);
    if g.node_count() > n {
        return Err(Error::parse(
            0,
            format!("header promises {n} nodes, edges use {}", g.node_count()),
        ));
    }
    if g.node_count() == n {
        return Ok(g);
    }
    let mut labels: BTreeSet<u64> = g.labels().iter().copied().collect();
    let mut next = 0u64;
    while labels.len() < n {
        labels.insert(next);
        next += 1;
    }
    let labels: Vec<u64> = labels.into_iter().collect();
    let index = |l: u64| labels.binary_search(&l).expect("label present");
    let dense: Vec<(usize, usize)> = g
        .labelled_edges()
        .into_iter()
        .map(|(u, v)| (index(u), index(v)))
        .collect();
    Graph::from_edges(n, dense).with_labels(labels)
}

pub fn read_instance(path: impl AsRef<Path>, format: Format) -> Result<Instance> {
    parse_instance(&std::fs::read_to_string(path)?, format)
}

pub fn write_instance(instance: &Instance, path: impl AsRef<Path>, format: Format) -> Result<()> {
    if Format::of(instance) != format {
        return Err(Error::param(format!("instance cannot be written as {}", format.name())));
    }
    std::fs::write(path, to_text(instance))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip(instance: &Instance) {
        let text = to_text(instance);
        assert_eq!(
            &parse_instance(&text, Format::of(instance)).unwrap(),
            instance,
            "{text}"
        );
    }

    #[test]
    fn examples() {
        let k3 = parse_instance("3 3\n1 2\n2 3\n1 3\n", Format::Edges).unwrap();
        let Instance::Graph(g) = &k3 else { panic!() };
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.labels(), &[1, 2, 3]);
        round_trip(&k3);

        let ints = parse_instance("-1\n0\n2\n", Format::Ints).unwrap();
        assert_eq!(to_text(&ints), "-1\n0\n2\n");
        assert_eq!(parse_instance("\u{2212}1\n0\n2\n", Format::Ints).unwrap(), ints);

        let a = parse_instance("4 3\n0 7\n1 1\n2 -\n3 6\n", Format::C3xor).unwrap();
        let Instance::C3xor(arr) = &a else { panic!() };
        assert!(arr.get(2).is_none());
        assert!(to_text(&a).contains("\n2 -\n"));
        round_trip(&a);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_instance("2 1\n1 x\n", Format::Edges).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_instance("2 4\n3\nzz\n", Format::HexVecs).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(parse_instance("2 4\n3\n3\n", Format::HexVecs).is_err());
        assert!(parse_instance("2 3\n0 1\n0 2\n", Format::C3xor).is_err());
        assert!(parse_instance("1 2\n012\n", Format::Z3Vecs).is_err());
        assert!(parse_instance("", Format::Edges).is_err());
    }

    #[test]
    fn isolated_nodes_survive() {
        let g = Graph::from_edges(6, [(1, 4), (4, 5)]);
        round_trip(&Instance::Graph(g));
        let z = Z3VectorSet::new(3, vec![Z3Vector::from_digit_string("210").unwrap(); 2]).unwrap();
        round_trip(&Instance::SixSumZ3(z));
        let v = BitVectorSet::new(9, vec![BitString::from_u64(9, 0x1ff).unwrap(), BitString::zeros(9)]).unwrap();
        round_trip(&Instance::ThreeXor(v));
    }
}
