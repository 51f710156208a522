//! Text formats for graphs and certificates.
//!
//! Graph file:
//!
//! ```text
//! group: Z/3
//! vertices: 4
//! A: finite [(0)]
//! 0 1 (1)
//! ```
//!
//! Certificates start with `certificate: partition|cycle|subdivision` and
//! `graph-sha256: <hex>`, the hash of the canonical graph text.

use std::collections::HashSet;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use super::{CycleCert, LGraph, PartitionCert, SubdivCert, ValueSet};
use crate::abelian::{Elem, Group, SubgroupDesc};
use crate::error::{GraphError, ParseError};

/// Meaningful lines with their 1-based numbers; `#` starts a comment.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Value after `key:` on a line, or an error naming the key.
pub(crate) fn keyed<'a>(line: usize, text: &'a str, key: &str) -> Result<&'a str, ParseError> {
    text.strip_prefix(key)
        .and_then(|rest| rest.trim_start().strip_prefix(':'))
        .map(str::trim)
        .ok_or_else(|| ParseError::new(line, format!("expected `{key}:`")))
}

pub(crate) fn parse_usize(line: usize, text: &str) -> Result<usize, ParseError> {
    text.trim()
        .parse()
        .map_err(|_| ParseError::new(line, format!("expected a non-negative integer, got `{text}`")))
}

pub(crate) fn parse_vertices(line: usize, text: &str) -> Result<Vec<usize>, ParseError> {
    text.split_whitespace().map(|t| parse_usize(line, t)).collect()
}

pub(crate) fn parse_elem(line: usize, group: &Group, text: &str) -> Result<Elem, ParseError> {
    group
        .parse_elem(text)
        .map_err(|e| ParseError::new(line, e.to_string()))
}

pub(crate) fn join(vertices: &[usize]) -> String {
    vertices
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_value_set(line: usize, group: &Group, text: &str) -> Result<ValueSet, ParseError> {
    let (kind, rest) = text
        .split_once('[')
        .ok_or_else(|| ParseError::new(line, "expected `[` in value set"))?;
    let body = rest
        .trim_end()
        .strip_suffix(']')
        .ok_or_else(|| ParseError::new(line, "expected `]` closing the value set"))?;
    let elems = body
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_elem(line, group, s))
        .collect::<Result<Vec<_>, _>>()?;
    let err = |e: GraphError| ParseError::new(line, e.to_string());
    match kind.trim() {
        "finite" => ValueSet::finite(group, elems).map_err(err),
        "cofinite" => ValueSet::cofinite(group, elems).map_err(err),
        "co-subgroup" => {
            let sub = SubgroupDesc::new(group, elems).map_err(|e| ParseError::new(line, e.to_string()))?;
            ValueSet::co_subgroup(sub).map_err(err)
        }
        other => Err(ParseError::new(line, format!("unknown value-set form `{other}`"))),
    }
}

/// Parses a value set written as on the `A:` line of a graph file.
pub fn parse_value_set_str(group: &Group, text: &str) -> Result<ValueSet, ParseError> {
    parse_value_set(1, group, text)
}

/// Parses a graph file into the graph and its value set.
pub fn parse_graph(text: &str) -> Result<(LGraph, ValueSet), ParseError> {
    let mut lines = content_lines(text);
    let (l1, t1) = lines.next().ok_or_else(|| ParseError::new(1, "missing `group:` line"))?;
    let group: Group = keyed(l1, t1, "group")?
        .parse()
        .map_err(|e: crate::error::GroupError| ParseError::new(l1, e.to_string()))?;
    let (l2, t2) = lines.next().ok_or_else(|| ParseError::new(l1 + 1, "missing `vertices:` line"))?;
    let n = parse_usize(l2, keyed(l2, t2, "vertices")?)?;
    let (l3, t3) = lines.next().ok_or_else(|| ParseError::new(l2 + 1, "missing `A:` line"))?;
    let a = parse_value_set(l3, &group, keyed(l3, t3, "A")?)?;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for (ln, line) in lines {
        let mut parts = line.splitn(3, char::is_whitespace);
        let (Some(u), Some(v), Some(label)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(ParseError::new(ln, "expected `u v (label)`"));
        };
        let u = parse_usize(ln, u)?;
        let v = parse_usize(ln, v)?;
        let label = parse_elem(ln, &group, label)?;
        let problem = if u >= n || v >= n {
            Some(GraphError::NoSuchVertex(u.max(v)))
        } else if u == v {
            Some(GraphError::Loop(u))
        } else if !seen.insert((u.min(v), u.max(v))) {
            Some(GraphError::DuplicateEdge(u.min(v), u.max(v)))
        } else {
            None
        };
        if let Some(e) = problem {
            return Err(ParseError::new(ln, e.to_string()));
        }
        edges.push((u, v, label));
    }
    let g = LGraph::new(&group, n, edges).map_err(|e| ParseError::new(l3, e.to_string()))?;
    Ok((g, a))
}

/// Canonical graph text: sorted edges, one per line.
pub fn write_graph(g: &LGraph, a: &ValueSet) -> String {
    let mut out = String::new();
    writeln!(out, "group: {}", g.group()).unwrap();
    writeln!(out, "vertices: {}", g.n()).unwrap();
    writeln!(out, "A: {a}").unwrap();
    for (&(u, v), label) in g.edges().iter().zip(g.labels()) {
        writeln!(out, "{u} {v} {label}").unwrap();
    }
    out
}

/// SHA-256 of the canonical graph text, hex encoded.
pub fn graph_hash(g: &LGraph, a: &ValueSet) -> String {
    hex::encode(Sha256::digest(write_graph(g, a).as_bytes()))
}

/// Any of the three certificate kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Partition(PartitionCert),
    Cycle(CycleCert),
    Subdivision(SubdivCert),
}

/// A certificate together with the hash of the graph it refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertFile {
    pub graph_sha256: String,
    pub cert: Certificate,
}

pub fn write_certificate(graph_sha256: &str, cert: &Certificate) -> String {
    let mut out = String::new();
    let kind = match cert {
        Certificate::Partition(_) => "partition",
        Certificate::Cycle(_) => "cycle",
        Certificate::Subdivision(_) => "subdivision",
    };
    writeln!(out, "certificate: {kind}").unwrap();
    writeln!(out, "graph-sha256: {graph_sha256}").unwrap();
    match cert {
        Certificate::Partition(p) => {
            writeln!(out, "parts: {}", p.parts()).unwrap();
            writeln!(out, "assignment: {}", join(&p.assignment)).unwrap();
        }
        Certificate::Cycle(c) => {
            writeln!(out, "min-length: {}", c.min_len).unwrap();
            writeln!(out, "value: {}", c.value).unwrap();
            writeln!(out, "cycle: {}", join(&c.vertices)).unwrap();
        }
        Certificate::Subdivision(s) => {
            writeln!(out, "min-length: {}", s.min_len).unwrap();
            writeln!(out, "branch: {}", join(&s.branch)).unwrap();
            let t = s.branch.len();
            let mut k = 0;
            for i in 0..t {
                for j in i + 1..t {
                    writeln!(out, "path {i} {j}: {}", join(&s.paths[k])).unwrap();
                    k += 1;
                }
            }
        }
    }
    out
}

/// Parses a certificate; element values are read in `group`.
pub fn parse_certificate(text: &str, group: &Group) -> Result<CertFile, ParseError> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let at = |i: usize| -> Result<(usize, &str), ParseError> {
        lines.get(i).copied().ok_or_else(|| {
            let ln = lines.last().map_or(1, |l| l.0 + 1);
            ParseError::new(ln, "certificate ends early")
        })
    };
    let (l0, t0) = at(0)?;
    let kind = keyed(l0, t0, "certificate")?;
    let (l1, t1) = at(1)?;
    let hash = keyed(l1, t1, "graph-sha256")?.to_string();
    let cert = match kind {
        "partition" => {
            let (l2, t2) = at(2)?;
            let parts = parse_usize(l2, keyed(l2, t2, "parts")?)?;
            let (l3, t3) = at(3)?;
            let assignment = parse_vertices(l3, keyed(l3, t3, "assignment")?)?;
            let cert = PartitionCert { assignment };
            if cert.parts() != parts {
                return Err(ParseError::new(
                    l2,
                    format!("declared {parts} parts but assignment uses {}", cert.parts()),
                ));
            }
            expect_end(&lines, 4)?;
            Certificate::Partition(cert)
        }
        "cycle" => {
            let (l2, t2) = at(2)?;
            let min_len = parse_usize(l2, keyed(l2, t2, "min-length")?)?;
            let (l3, t3) = at(3)?;
            let value = parse_elem(l3, group, keyed(l3, t3, "value")?)?;
            let (l4, t4) = at(4)?;
            let vertices = parse_vertices(l4, keyed(l4, t4, "cycle")?)?;
            expect_end(&lines, 5)?;
            Certificate::Cycle(CycleCert {
                vertices,
                value,
                min_len,
            })
        }
        "subdivision" => {
            let (l2, t2) = at(2)?;
            let min_len = parse_usize(l2, keyed(l2, t2, "min-length")?)?;
            let (l3, t3) = at(3)?;
            let branch = parse_vertices(l3, keyed(l3, t3, "branch")?)?;
            let t = branch.len();
            let mut paths = Vec::new();
            let mut idx = 4;
            for i in 0..t {
                for j in i + 1..t {
                    let (ln, text) = at(idx)?;
                    idx += 1;
                    let body = keyed(ln, text, &format!("path {i} {j}"))?;
                    paths.push(parse_vertices(ln, body)?);
                }
            }
            expect_end(&lines, idx)?;
            Certificate::Subdivision(SubdivCert {
                branch,
                paths,
                min_len,
            })
        }
        other => return Err(ParseError::new(l0, format!("unknown certificate kind `{other}`"))),
    };
    Ok(CertFile {
        graph_sha256: hash,
        cert,
    })
}

fn expect_end(lines: &[(usize, &str)], used: usize) -> Result<(), ParseError> {
    match lines.get(used) {
        Some(&(ln, _)) => Err(ParseError::new(ln, "unexpected trailing line")),
        None => Ok(()),
    }
}
