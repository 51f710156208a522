//! Witness types and their verifiers.

use std::fmt;

use super::{find_a_cycle_within, has_a_cycle_within, LGraph, ValueSet};
use crate::abelian::Elem;

/// A simple cycle claimed to have value `value` in `A` and length at
/// least `min_len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCert {
    pub vertices: Vec<usize>,
    pub value: Elem,
    pub min_len: usize,
}

/// A subdivision of `K_t`: branching vertices and one path per pair of
/// positions `(i, j)`, `i < j`, listed in lexicographic pair order, each
/// running from `branch[i]` to `branch[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivCert {
    pub branch: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
    pub min_len: usize,
}

impl SubdivCert {
    /// Index of the path for the position pair `{i, j}` among `t` branches.
    pub fn pair_index(t: usize, i: usize, j: usize) -> usize {
        let (i, j) = (i.min(j), i.max(j));
        i * (2 * t - i - 1) / 2 + (j - i - 1)
    }

    pub fn path_between(&self, i: usize, j: usize) -> Vec<usize> {
        let p = &self.paths[Self::pair_index(self.branch.len(), i, j)];
        if i < j {
            p.clone()
        } else {
            p.iter().rev().copied().collect()
        }
    }
}

/// Vertex partition; `assignment[v]` is the 1-based part of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionCert {
    pub assignment: Vec<usize>,
}

impl PartitionCert {
    pub fn parts(&self) -> usize {
        self.assignment.iter().copied().max().unwrap_or(0)
    }

    pub fn part(&self, index: usize) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&v| self.assignment[v] == index)
            .collect()
    }
}

/// First rule a certificate breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    VertexOutOfRange(usize),
    RepeatedVertex(usize),
    MissingEdge(usize, usize),
    CycleTooShort(usize),
    ValueMismatch { claimed: String, actual: String },
    ValueNotInA { value: String },
    BelowMinLength { len: usize, min: usize },
    PathCount { expected: usize, found: usize },
    PathEndpoints { pair: (usize, usize) },
    PathTouchesBranch { pair: (usize, usize), vertex: usize },
    PathsShareVertex { vertex: usize },
    PathValueNotInA { pair: (usize, usize), value: String },
    PathTooShort { pair: (usize, usize), len: usize, min: usize },
    AssignmentLength { expected: usize, found: usize },
    PartIndexGap(usize),
    PartHasACycle { part: usize, cycle: Vec<usize> },
    TooManyParts { parts: usize, bound: usize },
}

impl Violation {
    /// Short name of the broken rule.
    pub fn rule(&self) -> &'static str {
        match self {
            Violation::VertexOutOfRange(_) => "vertex-range",
            Violation::RepeatedVertex(_) => "distinct-vertices",
            Violation::MissingEdge(..) => "edges-exist",
            Violation::CycleTooShort(_) => "cycle-length",
            Violation::ValueMismatch { .. } => "claimed-value",
            Violation::ValueNotInA { .. } => "value-in-A",
            Violation::BelowMinLength { .. } => "min-length",
            Violation::PathCount { .. } => "path-count",
            Violation::PathEndpoints { .. } => "path-endpoints",
            Violation::PathTouchesBranch { .. } => "internal-avoids-branch",
            Violation::PathsShareVertex { .. } => "internally-disjoint",
            Violation::PathValueNotInA { .. } => "path-value-in-A",
            Violation::PathTooShort { .. } => "path-min-length",
            Violation::AssignmentLength { .. } => "partition-total",
            Violation::PartIndexGap(_) => "partition-contiguous",
            Violation::PartHasACycle { .. } => "part-A-cycle-free",
            Violation::TooManyParts { .. } => "part-count",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {}: ", self.rule())?;
        match self {
            Violation::VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
            Violation::RepeatedVertex(v) => write!(f, "vertex {v} repeated"),
            Violation::MissingEdge(u, v) => write!(f, "no edge {u}-{v}"),
            Violation::CycleTooShort(len) => write!(f, "cycle has {len} vertices"),
            Violation::ValueMismatch { claimed, actual } => {
                write!(f, "claimed value {claimed}, actual {actual}")
            }
            Violation::ValueNotInA { value } => write!(f, "value {value} not in A"),
            Violation::BelowMinLength { len, min } => write!(f, "length {len} < {min}"),
            Violation::PathCount { expected, found } => {
                write!(f, "expected {expected} paths, found {found}")
            }
            Violation::PathEndpoints { pair } => {
                write!(f, "path {} {} has wrong endpoints", pair.0, pair.1)
            }
            Violation::PathTouchesBranch { pair, vertex } => write!(
                f,
                "path {} {} passes through branching vertex {vertex}",
                pair.0, pair.1
            ),
            Violation::PathsShareVertex { vertex } => {
                write!(f, "vertex {vertex} is internal to two paths or repeated")
            }
            Violation::PathValueNotInA { pair, value } => {
                write!(f, "path {} {} has value {value} not in A", pair.0, pair.1)
            }
            Violation::PathTooShort { pair, len, min } => {
                write!(f, "path {} {} has length {len} < {min}", pair.0, pair.1)
            }
            Violation::AssignmentLength { expected, found } => {
                write!(f, "{found} assignments for {expected} vertices")
            }
            Violation::PartIndexGap(i) => write!(f, "part {i} is empty or index is zero"),
            Violation::PartHasACycle { part, cycle } => {
                write!(f, "part {part} contains A-cycle {cycle:?}")
            }
            Violation::TooManyParts { parts, bound } => {
                write!(f, "{parts} parts exceed the bound {bound}")
            }
        }
    }
}

fn check_vertices(g: &LGraph, vertices: &[usize]) -> Result<(), Violation> {
    let mut seen = vec![false; g.n()];
    for &v in vertices {
        if v >= g.n() {
            return Err(Violation::VertexOutOfRange(v));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Violation::RepeatedVertex(v));
        }
    }
    Ok(())
}

fn check_edges(g: &LGraph, walk: &[usize]) -> Result<(), Violation> {
    for w in walk.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(Violation::MissingEdge(w[0], w[1]));
        }
    }
    Ok(())
}

/// Checks a cycle certificate against `A`.
pub fn verify_cycle(g: &LGraph, a: &ValueSet, cert: &CycleCert) -> Result<(), Violation> {
    let c = &cert.vertices;
    check_vertices(g, c)?;
    if c.len() < 3 {
        return Err(Violation::CycleTooShort(c.len()));
    }
    let mut closed = c.clone();
    closed.push(c[0]);
    check_edges(g, &closed)?;
    let actual = g.cycle_value(c).expect("edges checked");
    if actual != cert.value {
        return Err(Violation::ValueMismatch {
            claimed: cert.value.to_string(),
            actual: actual.to_string(),
        });
    }
    if !a.contains(&actual) {
        return Err(Violation::ValueNotInA {
            value: actual.to_string(),
        });
    }
    if c.len() < cert.min_len {
        return Err(Violation::BelowMinLength {
            len: c.len(),
            min: cert.min_len,
        });
    }
    Ok(())
}

/// Checks a subdivision certificate against `A`.
pub fn verify_subdivision(g: &LGraph, a: &ValueSet, cert: &SubdivCert) -> Result<(), Violation> {
    check_vertices(g, &cert.branch)?;
    let t = cert.branch.len();
    let expected = t * t.saturating_sub(1) / 2;
    if cert.paths.len() != expected {
        return Err(Violation::PathCount {
            expected,
            found: cert.paths.len(),
        });
    }
    let mut is_branch = vec![false; g.n()];
    for &b in &cert.branch {
        is_branch[b] = true;
    }
    let mut used = vec![false; g.n()];
    let mut k = 0;
    for i in 0..t {
        for j in i + 1..t {
            let pair = (i, j);
            let path = &cert.paths[k];
            k += 1;
            if path.first() != Some(&cert.branch[i]) || path.last() != Some(&cert.branch[j]) {
                return Err(Violation::PathEndpoints { pair });
            }
            check_vertices(g, path)?;
            check_edges(g, path)?;
            for &v in &path[1..path.len() - 1] {
                if is_branch[v] {
                    return Err(Violation::PathTouchesBranch { pair, vertex: v });
                }
                if std::mem::replace(&mut used[v], true) {
                    return Err(Violation::PathsShareVertex { vertex: v });
                }
            }
            let value = g.path_value(path).expect("edges checked");
            if !a.contains(&value) {
                return Err(Violation::PathValueNotInA {
                    pair,
                    value: value.to_string(),
                });
            }
            let len = path.len() - 1;
            if len < cert.min_len {
                return Err(Violation::PathTooShort {
                    pair,
                    len,
                    min: cert.min_len,
                });
            }
        }
    }
    Ok(())
}

/// Checks a partition certificate; `bound` caps the number of parts.
/// Returns the number of parts.
pub fn verify_partition(
    g: &LGraph,
    a: &ValueSet,
    cert: &PartitionCert,
    bound: Option<usize>,
) -> Result<usize, Violation> {
    if cert.assignment.len() != g.n() {
        return Err(Violation::AssignmentLength {
            expected: g.n(),
            found: cert.assignment.len(),
        });
    }
    let k = cert.parts();
    let mut present = vec![false; k + 1];
    for &p in &cert.assignment {
        present[p] = true;
    }
    if let Some(gap) = (0..=k).find(|&i| (i == 0) == present[i]) {
        return Err(Violation::PartIndexGap(gap));
    }
    if let Some(bound) = bound {
        if k > bound {
            return Err(Violation::TooManyParts { parts: k, bound });
        }
    }
    for part in 1..=k {
        let mask: Vec<bool> = cert.assignment.iter().map(|&p| p == part).collect();
        if has_a_cycle_within(g, a, &mask) {
            let cycle = find_a_cycle_within(g, a, &mask, 3)
                .expect("an A-cycle exists")
                .vertices;
            return Err(Violation::PartHasACycle { part, cycle });
        }
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::Group;

    fn k4_z3() -> (LGraph, ValueSet) {
        let z3 = Group::cyclic(3).unwrap();
        let one = z3.elem([1]).unwrap();
        let edges = (0..4)
            .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
            .map(|(u, v)| (u, v, one.clone()));
        let g = LGraph::new(&z3, 4, edges).unwrap();
        let a = ValueSet::finite(&z3, vec![z3.zero()]).unwrap();
        (g, a)
    }

    #[test]
    fn pair_indexing() {
        let t = 4;
        let mut k = 0;
        for i in 0..t {
            for j in i + 1..t {
                assert_eq!(SubdivCert::pair_index(t, i, j), k);
                assert_eq!(SubdivCert::pair_index(t, j, i), k);
                k += 1;
            }
        }
    }

    #[test]
    fn singleton_partition_is_valid() {
        let (g, a) = k4_z3();
        let cert = PartitionCert {
            assignment: vec![1, 2, 3, 4],
        };
        assert_eq!(verify_partition(&g, &a, &cert, Some(4)), Ok(4));
    }

    #[test]
    fn triangle_part_is_rejected() {
        let (g, a) = k4_z3();
        let cert = PartitionCert {
            assignment: vec![1, 1, 1, 2],
        };
        let err = verify_partition(&g, &a, &cert, None).unwrap_err();
        assert_eq!(err.rule(), "part-A-cycle-free");
    }

    #[test]
    fn partition_structure_rules() {
        let (g, a) = k4_z3();
        let short = PartitionCert {
            assignment: vec![1, 2, 1],
        };
        assert_eq!(verify_partition(&g, &a, &short, None).unwrap_err().rule(), "partition-total");
        let gap = PartitionCert {
            assignment: vec![1, 3, 1, 3],
        };
        assert_eq!(verify_partition(&g, &a, &gap, None).unwrap_err(), Violation::PartIndexGap(2));
        let zero = PartitionCert {
            assignment: vec![0, 1, 1, 2],
        };
        assert_eq!(verify_partition(&g, &a, &zero, None).unwrap_err(), Violation::PartIndexGap(0));
        let ok = PartitionCert {
            assignment: vec![1, 1, 2, 2],
        };
        assert_eq!(
            verify_partition(&g, &a, &ok, Some(1)).unwrap_err().rule(),
            "part-count"
        );
    }

    #[test]
    fn cycle_rules() {
        let (g, a) = k4_z3();
        let zero = g.group().zero();
        let good = CycleCert {
            vertices: vec![0, 1, 2],
            value: zero.clone(),
            min_len: 3,
        };
        assert_eq!(verify_cycle(&g, &a, &good), Ok(()));
        let long = CycleCert {
            min_len: 4,
            ..good.clone()
        };
        assert_eq!(verify_cycle(&g, &a, &long).unwrap_err().rule(), "min-length");
        let four = CycleCert {
            vertices: vec![0, 1, 2, 3],
            value: g.group().elem([1]).unwrap(),
            min_len: 3,
        };
        assert_eq!(verify_cycle(&g, &a, &four).unwrap_err().rule(), "value-in-A");
        let lie = CycleCert {
            vertices: vec![0, 1, 2, 3],
            value: zero,
            min_len: 3,
        };
        assert_eq!(verify_cycle(&g, &a, &lie).unwrap_err().rule(), "claimed-value");
    }

    #[test]
    fn subdivision_rules() {
        let (g, a) = k4_z3();
        // K_2 on {0, 1} through 2 and 3: value 3 = 0.
        let good = SubdivCert {
            branch: vec![0, 1],
            paths: vec![vec![0, 2, 3, 1]],
            min_len: 3,
        };
        assert_eq!(verify_subdivision(&g, &a, &good), Ok(()));
        let bad_value = SubdivCert {
            branch: vec![0, 1],
            paths: vec![vec![0, 2, 1]],
            min_len: 1,
        };
        assert_eq!(
            verify_subdivision(&g, &a, &bad_value).unwrap_err().rule(),
            "path-value-in-A"
        );
        let through_branch = SubdivCert {
            branch: vec![0, 1, 2],
            paths: vec![vec![0, 2, 3, 1], vec![0, 2], vec![1, 2]],
            min_len: 1,
        };
        assert_eq!(
            verify_subdivision(&g, &a, &through_branch).unwrap_err().rule(),
            "internal-avoids-branch"
        );
    }
}
