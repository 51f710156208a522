//! Group-labelled simple graphs.

mod cert;
mod cycles;
pub mod format;
mod value_set;

use std::collections::{HashMap, VecDeque};

use crate::abelian::{Elem, Group, SubgroupDesc};
use crate::error::GraphError;

pub use cert::{
    verify_cycle, verify_partition, verify_subdivision, CycleCert, PartitionCert, SubdivCert,
    Violation,
};
pub use cycles::{
    enumerate_cycles_within, enumerate_simple_cycles, find_a_cycle, find_a_cycle_within,
    has_a_cycle_through, has_a_cycle_within, normalize_cycle,
};
pub use value_set::{SetForm, ValueSet};

/// Simple undirected graph with a group element on every edge. Vertices
/// are `0..n`; edges are stored with `u < v`, sorted.
#[derive(Clone, Debug)]
pub struct LGraph {
    group: Group,
    n: usize,
    edges: Vec<(usize, usize)>,
    labels: Vec<Elem>,
    /// `(neighbor, edge index)`, sorted by neighbor.
    adj: Vec<Vec<(usize, usize)>>,
    index: HashMap<(usize, usize), usize>,
}

impl LGraph {
    pub fn new(
        group: &Group,
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, Elem)>,
    ) -> Result<Self, GraphError> {
        let mut list: Vec<(usize, usize, Elem)> = Vec::new();
        for (u, v, label) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::NoSuchVertex(w));
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if !label.group().same_as(group) {
                return Err(crate::error::GroupError::DescriptorMismatch {
                    left: group.to_string(),
                    right: label.group().to_string(),
                }
                .into());
            }
            list.push((u.min(v), u.max(v), label));
        }
        list.sort_by_key(|e| (e.0, e.1));
        let mut index = HashMap::new();
        let mut adj = vec![Vec::new(); n];
        let mut edges_out = Vec::with_capacity(list.len());
        let mut labels = Vec::with_capacity(list.len());
        for (i, (u, v, label)) in list.into_iter().enumerate() {
            if index.insert((u, v), i).is_some() {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adj[u].push((v, i));
            adj[v].push((u, i));
            edges_out.push((u, v));
            labels.push(label);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(LGraph {
            group: group.clone(),
            n,
            edges: edges_out,
            labels,
            adj,
            index,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(u, v)` with `u < v`, in sorted order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> &[Elem] {
        &self.labels
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn label(&self, u: usize, v: usize) -> Option<&Elem> {
        self.edge_index(u, v).map(|i| &self.labels[i])
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub(crate) fn adjacency(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Sum of the labels of the given edges (by index).
    pub fn gamma_value(&self, edge_ids: &[usize]) -> Result<Elem, GraphError> {
        let mut total = self.group.zero();
        for &e in edge_ids {
            let label = self.labels.get(e).ok_or(GraphError::NoSuchEdge(e, e))?;
            total = &total + label;
        }
        Ok(total)
    }

    /// Sum of the labels of the given `(u, v)` pairs.
    pub fn gamma_of_pairs(&self, pairs: &[(usize, usize)]) -> Result<Elem, GraphError> {
        let mut total = self.group.zero();
        for &(u, v) in pairs {
            let label = self.label(u, v).ok_or(GraphError::NoSuchEdge(u, v))?;
            total = &total + label;
        }
        Ok(total)
    }

    /// Value of the walk through consecutive vertices of `path`.
    pub fn path_value(&self, path: &[usize]) -> Result<Elem, GraphError> {
        let mut total = self.group.zero();
        for w in path.windows(2) {
            let label = self.label(w[0], w[1]).ok_or(GraphError::NoSuchEdge(w[0], w[1]))?;
            total = &total + label;
        }
        Ok(total)
    }

    /// Value of the closed walk through `cycle` (last vertex back to first).
    pub fn cycle_value(&self, cycle: &[usize]) -> Result<Elem, GraphError> {
        let mut total = self.path_value(cycle)?;
        if let (Some(&first), Some(&last)) = (cycle.first(), cycle.last()) {
            if cycle.len() > 1 {
                let label = self.label(last, first).ok_or(GraphError::NoSuchEdge(last, first))?;
                total = &total + label;
            }
        }
        Ok(total)
    }

    /// Induced subgraph on `vertices`; returns it with the map from new ids
    /// to old ids (which is `vertices` sorted and deduplicated).
    pub fn induced(&self, vertices: &[usize]) -> (LGraph, Vec<usize>) {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .zip(&self.labels)
            .filter(|((u, v), _)| new_id[*u] != usize::MAX && new_id[*v] != usize::MAX)
            .map(|(&(u, v), l)| (new_id[u], new_id[v], l.clone()));
        let sub = LGraph::new(&self.group, keep.len(), edges).expect("subgraph of a valid graph");
        (sub, keep)
    }

    /// Vertex-disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &LGraph) -> Result<LGraph, GraphError> {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .zip(&self.labels)
            .map(|(&(u, v), l)| (u, v, l.clone()))
            .chain(
                other
                    .edges
                    .iter()
                    .zip(&other.labels)
                    .map(|(&(u, v), l)| (u + shift, v + shift, l.clone())),
            )
            .collect::<Vec<_>>();
        LGraph::new(&self.group, self.n + other.n, edges)
    }

    /// Same graph with every label projected into `group / sub`.
    pub fn quotient_relabel(&self, sub: &SubgroupDesc) -> Result<LGraph, GraphError> {
        let q = sub.quotient();
        if !q.source().same_as(&self.group) {
            return Err(crate::error::GroupError::DescriptorMismatch {
                left: self.group.to_string(),
                right: q.source().to_string(),
            }
            .into());
        }
        let edges = self
            .edges
            .iter()
            .zip(&self.labels)
            .map(|(&(u, v), l)| Ok((u, v, q.project(l)?)))
            .collect::<Result<Vec<_>, GraphError>>()?;
        LGraph::new(q.target(), self.n, edges)
    }

    /// Connected components of the subgraph induced by `mask`, each sorted,
    /// listed by smallest vertex.
    pub fn components_within(&self, mask: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if !mask[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if mask[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&vec![true; self.n])
    }

    /// Shortest path from `from` to `to` whose vertices all satisfy
    /// `allowed` (endpoints included); neighbors are explored in id order.
    pub fn shortest_path_within(
        &self,
        from: usize,
        to: usize,
        allowed: impl Fn(usize) -> bool,
    ) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.n];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for w in self.neighbors(v) {
                if parent[w] == usize::MAX && allowed(w) {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

/// Membership mask of a vertex list.
pub fn mask_of(n: usize, vertices: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in vertices {
        mask[v] = true;
    }
    mask
}

/// Checks that `path` is a simple path in `g` (at least one vertex,
/// consecutive vertices adjacent, no repeats).
pub fn is_simple_path(g: &LGraph, path: &[usize]) -> bool {
    if path.is_empty() || path.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let mut seen = vec![false; g.n()];
    for &v in path {
        if std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    path.windows(2).all(|w| g.has_edge(w[0], w[1]))
}
