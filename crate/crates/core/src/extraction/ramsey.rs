//! Exact monochromatic clique search in an edge-coloured complete graph.

use std::collections::BTreeSet;

use crate::abelian::Elem;
use crate::graph::SubdivCert;

/// Colour of a pair: its value is in `A`, or the value itself otherwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairColor {
    InA,
    Value(Elem),
}

/// Complete graph on `vertices` with one colour per pair, pairs in
/// lexicographic order of positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoredClique {
    vertices: Vec<usize>,
    colors: Vec<PairColor>,
}

impl EdgeColoredClique {
    /// `None` unless exactly one colour per pair is given.
    pub fn new(vertices: Vec<usize>, colors: Vec<PairColor>) -> Option<Self> {
        let n = vertices.len();
        (colors.len() == n * n.saturating_sub(1) / 2).then_some(EdgeColoredClique { vertices, colors })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Colour of the pair of positions `i != j`.
    pub fn color(&self, i: usize, j: usize) -> &PairColor {
        &self.colors[SubdivCert::pair_index(self.len(), i, j)]
    }

    /// Distinct colours, sorted.
    pub fn palette(&self) -> Vec<PairColor> {
        self.colors.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Lexicographically first set of `size` positions whose pairs all have
    /// colour `color`.
    pub fn clique_of_color(&self, color: &PairColor, size: usize) -> Option<Vec<usize>> {
        find_clique(self.len(), size, |i, j| self.color(i, j) == color)
    }
}

/// A monochromatic clique: positions into the vertex list and the colour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoClique {
    pub positions: Vec<usize>,
    pub color: PairColor,
}

/// First a `t`-clique of colour [`PairColor::InA`]; failing that, an
/// `s`-clique of a single value colour, trying colours in sorted order.
pub fn mono_clique(k: &EdgeColoredClique, t: usize, s: usize) -> Option<MonoClique> {
    if let Some(positions) = k.clique_of_color(&PairColor::InA, t) {
        return Some(MonoClique {
            positions,
            color: PairColor::InA,
        });
    }
    k.palette()
        .into_iter()
        .filter(|c| *c != PairColor::InA)
        .find_map(|color| {
            k.clique_of_color(&color, s)
                .map(|positions| MonoClique { positions, color })
        })
}

/// Backtracking search for `size` vertices of `0..n`, pairwise joined by
/// `joined`, in lexicographic order.
pub(crate) fn find_clique(n: usize, size: usize, joined: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    fn extend(
        size: usize,
        joined: &impl Fn(usize, usize) -> bool,
        chosen: &mut Vec<usize>,
        candidates: &[usize],
    ) -> bool {
        if chosen.len() == size {
            return true;
        }
        for (idx, &v) in candidates.iter().enumerate() {
            if chosen.len() + candidates.len() - idx < size {
                return false;
            }
            let next: Vec<usize> = candidates[idx + 1..]
                .iter()
                .copied()
                .filter(|&w| joined(v, w))
                .collect();
            chosen.push(v);
            if extend(size, joined, chosen, &next) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if size > n {
        return None;
    }
    let all: Vec<usize> = (0..n).collect();
    let mut chosen = Vec::with_capacity(size);
    extend(size, &joined, &mut chosen, &all).then_some(chosen)
}
