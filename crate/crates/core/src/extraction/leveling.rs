//! Breadth-first levelings and the heavy level component.

use std::collections::VecDeque;

use crate::arboricity::{arb_exact, arb_of_subset};
use crate::error::ExtractError;
use crate::graph::{LGraph, ValueSet};

const NONE: usize = usize::MAX;

/// Distance layers `L_0 = {start}, L_1, ..., L_p` of a connected vertex
/// set, plus the BFS tree that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leveling {
    start: usize,
    levels: Vec<Vec<usize>>,
    /// BFS parent per vertex; `usize::MAX` outside the leveled set, the
    /// start is its own parent.
    parent: Vec<usize>,
}

impl Leveling {
    pub fn start(&self) -> usize {
        self.start
    }

    /// Levels, each sorted by vertex id.
    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    /// Index `p` of the last level.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// All leveled vertices, sorted.
    pub fn vertices(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.levels.concat();
        all.sort_unstable();
        all
    }

    pub fn parents(&self) -> &[usize] {
        &self.parent
    }

    /// Tree path from the start to `u`, one vertex per level.
    pub fn path_to(&self, u: usize) -> Option<Vec<usize>> {
        tree_path_from_root(&self.parent, self.start, u)
    }
}

/// Path `root -> u` in a parent array, `None` when `u` is not in the tree.
pub(crate) fn tree_path_from_root(parent: &[usize], root: usize, u: usize) -> Option<Vec<usize>> {
    if u >= parent.len() || parent[u] == NONE {
        return None;
    }
    let mut path = vec![u];
    let mut cur = u;
    while cur != root {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    Some(path)
}

/// Unique path `u -> v` in the tree given by `parent` rooted at `root`.
pub(crate) fn tree_path(parent: &[usize], root: usize, u: usize, v: usize) -> Option<Vec<usize>> {
    let pu = tree_path_from_root(parent, root, u)?;
    let pv = tree_path_from_root(parent, root, v)?;
    let common = pu.iter().zip(&pv).take_while(|(a, b)| a == b).count();
    let mut path: Vec<usize> = pu[common - 1..].iter().rev().copied().collect();
    path.extend_from_slice(&pv[common..]);
    Some(path)
}

/// Leveling of the whole graph from `v`.
pub fn bfs_leveling(g: &LGraph, v: usize) -> Result<Leveling, ExtractError> {
    bfs_leveling_within(g, &vec![true; g.n()], v)
}

/// Leveling of `G[mask]` from `v`; neighbors are visited in id order.
pub fn bfs_leveling_within(g: &LGraph, mask: &[bool], v: usize) -> Result<Leveling, ExtractError> {
    if v >= g.n() || !mask[v] {
        return Err(ExtractError::Precondition(format!(
            "start vertex {v} is not in the vertex set"
        )));
    }
    let mut parent = vec![NONE; g.n()];
    let mut dist = vec![NONE; g.n()];
    parent[v] = v;
    dist[v] = 0;
    let mut levels = vec![vec![v]];
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        let mut nbrs: Vec<usize> = g.neighbors(u).filter(|&w| mask[w]).collect();
        nbrs.sort_unstable();
        for w in nbrs {
            if dist[w] == NONE {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                if levels.len() <= dist[w] {
                    levels.push(Vec::new());
                }
                levels[dist[w]].push(w);
                queue.push_back(w);
            }
        }
    }
    if let Some(stray) = (0..g.n()).find(|&w| mask[w] && dist[w] == NONE) {
        return Err(ExtractError::Disconnected(stray));
    }
    for level in &mut levels {
        level.sort_unstable();
    }
    Ok(Leveling {
        start: v,
        levels,
        parent,
    })
}

/// A connected component of one level, with its arboricity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeavyLevel {
    pub index: usize,
    pub component: Vec<usize>,
    pub arb: usize,
}

/// First component (by level index, then smallest vertex) of some level
/// `L_i`, `i >= 1`, whose arboricity is at least half that of the leveled
/// set, rounded up.
pub fn heavy_level_component(
    g: &LGraph,
    a: &ValueSet,
    leveling: &Leveling,
    budget: Option<u64>,
) -> Result<HeavyLevel, ExtractError> {
    let (sub, _) = g.induced(&leveling.vertices());
    let whole = arb_exact(&sub, a, budget)?.value;
    heavy_level_with(g, a, leveling, whole, budget)
}

pub(crate) fn heavy_level_with(
    g: &LGraph,
    a: &ValueSet,
    leveling: &Leveling,
    whole: usize,
    budget: Option<u64>,
) -> Result<HeavyLevel, ExtractError> {
    if leveling.depth() == 0 {
        return Err(ExtractError::Precondition(
            "a single vertex has no level beyond the start".into(),
        ));
    }
    let need = whole.div_ceil(2);
    for (index, level) in leveling.levels.iter().enumerate().skip(1) {
        let mut mask = vec![false; g.n()];
        for &v in level {
            mask[v] = true;
        }
        for component in g.components_within(&mask) {
            let arb = arb_of_subset(g, a, &component, budget)?;
            if arb >= need {
                return Ok(HeavyLevel {
                    index,
                    component,
                    arb,
                });
            }
        }
    }
    Err(ExtractError::Contradiction(format!(
        "no level component reaches arboricity {need}"
    )))
}
