//! Nested vertex sets with long connecting paths.
//!
//! [`LongPathSets`] shrinks a connected set `X_0` through `ℓ` heavy level
//! components `X_0 ⊇ X_1 ⊇ ... ⊇ X_ℓ`, keeping the BFS tree of every step.
//! Any two vertices of `X_ℓ` are then joined by a path of length at least
//! `ℓ` whose interior avoids `X_ℓ`, glued from the stored tree paths.
//! [`NestedChain`] iterates this into `S_0 ⊇ S_1 ⊇ ... ⊇ S_m`, where band
//! `i` (the vertices of `S_{i-1}` not in `S_i`) carries paths between any
//! two vertices of `S_m`.

use std::collections::BTreeMap;

use super::leveling::{bfs_leveling_within, heavy_level_with, tree_path, tree_path_from_root};
use crate::arboricity::arb_of_subset;
use crate::error::ExtractError;
use crate::graph::{is_simple_path, mask_of, LGraph, ValueSet};

/// The shrinking sets `X_0 ⊇ ... ⊇ X_ℓ`, anchors `x_0, ..., x_{ℓ-1}` and
/// the BFS tree of `G[X_j]` rooted at `x_j` for each step.
#[derive(Clone, Debug)]
pub struct LongPathSets {
    ell: usize,
    sets: Vec<Vec<usize>>,
    anchors: Vec<usize>,
    parents: Vec<Vec<usize>>,
    arbs: Vec<usize>,
}

impl LongPathSets {
    /// Runs the shrinking on `G[start]`. Requires `G[start]` connected with
    /// arboricity at least `2^ℓ`.
    pub fn build(
        g: &LGraph,
        a: &ValueSet,
        start: &[usize],
        ell: usize,
        budget: Option<u64>,
    ) -> Result<Self, ExtractError> {
        let arb = arb_of_subset(g, a, start, budget)?;
        Self::build_with_arb(g, a, start, ell, arb, budget)
    }

    pub(crate) fn build_with_arb(
        g: &LGraph,
        a: &ValueSet,
        start: &[usize],
        ell: usize,
        arb: usize,
        budget: Option<u64>,
    ) -> Result<Self, ExtractError> {
        let need = 1u128.checked_shl(ell as u32).unwrap_or(u128::MAX);
        if (arb as u128) < need {
            return Err(ExtractError::Precondition(format!(
                "arboricity {arb} is below 2^{ell}"
            )));
        }
        let mut current: Vec<usize> = start.to_vec();
        current.sort_unstable();
        current.dedup();
        let mut out = LongPathSets {
            ell,
            sets: vec![current.clone()],
            anchors: Vec::new(),
            parents: Vec::new(),
            arbs: vec![arb],
        };
        let mut current_arb = arb;
        for _ in 0..ell {
            let anchor = current[0];
            let leveling = bfs_leveling_within(g, &mask_of(g.n(), &current), anchor)?;
            let heavy = heavy_level_with(g, a, &leveling, current_arb, budget)?;
            out.anchors.push(anchor);
            out.parents.push(leveling.parents().to_vec());
            current = heavy.component;
            current_arb = heavy.arb;
            out.sets.push(current.clone());
            out.arbs.push(current_arb);
        }
        // A connected start set is required even when no step runs.
        if ell == 0 {
            bfs_leveling_within(g, &mask_of(g.n(), &current), current[0])?;
        }
        Ok(out)
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// `X_0, ..., X_ℓ`, each sorted.
    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// The final set `X = X_ℓ`.
    pub fn target(&self) -> &[usize] {
        &self.sets[self.ell]
    }

    pub fn anchors(&self) -> &[usize] {
        &self.anchors
    }

    /// Arboricity of each `G[X_j]`.
    pub fn arbs(&self) -> &[usize] {
        &self.arbs
    }

    /// Tree path `P_{x_j, u}` for `u` in `X_{j+1}`: it starts at the anchor
    /// `x_j`, stays in `X_j` and meets `X_{j+1}` only at `u`.
    pub fn connector(&self, j: usize, u: usize) -> Option<Vec<usize>> {
        if j >= self.ell || self.sets[j + 1].binary_search(&u).is_err() {
            return None;
        }
        tree_path_from_root(&self.parents[j], self.anchors[j], u)
    }

    /// An `X`-path from `x` to `y` of length at least `ℓ`. For `ℓ = 0`
    /// this is a shortest path inside `G[X]`.
    pub fn x_path(&self, g: &LGraph, x: usize, y: usize) -> Result<Vec<usize>, ExtractError> {
        let target = self.target();
        if x == y || target.binary_search(&x).is_err() || target.binary_search(&y).is_err() {
            return Err(ExtractError::Precondition(format!(
                "{x} and {y} must be distinct vertices of the final set"
            )));
        }
        let path = match self.ell {
            0 => g
                .shortest_path_within(x, y, |w| target.binary_search(&w).is_ok())
                .ok_or(ExtractError::Disconnected(y))?,
            1 => tree_path(&self.parents[0], self.anchors[0], x, y).ok_or_else(missing)?,
            ell => {
                // x back to x_1 inside the first tree, then x_1 -> x_2 -> ... -> y.
                let mut path =
                    tree_path(&self.parents[0], self.anchors[0], x, self.anchors[1]).ok_or_else(missing)?;
                for j in 1..ell {
                    let next = if j + 1 < ell { self.anchors[j + 1] } else { y };
                    let hop = self.connector(j, next).ok_or_else(missing)?;
                    path.extend_from_slice(&hop[1..]);
                }
                path
            }
        };
        if self.ell > 0 {
            let interior_ok = path[1..path.len() - 1]
                .iter()
                .all(|v| target.binary_search(v).is_err());
            if !is_simple_path(g, &path) || path.len() - 1 < self.ell || !interior_ok {
                return Err(ExtractError::Contradiction(format!(
                    "glued path {path:?} is not an X-path of length at least {}",
                    self.ell
                )));
            }
        }
        Ok(path)
    }
}

fn missing() -> ExtractError {
    ExtractError::Contradiction("connector path missing from a stored tree".into())
}

/// How the paths of one band are obtained.
#[derive(Clone, Debug)]
pub enum BandSource {
    /// Glued from the trees of a [`LongPathSets`] run on `S_{i-1}`.
    Constructed(LongPathSets),
    /// Supplied paths keyed by endpoints `(x, y)`; either orientation.
    Explicit(BTreeMap<(usize, usize), Vec<usize>>),
    /// Found on demand inside the band.
    Search,
}

/// Nodes the depth-first fallback may expand per band path.
const SEARCH_BUDGET: u64 = 2_000_000;

/// `S_0 ⊇ S_1 ⊇ ... ⊇ S_m` with a path source per band.
#[derive(Clone, Debug)]
pub struct NestedChain {
    ell: usize,
    sets: Vec<Vec<usize>>,
    masks: Vec<Vec<bool>>,
    bands: Vec<BandSource>,
    arbs: Option<Vec<usize>>,
}

impl NestedChain {
    /// A chain from given sets. `explicit` maps `(band, x, y)` to a path;
    /// bands without an entry fall back to search.
    pub fn from_sets(
        g: &LGraph,
        sets: Vec<Vec<usize>>,
        ell: usize,
        explicit: &BTreeMap<(usize, usize, usize), Vec<usize>>,
    ) -> Result<Self, ExtractError> {
        if sets.len() < 2 {
            return Err(ExtractError::stage("chain", "at least S_0 and S_1 are required"));
        }
        let mut sorted = Vec::with_capacity(sets.len());
        for (i, mut set) in sets.into_iter().enumerate() {
            set.sort_unstable();
            if set.windows(2).any(|w| w[0] == w[1]) {
                return Err(ExtractError::stage("chain", format!("S_{i} repeats a vertex")));
            }
            if let Some(&v) = set.iter().find(|&&v| v >= g.n()) {
                return Err(ExtractError::stage("chain", format!("S_{i} names vertex {v}, out of range")));
            }
            sorted.push(set);
        }
        for i in 1..sorted.len() {
            if let Some(v) = sorted[i].iter().find(|v| sorted[i - 1].binary_search(v).is_err()) {
                return Err(ExtractError::stage(
                    "chain",
                    format!("vertex {v} is in S_{i} but not in S_{}", i - 1),
                ));
            }
        }
        let m = sorted.len() - 1;
        let mut bands: Vec<BandSource> = vec![BandSource::Search; m];
        for (&(i, x, y), path) in explicit {
            if i == 0 || i > m {
                return Err(ExtractError::stage("chain", format!("band {i} outside 1..={m}")));
            }
            if let BandSource::Search = bands[i - 1] {
                bands[i - 1] = BandSource::Explicit(BTreeMap::new());
            }
            if let BandSource::Explicit(map) = &mut bands[i - 1] {
                map.insert((x, y), path.clone());
            }
        }
        let masks = sorted.iter().map(|s| mask_of(g.n(), s)).collect();
        Ok(NestedChain {
            ell,
            sets: sorted,
            masks,
            bands,
            arbs: None,
        })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Number of bands `m`.
    pub fn depth(&self) -> usize {
        self.sets.len() - 1
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn last(&self) -> &[usize] {
        &self.sets[self.depth()]
    }

    pub fn in_last(&self, v: usize) -> bool {
        self.masks[self.depth()].get(v).copied().unwrap_or(false)
    }

    /// Band `L_i = S_{i-1} \ S_i`, sorted.
    pub fn band(&self, i: usize) -> Vec<usize> {
        self.sets[i - 1]
            .iter()
            .copied()
            .filter(|&v| !self.masks[i][v])
            .collect()
    }

    pub fn in_band(&self, i: usize, v: usize) -> bool {
        self.masks[i - 1][v] && !self.masks[i][v]
    }

    pub fn band_source(&self, i: usize) -> &BandSource {
        &self.bands[i - 1]
    }

    /// Arboricity of each `G[S_i]` when the chain was constructed.
    pub fn arbs(&self) -> Option<&[usize]> {
        self.arbs.as_deref()
    }

    /// Shortest admissible length of a band path.
    pub fn min_band_len(&self) -> usize {
        self.ell.max(2)
    }

    /// A path from `x` to `y` (distinct, both in `S_m`) with interior in
    /// band `i` and length at least `max(ℓ, 2)`.
    pub fn band_path(&self, g: &LGraph, i: usize, x: usize, y: usize) -> Result<Vec<usize>, ExtractError> {
        let stage = format!("band {i}");
        if i == 0 || i > self.depth() {
            return Err(ExtractError::stage(&stage, format!("no such band; chain has {}", self.depth())));
        }
        if x == y || !self.in_last(x) || !self.in_last(y) {
            return Err(ExtractError::Precondition(format!(
                "band path endpoints {x}, {y} must be distinct vertices of S_m"
            )));
        }
        let path = match &self.bands[i - 1] {
            BandSource::Constructed(sets) => sets.x_path(g, x, y)?,
            BandSource::Explicit(map) => {
                if let Some(p) = map.get(&(x, y)) {
                    p.clone()
                } else if let Some(p) = map.get(&(y, x)) {
                    p.iter().rev().copied().collect()
                } else {
                    self.search(g, i, x, y)
                        .ok_or_else(|| ExtractError::stage(&stage, format!("no path between {x} and {y}")))?
                }
            }
            BandSource::Search => self
                .search(g, i, x, y)
                .ok_or_else(|| ExtractError::stage(&stage, format!("no path between {x} and {y}")))?,
        };
        self.check_band_path(g, i, x, y, &path)
            .map_err(|reason| ExtractError::stage(&stage, reason))?;
        Ok(path)
    }

    fn check_band_path(&self, g: &LGraph, i: usize, x: usize, y: usize, path: &[usize]) -> Result<(), String> {
        if path.first() != Some(&x) || path.last() != Some(&y) {
            return Err(format!("path {path:?} does not run from {x} to {y}"));
        }
        if !is_simple_path(g, path) {
            return Err(format!("{path:?} is not a simple path of the graph"));
        }
        if let Some(v) = path[1..path.len() - 1].iter().find(|&&v| !self.in_band(i, v)) {
            return Err(format!("interior vertex {v} lies outside the band"));
        }
        if path.len() - 1 < self.min_band_len() {
            return Err(format!(
                "path {path:?} is shorter than {}",
                self.min_band_len()
            ));
        }
        Ok(())
    }

    /// Shortest path through the band, or failing that the first long
    /// enough path in depth-first order.
    fn search(&self, g: &LGraph, i: usize, x: usize, y: usize) -> Option<Vec<usize>> {
        let allowed = |w: usize| w == y || self.in_band(i, w);
        let shortest = g.shortest_path_within(x, y, allowed)?;
        if shortest.len() > self.min_band_len() {
            return Some(shortest);
        }
        let mut on_path = vec![false; g.n()];
        let mut path = vec![x];
        on_path[x] = true;
        let mut nodes = 0;
        self.dfs(g, &allowed, y, &mut path, &mut on_path, &mut nodes)
            .then_some(path)
    }

    fn dfs(
        &self,
        g: &LGraph,
        allowed: &impl Fn(usize) -> bool,
        y: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        nodes: &mut u64,
    ) -> bool {
        *nodes += 1;
        if *nodes > SEARCH_BUDGET {
            return false;
        }
        let v = *path.last().unwrap();
        let mut nbrs: Vec<usize> = g.neighbors(v).filter(|&w| allowed(w) && !on_path[w]).collect();
        nbrs.sort_unstable();
        for w in nbrs {
            if w == y {
                if path.len() >= self.min_band_len() {
                    path.push(y);
                    return true;
                }
                continue;
            }
            path.push(w);
            on_path[w] = true;
            if self.dfs(g, allowed, y, path, on_path, nodes) {
                return true;
            }
            on_path[w] = false;
            path.pop();
        }
        false
    }
}

/// One shrinking run on `G[start]`; same as [`LongPathSets::build`].
pub fn nested_long_path_sets(
    g: &LGraph,
    a: &ValueSet,
    start: &[usize],
    ell: usize,
    budget: Option<u64>,
) -> Result<LongPathSets, ExtractError> {
    LongPathSets::build(g, a, start, ell, budget)
}

/// `m` iterated shrinkings starting from `G[start]`, which must be
/// connected with arboricity at least `2^{ℓm}`.
pub fn nested_sequence(
    g: &LGraph,
    a: &ValueSet,
    start: &[usize],
    ell: usize,
    m: usize,
    budget: Option<u64>,
) -> Result<NestedChain, ExtractError> {
    let arb = arb_of_subset(g, a, start, budget)?;
    nested_sequence_with_arb(g, a, start, ell, m, arb, budget)
}

pub(crate) fn nested_sequence_with_arb(
    g: &LGraph,
    a: &ValueSet,
    start: &[usize],
    ell: usize,
    m: usize,
    arb: usize,
    budget: Option<u64>,
) -> Result<NestedChain, ExtractError> {
    if m == 0 {
        return Err(ExtractError::Precondition("a chain needs at least one band".into()));
    }
    let exponent = ell.saturating_mul(m);
    let enough = exponent < 128 && (arb as u128) >= 1u128 << exponent;
    if !enough {
        return Err(ExtractError::Precondition(format!(
            "arboricity {arb} is below 2^{exponent}"
        )));
    }
    let mut sets = vec![{
        let mut s = start.to_vec();
        s.sort_unstable();
        s.dedup();
        s
    }];
    let mut bands = Vec::with_capacity(m);
    let mut arbs = vec![arb];
    for _ in 0..m {
        let step = LongPathSets::build_with_arb(g, a, sets.last().unwrap(), ell, *arbs.last().unwrap(), budget)?;
        sets.push(step.target().to_vec());
        arbs.push(*step.arbs().last().unwrap());
        bands.push(BandSource::Constructed(step));
    }
    let masks = sets.iter().map(|s| mask_of(g.n(), s)).collect();
    Ok(NestedChain {
        ell,
        sets,
        masks,
        bands,
        arbs: Some(arbs),
    })
}
