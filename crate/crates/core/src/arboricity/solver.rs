//! Branch-and-bound search for the least number of `A`-cycle-free parts.

use std::collections::HashMap;

use crate::error::ArbError;
use crate::graph::{has_a_cycle_through, LGraph, PartitionCert, ValueSet};

/// Record that every partition into fewer parts was searched and refuted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exhaustion {
    /// The largest part count proven infeasible (`value - 1`).
    pub refuted_parts: usize,
    /// Search nodes spent over all part counts.
    pub nodes: u64,
}

#[derive(Clone, Debug)]
pub struct ArbResult {
    pub value: usize,
    pub witness: PartitionCert,
    /// Present when `value >= 2`; the lower bound comes from exhaustive
    /// search, not from a combinatorial certificate.
    pub exhaustion: Option<Exhaustion>,
}

struct Solver<'a> {
    g: &'a LGraph,
    a: &'a ValueSet,
    /// Free-ness of `part + v` keyed by its vertex bitset.
    cache: HashMap<Vec<u64>, bool>,
    nodes: u64,
    budget: Option<u64>,
}

fn bitset(mask: &[bool]) -> Vec<u64> {
    let mut words = vec![0u64; mask.len().div_ceil(64)];
    for (i, _) in mask.iter().enumerate().filter(|(_, &b)| b) {
        words[i / 64] |= 1 << (i % 64);
    }
    words
}

enum Outcome {
    Found(Vec<usize>),
    Refuted,
    OutOfBudget,
}

impl Solver<'_> {
    /// Whether `v` can join the part described by `mask` (which already
    /// contains `v`) without closing an `A`-cycle.
    fn fits(&mut self, mask: &[bool], size: usize, v: usize) -> bool {
        if size < 3 {
            return true;
        }
        let key = bitset(mask);
        if let Some(&ok) = self.cache.get(&key) {
            return ok;
        }
        let ok = !has_a_cycle_through(self.g, self.a, mask, v);
        self.cache.insert(key, ok);
        ok
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.budget.is_none_or(|b| self.nodes <= b)
    }

    /// First-fit in vertex order; always succeeds since singletons are free.
    fn greedy(&mut self) -> Vec<usize> {
        let n = self.g.n();
        let mut masks: Vec<Vec<bool>> = Vec::new();
        let mut sizes: Vec<usize> = Vec::new();
        let mut assignment = vec![0; n];
        for v in 0..n {
            let mut placed = false;
            for p in 0..masks.len() {
                masks[p][v] = true;
                if self.fits(&masks[p], sizes[p] + 1, v) {
                    sizes[p] += 1;
                    assignment[v] = p + 1;
                    placed = true;
                    break;
                }
                masks[p][v] = false;
            }
            if !placed {
                let mut m = vec![false; n];
                m[v] = true;
                masks.push(m);
                sizes.push(1);
                assignment[v] = masks.len();
            }
        }
        assignment
    }

    fn feasible(&mut self, k: usize) -> Outcome {
        let n = self.g.n();
        let mut masks = vec![vec![false; n]; k];
        let mut sizes = vec![0usize; k];
        let mut assignment = vec![0usize; n];
        match self.place(0, 0, k, &mut masks, &mut sizes, &mut assignment) {
            Some(true) => Outcome::Found(assignment),
            Some(false) => Outcome::Refuted,
            None => Outcome::OutOfBudget,
        }
    }

    /// Assigns vertex `v` onward; `used` parts are open. `None` means the
    /// budget ran out.
    fn place(
        &mut self,
        v: usize,
        used: usize,
        k: usize,
        masks: &mut [Vec<bool>],
        sizes: &mut [usize],
        assignment: &mut [usize],
    ) -> Option<bool> {
        if v == self.g.n() {
            return Some(true);
        }
        // Symmetry: v goes to an open part or the first unopened one.
        for p in 0..k.min(used + 1) {
            if !self.tick() {
                return None;
            }
            masks[p][v] = true;
            sizes[p] += 1;
            if self.fits(&masks[p], sizes[p], v) {
                assignment[v] = p + 1;
                if self.place(v + 1, used.max(p + 1), k, masks, sizes, assignment)? {
                    return Some(true);
                }
            }
            masks[p][v] = false;
            sizes[p] -= 1;
        }
        Some(false)
    }
}

/// Exact `(Γ, A)`-vertex-arboricity by iterative deepening on the number
/// of parts. `budget` caps the total number of search nodes.
pub fn arb_exact(g: &LGraph, a: &ValueSet, budget: Option<u64>) -> Result<ArbResult, ArbError> {
    if g.n() == 0 {
        return Err(ArbError::Precondition("graph has no vertices".into()));
    }
    let mut solver = Solver {
        g,
        a,
        cache: HashMap::new(),
        nodes: 0,
        budget,
    };
    let greedy = solver.greedy();
    let upper = greedy.iter().copied().max().unwrap_or(1);
    for k in 1..upper {
        match solver.feasible(k) {
            Outcome::Found(assignment) => {
                return Ok(finish(k, assignment, solver.nodes));
            }
            Outcome::Refuted => {}
            Outcome::OutOfBudget => {
                return Err(ArbError::Budget {
                    budget: budget.unwrap_or(u64::MAX),
                    lower: k,
                    upper,
                });
            }
        }
    }
    Ok(finish(upper, greedy, solver.nodes))
}

fn finish(value: usize, assignment: Vec<usize>, nodes: u64) -> ArbResult {
    ArbResult {
        value,
        witness: PartitionCert { assignment },
        exhaustion: (value >= 2).then_some(Exhaustion {
            refuted_parts: value - 1,
            nodes,
        }),
    }
}

/// Arboricity of the subgraph induced by `vertices` (0 when empty).
pub fn arb_of_subset(
    g: &LGraph,
    a: &ValueSet,
    vertices: &[usize],
    budget: Option<u64>,
) -> Result<usize, ArbError> {
    if vertices.is_empty() {
        return Ok(0);
    }
    let (sub, _) = g.induced(vertices);
    Ok(arb_exact(&sub, a, budget)?.value)
}
