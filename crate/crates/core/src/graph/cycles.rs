//! Simple-cycle search. Every cycle is found from its smallest vertex
//! (the anchor) through higher vertices only, and kept in one direction,
//! so each cycle is produced exactly once.

use std::ops::ControlFlow;

use super::{CycleCert, LGraph, ValueSet};
use crate::abelian::Elem;
use crate::error::GraphError;

/// Rotates a cycle to start at its smallest vertex and orients it toward
/// the smaller of that vertex's two cycle neighbors.
pub fn normalize_cycle(cycle: &[usize]) -> Vec<usize> {
    let len = cycle.len();
    if len == 0 {
        return Vec::new();
    }
    let start = (0..len).min_by_key(|&i| cycle[i]).expect("nonempty");
    let forward: Vec<usize> = (0..len).map(|k| cycle[(start + k) % len]).collect();
    if len > 2 && forward[1] > forward[len - 1] {
        let mut back = vec![forward[0]];
        back.extend(forward[1..].iter().rev());
        back
    } else {
        forward
    }
}

/// Deterministic order on cycles: sorted vertex list, then sequence.
fn cycle_key(cycle: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    (sorted, cycle.to_vec())
}

struct Search<'a, F> {
    g: &'a LGraph,
    allowed: &'a [bool],
    anchor: usize,
    max_len: usize,
    path: Vec<usize>,
    values: Vec<Elem>,
    on_path: Vec<bool>,
    visit: F,
}

impl<F> Search<'_, F>
where
    F: FnMut(&[usize], Elem) -> ControlFlow<()>,
{
    /// Extends the current path; reports each closing edge back to the
    /// anchor once per undirected cycle.
    fn extend(&mut self) -> ControlFlow<()> {
        let v = *self.path.last().expect("path starts at anchor");
        let len = self.path.len();
        for &(w, e) in self.g.adjacency(v) {
            if w == self.anchor {
                if len >= 3 && self.path[1] < v {
                    let value = &self.values[len - 1] + &self.g.labels()[e];
                    (self.visit)(&self.path, value)?;
                }
                continue;
            }
            if w < self.anchor || !self.allowed[w] || self.on_path[w] || len >= self.max_len {
                continue;
            }
            let value = &self.values[len - 1] + &self.g.labels()[e];
            self.path.push(w);
            self.values.push(value);
            self.on_path[w] = true;
            let flow = self.extend();
            self.on_path[w] = false;
            self.values.pop();
            self.path.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit(cycle, value)` for every simple cycle of `G[allowed]`
/// whose smallest vertex is `anchor` and whose length is at most `max_len`.
fn cycles_from<F>(
    g: &LGraph,
    allowed: &[bool],
    anchor: usize,
    max_len: usize,
    visit: F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize], Elem) -> ControlFlow<()>,
{
    if !allowed[anchor] {
        return ControlFlow::Continue(());
    }
    let mut on_path = vec![false; g.n()];
    on_path[anchor] = true;
    let mut search = Search {
        g,
        allowed,
        anchor,
        max_len,
        path: vec![anchor],
        values: vec![g.group().zero()],
        on_path,
        visit,
    };
    search.extend()
}

/// All simple cycles of `G[mask]` in the deterministic order. Fails once
/// more than `max_count` cycles have been found.
pub fn enumerate_cycles_within(
    g: &LGraph,
    mask: &[bool],
    max_count: usize,
) -> Result<Vec<Vec<usize>>, GraphError> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut overflow = false;
    for s in 0..g.n() {
        let flow = cycles_from(g, mask, s, g.n(), |cycle, _| {
            if out.len() == max_count {
                overflow = true;
                return ControlFlow::Break(());
            }
            out.push(cycle.to_vec());
            ControlFlow::Continue(())
        });
        if flow.is_break() {
            break;
        }
    }
    if overflow {
        return Err(GraphError::CycleCapacity(max_count));
    }
    out.sort_by_cached_key(|c| cycle_key(c));
    Ok(out)
}

pub fn enumerate_simple_cycles(g: &LGraph, max_count: usize) -> Result<Vec<Vec<usize>>, GraphError> {
    enumerate_cycles_within(g, &vec![true; g.n()], max_count)
}

/// Shortest cycle of `G[mask]` with value in `A` and length at least
/// `min_len`; among equally short ones the first in cycle order.
pub fn find_a_cycle_within(
    g: &LGraph,
    a: &ValueSet,
    mask: &[bool],
    min_len: usize,
) -> Option<CycleCert> {
    let size = mask.iter().filter(|&&b| b).count();
    for len in min_len.max(3)..=size {
        let mut best: Option<(Vec<usize>, Elem)> = None;
        for s in 0..g.n() {
            let _ = cycles_from(g, mask, s, len, |cycle, value| {
                if cycle.len() == len && a.contains(&value) {
                    let better = best
                        .as_ref()
                        .is_none_or(|(b, _)| cycle_key(cycle) < cycle_key(b));
                    if better {
                        best = Some((cycle.to_vec(), value));
                    }
                }
                ControlFlow::Continue(())
            });
        }
        if let Some((vertices, value)) = best {
            return Some(CycleCert {
                vertices,
                value,
                min_len,
            });
        }
    }
    None
}

pub fn find_a_cycle(g: &LGraph, a: &ValueSet, min_len: usize) -> Option<CycleCert> {
    find_a_cycle_within(g, a, &vec![true; g.n()], min_len)
}

/// Whether `G[mask]` has any cycle with value in `A`.
pub fn has_a_cycle_within(g: &LGraph, a: &ValueSet, mask: &[bool]) -> bool {
    (0..g.n()).any(|s| {
        cycles_from(g, mask, s, g.n(), |_, value| {
            if a.contains(&value) {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .is_break()
    })
}

/// Whether `G[mask]` has a cycle through `v` with value in `A`.
pub fn has_a_cycle_through(g: &LGraph, a: &ValueSet, mask: &[bool], v: usize) -> bool {
    if !mask[v] {
        return false;
    }
    // Same walk as the anchored search, but every vertex of the mask may
    // be used since v need not be the smallest vertex of the cycle.
    let mut on_path = vec![false; g.n()];
    on_path[v] = true;
    let mut path = vec![v];
    let mut values = vec![g.group().zero()];
    through(g, a, mask, &mut path, &mut values, &mut on_path)
}

fn through(
    g: &LGraph,
    a: &ValueSet,
    mask: &[bool],
    path: &mut Vec<usize>,
    values: &mut Vec<Elem>,
    on_path: &mut [bool],
) -> bool {
    let anchor = path[0];
    let v = *path.last().expect("nonempty");
    let len = path.len();
    for &(w, e) in g.adjacency(v) {
        if w == anchor {
            if len >= 3 && path[1] < v {
                let value = &values[len - 1] + &g.labels()[e];
                if a.contains(&value) {
                    return true;
                }
            }
            continue;
        }
        if !mask[w] || on_path[w] {
            continue;
        }
        let value = &values[len - 1] + &g.labels()[e];
        path.push(w);
        values.push(value);
        on_path[w] = true;
        let found = through(g, a, mask, path, values, on_path);
        on_path[w] = false;
        values.pop();
        path.pop();
        if found {
            return true;
        }
    }
    false
}
