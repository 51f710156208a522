//! Structural facts about arboricity, as executable checks.

use super::solver::{arb_exact, arb_of_subset};
use crate::error::ArbError;
use crate::graph::{find_a_cycle_within, verify_cycle, CycleCert, LGraph, ValueSet};

/// Arboricity equals the maximum over connected components.
pub fn check_component_law(g: &LGraph, a: &ValueSet, budget: Option<u64>) -> Result<bool, ArbError> {
    let whole = arb_exact(g, a, budget)?.value;
    let mut best = 0;
    for comp in g.components() {
        best = best.max(arb_of_subset(g, a, &comp, budget)?);
    }
    Ok(whole == best)
}

/// Deleting a vertex lowers arboricity by at most one.
pub fn check_deletion_law(
    g: &LGraph,
    a: &ValueSet,
    v: usize,
    budget: Option<u64>,
) -> Result<bool, ArbError> {
    if v >= g.n() {
        return Err(ArbError::Precondition(format!("vertex {v} out of range")));
    }
    let whole = arb_exact(g, a, budget)?.value;
    let rest: Vec<usize> = (0..g.n()).filter(|&w| w != v).collect();
    let smaller = arb_of_subset(g, a, &rest, budget)?;
    Ok(smaller + 1 >= whole)
}

/// `t` vertex-disjoint `A`-cycles, taken greedily as shortest `A`-cycles
/// of what remains. Requires arboricity at least `2t`.
pub fn disjoint_a_cycles(
    g: &LGraph,
    a: &ValueSet,
    t: usize,
    budget: Option<u64>,
) -> Result<Vec<CycleCert>, ArbError> {
    let arb = arb_exact(g, a, budget)?.value;
    if arb < 2 * t {
        return Err(ArbError::Precondition(format!(
            "arboricity {arb} is below 2t = {}",
            2 * t
        )));
    }
    greedy_disjoint_a_cycles(g, a, &vec![true; g.n()], t).map_err(ArbError::Internal)
}

/// The greedy step alone, inside `mask`. Fails with a message when fewer
/// than `t` cycles are found.
pub(crate) fn greedy_disjoint_a_cycles(
    g: &LGraph,
    a: &ValueSet,
    mask: &[bool],
    t: usize,
) -> Result<Vec<CycleCert>, String> {
    let mut mask = mask.to_vec();
    let mut out = Vec::with_capacity(t);
    for i in 0..t {
        let cert = find_a_cycle_within(g, a, &mask, 3)
            .ok_or_else(|| format!("only {i} disjoint A-cycles found, {t} required"))?;
        verify_cycle(g, a, &cert).map_err(|v| v.to_string())?;
        for &v in &cert.vertices {
            mask[v] = false;
        }
        out.push(cert);
    }
    Ok(out)
}
