//! Long cycles with value in `A` when `Γ \ A` is finite.
//!
//! From a chain with `2(ω+1)` bands and `ω+2` disjoint `A`-cycles in
//! `S_m`, consecutive cycles are joined through their two lowest-id
//! vertices by band paths, and pigeonhole gluing yields a cycle containing
//! at least two band paths.

use super::chain::{nested_sequence_with_arb, NestedChain};
use super::linking::{glue_pigeonhole_cycle, CycleSplit, GlueArcs};
use super::stage::{StageFile, StageKind};
use super::{cofinite_form, lift_cycle, threshold_check};
use crate::arboricity::{arb_exact, arb_of_subset, greedy_disjoint_a_cycles};
use crate::bounds::g_omega;
use crate::error::ExtractError;
use crate::graph::{mask_of, normalize_cycle, verify_cycle, CycleCert, LGraph, ValueSet};

/// Band-path length used for an `(A, d)`-cycle: `max(1, floor(d/2))`.
pub fn long_cycle_ell(d: usize) -> usize {
    (d / 2).max(1)
}

/// Full mode: requires arboricity at least `g_ω(d)`, then builds the chain,
/// the disjoint cycles and the glued cycle.
pub fn extract_long_a_cycle(
    g: &LGraph,
    a: &ValueSet,
    d: usize,
    budget: Option<u64>,
) -> Result<CycleCert, ExtractError> {
    let (h, b, omega) = cofinite_form(g, a)?;
    let arb = arb_exact(&h, &b, budget)?.value;
    threshold_check(arb, &g_omega(omega as u64, d as u64))?;
    let mut start = None;
    for comp in h.components() {
        if arb_of_subset(&h, &b, &comp, budget)? == arb {
            start = Some(comp);
            break;
        }
    }
    let start = start.ok_or_else(|| ExtractError::Contradiction("no component attains the arboricity".into()))?;
    let ell = long_cycle_ell(d);
    let chain = nested_sequence_with_arb(&h, &b, &start, ell, 2 * (omega + 1), arb, budget)?;
    let cycles = greedy_disjoint_a_cycles(&h, &b, &mask_of(h.n(), chain.last()), omega + 2)
        .map_err(ExtractError::Contradiction)?;
    let cycles: Vec<Vec<usize>> = cycles.into_iter().map(|c| c.vertices).collect();
    let cert = assemble(&h, &b, omega, d, &chain, &cycles)?;
    lift_cycle(g, a, &cert)
}

/// Staged mode: the chain and optionally the disjoint cycles come from a
/// stage file; missing cycles are found greedily inside `S_m`.
pub fn extract_long_a_cycle_staged(
    g: &LGraph,
    a: &ValueSet,
    d: usize,
    stage: &StageFile,
) -> Result<CycleCert, ExtractError> {
    if stage.kind != StageKind::LongCycle {
        return Err(ExtractError::stage("stage file", "expected `stage: long-cycle`"));
    }
    let (h, b, omega) = cofinite_form(g, a)?;
    let chain = stage.chain(&h, long_cycle_ell(d))?;
    let need = omega + 2;
    let cycles = if stage.cycles.is_empty() {
        greedy_disjoint_a_cycles(&h, &b, &mask_of(h.n(), chain.last()), need)
            .map_err(|reason| ExtractError::stage("cycles", reason))?
            .into_iter()
            .map(|c| c.vertices)
            .collect()
    } else {
        stage.cycles.clone()
    };
    let cert = assemble(&h, &b, omega, d, &chain, &cycles)?;
    lift_cycle(g, a, &cert)
}

/// Checks that `cycles` are vertex-disjoint `A`-cycles inside `allowed`.
pub(crate) fn check_disjoint_cycles(
    g: &LGraph,
    a: &ValueSet,
    cycles: &[Vec<usize>],
    allowed: impl Fn(usize) -> bool,
) -> Result<(), ExtractError> {
    let mut used = vec![false; g.n()];
    for (i, cycle) in cycles.iter().enumerate() {
        let fail = |reason: String| ExtractError::stage("cycles", format!("cycle {}: {reason}", i + 1));
        if let Some(&v) = cycle.iter().find(|&&v| v >= g.n()) {
            return Err(fail(format!("vertex {v} out of range")));
        }
        let cert = CycleCert {
            vertices: cycle.clone(),
            value: g.cycle_value(cycle).map_err(|e| fail(e.to_string()))?,
            min_len: 3,
        };
        verify_cycle(g, a, &cert).map_err(|v| fail(v.to_string()))?;
        for &v in cycle {
            if !allowed(v) {
                return Err(fail(format!("vertex {v} lies outside the allowed set")));
            }
            if std::mem::replace(&mut used[v], true) {
                return Err(fail(format!("vertex {v} is shared with an earlier cycle")));
            }
        }
    }
    Ok(())
}

fn assemble(
    g: &LGraph,
    a: &ValueSet,
    omega: usize,
    d: usize,
    chain: &NestedChain,
    cycles: &[Vec<usize>],
) -> Result<CycleCert, ExtractError> {
    let m = 2 * (omega + 1);
    if chain.depth() < m {
        return Err(ExtractError::stage(
            "chain",
            format!("{} bands given, {m} required", chain.depth()),
        ));
    }
    if cycles.len() < omega + 2 {
        return Err(ExtractError::stage(
            "cycles",
            format!("{} disjoint A-cycles given, {} required", cycles.len(), omega + 2),
        ));
    }
    let cycles = &cycles[..omega + 2];
    check_disjoint_cycles(g, a, cycles, |v| chain.in_last(v))?;
    let splits: Vec<CycleSplit> = cycles
        .iter()
        .map(|c| CycleSplit::at_lowest(&normalize_cycle(c)))
        .collect();
    let mut q = Vec::with_capacity(omega + 1);
    let mut r = Vec::with_capacity(omega + 1);
    for i in 1..=omega + 1 {
        q.push(chain.band_path(g, i, splits[i - 1].start(), splits[i].start())?);
        r.push(chain.band_path(g, i + omega + 1, splits[i - 1].end(), splits[i].end())?);
    }
    let arcs = GlueArcs { splits, q, r };
    Ok(glue_pigeonhole_cycle(g, a, &arcs, d)?.0)
}
