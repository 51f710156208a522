//! Brute-force arboricity over all set partitions, for cross-checking.

use crate::error::ArbError;
use crate::graph::{enumerate_simple_cycles, LGraph, ValueSet};

/// Largest graph the oracle accepts.
pub const ORACLE_LIMIT: usize = 12;

const CYCLE_CAP: usize = 5_000_000;

/// Minimum number of blocks over all partitions of the vertex set into
/// `A`-cycle-free blocks. Cycles are enumerated once; blocks are tested
/// against the vertex sets of the `A`-valued ones.
pub fn arb_oracle(g: &LGraph, a: &ValueSet) -> Result<usize, ArbError> {
    let n = g.n();
    if n > ORACLE_LIMIT {
        return Err(ArbError::OracleGuard {
            limit: ORACLE_LIMIT,
            n,
        });
    }
    if n == 0 {
        return Err(ArbError::Precondition("graph has no vertices".into()));
    }
    let size = 1usize << n;
    // contains_a_cycle[S]: some A-valued cycle has all its vertices in S.
    let mut contains_a_cycle = vec![false; size];
    for cycle in enumerate_simple_cycles(g, CYCLE_CAP)? {
        let value = g.cycle_value(&cycle)?;
        if a.contains(&value) {
            let set = cycle.iter().fold(0usize, |m, &v| m | (1 << v));
            contains_a_cycle[set] = true;
        }
    }
    for set in 1..size {
        if !contains_a_cycle[set] {
            contains_a_cycle[set] = (0..n)
                .filter(|&v| set & (1 << v) != 0)
                .any(|v| contains_a_cycle[set & !(1 << v)]);
        }
    }
    let mut best = n;
    let mut blocks: Vec<usize> = Vec::new();
    growth(0, n, &contains_a_cycle, &mut blocks, &mut best);
    Ok(best)
}

/// Restricted growth strings: vertex `v` joins an existing block or opens
/// the next one.
fn growth(v: usize, n: usize, bad: &[bool], blocks: &mut Vec<usize>, best: &mut usize) {
    if blocks.len() >= *best {
        return;
    }
    if v == n {
        *best = blocks.len();
        return;
    }
    for i in 0..blocks.len() {
        let grown = blocks[i] | (1 << v);
        if !bad[grown] {
            let old = std::mem::replace(&mut blocks[i], grown);
            growth(v + 1, n, bad, blocks, best);
            blocks[i] = old;
        }
    }
    blocks.push(1 << v);
    growth(v + 1, n, bad, blocks, best);
    blocks.pop();
}
