//! Extremal families: uniformly labelled cliques with large arboricity but
//! no long `A`-cycle, the two unbounded-arboricity constructions, and the
//! parity encoding of an edge subset. Generators do not check their own
//! claims; that is left to the arboricity solvers and verifiers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::abelian::{Elem, Group, Order};
use crate::error::GraphError;
use crate::graph::{LGraph, SetForm, ValueSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Result of looking for the unique `d > 2` with `d x ∈ A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LowerBoundParams {
    Unique(u64),
    /// No such `d`, several, or uniqueness fails for structural reasons.
    NotUnique(String),
}

/// `K_n` with every edge labelled `x`.
pub fn uniform_clique(group: &Group, x: &Elem, n: usize) -> Result<LGraph, ConstructionError> {
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j, x.clone())));
    Ok(LGraph::new(group, n, edges)?)
}

/// The `d > 2` with `d x ∈ A`, if it is unique. Only a finite `A` and `x`
/// of infinite order can give a unique answer: a torsion `x` repeats its
/// multiples, and a cofinite or subgroup-complement `A` contains
/// infinitely many multiples or none.
pub fn lower_bound_params(a: &ValueSet, x: &Elem) -> LowerBoundParams {
    let order = x.order();
    match (a.form(), &order) {
        (SetForm::Finite(elems), Order::Infinite) => {
            let mut found: Vec<BigInt> = elems.iter().filter_map(|s| exact_quotient(s, x)).collect();
            found.retain(|d| *d > BigInt::from(2));
            found.sort();
            found.dedup();
            match found.as_slice() {
                [] => LowerBoundParams::NotUnique(format!("no d > 2 has d·{x} in A")),
                [d] => match d.to_u64() {
                    Some(d) => LowerBoundParams::Unique(d),
                    None => LowerBoundParams::NotUnique(format!("d = {d} does not fit in 64 bits")),
                },
                several => LowerBoundParams::NotUnique(format!(
                    "several d > 2 have d·{x} in A: {}",
                    several.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
                )),
            }
        }
        (_, Order::Finite(o)) => LowerBoundParams::NotUnique(format!(
            "{x} has order {o}, so d·{x} in A implies (d + {o})·{x} in A"
        )),
        (SetForm::Cofinite(complement), Order::Infinite) => LowerBoundParams::NotUnique(format!(
            "A misses only {} elements, so all but finitely many d·{x} lie in A",
            complement.len()
        )),
        (SetForm::SubgroupComplement(omega), Order::Infinite) => {
            if omega.contains(x) {
                LowerBoundParams::NotUnique(format!("{x} lies in the excluded subgroup, so no multiple is in A"))
            } else {
                LowerBoundParams::NotUnique(format!(
                    "{x} is nonzero modulo the excluded subgroup, so infinitely many multiples lie in A"
                ))
            }
        }
    }
}

/// `d` with `d x = s`, for `x` of infinite order.
fn exact_quotient(s: &Elem, x: &Elem) -> Option<BigInt> {
    let r = x.group().free_rank();
    let i = (0..r).find(|&i| !x.coords()[i].is_zero())?;
    let (d, rem) = s.coords()[i].div_rem(&x.coords()[i]);
    (rem.is_zero() && x.scale(&d) == *s).then_some(d)
}

/// `K_n` labelled `x` with `n = (t-1)(d-1) + 1`, where `d` is the unique
/// integer above 2 with `d x ∈ A`. Has arboricity at least `t` and no
/// `A`-cycle longer than `d`.
pub fn lower_bound_instance(a: &ValueSet, x: &Elem, t: usize) -> Result<(LGraph, u64), ConstructionError> {
    if t == 0 {
        return Err(ConstructionError::Precondition("t must be positive".into()));
    }
    match lower_bound_params(a, x) {
        LowerBoundParams::Unique(d) => {
            let n = (t - 1)
                .checked_mul(d as usize - 1)
                .and_then(|m| m.checked_add(1))
                .ok_or_else(|| ConstructionError::Precondition("vertex count overflows".into()))?;
            Ok((uniform_clique(a.group(), x, n)?, d))
        }
        LowerBoundParams::NotUnique(why) => Err(ConstructionError::Precondition(why)),
    }
}

/// Longest scan for the least multiple `q >= 3` of a torsion element.
const SCAN_LIMIT: u64 = 1 << 20;

/// The least `q >= 3` with `q x ∈ A`, if any.
pub fn least_multiple_in(a: &ValueSet, x: &Elem) -> Result<Option<u64>, ConstructionError> {
    let hi = match (a.form(), x.order()) {
        (SetForm::Finite(elems), Order::Infinite) => {
            return Ok(elems
                .iter()
                .filter_map(|s| exact_quotient(s, x))
                .filter(|d| *d >= BigInt::from(3))
                .min()
                .and_then(|d| d.to_u64()));
        }
        // With 3x and 4x outside A both lie in the excluded subgroup, hence
        // so does x and every multiple.
        (SetForm::SubgroupComplement(_), _) => 4,
        // At most |complement| multiples are missed.
        (SetForm::Cofinite(complement), Order::Infinite) => 3 + complement.len() as u64,
        (_, Order::Finite(o)) => {
            let o = o.to_u64().filter(|&o| o <= SCAN_LIMIT).ok_or_else(|| {
                ConstructionError::Precondition(format!("order {o} of {x} is too large to scan"))
            })?;
            3 + o - 1
        }
    };
    Ok(a.first_multiple_in(x, 3, hi))
}

/// First unbounded-arboricity construction: `K_{(ℓ-1)(t-1)+1}` labelled
/// `x`, where `ℓ >= 3` is least with `ℓ x ∈ A`. Returns the graph and `ℓ`.
pub fn least_multiple_clique(a: &ValueSet, x: &Elem, t: usize) -> Result<(LGraph, u64), ConstructionError> {
    if t == 0 {
        return Err(ConstructionError::Precondition("t must be positive".into()));
    }
    let ell = least_multiple_in(a, x)?
        .ok_or_else(|| ConstructionError::Precondition(format!("no q >= 3 has q·{x} in A")))?;
    let n = (t - 1) * (ell as usize - 1) + 1;
    Ok((uniform_clique(a.group(), x, n)?, ell))
}

/// Second unbounded-arboricity construction: `K_{t²}` split into `t`
/// blocks of `t` consecutive ids; edges inside a block carry `y`, edges
/// across blocks carry 0. `y` must have infinite order.
pub fn blocks_construction(group: &Group, y: &Elem, t: usize) -> Result<LGraph, ConstructionError> {
    if let Order::Finite(o) = y.order() {
        return Err(ConstructionError::Precondition(format!(
            "{y} has finite order {o}; the uniform clique applies instead"
        )));
    }
    let n = t * t;
    let zero = group.zero();
    let edges = (0..n).flat_map(|i| {
        let (y, zero) = (y.clone(), zero.clone());
        (i + 1..n).map(move |j| (i, j, if i / t == j / t { y.clone() } else { zero.clone() }))
    });
    Ok(LGraph::new(group, n, edges)?)
}

/// Labels the edges of a plain graph over `Z_2`: 1 on `f`, 0 elsewhere,
/// with `A = {1}`. Cycles with value in `A` are those using an odd number
/// of edges from `f`.
pub fn eta_encoding(
    n: usize,
    edges: &[(usize, usize)],
    f: &[(usize, usize)],
) -> Result<(LGraph, ValueSet), ConstructionError> {
    let key = |&(u, v): &(usize, usize)| (u.min(v), u.max(v));
    let plain: std::collections::BTreeSet<_> = edges.iter().map(key).collect();
    if let Some(&(u, v)) = f.iter().find(|e| !plain.contains(&key(e))) {
        return Err(ConstructionError::Precondition(format!("{u}-{v} is not an edge")));
    }
    let marked: std::collections::BTreeSet<_> = f.iter().map(key).collect();
    let z2 = Group::cyclic(2).map_err(GraphError::from)?;
    let one = z2.elem([1]).map_err(GraphError::from)?;
    let labelled = edges.iter().map(|e| {
        let label = if marked.contains(&key(e)) { one.clone() } else { z2.zero() };
        (e.0, e.1, label)
    });
    let g = LGraph::new(&z2, n, labelled)?;
    let a = ValueSet::finite(&z2, vec![one])?;
    Ok((g, a))
}
