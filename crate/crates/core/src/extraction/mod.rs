//! Constructive extraction: levelings, nested sets with long paths, and
//! the pipelines that turn them into long `A`-cycles and
//! `(A, d)`-subdivisions of `K_t`, each ending in a verified certificate.

mod chain;
mod in_subdivision;
mod leveling;
mod linking;
mod long_cycle;
mod ramsey;
mod stage;
mod subdivision;

pub use chain::{nested_long_path_sets, nested_sequence, BandSource, LongPathSets, NestedChain};
pub use in_subdivision::{long_cycle_in_subdivision, InSubdivisionParams};
pub use leveling::{bfs_leveling, bfs_leveling_within, heavy_level_component, HeavyLevel, Leveling};
pub use linking::{
    four_candidate_values, glue_pigeonhole_cycle, link_path_avoiding_subgroup, link_path_via_vertex, CycleSplit,
    GlueArcs, GlueCase,
};
pub use long_cycle::{extract_long_a_cycle, extract_long_a_cycle_staged, long_cycle_ell};
pub use ramsey::{mono_clique, EdgeColoredClique, MonoClique, PairColor};
pub use stage::{parse_stage, write_stage, StageFile, StageKind};
pub use subdivision::{
    extract_a_subdivision, extract_a_subdivision_staged, subdivision_from_uniform, StageReport, SubdivOutcome,
    SubdivRoute,
};

use crate::bounds::Bound;
use crate::error::ExtractError;
use crate::graph::{verify_cycle, verify_subdivision, CycleCert, LGraph, SetForm, SubdivCert, ValueSet};

/// Largest finite group whose elements are listed to complement a finite `A`.
const COMPLEMENT_LIMIT: usize = 1 << 16;

/// The instance with `A` given by its finite complement, and `ω = |Γ \ A|`.
/// A subgroup complement `Γ \ Ω` is handled in `Γ / Ω`, where it becomes
/// the nonzero elements; a finite `A` in a finite group is complemented.
pub(crate) fn cofinite_form(g: &LGraph, a: &ValueSet) -> Result<(LGraph, ValueSet, usize), ExtractError> {
    match a.form() {
        SetForm::Cofinite(complement) => Ok((g.clone(), a.clone(), complement.len())),
        SetForm::SubgroupComplement(omega) => {
            let h = g.quotient_relabel(omega)?;
            let b = ValueSet::nonzero(h.group())?;
            Ok((h, b, 1))
        }
        SetForm::Finite(elems) => {
            if g.group().cardinality().is_none() {
                return Err(ExtractError::Precondition(
                    "A must have a finite complement in the group".into(),
                ));
            }
            let all = g.group().elements(COMPLEMENT_LIMIT)?;
            let complement: Vec<_> = all.into_iter().filter(|x| elems.binary_search(x).is_err()).collect();
            let b = ValueSet::cofinite(g.group(), complement)?;
            let omega = b.omega().unwrap_or(0);
            Ok((g.clone(), b, omega))
        }
    }
}

/// Re-evaluates a cycle found in the reduced instance against the original.
pub(crate) fn lift_cycle(g: &LGraph, a: &ValueSet, cert: &CycleCert) -> Result<CycleCert, ExtractError> {
    let lifted = CycleCert {
        vertices: cert.vertices.clone(),
        value: g.cycle_value(&cert.vertices)?,
        min_len: cert.min_len,
    };
    verify_cycle(g, a, &lifted).map_err(ExtractError::Certificate)?;
    Ok(lifted)
}

pub(crate) fn lift_subdivision(g: &LGraph, a: &ValueSet, cert: &SubdivCert) -> Result<(), ExtractError> {
    verify_subdivision(g, a, cert).map_err(ExtractError::Certificate)
}

pub(crate) fn threshold_check(arb: usize, threshold: &Bound) -> Result<(), ExtractError> {
    match threshold {
        Bound::Exact(th) if num_bigint::BigUint::from(arb) < *th => Err(ExtractError::BelowThreshold {
            arb,
            threshold: th.clone(),
        }),
        Bound::Exact(_) => Ok(()),
        Bound::TooLarge => Err(ExtractError::ThresholdTooLarge { arb }),
    }
}
