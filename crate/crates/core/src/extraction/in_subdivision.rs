//! Long `A`-cycles inside an `(A, 1)`-subdivision of a large clique, for
//! groups with few elements of order at most 2.
//!
//! The first `(ω+2)r` branch vertices form `ω+2` blocks of `r`. Each block
//! spans a sub-subdivision of `K_r` that contains an `A`-cycle `D_i`: one is
//! looked for among triangles and 4-cycles of branch vertices, then through
//! two Ramsey refinements (equal doubled path values, then equal path
//! values up to an element of order at most 2), after which all paths of a
//! `K_μ` share one value `h ∈ A` and some cycle through `c` of its branch
//! vertices has value `c h ∈ A`. The cycles `D_i` are then joined through
//! relay branch vertices and glued by pigeonhole.

use super::linking::{concat, glue_pigeonhole_cycle, CycleSplit, GlueArcs};
use super::ramsey::{EdgeColoredClique, PairColor};
use super::{cofinite_form, lift_cycle};
use crate::abelian::Elem;
use crate::bounds::{beta, mu, r_inner, RamseyStub};
use crate::error::ExtractError;
use crate::graph::{verify_subdivision, CycleCert, LGraph, SubdivCert, ValueSet};

/// Overrides for the clique sizes `r`, `β` and `μ`; unset sizes use the
/// default Ramsey stub.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct InSubdivisionParams {
    pub r: Option<usize>,
    pub beta: Option<usize>,
    pub mu: Option<usize>,
}

/// Finds an `(A, k)`-cycle in the `(A, 1)`-subdivision `f` of `K_t`.
/// Requires at most `p` group elements `g` with `2g = 0` and
/// `t >= (r + k)(ω + 2)`.
pub fn long_cycle_in_subdivision(
    g: &LGraph,
    a: &ValueSet,
    f: &SubdivCert,
    p: u64,
    k: usize,
    params: &InSubdivisionParams,
) -> Result<CycleCert, ExtractError> {
    if k == 0 {
        return Err(ExtractError::Precondition("k must be positive".into()));
    }
    let unit = SubdivCert {
        min_len: 1,
        ..f.clone()
    };
    verify_subdivision(g, a, &unit)
        .map_err(|v| ExtractError::Precondition(format!("input subdivision rejected: {v}")))?;
    let (h, b, omega) = cofinite_form(g, a)?;
    let involutions = h.group().involution_count();
    if involutions > p.into() {
        return Err(ExtractError::Precondition(format!(
            "the group has {involutions} elements of order at most 2, more than p = {p}"
        )));
    }
    let stub = RamseyStub::default();
    let size = |given: Option<usize>, default: Option<usize>, name: &str| {
        given.or(default).ok_or_else(|| {
            ExtractError::Precondition(format!("{name} exceeds the evaluation cap; pass an override"))
        })
    };
    let r = size(params.r, r_inner(omega as u64, p, stub).to_usize(), "r")?;
    let beta_size = size(params.beta, beta(omega as u64, p, stub).to_usize(), "beta")?;
    let default_mu = mu(omega as u64) as usize;
    let mu_size = params.mu.unwrap_or(default_mu);
    let t = f.branch.len();
    let need = (r + k) * (omega + 2);
    if t < need {
        return Err(ExtractError::Precondition(format!(
            "{t} branch vertices, (r + k)(ω + 2) = {need} needed"
        )));
    }
    let search = BlockSearch {
        g: &h,
        a: &b,
        f,
        beta: beta_size,
        mu: mu_size,
        mu_is_default: mu_size >= default_mu,
    };
    let mut cycles = Vec::with_capacity(omega + 2);
    for i in 0..omega + 2 {
        let block: Vec<usize> = (i * r..(i + 1) * r).collect();
        cycles.push(search.a_cycle(&block).map_err(|e| match e {
            ExtractError::Stage { stage, reason } => ExtractError::Stage {
                stage: format!("block {}: {stage}", i + 1),
                reason,
            },
            other => other,
        })?);
    }
    // a_i < b_i: the two lowest-id branch vertices on D_i, with positions.
    let ends: Vec<[(usize, usize); 2]> = cycles
        .iter()
        .map(|(_, positions)| {
            let mut on: Vec<(usize, usize)> = positions.iter().map(|&q| (f.branch[q], q)).collect();
            on.sort_unstable();
            [on[0], on[1]]
        })
        .collect();
    let splits: Vec<CycleSplit> = cycles
        .iter()
        .zip(&ends)
        .map(|((vertices, _), [(a_v, _), (b_v, _)])| CycleSplit::at(vertices, *a_v, *b_v))
        .collect();
    let ell = (k / 2).max(1);
    let base = r * (omega + 2);
    let mut q = Vec::with_capacity(omega + 1);
    let mut rr = Vec::with_capacity(omega + 1);
    for i in 0..=omega {
        let first = base + i * k;
        let y_relays = first..first + ell - 1;
        let z_relays = first + ell - 1..first + 2 * (ell - 1);
        q.push(route(f, ends[i][0].1, y_relays, ends[i + 1][0].1)?);
        rr.push(route(f, ends[i][1].1, z_relays, ends[i + 1][1].1)?);
    }
    let arcs = GlueArcs { splits, q, r: rr };
    let (cert, _) = glue_pigeonhole_cycle(&h, &b, &arcs, k)?;
    lift_cycle(g, a, &cert)
}

/// The path through branch positions `from`, `relays..`, `to`.
fn route(
    f: &SubdivCert,
    from: usize,
    relays: std::ops::Range<usize>,
    to: usize,
) -> Result<Vec<usize>, ExtractError> {
    let mut positions = vec![from];
    positions.extend(relays);
    positions.push(to);
    let hops: Vec<Vec<usize>> = positions.windows(2).map(|w| f.path_between(w[0], w[1])).collect();
    let refs: Vec<&[usize]> = hops.iter().map(Vec::as_slice).collect();
    concat(&refs)
}

/// The cycle of the subdivision through branch positions `order`.
fn cycle_through(f: &SubdivCert, order: &[usize]) -> Result<Vec<usize>, ExtractError> {
    let mut closed = order.to_vec();
    closed.push(order[0]);
    let mut cycle = route(f, closed[0], 0..0, closed[1])?;
    for w in closed[1..].windows(2) {
        let hop = f.path_between(w[0], w[1]);
        cycle = concat(&[&cycle, &hop])?;
    }
    cycle.pop();
    Ok(cycle)
}

struct BlockSearch<'a> {
    g: &'a LGraph,
    a: &'a ValueSet,
    f: &'a SubdivCert,
    beta: usize,
    mu: usize,
    mu_is_default: bool,
}

type Found = (Vec<usize>, Vec<usize>);

impl BlockSearch<'_> {
    fn value_of(&self, order: &[usize]) -> Result<(Vec<usize>, Elem), ExtractError> {
        let cycle = cycle_through(self.f, order)?;
        let value = self.g.cycle_value(&cycle)?;
        Ok((cycle, value))
    }

    fn path_value(&self, i: usize, j: usize) -> Result<Elem, ExtractError> {
        Ok(self.g.path_value(&self.f.path_between(i, j))?)
    }

    /// An `A`-cycle of the sub-subdivision on `block` (branch positions),
    /// with the branch positions it passes.
    fn a_cycle(&self, block: &[usize]) -> Result<Found, ExtractError> {
        if let Some(found) = self.short_cycle(block)? {
            return Ok(found);
        }
        let n = block.len();
        if n < 4 {
            return Err(ExtractError::stage(
                "short cycles",
                format!("no A-cycle through 3 or 4 of {n} branch vertices"),
            ));
        }
        // No triangle or 4-cycle has value in A, so each doubled path value
        // is a sum s_1 + s_2 - s_3 of values outside A.
        let mut doubled = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let (x, y) = {
                    let mut rest = (0..n).filter(|&q| q != i && q != j);
                    (rest.next().unwrap(), rest.next().unwrap())
                };
                let [a, b, x, y] = [block[i], block[j], block[x], block[y]];
                let (_, v1) = self.value_of(&[a, b, x])?;
                let (_, v2) = self.value_of(&[a, b, y])?;
                let (_, v3) = self.value_of(&[a, x, b, y])?;
                let twice = self.path_value(a, b)?.scale_by(2);
                if twice != &(&v1 + &v2) - &v3 {
                    return Err(ExtractError::Contradiction(format!(
                        "2γ(P) = {twice} differs from {v1} + {v2} - {v3}"
                    )));
                }
                doubled.push(PairColor::Value(twice));
            }
        }
        let clique = EdgeColoredClique::new(block.to_vec(), doubled).expect("one colour per pair");
        let h1 = single_colour_clique(&clique, self.beta).ok_or_else(|| {
            ExtractError::stage(
                "doubled-value refinement",
                format!("no {}-clique with equal doubled path values among {n}", self.beta),
            )
        })?;
        let h1: Vec<usize> = h1.iter().map(|&q| block[q]).collect();
        let s = self.path_value(h1[0], h1[1])?;
        let mut shifts = Vec::with_capacity(h1.len() * (h1.len() - 1) / 2);
        for i in 0..h1.len() {
            for j in i + 1..h1.len() {
                let shift = &self.path_value(h1[i], h1[j])? - &s;
                if !shift.scale_by(2).is_zero() {
                    return Err(ExtractError::Contradiction(format!(
                        "path values {s} and {} do not differ by an element of order 2",
                        &shift + &s
                    )));
                }
                shifts.push(PairColor::Value(shift));
            }
        }
        let clique = EdgeColoredClique::new(h1.clone(), shifts).expect("one colour per pair");
        let h2 = single_colour_clique(&clique, self.mu).ok_or_else(|| {
            ExtractError::stage(
                "order-2 refinement",
                format!("no {}-clique with equal path values among {}", self.mu, h1.len()),
            )
        })?;
        let z: Vec<usize> = h2.iter().map(|&q| h1[q]).collect();
        let value = self.path_value(z[0], z[1])?;
        for c in 3..=z.len() {
            if self.a.contains(&value.scale_by(c as i64)) {
                let (cycle, _) = self.value_of(&z[..c])?;
                return Ok((cycle, z[..c].to_vec()));
            }
        }
        let reason = format!("no c in 3..={} with c·{value} in A", z.len());
        if self.mu_is_default {
            Err(ExtractError::Inconsistent(reason))
        } else {
            Err(ExtractError::stage("uniform clique", reason))
        }
    }

    /// Triangles, then 4-cycles in each of their three cyclic orders,
    /// lexicographically by position.
    fn short_cycle(&self, block: &[usize]) -> Result<Option<Found>, ExtractError> {
        let n = block.len();
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    let order = [block[i], block[j], block[l]];
                    let (cycle, value) = self.value_of(&order)?;
                    if self.a.contains(&value) {
                        return Ok(Some((cycle, order.to_vec())));
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    for m in l + 1..n {
                        let [a, b, c, d] = [block[i], block[j], block[l], block[m]];
                        for order in [[a, b, c, d], [a, b, d, c], [a, c, b, d]] {
                            let (cycle, value) = self.value_of(&order)?;
                            if self.a.contains(&value) {
                                return Ok(Some((cycle, order.to_vec())));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Positions of a `size`-clique in one colour, trying colours in order.
fn single_colour_clique(clique: &EdgeColoredClique, size: usize) -> Option<Vec<usize>> {
    clique
        .palette()
        .iter()
        .find_map(|colour| clique.clique_of_color(colour, size))
}
