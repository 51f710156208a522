//! `(A, d)`-subdivisions of `K_t` when `Γ \ A` is finite.
//!
//! Paths between the vertices of `T_1` are routed through the chain's
//! bands and classified by value. A Ramsey step either finds `t` branch
//! vertices joined by `A`-valued paths, or many joined by paths of a single
//! value `g`. In the latter case either multiples of `g` reach `A` (chain
//! `p` uniform paths per pair), or further rounds add parallel paths whose
//! values avoid the subgroup generated so far, until some combination of
//! the collected values lands in `A`.

use super::chain::{nested_sequence_with_arb, NestedChain};
use super::linking::{concat, link_path_avoiding_subgroup, link_path_via_vertex, reversed};
use super::long_cycle::check_disjoint_cycles;
use super::ramsey::{mono_clique, EdgeColoredClique, MonoClique, PairColor};
use super::stage::{StageFile, StageKind};
use super::{cofinite_form, lift_subdivision, threshold_check};
use crate::abelian::{Elem, SubgroupDesc};
use crate::arboricity::{arb_exact, arb_of_subset};
use crate::bounds::{f_omega, r_sequence, r_top, RamseyStub};
use crate::error::ExtractError;
use crate::graph::{find_a_cycle_within, verify_subdivision, CycleCert, LGraph, SubdivCert, ValueSet};

/// How a subdivision was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubdivRoute {
    /// The first Ramsey step found `t` vertices joined by `A`-valued paths.
    DirectA,
    /// A clique of paths of one value `g` with `⟨g⟩ ∩ A ≠ ∅`; `p` paths
    /// are chained per pair.
    Uniform { g: Elem, p: usize },
    /// Growth round `k` found `t` vertices joined by `A`-valued new paths.
    GrowthA { k: usize },
    /// Each final path uses `coefficients[j]` paths of value `values[j]`.
    Combination { values: Vec<Elem>, coefficients: Vec<usize> },
}

/// The step at which a staged run could not continue, which is a legal
/// outcome when the supplied sizes are below the Ramsey thresholds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageReport {
    pub stage: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubdivOutcome {
    Found { cert: SubdivCert, route: SubdivRoute },
    Stalled(StageReport),
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Follows `route` (branch positions) through the subdivision, taking the
/// path between consecutive positions from `path_between`.
fn chain_route(route: &[usize], path_between: impl Fn(usize, usize) -> Vec<usize>) -> Result<Vec<usize>, ExtractError> {
    let hops: Vec<Vec<usize>> = route.windows(2).map(|w| path_between(w[0], w[1])).collect();
    let refs: Vec<&[usize]> = hops.iter().map(Vec::as_slice).collect();
    concat(&refs)
}

/// Chains `p` branching paths of a uniformly valued subdivision of `K_q`
/// per pair, where `p <= ω+1` is least with `p g ∈ A`. Pair number `φ`
/// (lexicographic, from 1) uses relay positions `ζ+1 .. ζ+p-1`,
/// `ζ = t + (φ-1)(p-1)`. Needs `q >= t + C(t,2)(p-1)`.
pub fn subdivision_from_uniform(
    g: &LGraph,
    a: &ValueSet,
    h: &SubdivCert,
    omega: usize,
    t: usize,
    d: usize,
) -> Result<SubdivCert, ExtractError> {
    let q = h.branch.len();
    let first = h
        .paths
        .first()
        .ok_or_else(|| ExtractError::Precondition("the input subdivision has no paths".into()))?;
    let value = g.path_value(first)?;
    let uniform = ValueSet::finite(g.group(), vec![value.clone()])?;
    let structural = SubdivCert {
        min_len: d,
        ..h.clone()
    };
    verify_subdivision(g, &uniform, &structural)
        .map_err(|v| ExtractError::Precondition(format!("input subdivision rejected: {v}")))?;
    if a.contains(&value) {
        return Err(ExtractError::Precondition(format!(
            "the common value {value} already lies in A"
        )));
    }
    let p = a
        .first_multiple_in(&value, 2, omega as u64 + 1)
        .ok_or_else(|| {
            ExtractError::Inconsistent(format!(
                "no multiple p·{value} with 2 <= p <= {} lies in A",
                omega + 1
            ))
        })? as usize;
    let need = t + choose2(t) * (p - 1);
    if q < need {
        return Err(ExtractError::Precondition(format!(
            "{q} branch vertices given, {need} needed to chain {p} paths per pair"
        )));
    }
    let mut paths = Vec::with_capacity(choose2(t));
    for (idx, (x, y)) in pairs(t).enumerate() {
        let zeta = t + idx * (p - 1);
        let mut route = vec![x];
        route.extend(zeta..zeta + p - 1);
        route.push(y);
        paths.push(chain_route(&route, |i, j| h.path_between(i, j))?);
    }
    let cert = SubdivCert {
        branch: h.branch[..t].to_vec(),
        paths,
        min_len: d,
    };
    verify_subdivision(g, a, &cert).map_err(ExtractError::Certificate)?;
    Ok(cert)
}

/// Full mode: requires arboricity at least `f_ω(t, d)` (with the default
/// Ramsey stub), then runs the staged loop on a constructed chain.
pub fn extract_a_subdivision(
    g: &LGraph,
    a: &ValueSet,
    t: usize,
    d: usize,
    budget: Option<u64>,
) -> Result<SubdivOutcome, ExtractError> {
    let (h, b, omega) = cofinite_form(g, a)?;
    let arb = arb_exact(&h, &b, budget)?.value;
    let stub = RamseyStub::default();
    threshold_check(arb, &f_omega(omega as u64, t as u64, d as u64, stub))?;
    let schedule: Vec<usize> = r_sequence(omega as u64, t as u64, stub)
        .iter()
        .map(|r| r.to_usize())
        .collect::<Option<_>>()
        .ok_or_else(|| ExtractError::Contradiction("a met threshold implies evaluable sizes".into()))?;
    let c_top: usize = schedule[..=omega].iter().map(|&r| choose2(r)).sum();
    let mut start = None;
    for comp in h.components() {
        if arb_of_subset(&h, &b, &comp, budget)? == arb {
            start = Some(comp);
            break;
        }
    }
    let start = start.ok_or_else(|| ExtractError::Contradiction("no component attains the arboricity".into()))?;
    let chain = nested_sequence_with_arb(&h, &b, &start, subdivision_ell(d), 4 * c_top, arb, budget)?;
    let t1 = chain.last()[..schedule[0]].to_vec();
    let outcome = Pipeline::new(&h, &b, omega, t, d, &chain, t1, Vec::new(), schedule)?.run()?;
    lift_outcome(g, a, outcome)
}

/// Staged mode: chain, `T_1`, cycles and the size schedule come from a
/// stage file. `T_1` defaults to the `r_0` lowest-id vertices of `S_m`;
/// sizes `r_1, ...` default to `t + C(t,2)(ω²+ω-1)`; missing cycles are
/// found greedily in `S_m \ T_1`.
pub fn extract_a_subdivision_staged(
    g: &LGraph,
    a: &ValueSet,
    t: usize,
    d: usize,
    stage: &StageFile,
) -> Result<SubdivOutcome, ExtractError> {
    if stage.kind != StageKind::Subdivision {
        return Err(ExtractError::stage("stage file", "expected `stage: subdivision`"));
    }
    let (h, b, omega) = cofinite_form(g, a)?;
    let chain = stage.chain(&h, subdivision_ell(d))?;
    let default_r = r_top(omega as u64, t as u64)
        .try_into()
        .map_err(|_| ExtractError::Precondition("clique sizes overflow".into()))?;
    let given = stage.schedule.clone().unwrap_or_default();
    let r0 = match (&stage.t1, given.first()) {
        (Some(t1), Some(&r0)) if t1.len() != r0 => {
            return Err(ExtractError::stage(
                "schedule",
                format!("r_0 = {r0} but T1 has {} vertices", t1.len()),
            ))
        }
        (Some(t1), _) => t1.len(),
        (None, Some(&r0)) => r0,
        (None, None) => {
            return Err(ExtractError::stage("schedule", "neither `t1` nor r_0 is given"));
        }
    };
    let mut schedule = vec![r0];
    schedule.extend((1..=omega + 1).map(|i| given.get(i).copied().unwrap_or(default_r)));
    let t1 = match &stage.t1 {
        Some(t1) => t1.clone(),
        None => {
            if chain.last().len() < r0 {
                return Err(ExtractError::stage(
                    "t1",
                    format!("S_m has {} vertices, r_0 = {r0}", chain.last().len()),
                ));
            }
            chain.last()[..r0].to_vec()
        }
    };
    let outcome = Pipeline::new(&h, &b, omega, t, d, &chain, t1, stage.cycles.clone(), schedule)?.run()?;
    lift_outcome(g, a, outcome)
}

/// Band-path length for subdivisions: `max(1, floor((d+1)/2))`.
fn subdivision_ell(d: usize) -> usize {
    d.div_ceil(2).max(1)
}

fn lift_outcome(g: &LGraph, a: &ValueSet, outcome: SubdivOutcome) -> Result<SubdivOutcome, ExtractError> {
    if let SubdivOutcome::Found { cert, .. } = &outcome {
        lift_subdivision(g, a, cert)?;
    }
    Ok(outcome)
}

/// Disjoint `A`-cycles in `T_2`: supplied ones first, then greedy.
struct CycleSupply {
    certs: Vec<CycleCert>,
    free: Vec<bool>,
    supplied: usize,
}

impl CycleSupply {
    /// The `i`-th cycle (1-based).
    fn get(&mut self, g: &LGraph, a: &ValueSet, i: usize) -> Result<&CycleCert, ExtractError> {
        while self.certs.len() < i {
            let cert = find_a_cycle_within(g, a, &self.free, 3).ok_or_else(|| {
                ExtractError::stage(
                    "cycles",
                    format!(
                        "cycle C_{i} needed; {} supplied and {} more found in T2",
                        self.supplied,
                        self.certs.len() - self.supplied
                    ),
                )
            })?;
            for &v in &cert.vertices {
                self.free[v] = false;
            }
            self.certs.push(cert);
        }
        Ok(&self.certs[i - 1])
    }
}

/// Parallel paths: `paths[pair][j]` joins the pair with value `values[j]`.
struct Multi {
    branch: Vec<usize>,
    values: Vec<Elem>,
    paths: Vec<Vec<Vec<usize>>>,
}

impl Multi {
    fn path(&self, i: usize, j: usize, which: usize) -> Vec<usize> {
        let p = &self.paths[SubdivCert::pair_index(self.branch.len(), i, j)][which];
        if i < j {
            p.clone()
        } else {
            reversed(p)
        }
    }

    /// Keeps the branch positions `keep` and adds `extra[pair]` (indexed
    /// over the old pairs) with value `value`.
    fn restrict(&self, keep: &[usize], extra: &[Vec<usize>], value: Elem) -> Multi {
        let r = self.branch.len();
        let mut paths = Vec::with_capacity(choose2(keep.len()));
        for (x, y) in pairs(keep.len()) {
            let old = SubdivCert::pair_index(r, keep[x], keep[y]);
            let mut bundle = self.paths[old].clone();
            bundle.push(extra[old].clone());
            paths.push(bundle);
        }
        let mut values = self.values.clone();
        values.push(value);
        Multi {
            branch: keep.iter().map(|&p| self.branch[p]).collect(),
            values,
            paths,
        }
    }
}

struct Pipeline<'a> {
    g: &'a LGraph,
    a: &'a ValueSet,
    omega: usize,
    t: usize,
    d: usize,
    chain: &'a NestedChain,
    t1: Vec<usize>,
    cycles: CycleSupply,
    /// `r_0, ..., r_{ω+1}`.
    schedule: Vec<usize>,
}

enum Step {
    Done(SubdivOutcome),
    Grow(Multi),
}

impl<'a> Pipeline<'a> {
    #[allow(clippy::too_many_arguments)]
    fn new(
        g: &'a LGraph,
        a: &'a ValueSet,
        omega: usize,
        t: usize,
        d: usize,
        chain: &'a NestedChain,
        t1: Vec<usize>,
        supplied: Vec<Vec<usize>>,
        schedule: Vec<usize>,
    ) -> Result<Self, ExtractError> {
        if t == 0 {
            return Err(ExtractError::Precondition("t must be positive".into()));
        }
        let mut seen = vec![false; g.n()];
        for &v in &t1 {
            if v >= g.n() || !chain.in_last(v) {
                return Err(ExtractError::stage("t1", format!("vertex {v} is not in S_m")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(ExtractError::stage("t1", format!("vertex {v} repeated")));
            }
        }
        let in_t2 = |v: usize| chain.in_last(v) && !seen[v];
        check_disjoint_cycles(g, a, &supplied, in_t2)?;
        let mut free: Vec<bool> = (0..g.n()).map(in_t2).collect();
        let mut certs = Vec::with_capacity(supplied.len());
        for cycle in &supplied {
            for &v in cycle {
                free[v] = false;
            }
            certs.push(CycleCert {
                vertices: cycle.clone(),
                value: g.cycle_value(cycle)?,
                min_len: 3,
            });
        }
        Ok(Pipeline {
            g,
            a,
            omega,
            t,
            d,
            chain,
            t1,
            cycles: CycleSupply {
                supplied: certs.len(),
                certs,
                free,
            },
            schedule,
        })
    }

    fn color(&self, value: &Elem) -> PairColor {
        if self.a.contains(value) {
            PairColor::InA
        } else {
            PairColor::Value(value.clone())
        }
    }

    fn cert(&self, branch: Vec<usize>, paths: Vec<Vec<usize>>) -> Result<SubdivCert, ExtractError> {
        let cert = SubdivCert {
            branch,
            paths,
            min_len: self.d,
        };
        verify_subdivision(self.g, self.a, &cert).map_err(ExtractError::Certificate)?;
        Ok(cert)
    }

    /// The sub-clique on `positions` of a complete family of paths.
    fn sub_clique(&self, vertices: &[usize], paths: &[Vec<usize>], positions: &[usize]) -> (Vec<usize>, Vec<Vec<usize>>) {
        let n = vertices.len();
        let chosen = pairs(positions.len())
            .map(|(x, y)| paths[SubdivCert::pair_index(n, positions[x], positions[y])].clone())
            .collect();
        (positions.iter().map(|&p| vertices[p]).collect(), chosen)
    }

    fn run(mut self) -> Result<SubdivOutcome, ExtractError> {
        let r0 = self.t1.len();
        let mut j_paths = Vec::with_capacity(choose2(r0));
        let mut colors = Vec::with_capacity(choose2(r0));
        for (idx, (x, y)) in pairs(r0).enumerate() {
            let phi = idx + 1;
            let z = *self.cycles.get(self.g, self.a, phi)?.vertices.iter().min().unwrap();
            let path = link_path_via_vertex(
                self.g,
                self.chain,
                &self.t1,
                self.t1[x],
                self.t1[y],
                z,
                [4 * phi - 3, 4 * phi - 2],
            )?;
            colors.push(self.color(&self.g.path_value(&path)?));
            j_paths.push(path);
        }
        let clique = EdgeColoredClique::new(self.t1.clone(), colors).expect("one colour per pair");
        let r1 = self.schedule[1];
        let Some(MonoClique { positions, color }) = mono_clique(&clique, self.t, r1) else {
            return Ok(stalled(
                "initial Ramsey step",
                format!(
                    "among {r0} vertices there is neither a {}-clique of A-valued paths nor a single-value clique of size {r1}",
                    self.t
                ),
            ));
        };
        let (branch, paths) = self.sub_clique(&self.t1, &j_paths, &positions);
        let g_value = match color {
            PairColor::InA => {
                return Ok(SubdivOutcome::Found {
                    cert: self.cert(branch, paths)?,
                    route: SubdivRoute::DirectA,
                })
            }
            PairColor::Value(v) => v,
        };
        if self.a.meets_cyclic(&g_value)? {
            let h = SubdivCert {
                branch,
                paths,
                min_len: self.d,
            };
            let cert = subdivision_from_uniform(self.g, self.a, &h, self.omega, self.t, self.d)?;
            let p = self
                .a
                .first_multiple_in(&g_value, 2, self.omega as u64 + 1)
                .expect("checked by the chaining") as usize;
            return Ok(SubdivOutcome::Found {
                cert,
                route: SubdivRoute::Uniform { g: g_value, p },
            });
        }
        let mut f = Multi {
            branch,
            values: vec![g_value],
            paths: paths.into_iter().map(|p| vec![p]).collect(),
        };
        loop {
            match self.grow(&f)? {
                Step::Done(outcome) => return Ok(outcome),
                Step::Grow(next) => f = next,
            }
        }
    }

    /// One growth round on `f` with `k = f.values.len()` values.
    fn grow(&mut self, f: &Multi) -> Result<Step, ExtractError> {
        let k = f.values.len();
        let r_k = f.branch.len();
        let c_k: usize = self.schedule[..k].iter().map(|&r| choose2(r)).sum();
        let lambda = SubgroupDesc::new(self.g.group(), f.values.clone())?;
        let mut new_paths = Vec::with_capacity(choose2(r_k));
        let mut colors = Vec::with_capacity(choose2(r_k));
        for (idx, (x, y)) in pairs(r_k).enumerate() {
            let phi = idx + 1;
            let cycle = self.cycles.get(self.g, self.a, c_k + phi)?.clone();
            let base = 4 * c_k + 4 * phi - 4;
            let path = link_path_avoiding_subgroup(
                self.g,
                self.a,
                self.chain,
                &self.t1,
                f.branch[x],
                f.branch[y],
                &cycle,
                &lambda,
                [base + 1, base + 2, base + 3, base + 4],
            )?;
            colors.push(self.color(&self.g.path_value(&path)?));
            new_paths.push(path);
        }
        let clique = EdgeColoredClique::new(f.branch.clone(), colors).expect("one colour per pair");
        let r_next = self.schedule[k + 1];
        let Some(MonoClique { positions, color }) = mono_clique(&clique, self.t, r_next) else {
            return Ok(Step::Done(stalled(
                &format!("growth round {k}"),
                format!(
                    "among {r_k} vertices there is neither a {}-clique of A-valued paths nor a single-value clique of size {r_next}",
                    self.t
                ),
            )));
        };
        let g_value = match color {
            PairColor::InA => {
                let (branch, paths) = self.sub_clique(&f.branch, &new_paths, &positions);
                return Ok(Step::Done(SubdivOutcome::Found {
                    cert: self.cert(branch, paths)?,
                    route: SubdivRoute::GrowthA { k },
                }));
            }
            PairColor::Value(v) => v,
        };
        let grown = f.restrict(&positions, &new_paths, g_value);
        let span = SubgroupDesc::new(self.g.group(), grown.values.clone())?;
        if !self.a.meets_subgroup(&span)? {
            if grown.values.len() > self.omega {
                return Err(ExtractError::Inconsistent(format!(
                    "{} distinct values outside A; the complement is larger than declared",
                    grown.values.len()
                )));
            }
            return Ok(Step::Grow(grown));
        }
        self.finish(&grown).map(Step::Done)
    }

    /// Routes every pair of the first `t` branch vertices through `λ - 1`
    /// relays so that the path uses `p_j` paths of value `a_j`.
    fn finish(&self, f: &Multi) -> Result<SubdivOutcome, ExtractError> {
        let coefficients = combination_in_a(self.a, &f.values, self.omega).ok_or_else(|| {
            ExtractError::Contradiction("no small combination of the collected values lies in A".into())
        })?;
        let lambda: usize = coefficients.iter().sum();
        let t = self.t;
        let need = t + choose2(t) * (lambda - 1);
        if f.branch.len() < need {
            return Ok(stalled(
                "finishing",
                format!(
                    "{} branch vertices, {need} needed for routes through {} relays",
                    f.branch.len(),
                    lambda - 1
                ),
            ));
        }
        let hops: Vec<usize> = coefficients
            .iter()
            .enumerate()
            .flat_map(|(j, &p)| std::iter::repeat_n(j, p))
            .collect();
        let mut paths = Vec::with_capacity(choose2(t));
        for (idx, (x, y)) in pairs(t).enumerate() {
            let first = t + idx * (lambda - 1);
            let mut route = vec![x];
            route.extend(first..first + lambda - 1);
            route.push(y);
            let segments: Vec<Vec<usize>> = route
                .windows(2)
                .zip(&hops)
                .map(|(w, &which)| f.path(w[0], w[1], which))
                .collect();
            let refs: Vec<&[usize]> = segments.iter().map(Vec::as_slice).collect();
            paths.push(concat(&refs)?);
        }
        Ok(SubdivOutcome::Found {
            cert: self.cert(f.branch[..t].to_vec(), paths)?,
            route: SubdivRoute::Combination {
                values: f.values.clone(),
                coefficients,
            },
        })
    }
}

fn stalled(stage: &str, reason: String) -> SubdivOutcome {
    SubdivOutcome::Stalled(StageReport {
        stage: stage.to_string(),
        reason,
    })
}

/// Coefficients `p_j` in `0..=ω`, not all zero, with `Σ p_j a_j ∈ A`;
/// smallest total first, then lexicographically smallest.
fn combination_in_a(a: &ValueSet, values: &[Elem], omega: usize) -> Option<Vec<usize>> {
    fn fill(
        a: &ValueSet,
        values: &[Elem],
        omega: usize,
        remaining: usize,
        acc: Elem,
        coeffs: &mut Vec<usize>,
    ) -> bool {
        let j = coeffs.len();
        if j == values.len() {
            return remaining == 0 && a.contains(&acc);
        }
        let rest_cap = omega * (values.len() - j - 1);
        for p in 0..=omega.min(remaining) {
            if remaining - p > rest_cap {
                continue;
            }
            coeffs.push(p);
            let next = &acc + &values[j].scale_by(p as i64);
            if fill(a, values, omega, remaining - p, next, coeffs) {
                return true;
            }
            coeffs.pop();
        }
        false
    }
    let zero = values.first()?.group().zero();
    for total in 1..=omega * values.len() {
        let mut coeffs = Vec::with_capacity(values.len());
        if fill(a, values, omega, total, zero.clone(), &mut coeffs) {
            return Some(coeffs);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::Group;

    #[test]
    fn uniform_chaining_over_z3() {
        // K_3 subdivided: branch 0, 1, 2, paths through 3, 4, 5, all value 1.
        let z3 = Group::cyclic(3).unwrap();
        let e = |k: i64| z3.elem([k]).unwrap();
        let g = LGraph::new(
            &z3,
            6,
            [
                (0, 3, e(1)),
                (3, 1, e(0)),
                (0, 4, e(0)),
                (4, 2, e(1)),
                (1, 5, e(1)),
                (5, 2, e(0)),
            ],
        )
        .unwrap();
        let a = ValueSet::cofinite(&z3, vec![e(1)]).unwrap();
        let h = SubdivCert {
            branch: vec![0, 1, 2],
            paths: vec![vec![0, 3, 1], vec![0, 4, 2], vec![1, 5, 2]],
            min_len: 2,
        };
        let cert = subdivision_from_uniform(&g, &a, &h, 1, 2, 2).unwrap();
        assert_eq!(cert.branch, vec![0, 1]);
        assert_eq!(cert.paths, vec![vec![0, 4, 2, 5, 1]]);
        let bad_a = ValueSet::cofinite(&z3, vec![e(2)]).unwrap();
        assert!(matches!(
            subdivision_from_uniform(&g, &bad_a, &h, 1, 2, 2),
            Err(ExtractError::Precondition(_))
        ));
    }

    #[test]
    fn combination_search() {
        let z4 = Group::cyclic(4).unwrap();
        let e = |k: i64| z4.elem([k]).unwrap();
        // Complement {0, 2}: 2 alone never reaches A; 2 + 1 does.
        let a = ValueSet::cofinite(&z4, vec![e(0), e(2)]).unwrap();
        assert_eq!(combination_in_a(&a, &[e(2), e(1)], 2), Some(vec![0, 1]));
        assert_eq!(combination_in_a(&a, &[e(2)], 2), None);
    }
}
