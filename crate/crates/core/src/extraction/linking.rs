//! Joining vertices of `S_m` through the bands of a chain, and gluing
//! cycles by pigeonhole over the values outside `A`.

use super::chain::NestedChain;
use crate::abelian::{Elem, SubgroupDesc};
use crate::error::ExtractError;
use crate::graph::{is_simple_path, normalize_cycle, verify_cycle, CycleCert, LGraph, ValueSet};

/// Concatenates paths where each starts at the previous one's end.
pub(crate) fn concat(segments: &[&[usize]]) -> Result<Vec<usize>, ExtractError> {
    let mut out: Vec<usize> = Vec::new();
    for seg in segments {
        match (out.last(), seg.first()) {
            (None, _) => out.extend_from_slice(seg),
            (Some(a), Some(b)) if a == b => out.extend_from_slice(&seg[1..]),
            _ => {
                return Err(ExtractError::Contradiction(format!(
                    "segments do not meet: {out:?} then {seg:?}"
                )))
            }
        }
    }
    Ok(out)
}

pub(crate) fn reversed(path: &[usize]) -> Vec<usize> {
    path.iter().rev().copied().collect()
}

/// A cycle cut at its two lowest-id vertices `a < b`: `forward` runs from
/// `a` to `b` in normalized direction, `backward` is the other arc, also
/// from `a` to `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSplit {
    pub forward: Vec<usize>,
    pub backward: Vec<usize>,
}

impl CycleSplit {
    pub fn at_lowest(cycle: &[usize]) -> Self {
        let mut sorted = cycle.to_vec();
        sorted.sort_unstable();
        Self::at(cycle, sorted[0], sorted[1])
    }

    /// Splits at the given vertices, `u` first.
    pub fn at(cycle: &[usize], u: usize, v: usize) -> Self {
        let n = cycle.len();
        let iu = cycle.iter().position(|&w| w == u).expect("u on cycle");
        let rotated: Vec<usize> = (0..n).map(|k| cycle[(iu + k) % n]).collect();
        let rotated = if rotated.len() > 2 && rotated[1] > rotated[n - 1] {
            std::iter::once(rotated[0])
                .chain(rotated[1..].iter().rev().copied())
                .collect()
        } else {
            rotated
        };
        let iv = rotated.iter().position(|&w| w == v).expect("v on cycle");
        let forward = rotated[..=iv].to_vec();
        let mut backward = vec![u];
        backward.extend(rotated[iv..].iter().rev());
        CycleSplit { forward, backward }
    }

    pub fn start(&self) -> usize {
        self.forward[0]
    }

    pub fn end(&self) -> usize {
        *self.forward.last().unwrap()
    }
}

/// `P_{x,z} ∪ P_{y,z}`: the band paths `x -> z` in band `bands[0]` and
/// `y -> z` in band `bands[1]`, joined at `z`. `x, y` must be distinct
/// vertices of `t1`; `z` a vertex of `S_m` outside `t1`.
pub fn link_path_via_vertex(
    g: &LGraph,
    chain: &NestedChain,
    t1: &[usize],
    x: usize,
    y: usize,
    z: usize,
    bands: [usize; 2],
) -> Result<Vec<usize>, ExtractError> {
    if x == y {
        return Err(ExtractError::Precondition(format!("endpoints coincide at {x}")));
    }
    if !t1.contains(&x) || !t1.contains(&y) {
        return Err(ExtractError::Precondition(format!("{x} and {y} must lie in T1")));
    }
    if t1.contains(&z) || !chain.in_last(z) {
        return Err(ExtractError::Precondition(format!("relay {z} must lie in S_m outside T1")));
    }
    if bands[0] == bands[1] {
        return Err(ExtractError::Precondition("the two bands must differ".into()));
    }
    let pxz = chain.band_path(g, bands[0], x, z)?;
    let pyz = chain.band_path(g, bands[1], y, z)?;
    let path = concat(&[&pxz, &reversed(&pyz)])?;
    check_linked(g, &path, 2 * chain.ell())?;
    Ok(path)
}

fn check_linked(g: &LGraph, path: &[usize], min_len: usize) -> Result<(), ExtractError> {
    if !is_simple_path(g, path) || path.len() - 1 < min_len {
        return Err(ExtractError::Contradiction(format!(
            "linked path {path:?} is not simple with length at least {min_len}"
        )));
    }
    Ok(())
}

/// Values of the four candidate `(x, y)`-paths built from band paths with
/// values `a = [a1, a2, a3, a4]` (to `u`, `v` from `x`; to `u`, `v` from
/// `y`) and arcs `q = [q1, q2]` between `u` and `v`:
/// `a1 + a3`, `a2 + a4`, `a1 + q1 + a4`, `a2 + q2 + a3`.
pub fn four_candidate_values(a: &[Elem; 4], q: &[Elem; 2]) -> [Elem; 4] {
    [
        &a[0] + &a[2],
        &a[1] + &a[3],
        &(&a[0] + &q[0]) + &a[3],
        &(&a[1] + &q[1]) + &a[2],
    ]
}

/// An `(x, y)`-path of value outside `Λ`, routed through band paths to the
/// two lowest-id vertices `u, v` of the `A`-cycle `cycle` and possibly one
/// arc of it. Requires `Λ ∩ A = ∅`, `γ(cycle) ∈ A`, the cycle inside
/// `S_m \ t1`, and four distinct bands.
#[allow(clippy::too_many_arguments)]
pub fn link_path_avoiding_subgroup(
    g: &LGraph,
    a: &ValueSet,
    chain: &NestedChain,
    t1: &[usize],
    x: usize,
    y: usize,
    cycle: &CycleCert,
    lambda: &SubgroupDesc,
    bands: [usize; 4],
) -> Result<Vec<usize>, ExtractError> {
    if x == y || !t1.contains(&x) || !t1.contains(&y) {
        return Err(ExtractError::Precondition(format!(
            "{x} and {y} must be distinct vertices of T1"
        )));
    }
    if a.meets_subgroup(lambda)? {
        return Err(ExtractError::Precondition("the subgroup meets A".into()));
    }
    verify_cycle(g, a, cycle).map_err(|v| ExtractError::Precondition(format!("cycle rejected: {v}")))?;
    if let Some(&w) = cycle.vertices.iter().find(|&&w| t1.contains(&w) || !chain.in_last(w)) {
        return Err(ExtractError::Precondition(format!("cycle vertex {w} is not in S_m \\ T1")));
    }
    let mut distinct = bands.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != 4 {
        return Err(ExtractError::Precondition("the four bands must differ".into()));
    }
    let split = CycleSplit::at_lowest(&normalize_cycle(&cycle.vertices));
    let (u, v) = (split.start(), split.end());
    let pxu = chain.band_path(g, bands[0], x, u)?;
    let pxv = chain.band_path(g, bands[1], x, v)?;
    let pyu = chain.band_path(g, bands[2], y, u)?;
    let pyv = chain.band_path(g, bands[3], y, v)?;
    let candidates = [
        concat(&[&pxu, &reversed(&pyu)])?,
        concat(&[&pxv, &reversed(&pyv)])?,
        concat(&[&pxu, &split.forward, &reversed(&pyv)])?,
        concat(&[&pxv, &reversed(&split.backward), &reversed(&pyu)])?,
    ];
    let mut values = Vec::with_capacity(4);
    for path in candidates {
        let value = g.path_value(&path)?;
        if !lambda.contains(&value) {
            check_linked(g, &path, 2 * chain.ell())?;
            return Ok(path);
        }
        values.push(value.to_string());
    }
    Err(ExtractError::Contradiction(format!(
        "all four candidate values {} lie in the subgroup",
        values.join(", ")
    )))
}

/// Inputs for pigeonhole gluing: `k + 1` cycles `C_i`, each split into
/// arcs `P_i`, `P'_i` from `a_i` to `b_i`, and `k` connectors `Q_i`
/// (`a_i -> a_{i+1}`) and `R_i` (`b_i -> b_{i+1}`).
#[derive(Clone, Debug)]
pub struct GlueArcs {
    pub splits: Vec<CycleSplit>,
    pub q: Vec<Vec<usize>>,
    pub r: Vec<Vec<usize>>,
}

/// Which cycle the gluing returned (1-based indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GlueCase {
    /// `H_i` itself has value in `A`.
    Direct(usize),
    /// `γ(H_a) = γ(H_b)`; the swapped cycle has the value of `C_{a+1}`.
    Swapped { a: usize, b: usize },
}

impl GlueArcs {
    /// `H_i = P_1 ∪ P_{i+1} ∪ ⋃_{j ≤ i} (Q_j ∪ R_j)` as a vertex cycle.
    pub fn h_cycle(&self, i: usize) -> Result<Vec<usize>, ExtractError> {
        self.ring(&self.splits[0].forward, 1, i)
    }

    /// `P'_{a+1} ∪ P_{b+1} ∪ ⋃_{a < j ≤ b} (Q_j ∪ R_j)`.
    pub fn swapped_cycle(&self, a: usize, b: usize) -> Result<Vec<usize>, ExtractError> {
        self.ring(&self.splits[a].backward, a + 1, b)
    }

    /// Cycle leaving along `first` (from `a_lo` to `b_lo`), the `R`
    /// connectors `lo..=hi`, back along `P_{hi+1}` and the `Q` connectors.
    fn ring(&self, first: &[usize], lo: usize, hi: usize) -> Result<Vec<usize>, ExtractError> {
        let mut segments: Vec<Vec<usize>> = vec![first.to_vec()];
        for j in lo..=hi {
            segments.push(self.r[j - 1].clone());
        }
        segments.push(reversed(&self.splits[hi].forward));
        for j in (lo..=hi).rev() {
            segments.push(reversed(&self.q[j - 1]));
        }
        let refs: Vec<&[usize]> = segments.iter().map(Vec::as_slice).collect();
        let mut cycle = concat(&refs)?;
        if cycle.first() != cycle.last() {
            return Err(ExtractError::Contradiction("glued ring does not close".into()));
        }
        cycle.pop();
        Ok(cycle)
    }

    fn check_shape(&self, g: &LGraph) -> Result<(), ExtractError> {
        let k = self.q.len();
        let bad = |reason: String| ExtractError::stage("gluing", reason);
        if self.splits.len() != k + 1 || self.r.len() != k || k == 0 {
            return Err(bad(format!(
                "{} cycles need {} connectors of each kind",
                self.splits.len(),
                self.splits.len().saturating_sub(1)
            )));
        }
        for (i, s) in self.splits.iter().enumerate() {
            if s.forward.first() != s.backward.first() || s.forward.last() != s.backward.last() {
                return Err(bad(format!("arcs of cycle {} do not share endpoints", i + 1)));
            }
        }
        for j in 0..k {
            let ends = |p: &[usize]| (p.first().copied(), p.last().copied());
            if ends(&self.q[j]) != (Some(self.splits[j].start()), Some(self.splits[j + 1].start()))
                || ends(&self.r[j]) != (Some(self.splits[j].end()), Some(self.splits[j + 1].end()))
            {
                return Err(bad(format!("connectors {} have wrong endpoints", j + 1)));
            }
        }
        let mut owner = vec![usize::MAX; g.n()];
        let mut claim = |v: usize, who: usize| -> Result<(), ExtractError> {
            if v >= g.n() {
                return Err(bad(format!("vertex {v} out of range")));
            }
            if owner[v] != usize::MAX && owner[v] != who {
                return Err(bad(format!("vertex {v} is shared by two pieces")));
            }
            owner[v] = who;
            Ok(())
        };
        for (i, s) in self.splits.iter().enumerate() {
            for &v in s.forward.iter().chain(&s.backward) {
                claim(v, i)?;
            }
        }
        for (j, path) in self.q.iter().chain(&self.r).enumerate() {
            for &v in &path[1..path.len() - 1] {
                claim(v, self.splits.len() + j)?;
            }
        }
        Ok(())
    }
}

/// Returns an `A`-cycle from the arcs: the first `H_i` with value in `A`,
/// or else the swapped cycle for the first pair `a < b` with
/// `γ(H_a) = γ(H_b)`. With more than `|Γ \ A|` connectors such a pair exists.
pub fn glue_pigeonhole_cycle(
    g: &LGraph,
    a: &ValueSet,
    arcs: &GlueArcs,
    min_len: usize,
) -> Result<(CycleCert, GlueCase), ExtractError> {
    arcs.check_shape(g)?;
    for (i, s) in arcs.splits.iter().enumerate() {
        let value = &g.path_value(&s.forward)? + &g.path_value(&s.backward)?;
        if !a.contains(&value) {
            return Err(ExtractError::Inconsistent(format!(
                "cycle {} has value {value} outside A",
                i + 1
            )));
        }
    }
    let k = arcs.q.len();
    let mut values: Vec<Elem> = Vec::with_capacity(k);
    for i in 1..=k {
        let h = arcs.h_cycle(i)?;
        let value = g.cycle_value(&h)?;
        if a.contains(&value) {
            return Ok((finish(g, a, &h, min_len)?, GlueCase::Direct(i)));
        }
        values.push(value);
    }
    for b in 2..=k {
        if let Some(first) = (1..b).find(|&x| values[x - 1] == values[b - 1]) {
            let cycle = arcs.swapped_cycle(first, b)?;
            let expect = &g.path_value(&arcs.splits[first].forward)? + &g.path_value(&arcs.splits[first].backward)?;
            if g.cycle_value(&cycle)? != expect {
                return Err(ExtractError::Contradiction(
                    "swapped cycle value differs from the cycle it replaces".into(),
                ));
            }
            return Ok((finish(g, a, &cycle, min_len)?, GlueCase::Swapped { a: first, b }));
        }
    }
    Err(ExtractError::Inconsistent(format!(
        "{k} glued cycles take {k} distinct values outside A; the complement is larger than declared"
    )))
}

fn finish(g: &LGraph, a: &ValueSet, cycle: &[usize], min_len: usize) -> Result<CycleCert, ExtractError> {
    let vertices = normalize_cycle(cycle);
    let cert = CycleCert {
        value: g.cycle_value(&vertices)?,
        vertices,
        min_len,
    };
    verify_cycle(g, a, &cert).map_err(ExtractError::Certificate)?;
    Ok(cert)
}
