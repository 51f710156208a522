#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use gainarb_core::extraction::{StageFile, StageKind};
use gainarb_core::{CycleCert, Elem, Group, LGraph, SubdivCert, ValueSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn group(name: &str) -> Group {
    match name {
        "Z" => Group::integers(),
        "Z2" => Group::cyclic(2).unwrap(),
        "Z3" => Group::cyclic(3).unwrap(),
        "Z4" => Group::cyclic(4).unwrap(),
        "Z6" => Group::cyclic(6).unwrap(),
        "Z2xZ2" => Group::from_parts(0, &[2, 2]).unwrap(),
        other => panic!("unknown group {other}"),
    }
}

/// Label pool: all elements of a finite group, `-2..=2` for `Z`.
pub fn pool(g: &Group) -> Vec<Elem> {
    if g.free_rank() == 0 {
        g.elements(64).unwrap()
    } else {
        (-2..=2).map(|k| g.elem([k]).unwrap()).collect()
    }
}

pub fn random_graph(rng: &mut ChaCha8Rng, group: &Group, n: usize, density: f64) -> LGraph {
    let labels = pool(group);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v, labels.choose(rng).unwrap().clone()));
            }
        }
    }
    LGraph::new(group, n, edges).unwrap()
}

/// A nonempty finite or cofinite value set over the label pool.
pub fn random_value_set(rng: &mut ChaCha8Rng, group: &Group, cofinite: bool) -> ValueSet {
    let labels = pool(group);
    let size = rng.gen_range(1..=labels.len().min(3));
    let chosen: Vec<Elem> = labels.choose_multiple(rng, size).cloned().collect();
    if cofinite {
        let mut complement = chosen;
        if group.free_rank() == 0 && complement.len() == labels.len() {
            complement.pop();
        }
        ValueSet::cofinite(group, complement).unwrap()
    } else {
        ValueSet::finite(group, chosen).unwrap()
    }
}

fn value_by_hand(g: &LGraph, walk: &[usize]) -> Option<Elem> {
    let mut total = g.group().zero();
    for w in walk.windows(2) {
        total = &total + g.label(w[0], w[1])?;
    }
    Some(total)
}

/// Cycle check written without the library verifier.
pub fn independent_cycle_check(g: &LGraph, a: &ValueSet, cert: &CycleCert, min_len: usize) -> Result<(), String> {
    let c = &cert.vertices;
    if c.len() < 3 || c.len() < min_len {
        return Err(format!("length {} below {}", c.len(), min_len.max(3)));
    }
    if c.iter().collect::<BTreeSet<_>>().len() != c.len() {
        return Err("repeated vertex".into());
    }
    let mut closed = c.clone();
    closed.push(c[0]);
    let value = value_by_hand(g, &closed).ok_or("missing edge")?;
    if value != cert.value {
        return Err(format!("claimed {} but sums to {value}", cert.value));
    }
    if !a.contains(&value) {
        return Err(format!("value {value} not in A"));
    }
    Ok(())
}

/// Subdivision check written without the library verifier.
pub fn independent_subdivision_check(g: &LGraph, a: &ValueSet, cert: &SubdivCert, d: usize) -> Result<(), String> {
    let t = cert.branch.len();
    let branch: BTreeSet<usize> = cert.branch.iter().copied().collect();
    if branch.len() != t {
        return Err("repeated branch vertex".into());
    }
    if cert.paths.len() != t * t.saturating_sub(1) / 2 {
        return Err("wrong number of paths".into());
    }
    let mut interiors = BTreeSet::new();
    let mut k = 0;
    for i in 0..t {
        for j in i + 1..t {
            let p = &cert.paths[k];
            k += 1;
            if p.first() != Some(&cert.branch[i]) || p.last() != Some(&cert.branch[j]) {
                return Err(format!("path {k} has wrong ends"));
            }
            if p.len() - 1 < d {
                return Err(format!("path {k} shorter than {d}"));
            }
            for v in &p[1..p.len() - 1] {
                if branch.contains(v) || !interiors.insert(*v) {
                    return Err(format!("interior vertex {v} reused"));
                }
            }
            let value = value_by_hand(g, p).ok_or("missing edge")?;
            if !a.contains(&value) {
                return Err(format!("path {k} has value {value} outside A"));
            }
        }
    }
    Ok(())
}

/// Builds staged instances: `T_1`, disjoint triangles in `T_2`, and
/// two-edge band paths through private relay vertices.
pub struct StagedToy {
    pub group: Group,
    n: usize,
    edges: BTreeMap<(usize, usize), Elem>,
    core: Vec<usize>,
    relays: BTreeMap<usize, Vec<usize>>,
    pub t1: Vec<usize>,
    pub cycles: Vec<Vec<usize>>,
}

impl StagedToy {
    pub fn new(group: &Group) -> Self {
        StagedToy {
            group: group.clone(),
            n: 0,
            edges: BTreeMap::new(),
            core: Vec::new(),
            relays: BTreeMap::new(),
            t1: Vec::new(),
            cycles: Vec::new(),
        }
    }

    fn vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn edge(&mut self, u: usize, v: usize, label: &Elem) {
        self.edges.insert((u.min(v), u.max(v)), label.clone());
    }

    pub fn elem(&self, k: i64) -> Elem {
        self.group.elem([k]).unwrap()
    }

    pub fn branch_candidates(&mut self, count: usize) -> Vec<usize> {
        let vs: Vec<usize> = (0..count).map(|_| self.vertex()).collect();
        self.core.extend(&vs);
        self.t1.extend(&vs);
        vs
    }

    /// A triangle with one edge labelled `value` (between its two lowest
    /// vertices) and the others 0.
    pub fn triangle(&mut self, value: i64) -> Vec<usize> {
        let vs: Vec<usize> = (0..3).map(|_| self.vertex()).collect();
        let zero = self.group.zero();
        let v = self.elem(value);
        self.edge(vs[0], vs[1], &v);
        self.edge(vs[1], vs[2], &zero);
        self.edge(vs[0], vs[2], &zero);
        self.core.extend(&vs);
        self.cycles.push(vs.clone());
        vs
    }

    /// A path `x - w - y` with `w` a new vertex of band `band`; the edge at
    /// `x` carries `value`, the other 0.
    pub fn band_path(&mut self, band: usize, x: usize, y: usize, value: i64) {
        let w = self.vertex();
        let v = self.elem(value);
        let zero = self.group.zero();
        self.edge(x, w, &v);
        self.edge(w, y, &zero);
        self.relays.entry(band).or_default().push(w);
    }

    pub fn graph(&self) -> LGraph {
        let edges = self.edges.iter().map(|(&(u, v), l)| (u, v, l.clone()));
        LGraph::new(&self.group, self.n, edges).unwrap()
    }

    /// `S_0 ⊇ ... ⊇ S_m` where band `i` holds the relays added for it.
    pub fn stage(&self, kind: StageKind, m: usize) -> StageFile {
        let mut sets = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let mut set = self.core.clone();
            for (&band, vs) in &self.relays {
                if band > i {
                    set.extend(vs);
                }
            }
            set.sort_unstable();
            sets.push(set);
        }
        StageFile::new(kind, sets)
    }
}

/// Three triangles joined through four bands; with `swap` the first two
/// connector rings share a value outside `A = Z_3 \ {0}` and gluing swaps.
pub fn long_cycle_toy(swap: bool) -> (LGraph, ValueSet, StageFile) {
    let z3 = group("Z3");
    let mut toy = StagedToy::new(&z3);
    let c1 = toy.triangle(1);
    let c2 = toy.triangle(if swap { 2 } else { 1 });
    let c3 = toy.triangle(if swap { 2 } else { 1 });
    toy.band_path(1, c1[0], c2[0], 0);
    toy.band_path(2, c2[0], c3[0], 0);
    toy.band_path(3, c1[1], c2[1], 0);
    toy.band_path(4, c2[1], c3[1], 0);
    let a = ValueSet::cofinite(&z3, vec![z3.zero()]).unwrap();
    let stage = toy.stage(StageKind::LongCycle, 4);
    (toy.graph(), a, stage)
}

/// Which branch of the subdivision pipeline a toy exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubdivToy {
    /// `Z_3`, `A = {1, 2}`: the first linked path already has value in `A`.
    Direct,
    /// `Z_4`, `A = {2, 3}`: linked paths all have value 1 and `2·1 ∈ A`.
    Uniform,
    /// `Z_6`, `A = {1, 5}`: linked paths of value 3, then growth paths of
    /// value 2, combined as `3 + 2`.
    Combination,
}

pub fn subdivision_toy(kind: SubdivToy) -> (LGraph, ValueSet, StageFile) {
    let (g, complement, r0, cycle_value, j_value) = match kind {
        SubdivToy::Direct => (group("Z3"), vec![0], 2, 1, 1),
        SubdivToy::Uniform => (group("Z4"), vec![0, 1], 3, 2, 1),
        SubdivToy::Combination => (group("Z6"), vec![0, 2, 3, 4], 3, 1, 3),
    };
    let mut toy = StagedToy::new(&g);
    let t1 = toy.branch_candidates(r0);
    let pairs: Vec<(usize, usize)> = (0..r0).flat_map(|i| (i + 1..r0).map(move |j| (i, j))).collect();
    for (idx, &(x, y)) in pairs.iter().enumerate() {
        let phi = idx + 1;
        let c = toy.triangle(cycle_value);
        toy.band_path(4 * phi - 3, t1[x], c[0], j_value);
        toy.band_path(4 * phi - 2, t1[y], c[0], 0);
    }
    let mut m = 4 * pairs.len();
    if kind == SubdivToy::Combination {
        // Growth round 1: first candidate P_xu + P_yu has value 1 + 1 = 2.
        let c1 = pairs.len();
        for (idx, &(x, y)) in pairs.iter().enumerate() {
            let phi = idx + 1;
            let base = 4 * c1 + 4 * phi - 4;
            let c = toy.triangle(cycle_value);
            toy.band_path(base + 1, t1[x], c[0], 1);
            toy.band_path(base + 2, t1[x], c[1], 0);
            toy.band_path(base + 3, t1[y], c[0], 1);
            toy.band_path(base + 4, t1[y], c[1], 0);
        }
        m = 4 * (c1 + pairs.len());
    }
    let complement = complement.iter().map(|&k| toy.elem(k)).collect();
    let a = ValueSet::cofinite(&g, complement).unwrap();
    let mut stage = toy.stage(StageKind::Subdivision, m);
    stage.t1 = Some(toy.t1.clone());
    stage.cycles = toy.cycles.clone();
    stage.schedule = Some(vec![r0; 3]);
    (toy.graph(), a, stage)
}
