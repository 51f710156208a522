//! Stage files: the intermediate objects a pipeline would otherwise derive
//! from a huge arboricity hypothesis, supplied as text.
//!
//! ```text
//! stage: long-cycle            # or: subdivision
//! sets: 2                      # m; followed by S 0 .. S m
//! S 0: 0 1 2 3 4 5 6
//! S 1: 0 1 2 3 4
//! S 2: 0 1 2
//! band 1: 0 5 1                # optional path with interior in band 1
//! cycle: 0 1 2                 # optional disjoint A-cycles, in order
//! t1: 0 1                      # subdivision only: branch candidates
//! schedule: 3 3 3              # subdivision only: r_0 r_1 ... overrides
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::chain::NestedChain;
use crate::error::{ExtractError, ParseError};
use crate::graph::format::{content_lines, join, keyed, parse_usize, parse_vertices};
use crate::graph::LGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StageKind {
    LongCycle,
    Subdivision,
}

impl StageKind {
    fn name(self) -> &'static str {
        match self {
            StageKind::LongCycle => "long-cycle",
            StageKind::Subdivision => "subdivision",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageFile {
    pub kind: StageKind,
    /// `S_0, ..., S_m`.
    pub sets: Vec<Vec<usize>>,
    /// Paths keyed by `(band, first vertex, last vertex)`.
    pub bands: BTreeMap<(usize, usize, usize), Vec<usize>>,
    pub cycles: Vec<Vec<usize>>,
    pub t1: Option<Vec<usize>>,
    pub schedule: Option<Vec<usize>>,
}

impl StageFile {
    pub fn new(kind: StageKind, sets: Vec<Vec<usize>>) -> Self {
        StageFile {
            kind,
            sets,
            bands: BTreeMap::new(),
            cycles: Vec::new(),
            t1: None,
            schedule: None,
        }
    }

    /// Adds a band path keyed by its endpoints.
    pub fn add_band_path(&mut self, band: usize, path: Vec<usize>) {
        if let (Some(&x), Some(&y)) = (path.first(), path.last()) {
            self.bands.insert((band, x, y), path);
        }
    }

    /// The chain these sets describe, with band paths of length at least
    /// `max(ell, 2)`.
    pub fn chain(&self, g: &LGraph, ell: usize) -> Result<NestedChain, ExtractError> {
        NestedChain::from_sets(g, self.sets.clone(), ell, &self.bands)
    }
}

pub fn parse_stage(text: &str) -> Result<StageFile, ParseError> {
    let mut lines = content_lines(text).peekable();
    let (l1, t1) = lines.next().ok_or_else(|| ParseError::new(1, "missing `stage:` line"))?;
    let kind = match keyed(l1, t1, "stage")? {
        "long-cycle" => StageKind::LongCycle,
        "subdivision" => StageKind::Subdivision,
        other => return Err(ParseError::new(l1, format!("unknown stage kind `{other}`"))),
    };
    let (l2, t2) = lines.next().ok_or_else(|| ParseError::new(l1 + 1, "missing `sets:` line"))?;
    let m = parse_usize(l2, keyed(l2, t2, "sets")?)?;
    let mut stage = StageFile::new(kind, Vec::with_capacity(m + 1));
    let mut last = l2;
    for i in 0..=m {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| ParseError::new(last + 1, format!("missing `S {i}:` line")))?;
        stage.sets.push(parse_vertices(ln, keyed(ln, line, &format!("S {i}"))?)?);
        last = ln;
    }
    for (ln, line) in lines {
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| ParseError::new(ln, "expected `key: value`"))?;
        let key = key.trim();
        let rest = rest.trim();
        if let Some(band) = key.strip_prefix("band") {
            let band = parse_usize(ln, band)?;
            let path = parse_vertices(ln, rest)?;
            if path.len() < 2 {
                return Err(ParseError::new(ln, "a band path needs at least two vertices"));
            }
            stage.add_band_path(band, path);
            continue;
        }
        match key {
            "cycle" => {
                let cycle = parse_vertices(ln, rest)?;
                if cycle.len() < 3 {
                    return Err(ParseError::new(ln, "a cycle needs at least three vertices"));
                }
                stage.cycles.push(cycle);
            }
            "t1" if stage.t1.is_none() => stage.t1 = Some(parse_vertices(ln, rest)?),
            "schedule" if stage.schedule.is_none() => stage.schedule = Some(parse_vertices(ln, rest)?),
            "t1" | "schedule" => return Err(ParseError::new(ln, format!("`{key}` given twice"))),
            other => return Err(ParseError::new(ln, format!("unknown key `{other}`"))),
        }
    }
    Ok(stage)
}

pub fn write_stage(stage: &StageFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "stage: {}", stage.kind.name());
    let _ = writeln!(out, "sets: {}", stage.sets.len().saturating_sub(1));
    for (i, set) in stage.sets.iter().enumerate() {
        let _ = writeln!(out, "S {i}: {}", join(set));
    }
    for ((band, _, _), path) in &stage.bands {
        let _ = writeln!(out, "band {band}: {}", join(path));
    }
    for cycle in &stage.cycles {
        let _ = writeln!(out, "cycle: {}", join(cycle));
    }
    if let Some(t1) = &stage.t1 {
        let _ = writeln!(out, "t1: {}", join(t1));
    }
    if let Some(schedule) = &stage.schedule {
        let _ = writeln!(out, "schedule: {}", join(schedule));
    }
    out
}
