//! Shared fixtures for the benchmarks.

use gainarb_core::{Group, LGraph, ValueSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `G(n, p)` over `Z_m` with uniform labels and `A = Z_m \ {0}`.
pub fn random_cyclic(n: usize, p: f64, m: u64, seed: u64) -> (LGraph, ValueSet) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let group = Group::cyclic(m).unwrap();
    let labels = group.elements(64).unwrap();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v, labels.choose(&mut rng).unwrap().clone()));
            }
        }
    }
    let g = LGraph::new(&group, n, edges).unwrap();
    let a = ValueSet::cofinite(&group, vec![group.zero()]).unwrap();
    (g, a)
}
