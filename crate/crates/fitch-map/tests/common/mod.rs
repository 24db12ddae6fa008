//! Helpers shared by the integration test targets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fitch_map::reduction::default_leaf_names;
use fitch_map::sets::{ColorSet, LeafSet};
use fitch_map::SymmetricMap;

/// A symmetric map with independently random entries: each (pair, color)
/// present with probability `density`.
pub fn random_map(n: usize, colors: usize, density: f64, seed: u64) -> SymmetricMap {
    let leaves = LeafSet::new(default_leaf_names(n)).unwrap();
    let color_set = ColorSet::new((1..=colors).map(|i| i.to_string())).unwrap();
    let mut map = SymmetricMap::new_empty(leaves, color_set).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..n {
        for j in i + 1..n {
            for c in 0..colors {
                if rng.random_bool(density) {
                    map.insert_color(i, j, c);
                }
            }
        }
    }
    map
}

/// All set partitions of `{0, …, n-1}` as restricted-growth assignment
/// vectors (`part[i]` = block index of element `i`).
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut assignment = vec![0usize; n];
    fn rec(i: usize, max_used: usize, assignment: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = assignment.len();
        if i == n {
            out.push(assignment.clone());
            return;
        }
        for block in 0..=max_used + 1 {
            assignment[i] = block;
            rec(i + 1, max_used.max(block), assignment, out);
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    assignment[0] = 0;
    rec(1, 0, &mut assignment, &mut out);
    out
}

/// The monochromatic map of a partition: `m` on a pair iff the elements sit
/// in different blocks (the complete multi-partite graph of the partition).
pub fn partition_map(assignment: &[usize]) -> SymmetricMap {
    let n = assignment.len();
    let leaves = LeafSet::new(default_leaf_names(n)).unwrap();
    let colors = ColorSet::new(["m"]).unwrap();
    let mut map = SymmetricMap::new_empty(leaves, colors).unwrap();
    for i in 0..n {
        for j in i + 1..n {
            if assignment[i] != assignment[j] {
                map.insert_color(i, j, 0);
            }
        }
    }
    map
}

/// The monochromatic map of an arbitrary graph given as an edge bitmask over
/// the `C(n,2)` pairs in canonical order.
pub fn graph_map(n: usize, edge_bits: u64) -> SymmetricMap {
    let leaves = LeafSet::new(default_leaf_names(n)).unwrap();
    let colors = ColorSet::new(["m"]).unwrap();
    let mut map = SymmetricMap::new_empty(leaves, colors).unwrap();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if edge_bits & (1u64 << bit) != 0 {
                map.insert_color(i, j, 0);
            }
            bit += 1;
        }
    }
    map
}
