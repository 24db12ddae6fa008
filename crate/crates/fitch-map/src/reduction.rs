//! Quartet sets, the quartets-to-map hardness reduction, seeded instance
//! generators, and the exhaustive oracle used to cross-check the recognizer.
//!
//! All randomness is ChaCha8 keyed from a caller-supplied 64-bit seed
//! (via `SeedableRng::seed_from_u64`), so instances reproduce exactly.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::error::ModelError;
use crate::map::SymmetricMap;
use crate::sets::{ColorSet, ColorSubset, LeafSet, LeafSubset};
use crate::subsplit::{Quartet, SubsplitSystem};
use crate::tree::{LabeledTree, Topology};

/// An ordered collection of quartets over a ground set. Input duplicates
/// are dropped (keeping first occurrences); the surviving order defines the
/// color indices of the reduction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuartetSet {
    ground: LeafSet,
    quartets: Vec<Quartet>,
    duplicates_dropped: usize,
}

impl QuartetSet {
    pub fn new(ground: LeafSet, quartets: Vec<Quartet>) -> Result<Self, ModelError> {
        let n = ground.len();
        let mut seen = BTreeSet::new();
        let mut kept = Vec::with_capacity(quartets.len());
        let mut duplicates_dropped = 0;
        for q in quartets {
            let support = q.subsplit().support();
            if let Some(stray) = support.difference(LeafSubset::all(n)).min_index() {
                return Err(ModelError::SubsplitOutOfRange { index: stray, n });
            }
            if seen.insert(q) {
                kept.push(q);
            } else {
                duplicates_dropped += 1;
            }
        }
        Ok(Self { ground, quartets: kept, duplicates_dropped })
    }

    /// Builds from leaf names, one `((a,b),(c,d))` tuple per quartet.
    pub fn from_name_pairs<S: AsRef<str>>(
        ground: LeafSet,
        items: &[((S, S), (S, S))],
    ) -> Result<Self, ModelError> {
        let mut quartets = Vec::with_capacity(items.len());
        for ((a, b), (c, d)) in items {
            let side_a = ground.subset_from_names([a.as_ref(), b.as_ref()])?;
            let side_b = ground.subset_from_names([c.as_ref(), d.as_ref()])?;
            quartets.push(Quartet::new(side_a, side_b)?);
        }
        Self::new(ground, quartets)
    }

    pub fn ground_set(&self) -> &LeafSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.quartets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quartets.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Quartet> {
        self.quartets.iter()
    }

    /// How many input duplicates were dropped; callers may want to warn.
    pub fn duplicates_dropped(&self) -> usize {
        self.duplicates_dropped
    }

    /// The quartets as a subsplit system (origins are 1-based positions).
    pub fn to_subsplit_system(&self) -> SubsplitSystem {
        let mut sys = SubsplitSystem::new(self.ground.clone());
        for (i, q) in self.quartets.iter().enumerate() {
            sys.insert(q.subsplit(), (i + 1).to_string()).expect("validated at construction");
        }
        sys
    }
}

/// The hardness reduction: a map whose colors are `"1"…"|Q|"` (one per
/// quartet, in order) with `i ∈ ε(x,y)` unless `{x,y}` is one of the two
/// sides of quartet `i`. Its complementary neighborhoods for color `i` are
/// the two sides plus singletons, so the non-trivial subsplit system is
/// exactly the quartet set and the map is a symmetrized Fitch map iff the
/// quartets are compatible.
pub fn reduce_quartets_to_map(quartets: &QuartetSet) -> Result<SymmetricMap, ModelError> {
    let ground = quartets.ground_set();
    let n = ground.len();
    if n < 2 {
        return Err(ModelError::TooFewLeaves { got: n });
    }
    let color_names: Vec<String> = (1..=quartets.len()).map(|i| i.to_string()).collect();
    let colors = ColorSet::new(color_names)?;
    let mut map = SymmetricMap::new_empty(ground.clone(), colors)?;
    for (qi, q) in quartets.iter().enumerate() {
        let color = map
            .color_set()
            .index_of(&(qi + 1).to_string())
            .expect("color was just created");
        let (side_a, side_b) = q.subsplit().sides();
        for i in 0..n {
            for j in i + 1..n {
                let pair = LeafSubset::from_indices([i, j]);
                if pair != side_a && pair != side_b {
                    map.insert_color(i, j, color);
                }
            }
        }
    }
    Ok(map)
}

// ---------------------------------------------------------------------------
// exhaustive enumeration and the oracle
// ---------------------------------------------------------------------------

/// Calls `f` with every binary topology over the leaf set, in the
/// deterministic leaf-insertion order, until `f` breaks.
pub fn for_each_binary_topology<F>(leaves: &LeafSet, mut f: F)
where
    F: FnMut(&Topology) -> ControlFlow<()>,
{
    let n = leaves.len();
    assert!(n >= 2, "topologies need at least two leaves");
    let mut edges = vec![(0usize, 1usize)];
    let mut slots = n;
    let _ = enumerate_rec(leaves, n, &mut slots, &mut edges, 2, &mut f);
}

fn enumerate_rec<F>(
    leaves: &LeafSet,
    n: usize,
    slots: &mut usize,
    edges: &mut Vec<(usize, usize)>,
    inserted: usize,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&Topology) -> ControlFlow<()>,
{
    if inserted == n {
        let topo = Topology::from_validated(leaves.clone(), *slots, edges.clone());
        return f(&topo);
    }
    for e in 0..edges.len() {
        let (u, v) = edges[e];
        let w = *slots;
        *slots += 1;
        edges[e] = (u, w);
        edges.push((w, v));
        edges.push((w, inserted));
        let flow = enumerate_rec(leaves, n, slots, edges, inserted + 1, f);
        edges.pop();
        edges.pop();
        edges[e] = (u, v);
        *slots -= 1;
        flow?;
    }
    ControlFlow::Continue(())
}

/// Every phylogenetic topology over the leaf set (binary trees plus all
/// their inner-edge contractions), deduplicated up to leaf-labeled
/// isomorphism. Exponential; meant for small oracle runs.
pub fn all_phylogenetic_topologies(leaves: &LeafSet) -> Vec<Topology> {
    let mut seen: BTreeSet<Vec<LeafSubset>> = BTreeSet::new();
    let mut out = Vec::new();
    for_each_binary_topology(leaves, |topo| {
        let mut stack = vec![topo.clone()];
        while let Some(t) = stack.pop() {
            let sig: Vec<LeafSubset> = t.signature().into_iter().collect();
            if !seen.insert(sig) {
                continue;
            }
            for e in 0..t.edges().len() {
                if t.is_inner_edge(e) {
                    stack.push(t.contract_inner_edge(e).expect("inner edge"));
                }
            }
            out.push(t);
        }
        ControlFlow::Continue(())
    });
    out
}

/// Decides whether some labeling of the fixed topology explains the map,
/// returning one if so.
///
/// Per color the question decomposes: an edge may carry `m` only if it lies
/// on no path between a pair with `m ∉ ε`, and taking every edge that may
/// carry `m` is optimal. So the topology works iff, under that maximal
/// labeling, every pair with `m ∈ ε(x,y)` sees an `m`-capable edge on its
/// path.
pub fn admits_explaining_labeling(topology: &Topology, map: &SymmetricMap) -> Option<Vec<ColorSubset>> {
    debug_assert_eq!(topology.leaf_set(), map.leaf_set());
    let cuts = topology.edge_cuts();
    let universe = map.color_set().universe_subset();
    let mut allowed = vec![universe; cuts.len()];
    for (i, j, entry) in map.pairs() {
        let absent = universe.difference(entry);
        if absent.is_empty() {
            continue;
        }
        for (e, &cut) in cuts.iter().enumerate() {
            if cut.contains(i) != cut.contains(j) {
                allowed[e] = allowed[e].difference(absent);
            }
        }
    }
    for (i, j, entry) in map.pairs() {
        let mut reachable = ColorSubset::empty();
        for (e, &cut) in cuts.iter().enumerate() {
            if cut.contains(i) != cut.contains(j) {
                reachable = reachable.union(allowed[e]);
            }
        }
        if !entry.is_subset_of(reachable) {
            return None;
        }
    }
    Some(allowed)
}

/// Caps for the exhaustive oracle; the state space is every binary topology.
#[derive(Clone, Debug)]
pub struct OracleLimits {
    pub max_leaves: usize,
    pub max_used_colors: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self { max_leaves: 7, max_used_colors: 3 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle cap exceeded: {n} leaves over the limit of {cap}")]
    LeafCapExceeded { n: usize, cap: usize },
    #[error("oracle cap exceeded: {used} colors in use over the limit of {cap}")]
    ColorCapExceeded { used: usize, cap: usize },
}

/// Exhaustive decision of the recognition problem, independent of the
/// recognizer: enumerates every binary topology and asks whether any
/// labeling explains the map. Returns the first explaining tree in
/// enumeration order. Any explaining tree refines to an explaining binary
/// tree (new edges get `∅`), so binary topologies suffice for existence.
pub fn brute_force_is_fitch(
    map: &SymmetricMap,
    limits: &OracleLimits,
) -> Result<Option<LabeledTree>, OracleError> {
    let n = map.leaf_count();
    if n > limits.max_leaves {
        return Err(OracleError::LeafCapExceeded { n, cap: limits.max_leaves });
    }
    let used = map.used_colors().len();
    if used > limits.max_used_colors {
        return Err(OracleError::ColorCapExceeded { used, cap: limits.max_used_colors });
    }
    let mut witness = None;
    for_each_binary_topology(map.leaf_set(), |topo| {
        if let Some(labels) = admits_explaining_labeling(topo, map) {
            let tree = LabeledTree::from_topology(topo.clone(), map.color_set().clone(), labels);
            debug_assert_eq!(tree.explain(), *map);
            witness = Some(tree);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(witness)
}

// ---------------------------------------------------------------------------
// seeded generators
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("requested {requested} quartets but only {available} exist on {n} leaves")]
    NotEnoughQuartets { requested: usize, available: usize, n: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Canonical generated leaf names: `a…z` for up to 26 leaves, `t01…` beyond.
pub fn default_leaf_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (1..=n).map(|i| format!("t{i:02}")).collect()
    }
}

/// A uniformly random binary topology by seeded random leaf insertion, with
/// every (edge, color) pair labeled independently with probability
/// `density`. Same seed, same tree.
pub fn random_labeled_tree(
    n: usize,
    colors: &ColorSet,
    density: f64,
    seed: u64,
) -> Result<LabeledTree, ModelError> {
    assert!((0.0..=1.0).contains(&density), "density must lie in [0, 1]");
    let leaves = LeafSet::new(default_leaf_names(n))?;
    if n < 2 {
        return Err(ModelError::TooFewTreeLeaves { got: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = vec![(0usize, 1usize)];
    let mut slots = n;
    for leaf in 2..n {
        let e = rng.random_range(0..edges.len());
        let (u, v) = edges[e];
        let w = slots;
        slots += 1;
        edges[e] = (u, w);
        edges.push((w, v));
        edges.push((w, leaf));
    }
    let topology = Topology::from_validated(leaves, slots, edges);
    let mut labels = vec![ColorSubset::empty(); topology.edges().len()];
    for label in labels.iter_mut() {
        for c in 0..colors.len() {
            if rng.random_bool(density) {
                label.insert(c);
            }
        }
    }
    Ok(LabeledTree::from_topology(topology, colors.clone(), labels))
}

/// All `3·C(n,4)` quartets over the default leaf names, in canonical order.
fn all_quartets(n: usize) -> Vec<(LeafSubset, LeafSubset)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let (a, b, c, d) = (i, j, k, l);
                    out.push((LeafSubset::from_indices([a, b]), LeafSubset::from_indices([c, d])));
                    out.push((LeafSubset::from_indices([a, c]), LeafSubset::from_indices([b, d])));
                    out.push((LeafSubset::from_indices([a, d]), LeafSubset::from_indices([b, c])));
                }
            }
        }
    }
    out
}

/// `k` quartets sampled uniformly without replacement (seeded partial
/// Fisher–Yates over the canonical enumeration), in sampling order.
pub fn random_quartet_set(n: usize, k: usize, seed: u64) -> Result<QuartetSet, GenError> {
    let ground = LeafSet::new(default_leaf_names(n)).map_err(GenError::Model)?;
    let mut pool = all_quartets(n);
    if k > pool.len() {
        return Err(GenError::NotEnoughQuartets { requested: k, available: pool.len(), n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..k {
        let pick = rng.random_range(t..pool.len());
        pool.swap(t, pick);
    }
    let quartets: Vec<Quartet> = pool[..k]
        .iter()
        .map(|&(a, b)| Quartet::new(a, b).expect("enumeration yields quartets"))
        .collect();
    QuartetSet::new(ground, quartets).map_err(GenError::Model)
}
