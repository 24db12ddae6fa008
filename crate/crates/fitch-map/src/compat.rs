//! The compatibility engine: pairwise quick-reject, exact subsplit
//! compatibility by pruned leaf insertion, split-system tree reconstruction,
//! the explaining-tree construction, and the top-level recognizer.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::error::ModelError;
use crate::map::SymmetricMap;
use crate::neighborhoods::{full_subsplit_systems, neighborhood_system_idx, PartitionViolation};
use crate::sets::{ColorSubset, LeafSet, LeafSubset};
use crate::subsplit::{RestrictedSubsplit, SplitSystem, Subsplit, SubsplitSystem};
use crate::tree::{LabeledTree, Topology};

/// Resource limits for the exact search.
#[derive(Clone, Debug)]
pub struct SearchLimits {
    /// Largest ground set the exact search will attempt.
    pub max_leaves: usize,
    /// Wall-clock budget; exceeding it yields a distinct resource-limit
    /// outcome rather than a wrong answer.
    pub time_budget: Option<Duration>,
    /// Worker threads for the search. Parallel runs return the same verdict
    /// and the same witness as sequential ones.
    pub jobs: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self { max_leaves: 16, time_budget: None, jobs: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompatError {
    #[error("ground set has {n} leaves, over the exact-search cap of {cap}; raise the cap to proceed")]
    LeafCapExceeded { n: usize, cap: usize },
    #[error("time budget of {budget:?} exhausted before the search finished")]
    TimeBudgetExhausted { budget: Duration },
    #[error("split system must contain all trivial splits, but {{{leaf}}}|rest is missing")]
    MissingTrivialSplit { leaf: String },
    #[error("neighborhoods of color {color:?} do not form a partition: {first} and {second} share leaf {shared}")]
    NotPartition { color: String, first: String, second: String, shared: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Why a subsplit system is incompatible.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IncompatibilityCertificate {
    /// Two subsplits whose four side intersections are all non-empty; no
    /// tree can display both.
    PairwiseObstruction(Subsplit, Subsplit),
    /// The exhaustive insertion search ran out of trees to try.
    SearchExhausted,
}

/// Outcome of the exact compatibility decision.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CompatibilityVerdict {
    /// A tree displaying every input subsplit.
    Compatible(Topology),
    Incompatible(IncompatibilityCertificate),
}

/// First pair of subsplits (in canonical order) whose four cross
/// intersections are all non-empty. Such a pair proves incompatibility;
/// `None` only means there is no *pairwise* obstruction.
pub fn pairwise_quick_reject(system: &SubsplitSystem) -> Option<(Subsplit, Subsplit)> {
    let subsplits: Vec<Subsplit> = system.iter().copied().collect();
    for i in 0..subsplits.len() {
        for j in i + 1..subsplits.len() {
            let (a1, a2) = subsplits[i].sides();
            let (b1, b2) = subsplits[j].sides();
            if !a1.is_disjoint(b1)
                && !a1.is_disjoint(b2)
                && !a2.is_disjoint(b1)
                && !a2.is_disjoint(b2)
            {
                return Some((subsplits[i], subsplits[j]));
            }
        }
    }
    None
}

/// Whether the tree displays the subsplit; thin re-export of the topology
/// method so the engine's surface is complete.
pub fn displays(tree: &Topology, s: &Subsplit) -> Result<bool, ModelError> {
    tree.displays(s)
}

// ---------------------------------------------------------------------------
// exact search
// ---------------------------------------------------------------------------

/// A binary tree over the leaf prefix `0..k`. Leaf `i` is vertex `i`; inner
/// vertices start at the full leaf count `n` so a finished tree already has
/// the [`Topology`] vertex layout.
#[derive(Clone)]
struct PartialTree {
    vertex_slots: usize, // one past the largest vertex id in use
    edges: Vec<(usize, usize)>,
    inserted: usize, // leaves 0..inserted are present
}

impl PartialTree {
    fn initial(n: usize) -> Self {
        debug_assert!(n >= 2);
        Self { vertex_slots: n, edges: vec![(0, 1)], inserted: 2 }
    }

    /// Subdivides edge `e` with a new inner vertex and hangs the next leaf
    /// off it. Replaces `edges[e]` in place so branch order stays canonical.
    fn insert_leaf(&self, e: usize) -> Self {
        let mut child = self.clone();
        let w = child.vertex_slots;
        child.vertex_slots += 1;
        let (u, v) = child.edges[e];
        child.edges[e] = (u, w);
        child.edges.push((w, v));
        child.edges.push((w, child.inserted));
        child.inserted += 1;
        child
    }

    /// Leaf set below each edge, seen from vertex 0.
    fn cuts(&self, n: usize) -> Vec<LeafSubset> {
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.vertex_slots];
        for (ei, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, ei));
            adj[b].push((a, ei));
        }
        let mut order = Vec::with_capacity(self.vertex_slots);
        let mut parent = vec![usize::MAX; self.vertex_slots];
        let mut parent_edge = vec![usize::MAX; self.vertex_slots];
        let mut seen = vec![false; self.vertex_slots];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            order.push(u);
            for &(w, ei) in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    parent_edge[w] = ei;
                    stack.push(w);
                }
            }
        }
        let mut below = vec![LeafSubset::empty(); self.vertex_slots];
        let mut cuts = vec![LeafSubset::empty(); self.edges.len()];
        for &u in order.iter().rev() {
            if u < n {
                below[u].insert(u);
            }
            if parent[u] != usize::MAX {
                cuts[parent_edge[u]] = below[u];
                let p = parent[u];
                below[p] = below[p].union(below[u]);
            }
        }
        cuts
    }

    fn into_topology(self, leaves: LeafSet) -> Topology {
        Topology::from_validated(leaves, self.vertex_slots, self.edges)
    }
}

enum SearchOutcome {
    Found(PartialTree),
    Exhausted,
    Aborted,
}

struct Searcher {
    n: usize,
    subsplits: Vec<Subsplit>,
    /// Indices of the subsplits whose support contains each leaf; only
    /// those can become newly violated when that leaf is inserted.
    by_leaf: Vec<Vec<usize>>,
    deadline: Option<Instant>,
}

impl Searcher {
    fn new(system: &SubsplitSystem, deadline: Option<Instant>) -> Self {
        let n = system.ground_set().len();
        let subsplits: Vec<Subsplit> = system.iter().copied().collect();
        let mut by_leaf = vec![Vec::new(); n];
        for (si, s) in subsplits.iter().enumerate() {
            for leaf in s.support().iter() {
                by_leaf[leaf].push(si);
            }
        }
        Self { n, subsplits, by_leaf, deadline }
    }

    /// After inserting leaf `last`, every subsplit restricted to the leaves
    /// present must still be displayed. Restrictions not involving `last`
    /// were checked on the parent and display survives leaf insertion, so
    /// only subsplits containing `last` need a look.
    fn consistent(&self, pt: &PartialTree, last: usize) -> bool {
        let watch = &self.by_leaf[last];
        if watch.is_empty() {
            return true;
        }
        let present = LeafSubset::all(pt.inserted);
        let cuts = pt.cuts(self.n);
        watch.iter().all(|&si| match self.subsplits[si].restrict_to(present) {
            RestrictedSubsplit::Satisfied => true,
            RestrictedSubsplit::Proper(s) => {
                let (a, b) = s.sides();
                cuts.iter().any(|&c| {
                    (a.is_subset_of(c) && b.is_disjoint(c)) || (b.is_subset_of(c) && a.is_disjoint(c))
                })
            }
        })
    }

    fn out_of_time(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn dfs(&self, pt: &PartialTree) -> SearchOutcome {
        if self.out_of_time() {
            return SearchOutcome::Aborted;
        }
        let next = pt.inserted;
        for e in 0..pt.edges.len() {
            let child = pt.insert_leaf(e);
            if !self.consistent(&child, next) {
                continue;
            }
            if child.inserted == self.n {
                return SearchOutcome::Found(child);
            }
            match self.dfs(&child) {
                SearchOutcome::Exhausted => {}
                other => return other,
            }
        }
        SearchOutcome::Exhausted
    }

    /// Expands the root level-synchronously until the frontier is wide
    /// enough to keep `jobs` workers busy, then settles each frontier entry
    /// (in order) by sequential DFS. The reported result is the first
    /// non-exhausted one in frontier order, which coincides with the plain
    /// sequential DFS result.
    fn run(&self, jobs: usize) -> SearchOutcome {
        let mut frontier = vec![PartialTree::initial(self.n)];
        if self.n == 2 {
            return SearchOutcome::Found(frontier.pop().unwrap());
        }
        let target = if jobs > 1 { 4 * jobs } else { 1 };
        while frontier.len() < target && !frontier.is_empty() && frontier[0].inserted < self.n {
            if self.out_of_time() {
                return SearchOutcome::Aborted;
            }
            let mut next_level = Vec::new();
            for pt in &frontier {
                let next = pt.inserted;
                for e in 0..pt.edges.len() {
                    let child = pt.insert_leaf(e);
                    if self.consistent(&child, next) {
                        next_level.push(child);
                    }
                }
            }
            frontier = next_level;
        }
        if frontier.is_empty() {
            return SearchOutcome::Exhausted;
        }
        if frontier[0].inserted == self.n {
            // expansion completed the trees; the first one is the witness
            return SearchOutcome::Found(frontier.swap_remove(0));
        }
        let settle = |pt: &PartialTree| self.dfs(pt);
        let hit = if jobs > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .expect("thread pool");
            pool.install(|| {
                frontier
                    .par_iter()
                    .map(settle)
                    .find_first(|o| !matches!(o, SearchOutcome::Exhausted))
            })
        } else {
            frontier.iter().map(settle).find(|o| !matches!(o, SearchOutcome::Exhausted))
        };
        hit.unwrap_or(SearchOutcome::Exhausted)
    }
}

/// Decides whether some tree over the system's ground set displays every
/// subsplit. Compatible verdicts carry a (binary) witness tree, the first
/// one in the deterministic insertion order; incompatible verdicts carry a
/// pairwise obstruction when one exists.
pub fn exact_compatibility(
    system: &SubsplitSystem,
    limits: &SearchLimits,
) -> Result<CompatibilityVerdict, CompatError> {
    let n = system.ground_set().len();
    if n > limits.max_leaves {
        return Err(CompatError::LeafCapExceeded { n, cap: limits.max_leaves });
    }
    if n < 2 {
        return Err(CompatError::Model(ModelError::TooFewTreeLeaves { got: n }));
    }
    if let Some((s1, s2)) = pairwise_quick_reject(system) {
        return Ok(CompatibilityVerdict::Incompatible(
            IncompatibilityCertificate::PairwiseObstruction(s1, s2),
        ));
    }
    let deadline = limits.time_budget.map(|b| Instant::now() + b);
    let searcher = Searcher::new(system, deadline);
    match searcher.run(limits.jobs.max(1)) {
        SearchOutcome::Found(pt) => {
            Ok(CompatibilityVerdict::Compatible(pt.into_topology(system.ground_set().clone())))
        }
        SearchOutcome::Exhausted => {
            Ok(CompatibilityVerdict::Incompatible(IncompatibilityCertificate::SearchExhausted))
        }
        SearchOutcome::Aborted => Err(CompatError::TimeBudgetExhausted {
            budget: limits.time_budget.expect("abort implies a budget"),
        }),
    }
}

// ---------------------------------------------------------------------------
// splits-equivalence reconstruction
// ---------------------------------------------------------------------------

/// Reconstructs the unique tree displaying exactly the given splits, if the
/// splits are pairwise compatible; `None` otherwise. The system must
/// contain all trivial splits.
///
/// Works by refining a star: non-trivial splits are inserted in order of
/// increasing smaller-side size, each detaching its blocks around the unique
/// fitting vertex onto a fresh neighbor.
pub fn tree_from_splits(system: &SplitSystem) -> Result<Option<Topology>, CompatError> {
    if let Some(leaf) = system.missing_trivial_split() {
        return Err(CompatError::MissingTrivialSplit { leaf });
    }
    let splits: Vec<Subsplit> = system.iter().copied().collect();
    for i in 0..splits.len() {
        for j in i + 1..splits.len() {
            let (a1, a2) = splits[i].sides();
            let (b1, b2) = splits[j].sides();
            if !a1.is_disjoint(b1)
                && !a1.is_disjoint(b2)
                && !a2.is_disjoint(b1)
                && !a2.is_disjoint(b2)
            {
                return Ok(None);
            }
        }
    }

    let ground = system.ground_set();
    let n = ground.len();
    if n == 2 {
        return Ok(Some(Topology::single_edge(ground.clone())?));
    }
    let mut vertex_count = n + 1;
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, n)).collect();

    let mut nontrivial: Vec<Subsplit> = splits.into_iter().filter(|s| !s.is_trivial()).collect();
    nontrivial.sort_by_key(|s| {
        let (a, b) = s.sides();
        (a.len().min(b.len()), *s)
    });

    for split in nontrivial {
        let (a, b) = split.sides();
        let detach = if a.len() <= b.len() { a } else { b };

        // component leaf sets through every edge, seen from each endpoint
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertex_count];
        for (ei, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, ei));
            adj[v].push((u, ei));
        }
        let mut parent = vec![usize::MAX; vertex_count];
        let mut parent_edge = vec![usize::MAX; vertex_count];
        let mut order = Vec::with_capacity(vertex_count);
        let mut seen = vec![false; vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            order.push(u);
            for &(w, ei) in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    parent_edge[w] = ei;
                    stack.push(w);
                }
            }
        }
        let mut below = vec![LeafSubset::empty(); vertex_count];
        let mut cut = vec![LeafSubset::empty(); edges.len()];
        for &u in order.iter().rev() {
            if u < n {
                below[u].insert(u);
            }
            if parent[u] != usize::MAX {
                cut[parent_edge[u]] = below[u];
                below[parent[u]] = below[parent[u]].union(below[u]);
            }
        }
        let all = LeafSubset::all(n);
        let component_through = |v: usize, w: usize, ei: usize| -> LeafSubset {
            if parent[w] == v {
                cut[ei]
            } else {
                all.difference(cut[ei])
            }
        };

        let mut refined = false;
        'vertices: for v in n..vertex_count {
            let mut detach_edges = Vec::new();
            for &(w, ei) in &adj[v] {
                let comp = component_through(v, w, ei);
                if comp.is_subset_of(detach) {
                    detach_edges.push(ei);
                } else if !comp.is_disjoint(detach) {
                    continue 'vertices; // a component straddles the split here
                }
            }
            if detach_edges.is_empty() || detach_edges.len() == adj[v].len() {
                continue;
            }
            let fresh = vertex_count;
            vertex_count += 1;
            for ei in detach_edges {
                let (u, w) = edges[ei];
                edges[ei] = if u == v { (fresh, w) } else { (u, fresh) };
            }
            edges.push((v, fresh));
            refined = true;
            break;
        }
        if !refined {
            debug_assert!(false, "refinement failed on pairwise-compatible splits");
            return Ok(None);
        }
    }

    Ok(Some(Topology::new(ground.clone(), vertex_count, edges)?))
}

// ---------------------------------------------------------------------------
// explaining tree and recognizer
// ---------------------------------------------------------------------------

/// Outcome of the explaining-tree construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BuildOutcome {
    Explained(LabeledTree),
    Incompatible(IncompatibilityCertificate),
}

/// The labeling `λ_ε`: an edge carries color `m` iff it is a splitting edge
/// for some disjoint neighborhood pair of `m` and lies on no path between
/// two leaves of the same `m`-neighborhood.
fn label_witness(topology: &Topology, map: &SymmetricMap) -> Vec<ColorSubset> {
    let cuts = topology.edge_cuts();
    let mut labels = vec![ColorSubset::empty(); cuts.len()];
    for c in 0..map.color_set().len() {
        let system = neighborhood_system_idx(map, c);
        let blocks: Vec<LeafSubset> = system.members().copied().collect();
        for (e, &cut) in cuts.iter().enumerate() {
            let inside_a_block = blocks
                .iter()
                .any(|&b| !b.intersection(cut).is_empty() && !b.difference(cut).is_empty());
            if inside_a_block {
                continue;
            }
            let splitting = blocks.iter().enumerate().any(|(i, &bi)| {
                blocks.iter().skip(i + 1).any(|&bj| {
                    bi.is_disjoint(bj)
                        && ((bi.is_subset_of(cut) && bj.is_disjoint(cut))
                            || (bj.is_subset_of(cut) && bi.is_disjoint(cut)))
                })
            });
            if splitting {
                labels[e].insert(c);
            }
        }
    }
    labels
}

/// Checks the per-color partition precondition, searches for a tree
/// displaying the subsplit system, and labels it. When the construction
/// succeeds the returned tree explains the map exactly.
pub fn build_explaining_tree(
    map: &SymmetricMap,
    limits: &SearchLimits,
) -> Result<BuildOutcome, CompatError> {
    for c in 0..map.color_set().len() {
        let system = neighborhood_system_idx(map, c);
        if let Some(v) = system.is_partition() {
            return Err(not_partition_error(map, c, &v));
        }
    }
    let (full, _non_trivial) = full_subsplit_systems(map);
    match exact_compatibility(&full, limits)? {
        CompatibilityVerdict::Incompatible(cert) => Ok(BuildOutcome::Incompatible(cert)),
        CompatibilityVerdict::Compatible(topology) => {
            let labels = label_witness(&topology, map);
            let tree = LabeledTree::from_topology(topology, map.color_set().clone(), labels);
            debug_assert_eq!(tree.explain(), *map, "witness fails to explain the map");
            Ok(BuildOutcome::Explained(tree))
        }
    }
}

fn not_partition_error(map: &SymmetricMap, color: usize, v: &PartitionViolation) -> CompatError {
    CompatError::NotPartition {
        color: map.color_set().name(color).to_owned(),
        first: map.leaf_set().render_subset(v.first),
        second: map.leaf_set().render_subset(v.second),
        shared: map.leaf_set().name(v.shared_leaf).to_owned(),
    }
}

/// Structured reason for rejecting a map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RejectionReason {
    /// Some color's complementary neighborhoods overlap.
    NonPartition { color: String, violation: PartitionViolation },
    /// Every per-color family is a partition, but the subsplit system
    /// cannot be displayed by one tree.
    Incompatible { certificate: IncompatibilityCertificate },
}

/// Verdict of the recognizer.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Recognition {
    Fitch { witness: LabeledTree },
    NotFitch { reason: RejectionReason },
}

/// Decides whether the map is a symmetrized Fitch map: accepts with an
/// explaining tree, or rejects with either a non-partition color or an
/// incompatibility certificate. Two-leaf maps are always Fitch maps.
pub fn recognize(map: &SymmetricMap, limits: &SearchLimits) -> Result<Recognition, CompatError> {
    if map.leaf_count() == 2 {
        let witness = LabeledTree::single_edge(
            map.leaf_set().clone(),
            map.color_set().clone(),
            map.entry(0, 1),
        )?;
        return Ok(Recognition::Fitch { witness });
    }
    for c in 0..map.color_set().len() {
        let system = neighborhood_system_idx(map, c);
        if let Some(violation) = system.is_partition() {
            return Ok(Recognition::NotFitch {
                reason: RejectionReason::NonPartition {
                    color: map.color_set().name(c).to_owned(),
                    violation,
                },
            });
        }
    }
    match build_explaining_tree(map, limits)? {
        BuildOutcome::Explained(witness) => Ok(Recognition::Fitch { witness }),
        BuildOutcome::Incompatible(certificate) => {
            Ok(Recognition::NotFitch { reason: RejectionReason::Incompatible { certificate } })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::hourglass_map;
    use crate::sets::ColorSet;

    fn subsplit(a: &[usize], b: &[usize]) -> Subsplit {
        Subsplit::new(
            LeafSubset::from_indices(a.iter().copied()),
            LeafSubset::from_indices(b.iter().copied()),
        )
        .unwrap()
    }

    fn system(ground: &[&str], subsplits: &[Subsplit]) -> SubsplitSystem {
        let mut sys = SubsplitSystem::new(LeafSet::new(ground.iter().copied()).unwrap());
        for s in subsplits {
            sys.insert(*s, "t").unwrap();
        }
        sys
    }

    #[test]
    fn quick_reject_finds_crossing_quartets() {
        let sys = system(&["a", "b", "c", "d"], &[subsplit(&[0, 1], &[2, 3]), subsplit(&[0, 2], &[1, 3])]);
        let (s1, s2) = pairwise_quick_reject(&sys).unwrap();
        assert_eq!(s1, subsplit(&[0, 1], &[2, 3]));
        assert_eq!(s2, subsplit(&[0, 2], &[1, 3]));
    }

    #[test]
    fn quick_reject_none_cases() {
        // {ab|cd, ab|ce} has an empty intersection: {a,b} ∩ {c,e}... the
        // first sides coincide, so the {a,b}-vs-{c,e} cell is all that
        // matters and it is empty on the {a,b} × {c,d} side: verified by hand.
        let sys = system(&["a", "b", "c", "d", "e"], &[subsplit(&[0, 1], &[2, 3]), subsplit(&[0, 1], &[2, 4])]);
        assert!(pairwise_quick_reject(&sys).is_none());
        let single = system(&["a", "b", "c", "d"], &[subsplit(&[0, 1], &[2, 3])]);
        assert!(pairwise_quick_reject(&single).is_none());
    }

    #[test]
    fn exact_rejects_hourglass_quartets() {
        let sys = system(&["a", "b", "c", "d"], &[subsplit(&[0, 1], &[2, 3]), subsplit(&[0, 2], &[1, 3])]);
        match exact_compatibility(&sys, &SearchLimits::default()).unwrap() {
            CompatibilityVerdict::Incompatible(IncompatibilityCertificate::PairwiseObstruction(_, _)) => {}
            other => panic!("expected pairwise obstruction, got {other:?}"),
        }
    }

    #[test]
    fn exact_accepts_single_quartet_with_witness() {
        let q = subsplit(&[0, 1], &[2, 3]);
        let sys = system(&["a", "b", "c", "d"], &[q]);
        match exact_compatibility(&sys, &SearchLimits::default()).unwrap() {
            CompatibilityVerdict::Compatible(t) => {
                assert!(t.displays(&q).unwrap());
                assert!(t.is_binary());
            }
            other => panic!("expected compatible, got {other:?}"),
        }
    }

    #[test]
    fn exact_empty_system_gives_some_tree() {
        let sys = system(&["a", "b", "c", "d", "e"], &[]);
        match exact_compatibility(&sys, &SearchLimits::default()).unwrap() {
            CompatibilityVerdict::Compatible(t) => assert_eq!(t.leaf_count(), 5),
            other => panic!("expected compatible, got {other:?}"),
        }
    }

    #[test]
    fn leaf_cap_is_enforced() {
        let names: Vec<String> = (0..20).map(|i| format!("t{i:02}")).collect();
        let sys = SubsplitSystem::new(LeafSet::new(names).unwrap());
        assert!(matches!(
            exact_compatibility(&sys, &SearchLimits::default()),
            Err(CompatError::LeafCapExceeded { n: 20, cap: 16 })
        ));
    }

    #[test]
    fn parallel_run_matches_sequential_witness() {
        let q1 = subsplit(&[0, 1], &[2, 3]);
        let q2 = subsplit(&[2, 3], &[4, 5]);
        let sys = system(&["a", "b", "c", "d", "e", "f"], &[q1, q2]);
        let seq = exact_compatibility(&sys, &SearchLimits::default()).unwrap();
        let par = exact_compatibility(&sys, &SearchLimits { jobs: 4, ..Default::default() }).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn tree_from_trivial_splits_is_star() {
        let ground = LeafSet::new(["a", "b", "c"]).unwrap();
        let all = LeafSubset::all(3);
        let splits: Vec<Subsplit> = (0..3)
            .map(|x| Subsplit::new(LeafSubset::singleton(x), all.difference(LeafSubset::singleton(x))).unwrap())
            .collect();
        let sys = SplitSystem::new(ground.clone(), splits).unwrap();
        let t = tree_from_splits(&sys).unwrap().unwrap();
        assert_eq!(t.signature(), Topology::star(ground).unwrap().signature());
    }

    #[test]
    fn tree_from_splits_builds_caterpillar() {
        let ground = LeafSet::new(["a", "b", "c", "d"]).unwrap();
        let all = LeafSubset::all(4);
        let mut splits: Vec<Subsplit> = (0..4)
            .map(|x| Subsplit::new(LeafSubset::singleton(x), all.difference(LeafSubset::singleton(x))).unwrap())
            .collect();
        splits.push(subsplit(&[0, 1], &[2, 3]));
        let sys = SplitSystem::new(ground, splits).unwrap();
        let t = tree_from_splits(&sys).unwrap().unwrap();
        assert_eq!(t.inner_vertex_count(), 2);
        assert!(t.displays(&subsplit(&[0, 1], &[2, 3])).unwrap());
        // and the reconstruction displays exactly the input
        assert_eq!(t.splits().len(), 5);
    }

    #[test]
    fn tree_from_splits_rejects_crossing_pair() {
        let ground = LeafSet::new(["a", "b", "c", "d"]).unwrap();
        let all = LeafSubset::all(4);
        let mut splits: Vec<Subsplit> = (0..4)
            .map(|x| Subsplit::new(LeafSubset::singleton(x), all.difference(LeafSubset::singleton(x))).unwrap())
            .collect();
        splits.push(subsplit(&[0, 1], &[2, 3]));
        splits.push(subsplit(&[0, 2], &[1, 3]));
        let sys = SplitSystem::new(ground, splits).unwrap();
        assert_eq!(tree_from_splits(&sys).unwrap(), None);
    }

    #[test]
    fn tree_from_splits_needs_trivials() {
        let ground = LeafSet::new(["a", "b", "c", "d"]).unwrap();
        let sys = SplitSystem::new(ground, [subsplit(&[0, 1], &[2, 3])]).unwrap();
        assert!(matches!(
            tree_from_splits(&sys),
            Err(CompatError::MissingTrivialSplit { .. })
        ));
    }

    #[test]
    fn hourglass_is_rejected_with_quartet_pair() {
        let map = hourglass_map();
        match recognize(&map, &SearchLimits::default()).unwrap() {
            Recognition::NotFitch {
                reason: RejectionReason::Incompatible {
                    certificate: IncompatibilityCertificate::PairwiseObstruction(s1, s2),
                },
            } => {
                let expected = [subsplit(&[0, 1], &[2, 3]), subsplit(&[0, 2], &[1, 3])];
                assert!(expected.contains(&s1) && expected.contains(&s2) && s1 != s2);
            }
            other => panic!("expected incompatibility rejection, got {other:?}"),
        }
    }

    #[test]
    fn two_leaf_maps_are_always_fitch() {
        let leaves = LeafSet::new(["a", "b"]).unwrap();
        let colors = ColorSet::new(["1", "2"]).unwrap();
        let map = SymmetricMap::from_pairs(leaves, colors, [("a", "b", vec!["1", "2"])]).unwrap();
        match recognize(&map, &SearchLimits::default()).unwrap() {
            Recognition::Fitch { witness } => assert_eq!(witness.explain(), map),
            other => panic!("expected fitch, got {other:?}"),
        }
    }

    #[test]
    fn empty_map_witness_has_empty_labels() {
        let leaves = LeafSet::new(["a", "b", "c"]).unwrap();
        let colors = ColorSet::new(["m"]).unwrap();
        let map = SymmetricMap::new_empty(leaves, colors).unwrap();
        match recognize(&map, &SearchLimits::default()).unwrap() {
            Recognition::Fitch { witness } => {
                assert!(witness.labels().iter().all(|l| l.is_empty()));
                // on three leaves the binary witness is the star
                assert_eq!(witness.topology().diameter(), 2);
                assert_eq!(witness.explain(), map);
            }
            other => panic!("expected fitch, got {other:?}"),
        }
    }

    #[test]
    fn caterpillar_map_round_trips() {
        // the map of the caterpillar ((a,b),(c,d)) with inner edge {m}
        let leaves = LeafSet::new(["a", "b", "c", "d"]).unwrap();
        let colors = ColorSet::new(["m"]).unwrap();
        let map = SymmetricMap::from_pairs(
            leaves,
            colors,
            [
                ("a", "c", vec!["m"]),
                ("a", "d", vec!["m"]),
                ("b", "c", vec!["m"]),
                ("b", "d", vec!["m"]),
            ],
        )
        .unwrap();
        match build_explaining_tree(&map, &SearchLimits::default()).unwrap() {
            BuildOutcome::Explained(tree) => assert_eq!(tree.explain(), map),
            other => panic!("expected explained, got {other:?}"),
        }
    }

    #[test]
    fn non_partition_precondition_is_reported() {
        // single-edge graph on three leaves: neighborhoods overlap
        let leaves = LeafSet::new(["a", "b", "c"]).unwrap();
        let colors = ColorSet::new(["m"]).unwrap();
        let map = SymmetricMap::from_pairs(leaves, colors, [("b", "c", vec!["m"])]).unwrap();
        assert!(matches!(
            build_explaining_tree(&map, &SearchLimits::default()),
            Err(CompatError::NotPartition { .. })
        ));
        match recognize(&map, &SearchLimits::default()).unwrap() {
            Recognition::NotFitch { reason: RejectionReason::NonPartition { color, violation } } => {
                assert_eq!(color, "m");
                assert_eq!(violation.shared_leaf, 0); // a sits in both overlapping neighborhoods
            }
            other => panic!("expected non-partition rejection, got {other:?}"),
        }
    }
}
