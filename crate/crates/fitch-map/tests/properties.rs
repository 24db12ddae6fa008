//! Property tests tying the modules together: path semantics against an
//! independent oracle, restriction commutativity, the displayed-subsplit and
//! compatibility lemmas, and recognizer/oracle agreement.

mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fitch_map::compat::{
    exact_compatibility, pairwise_quick_reject, recognize, CompatibilityVerdict, Recognition,
    SearchLimits,
};
use fitch_map::mono::{graph_representation_idx, is_restricted_fitch, RestrictedVerdict};
use fitch_map::neighborhoods::{
    complementary_neighborhood_idx, full_subsplit_systems, neighborhood_system_idx,
};
use fitch_map::reduction::{brute_force_is_fitch, random_labeled_tree, OracleLimits};
use fitch_map::sets::{ColorSet, ColorSubset, LeafSet, LeafSubset};
use fitch_map::subsplit::{Subsplit, SubsplitSystem};
use fitch_map::tree::LabeledTree;

use common::random_map;

const DENSITIES: [f64; 3] = [0.15, 0.35, 0.6];

fn colors(k: usize) -> ColorSet {
    ColorSet::new((1..=k).map(|i| i.to_string())).unwrap()
}

/// Independent path-walking oracle: find the x→y path by BFS parents, then
/// union the labels edge by edge.
fn path_colors_oracle(tree: &LabeledTree, x: usize, y: usize) -> ColorSubset {
    let topo = tree.topology();
    let adj = topo.adjacency();
    let mut parent = vec![usize::MAX; topo.vertex_count()];
    let mut parent_edge = vec![usize::MAX; topo.vertex_count()];
    let mut queue = std::collections::VecDeque::from([x]);
    let mut seen = vec![false; topo.vertex_count()];
    seen[x] = true;
    while let Some(u) = queue.pop_front() {
        for &(w, e) in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                parent_edge[w] = e;
                queue.push_back(w);
            }
        }
    }
    let mut mask = ColorSubset::empty();
    let mut v = y;
    while v != x {
        mask = mask.union(tree.label(parent_edge[v]));
        v = parent[v];
    }
    mask
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn explain_matches_path_walking_oracle(
        n in 2usize..=8,
        k in 1usize..=3,
        d in 0usize..3,
        seed in any::<u64>(),
    ) {
        let tree = random_labeled_tree(n, &colors(k), DENSITIES[d], seed).unwrap();
        let map = tree.explain();
        for i in 0..n {
            for j in i + 1..n {
                prop_assert_eq!(map.entry(i, j), path_colors_oracle(&tree, i, j));
            }
        }
    }

    #[test]
    fn restriction_commutes_with_explain(
        n in 3usize..=8,
        k in 1usize..=3,
        d in 0usize..3,
        seed in any::<u64>(),
        subset_seed in any::<u64>(),
    ) {
        let tree = random_labeled_tree(n, &colors(k), DENSITIES[d], seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(subset_seed);
        let keep: Vec<&str> = {
            let mut pick: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.7)).collect();
            while pick.len() < 2 {
                let extra = rng.random_range(0..n);
                if !pick.contains(&extra) {
                    pick.push(extra);
                }
            }
            pick.sort();
            pick.iter().map(|&i| tree.leaf_set().name(i)).collect()
        };
        let sub_colors: Vec<&str> = (0..k)
            .filter(|_| rng.random_bool(0.6))
            .map(|c| tree.color_set().name(c))
            .collect();
        let sub_leaves = LeafSet::new(keep).unwrap();
        let sub_colors = ColorSet::new(sub_colors).unwrap();

        let restricted_map = tree.explain().restrict(&sub_leaves, &sub_colors).unwrap();
        let restricted_tree = tree.restricted_to(&sub_leaves, &sub_colors).unwrap();
        prop_assert_eq!(restricted_tree.explain(), restricted_map);
    }

    /// Every subsplit derived from the map of a tree is displayed by that
    /// tree.
    #[test]
    fn generating_tree_displays_its_subsplit_system(
        n in 3usize..=8,
        k in 1usize..=3,
        d in 0usize..3,
        seed in any::<u64>(),
    ) {
        let tree = random_labeled_tree(n, &colors(k), DENSITIES[d], seed).unwrap();
        let (full, _) = full_subsplit_systems(&tree.explain());
        for s in full.iter() {
            prop_assert!(tree.topology().displays(s).unwrap(), "{}", s.render(tree.leaf_set()));
        }
    }

    /// Soundness and round-trip: maps that come from trees are accepted and
    /// the witness explains the same map.
    #[test]
    fn recognize_accepts_tree_maps(
        n in 2usize..=10,
        k in 1usize..=4,
        d in 0usize..3,
        seed in any::<u64>(),
    ) {
        let tree = random_labeled_tree(n, &colors(k), DENSITIES[d], seed).unwrap();
        let map = tree.explain();
        match recognize(&map, &SearchLimits::default()).unwrap() {
            Recognition::Fitch { witness } => prop_assert_eq!(witness.explain(), map),
            Recognition::NotFitch { reason } => {
                return Err(TestCaseError::fail(format!("rejected a tree map: {reason:?}")))
            }
        }
    }

    /// Restrictions of Fitch maps stay Fitch maps.
    #[test]
    fn restriction_of_fitch_map_is_fitch(
        n in 3usize..=8,
        k in 1usize..=3,
        seed in any::<u64>(),
        subset_seed in any::<u64>(),
    ) {
        let tree = random_labeled_tree(n, &colors(k), 0.4, seed).unwrap();
        let map = tree.explain();
        let mut rng = ChaCha8Rng::seed_from_u64(subset_seed);
        let mut pick: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.7)).collect();
        while pick.len() < 2 {
            let extra = rng.random_range(0..n);
            if !pick.contains(&extra) {
                pick.push(extra);
            }
        }
        pick.sort();
        let sub_leaves = LeafSet::new(pick.iter().map(|&i| map.leaf_set().name(i))).unwrap();
        let restricted = map.restrict(&sub_leaves, map.color_set()).unwrap();
        let accepted = matches!(
            recognize(&restricted, &SearchLimits::default()).unwrap(),
            Recognition::Fitch { .. }
        );
        prop_assert!(accepted);
    }

    /// The full subsplit system is compatible iff the non-trivial one is.
    #[test]
    fn full_and_nontrivial_compatibility_coincide(
        n in 3usize..=8,
        k in 1usize..=2,
        d in 0usize..3,
        seed in any::<u64>(),
    ) {
        let map = random_map(n, k, DENSITIES[d], seed);
        let (full, non_trivial) = full_subsplit_systems(&map);
        let limits = SearchLimits::default();
        let full_compatible = matches!(
            exact_compatibility(&full, &limits).unwrap(),
            CompatibilityVerdict::Compatible(_)
        );
        let star_compatible = matches!(
            exact_compatibility(&non_trivial, &limits).unwrap(),
            CompatibilityVerdict::Compatible(_)
        );
        prop_assert_eq!(full_compatible, star_compatible);
    }

    /// A pairwise obstruction always implies the exact search rejects.
    #[test]
    fn quick_reject_is_sound(
        n in 4usize..=8,
        count in 1usize..=5,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ground = LeafSet::new(fitch_map::reduction::default_leaf_names(n)).unwrap();
        let mut sys = SubsplitSystem::new(ground);
        for _ in 0..count {
            let mut a = LeafSubset::empty();
            let mut b = LeafSubset::empty();
            for v in 0..n {
                match rng.random_range(0..3) {
                    0 => a.insert(v),
                    1 => b.insert(v),
                    _ => {}
                }
            }
            if a.is_empty() || b.is_empty() {
                continue;
            }
            sys.insert(Subsplit::new(a, b).unwrap(), "r").unwrap();
        }
        if pairwise_quick_reject(&sys).is_some() {
            prop_assert!(matches!(
                exact_compatibility(&sys, &SearchLimits::default()).unwrap(),
                CompatibilityVerdict::Incompatible(_)
            ));
        }
    }

    /// The partition test agrees with the fixed-point formulation:
    /// the family is a partition iff for every member N and every leaf y,
    /// N = N_¬m[y] exactly when y ∈ N.
    #[test]
    fn partition_test_agrees_with_membership_formulation(
        n in 2usize..=6,
        k in 1usize..=3,
        d in 0usize..3,
        seed in any::<u64>(),
    ) {
        let map = random_map(n, k, DENSITIES[d], seed);
        for c in 0..k {
            let sys = neighborhood_system_idx(&map, c);
            let by_overlap = sys.is_partition().is_none();
            let by_membership = sys.members().all(|&member| {
                (0..n).all(|y| {
                    let n_y = complementary_neighborhood_idx(&map, c, y);
                    (member == n_y) == member.contains(y)
                })
            });
            prop_assert_eq!(by_overlap, by_membership, "color {}", c);
        }
    }

    /// Accepted monochromatic maps satisfy the anti-transitivity form: two
    /// m-free pairs around a middle vertex force the third pair m-free.
    #[test]
    fn anti_transitivity_on_accepted_monochromatic_maps(
        n in 3usize..=7,
        seed in any::<u64>(),
        d in 0usize..3,
    ) {
        let map = random_map(n, 1, DENSITIES[d], seed);
        if !matches!(is_restricted_fitch(&map).unwrap(), RestrictedVerdict::Fitch) {
            return Ok(());
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    if !map.has_color(a, b, 0) && !map.has_color(b, c, 0) {
                        prop_assert!(!map.has_color(a, c, 0));
                    }
                }
            }
        }
    }

    /// The recognizer and the exhaustive oracle agree on arbitrary maps.
    #[test]
    fn recognizer_agrees_with_brute_force(
        n in 2usize..=6,
        k in 1usize..=2,
        d in 0usize..3,
        seed in any::<u64>(),
    ) {
        let map = random_map(n, k, DENSITIES[d], seed);
        let by_recognizer = matches!(
            recognize(&map, &SearchLimits::default()).unwrap(),
            Recognition::Fitch { .. }
        );
        let by_oracle = brute_force_is_fitch(&map, &OracleLimits::default()).unwrap().is_some();
        prop_assert_eq!(by_recognizer, by_oracle);
    }

    /// Multipartite parts, when they exist, are exactly the neighborhoods.
    #[test]
    fn parts_equal_neighborhoods(
        n in 2usize..=7,
        d in 0usize..3,
        seed in any::<u64>(),
    ) {
        let map = random_map(n, 1, DENSITIES[d], seed);
        let graph = graph_representation_idx(&map, 0);
        if let Some(parts) = graph.multipartite_parts() {
            let sys = neighborhood_system_idx(&map, 0);
            let members: Vec<LeafSubset> = sys.members().copied().collect();
            prop_assert_eq!(parts.parts(), members.as_slice());
        }
    }

    #[test]
    fn subsplit_equality_is_orderless(
        bits_a in any::<u32>(),
        bits_b in any::<u32>(),
    ) {
        let a = LeafSubset::from_bits(bits_a as u64);
        let b = LeafSubset::from_bits((bits_b as u64) & !(bits_a as u64));
        prop_assume!(!a.is_empty() && !b.is_empty());
        let s1 = Subsplit::new(a, b).unwrap();
        let s2 = Subsplit::new(b, a).unwrap();
        prop_assert_eq!(s1, s2);
    }
}

/// Rejections at oracle scale really have no explaining tree, including
/// for slightly perturbed tree maps.
#[test]
fn rejected_perturbed_maps_have_no_tree() {
    let mut checked_rejects = 0;
    for seed in 0..120u64 {
        let n = 4 + (seed as usize % 3); // 4..=6
        let tree = random_labeled_tree(n, &colors(2), 0.4, seed).unwrap();
        let mut map = tree.explain();
        // flip a few (pair, color) bits
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xDEAD);
        for _ in 0..3 {
            let i = rng.random_range(0..n);
            let j = rng.random_range(0..n);
            if i == j {
                continue;
            }
            let c = rng.random_range(0..2);
            let mut e = map.entry(i, j);
            if e.contains(c) {
                e.remove(c);
            } else {
                e.insert(c);
            }
            map.set_entry(i, j, e);
        }
        let accepted = matches!(
            recognize(&map, &SearchLimits::default()).unwrap(),
            Recognition::Fitch { .. }
        );
        let oracle = brute_force_is_fitch(&map, &OracleLimits::default()).unwrap();
        assert_eq!(accepted, oracle.is_some(), "seed {seed}");
        if !accepted {
            checked_rejects += 1;
        }
    }
    assert!(checked_rejects > 10, "perturbation produced too few rejects to be meaningful");
}
