//! Complementary neighborhoods `N_¬m[y]`, the per-color neighborhood
//! systems, the partition test, and the subsplit systems derived from them.

use std::collections::BTreeSet;

use crate::error::ModelError;
use crate::map::SymmetricMap;
use crate::sets::{LeafSubset, MAX_UNIVERSE};
use crate::subsplit::{Subsplit, SubsplitSystem};

/// `N_¬m[y] := { x ∈ X∖{y} : m ∉ ε(x,y) } ∪ {y}` by leaf and color index.
pub fn complementary_neighborhood_idx(map: &SymmetricMap, color: usize, y: usize) -> LeafSubset {
    let n = map.leaf_count();
    debug_assert!(color < MAX_UNIVERSE && y < n);
    let mut out = LeafSubset::singleton(y);
    for x in 0..n {
        if x != y && !map.has_color(x, y, color) {
            out.insert(x);
        }
    }
    out
}

/// Name-based variant of [`complementary_neighborhood_idx`].
pub fn complementary_neighborhood(map: &SymmetricMap, color: &str, y: &str) -> Result<LeafSubset, ModelError> {
    let c = map
        .color_set()
        .index_of(color)
        .ok_or_else(|| ModelError::UnknownIdentifier { kind: "color", name: color.to_owned() })?;
    let yi = map
        .leaf_set()
        .index_of(y)
        .ok_or_else(|| ModelError::UnknownIdentifier { kind: "leaf", name: y.to_owned() })?;
    Ok(complementary_neighborhood_idx(map, c, yi))
}

/// The deduplicated family `Ns_m[ε] = { N_¬m[y] : y ∈ X }` for one color.
///
/// Members always cover the leaf set (every `y` lies in its own
/// neighborhood), so the only way the family can fail to be a partition is
/// an overlap between two distinct members.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NeighborhoodSystem {
    color: String,
    leaf_count: usize,
    members: BTreeSet<LeafSubset>,
}

/// Witness that a neighborhood system is not a partition: two distinct
/// members sharing a leaf.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PartitionViolation {
    pub first: LeafSubset,
    pub second: LeafSubset,
    pub shared_leaf: usize,
}

impl NeighborhoodSystem {
    /// Builds a system from explicit members, validating that each member is
    /// non-empty and that the members cover all `leaf_count` leaves.
    pub fn from_members<I>(color: impl Into<String>, leaf_count: usize, members: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = LeafSubset>,
    {
        let members: BTreeSet<LeafSubset> = members.into_iter().collect();
        let mut union = LeafSubset::empty();
        for &m in &members {
            if m.is_empty() {
                return Err(ModelError::EmptyNeighborhood { member: "{}".to_owned() });
            }
            union = union.union(m);
        }
        if let Some(missing) = LeafSubset::all(leaf_count).difference(union).min_index() {
            return Err(ModelError::NeighborhoodCoverage { name: format!("#{missing}") });
        }
        Ok(Self { color: color.into(), leaf_count, members })
    }

    pub fn color(&self) -> &str {
        &self.color
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in canonical order.
    pub fn members(&self) -> impl Iterator<Item = &LeafSubset> {
        self.members.iter()
    }

    pub fn contains_member(&self, m: &LeafSubset) -> bool {
        self.members.contains(m)
    }

    /// `None` when the members are pairwise disjoint (and hence, with the
    /// coverage guaranteed at construction, a partition of the leaf set).
    /// Otherwise the first overlapping pair in canonical order together with
    /// a shared leaf.
    pub fn is_partition(&self) -> Option<PartitionViolation> {
        let members: Vec<LeafSubset> = self.members.iter().copied().collect();
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                let common = members[i].intersection(members[j]);
                if let Some(shared) = common.min_index() {
                    return Some(PartitionViolation {
                        first: members[i],
                        second: members[j],
                        shared_leaf: shared,
                    });
                }
            }
        }
        None
    }
}

/// `Ns_m[ε]` for the color with the given name.
pub fn neighborhood_system(map: &SymmetricMap, color: &str) -> Result<NeighborhoodSystem, ModelError> {
    let c = map
        .color_set()
        .index_of(color)
        .ok_or_else(|| ModelError::UnknownIdentifier { kind: "color", name: color.to_owned() })?;
    Ok(neighborhood_system_idx(map, c))
}

pub fn neighborhood_system_idx(map: &SymmetricMap, color: usize) -> NeighborhoodSystem {
    let n = map.leaf_count();
    let members: BTreeSet<LeafSubset> =
        (0..n).map(|y| complementary_neighborhood_idx(map, color, y)).collect();
    NeighborhoodSystem {
        color: map.color_set().name(color).to_owned(),
        leaf_count: n,
        members,
    }
}

/// The m-subsplit system `𝒮_m(ε)`: all disjoint pairs of complementary
/// neighborhoods, tagged with the generating color.
pub fn subsplit_system(map: &SymmetricMap, color: &str) -> Result<SubsplitSystem, ModelError> {
    let sys = neighborhood_system(map, color)?;
    let mut out = SubsplitSystem::new(map.leaf_set().clone());
    insert_disjoint_pairs(&mut out, &sys);
    Ok(out)
}

fn insert_disjoint_pairs(out: &mut SubsplitSystem, sys: &NeighborhoodSystem) {
    let members: Vec<LeafSubset> = sys.members().copied().collect();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if members[i].is_disjoint(members[j]) {
                let s = Subsplit::new(members[i], members[j]).expect("disjoint non-empty members");
                out.insert(s, sys.color().to_owned()).expect("members fit the ground set");
            }
        }
    }
}

/// `(𝒮(ε), 𝒮*(ε))`: the union of all per-color subsplit systems, and its
/// sub-system of subsplits with both sides of size at least two.
pub fn full_subsplit_systems(map: &SymmetricMap) -> (SubsplitSystem, SubsplitSystem) {
    let mut all = SubsplitSystem::new(map.leaf_set().clone());
    for c in 0..map.color_set().len() {
        let sys = neighborhood_system_idx(map, c);
        insert_disjoint_pairs(&mut all, &sys);
    }
    let non_trivial = all.non_trivial();
    (all, non_trivial)
}
