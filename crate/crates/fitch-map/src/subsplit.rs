//! Subsplits, quartets, and the subsplit/split systems built from them.
//!
//! A subsplit `A|B` is an unordered pair of disjoint non-empty leaf subsets.
//! Sides are bitmasks over a ground [`LeafSet`]'s canonical index order; the
//! ground set travels with the containing system, not with each subsplit.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::ModelError;
use crate::sets::{LeafSet, LeafSubset};

/// An unordered pair `A|B` of disjoint non-empty leaf subsets, stored in
/// canonical form: the side with the smaller minimum element first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Subsplit {
    first: LeafSubset,
    second: LeafSubset,
}

impl Subsplit {
    pub fn new(a: LeafSubset, b: LeafSubset) -> Result<Self, ModelError> {
        if a.is_empty() || b.is_empty() {
            return Err(ModelError::EmptySubsplitSide);
        }
        if !a.is_disjoint(b) {
            return Err(ModelError::OverlappingSubsplitSides);
        }
        // min elements differ because the sides are disjoint and non-empty
        if a.min_index() < b.min_index() {
            Ok(Self { first: a, second: b })
        } else {
            Ok(Self { first: b, second: a })
        }
    }

    pub fn first(&self) -> LeafSubset {
        self.first
    }

    pub fn second(&self) -> LeafSubset {
        self.second
    }

    pub fn sides(&self) -> (LeafSubset, LeafSubset) {
        (self.first, self.second)
    }

    pub fn support(&self) -> LeafSubset {
        self.first.union(self.second)
    }

    /// `min(|A|, |B|) = 1`.
    pub fn is_trivial(&self) -> bool {
        self.first.len() == 1 || self.second.len() == 1
    }

    pub fn is_quartet(&self) -> bool {
        self.first.len() == 2 && self.second.len() == 2
    }

    /// Whether `A ∪ B` covers the whole `n`-leaf ground set.
    pub fn is_split_on(&self, n: usize) -> bool {
        self.support() == LeafSubset::all(n)
    }

    /// The restriction to the leaves in `present`: `Satisfied` when a side
    /// empties out (every tree displays it), otherwise the restricted
    /// subsplit.
    pub fn restrict_to(&self, present: LeafSubset) -> RestrictedSubsplit {
        let a = self.first.intersection(present);
        let b = self.second.intersection(present);
        if a.is_empty() || b.is_empty() {
            RestrictedSubsplit::Satisfied
        } else {
            RestrictedSubsplit::Proper(Subsplit { first: a, second: b })
        }
    }

    /// Renders as `{a,c}|{b,d}` using the ground set's leaf names.
    pub fn render(&self, leaves: &LeafSet) -> String {
        format!("{}|{}", leaves.render_subset(self.first), leaves.render_subset(self.second))
    }
}

/// Outcome of restricting a subsplit to a leaf subset.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RestrictedSubsplit {
    /// A side became empty; the restricted constraint is vacuous.
    Satisfied,
    Proper(Subsplit),
}

/// A subsplit with both sides of size two, written `ab|cd`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Quartet(Subsplit);

impl Quartet {
    pub fn new(a: LeafSubset, b: LeafSubset) -> Result<Self, ModelError> {
        if a.len() != 2 || b.len() != 2 {
            return Err(ModelError::NotAQuartet { a: a.len(), b: b.len() });
        }
        Ok(Self(Subsplit::new(a, b)?))
    }

    pub fn subsplit(&self) -> Subsplit {
        self.0
    }

    pub fn render(&self, leaves: &LeafSet) -> String {
        self.0.render(leaves)
    }
}

impl From<Quartet> for Subsplit {
    fn from(q: Quartet) -> Self {
        q.0
    }
}

/// A set of subsplits over a ground leaf set, deduplicated in canonical
/// form. Each subsplit remembers which colors generated it (for neighborhood
/// systems the sides themselves are the generating neighborhoods); the
/// provenance is diagnostic only and never affects equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubsplitSystem {
    ground: LeafSet,
    entries: BTreeMap<Subsplit, Vec<String>>,
}

impl SubsplitSystem {
    pub fn new(ground: LeafSet) -> Self {
        Self { ground, entries: BTreeMap::new() }
    }

    pub fn ground_set(&self) -> &LeafSet {
        &self.ground
    }

    pub fn insert(&mut self, s: Subsplit, origin: impl Into<String>) -> Result<(), ModelError> {
        let n = self.ground.len();
        if let Some(stray) = s.support().difference(LeafSubset::all(n)).min_index() {
            return Err(ModelError::SubsplitOutOfRange { index: stray, n });
        }
        let origins = self.entries.entry(s).or_default();
        let origin = origin.into();
        if !origins.contains(&origin) {
            origins.push(origin);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, s: &Subsplit) -> bool {
        self.entries.contains_key(s)
    }

    /// Subsplits in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &Subsplit> {
        self.entries.keys()
    }

    pub fn origins(&self, s: &Subsplit) -> &[String] {
        self.entries.get(s).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The sub-system of subsplits with both sides of size at least two.
    pub fn non_trivial(&self) -> SubsplitSystem {
        let entries = self
            .entries
            .iter()
            .filter(|(s, _)| !s.is_trivial())
            .map(|(s, o)| (*s, o.clone()))
            .collect();
        Self { ground: self.ground.clone(), entries }
    }

    pub fn subsplits(&self) -> BTreeSet<Subsplit> {
        self.entries.keys().copied().collect()
    }
}

/// A set of splits (bipartitions) of a ground leaf set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitSystem {
    ground: LeafSet,
    splits: BTreeSet<Subsplit>,
}

impl SplitSystem {
    pub fn new<I>(ground: LeafSet, splits: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = Subsplit>,
    {
        let n = ground.len();
        let mut set = BTreeSet::new();
        for s in splits {
            if !s.is_split_on(n) {
                return Err(ModelError::NotASplit { split: s.render(&ground) });
            }
            set.insert(s);
        }
        Ok(Self { ground, splits: set })
    }

    pub fn ground_set(&self) -> &LeafSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.splits.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Subsplit> {
        self.splits.iter()
    }

    pub fn contains(&self, s: &Subsplit) -> bool {
        self.splits.contains(s)
    }

    pub fn insert(&mut self, s: Subsplit) -> Result<(), ModelError> {
        if !s.is_split_on(self.ground.len()) {
            return Err(ModelError::NotASplit { split: s.render(&self.ground) });
        }
        self.splits.insert(s);
        Ok(())
    }

    /// Computed, never assumed: whether every trivial split `{x}|X∖{x}`
    /// is present. If some leaf's trivial split is missing, its name is
    /// returned.
    pub fn missing_trivial_split(&self) -> Option<String> {
        let n = self.ground.len();
        let all = LeafSubset::all(n);
        for x in 0..n {
            let single = LeafSubset::singleton(x);
            let rest = all.difference(single);
            if rest.is_empty() {
                continue; // n == 1 cannot happen for LeafSet, but be safe
            }
            let trivial = Subsplit::new(single, rest).expect("disjoint non-empty");
            if !self.splits.contains(&trivial) {
                return Some(self.ground.name(x).to_owned());
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ls(names: &[&str]) -> LeafSet {
        LeafSet::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn subsplit_is_orderless() {
        let a = LeafSubset::from_indices([1, 3]);
        let b = LeafSubset::from_indices([0, 2]);
        let s1 = Subsplit::new(a, b).unwrap();
        let s2 = Subsplit::new(b, a).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(s1.first(), b); // side with the smaller minimum comes first
    }

    #[test]
    fn subsplit_rejects_overlap_and_empty() {
        let a = LeafSubset::from_indices([0, 1]);
        let b = LeafSubset::from_indices([1, 2]);
        assert!(matches!(Subsplit::new(a, b), Err(ModelError::OverlappingSubsplitSides)));
        assert!(matches!(
            Subsplit::new(a, LeafSubset::empty()),
            Err(ModelError::EmptySubsplitSide)
        ));
    }

    #[test]
    fn quartet_needs_two_per_side() {
        let a = LeafSubset::from_indices([0, 1]);
        let b = LeafSubset::from_indices([2, 3, 4]);
        assert!(matches!(Quartet::new(a, b), Err(ModelError::NotAQuartet { .. })));
        assert!(Quartet::new(a, LeafSubset::from_indices([2, 3])).is_ok());
    }

    #[test]
    fn restriction_behaviour() {
        let s = Subsplit::new(
            LeafSubset::from_indices([0, 1]),
            LeafSubset::from_indices([2, 3]),
        )
        .unwrap();
        assert_eq!(
            s.restrict_to(LeafSubset::from_indices([0, 1])),
            RestrictedSubsplit::Satisfied
        );
        let r = s.restrict_to(LeafSubset::from_indices([0, 2, 3]));
        match r {
            RestrictedSubsplit::Proper(p) => {
                assert_eq!(p.first(), LeafSubset::from_indices([0]));
                assert_eq!(p.second(), LeafSubset::from_indices([2, 3]));
            }
            RestrictedSubsplit::Satisfied => panic!("should stay proper"),
        }
    }

    #[test]
    fn system_dedups_and_merges_origins() {
        let ground = ls(&["a", "b", "c", "d"]);
        let mut sys = SubsplitSystem::new(ground);
        let s = Subsplit::new(
            LeafSubset::from_indices([0, 1]),
            LeafSubset::from_indices([2, 3]),
        )
        .unwrap();
        sys.insert(s, "1").unwrap();
        sys.insert(s, "2").unwrap();
        sys.insert(s, "1").unwrap();
        assert_eq!(sys.len(), 1);
        assert_eq!(sys.origins(&s), &["1".to_owned(), "2".to_owned()]);
    }

    #[test]
    fn split_system_checks_bipartitions() {
        let ground = ls(&["a", "b", "c", "d"]);
        let not_split = Subsplit::new(
            LeafSubset::from_indices([0]),
            LeafSubset::from_indices([1, 2]),
        )
        .unwrap();
        assert!(SplitSystem::new(ground.clone(), [not_split]).is_err());

        let trivials: Vec<Subsplit> = (0..4)
            .map(|x| {
                Subsplit::new(
                    LeafSubset::singleton(x),
                    LeafSubset::all(4).difference(LeafSubset::singleton(x)),
                )
                .unwrap()
            })
            .collect();
        let sys = SplitSystem::new(ground, trivials).unwrap();
        assert_eq!(sys.missing_trivial_split(), None);
    }
}
