//! The symmetric map `ε` assigning a color set to every unordered leaf pair.

use crate::error::{MapIssue, ModelError, ValidationReport};
use crate::sets::{ColorSet, ColorSubset, LeafSet};

/// Index of the unordered pair `{i, j}` with `i < j` in triangular storage.
#[inline]
pub(crate) fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

/// A symmetric map `ε` from unordered pairs of distinct leaves to subsets of
/// the color universe. Symmetry holds by construction: entries are keyed by
/// unordered pairs, and every pair has an entry (possibly `∅`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymmetricMap {
    leaves: LeafSet,
    colors: ColorSet,
    entries: Vec<ColorSubset>, // length n(n-1)/2, indexed by pair_index
}

impl SymmetricMap {
    /// The all-`∅` map over the given universes.
    pub fn new_empty(leaves: LeafSet, colors: ColorSet) -> Result<Self, ModelError> {
        let n = leaves.len();
        if n < 2 {
            return Err(ModelError::TooFewLeaves { got: n });
        }
        let entries = vec![ColorSubset::empty(); n * (n - 1) / 2];
        Ok(Self { leaves, colors, entries })
    }

    /// Builds a map from named pair entries; pairs not listed stay `∅`.
    pub fn from_pairs<'a, I>(leaves: LeafSet, colors: ColorSet, pairs: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = (&'a str, &'a str, Vec<&'a str>)>,
    {
        let mut map = Self::new_empty(leaves, colors)?;
        for (a, b, cs) in pairs {
            let (i, j) = map.pair_by_names(a, b)?;
            let mask = map.colors.subset_from_names(cs)?;
            let idx = pair_index(i.min(j), i.max(j));
            map.entries[idx] = map.entries[idx].union(mask);
        }
        Ok(map)
    }

    pub fn leaf_set(&self) -> &LeafSet {
        &self.leaves
    }

    pub fn color_set(&self) -> &ColorSet {
        &self.colors
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    /// Entry for the pair of leaf indices `{i, j}`, `i != j`.
    pub fn entry(&self, i: usize, j: usize) -> ColorSubset {
        self.entries[pair_index(i.min(j), i.max(j))]
    }

    pub fn entry_by_names(&self, a: &str, b: &str) -> Result<ColorSubset, ModelError> {
        let (i, j) = self.pair_by_names(a, b)?;
        Ok(self.entry(i, j))
    }

    pub fn set_entry(&mut self, i: usize, j: usize, colors: ColorSubset) {
        self.entries[pair_index(i.min(j), i.max(j))] = colors;
    }

    pub fn insert_color(&mut self, i: usize, j: usize, color: usize) {
        self.entries[pair_index(i.min(j), i.max(j))].insert(color);
    }

    /// Whether `color` lies on the pair `{i, j}`.
    pub fn has_color(&self, i: usize, j: usize, color: usize) -> bool {
        self.entry(i, j).contains(color)
    }

    /// All pairs `(i, j, ε(i,j))` with `i < j` in canonical order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, ColorSubset)> + '_ {
        let n = self.leaves.len();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j, self.entry(i, j))))
    }

    /// Union of all entries: the colors that actually occur somewhere.
    pub fn used_colors(&self) -> ColorSubset {
        self.entries
            .iter()
            .fold(ColorSubset::empty(), |acc, &e| acc.union(e))
    }

    /// The restriction `ε'` to a leaf subset and color subset:
    /// `ε'(x,y) = ε(x,y) ∩ M'` over pairs within `X'`.
    pub fn restrict(&self, sub_leaves: &LeafSet, sub_colors: &ColorSet) -> Result<Self, ModelError> {
        if !self.leaves.is_superset_of(sub_leaves) {
            return Err(ModelError::NotASubset {
                kind: "leaf",
                sub: sub_leaves.names().to_vec(),
            });
        }
        if !self.colors.is_superset_of(sub_colors) {
            return Err(ModelError::NotASubset {
                kind: "color",
                sub: sub_colors.names().to_vec(),
            });
        }
        let mut out = Self::new_empty(sub_leaves.clone(), sub_colors.clone())?;
        for i in 0..sub_leaves.len() {
            for j in i + 1..sub_leaves.len() {
                let oi = self.leaves.index_of(sub_leaves.name(i)).expect("superset checked");
                let oj = self.leaves.index_of(sub_leaves.name(j)).expect("superset checked");
                let mut mask = ColorSubset::empty();
                for c in self.entry(oi, oj).iter() {
                    if let Some(nc) = sub_colors.index_of(self.colors.name(c)) {
                        mask.insert(nc);
                    }
                }
                out.set_entry(i, j, mask);
            }
        }
        Ok(out)
    }

    /// Re-checks the structural invariants. Maps built through the
    /// constructors always pass; the interesting validation happens on raw
    /// documents (see [`crate::io::MapDocument::validate`]).
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.leaves.len();
        if n < 2 {
            report.push(MapIssue::TooFewLeaves { got: n });
        }
        let universe = self.colors.universe_subset();
        for (i, j, e) in self.pairs() {
            if !e.is_subset_of(universe) {
                let stray = e.difference(universe).min_index().unwrap();
                report.push(MapIssue::UnknownColor {
                    pair: (self.leaves.name(i).to_owned(), self.leaves.name(j).to_owned()),
                    color: format!("#{stray}"),
                });
            }
        }
        report
    }

    /// If at most one distinct color occurs in the whole map, returns it
    /// (`Ok(None)` for the all-`∅` map); otherwise the first two offenders.
    pub fn monochromatic_color(&self) -> Result<Option<usize>, (usize, usize)> {
        let used = self.used_colors();
        match used.len() {
            0 => Ok(None),
            1 => Ok(used.min_index()),
            _ => {
                let mut it = used.iter();
                Err((it.next().unwrap(), it.next().unwrap()))
            }
        }
    }

    fn pair_by_names(&self, a: &str, b: &str) -> Result<(usize, usize), ModelError> {
        let i = self
            .leaves
            .index_of(a)
            .ok_or_else(|| ModelError::UnknownIdentifier { kind: "leaf", name: a.to_owned() })?;
        let j = self
            .leaves
            .index_of(b)
            .ok_or_else(|| ModelError::UnknownIdentifier { kind: "leaf", name: b.to_owned() })?;
        if i == j {
            return Err(ModelError::NotAPair { a: a.to_owned(), b: b.to_owned() });
        }
        Ok((i, j))
    }

    /// Renders an entry as `{1,3}` using color names.
    pub fn render_entry(&self, i: usize, j: usize) -> String {
        self.colors.render_subset(self.entry(i, j))
    }
}

/// The hourglass map on `{a,b,c,d}` with colors `{1,2}`:
/// `ε(a,b)=ε(c,d)={1}`, `ε(a,c)=ε(b,d)={2}`, `ε(a,d)=ε(b,c)={1,2}`.
/// The canonical example of a map that passes all per-color partition tests
/// yet is not a symmetrized Fitch map. Handy in tests and docs.
pub fn hourglass_map() -> SymmetricMap {
    let leaves = LeafSet::new(["a", "b", "c", "d"]).unwrap();
    let colors = ColorSet::new(["1", "2"]).unwrap();
    SymmetricMap::from_pairs(
        leaves,
        colors,
        [
            ("a", "b", vec!["1"]),
            ("c", "d", vec!["1"]),
            ("a", "c", vec!["2"]),
            ("b", "d", vec!["2"]),
            ("a", "d", vec!["1", "2"]),
            ("b", "c", vec!["1", "2"]),
        ],
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_are_symmetric_by_construction() {
        let m = hourglass_map();
        assert_eq!(m.entry_by_names("a", "d").unwrap(), m.entry_by_names("d", "a").unwrap());
        assert_eq!(m.render_entry(0, 3), "{1,2}");
    }

    #[test]
    fn self_pair_rejected() {
        let m = hourglass_map();
        assert!(matches!(m.entry_by_names("a", "a"), Err(ModelError::NotAPair { .. })));
    }

    #[test]
    fn single_leaf_map_rejected() {
        let leaves = LeafSet::new(["a"]).unwrap();
        let colors = ColorSet::new(["1"]).unwrap();
        assert!(matches!(
            SymmetricMap::new_empty(leaves, colors),
            Err(ModelError::TooFewLeaves { got: 1 })
        ));
    }

    #[test]
    fn identity_restriction_is_identity() {
        let m = hourglass_map();
        let r = m.restrict(m.leaf_set(), m.color_set()).unwrap();
        assert_eq!(m, r);
    }

    #[test]
    fn restriction_drops_colors_and_leaves() {
        let m = hourglass_map();
        let sub_leaves = LeafSet::new(["a", "b", "c"]).unwrap();
        let sub_colors = ColorSet::new(["1"]).unwrap();
        let r = m.restrict(&sub_leaves, &sub_colors).unwrap();
        assert_eq!(r.entry_by_names("a", "b").unwrap().len(), 1);
        assert_eq!(r.entry_by_names("a", "c").unwrap().len(), 0);
        assert_eq!(r.entry_by_names("b", "c").unwrap().len(), 1);
    }

    #[test]
    fn restriction_subset_violation() {
        let m = hourglass_map();
        let other = LeafSet::new(["a", "z"]).unwrap();
        assert!(m.restrict(&other, m.color_set()).is_err());
    }

    #[test]
    fn used_colors_and_monochromatic() {
        let m = hourglass_map();
        assert_eq!(m.used_colors().len(), 2);
        assert_eq!(m.monochromatic_color(), Err((0, 1)));

        let leaves = LeafSet::new(["a", "b"]).unwrap();
        let colors = ColorSet::new(["m"]).unwrap();
        let e = SymmetricMap::new_empty(leaves, colors).unwrap();
        assert_eq!(e.monochromatic_color(), Ok(None));
    }
}
