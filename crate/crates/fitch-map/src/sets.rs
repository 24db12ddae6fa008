//! Leaf and color universes plus fixed-width subset bitmasks.
//!
//! Leaves and colors are opaque string identifiers. Each universe keeps its
//! identifiers in canonical (sorted) order, and subsets are stored as `u64`
//! bitmasks indexed by that order, so every set operation and every iteration
//! is deterministic across runs. The bitmask width caps a universe at
//! [`MAX_UNIVERSE`] elements.

use std::fmt;
use std::marker::PhantomData;

use crate::error::ModelError;

/// Hard cap on the size of a leaf or color universe (bitmask width).
pub const MAX_UNIVERSE: usize = 64;

/// Zero-sized tag for leaf subsets.
pub enum LeafTag {}
/// Zero-sized tag for color subsets.
pub enum ColorTag {}

/// Subset of at most 64 universe elements, stored as a bitmask over the
/// universe's canonical index order. The tag keeps leaf subsets and color
/// subsets from being mixed up.
pub struct Subset64<T> {
    bits: u64,
    _tag: PhantomData<T>,
}

/// Subset of a [`LeafSet`].
pub type LeafSubset = Subset64<LeafTag>;
/// Subset of a [`ColorSet`].
pub type ColorSubset = Subset64<ColorTag>;

impl<T> Subset64<T> {
    pub const fn empty() -> Self {
        Self { bits: 0, _tag: PhantomData }
    }

    pub const fn from_bits(bits: u64) -> Self {
        Self { bits, _tag: PhantomData }
    }

    /// The full subset `{0, …, k-1}`.
    pub fn all(k: usize) -> Self {
        debug_assert!(k <= MAX_UNIVERSE);
        if k == MAX_UNIVERSE {
            Self::from_bits(u64::MAX)
        } else {
            Self::from_bits((1u64 << k) - 1)
        }
    }

    pub fn singleton(index: usize) -> Self {
        debug_assert!(index < MAX_UNIVERSE);
        Self::from_bits(1u64 << index)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut s = Self::empty();
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub const fn bits(self) -> u64 {
        self.bits
    }

    pub fn insert(&mut self, index: usize) {
        debug_assert!(index < MAX_UNIVERSE);
        self.bits |= 1u64 << index;
    }

    pub fn remove(&mut self, index: usize) {
        self.bits &= !(1u64 << index);
    }

    pub const fn contains(self, index: usize) -> bool {
        index < MAX_UNIVERSE && self.bits & (1u64 << index) != 0
    }

    pub const fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub const fn union(self, other: Self) -> Self {
        Self::from_bits(self.bits | other.bits)
    }

    pub const fn intersection(self, other: Self) -> Self {
        Self::from_bits(self.bits & other.bits)
    }

    pub const fn difference(self, other: Self) -> Self {
        Self::from_bits(self.bits & !other.bits)
    }

    pub const fn is_disjoint(self, other: Self) -> bool {
        self.bits & other.bits == 0
    }

    pub const fn is_subset_of(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    /// Smallest member index, if any. Subsets are canonically ordered by
    /// their smallest member first (see [`Ord`] below).
    pub const fn min_index(self) -> Option<usize> {
        if self.bits == 0 {
            None
        } else {
            Some(self.bits.trailing_zeros() as usize)
        }
    }

    /// Member indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

// Manual trait impls: `derive` would require `T: Clone` etc. on the tag.
impl<T> Clone for Subset64<T> {
    fn clone(&self) -> Self {
        *self
    }
}
impl<T> Copy for Subset64<T> {}
impl<T> PartialEq for Subset64<T> {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}
impl<T> Eq for Subset64<T> {}
impl<T> std::hash::Hash for Subset64<T> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}
impl<T> PartialOrd for Subset64<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Subset64<T> {
    /// Lexicographic order on the ascending member sequence, so subsets with
    /// a smaller minimum element sort first.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}
impl<T> Default for Subset64<T> {
    fn default() -> Self {
        Self::empty()
    }
}
impl<T> fmt::Debug for Subset64<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
impl<T> std::ops::BitOr for Subset64<T> {
    type Output = Self;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}
impl<T> std::ops::BitAnd for Subset64<T> {
    type Output = Self;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

/// Ordered universe of string identifiers; the internal machinery for both
/// [`LeafSet`] and [`ColorSet`].
#[derive(Clone, PartialEq, Eq, Debug)]
struct Universe {
    names: Vec<String>, // sorted, unique, non-empty strings
}

impl Universe {
    fn new<I, S>(names: I, kind: &'static str) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.iter().any(String::is_empty) {
            return Err(ModelError::EmptyIdentifier { kind });
        }
        names.sort();
        for pair in names.windows(2) {
            if pair[0] == pair[1] {
                return Err(ModelError::DuplicateIdentifier { kind, name: pair[0].clone() });
            }
        }
        if names.len() > MAX_UNIVERSE {
            return Err(ModelError::UniverseCapExceeded { kind, got: names.len(), cap: MAX_UNIVERSE });
        }
        Ok(Self { names })
    }

    fn index_of(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }
}

macro_rules! universe_type {
    ($(#[$meta:meta])* $name:ident, $tag:ty, $kind:literal, $min:expr) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, Debug)]
        pub struct $name(Universe);

        impl $name {
            pub fn new<I, S>(names: I) -> Result<Self, ModelError>
            where
                I: IntoIterator<Item = S>,
                S: Into<String>,
            {
                let u = Universe::new(names, $kind)?;
                #[allow(unused_comparisons)] // $min may be 0
                if u.names.len() < $min {
                    return Err(ModelError::UniverseTooSmall {
                        kind: $kind,
                        got: u.names.len(),
                        min: $min,
                    });
                }
                Ok(Self(u))
            }

            pub fn len(&self) -> usize {
                self.0.names.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.names.is_empty()
            }

            /// Identifier at canonical index `i`.
            pub fn name(&self, i: usize) -> &str {
                &self.0.names[i]
            }

            pub fn names(&self) -> &[String] {
                &self.0.names
            }

            pub fn index_of(&self, name: &str) -> Option<usize> {
                self.0.index_of(name)
            }

            pub fn iter(&self) -> impl Iterator<Item = &str> {
                self.0.names.iter().map(String::as_str)
            }

            pub fn contains(&self, name: &str) -> bool {
                self.0.index_of(name).is_some()
            }

            /// Whether every identifier of `other` is in `self`.
            pub fn is_superset_of(&self, other: &Self) -> bool {
                other.iter().all(|n| self.contains(n))
            }

            /// The subset containing every element of the universe.
            pub fn universe_subset(&self) -> Subset64<$tag> {
                Subset64::all(self.len())
            }

            pub fn subset_from_names<I, S>(&self, names: I) -> Result<Subset64<$tag>, ModelError>
            where
                I: IntoIterator<Item = S>,
                S: AsRef<str>,
            {
                let mut s = Subset64::empty();
                for n in names {
                    let n = n.as_ref();
                    match self.0.index_of(n) {
                        Some(i) => s.insert(i),
                        None => {
                            return Err(ModelError::UnknownIdentifier {
                                kind: $kind,
                                name: n.to_owned(),
                            })
                        }
                    }
                }
                Ok(s)
            }

            /// Member names of a subset, in canonical order.
            pub fn subset_names(&self, s: Subset64<$tag>) -> Vec<String> {
                s.iter().map(|i| self.0.names[i].clone()).collect()
            }

            /// Renders a subset as `{a,c}`.
            pub fn render_subset(&self, s: Subset64<$tag>) -> String {
                let mut out = String::from("{");
                for (k, i) in s.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    out.push_str(&self.0.names[i]);
                }
                out.push('}');
                out
            }
        }
    };
}

universe_type!(
    /// The set `X` of leaves, in canonical sorted order. Never empty.
    LeafSet,
    LeafTag,
    "leaf",
    1
);

universe_type!(
    /// The color universe `M`, in canonical sorted order. May be empty, in
    /// which case every map entry and edge label is forced to `∅`.
    ColorSet,
    ColorTag,
    "color",
    0
);
