//! Recognition and construction of symmetrized Fitch maps.
//!
//! A symmetric map `ε` assigns a set of colors to every unordered pair of
//! leaves. It is a *symmetrized Fitch map* when some edge-labeled
//! phylogenetic tree explains it: `m ∈ ε(x,y)` exactly when an `m`-labeled
//! edge lies on the tree path between `x` and `y`. This crate decides that
//! question, produces an explaining tree as a witness or a structured
//! rejection certificate, characterizes the monochromatic case together with
//! its least-resolved trees, and generates hard instances by encoding
//! quartet-compatibility problems as maps.
//!
//! Everything is deterministic: universes iterate in canonical (sorted)
//! order, searches branch in a fixed order, and all randomness is behind
//! explicit seeds.

pub mod compat;
pub mod error;
pub mod io;
pub mod map;
pub mod mono;
pub mod neighborhoods;
pub mod reduction;
pub mod sets;
pub mod subsplit;
pub mod tree;

pub use error::{MapIssue, ModelError, ValidationReport};
pub use map::{hourglass_map, SymmetricMap};
pub use sets::{ColorSet, ColorSubset, LeafSet, LeafSubset};
pub use subsplit::{Quartet, SplitSystem, Subsplit, SubsplitSystem};
pub use tree::{LabeledTree, RawTree, Topology};
