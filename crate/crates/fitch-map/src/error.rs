//! Error types shared across the domain model.

use std::fmt;

use thiserror::Error;

/// Violations of the structural invariants of the domain types.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("{kind} identifiers must be non-empty")]
    EmptyIdentifier { kind: &'static str },
    #[error("{kind} identifier {name:?} appears more than once")]
    DuplicateIdentifier { kind: &'static str, name: String },
    #[error("{kind} universe has {got} elements, exceeding the compiled cap of {cap}")]
    UniverseCapExceeded { kind: &'static str, got: usize, cap: usize },
    #[error("{kind} universe has {got} elements but at least {min} are required")]
    UniverseTooSmall { kind: &'static str, got: usize, min: usize },
    #[error("unknown {kind} {name:?}")]
    UnknownIdentifier { kind: &'static str, name: String },
    #[error("a map needs at least two leaves, got {got}")]
    TooFewLeaves { got: usize },
    #[error("{sub:?} is not a subset of the {kind} universe")]
    NotASubset { kind: &'static str, sub: Vec<String> },
    #[error("pair ({a:?}, {b:?}) is not a pair of distinct leaves")]
    NotAPair { a: String, b: String },
    #[error("subsplit sides must be non-empty")]
    EmptySubsplitSide,
    #[error("subsplit sides must be disjoint")]
    OverlappingSubsplitSides,
    #[error("a quartet needs exactly two leaves per side, got {a} and {b}")]
    NotAQuartet { a: usize, b: usize },
    #[error("subsplit references leaf index {index}, outside the {n}-leaf ground set")]
    SubsplitOutOfRange { index: usize, n: usize },
    #[error("split {split} is not a bipartition of the ground set")]
    NotASplit { split: String },
    #[error("vertex {name:?} appears more than once")]
    DuplicateVertex { name: String },
    #[error("edge {{{a:?}, {b:?}}} is a self-loop or repeated")]
    BadEdge { a: String, b: String },
    #[error("edge endpoint {name:?} is not a declared vertex")]
    UnknownVertex { name: String },
    #[error("graph with {vertices} vertices and {edges} edges is not a tree")]
    NotATree { vertices: usize, edges: usize },
    #[error("graph is not connected")]
    NotConnected,
    #[error("inner vertex {name:?} has degree {degree}, phylogenetic trees need degree >= 3")]
    InnerDegreeTooLow { name: String, degree: usize },
    #[error("declared leaves do not match the degree-1 vertices (offending vertex {name:?})")]
    LeafMismatch { name: String },
    #[error("tree needs at least two leaves, got {got}")]
    TooFewTreeLeaves { got: usize },
    #[error("neighborhood system member {member:?} is empty")]
    EmptyNeighborhood { member: String },
    #[error("neighborhood system does not cover the leaf set; leaf {name:?} is missing")]
    NeighborhoodCoverage { name: String },
    #[error("map entry for ({a:?}, {b:?}) has {got} colors, but at most one is allowed here")]
    EntryNotSingleton { a: String, b: String, got: usize },
}

/// One problem found while checking a symmetric-map document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapIssue {
    TooFewLeaves { got: usize },
    BadLeafUniverse { detail: String },
    BadColorUniverse { detail: String },
    UnknownLeaf { name: String },
    UnknownColor { pair: (String, String), color: String },
    SelfPair { name: String },
    DuplicatePair { pair: (String, String) },
    /// Only reported for documents with `"strict": true`.
    MissingPair { pair: (String, String) },
}

impl fmt::Display for MapIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapIssue::TooFewLeaves { got } => {
                write!(f, "a map needs at least two leaves, got {got}")
            }
            MapIssue::BadLeafUniverse { detail } => write!(f, "bad leaf set: {detail}"),
            MapIssue::BadColorUniverse { detail } => write!(f, "bad color set: {detail}"),
            MapIssue::UnknownLeaf { name } => {
                write!(f, "pair references unknown leaf {name:?}")
            }
            MapIssue::UnknownColor { pair, color } => write!(
                f,
                "entry for ({:?}, {:?}) references color {color:?} outside the color universe",
                pair.0, pair.1
            ),
            MapIssue::SelfPair { name } => {
                write!(f, "pair ({name:?}, {name:?}) is not a pair of distinct leaves")
            }
            MapIssue::DuplicatePair { pair } => {
                write!(f, "pair ({:?}, {:?}) is listed more than once", pair.0, pair.1)
            }
            MapIssue::MissingPair { pair } => {
                write!(f, "strict map is missing the entry for ({:?}, {:?})", pair.0, pair.1)
            }
        }
    }
}

/// Everything wrong with a map document; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<MapIssue>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn push(&mut self, issue: MapIssue) {
        self.issues.push(issue);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return write!(f, "valid");
        }
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}
