//! File formats: JSON documents for maps and trees, Newick and DOT exports,
//! and the plain-text quartet list.
//!
//! The formats are inventions of this library (no standard exists for
//! color-set-labeled unrooted trees); they are documented in the README and
//! kept deliberately small.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{MapIssue, ModelError, ValidationReport};
use crate::map::SymmetricMap;
use crate::sets::{ColorSet, LeafSet};
use crate::tree::LabeledTree;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid map document:\n{0}")]
    InvalidMap(ValidationReport),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("quartet file, line {line}: {detail}")]
    QuartetSyntax { line: usize, detail: String },
}

// ---------------------------------------------------------------------------
// symmetric maps
// ---------------------------------------------------------------------------

/// JSON shape of a symmetric map. Pairs not listed default to `∅` unless
/// `"strict": true`, in which case every pair must be present.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapDocument {
    pub leaves: Vec<String>,
    pub colors: Vec<String>,
    #[serde(default)]
    pub pairs: Vec<PairEntry>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub strict: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairEntry {
    pub pair: [String; 2],
    pub colors: Vec<String>,
}

impl MapDocument {
    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("document serializes");
        out.push('\n');
        out
    }

    /// Canonical document for a map: sorted universes, only non-`∅` pairs,
    /// pairs in canonical order.
    pub fn from_map(map: &SymmetricMap) -> Self {
        let pairs = map
            .pairs()
            .filter(|(_, _, e)| !e.is_empty())
            .map(|(i, j, e)| PairEntry {
                pair: [map.leaf_set().name(i).to_owned(), map.leaf_set().name(j).to_owned()],
                colors: map.color_set().subset_names(e),
            })
            .collect();
        Self {
            leaves: map.leaf_set().names().to_vec(),
            colors: map.color_set().names().to_vec(),
            pairs,
            strict: false,
        }
    }

    /// Checks every invariant and reports all violations.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let leaves = match LeafSet::new(self.leaves.clone()) {
            Ok(l) => Some(l),
            Err(e) => {
                report.push(MapIssue::BadLeafUniverse { detail: e.to_string() });
                None
            }
        };
        if self.leaves.len() < 2 {
            report.push(MapIssue::TooFewLeaves { got: self.leaves.len() });
        }
        let colors = match ColorSet::new(self.colors.clone()) {
            Ok(c) => Some(c),
            Err(e) => {
                report.push(MapIssue::BadColorUniverse { detail: e.to_string() });
                None
            }
        };
        let mut seen = std::collections::BTreeSet::new();
        for entry in &self.pairs {
            let [a, b] = &entry.pair;
            if a == b {
                report.push(MapIssue::SelfPair { name: a.clone() });
                continue;
            }
            if let Some(l) = &leaves {
                if l.index_of(a).is_none() {
                    report.push(MapIssue::UnknownLeaf { name: a.clone() });
                    continue;
                }
                if l.index_of(b).is_none() {
                    report.push(MapIssue::UnknownLeaf { name: b.clone() });
                    continue;
                }
            }
            let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
            if !seen.insert(key.clone()) {
                report.push(MapIssue::DuplicatePair { pair: key });
            }
            if let Some(c) = &colors {
                for color in &entry.colors {
                    if c.index_of(color).is_none() {
                        report.push(MapIssue::UnknownColor {
                            pair: (a.clone(), b.clone()),
                            color: color.clone(),
                        });
                    }
                }
            }
        }
        if self.strict {
            if let Some(l) = &leaves {
                for i in 0..l.len() {
                    for j in i + 1..l.len() {
                        let key = (l.name(i).to_owned(), l.name(j).to_owned());
                        if !seen.contains(&key) {
                            report.push(MapIssue::MissingPair { pair: key });
                        }
                    }
                }
            }
        }
        report
    }

    /// Validates and converts into a [`SymmetricMap`].
    pub fn to_map(&self) -> Result<SymmetricMap, FormatError> {
        let report = self.validate();
        if !report.is_empty() {
            return Err(FormatError::InvalidMap(report));
        }
        let leaves = LeafSet::new(self.leaves.clone())?;
        let colors = ColorSet::new(self.colors.clone())?;
        let mut map = SymmetricMap::new_empty(leaves, colors)?;
        for entry in &self.pairs {
            let mask = map.color_set().subset_from_names(&entry.colors)?;
            let i = map.leaf_set().index_of(&entry.pair[0]).expect("validated");
            let j = map.leaf_set().index_of(&entry.pair[1]).expect("validated");
            map.set_entry(i, j, mask);
        }
        Ok(map)
    }
}

/// Validation entry point mirroring the library operation name.
pub fn validate_map(doc: &MapDocument) -> ValidationReport {
    doc.validate()
}

// ---------------------------------------------------------------------------
// trees
// ---------------------------------------------------------------------------

/// JSON shape of an edge-labeled tree. The optional `colors` field pins the
/// color universe (it may be a strict superset of the labels in use); when
/// absent the universe is inferred as the union of all edge labels.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TreeDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeEntry>,
    pub leaves: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeEntry {
    pub ends: [String; 2],
    #[serde(default)]
    pub colors: Vec<String>,
}

impl TreeDocument {
    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("document serializes");
        out.push('\n');
        out
    }

    pub fn from_tree(tree: &LabeledTree) -> Self {
        let edges = tree
            .topology()
            .edges()
            .iter()
            .zip(tree.labels())
            .map(|(&(a, b), &l)| EdgeEntry {
                ends: [tree.vertex_name(a).to_owned(), tree.vertex_name(b).to_owned()],
                colors: tree.color_set().subset_names(l),
            })
            .collect();
        Self {
            vertices: tree.vertex_names().to_vec(),
            edges,
            leaves: tree.leaf_set().names().to_vec(),
            colors: Some(tree.color_set().names().to_vec()),
        }
    }

    pub fn to_tree(&self) -> Result<LabeledTree, FormatError> {
        let colors = match &self.colors {
            Some(names) => Some(ColorSet::new(names.clone())?),
            None => None,
        };
        let edges: Vec<(String, String, Vec<String>)> = self
            .edges
            .iter()
            .map(|e| (e.ends[0].clone(), e.ends[1].clone(), e.colors.clone()))
            .collect();
        Ok(LabeledTree::build(&self.vertices, &edges, &self.leaves, colors)?)
    }
}

// ---------------------------------------------------------------------------
// newick export
// ---------------------------------------------------------------------------

/// Renders the tree in Newick syntax with unit branch lengths. Non-empty
/// edge labels become bracket annotations on the child side, e.g.
/// `a[&colors={1,3}]:1`; `∅` edges carry no annotation. The tree is rooted
/// for printing at the vertex adjacent to the canonically first leaf (at
/// that leaf itself for two-leaf trees).
pub fn tree_to_newick(tree: &LabeledTree) -> String {
    let topo = tree.topology();
    let adj = topo.adjacency();
    let root = if topo.leaf_count() == 2 { 0 } else { adj[0][0].0 };

    fn subtree(
        tree: &LabeledTree,
        adj: &[Vec<(usize, usize)>],
        v: usize,
        parent: usize,
        out: &mut String,
    ) {
        let children: Vec<(usize, usize)> =
            adj[v].iter().copied().filter(|&(w, _)| w != parent).collect();
        if !children.is_empty() {
            out.push('(');
            for (k, &(w, e)) in children.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                subtree(tree, adj, w, v, out);
                let label = tree.label(e);
                if !label.is_empty() {
                    let names = tree.color_set().subset_names(label);
                    out.push_str(&format!("[&colors={{{}}}]", names.join(",")));
                }
                out.push_str(":1");
            }
            out.push(')');
        }
        if tree.topology().is_leaf_vertex(v) {
            out.push_str(tree.vertex_name(v));
        }
    }

    let mut out = String::new();
    subtree(tree, &adj, root, usize::MAX, &mut out);
    out.push(';');
    out
}

// ---------------------------------------------------------------------------
// dot export
// ---------------------------------------------------------------------------

const DOT_PALETTE: [&str; 10] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999",
    "#66c2a5", "#1b9e77",
];

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Graphviz export: edges colored by a hash of their label set, `∅` edges
/// dashed, with a legend mapping label sets to colors.
pub fn tree_to_dot(tree: &LabeledTree) -> String {
    let mut out = String::from("graph fitch {\n  node [shape=circle, fontsize=10];\n");
    let topo = tree.topology();
    for v in 0..topo.vertex_count() {
        if topo.is_leaf_vertex(v) {
            out.push_str(&format!("  \"{}\" [shape=plaintext, fontsize=12];\n", tree.vertex_name(v)));
        } else {
            out.push_str(&format!("  \"{}\" [label=\"\", width=0.12];\n", tree.vertex_name(v)));
        }
    }
    let mut legend: Vec<(String, &str)> = Vec::new();
    for (e, &(a, b)) in topo.edges().iter().enumerate() {
        let label = tree.label(e);
        if label.is_empty() {
            out.push_str(&format!(
                "  \"{}\" -- \"{}\" [style=dashed, color=\"#555555\"];\n",
                tree.vertex_name(a),
                tree.vertex_name(b)
            ));
        } else {
            let rendered = tree.color_set().render_subset(label);
            let color = DOT_PALETTE[(fnv1a(rendered.as_bytes()) % DOT_PALETTE.len() as u64) as usize];
            if !legend.iter().any(|(r, _)| *r == rendered) {
                legend.push((rendered.clone(), color));
            }
            out.push_str(&format!(
                "  \"{}\" -- \"{}\" [label=\"{}\", color=\"{}\", fontsize=9];\n",
                tree.vertex_name(a),
                tree.vertex_name(b),
                rendered,
                color
            ));
        }
    }
    legend.sort();
    let mut caption = String::from("labels: dashed = {}");
    for (rendered, color) in &legend {
        caption.push_str(&format!("\\n{rendered} = {color}"));
    }
    out.push_str(&format!("  label=\"{caption}\";\n  fontsize=9;\n}}\n"));
    out
}

// ---------------------------------------------------------------------------
// quartet text format
// ---------------------------------------------------------------------------

/// Parses the quartet list format: one `a b | c d` per line, `#` to end of
/// line is a comment, blank lines ignored. Returns the name tuples in file
/// order.
#[allow(clippy::type_complexity)]
pub fn parse_quartet_lines(text: &str) -> Result<Vec<((String, String), (String, String))>, FormatError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut sides = line.split('|');
        let (left, right) = match (sides.next(), sides.next(), sides.next()) {
            (Some(l), Some(r), None) => (l, r),
            _ => {
                return Err(FormatError::QuartetSyntax {
                    line: lineno + 1,
                    detail: "expected exactly one '|' separator".to_owned(),
                })
            }
        };
        let ls: Vec<&str> = left.split_whitespace().collect();
        let rs: Vec<&str> = right.split_whitespace().collect();
        if ls.len() != 2 || rs.len() != 2 {
            return Err(FormatError::QuartetSyntax {
                line: lineno + 1,
                detail: format!("expected two leaves per side, got {} and {}", ls.len(), rs.len()),
            });
        }
        out.push((
            (ls[0].to_owned(), ls[1].to_owned()),
            (rs[0].to_owned(), rs[1].to_owned()),
        ));
    }
    Ok(out)
}

/// Renders a quartet set in the text format, one quartet per line.
pub fn quartets_to_text(quartets: &crate::reduction::QuartetSet) -> String {
    let ground = quartets.ground_set();
    let mut out = String::new();
    for q in quartets.iter() {
        let (a, b) = q.subsplit().sides();
        let an = ground.subset_names(a);
        let bn = ground.subset_names(b);
        out.push_str(&format!("{} {} | {} {}\n", an[0], an[1], bn[0], bn[1]));
    }
    out
}
