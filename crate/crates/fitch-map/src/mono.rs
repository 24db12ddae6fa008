//! Monochromatic symmetrized Fitch maps: graph representations, complete
//! multi-partite recognition, the restricted (single label per pair) case,
//! and the least-resolved explaining trees.

use thiserror::Error;

use crate::error::ModelError;
use crate::map::SymmetricMap;
use crate::sets::{ColorSubset, LeafSubset};
use crate::tree::{LabeledTree, Topology};

/// The graph representation `𝒢_m(ε)` of a map w.r.t. one color: leaves as
/// vertices, an edge wherever `m ∈ ε(x,y)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColorGraph {
    focus_color: String,
    leaf_count: usize,
    adj: Vec<LeafSubset>, // neighbor masks; simple, loop-free by construction
}

impl ColorGraph {
    pub fn from_edges<I>(focus_color: impl Into<String>, leaf_count: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![LeafSubset::empty(); leaf_count];
        for (a, b) in edges {
            assert!(a != b && a < leaf_count && b < leaf_count);
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Self { focus_color: focus_color.into(), leaf_count, adj }
    }

    pub fn focus_color(&self) -> &str {
        &self.focus_color
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbors(&self, v: usize) -> LeafSubset {
        self.adj[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.len()).sum::<usize>() / 2
    }

    /// A triple of vertices inducing exactly one edge (`K_1 + K_2`), or
    /// `None` when the graph is complete multi-partite. The witness is
    /// ordered `(isolated, u, v)` with `{u,v}` the edge, first such triple
    /// in lexicographic vertex order.
    pub fn has_k1_plus_k2(&self) -> Option<(usize, usize, usize)> {
        let n = self.leaf_count;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let ab = self.has_edge(a, b);
                    let ac = self.has_edge(a, c);
                    let bc = self.has_edge(b, c);
                    match (ab, ac, bc) {
                        (true, false, false) => return Some((c, a, b)),
                        (false, true, false) => return Some((b, a, c)),
                        (false, false, true) => return Some((a, b, c)),
                        _ => {}
                    }
                }
            }
        }
        None
    }

    /// If the graph is complete multi-partite, its unique partition into
    /// maximal independent sets; otherwise `None`.
    ///
    /// The parts of a complete multi-partite graph are the connected
    /// components of the complement, so we take those components and verify
    /// each is independent in the graph itself.
    pub fn multipartite_parts(&self) -> Option<IndependentSetFamily> {
        let n = self.leaf_count;
        let all = LeafSubset::all(n);
        let mut assigned = LeafSubset::empty();
        let mut parts = Vec::new();
        for v in 0..n {
            if assigned.contains(v) {
                continue;
            }
            // flood-fill the complement component of v
            let mut comp = LeafSubset::singleton(v);
            let mut frontier = vec![v];
            while let Some(u) = frontier.pop() {
                let co_neighbors = all.difference(self.adj[u]).difference(comp);
                for w in co_neighbors.iter() {
                    if w != u {
                        comp.insert(w);
                        frontier.push(w);
                    }
                }
            }
            // the component must be independent in the graph
            for u in comp.iter() {
                if !self.adj[u].is_disjoint(comp) {
                    return None;
                }
            }
            assigned = assigned.union(comp);
            parts.push(comp);
        }
        parts.sort();
        Some(IndependentSetFamily { parts })
    }
}

/// Builds `𝒢_m(ε)` for the named color.
pub fn graph_representation(map: &SymmetricMap, color: &str) -> Result<ColorGraph, ModelError> {
    let c = map
        .color_set()
        .index_of(color)
        .ok_or_else(|| ModelError::UnknownIdentifier { kind: "color", name: color.to_owned() })?;
    Ok(graph_representation_idx(map, c))
}

pub fn graph_representation_idx(map: &SymmetricMap, color: usize) -> ColorGraph {
    let n = map.leaf_count();
    let mut adj = vec![LeafSubset::empty(); n];
    for (i, j, e) in map.pairs() {
        if e.contains(color) {
            adj[i].insert(j);
            adj[j].insert(i);
        }
    }
    ColorGraph { focus_color: map.color_set().name(color).to_owned(), leaf_count: n, adj }
}

/// The maximal independent sets `ℐ` of a complete multi-partite graph:
/// pairwise disjoint parts covering the leaf set, sorted canonically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IndependentSetFamily {
    parts: Vec<LeafSubset>,
}

impl IndependentSetFamily {
    pub fn parts(&self) -> &[LeafSubset] {
        &self.parts
    }

    /// `ℐ₂`: the parts with at least two members.
    pub fn parts_ge_two(&self) -> Vec<LeafSubset> {
        self.parts.iter().copied().filter(|p| p.len() >= 2).collect()
    }

    pub fn part_of(&self, leaf: usize) -> Option<LeafSubset> {
        self.parts.iter().copied().find(|p| p.contains(leaf))
    }
}

/// Rejection witnesses for the monochromatic decision procedures.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MonoRejection {
    /// Two distinct colors in use; no monochromatic map can do that.
    TwoColors { first: String, second: String },
    /// An induced `K_1+K_2` in the color graph, `(isolated, edge)`.
    InducedK1K2 { isolated: String, edge: (String, String) },
}

impl std::fmt::Display for MonoRejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MonoRejection::TwoColors { first, second } => {
                write!(f, "colors {first:?} and {second:?} are both in use")
            }
            MonoRejection::InducedK1K2 { isolated, edge } => write!(
                f,
                "vertices {{{},{},{}}} induce a K1+K2 with edge {{{},{}}}",
                isolated, edge.0, edge.1, edge.0, edge.1
            ),
        }
    }
}

/// Decision for the `|ε(x,y)| ≤ 1` recognition problem.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RestrictedVerdict {
    Fitch,
    NotFitch(MonoRejection),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoError {
    #[error("entry for ({a:?}, {b:?}) has {got} colors; the restricted test needs at most one per pair")]
    EntryNotSingleton { a: String, b: String, got: usize },
    #[error("map is not monochromatic: {0}")]
    NotMonochromatic(MonoRejection),
    #[error("map is not a monochromatic Fitch map: {0}")]
    NotFitch(MonoRejection),
    #[error("least-resolved construction needs at least 3 leaves, got {got}")]
    TooFewLeaves { got: usize },
}

/// Decides whether a map with at most one color per pair is a symmetrized
/// Fitch map. Such maps are Fitch maps exactly when they are monochromatic
/// with a complete multi-partite color graph; this runs in polynomial time.
pub fn is_restricted_fitch(map: &SymmetricMap) -> Result<RestrictedVerdict, MonoError> {
    for (i, j, e) in map.pairs() {
        if e.len() > 1 {
            return Err(MonoError::EntryNotSingleton {
                a: map.leaf_set().name(i).to_owned(),
                b: map.leaf_set().name(j).to_owned(),
                got: e.len(),
            });
        }
    }
    match map.monochromatic_color() {
        Err((c1, c2)) => Ok(RestrictedVerdict::NotFitch(MonoRejection::TwoColors {
            first: map.color_set().name(c1).to_owned(),
            second: map.color_set().name(c2).to_owned(),
        })),
        Ok(None) => Ok(RestrictedVerdict::Fitch), // ε ≡ ∅: any all-∅ tree explains it
        Ok(Some(c)) => {
            let graph = graph_representation_idx(map, c);
            match graph.has_k1_plus_k2() {
                Some((iso, u, v)) => Ok(RestrictedVerdict::NotFitch(MonoRejection::InducedK1K2 {
                    isolated: map.leaf_set().name(iso).to_owned(),
                    edge: (map.leaf_set().name(u).to_owned(), map.leaf_set().name(v).to_owned()),
                })),
                None => Ok(RestrictedVerdict::Fitch),
            }
        }
    }
}

/// The family `𝒯_ε` of least-resolved trees of a monochromatic Fitch map,
/// as a constraint description plus one canonical representative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TreeFamilyDescription {
    /// The single color in use; `None` for the all-`∅` map, whose
    /// representative carries no color anywhere.
    pub color: Option<String>,
    pub family: LeastResolvedFamily,
    /// Vertex count shared by every least-resolved tree.
    pub vertex_count: usize,
    pub representative: LabeledTree,
}

/// The two shapes the family can take.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LeastResolvedFamily {
    /// The color graph is complete: every member is the star tree whose
    /// edges all carry the color, except that any single edge may be `∅`.
    /// The canonical representative uses no `∅`-edge.
    CompleteStar,
    /// Some part has two or more leaves. Members have exactly one inner
    /// vertex per such part (its leaves attach there by `∅`-edges), leaves
    /// of singleton parts attach anywhere by color-labeled edges, and every
    /// inner edge carries the color. Inner edges may be arranged freely;
    /// the representative stars them around the first part's vertex, which
    /// also hosts the singleton-part leaves.
    PartitionedParts {
        parts: Vec<LeafSubset>,
        parts_ge_two: Vec<LeafSubset>,
    },
}

impl TreeFamilyDescription {
    /// Human-readable constraint lines for CLI output.
    pub fn describe(&self) -> Vec<String> {
        let leaves = self.representative.leaf_set();
        let color = self.color.clone().unwrap_or_else(|| "<none>".to_owned());
        match &self.family {
            LeastResolvedFamily::CompleteStar => vec![
                format!("every least-resolved tree is the star on {} leaves", leaves.len()),
                format!("all edges carry {{{color}}}, with at most one edge allowed to be {{}} instead"),
                format!("vertex count of every least-resolved tree: {}", self.vertex_count),
            ],
            LeastResolvedFamily::PartitionedParts { parts, parts_ge_two } => {
                let mut lines = vec![
                    format!(
                        "maximal independent sets: {}",
                        parts.iter().map(|p| leaves.render_subset(*p)).collect::<Vec<_>>().join(", ")
                    ),
                    format!("inner vertices: one per part of size >= 2 ({})", parts_ge_two.len()),
                ];
                for p in parts_ge_two {
                    lines.push(format!(
                        "leaves of {} attach to their part vertex by {{}}-edges",
                        leaves.render_subset(*p)
                    ));
                }
                let singles: Vec<usize> = parts
                    .iter()
                    .filter(|p| p.len() == 1)
                    .map(|p| p.min_index().unwrap())
                    .collect();
                if !singles.is_empty() {
                    lines.push(format!(
                        "singleton-part leaves {} attach to any inner vertex by {{{color}}}-edges",
                        leaves.render_subset(LeafSubset::from_indices(singles))
                    ));
                }
                lines.push(format!("every inner edge carries {{{color}}}"));
                lines.push("inner edges may be arranged freely (the representative stars them)".to_owned());
                lines.push(format!("vertex count of every least-resolved tree: {}", self.vertex_count));
                lines
            }
        }
    }
}

/// Builds `𝒯_ε` for a monochromatic Fitch map on at least three leaves.
///
/// The all-`∅` map is accepted as the degenerate monochromatic case: its
/// single part is the whole leaf set and the representative is the star with
/// all-`∅` labels.
pub fn least_resolved_trees(map: &SymmetricMap) -> Result<TreeFamilyDescription, MonoError> {
    let n = map.leaf_count();
    if n < 3 {
        return Err(MonoError::TooFewLeaves { got: n });
    }
    let color = match map.monochromatic_color() {
        Err((c1, c2)) => {
            return Err(MonoError::NotMonochromatic(MonoRejection::TwoColors {
                first: map.color_set().name(c1).to_owned(),
                second: map.color_set().name(c2).to_owned(),
            }))
        }
        Ok(c) => c,
    };
    let parts = match color {
        Some(c) => {
            let graph = graph_representation_idx(map, c);
            match graph.multipartite_parts() {
                Some(parts) => parts,
                None => {
                    let (iso, u, v) = graph.has_k1_plus_k2().expect("not multipartite");
                    return Err(MonoError::NotFitch(MonoRejection::InducedK1K2 {
                        isolated: map.leaf_set().name(iso).to_owned(),
                        edge: (map.leaf_set().name(u).to_owned(), map.leaf_set().name(v).to_owned()),
                    }));
                }
            }
        }
        None => IndependentSetFamily { parts: vec![LeafSubset::all(n)] },
    };

    let color_mask = color.map(|c| ColorSubset::singleton(c)).unwrap_or_default();
    let parts_ge_two = parts.parts_ge_two();

    if parts_ge_two.is_empty() {
        // complete graph: the star with every edge colored
        let representative = LabeledTree::star(
            map.leaf_set().clone(),
            map.color_set().clone(),
            vec![color_mask; n],
        )
        .expect("n >= 3");
        return Ok(TreeFamilyDescription {
            color: color.map(|c| map.color_set().name(c).to_owned()),
            family: LeastResolvedFamily::CompleteStar,
            vertex_count: n + 1,
            representative,
        });
    }

    // one inner vertex per part of size >= 2, starred around the first;
    // singleton-part leaves also attach to the first part's vertex
    let k = parts_ge_two.len();
    let hub = n; // vertex id of the first (canonically smallest) big part
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for (pi, part) in parts_ge_two.iter().enumerate() {
        for leaf in part.iter() {
            edges.push((leaf, n + pi));
            labels.push(ColorSubset::empty());
        }
    }
    for part in parts.parts() {
        if part.len() == 1 {
            edges.push((part.min_index().unwrap(), hub));
            labels.push(color_mask);
        }
    }
    for pi in 1..k {
        edges.push((hub, n + pi));
        labels.push(color_mask);
    }
    let topology = Topology::new(map.leaf_set().clone(), n + k, edges)
        .expect("construction satisfies the phylogenetic invariants");
    let representative = LabeledTree::from_topology(topology, map.color_set().clone(), labels);
    Ok(TreeFamilyDescription {
        color: color.map(|c| map.color_set().name(c).to_owned()),
        family: LeastResolvedFamily::PartitionedParts { parts: parts.parts().to_vec(), parts_ge_two },
        vertex_count: n + k,
        representative,
    })
}
