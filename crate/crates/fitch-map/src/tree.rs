//! Unrooted phylogenetic trees with color-set edge labels, and the path
//! semantics that turns such a tree into a symmetric map.

use crate::error::ModelError;
use crate::map::SymmetricMap;
use crate::sets::{ColorSet, ColorSubset, LeafSet, LeafSubset};
use crate::subsplit::Subsplit;

/// The shape of an unrooted phylogenetic tree over a leaf set: connected,
/// acyclic, every inner vertex of degree at least three.
///
/// Vertices `0..n-1` are the leaves in the leaf set's canonical order;
/// vertices `n..` are inner. Edge order is part of the value and determines
/// deterministic iteration everywhere downstream.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Topology {
    leaves: LeafSet,
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Topology {
    pub fn new(leaves: LeafSet, vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, ModelError> {
        let n = leaves.len();
        if n < 2 {
            return Err(ModelError::TooFewTreeLeaves { got: n });
        }
        if edges.len() + 1 != vertex_count {
            return Err(ModelError::NotATree { vertices: vertex_count, edges: edges.len() });
        }
        let mut degree = vec![0usize; vertex_count];
        for &(a, b) in &edges {
            if a == b || a >= vertex_count || b >= vertex_count {
                return Err(ModelError::BadEdge { a: format!("#{a}"), b: format!("#{b}") });
            }
            degree[a] += 1;
            degree[b] += 1;
        }
        // connectivity: |E| = |V|-1 plus connected <=> tree
        let mut seen = vec![false; vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut adj = vec![Vec::new(); vertex_count];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(ModelError::NotConnected);
        }
        for v in 0..vertex_count {
            if v < n {
                if degree[v] != 1 {
                    return Err(ModelError::LeafMismatch { name: format!("#{v}") });
                }
            } else if degree[v] < 3 {
                return Err(ModelError::InnerDegreeTooLow { name: format!("#{v}"), degree: degree[v] });
            }
        }
        Ok(Self { leaves, vertex_count, edges })
    }

    /// Construction for internal callers that maintain the invariants.
    pub(crate) fn from_validated(leaves: LeafSet, vertex_count: usize, edges: Vec<(usize, usize)>) -> Self {
        debug_assert!(Self::new(leaves.clone(), vertex_count, edges.clone()).is_ok());
        Self { leaves, vertex_count, edges }
    }

    /// The tree on two leaves: a single edge.
    pub fn single_edge(leaves: LeafSet) -> Result<Self, ModelError> {
        if leaves.len() != 2 {
            return Err(ModelError::TooFewTreeLeaves { got: leaves.len() });
        }
        Ok(Self { leaves, vertex_count: 2, edges: vec![(0, 1)] })
    }

    /// The star tree: one center vertex adjacent to every leaf.
    pub fn star(leaves: LeafSet) -> Result<Self, ModelError> {
        let n = leaves.len();
        if n < 3 {
            return Err(ModelError::TooFewTreeLeaves { got: n });
        }
        let edges = (0..n).map(|i| (i, n)).collect();
        Ok(Self { leaves, vertex_count: n + 1, edges })
    }

    pub fn leaf_set(&self) -> &LeafSet {
        &self.leaves
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn inner_vertex_count(&self) -> usize {
        self.vertex_count - self.leaves.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_leaf_vertex(&self, v: usize) -> bool {
        v < self.leaves.len()
    }

    pub fn is_inner_edge(&self, e: usize) -> bool {
        let (a, b) = self.edges[e];
        !self.is_leaf_vertex(a) && !self.is_leaf_vertex(b)
    }

    /// Adjacency lists carrying `(neighbor, edge index)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (ei, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, ei));
            adj[b].push((a, ei));
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertex_count];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn is_binary(&self) -> bool {
        self.degrees()
            .iter()
            .enumerate()
            .all(|(v, &d)| if self.is_leaf_vertex(v) { d == 1 } else { d == 3 })
    }

    /// For every edge, the set of leaves on the side away from vertex 0
    /// (leaf 0). Cuts are the edge's split in normalized form.
    pub fn edge_cuts(&self) -> Vec<LeafSubset> {
        let adj = self.adjacency();
        let mut order = Vec::with_capacity(self.vertex_count);
        let mut parent = vec![usize::MAX; self.vertex_count];
        let mut parent_edge = vec![usize::MAX; self.vertex_count];
        let mut stack = vec![0usize];
        let mut seen = vec![false; self.vertex_count];
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
        let mut below = vec![LeafSubset::empty(); self.vertex_count];
        let mut cuts = vec![LeafSubset::empty(); self.edges.len()];
        for &u in order.iter().rev() {
            if self.is_leaf_vertex(u) {
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

    /// Whether some edge separates `side_a` from `side_b` of the subsplit.
    pub fn displays(&self, s: &Subsplit) -> Result<bool, ModelError> {
        let n = self.leaves.len();
        if let Some(stray) = s.support().difference(LeafSubset::all(n)).min_index() {
            return Err(ModelError::SubsplitOutOfRange { index: stray, n });
        }
        Ok(self.displays_unchecked(s, &self.edge_cuts()))
    }

    pub(crate) fn displays_unchecked(&self, s: &Subsplit, cuts: &[LeafSubset]) -> bool {
        let (a, b) = s.sides();
        cuts.iter().any(|&c| {
            (a.is_subset_of(c) && b.is_disjoint(c)) || (b.is_subset_of(c) && a.is_disjoint(c))
        })
    }

    /// All splits displayed by the tree, one per edge.
    pub fn splits(&self) -> crate::subsplit::SplitSystem {
        let all = LeafSubset::all(self.leaves.len());
        let splits = self
            .edge_cuts()
            .into_iter()
            .map(|c| Subsplit::new(c, all.difference(c)).expect("edge cuts are proper"));
        crate::subsplit::SplitSystem::new(self.leaves.clone(), splits).expect("cuts are splits")
    }

    /// Canonical signature: the sorted set of edge cuts. Two trees over the
    /// same leaf set are isomorphic as leaf-labeled trees exactly when their
    /// signatures agree.
    pub fn signature(&self) -> std::collections::BTreeSet<LeafSubset> {
        self.edge_cuts().into_iter().collect()
    }

    /// Longest path length (in edges) between any two vertices.
    pub fn diameter(&self) -> usize {
        let adj = self.adjacency();
        let mut best = 0;
        for start in 0..self.vertex_count {
            let mut dist = vec![usize::MAX; self.vertex_count];
            dist[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &(w, _) in &adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            best = best.max(*dist.iter().max().unwrap());
        }
        best
    }

    /// Contracts an inner edge, merging its endpoints. The surviving vertex
    /// is the smaller endpoint; indices above the removed one shift down.
    pub fn contract_inner_edge(&self, e: usize) -> Result<Topology, ModelError> {
        let (a, b) = self.edges[e];
        if self.is_leaf_vertex(a) || self.is_leaf_vertex(b) {
            return Err(ModelError::BadEdge { a: format!("#{a}"), b: format!("#{b}") });
        }
        let keep = a.min(b);
        let drop = a.max(b);
        let remap = |v: usize| {
            let v = if v == drop { keep } else { v };
            if v > drop {
                v - 1
            } else {
                v
            }
        };
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &(u, v))| (remap(u), remap(v)))
            .collect();
        Ok(Topology::from_validated(self.leaves.clone(), self.vertex_count - 1, edges))
    }
}

/// An edge-labeled phylogenetic tree `(T, λ)`: a [`Topology`] plus a color
/// subset per edge (possibly `∅`) and a display name per vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabeledTree {
    topology: Topology,
    colors: ColorSet,
    labels: Vec<ColorSubset>, // parallel to topology.edges()
    vertex_names: Vec<String>,
}

impl LabeledTree {
    /// Wraps a topology with labels; inner vertices get fresh names `v1,
    /// v2, …` (skipping any name a leaf already uses).
    pub fn from_topology(topology: Topology, colors: ColorSet, labels: Vec<ColorSubset>) -> Self {
        assert_eq!(labels.len(), topology.edges().len());
        debug_assert!(labels.iter().all(|l| l.is_subset_of(colors.universe_subset())));
        let n = topology.leaf_count();
        let mut vertex_names: Vec<String> =
            (0..n).map(|i| topology.leaf_set().name(i).to_owned()).collect();
        let mut next = 1usize;
        for _ in n..topology.vertex_count() {
            let mut candidate = format!("v{next}");
            while topology.leaf_set().contains(&candidate) {
                next += 1;
                candidate = format!("v{next}");
            }
            vertex_names.push(candidate);
            next += 1;
        }
        Self { topology, colors, labels, vertex_names }
    }

    /// Full construction from named parts, validating every invariant.
    /// `colors` of `None` means "infer the universe as the union of all
    /// edge labels".
    pub fn build(
        vertices: &[String],
        edges: &[(String, String, Vec<String>)],
        leaves: &[String],
        colors: Option<ColorSet>,
    ) -> Result<Self, ModelError> {
        // vertex names must be unique and non-empty
        let mut sorted = vertices.to_vec();
        sorted.sort();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(ModelError::DuplicateVertex { name: pair[0].clone() });
            }
        }
        if vertices.iter().any(String::is_empty) {
            return Err(ModelError::EmptyIdentifier { kind: "vertex" });
        }
        let leaf_set = LeafSet::new(leaves.iter().cloned())?;
        if leaf_set.len() < 2 {
            return Err(ModelError::TooFewTreeLeaves { got: leaf_set.len() });
        }
        for l in leaf_set.iter() {
            if !vertices.contains(&l.to_owned()) {
                return Err(ModelError::UnknownVertex { name: l.to_owned() });
            }
        }

        // leaves take ids 0..n-1 in canonical order, inner vertices follow
        // in input order
        let n = leaf_set.len();
        let mut id_of = std::collections::HashMap::new();
        let mut vertex_names = vec![String::new(); vertices.len()];
        for (i, name) in leaf_set.iter().enumerate() {
            id_of.insert(name.to_owned(), i);
            vertex_names[i] = name.to_owned();
        }
        let mut next = n;
        for name in vertices {
            if !id_of.contains_key(name) {
                id_of.insert(name.clone(), next);
                vertex_names[next] = name.clone();
                next += 1;
            }
        }

        let colors = match colors {
            Some(c) => c,
            None => {
                let mut names: Vec<String> =
                    edges.iter().flat_map(|(_, _, cs)| cs.iter().cloned()).collect();
                names.sort();
                names.dedup();
                ColorSet::new(names)?
            }
        };

        let mut idx_edges = Vec::with_capacity(edges.len());
        let mut labels = Vec::with_capacity(edges.len());
        let mut seen_edges = std::collections::HashSet::new();
        for (a, b, cs) in edges {
            let &ia = id_of
                .get(a)
                .ok_or_else(|| ModelError::UnknownVertex { name: a.clone() })?;
            let &ib = id_of
                .get(b)
                .ok_or_else(|| ModelError::UnknownVertex { name: b.clone() })?;
            if ia == ib || !seen_edges.insert((ia.min(ib), ia.max(ib))) {
                return Err(ModelError::BadEdge { a: a.clone(), b: b.clone() });
            }
            idx_edges.push((ia, ib));
            labels.push(colors.subset_from_names(cs)?);
        }

        // degree checks with real names before handing off to Topology
        let mut degree = vec![0usize; vertices.len()];
        for &(a, b) in &idx_edges {
            degree[a] += 1;
            degree[b] += 1;
        }
        for (v, &d) in degree.iter().enumerate() {
            if v < n && d != 1 {
                return Err(ModelError::LeafMismatch { name: vertex_names[v].clone() });
            }
            if v >= n && d == 1 {
                return Err(ModelError::LeafMismatch { name: vertex_names[v].clone() });
            }
            if v >= n && d == 2 {
                return Err(ModelError::InnerDegreeTooLow { name: vertex_names[v].clone(), degree: d });
            }
        }

        let topology = Topology::new(leaf_set, vertices.len(), idx_edges)?;
        Ok(Self { topology, colors, labels, vertex_names })
    }

    /// The two-leaf tree with a single labeled edge.
    pub fn single_edge(leaves: LeafSet, colors: ColorSet, label: ColorSubset) -> Result<Self, ModelError> {
        let topology = Topology::single_edge(leaves)?;
        Ok(Self::from_topology(topology, colors, vec![label]))
    }

    /// A star tree with one label per leaf edge, in canonical leaf order.
    pub fn star(leaves: LeafSet, colors: ColorSet, labels: Vec<ColorSubset>) -> Result<Self, ModelError> {
        let topology = Topology::star(leaves)?;
        assert_eq!(labels.len(), topology.edges().len());
        Ok(Self::from_topology(topology, colors, labels))
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    pub fn leaf_set(&self) -> &LeafSet {
        &self.topology.leaves
    }

    pub fn color_set(&self) -> &ColorSet {
        &self.colors
    }

    pub fn labels(&self) -> &[ColorSubset] {
        &self.labels
    }

    pub fn label(&self, e: usize) -> ColorSubset {
        self.labels[e]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    /// The symmetric map explained by this tree: `m ∈ ε(x,y)` iff some edge
    /// on the path between leaves `x` and `y` carries `m`. The map's color
    /// universe is this tree's universe.
    pub fn explain(&self) -> SymmetricMap {
        let n = self.topology.leaf_count();
        let mut map = SymmetricMap::new_empty(self.topology.leaves.clone(), self.colors.clone())
            .expect("trees have at least two leaves");
        let adj = self.topology.adjacency();
        for x in 0..n {
            let mut stack = vec![(x, usize::MAX, ColorSubset::empty())];
            while let Some((u, prev, mask)) = stack.pop() {
                if u != x && self.topology.is_leaf_vertex(u) {
                    if u > x {
                        map.set_entry(x, u, mask);
                    }
                    continue; // leaves are degree 1, nothing beyond
                }
                for &(w, ei) in &adj[u] {
                    if w != prev {
                        stack.push((w, u, mask.union(self.labels[ei])));
                    }
                }
            }
        }
        map
    }

    /// Lenient view for operations that may break the phylogenetic
    /// invariants along the way (pruning, suppression).
    pub fn to_raw(&self) -> RawTree {
        RawTree {
            colors: self.colors.clone(),
            vertices: self.vertex_names.clone(),
            edges: self
                .topology
                .edges
                .iter()
                .zip(&self.labels)
                .map(|(&(a, b), &l)| (a, b, l))
                .collect(),
        }
    }

    /// Deletes the leaves outside `keep`, then iteratively deletes any
    /// non-leaf vertex whose degree dropped to one. The result may still
    /// contain degree-2 vertices; follow with [`RawTree::suppress_degree_two`].
    pub fn prune(&self, keep: &LeafSet) -> Result<RawTree, ModelError> {
        if !self.leaf_set().is_superset_of(keep) {
            return Err(ModelError::NotASubset { kind: "leaf", sub: keep.names().to_vec() });
        }
        if keep.len() < 2 {
            return Err(ModelError::TooFewTreeLeaves { got: keep.len() });
        }
        let mut raw = self.to_raw();
        let keep_ids: std::collections::HashSet<usize> = (0..self.topology.leaf_count())
            .filter(|&i| keep.contains(self.topology.leaves.name(i)))
            .collect();
        loop {
            let mut degree = vec![0usize; raw.vertices.len()];
            for &(a, b, _) in &raw.edges {
                degree[a] += 1;
                degree[b] += 1;
            }
            // delete one offending vertex per round; indices stay stable
            // because we only drop edges and blank the vertex slot
            let victim = (0..raw.vertices.len()).find(|&v| {
                let alive = !raw.vertices[v].is_empty();
                alive && degree[v] <= 1 && !keep_ids.contains(&v)
            });
            match victim {
                Some(v) => {
                    raw.vertices[v] = String::new();
                    raw.edges.retain(|&(a, b, _)| a != v && b != v);
                }
                None => break,
            }
        }
        Ok(raw.compact())
    }

    /// The restriction construction: prune to `sub_leaves`, intersect every
    /// label with `sub_colors`, and suppress degree-2 vertices. Explains
    /// exactly the restriction of this tree's map.
    pub fn restricted_to(&self, sub_leaves: &LeafSet, sub_colors: &ColorSet) -> Result<LabeledTree, ModelError> {
        if !self.colors.is_superset_of(sub_colors) {
            return Err(ModelError::NotASubset { kind: "color", sub: sub_colors.names().to_vec() });
        }
        let mut raw = self.prune(sub_leaves)?;
        raw.edges = raw
            .edges
            .iter()
            .map(|&(a, b, l)| {
                let mut nl = ColorSubset::empty();
                for c in l.iter() {
                    if let Some(nc) = sub_colors.index_of(raw.colors.name(c)) {
                        nl.insert(nc);
                    }
                }
                (a, b, nl)
            })
            .collect();
        raw.colors = sub_colors.clone();
        raw.suppress_degree_two()
    }

    /// Contracts an inner edge keeping all other labels (the contracted
    /// edge's label is dropped).
    pub fn contract_inner_edge(&self, e: usize) -> Result<LabeledTree, ModelError> {
        let topology = self.topology.contract_inner_edge(e)?;
        let (a, b) = self.topology.edges[e];
        let removed = a.max(b);
        let labels: Vec<ColorSubset> = self
            .labels
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &l)| l)
            .collect();
        let vertex_names: Vec<String> = self
            .vertex_names
            .iter()
            .enumerate()
            .filter(|&(v, _)| v != removed)
            .map(|(_, n)| n.clone())
            .collect();
        Ok(Self { topology, colors: self.colors.clone(), labels, vertex_names })
    }

    /// Renders an edge as `{u,v}` with its label.
    pub fn render_edge(&self, e: usize) -> String {
        let (a, b) = self.topology.edges[e];
        format!(
            "{{{},{}}} {}",
            self.vertex_names[a],
            self.vertex_names[b],
            self.colors.render_subset(self.labels[e])
        )
    }
}

/// A tree that may violate the phylogenetic degree invariants: the
/// intermediate form used by pruning and degree-2 suppression. Vertices with
/// an empty name slot are deleted.
#[derive(Clone, Debug)]
pub struct RawTree {
    colors: ColorSet,
    vertices: Vec<String>,
    edges: Vec<(usize, usize, ColorSubset)>,
}

impl RawTree {
    /// Builds a raw tree from named edges. Labels use color names resolved
    /// against `colors`.
    pub fn new(
        colors: ColorSet,
        vertices: Vec<String>,
        edges: &[(String, String, Vec<String>)],
    ) -> Result<Self, ModelError> {
        let mut id_of = std::collections::HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.is_empty() {
                return Err(ModelError::EmptyIdentifier { kind: "vertex" });
            }
            if id_of.insert(v.clone(), i).is_some() {
                return Err(ModelError::DuplicateVertex { name: v.clone() });
            }
        }
        let mut idx_edges = Vec::with_capacity(edges.len());
        for (a, b, cs) in edges {
            let &ia = id_of.get(a).ok_or_else(|| ModelError::UnknownVertex { name: a.clone() })?;
            let &ib = id_of.get(b).ok_or_else(|| ModelError::UnknownVertex { name: b.clone() })?;
            if ia == ib {
                return Err(ModelError::BadEdge { a: a.clone(), b: b.clone() });
            }
            idx_edges.push((ia, ib, colors.subset_from_names(cs)?));
        }
        Ok(Self { colors, vertices, edges: idx_edges })
    }

    /// Drops deleted vertex slots and reindexes edges.
    fn compact(self) -> RawTree {
        let mut new_id = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.into_iter().enumerate() {
            if !v.is_empty() {
                new_id[i] = vertices.len();
                vertices.push(v);
            }
        }
        let edges = self
            .edges
            .into_iter()
            .map(|(a, b, l)| (new_id[a], new_id[b], l))
            .collect();
        RawTree { colors: self.colors, vertices, edges }
    }

    /// Removes every degree-2 vertex by merging its two incident edges into
    /// one edge labeled with the union of the two labels. Path color content
    /// between the remaining leaves is preserved. The result must satisfy
    /// the full phylogenetic invariants.
    pub fn suppress_degree_two(mut self) -> Result<LabeledTree, ModelError> {
        loop {
            let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.vertices.len()];
            for (ei, &(a, b, _)) in self.edges.iter().enumerate() {
                incident[a].push(ei);
                incident[b].push(ei);
            }
            let victim = (0..self.vertices.len())
                .find(|&v| !self.vertices[v].is_empty() && incident[v].len() == 2);
            let Some(v) = victim else { break };
            let (e1, e2) = (incident[v][0], incident[v][1]);
            let (a1, b1, l1) = self.edges[e1];
            let (a2, b2, l2) = self.edges[e2];
            let u = if a1 == v { b1 } else { a1 };
            let w = if a2 == v { b2 } else { a2 };
            // merged edge takes the earlier slot; later slot is removed
            self.edges[e1.min(e2)] = (u, w, l1.union(l2));
            self.edges.remove(e1.max(e2));
            self.vertices[v] = String::new();
        }
        let compacted = self.compact();
        // degree-1 vertices are the leaves by assumption of the caller
        let mut degree = vec![0usize; compacted.vertices.len()];
        for &(a, b, _) in &compacted.edges {
            degree[a] += 1;
            degree[b] += 1;
        }
        let leaves: Vec<String> = compacted
            .vertices
            .iter()
            .enumerate()
            .filter(|&(v, _)| degree[v] == 1)
            .map(|(_, n)| n.clone())
            .collect();
        let named_edges: Vec<(String, String, Vec<String>)> = compacted
            .edges
            .iter()
            .map(|&(a, b, l)| {
                (
                    compacted.vertices[a].clone(),
                    compacted.vertices[b].clone(),
                    compacted.colors.subset_names(l),
                )
            })
            .collect();
        LabeledTree::build(&compacted.vertices, &named_edges, &leaves, Some(compacted.colors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leafset(names: &[&str]) -> LeafSet {
        LeafSet::new(names.iter().copied()).unwrap()
    }

    fn colorset(names: &[&str]) -> ColorSet {
        ColorSet::new(names.iter().copied()).unwrap()
    }

    /// Star on {a,b,c} with λ({a,v}) = {m}, other edges ∅.
    fn one_edge_star() -> LabeledTree {
        let leaves = leafset(&["a", "b", "c"]);
        let colors = colorset(&["m"]);
        let m = ColorSubset::from_indices([0]);
        LabeledTree::star(leaves, colors, vec![m, ColorSubset::empty(), ColorSubset::empty()])
            .unwrap()
    }

    /// Caterpillar ((a,b),(c,d)) with the inner edge labeled {m}.
    fn caterpillar_inner_m() -> LabeledTree {
        let vertices: Vec<String> =
            ["a", "b", "c", "d", "u", "w"].iter().map(|s| s.to_string()).collect();
        let edges = vec![
            ("a".into(), "u".into(), vec![]),
            ("b".into(), "u".into(), vec![]),
            ("c".into(), "w".into(), vec![]),
            ("d".into(), "w".into(), vec![]),
            ("u".into(), "w".into(), vec!["m".into()]),
        ];
        let leaves: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        LabeledTree::build(&vertices, &edges, &leaves, Some(colorset(&["m"]))).unwrap()
    }

    #[test]
    fn explain_single_colored_star_edge() {
        let tree = one_edge_star();
        let map = tree.explain();
        assert_eq!(map.entry_by_names("a", "b").unwrap().len(), 1);
        assert_eq!(map.entry_by_names("a", "c").unwrap().len(), 1);
        assert!(map.entry_by_names("b", "c").unwrap().is_empty());
    }

    #[test]
    fn explain_all_empty_star() {
        let leaves = leafset(&["a", "b", "c"]);
        let colors = colorset(&["m"]);
        let tree = LabeledTree::star(leaves, colors, vec![ColorSubset::empty(); 3]).unwrap();
        let map = tree.explain();
        assert!(map.pairs().all(|(_, _, e)| e.is_empty()));
    }

    #[test]
    fn explain_caterpillar_inner_edge() {
        // brute-force oracle over the six pairs: only {a,b} and {c,d} avoid
        // the inner edge
        let map = caterpillar_inner_m().explain();
        assert!(map.entry_by_names("a", "b").unwrap().is_empty());
        assert!(map.entry_by_names("c", "d").unwrap().is_empty());
        for (x, y) in [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")] {
            assert_eq!(map.entry_by_names(x, y).unwrap().len(), 1, "pair ({x},{y})");
        }
    }

    #[test]
    fn path_tree_is_rejected() {
        // a—u—b has an inner vertex of degree 2
        let vertices: Vec<String> = ["a", "u", "b"].iter().map(|s| s.to_string()).collect();
        let edges = vec![
            ("a".into(), "u".into(), vec![]),
            ("u".into(), "b".into(), vec![]),
        ];
        let leaves: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let err = LabeledTree::build(&vertices, &edges, &leaves, None).unwrap_err();
        assert!(matches!(err, ModelError::InnerDegreeTooLow { .. }));
    }

    #[test]
    fn disconnected_and_cyclic_rejected() {
        let leaves = leafset(&["a", "b", "c", "d"]);
        // 4 vertices, 2 edges: not a tree
        assert!(matches!(
            Topology::new(leaves.clone(), 4, vec![(0, 1), (2, 3)]),
            Err(ModelError::NotATree { .. })
        ));
        // right edge count but disconnected (with a doubled edge elsewhere)
        assert!(Topology::new(leaves, 4, vec![(0, 1), (0, 1), (2, 3)]).is_err());
    }

    #[test]
    fn suppress_merges_chain_labels() {
        // a—u—v—b with λ(a,u)={1}, λ(u,v)=∅, λ(v,b)={2}
        let colors = colorset(&["1", "2"]);
        let raw = RawTree::new(
            colors,
            vec!["a".into(), "u".into(), "v".into(), "b".into()],
            &[
                ("a".into(), "u".into(), vec!["1".into()]),
                ("u".into(), "v".into(), vec![]),
                ("v".into(), "b".into(), vec!["2".into()]),
            ],
        )
        .unwrap();
        let tree = raw.suppress_degree_two().unwrap();
        assert_eq!(tree.topology().vertex_count(), 2);
        let map = tree.explain();
        assert_eq!(map.entry_by_names("a", "b").unwrap().len(), 2);
    }

    #[test]
    fn suppress_without_degree_two_is_identity() {
        let tree = caterpillar_inner_m();
        let again = tree.to_raw().suppress_degree_two().unwrap();
        assert_eq!(tree, again);
    }

    #[test]
    fn prune_star_then_suppress_keeps_path_colors() {
        // deleting leaf c from the one-m-edge star leaves edge {a,b} with {m}
        let tree = one_edge_star();
        let keep = leafset(&["a", "b"]);
        let pruned = tree.prune(&keep).unwrap().suppress_degree_two().unwrap();
        assert_eq!(pruned.topology().vertex_count(), 2);
        let map = pruned.explain();
        assert_eq!(map.entry_by_names("a", "b").unwrap().len(), 1);
    }

    #[test]
    fn restriction_commutes_with_explain_on_fixture() {
        let tree = caterpillar_inner_m();
        let sub_leaves = leafset(&["a", "c", "d"]);
        let sub_colors = colorset(&["m"]);
        let restricted_tree = tree.restricted_to(&sub_leaves, &sub_colors).unwrap();
        let lhs = tree.explain().restrict(&sub_leaves, &sub_colors).unwrap();
        assert_eq!(restricted_tree.explain(), lhs);
    }

    #[test]
    fn cuts_and_displays() {
        let tree = caterpillar_inner_m();
        let ab_cd = Subsplit::new(
            LeafSubset::from_indices([0, 1]),
            LeafSubset::from_indices([2, 3]),
        )
        .unwrap();
        let ac_bd = Subsplit::new(
            LeafSubset::from_indices([0, 2]),
            LeafSubset::from_indices([1, 3]),
        )
        .unwrap();
        assert!(tree.topology().displays(&ab_cd).unwrap());
        assert!(!tree.topology().displays(&ac_bd).unwrap());
        // trivial subsplits are always displayed
        let trivial = Subsplit::new(
            LeafSubset::from_indices([0]),
            LeafSubset::from_indices([1, 3]),
        )
        .unwrap();
        assert!(tree.topology().displays(&trivial).unwrap());
        // out-of-range leaf index is a validation error
        let stray = Subsplit::new(
            LeafSubset::from_indices([0]),
            LeafSubset::from_indices([9]),
        )
        .unwrap();
        assert!(tree.topology().displays(&stray).is_err());
    }

    #[test]
    fn contraction_drops_edge_label() {
        let tree = caterpillar_inner_m();
        let inner = (0..tree.topology().edges().len())
            .find(|&e| tree.topology().is_inner_edge(e))
            .unwrap();
        let contracted = tree.contract_inner_edge(inner).unwrap();
        assert_eq!(contracted.topology().vertex_count(), 5);
        // the contracted tree is a star and explains the all-∅ map
        assert!(contracted.explain().pairs().all(|(_, _, e)| e.is_empty()));
    }

    #[test]
    fn diameter_and_signature() {
        let tree = caterpillar_inner_m();
        assert_eq!(tree.topology().diameter(), 3);
        let star = Topology::star(leafset(&["a", "b", "c", "d"])).unwrap();
        assert_eq!(star.diameter(), 2);
        assert_ne!(tree.topology().signature(), star.signature());
    }
}
