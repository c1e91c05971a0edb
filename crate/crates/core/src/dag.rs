//! Directed acyclic graphs with cached reachability, clusters and least
//! common ancestors.
//!
//! An edge `(u, v)` points from ancestor to descendant, so `v ⪯ u`. The
//! order `⪯` is reflexive. Leaves are the vertices without outgoing edges;
//! they are indexed by sorted label, which fixes the bit layout of every
//! [`LeafSet`] of the graph.

use std::fmt;
use std::sync::Arc;

use crate::bitset::{BitSet, LeafSet, VertexSet};
use crate::error::{Error, Result};
use crate::set_system::{GroundSet, SetSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(usize);

impl Vertex {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Outcome of an lca query: defined, or undefined for one of two reasons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lca {
    Unique(Vertex),
    NoCommonAncestor,
    /// Two or more ⪯-minimal common ancestors.
    Ambiguous(VertexSet),
}

impl Lca {
    pub fn vertex(&self) -> Option<Vertex> {
        match self {
            Lca::Unique(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, Lca::Unique(_))
    }
}

#[derive(Clone)]
pub struct Dag {
    labels: Arc<[String]>,
    by_label: Vec<usize>,
    edges: Vec<(usize, usize)>,
    in_degree: Vec<usize>,
    out_degree: Vec<usize>,
    topo: Vec<usize>,
    desc: Vec<VertexSet>,
    anc: Vec<VertexSet>,
    leaves: Vec<Vertex>,
    leaf_pos: Vec<usize>,
    leaf_ground: GroundSet,
    clusters: Vec<LeafSet>,
}

const NOT_A_LEAF: usize = usize::MAX;

impl Dag {
    /// Builds and validates a DAG from declared labels and labeled edges.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let labels: Arc<[String]> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let by_label = sorted_labels(&labels)?;
        let find = |l: &str| -> Result<usize> {
            by_label
                .binary_search_by(|&i| labels[i].as_str().cmp(l))
                .map(|p| by_label[p])
                .map_err(|_| Error::UnknownVertex(l.to_string()))
        };
        let idx_edges = edges
            .iter()
            .map(|(p, c)| Ok((find(p.as_ref())?, find(c.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::build(labels, by_label, idx_edges)
    }

    /// Builds a DAG over `labels` from edges given as vertex positions.
    pub fn from_parts(labels: Arc<[String]>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let by_label = sorted_labels(&labels)?;
        if let Some(&(p, c)) = edges
            .iter()
            .find(|(p, c)| *p >= labels.len() || *c >= labels.len())
        {
            return Err(Error::UnknownVertex(format!("#{}", p.max(c))));
        }
        Self::build(labels, by_label, edges)
    }

    fn build(
        labels: Arc<[String]>,
        by_label: Vec<usize>,
        mut edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let n = labels.len();
        if let Some(&(v, _)) = edges.iter().find(|(p, c)| p == c) {
            return Err(Error::CycleDetected(vec![
                labels[v].clone(),
                labels[v].clone(),
            ]));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            let (p, c) = w[0];
            return Err(Error::DuplicateEdge(labels[p].clone(), labels[c].clone()));
        }

        let mut in_degree = vec![0usize; n];
        let mut out_degree = vec![0usize; n];
        let mut child_start = vec![0usize; n + 1];
        for &(p, c) in &edges {
            out_degree[p] += 1;
            in_degree[c] += 1;
        }
        for v in 0..n {
            child_start[v + 1] = child_start[v] + out_degree[v];
        }
        let children = |v: usize| {
            edges[child_start[v]..child_start[v + 1]]
                .iter()
                .map(|&(_, c)| c)
        };

        // Kahn, seeded in declaration order.
        let mut remaining = in_degree.clone();
        let mut topo: Vec<usize> = (0..n).filter(|&v| remaining[v] == 0).collect();
        let mut head = 0;
        while head < topo.len() {
            let v = topo[head];
            head += 1;
            for c in children(v) {
                remaining[c] -= 1;
                if remaining[c] == 0 {
                    topo.push(c);
                }
            }
        }
        if topo.len() < n {
            return Err(Error::CycleDetected(find_cycle(
                &labels, &edges, &remaining,
            )));
        }

        let mut desc: Vec<VertexSet> = vec![BitSet::new(n); n];
        for &v in topo.iter().rev() {
            let mut d = BitSet::singleton(n, v);
            for c in children(v) {
                d.union_with(&desc[c]);
            }
            desc[v] = d;
        }
        let mut anc: Vec<VertexSet> = vec![BitSet::new(n); n];
        for (v, d) in desc.iter().enumerate() {
            for w in d.iter() {
                anc[w].insert(v);
            }
        }

        let leaves: Vec<Vertex> = by_label
            .iter()
            .copied()
            .filter(|&v| out_degree[v] == 0)
            .map(Vertex)
            .collect();
        let mut leaf_pos = vec![NOT_A_LEAF; n];
        for (i, l) in leaves.iter().enumerate() {
            leaf_pos[l.0] = i;
        }
        let leaf_labels: Arc<[String]> = leaves.iter().map(|l| labels[l.0].clone()).collect();
        let leaf_ground = GroundSet::from_sorted(leaf_labels);
        let nl = leaves.len();
        let mut clusters: Vec<LeafSet> = vec![BitSet::new(nl); n];
        for &v in topo.iter().rev() {
            if leaf_pos[v] != NOT_A_LEAF {
                clusters[v] = BitSet::singleton(nl, leaf_pos[v]);
            } else {
                let mut c = BitSet::new(nl);
                for ch in children(v) {
                    c.union_with(&clusters[ch]);
                }
                clusters[v] = c;
            }
        }

        Ok(Dag {
            labels,
            by_label,
            edges,
            in_degree,
            out_degree,
            topo,
            desc,
            anc,
            leaves,
            leaf_pos,
            leaf_ground,
            clusters,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.len()).map(Vertex)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v.0]
    }

    pub fn vertex(&self, label: &str) -> Result<Vertex> {
        self.by_label
            .binary_search_by(|&i| self.labels[i].as_str().cmp(label))
            .map(|p| Vertex(self.by_label[p]))
            .map_err(|_| Error::UnknownVertex(label.to_string()))
    }

    /// Edges as `(parent, child)` pairs, sorted by position.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().map(|&(p, c)| (Vertex(p), Vertex(c)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn children(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let start = self.edges.partition_point(|&(p, _)| p < v.0);
        self.edges[start..]
            .iter()
            .take_while(move |&&(p, _)| p == v.0)
            .map(|&(_, c)| Vertex(c))
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_degree[v.0]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_degree[v.0]
    }

    /// A topological order (ancestors before descendants).
    pub fn topological_order(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.topo.iter().map(|&v| Vertex(v))
    }

    /// The leaves in canonical (sorted label) order.
    pub fn leaves(&self) -> &[Vertex] {
        &self.leaves
    }

    /// Ground set of leaf labels; indexes every cluster and leaf subset.
    pub fn leaf_ground(&self) -> &GroundSet {
        &self.leaf_ground
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn leaf_position(&self, v: Vertex) -> Option<usize> {
        let p = self.leaf_pos[v.0];
        (p != NOT_A_LEAF).then_some(p)
    }

    pub fn leaf(&self, position: usize) -> Vertex {
        self.leaves[position]
    }

    pub fn all_leaves(&self) -> LeafSet {
        self.leaf_ground.full()
    }

    /// Converts leaf labels to a leaf subset.
    pub fn leaf_set<S: AsRef<str>>(&self, labels: &[S]) -> Result<LeafSet> {
        let mut set = BitSet::new(self.leaf_count());
        for l in labels {
            let v = self.vertex(l.as_ref())?;
            let p = self
                .leaf_position(v)
                .ok_or_else(|| Error::NotALeaf(l.as_ref().to_string()))?;
            set.insert(p);
        }
        Ok(set)
    }

    pub fn vertex_set<S: AsRef<str>>(&self, labels: &[S]) -> Result<VertexSet> {
        let mut set = BitSet::new(self.len());
        for l in labels {
            set.insert(self.vertex(l.as_ref())?.0);
        }
        Ok(set)
    }

    /// Vertex labels of `set`, in declaration order.
    pub fn vertex_names(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|v| self.labels[v].clone()).collect()
    }

    /// Leaf labels of `set`, sorted.
    pub fn leaf_names(&self, set: &LeafSet) -> Vec<String> {
        self.leaf_ground.names(set)
    }

    /// `v ⪯ w`: there is a directed path from `w` to `v` (or `v = w`).
    pub fn precedes(&self, v: Vertex, w: Vertex) -> bool {
        self.desc[w.0].contains(v.0)
    }

    pub fn is_comparable(&self, u: Vertex, v: Vertex) -> bool {
        self.precedes(u, v) || self.precedes(v, u)
    }

    pub fn descendants(&self, v: Vertex) -> &VertexSet {
        &self.desc[v.0]
    }

    /// `Anc(v)`, including `v` itself.
    pub fn ancestors(&self, v: Vertex) -> &VertexSet {
        &self.anc[v.0]
    }

    /// `C(v)`: the leaves below `v`.
    pub fn cluster(&self, v: Vertex) -> &LeafSet {
        &self.clusters[v.0]
    }

    pub fn clusters(&self) -> &[LeafSet] {
        &self.clusters
    }

    /// The deduplicated family of all clusters over the leaf set.
    pub fn cluster_system(&self) -> SetSystem {
        SetSystem::from_members(self.leaf_ground.clone(), self.clusters.clone())
    }

    /// Common ancestors of a non-empty vertex set.
    pub fn common_ancestors(&self, ys: &VertexSet) -> Result<VertexSet> {
        let mut it = ys.iter();
        let first = it.next().ok_or(Error::EmptyQuery)?;
        let mut out = self.anc[first].clone();
        for y in it {
            out.intersect_with(&self.anc[y]);
        }
        Ok(out)
    }

    /// The ⪯-minimal elements of `set`.
    pub fn minimal_elements(&self, set: &VertexSet) -> VertexSet {
        let mut out = BitSet::new(self.len());
        for w in set.iter() {
            if self.desc[w].iter().all(|d| d == w || !set.contains(d)) {
                out.insert(w);
            }
        }
        out
    }

    /// `LCA(Y)`; empty iff `Y` has no common ancestor.
    pub fn lca_set(&self, ys: &VertexSet) -> Result<VertexSet> {
        Ok(self.minimal_elements(&self.common_ancestors(ys)?))
    }

    pub fn unique_lca(&self, ys: &VertexSet) -> Result<Lca> {
        Ok(self.classify(self.lca_set(ys)?))
    }

    /// Common ancestors of a leaf subset: the vertices whose cluster
    /// contains it. For the empty subset this is every vertex.
    pub fn common_ancestors_of_leaves(&self, a: &LeafSet) -> VertexSet {
        let mut out = BitSet::new(self.len());
        for (v, c) in self.clusters.iter().enumerate() {
            if a.is_subset(c) {
                out.insert(v);
            }
        }
        out
    }

    pub fn lca_set_of_leaves(&self, a: &LeafSet) -> VertexSet {
        self.minimal_elements(&self.common_ancestors_of_leaves(a))
    }

    pub fn lca_of_leaves(&self, a: &LeafSet) -> Lca {
        self.classify(self.lca_set_of_leaves(a))
    }

    fn classify(&self, set: VertexSet) -> Lca {
        match set.len() {
            0 => Lca::NoCommonAncestor,
            1 => Lca::Unique(Vertex(set.first().unwrap())),
            _ => Lca::Ambiguous(set),
        }
    }

    /// Vertices with in-degree 0.
    pub fn roots(&self) -> Vec<Vertex> {
        self.vertices()
            .filter(|&v| self.in_degree[v.0] == 0)
            .collect()
    }

    /// A network has exactly one vertex of in-degree 0.
    pub fn is_network(&self) -> bool {
        self.in_degree.iter().filter(|&&d| d == 0).count() == 1
    }
}

impl PartialEq for Dag {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.edges == other.edges
    }
}

impl Eq for Dag {}

impl fmt::Debug for Dag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|&(p, c)| format!("{}->{}", self.labels[p], self.labels[c]))
            .collect();
        write!(
            f,
            "Dag {{ vertices: {:?}, edges: [{}] }}",
            self.labels,
            edges.join(", ")
        )
    }
}

fn sorted_labels(labels: &[String]) -> Result<Vec<usize>> {
    if labels.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if labels.iter().any(|l| l.is_empty()) {
        return Err(Error::EmptyLabel);
    }
    let mut by_label: Vec<usize> = (0..labels.len()).collect();
    by_label.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
    if let Some(w) = by_label.windows(2).find(|w| labels[w[0]] == labels[w[1]]) {
        return Err(Error::DuplicateLabel(labels[w[0]].clone()));
    }
    Ok(by_label)
}

/// Every vertex left over by Kahn's algorithm has a parent that is also
/// left over, so walking parents must revisit a vertex.
fn find_cycle(labels: &[String], edges: &[(usize, usize)], remaining: &[usize]) -> Vec<String> {
    let n = labels.len();
    let start = (0..n).find(|&v| remaining[v] > 0).expect("cycle exists");
    let parent_of = |v: usize| {
        edges
            .iter()
            .find(|&&(p, c)| c == v && remaining[p] > 0)
            .map(|&(p, _)| p)
            .expect("leftover vertex has a leftover parent")
    };
    let mut seen = vec![usize::MAX; n];
    let mut walk = Vec::new();
    let mut v = start;
    while seen[v] == usize::MAX {
        seen[v] = walk.len();
        walk.push(v);
        v = parent_of(v);
    }
    let mut cycle: Vec<usize> = walk[seen[v]..].to_vec();
    cycle.reverse();
    cycle.push(cycle[0]);
    cycle.into_iter().map(|v| labels[v].clone()).collect()
}
