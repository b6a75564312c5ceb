//! Simple undirected graphs with stable vertex labels.
//!
//! A [`Graph`] is a value: operations like [`Graph::remove_vertices`] return a
//! new graph and keep the labels of the surviving vertices. A vertex set
//! computed in a subgraph is therefore meaningful in every ancestor graph,
//! which the kernelizer relies on when it reports certificates and deletions.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

/// Vertex label. Labels are arbitrary and survive subgraph operations.
pub type Vertex = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} is not a vertex of the graph")]
    UnknownVertex(Vertex),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),
}

/// Sorted set of vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct VertexSet(BTreeSet<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn singleton(v: Vertex) -> Self {
        VertexSet(BTreeSet::from([v]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        self.0.remove(&v)
    }

    /// Smallest label, if any.
    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(vs: [Vertex; N]) -> Self {
        vs.into_iter().collect()
    }
}

impl IntoIterator for VertexSet {
    type Item = Vertex;
    type IntoIter = std::collections::btree_set::IntoIter<Vertex>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Simple undirected graph stored as a sorted adjacency map.
///
/// All iteration orders are derived from sorted vertex labels, so every
/// operation on equal graphs produces identical results.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
    edge_count: usize,
}

impl Graph {
    /// Graph with no vertices.
    pub fn empty() -> Self {
        Graph {
            adj: BTreeMap::new(),
            edge_count: 0,
        }
    }

    /// Graph with vertices labeled `0..n` and the given edges.
    pub fn from_edges(n: u32, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        Self::from_labeled_edges(0..n, edges)
    }

    /// Graph over an explicit label set. Rejects self-loops, duplicate edges
    /// and edges touching labels outside the vertex set.
    pub fn from_labeled_edges(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: &[(Vertex, Vertex)],
    ) -> Result<Self, GraphError> {
        let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> =
            vertices.into_iter().map(|v| (v, BTreeSet::new())).collect();
        let mut edge_count = 0;
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !adj.contains_key(&u) {
                return Err(GraphError::UnknownVertex(u));
            }
            if !adj.contains_key(&v) {
                return Err(GraphError::UnknownVertex(v));
            }
            if !adj.get_mut(&u).unwrap().insert(v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj.get_mut(&v).unwrap().insert(u);
            edge_count += 1;
        }
        Ok(Graph { adj, edge_count })
    }

    /// Complete graph on vertices `0..n`.
    pub fn complete(n: u32) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Self::from_edges(n, &edges).expect("complete graph edges are valid")
    }

    /// Path `0 - 1 - ... - n-1`.
    pub fn path(n: u32) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edges(n, &edges).expect("path edges are valid")
    }

    /// Cycle `0 - 1 - ... - n-1 - 0`. Requires `n >= 3`.
    pub fn cycle(n: u32) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((0, n - 1));
        Self::from_edges(n, &edges).expect("cycle edges are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    /// Vertex labels in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, nbrs)| nbrs.iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|nbrs| nbrs.contains(&v))
    }

    pub fn degree(&self, v: Vertex) -> Result<usize, GraphError> {
        self.adj
            .get(&v)
            .map(|nbrs| nbrs.len())
            .ok_or(GraphError::UnknownVertex(v))
    }

    /// Neighbors of a single vertex.
    pub fn neighbors(&self, v: Vertex) -> Result<impl Iterator<Item = Vertex> + '_, GraphError> {
        self.adj
            .get(&v)
            .map(|nbrs| nbrs.iter().copied())
            .ok_or(GraphError::UnknownVertex(v))
    }

    /// Open neighborhood `N(s)`: vertices outside `s` adjacent to `s`.
    pub fn neighborhood(&self, s: &VertexSet) -> Result<VertexSet, GraphError> {
        let mut out = VertexSet::new();
        for v in s.iter() {
            let nbrs = self.adj.get(&v).ok_or(GraphError::UnknownVertex(v))?;
            for &w in nbrs {
                if !s.contains(w) {
                    out.insert(w);
                }
            }
        }
        Ok(out)
    }

    /// Closed neighborhood `N[s] = N(s) ∪ s`.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> Result<VertexSet, GraphError> {
        Ok(self.neighborhood(s)?.union(s))
    }

    /// Induced subgraph on `V \ s`, keeping labels.
    pub fn remove_vertices(&self, s: &VertexSet) -> Result<Graph, GraphError> {
        for v in s.iter() {
            if !self.contains_vertex(v) {
                return Err(GraphError::UnknownVertex(v));
            }
        }
        let mut adj = BTreeMap::new();
        let mut edge_count = 0;
        for (&u, nbrs) in &self.adj {
            if s.contains(u) {
                continue;
            }
            let kept: BTreeSet<Vertex> = nbrs.iter().copied().filter(|&w| !s.contains(w)).collect();
            edge_count += kept.iter().filter(|&&w| u < w).count();
            adj.insert(u, kept);
        }
        Ok(Graph { adj, edge_count })
    }

    /// Induced subgraph on `s`, keeping labels.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Graph, GraphError> {
        for v in s.iter() {
            if !self.contains_vertex(v) {
                return Err(GraphError::UnknownVertex(v));
            }
        }
        self.remove_vertices(&self.vertex_set().difference(s))
    }

    /// Connected components as induced subgraphs, ordered by smallest label.
    pub fn connected_components(&self) -> Vec<Graph> {
        let mut seen: BTreeSet<Vertex> = BTreeSet::new();
        let mut components = Vec::new();
        for start in self.vertices() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut queue = vec![start];
            seen.insert(start);
            while let Some(v) = queue.pop() {
                comp.insert(v);
                for &w in &self.adj[&v] {
                    if seen.insert(w) {
                        queue.push(w);
                    }
                }
            }
            components.push(
                self.induced_subgraph(&comp)
                    .expect("component vertices come from the graph"),
            );
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// True iff no two vertices of `s` are adjacent.
    pub fn is_independent_set(&self, s: &VertexSet) -> Result<bool, GraphError> {
        for v in s.iter() {
            let nbrs = self.adj.get(&v).ok_or(GraphError::UnknownVertex(v))?;
            if nbrs.iter().any(|&w| s.contains(w)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff `s` touches every edge.
    pub fn is_vertex_cover(&self, s: &VertexSet) -> Result<bool, GraphError> {
        for v in s.iter() {
            if !self.contains_vertex(v) {
                return Err(GraphError::UnknownVertex(v));
            }
        }
        Ok(self.edges().all(|(u, v)| s.contains(u) || s.contains(v)))
    }

    /// True iff the graph has no cycle.
    pub fn is_acyclic(&self) -> bool {
        // Union-find over the edges; a cycle closes when an edge joins two
        // vertices already in one tree.
        let labels: Vec<Vertex> = self.vertices().collect();
        let index: BTreeMap<Vertex, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..labels.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (u, v) in self.edges() {
            let (ru, rv) = (find(&mut parent, index[&u]), find(&mut parent, index[&v]));
            if ru == rv {
                return false;
            }
            parent[ru] = rv;
        }
        true
    }

    /// Two-coloring `(even side, odd side)` by BFS layer parity, or `None` if
    /// some component has an odd cycle. The side containing the smallest
    /// label of each component is the even side.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let mut color: BTreeMap<Vertex, bool> = BTreeMap::new();
        for start in self.vertices() {
            if color.contains_key(&start) {
                continue;
            }
            color.insert(start, false);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let cv = color[&v];
                for &w in &self.adj[&v] {
                    match color.get(&w) {
                        Some(&cw) if cw == cv => return None,
                        Some(_) => {}
                        None => {
                            color.insert(w, !cv);
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        let even = color.iter().filter(|(_, &c)| !c).map(|(&v, _)| v).collect();
        let odd = color.iter().filter(|(_, &c)| c).map(|(&v, _)| v).collect();
        Some((even, odd))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph {{ vertices: {}, edges: {:?} }}",
            self.vertex_set(),
            self.edges().collect::<Vec<_>>()
        )
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Graph", 2)?;
        st.serialize_field("vertices", &self.vertices().collect::<Vec<_>>())?;
        st.serialize_field("edges", &self.edges().collect::<Vec<_>>())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neighborhood_of_path_center() {
        let p3 = Graph::path(3);
        let n = p3.neighborhood(&VertexSet::from([1])).unwrap();
        assert_eq!(n, VertexSet::from([0, 2]));
    }

    #[test]
    fn neighborhood_excludes_the_set_itself() {
        let p3 = Graph::path(3);
        let s = VertexSet::from([0, 1]);
        let n = p3.neighborhood(&s).unwrap();
        assert_eq!(n, VertexSet::from([2]));
        assert!(n.is_disjoint(&s));
    }

    #[test]
    fn neighborhood_rejects_unknown_vertex() {
        let p3 = Graph::path(3);
        let err = p3.neighborhood(&VertexSet::from([7])).unwrap_err();
        assert_eq!(err, GraphError::UnknownVertex(7));
    }

    #[test]
    fn remove_vertex_from_clique_keeps_labels() {
        let k4 = Graph::complete(4);
        let k3 = k4.remove_vertices(&VertexSet::from([0])).unwrap();
        assert_eq!(k3.vertex_set(), VertexSet::from([1, 2, 3]));
        assert_eq!(k3.edge_count(), 3);
        assert!(k3.has_edge(1, 2) && k3.has_edge(1, 3) && k3.has_edge(2, 3));
    }

    #[test]
    fn remove_opposite_cycle_vertices_isolates_the_rest() {
        let c4 = Graph::cycle(4);
        let rest = c4.remove_vertices(&VertexSet::from([0, 2])).unwrap();
        assert_eq!(rest.vertex_set(), VertexSet::from([1, 3]));
        assert_eq!(rest.edge_count(), 0);
    }

    #[test]
    fn components_are_ordered_by_smallest_label() {
        // Edges: 5-6 and 0-1, plus isolated 3.
        let g = Graph::from_labeled_edges([0, 1, 3, 5, 6], &[(5, 6), (0, 1)]).unwrap();
        let comps = g.connected_components();
        let mins: Vec<_> = comps.iter().map(|c| c.vertex_set().first().unwrap()).collect();
        assert_eq!(mins, vec![0, 3, 5]);
        assert_eq!(comps[2].edge_count(), 1);
    }

    #[test]
    fn components_partition_the_vertices() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (4, 5)]).unwrap();
        let comps = g.connected_components();
        let mut all = VertexSet::new();
        let mut total = 0;
        for c in &comps {
            assert!(c.is_connected());
            assert!(all.is_disjoint(&c.vertex_set()));
            all = all.union(&c.vertex_set());
            total += c.vertex_count();
        }
        assert_eq!(all, g.vertex_set());
        assert_eq!(total, g.vertex_count());
    }

    #[test]
    fn independence_checks() {
        let p3 = Graph::path(3);
        assert!(p3.is_independent_set(&VertexSet::from([0, 2])).unwrap());
        assert!(!p3.is_independent_set(&VertexSet::from([0, 1])).unwrap());
        assert!(p3.is_independent_set(&VertexSet::new()).unwrap());
    }

    #[test]
    fn duplicate_and_loop_edges_are_rejected() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        assert_eq!(Graph::from_edges(3, &[(2, 2)]).unwrap_err(), GraphError::SelfLoop(2));
        assert_eq!(
            Graph::from_edges(3, &[(0, 5)]).unwrap_err(),
            GraphError::UnknownVertex(5)
        );
    }

    #[test]
    fn acyclicity_and_bipartiteness() {
        assert!(Graph::path(5).is_acyclic());
        assert!(!Graph::cycle(4).is_acyclic());
        assert!(Graph::cycle(4).is_bipartite());
        assert!(!Graph::cycle(5).is_bipartite());
        let (even, odd) = Graph::path(3).bipartition().unwrap();
        assert_eq!(even, VertexSet::from([0, 2]));
        assert_eq!(odd, VertexSet::from([1]));
    }

    #[test]
    fn vertex_cover_check() {
        let k4 = Graph::complete(4);
        assert!(k4.is_vertex_cover(&VertexSet::from([0, 1, 2])).unwrap());
        assert!(!k4.is_vertex_cover(&VertexSet::from([0, 1])).unwrap());
    }
}
