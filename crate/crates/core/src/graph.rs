//! Simple undirected graphs on dense vertex ids, vertex orderings, and the
//! distance primitives everything else is built on.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use fixedbitset::FixedBitSet;

use crate::{Error, Result};

pub type Vertex = usize;

/// A simple undirected graph with vertices `0..n`.
///
/// Adjacency lists are sorted and symmetric; there are no loops or parallel
/// edges. Edges are indexed in lexicographic order of `(u, v)` with `u < v`,
/// which is the order [`Graph::edges`] yields them in.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    // edge_offset[u] = number of edges (a, b), a < b, with a < u
    edge_offset: Vec<usize>,
    m: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted_adjacency(vec![Vec::new(); n])
    }

    /// Builds a graph from an edge list. Repeated edges collapse to one.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_sorted_adjacency(adj))
    }

    fn from_sorted_adjacency(adj: Vec<Vec<Vertex>>) -> Self {
        let mut edge_offset = Vec::with_capacity(adj.len() + 1);
        let mut m = 0;
        for (u, list) in adj.iter().enumerate() {
            edge_offset.push(m);
            m += list.iter().filter(|&&v| v > u).count();
        }
        edge_offset.push(m);
        Graph { adj, edge_offset, m }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> core::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Δ(G); zero for the empty and edgeless graphs.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Position of edge `{u, v}` in [`Graph::edges`] order.
    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        if b >= self.n() || a == b {
            return None;
        }
        let list = &self.adj[a];
        let first_higher = list.partition_point(|&x| x < a);
        let at = list.binary_search(&b).ok()?;
        Some(self.edge_offset[a] + at - first_higher)
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        n == 0 || self.m == n * (n - 1) / 2
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// their smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Number of edges with both ends in `set`.
    pub fn edges_within(&self, set: &VertexSet) -> usize {
        set.iter().map(|u| self.adj[u].iter().filter(|&&v| v > u && set.contains(v)).count()).sum()
    }

    /// The subgraph induced by `keep`, relabelled to `0..|keep|` in
    /// ascending order. Also returns the new-to-old label map.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> (Graph, Vec<Vertex>) {
        let old: Vec<Vertex> = keep.iter().collect();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i;
        }
        let adj = old
            .iter()
            .map(|&v| self.adj[v].iter().filter(|&&w| new_id[w] != usize::MAX).map(|&w| new_id[w]).collect())
            .collect();
        (Self::from_sorted_adjacency(adj), old)
    }

    /// Adjacency rows as bitmasks; only for graphs with at most 64 vertices.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.n() > 64 {
            return None;
        }
        Some(self.adj.iter().map(|list| list.iter().fold(0u64, |acc, &v| acc | (1 << v))).collect())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Graph distance; unreachable pairs are an explicit variant so there is no
/// arithmetic on a stand-in "large" number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Distance {
    Finite(usize),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }

    pub fn is_within(self, k: usize) -> bool {
        matches!(self, Distance::Finite(d) if d <= k)
    }
}

/// Distances from `v` to every vertex.
pub fn bfs_distances(g: &Graph, v: Vertex) -> Result<Vec<Distance>> {
    g.check_vertex(v)?;
    Ok(bfs_limited(g, v, usize::MAX, None)
        .into_iter()
        .map(|d| d.map_or(Distance::Unreachable, Distance::Finite))
        .collect())
}

/// BFS from `src` up to `max_depth`, optionally confined to `allowed`
/// (which must contain `src`). Vertices not reached are `None`.
pub(crate) fn bfs_limited(
    g: &Graph,
    src: Vertex,
    max_depth: usize,
    allowed: Option<&FixedBitSet>,
) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(x) = queue.pop_front() {
        let d = dist[x].unwrap_or(0);
        if d == max_depth {
            continue;
        }
        for &y in g.neighbors(x) {
            if dist[y].is_none() && allowed.is_none_or(|a| a.contains(y)) {
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// `N^k(v)`: the vertices at distance exactly `k` from `v`.
pub fn kth_open_neighborhood(g: &Graph, v: Vertex, k: usize) -> Result<VertexSet> {
    g.check_vertex(v)?;
    if k == 0 {
        return Err(Error::InvalidParameter("neighborhood radius must be positive".into()));
    }
    let dist = bfs_limited(g, v, k, None);
    Ok(VertexSet::from_iter(g.n(), dist.iter().enumerate().filter(|(_, d)| **d == Some(k)).map(|(w, _)| w)))
}

/// A set of vertices of a host graph on `universe` vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet(FixedBitSet);

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet(FixedBitSet::with_capacity(universe))
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        VertexSet(bits)
    }

    pub fn from_iter<I: IntoIterator<Item = Vertex>>(universe: usize, items: I) -> Self {
        let mut set = Self::new(universe);
        for v in items {
            set.insert(v);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        !self.0.put(v)
    }

    pub fn remove(&mut self, v: Vertex) {
        self.0.set(v, false);
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(v)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.ones()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.0.union_with(&other.0);
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// A total order on the vertices: a bijection between vertices and ranks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexOrdering {
    order: Vec<Vertex>,
    position: Vec<usize>,
}

impl VertexOrdering {
    /// Ranks by ascending vertex id.
    pub fn identity(n: usize) -> Self {
        VertexOrdering { order: (0..n).collect(), position: (0..n).collect() }
    }

    /// `sequence[r]` is the vertex of rank `r`.
    pub fn from_sequence(sequence: Vec<Vertex>) -> Result<Self> {
        let n = sequence.len();
        let mut position = vec![usize::MAX; n];
        for (rank, &v) in sequence.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(Error::NotAPermutation(n));
            }
            position[v] = rank;
        }
        Ok(VertexOrdering { order: sequence, position })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn position(&self, v: Vertex) -> usize {
        self.position[v]
    }

    pub fn vertex_at(&self, rank: usize) -> Vertex {
        self.order[rank]
    }

    /// Vertices in rank order.
    pub fn as_slice(&self) -> &[Vertex] {
        &self.order
    }

    /// `a <_σ b`.
    pub fn precedes(&self, a: Vertex, b: Vertex) -> bool {
        self.position[a] < self.position[b]
    }

    pub fn check_matches(&self, g: &Graph) -> Result<()> {
        if self.len() == g.n() {
            Ok(())
        } else {
            Err(Error::NotAPermutation(g.n()))
        }
    }
}

impl fmt::Debug for VertexOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.order).finish()
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for VertexOrdering {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        self.order.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn duplicates_collapse_and_loops_are_rejected() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(Graph::from_edges(3, [(0, 3)]), Err(Error::VertexOutOfRange { vertex: 3, n: 3 }));
    }

    #[test]
    fn edge_index_matches_edge_order() {
        let g = Graph::from_edges(5, [(0, 1), (0, 4), (1, 2), (2, 4), (3, 4), (1, 3)]).unwrap();
        for (i, (u, v)) in g.edges().enumerate() {
            assert_eq!(g.edge_index(u, v), Some(i));
            assert_eq!(g.edge_index(v, u), Some(i));
        }
        assert_eq!(g.edge_index(0, 2), None);
    }

    #[test]
    fn distances_on_small_graphs() {
        let p = path(3);
        assert_eq!(bfs_distances(&p, 0).unwrap(), [Distance::Finite(0), Distance::Finite(1), Distance::Finite(2)]);
        let k3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(bfs_distances(&k3, 1).unwrap(), [Distance::Finite(1), Distance::Finite(0), Distance::Finite(1)]);
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let d = bfs_distances(&two, 0).unwrap();
        assert_eq!(d[2], Distance::Unreachable);
        assert_eq!(d[3], Distance::Unreachable);
        assert!(bfs_distances(&two, 4).is_err());
    }

    #[test]
    fn open_neighborhoods() {
        assert_eq!(kth_open_neighborhood(&path(5), 2, 2).unwrap().to_vec(), [0, 4]);
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(kth_open_neighborhood(&k4, 3, 2).unwrap().is_empty());
        // complete 3-ary tree of height 2: root 0, children 1..=3, each with two leaves
        let tree =
            Graph::from_edges(10, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (2, 7), (3, 8), (3, 9)]).unwrap();
        assert_eq!(kth_open_neighborhood(&tree, 0, 2).unwrap().to_vec(), [4, 5, 6, 7, 8, 9]);
        assert_eq!(kth_open_neighborhood(&tree, 0, 1).unwrap().to_vec(), tree.neighbors(0));
    }

    #[test]
    fn orderings_must_be_permutations() {
        assert!(VertexOrdering::from_sequence(vec![0, 2, 1]).is_ok());
        assert!(VertexOrdering::from_sequence(vec![0, 0, 1]).is_err());
        assert!(VertexOrdering::from_sequence(vec![0, 3, 1]).is_err());
        let s = VertexOrdering::from_sequence(vec![2, 0, 1]).unwrap();
        assert_eq!(s.position(2), 0);
        assert!(s.precedes(0, 1));
        assert!(s.precedes(2, 0));
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = path(5);
        let keep = VertexSet::from_iter(5, [1, 2, 4]);
        let (h, map) = g.induced_subgraph(&keep);
        assert_eq!(map, [1, 2, 4]);
        assert_eq!(h.edges().collect::<Vec<_>>(), [(0, 1)]);
        assert_eq!(g.edges_within(&keep), 1);
    }
}
