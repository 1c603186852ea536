//! Maximum average degree and the orientations that match it.
//!
//! `mad(G)` is found exactly with a densest-subgraph max-flow. The two
//! orientations are then produced by excess pushing: start from any
//! assignment on the weight grid `{k/n}`, and while a vertex carries more
//! out-weight than the target, walk forward along positively weighted arcs
//! to a vertex below target and shift weight back along that path. The
//! vertices reachable this way induce a subgraph whose density is at most
//! the target, so such an under-loaded vertex always exists.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::flow::{FlowNetwork, INF};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::{Error, Rational, Result};

/// Result of [`max_average_degree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensestSubgraph {
    /// `max 2‖H‖/|H|` over nonempty subgraphs.
    pub mad: Rational,
    /// Vertex set inducing a subgraph that attains `mad`.
    pub witness: VertexSet,
}

impl DensestSubgraph {
    /// Edges of the witness subgraph; `mad = 2 * witness_edges / |witness|`.
    pub fn witness_edges(&self) -> i128 {
        *(self.mad * Rational::from_integer(self.witness.len() as i128) / 2).numer()
    }
}

/// Maximizes `b·‖G[T]‖ − a·|T|` over vertex sets `T` as a closure problem.
fn best_closure(g: &Graph, a: i64, b: i64) -> (i64, VertexSet) {
    let (n, m) = (g.n(), g.m());
    let (s, t) = (0, 1);
    let edge_node = |i: usize| 2 + i;
    let vertex_node = |v: usize| 2 + m + v;
    let mut net = FlowNetwork::new(2 + m + n);
    for (i, (u, v)) in g.edges().enumerate() {
        net.add_arc(s, edge_node(i), b);
        net.add_arc(edge_node(i), vertex_node(u), INF);
        net.add_arc(edge_node(i), vertex_node(v), INF);
    }
    for v in g.vertices() {
        net.add_arc(vertex_node(v), t, a);
    }
    let cut = net.max_flow(s, t);
    let side = net.source_side(s);
    let set = VertexSet::from_iter(n, g.vertices().filter(|&v| side[vertex_node(v)]));
    (b * m as i64 - cut, set)
}

/// Exact `mad(G)` together with a vertex set attaining it.
///
/// Starting from the density of the whole graph, each round asks the flow
/// network for a set strictly denser than the current one; the sequence of
/// densities is strictly increasing over a finite set of fractions, and the
/// round that finds nothing certifies optimality.
pub fn max_average_degree(g: &Graph) -> Result<DensestSubgraph> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if g.m() == 0 {
        return Ok(DensestSubgraph { mad: Rational::zero(), witness: VertexSet::from_iter(n, [0]) });
    }
    let mut witness = VertexSet::full(n);
    let (mut edges, mut size) = (g.m() as i64, n as i64);
    loop {
        let (gain, better) = best_closure(g, edges, size);
        if gain <= 0 {
            break;
        }
        edges = g.edges_within(&better) as i64;
        size = better.len() as i64;
        witness = better;
    }
    Ok(DensestSubgraph { mad: Rational::new(2 * edges as i128, size as i128), witness })
}

/// `⌈mad/2⌉`, the least possible maximum out-degree (Hakimi).
pub fn ceil_half(mad: &Rational) -> i128 {
    (mad / Rational::from_integer(2)).ceil().to_integer()
}

/// An orientation: each edge of the base graph directed exactly one way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    // (tail, head), aligned with Graph::edges order
    arcs: Vec<(Vertex, Vertex)>,
    out: Vec<Vec<Vertex>>,
    inn: Vec<Vec<Vertex>>,
}

impl Orientation {
    /// `forward[i]` orients the `i`-th edge `(u, v)`, `u < v`, as `u → v`.
    pub fn from_directions(g: &Graph, forward: &[bool]) -> Result<Self> {
        if forward.len() != g.m() {
            return Err(Error::OrientationMismatch(format!("{} directions for {} edges", forward.len(), g.m())));
        }
        let arcs = g.edges().zip(forward).map(|((u, v), &f)| if f { (u, v) } else { (v, u) }).collect();
        Ok(Self::build(g.n(), arcs))
    }

    /// From `(tail, head)` pairs covering every edge exactly once.
    pub fn from_arcs<I>(g: &Graph, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut slots: Vec<Option<(Vertex, Vertex)>> = vec![None; g.m()];
        for (a, b) in arcs {
            let i = g.edge_index(a, b).ok_or_else(|| Error::OrientationMismatch(format!("{a}→{b} is not an edge")))?;
            if slots[i].replace((a, b)).is_some() {
                return Err(Error::OrientationMismatch(format!("edge {{{a},{b}}} oriented twice")));
            }
        }
        let arcs = slots
            .into_iter()
            .zip(g.edges())
            .map(|(s, (u, v))| s.ok_or_else(|| Error::OrientationMismatch(format!("edge {{{u},{v}}} unoriented"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::build(g.n(), arcs))
    }

    fn build(n: usize, arcs: Vec<(Vertex, Vertex)>) -> Self {
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(a, b) in &arcs {
            out[a].push(b);
            inn[b].push(a);
        }
        for list in out.iter_mut().chain(inn.iter_mut()) {
            list.sort_unstable();
        }
        Orientation { arcs, out, inn }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    /// `(tail, head)` per edge, in the base graph's edge order.
    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.inn[v]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out[v].len()
    }

    /// Δ⁺; zero when there are no vertices.
    pub fn max_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_arc(&self, tail: Vertex, head: Vertex) -> bool {
        self.out[tail].binary_search(&head).is_ok()
    }

    /// True iff this orients exactly the edges of `g`.
    pub fn orients(&self, g: &Graph) -> bool {
        self.n() == g.n()
            && self.arcs.len() == g.m()
            && self.arcs.iter().zip(g.edges()).all(|(&(a, b), (u, v))| (a, b) == (u, v) || (a, b) == (v, u))
    }
}

/// Nonnegative weights on both directions of each edge, summing to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakOrientation {
    edges: Vec<(Vertex, Vertex)>,
    // (w(u→v), w(v→u)) for edges[i] = (u, v)
    weights: Vec<(Rational, Rational)>,
    out_weight: Vec<Rational>,
}

impl WeakOrientation {
    /// `weights[i]` is `(w(u→v), w(v→u))` for the `i`-th edge `(u, v)` of `g`.
    pub fn new(g: &Graph, weights: Vec<(Rational, Rational)>) -> Result<Self> {
        if weights.len() != g.m() {
            return Err(Error::OrientationMismatch(format!("{} weight pairs for {} edges", weights.len(), g.m())));
        }
        let edges: Vec<_> = g.edges().collect();
        let mut out_weight = vec![Rational::zero(); g.n()];
        for (&(u, v), (a, b)) in edges.iter().zip(&weights) {
            if *a < Rational::zero() || *b < Rational::zero() || a + b != Rational::from_integer(1) {
                return Err(Error::OrientationMismatch(format!("weights on {{{u},{v}}} are ({a}, {b})")));
            }
            out_weight[u] += a;
            out_weight[v] += b;
        }
        Ok(WeakOrientation { edges, weights, out_weight })
    }

    /// The 0/1 weighting of an ordinary orientation.
    pub fn from_orientation(g: &Graph, o: &Orientation) -> Result<Self> {
        let one = Rational::from_integer(1);
        let zero = Rational::zero();
        let weights = g
            .edges()
            .zip(o.arcs())
            .map(|((u, _), &(tail, _))| if tail == u { (one, zero) } else { (zero, one) })
            .collect();
        Self::new(g, weights)
    }

    /// `(u, v, w(u→v), w(v→u))` for each edge, `u < v`.
    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Vertex, Rational, Rational)> + '_ {
        self.edges.iter().zip(&self.weights).map(|(&(u, v), &(a, b))| (u, v, a, b))
    }

    pub fn n(&self) -> usize {
        self.out_weight.len()
    }

    /// `w(tail → head)`, if `{tail, head}` is an edge.
    pub fn weight(&self, tail: Vertex, head: Vertex) -> Option<Rational> {
        let key = if tail < head { (tail, head) } else { (head, tail) };
        let i = self.edges.binary_search(&key).ok()?;
        let (a, b) = self.weights[i];
        Some(if tail < head { a } else { b })
    }

    /// `w⁺(v)`.
    pub fn out_weight(&self, v: Vertex) -> Rational {
        self.out_weight[v]
    }

    /// `(Δ⁺_w, a vertex attaining it)`; `(0, 0)` without vertices.
    pub fn max_out_weight(&self) -> (Rational, Vertex) {
        let mut best = (Rational::zero(), 0);
        for (v, w) in self.out_weight.iter().enumerate() {
            if *w > best.0 {
                best = (*w, v);
            }
        }
        best
    }
}

/// Excess pushing on the weight grid `{k/denom}`.
///
/// `units[i]` is `denom · w(u→v)` for the `i`-th edge `(u, v)`. On return
/// every out-weight is at most `target / denom`. Paths are found by BFS that
/// scans neighbors in ascending id order; the first under-loaded vertex
/// discovered is the path's end. Several grid steps may be shifted along one
/// path at once: as many as the path, the source excess and the end's slack
/// allow.
fn push_excess(g: &Graph, denom: i64, target: i64, units: &mut [i64]) -> Result<usize> {
    let n = g.n();
    let mut out = vec![0i64; n];
    for (i, (u, v)) in g.edges().enumerate() {
        out[u] += units[i];
        out[v] += denom - units[i];
    }
    // forward weight of a → b in grid units
    let forward = |units: &[i64], a: Vertex, b: Vertex| -> (usize, i64) {
        let i = g.edge_index(a, b).unwrap_or(0);
        (i, if a < b { units[i] } else { denom - units[i] })
    };
    let mut pushes = 0;
    let mut parent = vec![usize::MAX; n];
    while let Some(x) = (0..n).find(|&v| out[v] > target) {
        parent.fill(usize::MAX);
        parent[x] = x;
        let mut queue = VecDeque::from([x]);
        let mut end = None;
        'search: while let Some(a) = queue.pop_front() {
            for &b in g.neighbors(a) {
                if parent[b] == usize::MAX && forward(units, a, b).1 > 0 {
                    parent[b] = a;
                    if out[b] < target {
                        end = Some(b);
                        break 'search;
                    }
                    queue.push_back(b);
                }
            }
        }
        let end = end.ok_or_else(|| Error::Consistency(format!("no under-loaded vertex reachable from {x}")))?;
        let mut path = vec![end];
        while *path.last().unwrap_or(&x) != x {
            let last = path[path.len() - 1];
            path.push(parent[last]);
        }
        path.reverse();
        let mut delta = (out[x] - target).min(target - out[end]);
        for w in path.windows(2) {
            delta = delta.min(forward(units, w[0], w[1]).1);
        }
        for w in path.windows(2) {
            let (i, _) = forward(units, w[0], w[1]);
            units[i] += if w[0] < w[1] { -delta } else { delta };
        }
        out[x] -= delta;
        out[end] += delta;
        pushes += 1;
    }
    Ok(pushes)
}

/// A weak orientation with `2·Δ⁺_w = mad(G)`, all weights multiples of
/// `1/|H|` for the densest subgraph `H` found by [`max_average_degree`].
pub fn min_weak_orientation(g: &Graph) -> Result<WeakOrientation> {
    if g.m() == 0 {
        return WeakOrientation::new(g, Vec::new());
    }
    let dense = max_average_degree(g)?;
    let denom = dense.witness.len() as i64;
    let target = dense.witness_edges() as i64;
    let mut units = vec![denom; g.m()];
    push_excess(g, denom, target, &mut units)?;
    let weights = units
        .iter()
        .map(|&k| {
            let d = denom as i128;
            (Rational::new(k as i128, d), Rational::new(d - k as i128, d))
        })
        .collect();
    WeakOrientation::new(g, weights)
}

/// An orientation with the least possible maximum out-degree, `⌈mad/2⌉`.
///
/// This is excess pushing with unit weights and target `⌈mad/2⌉`: reversing
/// a directed path from an overloaded vertex to an under-loaded one.
pub fn min_outdegree_orientation(g: &Graph) -> Result<Orientation> {
    if g.m() == 0 {
        return Orientation::from_directions(g, &[]);
    }
    let dense = max_average_degree(g)?;
    let target = ceil_half(&dense.mad).to_i64().ok_or(Error::Overflow("out-degree target"))?;
    let mut units = vec![1; g.m()];
    push_excess(g, 1, target, &mut units)?;
    let forward: Vec<bool> = units.iter().map(|&k| k == 1).collect();
    Orientation::from_directions(g, &forward)
}

/// True when every weight is a multiple of `1/denom`.
pub fn on_grid(w: &WeakOrientation, denom: i128) -> bool {
    w.iter().all(|(_, _, a, _)| {
        let d = *a.denom();
        denom.is_multiple_of(&d)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn k(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn mad_examples() {
        let c5 = max_average_degree(&cycle(5)).unwrap();
        assert_eq!(c5.mad, ratio(2, 1));
        assert_eq!(c5.witness.len(), 5);
        // K4 minus {2,3}: subsets enumerated by hand give 5/2 on all four
        let k4e = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
        let d = max_average_degree(&k4e).unwrap();
        assert_eq!(d.mad, ratio(5, 2));
        assert_eq!(d.witness.to_vec(), [0, 1, 2, 3]);
        let tree = graph(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]);
        assert_eq!(max_average_degree(&tree).unwrap().mad, ratio(10, 6));
        assert_eq!(max_average_degree(&Graph::empty(0)), Err(Error::EmptyGraph));
        assert_eq!(max_average_degree(&Graph::empty(3)).unwrap().mad, ratio(0, 1));
    }

    #[test]
    fn mad_picks_dense_component() {
        // K4 plus a disjoint path
        let mut edges: Vec<_> = k(4).edges().collect();
        edges.extend([(4, 5), (5, 6)]);
        let g = graph(7, &edges);
        let d = max_average_degree(&g).unwrap();
        assert_eq!(d.mad, ratio(3, 1));
        assert_eq!(d.witness.to_vec(), [0, 1, 2, 3]);
    }

    #[test]
    fn weak_orientation_examples() {
        let k2 = graph(2, &[(0, 1)]);
        let w = min_weak_orientation(&k2).unwrap();
        assert_eq!(w.weight(0, 1), Some(ratio(1, 2)));
        assert_eq!(w.max_out_weight().0, ratio(1, 2));

        let w = min_weak_orientation(&cycle(4)).unwrap();
        assert_eq!(w.max_out_weight().0, ratio(1, 1));

        let w = min_weak_orientation(&k(4)).unwrap();
        assert_eq!(w.max_out_weight().0, ratio(3, 2));
        assert!(on_grid(&w, 4));
    }

    #[test]
    fn outdegree_examples() {
        let o = min_outdegree_orientation(&cycle(5)).unwrap();
        assert!((0..5).all(|v| o.out_degree(v) == 1));
        let tree = graph(5, &[(0, 1), (0, 2), (2, 3), (2, 4)]);
        assert_eq!(min_outdegree_orientation(&tree).unwrap().max_out_degree(), 1);
        let o = min_outdegree_orientation(&k(4)).unwrap();
        assert_eq!(o.max_out_degree(), 2);
        assert!(o.orients(&k(4)));
    }

    #[test]
    fn orientation_construction_checks_edges() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let o = Orientation::from_arcs(&g, [(1, 0), (1, 2)]).unwrap();
        assert_eq!(o.out_degree(1), 2);
        assert!(o.has_arc(1, 0) && !o.has_arc(0, 1));
        assert!(Orientation::from_arcs(&g, [(1, 0)]).is_err());
        assert!(Orientation::from_arcs(&g, [(1, 0), (0, 1), (1, 2)]).is_err());
        assert!(Orientation::from_arcs(&g, [(0, 2), (1, 2)]).is_err());
    }

    #[test]
    fn weak_orientation_rejects_bad_weights() {
        let g = graph(2, &[(0, 1)]);
        assert!(WeakOrientation::new(&g, vec![(ratio(1, 3), ratio(1, 3))]).is_err());
        assert!(WeakOrientation::new(&g, vec![(ratio(-1, 1), ratio(2, 1))]).is_err());
        assert!(WeakOrientation::new(&g, vec![(ratio(1, 3), ratio(2, 3))]).is_ok());
    }
}
