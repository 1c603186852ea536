//! Graph powers and the weighted orientation of `G^p` built from a vertex
//! ordering of `G`.
//!
//! Each edge `e = {a, b}` of `G^p` gets a fixed shortest path `Q_e` in `G`.
//! With `l_e` the `σ`-least vertex of `Q_e`, the far end of the path (the
//! one further from `l_e`) sends weight `1` towards the near end; a tie
//! splits the weight in half.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::bounds;
use crate::density::{max_average_degree, WeakOrientation};
use crate::graph::bfs_limited;
use crate::ordering::{wcol_of_ordering, weak_reach_set, Reach};
use crate::report::VerificationReport;
use crate::{Error, Graph, Rational, Result, Vertex, VertexOrdering};

/// `G^p`: edges between distinct vertices at distance at most `p`.
pub fn graph_power(g: &Graph, p: usize) -> Result<Graph> {
    if p == 0 {
        return Err(Error::InvalidParameter("p must be at least 1".into()));
    }
    let mut edges = Vec::new();
    for a in g.vertices() {
        for (b, d) in bfs_limited(g, a, p, None).into_iter().enumerate() {
            if b > a && d.is_some() {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(g.n(), edges)
}

/// The chosen path for one edge of `G^p` and the weights it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PowerEdgeCertificate {
    /// Endpoints, `u < v`.
    pub u: Vertex,
    pub v: Vertex,
    /// `Q_e` from `u` to `v`.
    pub path: Vec<Vertex>,
    /// `l_e`, the `σ`-least vertex of the path.
    pub least: Vertex,
    /// Index of `l_e` on the path counted from `u`.
    pub least_index: usize,
    /// `(w(u→v), w(v→u))`.
    #[cfg_attr(feature = "serde", serde(serialize_with = "ser_weights"))]
    pub weights: (Rational, Rational),
    pub p: usize,
}

#[cfg(feature = "serde")]
fn ser_weights<S: serde::Serializer>(w: &(Rational, Rational), s: S) -> core::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&crate::rational_string(&w.0))?;
    t.serialize_element(&crate::rational_string(&w.1))?;
    t.end()
}

impl PowerEdgeCertificate {
    /// `s = |Q_e|`, the number of edges on the path.
    pub fn length(&self) -> usize {
        self.path.len() - 1
    }

    /// Endpoints sending positive weight along this edge.
    pub fn positive_tails(&self) -> Vec<Vertex> {
        let mut out = Vec::new();
        if !self.weights.0.is_zero() {
            out.push(self.u);
        }
        if !self.weights.1.is_zero() {
            out.push(self.v);
        }
        out
    }
}

fn path_weights(s: usize, i: usize) -> (Rational, Rational) {
    let one = Rational::from_integer(1);
    let zero = Rational::zero();
    match (2 * i).cmp(&s) {
        core::cmp::Ordering::Greater => (one, zero),
        core::cmp::Ordering::Less => (zero, one),
        core::cmp::Ordering::Equal => (Rational::new(1, 2), Rational::new(1, 2)),
    }
}

/// `G^p` with its weighted orientation and one certificate per edge,
/// aligned with the edge order of `power`.
#[derive(Clone, Debug)]
pub struct PowerOrientation {
    pub power: Graph,
    pub orientation: WeakOrientation,
    pub certificates: Vec<PowerEdgeCertificate>,
}

/// Builds the weighted orientation of `G^p` for the ordering `sigma` of `G`.
///
/// `Q_e` runs from the `σ`-earlier endpoint `a` outwards: a BFS from `a`
/// fixes, for every vertex, the smallest-id neighbour one step closer to
/// `a`, and `Q_e` follows those parents back from `b`.
pub fn power_weak_orientation(g: &Graph, p: usize, sigma: &VertexOrdering) -> Result<PowerOrientation> {
    sigma.check_matches(g)?;
    let power = graph_power(g, p)?;
    let n = g.n();
    let mut certificates = Vec::with_capacity(power.m());
    for a in g.vertices() {
        let dist = bfs_limited(g, a, p, None);
        let parent: Vec<Option<Vertex>> = (0..n)
            .map(|z| {
                let dz = dist[z]?;
                if dz == 0 {
                    return None;
                }
                g.neighbors(z).iter().copied().find(|&w| dist[w] == Some(dz - 1))
            })
            .collect();
        for b in g.vertices() {
            if b == a || dist[b].is_none() || !sigma.precedes(a, b) {
                continue;
            }
            let mut path = Vec::with_capacity(dist[b].unwrap_or(0) + 1);
            let mut z = b;
            path.push(z);
            while let Some(w) = parent[z] {
                path.push(w);
                z = w;
            }
            // path now runs b .. a
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if u == a {
                path.reverse();
            }
            let (least_index, &least) = path
                .iter()
                .enumerate()
                .min_by_key(|&(_, &x)| sigma.position(x))
                .ok_or_else(|| Error::Consistency("empty power path".into()))?;
            let weights = path_weights(path.len() - 1, least_index);
            certificates.push(PowerEdgeCertificate { u, v, path, least, least_index, weights, p });
        }
    }
    certificates.sort_by_key(|c| (c.u, c.v));
    if certificates.len() != power.m() {
        return Err(Error::Consistency(format!("{} certificates for {} power edges", certificates.len(), power.m())));
    }
    let orientation = WeakOrientation::new(&power, certificates.iter().map(|c| c.weights).collect())?;
    Ok(PowerOrientation { power, orientation, certificates })
}

/// The witness that a positively weighted arc `tail → head` of `G^p` is
/// charged to a vertex `u_h` at distance `h ≤ ⌊p/2⌋` from `tail`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ArcDecomposition {
    pub tail: Vertex,
    pub head: Vertex,
    pub h: usize,
    pub u_h: Vertex,
    pub least: Vertex,
    pub s: usize,
    /// Index of `l_e` counted from `tail`.
    pub i: usize,
    pub half_weight: bool,
}

fn distance(g: &Graph, a: Vertex, b: Vertex, cap: usize) -> Option<usize> {
    bfs_limited(g, a, cap, None)[b]
}

/// Checks that the arc `tail → head` of a certificate decomposes as
/// `tail -h- u_h -(⌈s/2⌉ weakly)- l_e -(s−i)- head`.
///
/// Returns `Err(Consistency)` naming the first condition that fails.
pub fn decompose_power_edge(
    cert: &PowerEdgeCertificate,
    tail: Vertex,
    g: &Graph,
    sigma: &VertexOrdering,
) -> Result<ArcDecomposition> {
    let (head, from_tail, w) = if tail == cert.u {
        (cert.v, cert.path.clone(), cert.weights.0)
    } else if tail == cert.v {
        let mut p = cert.path.clone();
        p.reverse();
        (cert.u, p, cert.weights.1)
    } else {
        return Err(Error::InvalidParameter(format!("{tail} is not an endpoint of {{{},{}}}", cert.u, cert.v)));
    };
    if w.is_zero() {
        return Err(Error::InvalidParameter(format!("{tail} -> {head} carries no weight")));
    }
    let fail = |what: String| Err(Error::Consistency(format!("{tail} -> {head}: {what}")));
    let s = from_tail.len() - 1;
    if s == 0 || s > cert.p {
        return fail(format!("path length {s} outside 1..={}", cert.p));
    }
    if distance(g, tail, head, s) != Some(s) {
        return fail("path is not a shortest path".into());
    }
    for pair in from_tail.windows(2) {
        if !g.has_edge(pair[0], pair[1]) {
            return fail(format!("{}{} is not an edge", pair[0], pair[1]));
        }
    }
    let Some(i) = from_tail.iter().position(|&x| x == cert.least) else {
        return fail("least vertex not on the path".into());
    };
    if from_tail.iter().any(|&x| sigma.precedes(x, cert.least)) {
        return fail("least vertex is not sigma-minimal on the path".into());
    }
    let half = s.div_ceil(2);
    let h = i.saturating_sub(half);
    let u_h = from_tail[h];
    if h > cert.p / 2 {
        return fail(format!("h = {h} exceeds floor(p/2)"));
    }
    if distance(g, tail, u_h, h) != Some(h) {
        return fail(format!("u_h = {u_h} is not at distance {h}"));
    }
    if !weak_reach_set(g, sigma, Reach::Finite(half), u_h)?.contains(cert.least) {
        return fail(format!("{} not weakly {half}-reachable from {u_h}", cert.least));
    }
    if distance(g, cert.least, head, s - i) != Some(s - i) {
        return fail(format!("head not at distance {} from the least vertex", s - i));
    }
    Ok(ArcDecomposition { tail, head, h, u_h, least: cert.least, s, i, half_weight: w == Rational::new(1, 2) })
}

/// Builds the weighted orientation of `G^p` from `sigma` and checks it
/// against the bounds on its out-weight and on `mad(G^p)`. Needs `Δ ≥ 3`.
pub fn verify_power_bound(
    g: &Graph,
    p: usize,
    sigma: &VertexOrdering,
    sigma_source: &str,
) -> Result<(VerificationReport, PowerOrientation)> {
    let delta = g.max_degree();
    if delta < 3 {
        return Err(Error::InvalidParameter("the power bound needs max degree >= 3".into()));
    }
    let half = p.div_ceil(2);
    let q = wcol_of_ordering(g, sigma, Reach::Finite(half))?;
    let po = power_weak_orientation(g, p, sigma)?;

    let mut r = VerificationReport::new("thm24", format!("G^{p}"));
    r.param("n", g.n())
        .param("delta", delta)
        .param("p", p)
        .param("q", q.value)
        .param("sigma", sigma_source)
        .param("power_edges", po.power.m());

    let mut arcs = 0usize;
    let mut first_failure = None;
    for cert in &po.certificates {
        for tail in cert.positive_tails() {
            arcs += 1;
            if let Err(e) = decompose_power_edge(cert, tail, g, sigma) {
                first_failure.get_or_insert_with(|| format!("{e}"));
            }
        }
    }
    r.check("arc decompositions", first_failure.is_none(), arcs, None, first_failure);

    let (max_w, argmax) = po.orientation.max_out_weight();
    let inter = bounds::power_outweight_intermediate(delta, p, q.value)?;
    let closed = bounds::wcol_power_outweight_bound(delta, p, q.value)?;
    let witness = Some(format!("vertex {argmax}"));
    r.check("max out-weight <= counting sum", max_w <= inter, max_w, Some(inter.into()), witness.clone());
    r.check("counting sum <= closed form", inter <= closed, inter, Some(closed.into()), None);
    r.check("max out-weight <= closed form", max_w <= closed, max_w, Some(closed.into()), witness);

    let mad = max_average_degree(&po.power)?.mad;
    let two = Rational::from_integer(2);
    r.check("mad(G^p) <= 2 max out-weight", mad <= two * max_w, mad, Some((two * max_w).into()), None);
    let mad_bound = bounds::wcol_power_mad_bound(delta, p, q.value)?;
    r.check("mad(G^p) <= mad bound", mad <= mad_bound, mad, Some(mad_bound.into()), None);
    Ok((r, po))
}
