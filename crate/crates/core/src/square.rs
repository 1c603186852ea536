//! Coloring the square of a graph from a low out-degree orientation.
//!
//! Vertices are collected one at a time into an ordering `σ`; before a
//! vertex is collected it has "contributed" to every uncollected vertex it
//! reaches along one or two out-arcs. With out-degree at most `k` this
//! bounds the back-degree of `σ` in `G²` by `(2k−1)Δ + 2k`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bounds;
use crate::density::{ceil_half, max_average_degree, min_outdegree_orientation, Orientation};
use crate::oracles::{min_outdegree_oracle, OracleLimits};
use crate::ordering::{closed_back_degrees, greedy_coloring, is_proper_coloring};
use crate::power::graph_power;
use crate::report::VerificationReport;
use crate::{Error, Graph, Result, Vertex, VertexOrdering, VertexSet};

/// The six signed neighbourhoods of a vertex `x` in an orientation.
///
/// A vertex `z` at distance two lies in `plus_minus` if some middle `y`
/// has `x → y ← z`, and so on; the four distance-two sets may overlap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignNeighborhoods {
    pub plus: VertexSet,
    pub minus: VertexSet,
    pub plus_plus: VertexSet,
    pub plus_minus: VertexSet,
    pub minus_plus: VertexSet,
    pub minus_minus: VertexSet,
}

impl SignNeighborhoods {
    /// `N^{+,++}(x)`.
    pub fn out_reach(&self) -> VertexSet {
        let mut s = self.plus.clone();
        s.union_with(&self.plus_plus);
        s
    }

    /// `N^{-,--}(x)`.
    pub fn in_reach(&self) -> VertexSet {
        let mut s = self.minus.clone();
        s.union_with(&self.minus_minus);
        s
    }
}

pub fn sign_neighborhoods(g: &Graph, orient: &Orientation, x: Vertex) -> Result<SignNeighborhoods> {
    g.check_vertex(x)?;
    if !orient.orients(g) {
        return Err(Error::OrientationMismatch("orientation does not match the graph".into()));
    }
    let n = g.n();
    let mut out = SignNeighborhoods {
        plus: VertexSet::from_iter(n, orient.out_neighbors(x).iter().copied()),
        minus: VertexSet::from_iter(n, orient.in_neighbors(x).iter().copied()),
        plus_plus: VertexSet::new(n),
        plus_minus: VertexSet::new(n),
        minus_plus: VertexSet::new(n),
        minus_minus: VertexSet::new(n),
    };
    for &y in g.neighbors(x) {
        let first_out = orient.has_arc(x, y);
        for &z in g.neighbors(y) {
            if z == x || g.has_edge(x, z) {
                continue;
            }
            let second_out = orient.has_arc(y, z);
            let set = match (first_out, second_out) {
                (true, true) => &mut out.plus_plus,
                (true, false) => &mut out.plus_minus,
                (false, true) => &mut out.minus_plus,
                (false, false) => &mut out.minus_minus,
            };
            set.insert(z);
        }
    }
    Ok(out)
}

/// One step of the collection procedure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "event", rename_all = "lowercase"))]
pub enum TraceEvent {
    /// `vertex` contributes to `partner`.
    Contribute {
        vertex: Vertex,
        partner: Vertex,
        step: usize,
    },
    Collect {
        vertex: Vertex,
        step: usize,
    },
}

/// State once the procedure has finished.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollectionState {
    pub uncollected: VertexSet,
    /// What is left of each `S_x ⊆ N^{+,++}(x)`.
    pub pending: Vec<VertexSet>,
    pub collected: Vec<Vertex>,
    /// `(contributor, receiver)` in the order they happened.
    pub contributions: Vec<(Vertex, Vertex)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmoniousRun {
    pub sigma: VertexOrdering,
    pub trace: Vec<TraceEvent>,
    pub state: CollectionState,
}

struct Collector<'a> {
    l: &'a VertexOrdering,
    state: CollectionState,
    trace: Vec<TraceEvent>,
}

impl Collector<'_> {
    fn l_min_pending(&self, x: Vertex) -> Option<Vertex> {
        let s = &self.state;
        self.l.as_slice().iter().copied().find(|&z| s.pending[x].contains(z) && s.uncollected.contains(z))
    }

    fn collect(&mut self, x: Vertex) {
        self.state.uncollected.remove(x);
        self.state.collected.push(x);
        self.trace.push(TraceEvent::Collect { vertex: x, step: self.trace.len() + 1 });
    }

    fn contribute(&mut self, x: Vertex, y: Vertex) {
        self.state.pending[x].remove(y);
        self.state.contributions.push((x, y));
        self.trace.push(TraceEvent::Contribute { vertex: x, partner: y, step: self.trace.len() + 1 });
    }
}

/// Runs the collection procedure with processing order `l`:
///
/// ```text
/// while U ≠ ∅
///     x := L-min U
///     while S_x ∩ U ≠ ∅
///         y := L-min S_x ∩ U;  S_x := S_x − {y}     (x contributes to y)
///         if S_x ∩ U = ∅ then collect x
///         x := y
///     collect x
/// ```
pub fn harmonious_square_order(g: &Graph, orient: &Orientation, l: &VertexOrdering) -> Result<HarmoniousRun> {
    l.check_matches(g)?;
    if !orient.orients(g) {
        return Err(Error::OrientationMismatch("orientation does not match the graph".into()));
    }
    let n = g.n();
    let pending: Vec<VertexSet> =
        g.vertices().map(|x| sign_neighborhoods(g, orient, x).map(|s| s.out_reach())).collect::<Result<_>>()?;
    let mut c = Collector {
        l,
        state: CollectionState {
            uncollected: VertexSet::full(n),
            pending,
            collected: Vec::with_capacity(n),
            contributions: Vec::new(),
        },
        trace: Vec::new(),
    };
    while let Some(mut x) = l.as_slice().iter().copied().find(|&z| c.state.uncollected.contains(z)) {
        while let Some(y) = c.l_min_pending(x) {
            c.contribute(x, y);
            if c.l_min_pending(x).is_none() {
                c.collect(x);
            }
            x = y;
        }
        c.collect(x);
    }
    let sigma = VertexOrdering::from_sequence(c.state.collected.clone())?;
    Ok(HarmoniousRun { sigma, trace: c.trace, state: c.state })
}

/// Replays a trace and checks the procedure's claims, each as stated:
///
/// - a vertex being collected has contributed to every still-uncollected
///   vertex of its `N^{+,++}`;
/// - no vertex receives more than `d^{+,++}` contributions in total;
/// - after every event, each uncollected `v` has at most as many collected
///   vertices in `N^{-,--}(v)` as contributions received, and at most
///   `d^{+,++}(v)`.
///
/// A weaker form of the total-contributions claim is reported alongside:
/// contributions received by `v` before the step at which `v` itself
/// becomes the current vertex for the last time are at most `d^{+,++}(v)`,
/// so the total is at most `d^{+,++}(v) + 1`.
pub fn check_contribution_claims(trace: &[TraceEvent], g: &Graph, orient: &Orientation) -> Result<VerificationReport> {
    let n = g.n();
    let signs: Vec<SignNeighborhoods> =
        g.vertices().map(|x| sign_neighborhoods(g, orient, x)).collect::<Result<_>>()?;
    let out_reach: Vec<VertexSet> = signs.iter().map(|s| s.out_reach()).collect();
    let in_reach: Vec<VertexSet> = signs.iter().map(|s| s.in_reach()).collect();
    let mut uncollected = VertexSet::full(n);
    let mut received = vec![VertexSet::new(n); n];
    let mut received_count = vec![0usize; n];
    let mut collected_count = vec![0usize; n];

    let mut r = VerificationReport::new("thm38-claims", format!("trace of {} events", trace.len()));
    let mut malformed: Option<String> = None;
    let mut before_collect: Option<String> = None;
    let mut vs_received: Option<String> = None;
    let mut vs_degree: Option<String> = None;
    let mut worst_seen = 0usize;

    for ev in trace {
        match *ev {
            TraceEvent::Contribute { vertex, partner, .. } => {
                g.check_vertex(vertex)?;
                g.check_vertex(partner)?;
                if !uncollected.contains(partner) || !out_reach[vertex].contains(partner) {
                    malformed.get_or_insert_with(|| format!("bad contribution {vertex} -> {partner}"));
                }
                received[partner].insert(vertex);
                received_count[partner] += 1;
            }
            TraceEvent::Collect { vertex: w, .. } => {
                g.check_vertex(w)?;
                collected_count[w] += 1;
                for y in out_reach[w].iter() {
                    if uncollected.contains(y) && !received[y].contains(w) {
                        before_collect.get_or_insert_with(|| format!("{w} collected before contributing to {y}"));
                    }
                }
                uncollected.remove(w);
            }
        }
        for v in uncollected.iter() {
            let seen = in_reach[v].iter().filter(|&z| !uncollected.contains(z)).count();
            worst_seen = worst_seen.max(seen);
            if seen > received_count[v] {
                vs_received.get_or_insert_with(|| {
                    format!("{v}: {seen} collected in N-,-- vs {} contributions", received_count[v])
                });
            }
            if seen > out_reach[v].len() {
                vs_degree
                    .get_or_insert_with(|| format!("{v}: {seen} collected in N-,-- vs d+,++ = {}", out_reach[v].len()));
            }
        }
    }

    let mut total_over = None;
    let mut total_over_two = None;
    let mut excess = 0usize;
    for v in g.vertices() {
        let (got, d) = (received_count[v], out_reach[v].len());
        if got > d {
            excess = excess.max(got - d);
            total_over.get_or_insert_with(|| format!("{v} received {got} > d+,++ = {d}"));
        }
        if got > d + 1 {
            total_over_two.get_or_insert_with(|| format!("{v} received {got} > d+,++ + 1 = {}", d + 1));
        }
    }
    let once = collected_count.iter().all(|&c| c == 1);
    r.check("trace well formed", malformed.is_none() && once, once, None, malformed);
    r.check(
        "collected only after contributing to all of N+,++ in U",
        before_collect.is_none(),
        true,
        None,
        before_collect,
    );
    r.check("contributions received <= d+,++", total_over.is_none(), excess, Some(0usize.into()), total_over);
    r.check(
        "contributions received <= d+,++ + 1",
        total_over_two.is_none(),
        excess,
        Some(1usize.into()),
        total_over_two,
    );
    r.check("collected N-,-- <= contributions received", vs_received.is_none(), worst_seen, None, vs_received);
    r.check("collected N-,-- <= d+,++", vs_degree.is_none(), worst_seen, None, vs_degree);
    Ok(r)
}

/// Everything a square-coloring check produced.
#[derive(Clone, Debug)]
pub struct SquareVerification {
    pub report: VerificationReport,
    /// Replay of the collection trace, kept apart from the bound itself.
    pub claims: Option<VerificationReport>,
    pub k: usize,
    pub orientation: Option<Orientation>,
    pub run: Option<HarmoniousRun>,
    pub coloring: Vec<usize>,
}

/// Computes `k = ⌈mad/2⌉`, an orientation of out-degree `k`, the collection
/// order for `l` (identity by default) and checks the back-degree and
/// greedy-coloring bound `(2k−1)Δ + 2k + 1` on `G²`. The trace replay of
/// [`check_contribution_claims`] is returned separately in `claims`.
pub fn verify_square_bound(g: &Graph, l: Option<&VertexOrdering>, limits: &OracleLimits) -> Result<SquareVerification> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let identity = VertexOrdering::identity(n);
    let l = l.unwrap_or(&identity);
    l.check_matches(g)?;
    let delta = g.max_degree();
    let mut r = VerificationReport::new("thm38", format!("G on {n} vertices"));
    if g.m() == 0 {
        r.param("k", 0usize).param("delta", 0usize);
        r.note("edgeless: G^2 = G and one color suffices");
        let coloring = vec![0; n];
        return Ok(SquareVerification { report: r, claims: None, k: 0, orientation: None, run: None, coloring });
    }
    let mad = max_average_degree(g)?.mad;
    let k = ceil_half(&mad) as usize;
    let bound = bounds::square_col_bound(k, delta);
    r.param("n", n).param("delta", delta).param("mad", mad).param("k", k).param("bound", bound);

    let mut orient = min_outdegree_orientation(g)?;
    if orient.max_out_degree() > k && g.m() <= limits.orientation_edges {
        orient = min_outdegree_oracle(g, limits)?.1;
    }
    let outdeg = orient.max_out_degree();
    r.check("out-degree <= k", outdeg <= k, outdeg, Some(k.into()), None);
    let need = 2 * k - 1;
    r.check("delta >= 2k - 1", delta >= need, delta, Some(need.into()), None);
    if outdeg > k {
        return Ok(SquareVerification {
            report: r,
            claims: None,
            k,
            orientation: Some(orient),
            run: None,
            coloring: Vec::new(),
        });
    }

    let run = harmonious_square_order(g, &orient, l)?;
    let claims = check_contribution_claims(&run.trace, g, &orient)?;

    let g2 = graph_power(g, 2)?;
    let back = closed_back_degrees(&g2, &run.sigma);
    let (worst, at) = back.iter().enumerate().map(|(v, &b)| (b, v)).max().unwrap_or((0, 0));
    r.check(
        "back-degree in G^2 <= bound",
        worst as i128 <= bound,
        worst,
        Some(bound.into()),
        Some(format!("vertex {at}")),
    );
    let chain = bound - 1;
    let mut over = None;
    let mut worst_before = 0usize;
    for (i, &v) in run.sigma.as_slice().iter().enumerate() {
        let earlier = run.sigma.as_slice()[..i].iter().filter(|&&z| g2.has_edge(v, z)).count();
        worst_before = worst_before.max(earlier);
        if earlier as i128 > chain {
            over.get_or_insert(format!("vertex {v}"));
        }
    }
    r.check(
        "collected N^2 before each collection <= (2k-1)delta + 2k",
        over.is_none(),
        worst_before,
        Some(chain.into()),
        over,
    );

    let coloring = greedy_coloring(&g2, &run.sigma);
    let colors = coloring.iter().copied().max().map_or(0, |c| c + 1);
    let proper = is_proper_coloring(&g2, &coloring);
    r.check("greedy coloring of G^2 is proper", proper, proper, None, None);
    r.check("colors used <= bound", colors as i128 <= bound, colors, Some(bound.into()), None);
    r.param("col_game_bound", bounds::square_col_game_bound(k, delta));
    r.param("chi_bound", bounds::square_chromatic_bound(k, delta));
    Ok(SquareVerification { report: r, claims: Some(claims), k, orientation: Some(orient), run: Some(run), coloring })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orient(g: &Graph, arcs: &[(usize, usize)]) -> Orientation {
        Orientation::from_arcs(g, arcs.iter().copied()).unwrap()
    }

    #[test]
    fn directed_path_example() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let o = orient(&g, &[(0, 1), (1, 2)]);
        let run = harmonious_square_order(&g, &o, &VertexOrdering::identity(3)).unwrap();
        assert_eq!(run.sigma.as_slice(), [1, 2, 0]);
        assert_eq!(run.state.contributions, [(0, 1), (1, 2)]);
        // 2 receives from 1 although N+,++(2) is empty, and 1 is already
        // collected while 2 waits
        let r = check_contribution_claims(&run.trace, &g, &o).unwrap();
        let holds = |name: &str| r.find_check(name).unwrap().holds;
        assert!(holds("collected only after contributing to all of N+,++ in U"));
        assert!(!holds("contributions received <= d+,++"));
        assert!(holds("contributions received <= d+,++ + 1"));
        assert!(holds("collected N-,-- <= contributions received"));
        assert!(!holds("collected N-,-- <= d+,++"));
    }

    #[test]
    fn sign_sets() {
        // 0 -> 1 <- 2, 1 -> 3
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let o = orient(&g, &[(0, 1), (2, 1), (1, 3)]);
        let s = sign_neighborhoods(&g, &o, 0).unwrap();
        assert_eq!(s.plus.to_vec(), [1]);
        assert_eq!(s.plus_minus.to_vec(), [2]);
        assert_eq!(s.plus_plus.to_vec(), [3]);
        assert!(s.minus.is_empty() && s.minus_minus.is_empty());
        let s3 = sign_neighborhoods(&g, &o, 3).unwrap();
        assert_eq!(s3.in_reach().to_vec(), [0, 1, 2]);
    }

    #[test]
    fn triangle_neighbours_are_not_distance_two() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let o = orient(&g, &[(0, 1), (1, 2), (2, 0)]);
        let s = sign_neighborhoods(&g, &o, 0).unwrap();
        assert!(s.plus_plus.is_empty() && s.minus_minus.is_empty());
    }

    #[test]
    fn single_arc_and_edgeless() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let o = orient(&g, &[(0, 1)]);
        let run = harmonious_square_order(&g, &o, &VertexOrdering::identity(2)).unwrap();
        assert_eq!(run.sigma.as_slice(), [0, 1]);
        let e = Graph::empty(3);
        let o = Orientation::from_arcs(&e, []).unwrap();
        let l = VertexOrdering::from_sequence(alloc::vec![2, 0, 1]).unwrap();
        let run = harmonious_square_order(&e, &o, &l).unwrap();
        assert_eq!(run.sigma, l);
        assert!(check_contribution_claims(&run.trace, &e, &o).unwrap().passed());
    }

    #[test]
    fn out_star_replay() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let o = orient(&g, &[(0, 1), (0, 2), (0, 3)]);
        let run = harmonious_square_order(&g, &o, &VertexOrdering::identity(4)).unwrap();
        assert_eq!(run.sigma.as_slice(), [1, 2, 0, 3]);
        let r = check_contribution_claims(&run.trace, &g, &o).unwrap();
        assert!(r.find_check("collected only after contributing to all of N+,++ in U").unwrap().holds);
        assert!(r.find_check("contributions received <= d+,++ + 1").unwrap().holds);
    }

    #[test]
    fn square_bound_on_small_graphs() {
        let limits = OracleLimits::default();
        let cycle = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let v = verify_square_bound(&cycle, None, &limits).unwrap();
        assert!(v.report.passed(), "{:?}", v.report);
        assert_eq!(v.k, 1);
        let edgeless = Graph::empty(3);
        assert!(verify_square_bound(&edgeless, None, &limits).unwrap().report.passed());
    }
}
