//! Coloring number, weak `k`-reachability and weak coloring numbers.
//!
//! For an ordering σ, `y` is weakly `k`-reachable from `x` when `y ≤σ x`
//! and some `x,y`-path of length at most `k` stays at or to the right of
//! `y`. `W_σ^k[x]` collects these vertices and `wcol_k(G)` is the least
//! possible `max_x |W_σ^k[x]|`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use fixedbitset::FixedBitSet;

use crate::graph::{bfs_limited, Graph, Vertex, VertexOrdering, VertexSet};
use crate::oracles::{treedepth_oracle, OracleLimits};
use crate::report::VerificationReport;
use crate::{Error, Result};

/// Default vertex limit for [`wcol_exact`].
pub const DEFAULT_EXACT_LIMIT: usize = 12;

/// Path-length budget for weak reachability.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reach {
    Finite(usize),
    Infinite,
}

impl Reach {
    /// Effective radius on an `n`-vertex graph. Paths never need more than
    /// `n - 1` edges, so larger budgets are capped there.
    pub fn radius(self, n: usize) -> usize {
        let cap = n.saturating_sub(1);
        match self {
            Reach::Finite(k) => k.min(cap),
            Reach::Infinite => cap,
        }
    }

    pub fn validate(self) -> Result<Self> {
        match self {
            Reach::Finite(0) => Err(Error::InvalidParameter("k must be at least 1".into())),
            r => Ok(r),
        }
    }
}

impl fmt::Display for Reach {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reach::Finite(k) => write!(f, "{k}"),
            Reach::Infinite => f.write_str("inf"),
        }
    }
}

impl core::str::FromStr for Reach {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" | "∞" => Ok(Reach::Infinite),
            _ => s
                .parse::<usize>()
                .map_err(|_| Error::InvalidParameter(format!("bad k: {s}")))
                .and_then(|k| Reach::Finite(k).validate()),
        }
    }
}

/// `max_x |W_σ^k[x]|` for a fixed ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderingScore {
    pub value: usize,
    /// First vertex (by id) attaining `value`.
    pub argmax: Vertex,
    /// `|W_σ^k[x]|` for every `x`.
    pub sizes: Vec<usize>,
}

/// `W_σ^k[x]`.
///
/// Bottleneck relaxation from `x`: `best[v]` is the largest achievable
/// minimum σ-position over walks from `x` to `v` of the current length
/// budget. A vertex `y` is weakly reachable iff the walk can be routed so
/// that `y` itself is that minimum.
pub fn weak_reach_set(g: &Graph, sigma: &VertexOrdering, k: Reach, x: Vertex) -> Result<VertexSet> {
    g.check_vertex(x)?;
    sigma.check_matches(g)?;
    let r = k.validate()?.radius(g.n());
    let pos = |v: Vertex| sigma.position(v) as i64;
    let mut best = vec![-1i64; g.n()];
    best[x] = pos(x);
    let mut active = vec![x];
    let mut prev = best.clone();
    for _ in 0..r {
        let mut next = Vec::new();
        for &v in &active {
            for &w in g.neighbors(v) {
                let cand = prev[v].min(pos(w));
                if cand > best[w] {
                    if best[w] < 0 || !next.contains(&w) {
                        next.push(w);
                    }
                    best[w] = cand;
                }
            }
        }
        if next.is_empty() {
            break;
        }
        prev.copy_from_slice(&best);
        active = next;
    }
    Ok(VertexSet::from_iter(g.n(), g.vertices().filter(|&y| best[y] == pos(y))))
}

/// `W_σ^k[x]` for all `x` at once: one BFS per `y` inside `G[V_σ^r[y]]`.
pub fn all_weak_reach_sets(g: &Graph, sigma: &VertexOrdering, k: Reach) -> Result<Vec<VertexSet>> {
    sigma.check_matches(g)?;
    let n = g.n();
    let r = k.validate()?.radius(n);
    let mut sets = vec![VertexSet::new(n); n];
    let mut allowed = FixedBitSet::with_capacity(n);
    allowed.insert_range(..);
    for &y in sigma.as_slice() {
        for (x, d) in bfs_limited(g, y, r, Some(&allowed)).into_iter().enumerate() {
            if d.is_some() {
                sets[x].insert(y);
            }
        }
        allowed.set(y, false);
    }
    Ok(sets)
}

pub fn wcol_of_ordering(g: &Graph, sigma: &VertexOrdering, k: Reach) -> Result<OrderingScore> {
    let sizes: Vec<usize> = all_weak_reach_sets(g, sigma, k)?.iter().map(VertexSet::len).collect();
    Ok(score(sizes))
}

fn score(sizes: Vec<usize>) -> OrderingScore {
    let mut argmax = 0;
    for (v, &s) in sizes.iter().enumerate() {
        if s > sizes[argmax] {
            argmax = v;
        }
    }
    OrderingScore { value: sizes.get(argmax).copied().unwrap_or(0), argmax, sizes }
}

/// `|N[x] ∩ V_σ^l[x]|` for every `x`.
pub fn closed_back_degrees(g: &Graph, sigma: &VertexOrdering) -> Vec<usize> {
    g.vertices().map(|x| 1 + g.neighbors(x).iter().filter(|&&y| sigma.precedes(y, x)).count()).collect()
}

/// Smallest-last order: repeatedly delete a minimum-degree vertex (lowest id
/// on ties) and place it after everything still present.
pub fn degeneracy_ordering(g: &Graph) -> VertexOrdering {
    let n = g.n();
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut gone = vec![false; n];
    let mut removal = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !gone[v]).min_by_key(|&v| (deg[v], v)).unwrap_or(0);
        gone[v] = true;
        removal.push(v);
        for &w in g.neighbors(v) {
            if !gone[w] {
                deg[w] -= 1;
            }
        }
    }
    removal.reverse();
    VertexOrdering::from_sequence(removal).unwrap_or_else(|_| VertexOrdering::identity(n))
}

/// Exact `col(G)` with a smallest-last witness ordering.
pub fn coloring_number(g: &Graph) -> (usize, VertexOrdering) {
    let sigma = degeneracy_ordering(g);
    let value = closed_back_degrees(g, &sigma).into_iter().max().unwrap_or(0);
    (value, sigma)
}

/// First-fit coloring along `sigma`; colors are `0..`.
pub fn greedy_coloring(g: &Graph, sigma: &VertexOrdering) -> Vec<usize> {
    let mut color = vec![usize::MAX; g.n()];
    let mut used = Vec::new();
    for &v in sigma.as_slice() {
        used.clear();
        used.extend(g.neighbors(v).iter().map(|&w| color[w]).filter(|&c| c != usize::MAX));
        used.sort_unstable();
        used.dedup();
        let c = used.iter().enumerate().find(|(i, c)| *i != **c).map_or(used.len(), |(i, _)| i);
        color[v] = c;
    }
    color
}

pub fn is_proper_coloring(g: &Graph, colors: &[usize]) -> bool {
    colors.len() == g.n() && g.edges().all(|(u, v)| colors[u] != colors[v])
}

/// Vertices of `remaining` within distance `r` of `src` in `G[remaining]`.
fn ball(masks: &[u64], src: usize, remaining: u64, r: usize) -> u64 {
    let mut seen = 1u64 << src;
    let mut frontier = seen;
    for _ in 0..r {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= masks[v];
        }
        next &= remaining & !seen;
        if next == 0 {
            break;
        }
        seen |= next;
        frontier = next;
    }
    seen
}

struct Search {
    masks: Vec<u64>,
    radius: usize,
    counts: Vec<u32>,
    prefix: Vec<Vertex>,
    best: u32,
    best_order: Vec<Vertex>,
    floor: u32,
}

impl Search {
    // Vertices are placed left to right. Placing y with `remaining` still
    // unplaced fixes y ∈ W[x] for exactly the x in y's ball inside
    // G[remaining], so counts only grow and partial maxima are lower bounds.
    fn run(&mut self, remaining: u64, placed_max: u32) {
        if remaining == 0 {
            if placed_max < self.best {
                self.best = placed_max;
                self.best_order = self.prefix.clone();
            }
            return;
        }
        let mut candidates: Vec<(u32, usize)> = Vec::new();
        let mut rest = remaining;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            candidates.push(((self.masks[v] & remaining).count_ones(), v));
        }
        candidates.sort_unstable();
        for &(_, y) in &candidates {
            let reach = ball(&self.masks, y, remaining, self.radius);
            let mut bits = reach;
            while bits != 0 {
                let x = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                self.counts[x] += 1;
            }
            let after = remaining & !(1 << y);
            let new_max = placed_max.max(self.counts[y]);
            let mut bound = new_max;
            let mut bits = after;
            while bits != 0 {
                let x = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                bound = bound.max(self.counts[x] + 1);
            }
            if bound < self.best {
                self.prefix.push(y);
                self.run(after, new_max);
                self.prefix.pop();
            }
            let mut bits = reach;
            while bits != 0 {
                let x = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                self.counts[x] -= 1;
            }
            if self.best <= self.floor {
                return;
            }
        }
    }
}

/// Exact `wcol_k(G)` with a witness ordering, by branch and bound over
/// ordering prefixes. Refuses graphs with more than `limit` vertices.
pub fn wcol_exact(g: &Graph, k: Reach, limit: usize) -> Result<(usize, VertexOrdering)> {
    let n = g.n();
    let k = k.validate()?;
    if n > limit.min(64) {
        return Err(Error::LimitExceeded { what: "exact wcol search", size: n, limit: limit.min(64) });
    }
    if n == 0 {
        return Ok((0, VertexOrdering::identity(0)));
    }
    let masks = g.adjacency_masks().ok_or(Error::LimitExceeded { what: "exact wcol search", size: n, limit: 64 })?;
    let (col, _) = coloring_number(g);
    let start = wcol_heuristic(g, k)?;
    let start_value = wcol_of_ordering(g, &start, k)?.value;
    if start_value <= col {
        return Ok((start_value, start));
    }
    let mut search = Search {
        masks,
        radius: k.radius(n),
        counts: vec![0; n],
        prefix: Vec::with_capacity(n),
        best: start_value as u32,
        best_order: start.as_slice().to_vec(),
        floor: col as u32,
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    search.run(all, 0);
    let order = VertexOrdering::from_sequence(search.best_order)?;
    Ok((search.best as usize, order))
}

/// A heuristic ordering for `wcol_k`: the better of the smallest-last order
/// and its generalization that repeatedly moves to the end the vertex with
/// the smallest radius-`k` ball in what remains.
pub fn wcol_heuristic(g: &Graph, k: Reach) -> Result<VertexOrdering> {
    let n = g.n();
    let r = k.validate()?.radius(n);
    let mut remaining = FixedBitSet::with_capacity(n);
    remaining.insert_range(..);
    let mut removal = Vec::with_capacity(n);
    for _ in 0..n {
        let mut pick = (usize::MAX, 0);
        for v in remaining.ones() {
            let size = bfs_limited(g, v, r, Some(&remaining)).iter().flatten().count();
            if size < pick.0 {
                pick = (size, v);
            }
        }
        remaining.set(pick.1, false);
        removal.push(pick.1);
    }
    removal.reverse();
    let generalized = VertexOrdering::from_sequence(removal)?;
    let degeneracy = degeneracy_ordering(g);
    let a = wcol_of_ordering(g, &generalized, k)?.value;
    let b = wcol_of_ordering(g, &degeneracy, k)?.value;
    Ok(if a <= b { generalized } else { degeneracy })
}

/// Compares `wcol_∞` from the exact search with the tree-depth oracle.
pub fn treedepth_equals_wcol_inf_check(g: &Graph, limits: &OracleLimits) -> Result<VerificationReport> {
    let (wcol_inf, witness) = wcol_exact(g, Reach::Infinite, limits.treedepth)?;
    let td = treedepth_oracle(g, limits)?;
    let mut report = VerificationReport::new("wcol-inf-td", format!("graph n={} m={}", g.n(), g.m()));
    report.param("n", g.n()).param("m", g.m());
    report.check(
        "wcol_inf == td",
        wcol_inf == td,
        wcol_inf,
        Some(td.into()),
        Some(format!("{:?}", witness.as_slice())),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn id(n: usize) -> VertexOrdering {
        VertexOrdering::identity(n)
    }

    #[test]
    fn reach_sets_examples() {
        let p3 = path(3);
        assert_eq!(weak_reach_set(&p3, &id(3), Reach::Finite(2), 2).unwrap().to_vec(), [0, 1, 2]);
        assert_eq!(weak_reach_set(&p3, &id(3), Reach::Finite(1), 2).unwrap().to_vec(), [1, 2]);
        let sigma = VertexOrdering::from_sequence(vec![1, 0, 2]).unwrap();
        assert_eq!(weak_reach_set(&p3, &sigma, Reach::Infinite, 1).unwrap().to_vec(), [1]);
        let k3 = complete(3);
        assert_eq!(weak_reach_set(&k3, &id(3), Reach::Finite(1), 2).unwrap().to_vec(), [0, 1, 2]);
        assert!(weak_reach_set(&k3, &id(3), Reach::Finite(0), 2).is_err());
        assert!(weak_reach_set(&k3, &id(3), Reach::Finite(1), 3).is_err());
    }

    #[test]
    fn path_must_stay_right_of_target() {
        // path 0 - 2 - 1
        let g = Graph::from_edges(3, [(0, 2), (2, 1)]).unwrap();
        assert_eq!(weak_reach_set(&g, &id(3), Reach::Finite(2), 1).unwrap().to_vec(), [0, 1]);
        // 0 reaches 1 through 2, which sits right of 1
        let s = VertexOrdering::from_sequence(vec![1, 0, 2]).unwrap();
        assert_eq!(weak_reach_set(&g, &s, Reach::Finite(2), 0).unwrap().to_vec(), [0, 1]);
        // now 2 sits left of 1, blocking the only route
        let s = VertexOrdering::from_sequence(vec![2, 1, 0]).unwrap();
        assert_eq!(weak_reach_set(&g, &s, Reach::Infinite, 0).unwrap().to_vec(), [0, 2]);
    }

    #[test]
    fn scores() {
        assert_eq!(wcol_of_ordering(&path(3), &id(3), Reach::Finite(1)).unwrap().value, 2);
        assert_eq!(wcol_of_ordering(&Graph::empty(4), &id(4), Reach::Infinite).unwrap().value, 1);
        for k in [Reach::Finite(1), Reach::Finite(3), Reach::Infinite] {
            let s = wcol_of_ordering(&complete(5), &id(5), k).unwrap();
            assert_eq!(s.value, 5);
            assert_eq!(s.argmax, 4);
        }
    }

    #[test]
    fn coloring_numbers() {
        assert_eq!(coloring_number(&path(6)).0, 2);
        assert_eq!(coloring_number(&complete(5)).0, 5);
        assert_eq!(coloring_number(&cycle(6)).0, 3);
        assert_eq!(coloring_number(&Graph::empty(0)).0, 0);
        assert_eq!(coloring_number(&Graph::empty(3)).0, 1);
    }

    #[test]
    fn exact_examples() {
        assert_eq!(wcol_exact(&path(5), Reach::Finite(1), 12).unwrap().0, 2);
        for k in [Reach::Finite(1), Reach::Finite(2), Reach::Infinite] {
            assert_eq!(wcol_exact(&complete(4), k, 12).unwrap().0, 4);
        }
        assert!(matches!(wcol_exact(&path(13), Reach::Finite(1), 12), Err(Error::LimitExceeded { .. })));
        let (v, w) = wcol_exact(&path(9), Reach::Finite(2), 12).unwrap();
        assert!(v <= 3);
        assert_eq!(wcol_of_ordering(&path(9), &w, Reach::Finite(2)).unwrap().value, v);
    }

    #[test]
    fn greedy_is_proper() {
        let g = cycle(5);
        let c = greedy_coloring(&g, &id(5));
        assert!(is_proper_coloring(&g, &c));
        assert_eq!(c.iter().max(), Some(&2));
    }

    #[test]
    fn reach_parses() {
        assert_eq!("inf".parse::<Reach>().unwrap(), Reach::Infinite);
        assert_eq!("3".parse::<Reach>().unwrap(), Reach::Finite(3));
        assert!("0".parse::<Reach>().is_err());
    }
}
