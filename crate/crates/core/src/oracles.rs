//! Brute-force ground truth for small graphs.
//!
//! Each oracle evaluates its parameter straight from the definition by
//! enumeration over vertex subsets, orderings or orientations, and shares no
//! code with the fast paths it is used to validate. Inputs above the
//! configured limit are refused, never approximated.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::density::Orientation;
use crate::graph::Graph;
use crate::ordering::Reach;
use crate::{Error, Rational, Result};

/// Per-oracle size limits: vertex counts, except `orientation_edges`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub mad: usize,
    pub arboricity: usize,
    pub treedepth: usize,
    pub chromatic: usize,
    pub wcol_exhaustive: usize,
    pub orientation_edges: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            mad: 12,
            arboricity: 12,
            treedepth: 12,
            chromatic: 12,
            wcol_exhaustive: 8,
            orientation_edges: 20,
        }
    }
}

impl OracleLimits {
    /// Every limit set to `limit`.
    pub fn uniform(limit: usize) -> Self {
        OracleLimits {
            mad: limit,
            arboricity: limit,
            treedepth: limit,
            chromatic: limit,
            wcol_exhaustive: limit,
            orientation_edges: limit,
        }
    }
}

// subset enumeration uses u32 masks
const MASK_CAP: usize = 25;

fn refuse(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::LimitExceeded { what, size, limit })
    } else {
        Ok(())
    }
}

fn masks(g: &Graph) -> Vec<u32> {
    g.vertices().map(|v| g.neighbors(v).iter().fold(0u32, |acc, &w| acc | (1 << w))).collect()
}

fn edges_in(adj: &[u32], set: u32) -> u32 {
    let mut total = 0;
    let mut rest = set;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        total += (adj[v] & set).count_ones();
    }
    total / 2
}

/// `max 2‖G[S]‖/|S|` over all nonempty vertex subsets.
pub fn mad_oracle(g: &Graph, limits: &OracleLimits) -> Result<Rational> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    refuse("mad oracle", n, limits.mad.min(MASK_CAP))?;
    let adj = masks(g);
    let mut best = Rational::zero();
    for set in 1u32..(1 << n) {
        let d = Rational::new(2 * edges_in(&adj, set) as i128, set.count_ones() as i128);
        if d > best {
            best = d;
        }
    }
    Ok(best)
}

/// Nash-Williams: `max ⌈‖G[S]‖/(|S|−1)⌉` over subsets with `|S| ≥ 2`.
pub fn arboricity_oracle(g: &Graph, limits: &OracleLimits) -> Result<usize> {
    let n = g.n();
    refuse("arboricity oracle", n, limits.arboricity.min(MASK_CAP))?;
    let adj = masks(g);
    let mut best = 0;
    for set in 1u32..(1u32 << n) {
        let size = set.count_ones();
        if size >= 2 {
            best = best.max(edges_in(&adj, set).div_ceil(size - 1) as usize);
        }
    }
    Ok(best)
}

/// Tree-depth by the recursion `td = 1 + min_v td(G − v)` on connected
/// graphs and the maximum over components otherwise, memoized per subset.
pub fn treedepth_oracle(g: &Graph, limits: &OracleLimits) -> Result<usize> {
    let n = g.n();
    refuse("tree-depth oracle", n, limits.treedepth.min(MASK_CAP))?;
    let adj = masks(g);
    let mut memo = vec![u8::MAX; 1 << n];
    memo[0] = 0;
    Ok(td_rec(&adj, &mut memo, (1u32 << n) - 1) as usize)
}

fn component_of(adj: &[u32], set: u32, start: usize) -> u32 {
    let mut comp = 1u32 << start;
    let mut frontier = comp;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        next &= set & !comp;
        comp |= next;
        frontier = next;
    }
    comp
}

fn td_rec(adj: &[u32], memo: &mut [u8], set: u32) -> u8 {
    if memo[set as usize] != u8::MAX {
        return memo[set as usize];
    }
    let comp = component_of(adj, set, set.trailing_zeros() as usize);
    let value = if comp != set {
        let mut worst = td_rec(adj, memo, comp);
        let mut rest = set & !comp;
        while rest != 0 {
            let c = component_of(adj, rest, rest.trailing_zeros() as usize);
            worst = worst.max(td_rec(adj, memo, c));
            rest &= !c;
        }
        worst
    } else {
        let mut best = u8::MAX;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            best = best.min(1 + td_rec(adj, memo, set & !(1 << v)));
        }
        best
    };
    memo[set as usize] = value;
    value
}

/// Chromatic number by iterative deepening over the number of colors, with
/// backtracking that never opens more than one new color at a time.
///
/// Complete graphs are answered directly (`χ(K_n) = n`) at any size; every
/// other input above the limit is refused.
pub fn chromatic_oracle(g: &Graph, limits: &OracleLimits) -> Result<usize> {
    let n = g.n();
    if g.is_complete() {
        return Ok(n);
    }
    refuse("chromatic oracle", n, limits.chromatic.min(MASK_CAP))?;
    if g.m() == 0 {
        return Ok(1);
    }
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (core::cmp::Reverse(g.degree(v)), v));
    let mut colors = vec![usize::MAX; n];
    for c in 2..=n {
        if color_with(g, &order, 0, c, 0, &mut colors) {
            return Ok(c);
        }
    }
    Ok(n)
}

fn color_with(g: &Graph, order: &[usize], i: usize, c: usize, used: usize, colors: &mut [usize]) -> bool {
    if i == order.len() {
        return true;
    }
    let v = order[i];
    for color in 0..c.min(used + 1) {
        if g.neighbors(v).iter().all(|&w| colors[w] != color) {
            colors[v] = color;
            if color_with(g, order, i + 1, c, used.max(color + 1), colors) {
                return true;
            }
            colors[v] = usize::MAX;
        }
    }
    false
}

/// `wcol_k` by evaluating every one of the `n!` orderings.
pub fn wcol_exhaustive_oracle(g: &Graph, k: Reach, limits: &OracleLimits) -> Result<usize> {
    Ok(wcol_exhaustive_profile(g, &[k], limits)?[0])
}

/// Exhaustive `wcol_k` for several `k` in one pass over the orderings.
pub fn wcol_exhaustive_profile(g: &Graph, ks: &[Reach], limits: &OracleLimits) -> Result<Vec<usize>> {
    let n = g.n();
    refuse("wcol exhaustive oracle", n, limits.wcol_exhaustive.min(10))?;
    let radii: Vec<usize> = ks.iter().map(|k| k.validate().map(|k| k.radius(n))).collect::<Result<_>>()?;
    let mut best = vec![usize::MAX; ks.len()];
    if n == 0 {
        return Ok(vec![0; ks.len()]);
    }
    let adj = masks(g);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut counts = vec![0usize; ks.len() * n];
    let mut evaluate = |perm: &[usize]| {
        counts.iter_mut().for_each(|c| *c = 0);
        let mut allowed = (1u32 << n) - 1;
        for &y in perm {
            // layered BFS from y inside the vertices not left of y
            let mut seen = 1u32 << y;
            let mut layer = seen;
            let mut depth = 0;
            while layer != 0 {
                let mut bits = layer;
                while bits != 0 {
                    let x = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    for (j, &r) in radii.iter().enumerate() {
                        if depth <= r {
                            counts[j * n + x] += 1;
                        }
                    }
                }
                let mut next = 0;
                let mut bits = layer;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    next |= adj[v];
                }
                layer = next & allowed & !seen;
                seen |= layer;
                depth += 1;
            }
            allowed &= !(1 << y);
        }
        for (j, b) in best.iter_mut().enumerate() {
            let value = counts[j * n..(j + 1) * n].iter().copied().max().unwrap_or(0);
            *b = (*b).min(value);
        }
    };
    // Heap's algorithm
    let mut c = vec![0usize; n];
    evaluate(&perm);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            evaluate(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(best)
}

/// Least maximum out-degree over all `2^m` orientations, with a witness.
pub fn min_outdegree_oracle(g: &Graph, limits: &OracleLimits) -> Result<(usize, Orientation)> {
    let m = g.m();
    refuse("min out-degree oracle", m, limits.orientation_edges.min(30))?;
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut out = vec![0usize; g.n()];
    for &(u, _) in &edges {
        out[u] += 1;
    }
    // bit i of `state` set: edge i reversed to v → u
    let mut state = 0u64;
    let mut best = (out.iter().copied().max().unwrap_or(0), 0u64);
    for step in 1u64..(1u64 << m) {
        let i = step.trailing_zeros() as usize;
        let (u, v) = edges[i];
        if state & (1 << i) == 0 {
            out[u] -= 1;
            out[v] += 1;
        } else {
            out[v] -= 1;
            out[u] += 1;
        }
        state ^= 1 << i;
        let worst = out.iter().copied().max().unwrap_or(0);
        if worst < best.0 {
            best = (worst, state);
        }
    }
    let forward: Vec<bool> = (0..m).map(|i| best.1 & (1 << i) == 0).collect();
    Ok((best.0, Orientation::from_directions(g, &forward)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn lim() -> OracleLimits {
        OracleLimits::default()
    }

    #[test]
    fn mad_values() {
        assert_eq!(mad_oracle(&complete(4), &lim()).unwrap(), ratio(3, 1));
        assert_eq!(mad_oracle(&path(4), &lim()).unwrap(), ratio(3, 2));
        let mut e: Vec<_> = cycle(5).edges().collect();
        e.push((0, 5));
        assert_eq!(mad_oracle(&graph(6, &e), &lim()).unwrap(), ratio(2, 1));
        assert!(matches!(mad_oracle(&path(13), &lim()), Err(Error::LimitExceeded { .. })));
    }

    #[test]
    fn arboricity_values() {
        assert_eq!(arboricity_oracle(&path(6), &lim()).unwrap(), 1);
        assert_eq!(arboricity_oracle(&complete(4), &lim()).unwrap(), 2);
        assert_eq!(arboricity_oracle(&complete(5), &lim()).unwrap(), 3);
        assert_eq!(arboricity_oracle(&Graph::empty(1), &lim()).unwrap(), 0);
    }

    #[test]
    fn treedepth_values() {
        assert_eq!(treedepth_oracle(&Graph::empty(1), &lim()).unwrap(), 1);
        assert_eq!(treedepth_oracle(&path(3), &lim()).unwrap(), 2);
        assert_eq!(treedepth_oracle(&path(7), &lim()).unwrap(), 3);
        assert_eq!(treedepth_oracle(&complete(6), &lim()).unwrap(), 6);
        let star = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(treedepth_oracle(&star, &lim()).unwrap(), 2);
    }

    #[test]
    fn chromatic_values() {
        assert_eq!(chromatic_oracle(&path(5), &lim()).unwrap(), 2);
        assert_eq!(chromatic_oracle(&cycle(5), &lim()).unwrap(), 3);
        assert_eq!(chromatic_oracle(&complete(4), &lim()).unwrap(), 4);
        assert_eq!(chromatic_oracle(&complete(17), &lim()).unwrap(), 17);
        assert_eq!(chromatic_oracle(&Graph::empty(3), &lim()).unwrap(), 1);
        assert!(chromatic_oracle(&path(13), &lim()).is_err());
    }

    #[test]
    fn wcol_exhaustive_values() {
        assert_eq!(wcol_exhaustive_oracle(&path(4), Reach::Finite(1), &lim()).unwrap(), 2);
        for k in [Reach::Finite(1), Reach::Finite(2), Reach::Infinite] {
            assert_eq!(wcol_exhaustive_oracle(&complete(3), k, &lim()).unwrap(), 3);
        }
        // wcol_∞ = td
        assert_eq!(wcol_exhaustive_oracle(&path(7), Reach::Infinite, &lim()).unwrap(), 3);
        assert!(wcol_exhaustive_oracle(&path(9), Reach::Finite(1), &lim()).is_err());
    }

    #[test]
    fn outdegree_values() {
        assert_eq!(min_outdegree_oracle(&cycle(4), &lim()).unwrap().0, 1);
        assert_eq!(min_outdegree_oracle(&complete(4), &lim()).unwrap().0, 2);
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        let (d, o) = min_outdegree_oracle(&star, &lim()).unwrap();
        assert_eq!(d, 1);
        assert_eq!(o.max_out_degree(), 1);
    }
}
