//! Graph generators with declared invariants, and the fixed test corpora.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Graph, Result};

/// What a generator knows about its output, without computing anything.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FamilyMeta {
    pub family: String,
    pub params: BTreeMap<String, u64>,
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    /// Declared tree-width, when the family fixes it.
    pub treewidth: Option<usize>,
    /// Declared genus, when the family fixes it.
    pub genus: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyInstance {
    pub graph: Graph,
    pub meta: FamilyMeta,
}

impl FamilyInstance {
    fn new(
        family: &str,
        params: &[(&str, u64)],
        graph: Graph,
        treewidth: Option<usize>,
        genus: Option<usize>,
        seed: Option<u64>,
    ) -> Self {
        let meta = FamilyMeta {
            family: family.to_string(),
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            n: graph.n(),
            m: graph.m(),
            max_degree: graph.max_degree(),
            treewidth,
            genus,
            seed,
        };
        FamilyInstance { graph, meta }
    }

    /// `family(k=v,...)`, stable across runs.
    pub fn label(&self) -> String {
        let params: Vec<String> = self.meta.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let seed = self.meta.seed.map(|s| format!(",seed={s}")).unwrap_or_default();
        format!("{}({}{})", self.meta.family, params.join(","), seed)
    }
}

fn invalid(msg: String) -> Error {
    Error::InvalidParameter(msg)
}

/// The tree of height `height` in which the root has `delta` children and
/// every other internal vertex `delta − 1`. Vertices are numbered in BFS
/// order from the root `0`.
pub fn complete_ary_tree(delta: usize, height: usize) -> Result<FamilyInstance> {
    if delta == 0 && height > 0 {
        return Err(invalid("a tree of positive height needs delta >= 1".into()));
    }
    let mut edges = Vec::new();
    let mut level = alloc::vec![0usize];
    let mut next_id = 1usize;
    for depth in 0..height {
        let children = if depth == 0 { delta } else { delta - 1 };
        let mut next = Vec::new();
        for &parent in &level {
            for _ in 0..children {
                edges.push((parent, next_id));
                next.push(next_id);
                next_id += 1;
            }
        }
        level = next;
        if level.is_empty() {
            break;
        }
    }
    let g = Graph::from_edges(next_id, edges)?;
    let tw = usize::from(next_id > 1);
    Ok(FamilyInstance::new("tree", &[("delta", delta as u64), ("height", height as u64)], g, Some(tw), Some(0), None))
}

pub fn path(n: usize) -> Result<FamilyInstance> {
    if n == 0 {
        return Err(invalid("a path needs at least one vertex".into()));
    }
    let g = Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))?;
    Ok(FamilyInstance::new("path", &[("n", n as u64)], g, Some(1.min(n - 1)), Some(0), None))
}

pub fn cycle(n: usize) -> Result<FamilyInstance> {
    if n < 3 {
        return Err(invalid("a cycle needs at least three vertices".into()));
    }
    let g = Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))?;
    Ok(FamilyInstance::new("cycle", &[("n", n as u64)], g, Some(2), Some(0), None))
}

pub fn complete(n: usize) -> Result<FamilyInstance> {
    if n == 0 {
        return Err(invalid("a complete graph needs at least one vertex".into()));
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let g = Graph::from_edges(n, edges)?;
    let genus = if n < 5 { 0 } else { ((n - 3) * (n - 4)).div_ceil(12) };
    Ok(FamilyInstance::new("complete", &[("n", n as u64)], g, Some(n - 1), Some(genus), None))
}

/// The `rows × cols` grid; vertex `(r, c)` is `r·cols + c`.
pub fn grid(rows: usize, cols: usize) -> Result<FamilyInstance> {
    if rows == 0 || cols == 0 {
        return Err(invalid("a grid needs positive dimensions".into()));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    let g = Graph::from_edges(rows * cols, edges)?;
    let tw = if rows * cols == 1 { 0 } else { rows.min(cols) };
    Ok(FamilyInstance::new("grid", &[("rows", rows as u64), ("cols", cols as u64)], g, Some(tw), Some(0), None))
}

/// `K_{1,leaves}` with centre `0`.
pub fn star(leaves: usize) -> Result<FamilyInstance> {
    let g = Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))?;
    Ok(FamilyInstance::new("star", &[("leaves", leaves as u64)], g, Some(usize::from(leaves > 0)), Some(0), None))
}

/// A random `k`-tree on `n ≥ k + 1` vertices: `K_{k+1}` on `0..=k`, then
/// each new vertex joins a uniformly chosen existing `k`-clique.
pub fn random_k_tree(k: usize, n: usize, seed: u64) -> Result<FamilyInstance> {
    if k == 0 || n < k + 1 {
        return Err(invalid(format!("a {k}-tree needs k >= 1 and n >= k + 1, got n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = (0..=k).flat_map(|u| (u + 1..=k).map(move |v| (u, v))).collect();
    let mut cliques: Vec<Vec<usize>> = (0..=k).map(|skip| (0..=k).filter(|&v| v != skip).collect()).collect();
    for v in k + 1..n {
        let base = cliques[rng.random_range(0..cliques.len())].clone();
        for &w in &base {
            edges.push((w, v));
        }
        for skip in 0..k {
            let mut c: Vec<usize> =
                base.iter().copied().enumerate().filter(|&(i, _)| i != skip).map(|(_, w)| w).collect();
            c.push(v);
            cliques.push(c);
        }
    }
    let g = Graph::from_edges(n, edges)?;
    let genus = (k <= 2).then_some(0);
    Ok(FamilyInstance::new("ktree", &[("k", k as u64), ("n", n as u64)], g, Some(k), genus, Some(seed)))
}

/// `G(n, m)`: `m` distinct edges chosen uniformly.
pub fn random_graph(n: usize, m: usize, seed: u64) -> Result<FamilyInstance> {
    let pairs = n * n.saturating_sub(1) / 2;
    if m > pairs {
        return Err(invalid(format!("{m} edges do not fit on {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen = rand::seq::index::sample(&mut rng, pairs, m).into_vec();
    chosen.sort_unstable();
    let mut all = Vec::with_capacity(pairs);
    for u in 0..n {
        for v in u + 1..n {
            all.push((u, v));
        }
    }
    let g = Graph::from_edges(n, chosen.into_iter().map(|i| all[i]))?;
    Ok(FamilyInstance::new("random", &[("n", n as u64), ("m", m as u64)], g, None, None, Some(seed)))
}

/// Graphs small enough for every exact oracle (`n ≤ 12`).
pub fn small_corpus() -> Vec<FamilyInstance> {
    let mut out = Vec::new();
    let mut push = |r: Result<FamilyInstance>| {
        if let Ok(f) = r {
            out.push(f);
        }
    };
    for n in 1..=12 {
        push(path(n));
    }
    for n in 3..=12 {
        push(cycle(n));
    }
    for n in 1..=8 {
        push(complete(n));
    }
    for leaves in 1..=11 {
        push(star(leaves));
    }
    for h in 0..=2 {
        push(complete_ary_tree(3, h));
    }
    for d in [2, 4, 5] {
        push(complete_ary_tree(d, 1));
    }
    push(complete_ary_tree(2, 3));
    push(complete_ary_tree(2, 4));
    for r in 1..=6 {
        for c in r..=12 {
            if r * c <= 12 && r * c > 1 {
                push(grid(r, c));
            }
        }
    }
    for k in 1..=3 {
        for n in (k + 2)..=12 {
            for seed in 0..4 {
                push(random_k_tree(k, n, seed * 101 + n as u64));
            }
        }
    }
    for n in 5..=12 {
        let pairs = n * (n - 1) / 2;
        for (j, m) in [n - 1, n + 2, 2 * n, pairs * 2 / 3].into_iter().enumerate() {
            if m <= pairs {
                push(random_graph(n, m, (n * 10 + j) as u64));
            }
        }
    }
    out
}

/// Larger graphs for scaling checks; exact oracles are not expected to
/// run on these.
pub fn medium_corpus() -> Vec<FamilyInstance> {
    let mut out = Vec::new();
    let mut push = |r: Result<FamilyInstance>| {
        if let Ok(f) = r {
            out.push(f);
        }
    };
    push(complete_ary_tree(3, 4));
    push(complete_ary_tree(4, 3));
    push(complete_ary_tree(5, 2));
    push(grid(6, 6));
    push(grid(5, 8));
    push(cycle(40));
    push(path(40));
    for k in 1..=3 {
        push(random_k_tree(k, 40, 7 + k as u64));
    }
    push(random_graph(40, 80, 3));
    push(random_graph(30, 90, 4));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_shapes() {
        let t = complete_ary_tree(3, 2).unwrap();
        assert_eq!((t.graph.n(), t.graph.m(), t.graph.max_degree()), (10, 9, 3));
        assert_eq!(t.graph.degree(0), 3);
        assert_eq!(complete_ary_tree(3, 0).unwrap().graph.n(), 1);
        assert_eq!(complete_ary_tree(5, 1).unwrap().graph.n(), 6);
    }

    #[test]
    fn basic_families() {
        assert_eq!(path(5).unwrap().graph.m(), 4);
        assert_eq!(cycle(5).unwrap().graph.m(), 5);
        assert!(cycle(2).is_err());
        assert_eq!(complete(5).unwrap().graph.m(), 10);
        assert_eq!(complete(7).unwrap().meta.genus, Some(1));
        let g = grid(3, 4).unwrap();
        assert_eq!((g.graph.n(), g.graph.m()), (12, 17));
        assert_eq!(g.meta.treewidth, Some(3));
        assert_eq!(star(4).unwrap().graph.max_degree(), 4);
    }

    #[test]
    fn k_trees_have_expected_size_and_are_reproducible() {
        for k in 1..=4 {
            let t = random_k_tree(k, 15, 9).unwrap();
            assert_eq!(t.graph.m(), k * 15 - k * (k + 1) / 2);
            assert_eq!(t, random_k_tree(k, 15, 9).unwrap());
        }
        assert!(random_k_tree(2, 2, 0).is_err());
    }

    #[test]
    fn random_graphs() {
        let g = random_graph(10, 20, 1).unwrap();
        assert_eq!(g.graph.m(), 20);
        assert_eq!(g, random_graph(10, 20, 1).unwrap());
        assert!(random_graph(4, 7, 0).is_err());
    }

    #[test]
    fn corpus_size() {
        let c = small_corpus();
        assert!(c.len() >= 200, "{}", c.len());
        assert!(c.iter().all(|f| f.graph.n() <= 12));
        let labels: alloc::collections::BTreeSet<_> = c.iter().map(|f| f.label()).collect();
        assert_eq!(labels.len(), c.len());
    }
}
