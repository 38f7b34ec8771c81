//! Hypergraphs with edges of mixed cardinalities, edge-type bookkeeping and
//! the Lubell function.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;

use crate::combinatorics::{binomial_big, canonical_cmp, mask_vertices, subsets_of_size};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Hard limit on the number of vertices; edges are mirrored as `u64` masks.
pub const MAX_VERTICES: usize = 64;

/// A non-empty set of vertices, stored as an ascending list.
///
/// Edges order canonically: by size first, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge(Vec<usize>);

impl Edge {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &v| m | (1u64 << v))
    }

    fn from_mask(mask: u64) -> Self {
        Edge(mask_vertices(mask))
    }
}

impl Ord for Edge {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A strictly increasing, non-empty list of positive edge sizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeTypeSet(Vec<usize>);

impl EdgeTypeSet {
    /// Sorts and deduplicates; rejects an empty set or a zero size.
    pub fn new(sizes: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = sizes.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(Error::domain("edge-type set must be non-empty"));
        }
        if v[0] == 0 {
            return Err(Error::domain("edge size 0 is not allowed"));
        }
        Ok(EdgeTypeSet(v))
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> usize {
        *self.0.last().expect("non-empty")
    }

    pub fn smallest(&self) -> usize {
        self.0[0]
    }

    pub fn contains(&self, k: usize) -> bool {
        self.0.binary_search(&k).is_ok()
    }

    /// Every size shifted up by `t`.
    pub fn shifted(&self, t: usize) -> Self {
        EdgeTypeSet(self.0.iter().map(|k| k + t).collect())
    }
}

impl fmt::Display for EdgeTypeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, "}}")
    }
}

/// Vertex count plus a set of distinct non-empty edges over `0..n`.
///
/// Immutable once built. Edges are kept in canonical order together with a
/// bit-mask mirror used by the search routines.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Edge>,
    masks: Vec<u64>,
}

impl Hypergraph {
    /// Builds a hypergraph, rejecting empty, out-of-range, repeated-vertex and
    /// duplicate edges.
    pub fn new<E, I>(n: usize, edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        if n > MAX_VERTICES {
            return Err(Error::cap(format!(
                "{n} vertices exceeds the supported maximum of {MAX_VERTICES}"
            )));
        }
        let mut out: Vec<Edge> = Vec::new();
        for (i, e) in edges.into_iter().enumerate() {
            let mut vs: Vec<usize> = e.into_iter().collect();
            if vs.is_empty() {
                return Err(Error::domain(format!("edge #{i} is empty")));
            }
            vs.sort_unstable();
            if let Some(&v) = vs.iter().find(|&&v| v >= n) {
                return Err(Error::domain(format!(
                    "edge #{i} uses vertex {v}, out of range for n = {n}"
                )));
            }
            if vs.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::domain(format!("edge #{i} repeats a vertex")));
            }
            out.push(Edge(vs));
        }
        let mut sorted = out.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            let idx = out.iter().rposition(|e| *e == w[0]).unwrap_or(0);
            return Err(Error::domain(format!(
                "edge #{idx} {:?} is a duplicate",
                w[0].vertices()
            )));
        }
        Ok(Self::from_sorted(n, sorted))
    }

    /// Builds from bit masks; duplicates are merged. Panics on a zero mask or a
    /// vertex outside `0..n` (internal constructor for generated graphs).
    pub fn from_masks(n: usize, masks: impl IntoIterator<Item = u64>) -> Self {
        assert!(n <= MAX_VERTICES);
        let mut ms: Vec<u64> = masks.into_iter().collect();
        let range = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for &m in &ms {
            assert!(m != 0 && m & !range == 0, "mask {m:#x} invalid for n = {n}");
        }
        ms.sort_unstable_by(|&a, &b| canonical_cmp(a, b));
        ms.dedup();
        let edges = ms.iter().map(|&m| Edge::from_mask(m)).collect();
        Hypergraph {
            n,
            edges,
            masks: ms,
        }
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let masks = edges.iter().map(Edge::mask).collect();
        Hypergraph { n, edges, masks }
    }

    pub fn edgeless(n: usize) -> Self {
        Hypergraph {
            n,
            edges: Vec::new(),
            masks: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edge masks in canonical order.
    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, vs: &[usize]) -> bool {
        let m = vs.iter().fold(0u64, |m, &v| m | (1u64 << v));
        self.has_mask(m)
    }

    pub fn has_mask(&self, mask: u64) -> bool {
        self.masks
            .binary_search_by(|&m| canonical_cmp(m, mask))
            .is_ok()
    }

    /// `R(G)`: the distinct edge sizes, ascending.
    pub fn edge_types(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.edges.iter().map(Edge::len).collect();
        v.dedup();
        v
    }

    /// `R(G)` as an [`EdgeTypeSet`]; `None` for an edgeless graph.
    pub fn edge_type_set(&self) -> Option<EdgeTypeSet> {
        EdgeTypeSet::new(self.edge_types()).ok()
    }

    /// Number of edges of size `k`.
    pub fn level_count(&self, k: usize) -> usize {
        self.edges.iter().filter(|e| e.len() == k).count()
    }

    /// Number of `k`-edges containing `v`.
    pub fn degree(&self, v: usize, k: usize) -> usize {
        self.masks
            .iter()
            .filter(|m| m.count_ones() as usize == k && *m & (1u64 << v) != 0)
            .count()
    }

    pub fn total_degree(&self, v: usize) -> usize {
        self.masks.iter().filter(|m| *m & (1u64 << v) != 0).count()
    }

    /// Adds edges (duplicates merged) and returns the new graph.
    pub fn with_masks(&self, extra: impl IntoIterator<Item = u64>) -> Self {
        Hypergraph::from_masks(self.n, self.masks.iter().copied().chain(extra))
    }

    /// Renames vertex `v` to `perm[v]`; `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let masks = self.edges.iter().map(|e| {
            e.vertices()
                .iter()
                .fold(0u64, |m, &v| m | (1u64 << perm[v]))
        });
        Hypergraph::from_masks(self.n, masks)
    }

    /// Sum of `1 / C(n, |F|)` over all edges, exactly.
    pub fn lubell(&self) -> Rational {
        lubell(self)
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", e.vertices())?;
        }
        write!(f, "])")
    }
}

/// The Lubell function: expected number of edges hit by a random full chain.
pub fn lubell(g: &Hypergraph) -> Rational {
    let n = g.vertex_count();
    let mut total = Rational::zero();
    let mut k = 0;
    let mut count = 0i64;
    // Edges are grouped by size, so sum level by level.
    let flush = |k: usize, count: i64, total: &mut Rational| {
        if count > 0 {
            let denom = BigInt::from(binomial_big(n, k));
            *total = &*total + &Rational::new(count, denom);
        }
    };
    for e in g.edges() {
        if e.len() != k {
            flush(k, count, &mut total);
            k = e.len();
            count = 0;
        }
        count += 1;
    }
    flush(k, count, &mut total);
    total
}

/// The level hypergraph `G^k`: same vertices, only the `k`-edges.
pub fn level_graph(g: &Hypergraph, k: usize) -> Hypergraph {
    Hypergraph::from_masks(
        g.vertex_count(),
        g.masks()
            .iter()
            .copied()
            .filter(|m| m.count_ones() as usize == k),
    )
}

/// `G^{[S]}[K]`: edges inside `keep` with size in `sizes`, relabeled to
/// `0..|keep|` preserving vertex order.
pub fn induced_subgraph(g: &Hypergraph, keep: &[usize], sizes: &EdgeTypeSet) -> Result<Hypergraph> {
    let n = g.vertex_count();
    let mut k: Vec<usize> = keep.to_vec();
    k.sort_unstable();
    k.dedup();
    if let Some(&v) = k.iter().find(|&&v| v >= n) {
        return Err(Error::domain(format!(
            "vertex {v} out of range for n = {n}"
        )));
    }
    let mut new_index = vec![usize::MAX; n];
    for (i, &v) in k.iter().enumerate() {
        new_index[v] = i;
    }
    let keep_mask = k.iter().fold(0u64, |m, &v| m | (1u64 << v));
    let masks = g
        .edges()
        .iter()
        .filter(|e| sizes.contains(e.len()) && e.mask() & !keep_mask == 0)
        .map(|e| {
            e.vertices()
                .iter()
                .fold(0u64, |m, &v| m | (1u64 << new_index[v]))
        });
    Ok(Hypergraph::from_masks(k.len(), masks))
}

/// `G[K]` with all edge sizes kept.
pub fn induced_on(g: &Hypergraph, keep: &[usize]) -> Result<Hypergraph> {
    match g.edge_type_set() {
        Some(r) => induced_subgraph(g, keep, &r),
        None => {
            let mut k = keep.to_vec();
            k.sort_unstable();
            k.dedup();
            if let Some(&v) = k.iter().find(|&&v| v >= g.vertex_count()) {
                return Err(Error::domain(format!("vertex {v} out of range")));
            }
            Ok(Hypergraph::edgeless(k.len()))
        }
    }
}

/// Link of `v`: edges through `v` with `v` removed, on the remaining `n - 1`
/// vertices (indices above `v` shift down). The singleton `{v}` is dropped.
pub fn link_graph(g: &Hypergraph, v: usize) -> Result<Hypergraph> {
    let n = g.vertex_count();
    if v >= n {
        return Err(Error::domain(format!(
            "vertex {v} out of range for n = {n}"
        )));
    }
    let bit = 1u64 << v;
    let low = bit - 1;
    let masks = g
        .masks()
        .iter()
        .filter(|&&m| m & bit != 0 && m.count_ones() >= 2)
        .map(|&m| {
            let rest = m & !bit;
            (rest & low) | ((rest & !low) >> 1)
        });
    Ok(Hypergraph::from_masks(n - 1, masks))
}

/// `K_n^R`: every subset of `0..n` whose size lies in `R`.
pub fn complete_r_graph(n: usize, sizes: &EdgeTypeSet) -> Result<Hypergraph> {
    if sizes.largest() > n {
        return Err(Error::domain(format!(
            "largest edge size {} exceeds n = {n}",
            sizes.largest()
        )));
    }
    if n > MAX_VERTICES {
        return Err(Error::cap(format!("n = {n} exceeds {MAX_VERTICES}")));
    }
    let masks = sizes.sizes().iter().flat_map(|&k| subsets_of_size(n, k));
    Ok(Hypergraph::from_masks(n, masks))
}

/// The chain `C^R` on `max(R)` vertices with edges `{0..k-1}` for `k` in `R`.
pub fn chain_graph(sizes: &EdgeTypeSet) -> Hypergraph {
    let masks = sizes
        .sizes()
        .iter()
        .map(|&k| if k == 64 { u64::MAX } else { (1u64 << k) - 1 });
    Hypergraph::from_masks(sizes.largest(), masks)
}

/// True iff every non-empty level has exactly one edge.
pub fn is_flag(h: &Hypergraph) -> bool {
    h.edge_types().iter().all(|&k| h.level_count(k) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &[usize]) -> EdgeTypeSet {
        EdgeTypeSet::new(s.iter().copied()).unwrap()
    }

    #[test]
    fn rejects_malformed_edges() {
        assert!(Hypergraph::new(2, vec![vec![0], vec![0]]).is_err());
        assert!(Hypergraph::new(2, vec![vec![5]]).is_err());
        assert!(Hypergraph::new(2, vec![Vec::<usize>::new()]).is_err());
        assert!(Hypergraph::new(3, vec![vec![1, 1]]).is_err());
        assert!(Hypergraph::new(65, Vec::<Vec<usize>>::new()).is_err());
    }

    #[test]
    fn canonical_edge_order() {
        let g = Hypergraph::new(
            4,
            vec![vec![2, 3], vec![1], vec![0, 1, 2], vec![0, 3], vec![0]],
        )
        .unwrap();
        let lists: Vec<&[usize]> = g.edges().iter().map(|e| e.vertices()).collect();
        assert_eq!(lists, vec![&[0][..], &[1], &[0, 3], &[2, 3], &[0, 1, 2]]);
        assert_eq!(g.edge_types(), vec![1, 2, 3]);
    }

    #[test]
    fn lubell_examples() {
        let k3 = complete_r_graph(3, &r(&[1, 2])).unwrap();
        assert_eq!(lubell(&k3), 2);
        assert_eq!(lubell(&Hypergraph::edgeless(5)), 0);
        let g = Hypergraph::new(4, vec![vec![0], vec![1], vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(lubell(&g), Rational::new(5, 6));
    }

    #[test]
    fn level_graph_examples() {
        let k3 = complete_r_graph(3, &r(&[1, 2])).unwrap();
        let tri = level_graph(&k3, 2);
        assert_eq!(tri, complete_r_graph(3, &r(&[2])).unwrap());
        assert_eq!(level_graph(&k3, 3), Hypergraph::edgeless(3));
        let chain = chain_graph(&r(&[1, 2, 3]));
        assert_eq!(
            level_graph(&chain, 2),
            Hypergraph::new(3, vec![vec![0, 1]]).unwrap()
        );
    }

    #[test]
    fn induced_subgraph_examples() {
        let k4 = complete_r_graph(4, &r(&[1, 2])).unwrap();
        let tri = induced_subgraph(&k4, &[0, 1, 2], &r(&[2])).unwrap();
        assert_eq!(tri, complete_r_graph(3, &r(&[2])).unwrap());
        assert_eq!(
            induced_subgraph(&k4, &[0, 1, 2, 3], &r(&[1, 2])).unwrap(),
            k4
        );
        let g = Hypergraph::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let s = induced_subgraph(&g, &[0, 1, 2], &r(&[2])).unwrap();
        assert_eq!(s, Hypergraph::new(3, vec![vec![0, 1]]).unwrap());
        assert!(induced_subgraph(&g, &[0, 7], &r(&[2])).is_err());
    }

    #[test]
    fn link_graph_examples() {
        let star = Hypergraph::new(4, vec![vec![0, 1], vec![0, 2], vec![0, 3]]).unwrap();
        let link = link_graph(&star, 0).unwrap();
        assert_eq!(
            link,
            Hypergraph::new(3, vec![vec![0], vec![1], vec![2]]).unwrap()
        );
        // indices above v shift down by one
        let g = Hypergraph::new(4, vec![vec![1, 3], vec![0, 1, 3]]).unwrap();
        assert_eq!(
            link_graph(&g, 1).unwrap(),
            Hypergraph::new(3, vec![vec![2], vec![0, 2]]).unwrap()
        );
        let isolated = Hypergraph::new(3, vec![vec![0, 1]]).unwrap();
        assert_eq!(link_graph(&isolated, 2).unwrap(), Hypergraph::edgeless(2));
        // the singleton through v would become empty and is dropped
        let with_singleton = Hypergraph::new(2, vec![vec![0], vec![0, 1]]).unwrap();
        assert_eq!(
            link_graph(&with_singleton, 0).unwrap(),
            Hypergraph::new(1, vec![vec![0]]).unwrap()
        );
        assert!(link_graph(&isolated, 3).is_err());
    }

    #[test]
    fn complete_graph_examples() {
        assert_eq!(complete_r_graph(2, &r(&[1, 2])).unwrap().edge_count(), 3);
        let k = complete_r_graph(3, &r(&[2, 3])).unwrap();
        assert_eq!((k.level_count(2), k.level_count(3)), (3, 1));
        assert_eq!(
            complete_r_graph(3, &r(&[3])).unwrap(),
            Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap()
        );
        assert!(complete_r_graph(2, &r(&[3])).is_err());
    }

    #[test]
    fn chain_and_flags() {
        let c = chain_graph(&r(&[1, 2, 3]));
        assert_eq!(
            c,
            Hypergraph::new(3, vec![vec![0], vec![0, 1], vec![0, 1, 2]]).unwrap()
        );
        assert_eq!(
            chain_graph(&r(&[2])),
            Hypergraph::new(2, vec![vec![0, 1]]).unwrap()
        );
        assert_eq!(
            chain_graph(&r(&[1])),
            Hypergraph::new(1, vec![vec![0]]).unwrap()
        );
        assert!(is_flag(&c));
        assert!(!is_flag(&complete_r_graph(2, &r(&[1, 2])).unwrap()));
        assert!(is_flag(
            &Hypergraph::new(3, vec![vec![0], vec![1, 2]]).unwrap()
        ));
    }
}
