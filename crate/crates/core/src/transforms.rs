//! Hypergraph constructions: blow-up, suspension, 2-subdivision and the
//! common-neighbour square of a graph.

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, MAX_VERTICES};

/// Replaces vertex `i` by an independent block of `sizes[i]` consecutive
/// vertices; every edge becomes all transversals of its blocks.
///
/// Block `i` occupies `[sum_{j<i} s_j, sum_{j<=i} s_j)`.
pub fn blowup(h: &Hypergraph, sizes: &[usize]) -> Result<Hypergraph> {
    if sizes.len() != h.vertex_count() {
        return Err(Error::domain(format!(
            "blow-up needs {} block sizes, got {}",
            h.vertex_count(),
            sizes.len()
        )));
    }
    if sizes.contains(&0) {
        return Err(Error::domain("blow-up block sizes must be positive"));
    }
    let total: usize = sizes.iter().sum();
    if total > MAX_VERTICES {
        return Err(Error::cap(format!(
            "blow-up has {total} vertices, more than {MAX_VERTICES}"
        )));
    }
    let mut offsets = Vec::with_capacity(sizes.len());
    let mut acc = 0;
    for &s in sizes {
        offsets.push(acc);
        acc += s;
    }
    let mut masks = Vec::new();
    for e in h.edges() {
        let mut partial = vec![0u64];
        for &v in e.vertices() {
            let (base, width) = (offsets[v], sizes[v]);
            partial = partial
                .iter()
                .flat_map(|&m| (0..width).map(move |j| m | (1u64 << (base + j))))
                .collect();
        }
        masks.extend(partial);
    }
    Ok(Hypergraph::from_masks(total, masks))
}

/// `H(t)`: every vertex blown up into `t` copies.
pub fn blowup_uniform(h: &Hypergraph, t: usize) -> Result<Hypergraph> {
    blowup(h, &vec![t; h.vertex_count()])
}

/// The `t`-fold suspension: each step appends one apex vertex to every edge.
pub fn suspend(h: &Hypergraph, t: usize) -> Result<Hypergraph> {
    let n = h.vertex_count() + t;
    if n > MAX_VERTICES {
        return Err(Error::cap(format!("suspension has {n} vertices")));
    }
    let apexes: u64 = (h.vertex_count()..n).fold(0, |m, v| m | (1u64 << v));
    Ok(Hypergraph::from_masks(
        n,
        h.masks().iter().map(|&m| m | apexes),
    ))
}

/// Replaces the `i`-th 2-edge `{u, v}` (canonical order) by `{u, x_i}` and
/// `{x_i, v}`, where `x_i` is the fresh vertex `n + i`.
pub fn subdivide2(h: &Hypergraph) -> Result<Hypergraph> {
    let pairs: Vec<u64> = h
        .masks()
        .iter()
        .copied()
        .filter(|m| m.count_ones() == 2)
        .collect();
    let n = h.vertex_count() + pairs.len();
    if n > MAX_VERTICES {
        return Err(Error::cap(format!("subdivision has {n} vertices")));
    }
    let mut masks: Vec<u64> = h
        .masks()
        .iter()
        .copied()
        .filter(|m| m.count_ones() != 2)
        .collect();
    for (i, &p) in pairs.iter().enumerate() {
        let x = 1u64 << (h.vertex_count() + i);
        let u = p & p.wrapping_neg();
        let v = p & !u;
        masks.push(u | x);
        masks.push(x | v);
    }
    Ok(Hypergraph::from_masks(n, masks))
}

/// Adjacency rows of a graph whose edges all have size two.
pub(crate) fn adjacency(g: &Hypergraph) -> Result<Vec<u64>> {
    if g.edges().iter().any(|e| e.len() != 2) {
        return Err(Error::domain("expected a 2-uniform graph"));
    }
    let mut adj = vec![0u64; g.vertex_count()];
    for &m in g.masks() {
        let u = m.trailing_zeros() as usize;
        let v = 63 - m.leading_zeros() as usize;
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    Ok(adj)
}

pub(crate) fn square_masks(adj: &[u64]) -> Vec<u64> {
    let n = adj.len();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if adj[u] & adj[v] != 0 {
                out.push((1u64 << u) | (1u64 << v));
            }
        }
    }
    out
}

/// `G^(2)`: same vertices, `{u, v}` an edge iff `u` and `v` share a neighbour.
pub fn square2(g: &Hypergraph) -> Result<Hypergraph> {
    let adj = adjacency(g)?;
    Ok(Hypergraph::from_masks(g.vertex_count(), square_masks(&adj)))
}
