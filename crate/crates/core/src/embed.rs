//! Non-induced subgraph containment: embedding search, ordered copy counting,
//! automorphisms and copy density.
//!
//! The search maps pattern vertices one at a time in a fixed order. A vertex
//! is only placed on a host vertex whose per-size degrees dominate its own,
//! and every pattern edge is checked as soon as its last vertex is placed.

use std::collections::HashSet;
use std::ops::ControlFlow;

use num_bigint::BigInt;

use crate::combinatorics::falling_factorial;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rational::Rational;

/// Injective vertex map witnessing `H ⊆ G`, indexed by pattern vertex.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(transparent)]
pub struct Embedding(pub Vec<usize>);

impl Embedding {
    pub fn image(&self, v: usize) -> usize {
        self.0[v]
    }

    /// True iff the map is injective and sends every pattern edge to a host edge.
    pub fn is_valid(&self, host: &Hypergraph, pattern: &Hypergraph) -> bool {
        let mut seen = HashSet::new();
        self.0.len() == pattern.vertex_count()
            && self
                .0
                .iter()
                .all(|&v| v < host.vertex_count() && seen.insert(v))
            && pattern.edges().iter().all(|e| {
                let img: Vec<usize> = e.vertices().iter().map(|&v| self.0[v]).collect();
                host.has_edge(&img)
            })
    }
}

/// Read access the search needs from a host graph.
pub(crate) trait Host {
    fn vertex_count(&self) -> usize;
    fn contains(&self, mask: u64) -> bool;
    /// Number of host edges of size `k` through `v`.
    fn degree(&self, v: usize, k: usize) -> usize;
}

/// A [`Hypergraph`] indexed for membership and degree queries.
pub(crate) struct IndexedHost {
    n: usize,
    edges: HashSet<u64>,
    deg: Vec<Vec<usize>>,
}

impl IndexedHost {
    pub(crate) fn new(g: &Hypergraph) -> Self {
        let n = g.vertex_count();
        let mut deg = vec![vec![0usize; n + 1]; n];
        for e in g.edges() {
            for &v in e.vertices() {
                deg[v][e.len()] += 1;
            }
        }
        IndexedHost {
            n,
            edges: g.masks().iter().copied().collect(),
            deg,
        }
    }
}

impl Host for IndexedHost {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn contains(&self, mask: u64) -> bool {
        self.edges.contains(&mask)
    }

    fn degree(&self, v: usize, k: usize) -> usize {
        self.deg[v].get(k).copied().unwrap_or(0)
    }
}

/// A pattern compiled for a fixed vertex order.
#[derive(Clone, Debug)]
pub(crate) struct Plan {
    /// Pattern vertex placed at each position.
    order: Vec<usize>,
    /// Edges whose last vertex (in `order`) sits at each position, as masks
    /// over positions.
    completes: Vec<Vec<u64>>,
    /// Non-zero `(size, degree)` requirements of the vertex at each position.
    needs: Vec<Vec<(usize, usize)>>,
}

impl Plan {
    /// Order: `first` in the given order, then the rest by descending total
    /// degree (ties by index).
    pub(crate) fn new(h: &Hypergraph, first: &[usize]) -> Self {
        let n = h.vertex_count();
        let mut order: Vec<usize> = first.to_vec();
        let mut rest: Vec<usize> = (0..n).filter(|v| !first.contains(v)).collect();
        rest.sort_by_key(|&v| (std::cmp::Reverse(h.total_degree(v)), v));
        order.extend(rest);
        let mut pos = vec![0usize; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut completes = vec![Vec::new(); n];
        for e in h.edges() {
            let pm = e.vertices().iter().fold(0u64, |m, &v| m | (1u64 << pos[v]));
            let last = 63 - pm.leading_zeros() as usize;
            completes[last].push(pm);
        }
        let needs = order
            .iter()
            .map(|&v| {
                let mut by_size: Vec<(usize, usize)> = Vec::new();
                for e in h.edges().iter().filter(|e| e.contains(v)) {
                    match by_size.iter_mut().find(|(k, _)| *k == e.len()) {
                        Some(slot) => slot.1 += 1,
                        None => by_size.push((e.len(), 1)),
                    }
                }
                by_size
            })
            .collect();
        Plan {
            order,
            completes,
            needs,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.order.len()
    }

    /// Runs the search. `fixed` gives host images for the first positions.
    /// `visit` receives each complete map (indexed by pattern vertex).
    pub(crate) fn search<H: Host, F>(
        &self,
        host: &H,
        fixed: &[usize],
        mut visit: F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let k = self.len();
        if k > host.vertex_count() {
            return ControlFlow::Continue(());
        }
        let mut images = vec![usize::MAX; k];
        let mut used = 0u64;
        for (i, &g) in fixed.iter().enumerate() {
            if g >= host.vertex_count() || used & (1u64 << g) != 0 || !self.fits(host, i, g) {
                return ControlFlow::Continue(());
            }
            images[i] = g;
            used |= 1u64 << g;
            if !self.edges_ok(host, i, &images) {
                return ControlFlow::Continue(());
            }
        }
        let mut out = vec![0usize; k];
        self.extend(host, fixed.len(), &mut images, used, &mut out, &mut visit)
    }

    fn fits<H: Host>(&self, host: &H, pos: usize, g: usize) -> bool {
        self.needs[pos].iter().all(|&(s, d)| host.degree(g, s) >= d)
    }

    fn edges_ok<H: Host>(&self, host: &H, pos: usize, images: &[usize]) -> bool {
        self.completes[pos].iter().all(|&pm| {
            let mut img = 0u64;
            let mut bits = pm;
            while bits != 0 {
                let p = bits.trailing_zeros() as usize;
                img |= 1u64 << images[p];
                bits &= bits - 1;
            }
            host.contains(img)
        })
    }

    fn extend<H: Host, F>(
        &self,
        host: &H,
        pos: usize,
        images: &mut Vec<usize>,
        used: u64,
        out: &mut Vec<usize>,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if pos == self.len() {
            for (i, &v) in self.order.iter().enumerate() {
                out[v] = images[i];
            }
            return visit(out);
        }
        for g in 0..host.vertex_count() {
            if used & (1u64 << g) != 0 || !self.fits(host, pos, g) {
                continue;
            }
            images[pos] = g;
            if self.edges_ok(host, pos, images) {
                self.extend(host, pos + 1, images, used | (1u64 << g), out, visit)?;
            }
        }
        images[pos] = usize::MAX;
        ControlFlow::Continue(())
    }
}

fn types_compatible(g: &Hypergraph, h: &Hypergraph) -> bool {
    let rg = g.edge_types();
    h.vertex_count() <= g.vertex_count()
        && h.edge_types().iter().all(|k| rg.contains(k))
        && h.edge_types()
            .iter()
            .all(|&k| h.level_count(k) <= g.level_count(k))
}

/// A witness embedding of `h` into `g`, if `h ⊆ g`.
pub fn find_embedding(g: &Hypergraph, h: &Hypergraph) -> Option<Embedding> {
    if !types_compatible(g, h) {
        return None;
    }
    let host = IndexedHost::new(g);
    let mut found = None;
    let _ = Plan::new(h, &[]).search(&host, &[], |m| {
        found = Some(Embedding(m.to_vec()));
        ControlFlow::Break(())
    });
    found
}

pub fn contains(g: &Hypergraph, h: &Hypergraph) -> bool {
    find_embedding(g, h).is_some()
}

/// Number of injective maps sending every edge of `h` to an edge of `g`.
pub fn count_ordered_copies(g: &Hypergraph, h: &Hypergraph) -> u64 {
    if !types_compatible(g, h) {
        return 0;
    }
    let host = IndexedHost::new(g);
    let mut count = 0u64;
    let _ = Plan::new(h, &[]).search(&host, &[], |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

/// Default vertex cap for [`automorphism_count`].
pub const AUTOMORPHISM_CAP: usize = 12;

/// Number of vertex permutations preserving the edge set.
pub fn automorphism_count(h: &Hypergraph) -> Result<u64> {
    automorphism_count_capped(h, AUTOMORPHISM_CAP)
}

pub fn automorphism_count_capped(h: &Hypergraph, cap: usize) -> Result<u64> {
    if h.vertex_count() > cap {
        return Err(Error::cap(format!(
            "automorphism count limited to {cap} vertices, got {}",
            h.vertex_count()
        )));
    }
    // Same edge count on both sides, so an injective edge-preserving self-map
    // is a bijection on edges.
    Ok(count_ordered_copies(h, h))
}

/// Unlabeled copy count: ordered copies divided by `|Aut(h)|`.
pub fn count_copies(g: &Hypergraph, h: &Hypergraph) -> Result<u64> {
    Ok(count_ordered_copies(g, h) / automorphism_count(h)?)
}

/// `μ_H(G)`: probability that a uniformly random injection `V(H) → V(G)`
/// is an ordered copy.
pub fn copy_density(g: &Hypergraph, h: &Hypergraph) -> Result<Rational> {
    if h.vertex_count() > g.vertex_count() {
        return Err(Error::domain(format!(
            "pattern has {} vertices, host only {}",
            h.vertex_count(),
            g.vertex_count()
        )));
    }
    let total = falling_factorial(g.vertex_count(), h.vertex_count());
    Ok(Rational::new(
        BigInt::from(count_ordered_copies(g, h)),
        BigInt::from(total),
    ))
}
