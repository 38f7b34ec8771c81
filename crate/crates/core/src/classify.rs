//! Closed-form densities: the four-case `{1,2}` table, the `{1,k}` formula,
//! and the two colouring conditions around degeneracy.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{level_graph, Hypergraph};
use crate::rational::Rational;
use crate::transforms::adjacency;

/// Vertex cap for the exact colouring searches.
pub const COLORING_CAP: usize = 16;

fn check_cap(g: &Hypergraph, what: &str) -> Result<()> {
    if g.vertex_count() > COLORING_CAP {
        return Err(Error::cap(format!(
            "{what} is limited to {COLORING_CAP} vertices, got {}",
            g.vertex_count()
        )));
    }
    Ok(())
}

/// Exact chromatic number of a graph.
pub fn chromatic_number(g: &Hypergraph) -> Result<usize> {
    let adj = adjacency(g)?;
    check_cap(g, "chromatic number")?;
    let n = adj.len();
    if n == 0 {
        return Ok(0);
    }
    // Colour in descending degree order; vertex `order[i]` only sees earlier ones.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].count_ones()));
    let mut colors = vec![usize::MAX; n];
    for c in 1..=n {
        if color_with(&adj, &order, 0, c, 0, &mut colors) {
            return Ok(c);
        }
    }
    unreachable!("n colours always suffice")
}

fn color_with(
    adj: &[u64],
    order: &[usize],
    i: usize,
    c: usize,
    used: usize,
    colors: &mut [usize],
) -> bool {
    if i == order.len() {
        return true;
    }
    let v = order[i];
    // A fresh colour is interchangeable with any other unused one.
    for col in 0..c.min(used + 1) {
        let clash = (0..i).any(|j| colors[order[j]] == col && adj[v] >> order[j] & 1 == 1);
        if !clash {
            colors[v] = col;
            if color_with(adj, order, i + 1, c, used.max(col + 1), colors) {
                return true;
            }
        }
    }
    colors[v] = usize::MAX;
    false
}

/// Two-colouring of a graph given by adjacency masks, or an odd cycle.
fn two_color(adj: &[u64]) -> std::result::Result<Vec<u8>, Vec<usize>> {
    let n = adj.len();
    let mut color = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let mut nb = adj[u];
            while nb != 0 {
                let v = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    parent[v] = u;
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return Err(cycle_through(u, v, &parent, &depth));
                }
            }
        }
    }
    Ok(color)
}

/// The cycle formed by BFS tree paths from `u` and `v` to their common ancestor plus edge `uv`.
fn cycle_through(mut u: usize, mut v: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let mut left = Vec::new();
    let mut right = Vec::new();
    while depth[u] > depth[v] {
        left.push(u);
        u = parent[u];
    }
    while depth[v] > depth[u] {
        right.push(v);
        v = parent[v];
    }
    while u != v {
        left.push(u);
        right.push(v);
        u = parent[u];
        v = parent[v];
    }
    left.push(u);
    left.extend(right.into_iter().rev());
    left
}

/// A shortest path between two singleton vertices, as a vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedPath {
    /// The path has `2k` vertices.
    pub k: usize,
    pub vertices: Vec<usize>,
}

fn singleton_mask(h: &Hypergraph) -> u64 {
    h.masks()
        .iter()
        .filter(|m| m.count_ones() == 1)
        .fold(0, |acc, m| acc | m)
}

fn require_12(h: &Hypergraph, exact: bool) -> Result<()> {
    let types = h.edge_types();
    let ok = if exact {
        types == [1, 2]
    } else {
        types.iter().all(|&k| k == 1 || k == 2)
    };
    if !ok {
        let want = if exact {
            "exactly {1,2}"
        } else {
            "within {1,2}"
        };
        return Err(Error::domain(format!(
            "edge sizes must be {want}, got {types:?}"
        )));
    }
    Ok(())
}

/// Smallest `k` with a closed path on `2k` vertices in `h`.
///
/// Only defined when the 2-level is bipartite: then a path between two
/// singleton vertices has an odd number of edges exactly when its ends have
/// opposite colours, so the shortest such path gives the answer.
pub fn min_closed_even_path(h: &Hypergraph) -> Result<Option<ClosedPath>> {
    require_12(h, false)?;
    let adj = adjacency(&level_graph(h, 2))?;
    let color = two_color(&adj).map_err(|_| {
        Error::domain("the 2-level is not bipartite; closed even paths are not defined here")
    })?;
    let singles = mask_list(singleton_mask(h));
    let n = adj.len();
    let mut best: Option<Vec<usize>> = None;
    for &s in &singles {
        let mut parent = vec![usize::MAX; n];
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let mut nb = adj[u];
            while nb != 0 {
                let v = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        for &t in &singles {
            if t > s && dist[t] != usize::MAX && color[t] != color[s] {
                let shorter = best.as_ref().is_none_or(|b| dist[t] + 1 < b.len());
                if shorter {
                    let mut path = vec![t];
                    let mut x = t;
                    while x != s {
                        x = parent[x];
                        path.push(x);
                    }
                    path.reverse();
                    best = Some(path);
                }
            }
        }
    }
    Ok(best.map(|vertices| ClosedPath {
        k: vertices.len() / 2,
        vertices,
    }))
}

fn mask_list(mut m: u64) -> Vec<usize> {
    let mut out = Vec::new();
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Case12 {
    Nonbipartite,
    K212,
    ClosedPath,
    Degenerate,
}

impl fmt::Display for Case12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case12::Nonbipartite => "nonbipartite",
            Case12::K212 => "k212",
            Case12::ClosedPath => "closedPath",
            Case12::Degenerate => "degenerate",
        })
    }
}

/// Structure certifying a classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Witness12 {
    OddCycle(Vec<usize>),
    /// Images of the two vertices of `K_2^{1,2}`.
    K212([usize; 2]),
    ClosedPath(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification12 {
    pub case: Case12,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<usize>,
    pub density: Rational,
    pub witness: Option<Witness12>,
}

/// Turán density of a hypergraph with edge sizes exactly `{1,2}`.
pub fn classify12(h: &Hypergraph) -> Result<Classification12> {
    require_12(h, true)?;
    let h2 = level_graph(h, 2);
    let adj = adjacency(&h2)?;
    if let Err(cycle) = two_color(&adj) {
        let chi = chromatic_number(&h2)?;
        return Ok(Classification12 {
            case: Case12::Nonbipartite,
            chi: Some(chi),
            density: Rational::from_integer(2) - Rational::new(1, chi as i64 - 1),
            witness: Some(Witness12::OddCycle(cycle)),
        });
    }
    Ok(match min_closed_even_path(h)? {
        Some(p) if p.k == 1 => Classification12 {
            case: Case12::K212,
            chi: None,
            density: Rational::new(5, 4),
            witness: Some(Witness12::K212([p.vertices[0], p.vertices[1]])),
        },
        Some(p) => Classification12 {
            case: Case12::ClosedPath,
            chi: None,
            density: Rational::new(9, 8),
            witness: Some(Witness12::ClosedPath(p.vertices)),
        },
        None => Classification12 {
            case: Case12::Degenerate,
            chi: None,
            density: Rational::one(),
            witness: None,
        },
    })
}

/// A non-negative real held as `scaled / 10^digits`, truncated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decimal {
    scaled: BigInt,
    digits: u32,
}

impl Decimal {
    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().expect("decimal text")
    }

    /// Absolute difference from a rational, as `f64`.
    pub fn distance_to(&self, r: &Rational) -> f64 {
        let exact = Rational::new(self.scaled.clone(), BigInt::from(10u8).pow(self.digits));
        (exact - r).abs().to_f64()
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.scaled.abs().to_string();
        let d = self.digits as usize;
        let s = format!("{s:0>width$}", width = d + 1);
        let (int, frac) = s.split_at(s.len() - d);
        let sign = if self.scaled.is_negative() { "-" } else { "" };
        write!(f, "{sign}{int}.{frac}")
    }
}

/// Digits carried by [`formula_1k`]. Two truncations leave the result at
/// most `2 * 10^-FORMULA_DIGITS` below the true value.
pub const FORMULA_DIGITS: u32 = 60;

/// Turán density of a `{1,k}`-hypergraph whose singletons cover its `k`-edges,
/// given the density `p` of its `k`-level.
pub fn formula_1k(k: usize, p: &Rational) -> Result<Decimal> {
    if k < 2 {
        return Err(Error::domain(format!("k must be at least 2, got {k}")));
    }
    if p.is_negative() || *p >= 1 {
        return Err(Error::domain(format!(
            "the k-level density must lie in [0, 1), got {p}"
        )));
    }
    let digits = FORMULA_DIGITS;
    let ten = BigInt::from(10u8);
    let unit = ten.pow(digits);
    let kk = k as i64;
    let threshold = Rational::one() - Rational::new(1, kk);
    if *p >= threshold {
        let v = (Rational::one() + p) * Rational::from_integer(unit.clone());
        return Ok(Decimal {
            scaled: v.floor(),
            digits,
        });
    }
    // x = (1 / (k (1 - p)))^(1/(k-1)), and the value is 1 + x (1 - 1/k).
    let base = (Rational::from_integer(kk) * (Rational::one() - p)).recip();
    let e = (k - 1) as u32;
    let radicand = (base * Rational::from_integer(ten.pow(digits * e))).floor();
    let x = radicand.to_biguint().expect("non-negative").nth_root(e);
    let x = BigInt::from(x);
    let tail = Rational::new(x * BigInt::from(kk - 1), BigInt::from(kk));
    Ok(Decimal {
        scaled: unit + tail.floor(),
        digits,
    })
}

/// Whether each level `H^k` admits a partition into `k` classes with every
/// `k`-edge meeting each class once.
pub fn degenerate_necessary(h: &Hypergraph) -> Result<bool> {
    check_cap(h, "k-partiteness check")?;
    for k in h.edge_types() {
        let level: Vec<u64> = h
            .masks()
            .iter()
            .copied()
            .filter(|m| m.count_ones() as usize == k)
            .collect();
        let mut colors = vec![usize::MAX; h.vertex_count()];
        if !rainbow(&level, |_| k, 0, &mut colors) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A colouring `V(H) -> {1..max R}` giving every `k`-edge exactly the colours
/// `1..=k`; it exists iff `H` sits inside a blow-up of the chain on `R(H)`.
pub fn chain_blowup_embeddable(h: &Hypergraph) -> Result<Option<Vec<usize>>> {
    check_cap(h, "chain blow-up embedding")?;
    let mut colors = vec![usize::MAX; h.vertex_count()];
    let top = h.edge_types().last().copied().unwrap_or(1);
    let found = rainbow(h.masks(), |m| m.count_ones() as usize, 0, &mut colors);
    Ok(found.then(|| {
        colors
            .iter()
            .map(|&c| if c == usize::MAX { 1 } else { (c + 1).min(top) })
            .collect()
    }))
}

/// Backtracking over vertices: every edge must use distinct colours, each
/// below the edge's palette size.
fn rainbow(
    edges: &[u64],
    palette: impl Fn(u64) -> usize + Copy,
    v: usize,
    colors: &mut [usize],
) -> bool {
    let n = colors.len();
    if v == n {
        return true;
    }
    let mine: Vec<u64> = edges.iter().copied().filter(|m| m >> v & 1 == 1).collect();
    if mine.is_empty() {
        return rainbow(edges, palette, v + 1, colors);
    }
    let limit = mine.iter().map(|&m| palette(m)).min().unwrap_or(0);
    for c in 0..limit {
        let ok = mine.iter().all(|&m| {
            let mut others = m & !(1u64 << v) & ((1u64 << v) - 1);
            while others != 0 {
                let u = others.trailing_zeros() as usize;
                others &= others - 1;
                if colors[u] == c {
                    return false;
                }
            }
            true
        });
        if ok {
            colors[v] = c;
            if rainbow(edges, palette, v + 1, colors) {
                return true;
            }
        }
    }
    colors[v] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{chain_graph, complete_r_graph, EdgeTypeSet};

    fn g(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|e| e.to_vec())).unwrap()
    }

    fn cycle(n: usize) -> Hypergraph {
        Hypergraph::new(n, (0..n).map(|i| vec![i, (i + 1) % n])).unwrap()
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&cycle(3)).unwrap(), 3);
        assert_eq!(chromatic_number(&cycle(5)).unwrap(), 3);
        assert_eq!(chromatic_number(&cycle(6)).unwrap(), 2);
        assert_eq!(
            chromatic_number(&complete_r_graph(5, &EdgeTypeSet::new([2]).unwrap()).unwrap())
                .unwrap(),
            5
        );
        assert_eq!(chromatic_number(&Hypergraph::edgeless(3)).unwrap(), 1);
        assert!(chromatic_number(&Hypergraph::edgeless(17)).is_err());
        assert!(chromatic_number(&g(2, &[&[0]])).is_err());
    }

    #[test]
    fn odd_cycle_witness_is_a_cycle() {
        let h = g(6, &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 0], &[4, 5]]);
        let adj = adjacency(&h).unwrap();
        let c = two_color(&adj).unwrap_err();
        assert_eq!(c.len() % 2, 1);
        for i in 0..c.len() {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            assert!(adj[a] >> b & 1 == 1);
        }
    }

    #[test]
    fn closed_paths() {
        let k212 = g(2, &[&[0], &[1], &[0, 1]]);
        assert_eq!(min_closed_even_path(&k212).unwrap().unwrap().k, 1);
        let pbar4 = g(4, &[&[0], &[3], &[0, 1], &[1, 2], &[2, 3]]);
        let p = min_closed_even_path(&pbar4).unwrap().unwrap();
        assert_eq!((p.k, p.vertices), (2, vec![0, 1, 2, 3]));
        let chain = chain_graph(&EdgeTypeSet::new([1, 2]).unwrap());
        assert_eq!(min_closed_even_path(&chain).unwrap(), None);
        // Same colour class: an even path, never closed.
        assert_eq!(
            min_closed_even_path(&g(3, &[&[0], &[2], &[0, 1], &[1, 2]])).unwrap(),
            None
        );
        assert!(min_closed_even_path(&g(3, &[&[0], &[0, 1], &[1, 2], &[0, 2]])).is_err());
    }

    #[test]
    fn classification_table() {
        let k212 = g(2, &[&[0], &[1], &[0, 1]]);
        let c = classify12(&k212).unwrap();
        assert_eq!((c.case, c.density), (Case12::K212, Rational::new(5, 4)));
        let pbar4 = g(4, &[&[0], &[3], &[0, 1], &[1, 2], &[2, 3]]);
        assert_eq!(classify12(&pbar4).unwrap().density, Rational::new(9, 8));
        let mut c5: Vec<Vec<usize>> = (0..5).map(|i| vec![i, (i + 1) % 5]).collect();
        c5.push(vec![0]);
        let c = classify12(&Hypergraph::new(5, c5).unwrap()).unwrap();
        assert_eq!(
            (c.case, c.chi, c.density),
            (Case12::Nonbipartite, Some(3), Rational::new(3, 2))
        );
        let chain = chain_graph(&EdgeTypeSet::new([1, 2]).unwrap());
        assert_eq!(classify12(&chain).unwrap().case, Case12::Degenerate);
        assert!(classify12(&cycle(3)).is_err());
        let json = serde_json::to_string(&classify12(&pbar4).unwrap()).unwrap();
        assert!(
            json.starts_with(r#"{"case":"closedPath","density":"9/8""#),
            "{json}"
        );
    }

    #[test]
    fn formula_values() {
        let v = formula_1k(2, &Rational::zero()).unwrap();
        assert!(v.to_string().starts_with("1.25000000"));
        assert_eq!(formula_1k(2, &Rational::new(1, 2)).unwrap().to_f64(), 1.5);
        let v = formula_1k(3, &Rational::zero()).unwrap();
        assert!(v.to_string().starts_with("1.3849001794"), "{v}");
        assert!(formula_1k(1, &Rational::zero()).is_err());
        assert!(formula_1k(3, &Rational::one()).is_err());
    }

    #[test]
    fn colouring_conditions() {
        let h1 = g(4, &[&[0, 1], &[0, 2], &[1, 2, 3]]);
        assert!(degenerate_necessary(&h1).unwrap());
        assert_eq!(chain_blowup_embeddable(&h1).unwrap(), None);
        assert!(!degenerate_necessary(&cycle(3)).unwrap());
        assert!(degenerate_necessary(&g(2, &[&[0], &[1], &[0, 1]])).unwrap());
        let r = EdgeTypeSet::new([1, 2, 3]).unwrap();
        let c = chain_blowup_embeddable(&chain_graph(&r)).unwrap().unwrap();
        assert_eq!(c, vec![1, 2, 3]);
    }
}
