//! Lower-bound constructions with exact Lubell values and their limits.
//!
//! Every builder checks its forbidden target with the embedding search before
//! returning, so `freeness_checked` is only set when absence was confirmed.

use serde::Serialize;

use crate::classify::{classify12, min_closed_even_path, Case12};
use crate::combinatorics::subsets_of_size;
use crate::embed::find_embedding;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, MAX_VERTICES};
use crate::rational::Rational;
use crate::transforms::suspend;

/// Up to this order every closed path is also checked by embedding search.
const PATH_SEARCH_ORDER: usize = 12;
/// Longest closed path searched explicitly above that order.
const PATH_SEARCH_LONG: usize = 6;

#[derive(Clone, Debug, Serialize)]
pub struct ConstructionReport {
    pub kind: String,
    pub graph: Hypergraph,
    pub lubell: Rational,
    pub limit: Rational,
    pub gap: Rational,
    pub freeness_checked: bool,
    /// What the graph avoids; `None` when the target is a whole family.
    pub target: Option<Hypergraph>,
    pub target_description: String,
}

fn report(
    kind: &str,
    graph: Hypergraph,
    limit: Rational,
    target: Option<Hypergraph>,
    desc: String,
) -> ConstructionReport {
    let lubell = graph.lubell();
    let freeness_checked = target
        .as_ref()
        .is_some_and(|t| find_embedding(&graph, t).is_none());
    ConstructionReport {
        kind: kind.to_string(),
        gap: &lubell - &limit,
        graph,
        lubell,
        limit,
        freeness_checked,
        target,
        target_description: desc,
    }
}

/// `lubell - limit` for a report.
pub fn limit_gap(report: &ConstructionReport) -> Rational {
    &report.lubell - &report.limit
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::domain(format!("n must be at least {min}, got {n}")));
    }
    if n > MAX_VERTICES {
        return Err(Error::cap(format!(
            "n = {n} exceeds {MAX_VERTICES} vertices"
        )));
    }
    Ok(())
}

fn low(a: usize) -> u64 {
    if a >= 64 {
        u64::MAX
    } else {
        (1u64 << a) - 1
    }
}

pub fn k2_12() -> Hypergraph {
    Hypergraph::from_masks(2, [0b01, 0b10, 0b11])
}

/// Closed path on `2k` vertices: a path whose two ends carry singletons.
pub fn closed_path(k: usize) -> Result<Hypergraph> {
    if k == 0 {
        return Err(Error::domain("closed paths need k >= 1"));
    }
    let m = 2 * k;
    check_n(m, 2)?;
    let mut masks = vec![1u64, 1u64 << (m - 1)];
    masks.extend((0..m - 1).map(|i| 0b11u64 << i));
    Ok(Hypergraph::from_masks(m, masks))
}

/// Singletons on the first `a` vertices and every pair not inside them.
pub fn build_example1(n: usize, a: usize) -> Result<ConstructionReport> {
    check_n(n, 0)?;
    if a > n {
        return Err(Error::domain(format!("part size {a} exceeds n = {n}")));
    }
    let inside = low(a);
    let mut masks: Vec<u64> = (0..a).map(|v| 1u64 << v).collect();
    masks.extend(
        subsets_of_size(n, 2)
            .into_iter()
            .filter(|&m| m & inside != m),
    );
    let g = Hypergraph::from_masks(n, masks);
    Ok(report(
        "example1",
        g,
        Rational::new(5, 4),
        Some(k2_12()),
        "K_2^{1,2}".into(),
    ))
}

/// Balanced bipartition with all `(k+1)`-sets inside a part and all
/// `(k+2)`-sets meeting both parts. Avoids `k` suspensions of `K_2^{1,2}`.
pub fn build_suspension_tower(n: usize, k: usize) -> Result<ConstructionReport> {
    check_n(n, k + 2)?;
    let a = low(n / 2);
    let b = low(n) & !a;
    let mut masks: Vec<u64> = subsets_of_size(n, k + 1)
        .into_iter()
        .filter(|&m| m & a == m || m & b == m)
        .collect();
    masks.extend(
        subsets_of_size(n, k + 2)
            .into_iter()
            .filter(|&m| m & a != 0 && m & b != 0),
    );
    let g = Hypergraph::from_masks(n, masks);
    let target = suspend(&k2_12(), k)?;
    let limit = Rational::one() + Rational::new(1, 1i64 << (k + 1));
    let kind = if k == 1 { "example2" } else { "tower" };
    Ok(report(
        kind,
        g,
        limit,
        Some(target),
        format!("S^{k}(K_2^{{1,2}})"),
    ))
}

/// Pairs inside the two halves and triples across them.
pub fn build_example2(n: usize) -> Result<ConstructionReport> {
    check_n(n, 3)?;
    build_suspension_tower(n, 1)
}

/// Singletons on `X` (the first `floor(3n/4)` vertices) and all pairs between
/// `X` and its complement. Contains no closed even path at all.
pub fn build_closed_path_extremal(n: usize) -> Result<ConstructionReport> {
    check_n(n, 4)?;
    let x = 3 * n / 4;
    let xm = low(x);
    let mut masks: Vec<u64> = (0..x).map(|v| 1u64 << v).collect();
    masks.extend(
        subsets_of_size(n, 2)
            .into_iter()
            .filter(|&m| (m & xm).count_ones() == 1),
    );
    let g = Hypergraph::from_masks(n, masks);
    let mut checked = min_closed_even_path(&g)?.is_none();
    let longest = if n <= PATH_SEARCH_ORDER {
        n
    } else {
        PATH_SEARCH_LONG
    };
    for k in 1..=longest / 2 {
        checked &= find_embedding(&g, &closed_path(k)?).is_none();
    }
    let lubell = g.lubell();
    let limit = Rational::new(9, 8);
    Ok(ConstructionReport {
        kind: "closedpath".into(),
        gap: &lubell - &limit,
        graph: g,
        lubell,
        limit,
        freeness_checked: checked,
        target: None,
        target_description: "every closed path".into(),
    })
}

/// All singletons plus the complete `parts`-partite graph with balanced parts.
/// Avoids any `{1,2}`-graph whose 2-level needs more than `parts` colours.
pub fn build_turan_singletons(
    n: usize,
    parts: usize,
    target: Option<&Hypergraph>,
) -> Result<ConstructionReport> {
    check_n(n, 1)?;
    if parts == 0 {
        return Err(Error::domain("at least one part is needed"));
    }
    let part = |v: usize| v * parts / n;
    let mut masks: Vec<u64> = (0..n).map(|v| 1u64 << v).collect();
    for u in 0..n {
        for v in u + 1..n {
            if part(u) != part(v) {
                masks.push((1u64 << u) | (1u64 << v));
            }
        }
    }
    let g = Hypergraph::from_masks(n, masks);
    let limit = Rational::from_integer(2) - Rational::new(1, parts as i64);
    let desc = format!("{{1,2}}-graphs with 2-level chromatic number above {parts}");
    Ok(report("turan", g, limit, target.cloned(), desc))
}

/// The `{1,k}` extremal shape: singletons on `X` (the first `x` vertices), the
/// supplied `k`-graph on `X`, and every `k`-set meeting the complement.
///
/// `inner` should be an extremal `H^k`-free `k`-graph on `x` vertices and
/// `limit` the corresponding density value; neither is derived here.
pub fn build_one_k(
    n: usize,
    x: usize,
    inner: &Hypergraph,
    target: Option<&Hypergraph>,
    limit: Rational,
) -> Result<ConstructionReport> {
    check_n(n, 1)?;
    let types = inner.edge_types();
    let k = match types.as_slice() {
        [k] if *k >= 2 => *k,
        [] => return Err(Error::domain("the inner k-graph has no edges")),
        _ => {
            return Err(Error::domain(format!(
                "the inner graph must be k-uniform with k >= 2, got sizes {types:?}"
            )))
        }
    };
    if inner.vertex_count() != x || x > n {
        return Err(Error::domain(format!(
            "the inner graph has {} vertices, expected x = {x} <= n = {n}",
            inner.vertex_count()
        )));
    }
    let xm = low(x);
    let mut masks: Vec<u64> = (0..x).map(|v| 1u64 << v).collect();
    masks.extend(inner.masks());
    masks.extend(subsets_of_size(n, k).into_iter().filter(|&m| m & !xm != 0));
    let g = Hypergraph::from_masks(n, masks);
    Ok(report(
        "one-k",
        g,
        limit,
        target.cloned(),
        format!("{{1,{k}}}-graph"),
    ))
}

/// The construction matching a `{1,2}`-graph's classification, at `n` vertices.
pub fn matching_construction(h: &Hypergraph, n: usize) -> Result<ConstructionReport> {
    let c = classify12(h)?;
    let mut r = match c.case {
        Case12::Nonbipartite => {
            build_turan_singletons(n, c.chi.expect("chi present") - 1, Some(h))?
        }
        Case12::K212 => build_example1(n, n / 2)?,
        Case12::ClosedPath => build_closed_path_extremal(n)?,
        Case12::Degenerate => {
            check_n(n, 2)?;
            let g = Hypergraph::from_masks(n, subsets_of_size(n, 2));
            report("pairs", g, Rational::one(), None, String::new())
        }
    };
    // Whatever the builder avoided, the caller cares about `h` itself.
    r.freeness_checked = find_embedding(&r.graph, h).is_none();
    r.target = Some(h.clone());
    r.target_description = "the classified graph".into();
    debug_assert_eq!(r.limit, c.density);
    Ok(r)
}
