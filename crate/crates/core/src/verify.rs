//! Desk-scale checks of three statements: the `G^(2)` edge-count inequality
//! with its equality cases, supersaturation above a density threshold, and
//! the finite relations between `π_n` values (flags, monotonicity, blow-ups,
//! suspensions).
//!
//! Verifiers never panic on a failed check; they return a [`LemmaReport`]
//! listing violations.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::classify12;
use crate::combinatorics::{binomial, lcm, subsets_of_size};
use crate::embed::count_copies;
use crate::error::{Error, Result};
use crate::extremal::{candidate_count, pi_sequence, ForbiddenFamily, SearchConfig};
use crate::hypergraph::{is_flag, Hypergraph};
use crate::rational::Rational;
use crate::transforms::{adjacency, blowup_uniform, square_masks, suspend};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub item: String,
    pub graph: Option<Hypergraph>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    /// Number of graphs (or comparisons) checked.
    pub universe_size: u64,
    pub violations: Vec<Violation>,
    pub extremal_witnesses: Vec<Hypergraph>,
    /// Observations that are not failures.
    pub findings: Vec<String>,
    pub skipped: Vec<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SquareLemma {
    pub difference: i64,
    pub bound: i64,
    pub equality: bool,
}

/// `|E(G)| - |E(G^(2))|` against `floor(n/2)`.
pub fn square_lemma_holds(g: &Hypergraph) -> Result<SquareLemma> {
    let adj = adjacency(g)?;
    Ok(square_stats(&adj))
}

fn square_stats(adj: &[u64]) -> SquareLemma {
    let edges: u32 = adj.iter().map(|m| m.count_ones()).sum::<u32>() / 2;
    let difference = edges as i64 - square_masks(adj).len() as i64;
    let bound = (adj.len() / 2) as i64;
    SquareLemma {
        difference,
        bound,
        equality: difference == bound,
    }
}

/// Part sizes of each component if every component is complete bipartite.
/// An isolated vertex counts as `K_{1,0}`.
fn bipartite_components(adj: &[u64]) -> Option<Vec<(usize, usize)>> {
    let n = adj.len();
    let mut side = vec![u8::MAX; n];
    let mut parts = Vec::new();
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        let mut class = [0u64; 2];
        let mut edge_ends = 0u32;
        while let Some(u) = stack.pop() {
            class[side[u] as usize] |= 1 << u;
            edge_ends += adj[u].count_ones();
            let mut nb = adj[u];
            while nb != 0 {
                let v = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if side[v] == u8::MAX {
                    side[v] = 1 - side[u];
                    stack.push(v);
                } else if side[v] == side[u] {
                    return None;
                }
            }
        }
        let (a, b) = (class[0].count_ones(), class[1].count_ones());
        if edge_ends / 2 != a * b {
            return None;
        }
        parts.push((a as usize, b as usize));
    }
    Some(parts)
}

/// Every component complete bipartite with part sizes within one of each
/// other, and at most one component of odd order.
pub fn is_balanced_complete_bipartite_union(g: &Hypergraph) -> Result<bool> {
    Ok(balanced_union(&adjacency(g)?))
}

fn balanced_union(adj: &[u64]) -> bool {
    bipartite_components(adj).is_some_and(|parts| {
        parts.iter().all(|&(a, b)| a.abs_diff(b) <= 1)
            && parts.iter().filter(|&&(a, b)| (a + b) % 2 == 1).count() <= 1
    })
}

/// The equality shape written as `K_{t_1,t_1} ∪ ... ∪ K_{t_k,t_k}` plus one
/// isolated vertex when `n` is odd.
fn displayed_union(adj: &[u64]) -> bool {
    bipartite_components(adj).is_some_and(|parts| {
        let isolated = parts.iter().filter(|&&(a, b)| a + b == 1).count();
        parts.iter().all(|&(a, b)| a == b || a + b == 1) && isolated == adj.len() % 2
    })
}

/// How the graphs on `n` vertices are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Enumeration {
    /// Every labelled graph.
    Labeled,
    /// One graph per isomorphism class, weighted by its number of labellings.
    Orbits,
}

/// Largest `n` accepted by the exhaustive square check.
pub const SQUARE_LEMMA_MAX_N: usize = 7;
/// Below this order the labelled enumeration is used by default.
pub const ORBIT_THRESHOLD: usize = 6;

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            out.push((u, v));
        }
    }
    out
}

fn adj_of(n: usize, pairs: &[(usize, usize)], bits: u32) -> Vec<u64> {
    let mut adj = vec![0u64; n];
    let mut b = bits;
    while b != 0 {
        let (u, v) = pairs[b.trailing_zeros() as usize];
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
        b &= b - 1;
    }
    adj
}

fn bits_of(adj: &[u64], pairs: &[(usize, usize)]) -> u32 {
    pairs
        .iter()
        .enumerate()
        .filter(|(_, &(u, v))| adj[u] >> v & 1 == 1)
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// Canonical form: the least pair-bitmask over all relabellings that list
/// vertices by non-decreasing degree. Returns the form and `|Aut|`.
fn canonical(adj: &[u64], pairs: &[(usize, usize)]) -> (u32, u64) {
    let n = adj.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| adj[v].count_ones());
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if adj[c[0]].count_ones() == adj[v].count_ones() => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best = (u32::MAX, 0u64);
    let mut label = vec![0usize; n];
    let mut seq: Vec<usize> = Vec::with_capacity(n);
    canon_rec(adj, pairs, &classes, 0, &mut seq, &mut label, &mut best);
    best
}

fn canon_rec(
    adj: &[u64],
    pairs: &[(usize, usize)],
    classes: &[Vec<usize>],
    ci: usize,
    seq: &mut Vec<usize>,
    label: &mut [usize],
    best: &mut (u32, u64),
) {
    if ci == classes.len() {
        for (i, &v) in seq.iter().enumerate() {
            label[v] = i;
        }
        let mut relabelled = vec![0u64; adj.len()];
        for (u, &m) in adj.iter().enumerate() {
            let mut b = m;
            while b != 0 {
                let v = b.trailing_zeros() as usize;
                relabelled[label[u]] |= 1 << label[v];
                b &= b - 1;
            }
        }
        let bits = bits_of(&relabelled, pairs);
        if bits < best.0 {
            *best = (bits, 1);
        } else if bits == best.0 {
            best.1 += 1;
        }
        return;
    }
    let class = &classes[ci];
    let mut perm: Vec<usize> = class.clone();
    permute(&mut perm, 0, &mut |p| {
        let len = seq.len();
        seq.extend_from_slice(p);
        canon_rec(adj, pairs, classes, ci + 1, seq, label, best);
        seq.truncate(len);
    });
}

fn permute(items: &mut [usize], k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

#[derive(Default)]
struct Level {
    labeled: u64,
    /// Canonical form of each failing class, with its reason.
    violations: BTreeMap<u32, String>,
    equality: BTreeSet<u32>,
}

impl Level {
    fn merge(mut self, other: Level) -> Level {
        self.labeled += other.labeled;
        self.violations.extend(other.violations);
        self.equality.extend(other.equality);
        self
    }
}

fn judge(
    adj: &[u64],
    pairs: &[(usize, usize)],
    level: &mut Level,
    weight: u64,
    canon: Option<u32>,
) {
    level.labeled += weight;
    let s = square_stats(adj);
    let union = balanced_union(adj);
    let reason = if s.difference > s.bound {
        Some(format!(
            "difference {} exceeds bound {}",
            s.difference, s.bound
        ))
    } else if s.equality != union {
        Some(format!(
            "equality = {} but balanced complete bipartite union = {union}",
            s.equality
        ))
    } else {
        None
    };
    if reason.is_some() || s.equality {
        let c = canon.unwrap_or_else(|| canonical(adj, pairs).0);
        if let Some(r) = reason {
            level.violations.insert(c, r);
        }
        if s.equality {
            level.equality.insert(c);
        }
    }
}

fn labeled_level(n: usize) -> Level {
    let pairs = pair_index(n);
    let total: u64 = 1 << pairs.len();
    let chunk: u64 = 1 << 12;
    (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut level = Level::default();
            for bits in c * chunk..((c + 1) * chunk).min(total) {
                let adj = adj_of(n, &pairs, bits as u32);
                judge(&adj, &pairs, &mut level, 1, None);
            }
            level
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Level::default(), Level::merge)
}

/// Isomorphism class representatives on `n` vertices with their `|Aut|`,
/// grown one vertex at a time.
fn orbit_representatives(n: usize) -> Vec<(u32, u64)> {
    let mut reps: Vec<u32> = vec![0];
    for m in 1..=n {
        let pairs = pair_index(m);
        let prev_pairs = pair_index(m - 1);
        let mut next: BTreeMap<u32, u64> = BTreeMap::new();
        for &r in &reps {
            let base = adj_of(m - 1, &prev_pairs, r);
            for nb in 0u64..1 << (m - 1) {
                let mut adj = base.clone();
                adj.push(nb);
                for (v, a) in adj.iter_mut().enumerate().take(m - 1) {
                    if nb >> v & 1 == 1 {
                        *a |= 1 << (m - 1);
                    }
                }
                let (c, aut) = canonical(&adj, &pairs);
                next.insert(c, aut);
            }
        }
        if m == n {
            return next.into_iter().collect();
        }
        reps = next.into_keys().collect();
    }
    vec![(0, 1)]
}

fn orbit_level(n: usize) -> Level {
    let pairs = pair_index(n);
    let fact: u64 = (1..=n as u64).product();
    orbit_representatives(n)
        .into_par_iter()
        .map(|(c, aut)| {
            let mut level = Level::default();
            judge(
                &adj_of(n, &pairs, c),
                &pairs,
                &mut level,
                fact / aut,
                Some(c),
            );
            level
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Level::default(), Level::merge)
}

/// Exhaustive check of the `G^(2)` inequality and its equality cases for all
/// graphs on `1..=n_max` vertices, with the default enumeration per order.
///
/// Orders up to `min(n_max, 6)` are enumerated both ways and the two results
/// compared.
pub fn verify_square_lemma_exhaustive(n_max: usize) -> Result<LemmaReport> {
    verify_square_lemma(n_max, None)
}

/// As [`verify_square_lemma_exhaustive`], forcing one enumeration throughout.
pub fn verify_square_lemma(n_max: usize, force: Option<Enumeration>) -> Result<LemmaReport> {
    if n_max > SQUARE_LEMMA_MAX_N {
        return Err(Error::cap(format!(
            "exhaustive square check is limited to n <= {SQUARE_LEMMA_MAX_N}, got {n_max}"
        )));
    }
    let mut report = LemmaReport {
        lemma: "square-edge-count".into(),
        ..LemmaReport::default()
    };
    for n in 1..=n_max {
        let pairs = pair_index(n);
        let mode = force.unwrap_or(if n < ORBIT_THRESHOLD {
            Enumeration::Labeled
        } else {
            Enumeration::Orbits
        });
        let level = match mode {
            Enumeration::Labeled => labeled_level(n),
            Enumeration::Orbits => orbit_level(n),
        };
        let expected = 1u64 << pairs.len();
        if level.labeled != expected {
            report.violations.push(Violation {
                item: format!("n = {n} enumeration"),
                graph: None,
                detail: format!(
                    "covered {} labelled graphs, expected {expected}",
                    level.labeled
                ),
            });
        }
        if force.is_none() && n <= ORBIT_THRESHOLD {
            let other = match mode {
                Enumeration::Labeled => orbit_level(n),
                Enumeration::Orbits => labeled_level(n),
            };
            if other.violations != level.violations || other.equality != level.equality {
                report.violations.push(Violation {
                    item: format!("n = {n} cross-check"),
                    graph: None,
                    detail: "labelled and orbit enumerations disagree".into(),
                });
            }
        }
        report.universe_size += level.labeled;
        let graph = |c: u32| {
            let masks = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| c >> i & 1 == 1)
                .map(|(_, &(u, v))| (1u64 << u) | (1u64 << v));
            Hypergraph::from_masks(n, masks)
        };
        for (c, why) in &level.violations {
            report.violations.push(Violation {
                item: format!("n = {n}"),
                graph: Some(graph(*c)),
                detail: why.clone(),
            });
        }
        for &c in &level.equality {
            let g = graph(c);
            if !displayed_union(&adj_of(n, &pairs, c)) {
                report.findings.push(format!(
                    "n = {n}: equality holds for {:?}, which is not a union of K_{{t,t}} plus at most one isolated vertex",
                    g.edges().iter().map(|e| e.vertices().to_vec()).collect::<Vec<_>>()
                ));
            }
            report.extremal_witnesses.push(g);
        }
    }
    Ok(report)
}

/// What stands in for `π(H)` in the supersaturation threshold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum ThresholdProxy {
    /// The exact density from the `{1,2}` classification.
    ClassifierLimit,
    /// `π_m(H)` computed by search.
    FiniteSearch { m: usize },
}

#[derive(Clone, Debug)]
pub struct SupersatConfig {
    /// Enumerate every graph when `K_n^R` has at most this many edges.
    pub exhaustive_limit: usize,
    pub samples: usize,
    pub seed: u64,
    pub search: SearchConfig,
}

impl Default for SupersatConfig {
    fn default() -> Self {
        SupersatConfig {
            exhaustive_limit: 20,
            samples: 20_000,
            seed: 0x5eed,
            search: SearchConfig::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SupersatReport {
    pub n: usize,
    pub a: Rational,
    pub proxy: ThresholdProxy,
    pub proxy_value: Rational,
    pub threshold: Rational,
    pub exhaustive: bool,
    pub graphs_checked: u64,
    /// Graphs with Lubell value above the threshold.
    pub exceeding: u64,
    pub min_copies: Option<u64>,
    /// `min_copies / C(n, v(H))`.
    pub min_b: Option<Rational>,
    pub violations: Vec<Violation>,
}

/// Least number of copies of `h` among graphs on `n` vertices whose Lubell
/// value exceeds `proxy + a`, over all `R(h)`-graphs or a seeded sample.
pub fn verify_supersaturation(
    h: &Hypergraph,
    a: &Rational,
    n: usize,
    cfg: &SupersatConfig,
) -> Result<SupersatReport> {
    if !a.is_positive() {
        return Err(Error::domain(format!("a must be positive, got {a}")));
    }
    if h.vertex_count() > n {
        return Err(Error::domain(format!(
            "pattern has {} vertices, more than n = {n}",
            h.vertex_count()
        )));
    }
    let family = ForbiddenFamily::single(h.clone())?;
    let r = family.edge_types().clone();
    let (proxy, proxy_value) = match classify12(h) {
        Ok(c) => (ThresholdProxy::ClassifierLimit, c.density),
        Err(_) => {
            let seq = pi_sequence(&family, n, n, &cfg.search)?;
            (ThresholdProxy::FiniteSearch { m: n }, seq[0].1.clone())
        }
    };
    let threshold = &proxy_value + a;

    let m = candidate_count(n, &r)?;
    let mut scale: u128 = 1;
    for &k in r.sizes() {
        scale = lcm(scale, binomial(n, k).expect("n <= 64"))
            .ok_or_else(|| Error::cap("weights overflow"))?;
    }
    let cands: Vec<(u64, u128)> = r
        .sizes()
        .iter()
        .flat_map(|&k| {
            let w = scale / binomial(n, k).expect("n <= 64");
            subsets_of_size(n, k).into_iter().map(move |s| (s, w))
        })
        .collect();
    // lubell > threshold  <=>  value * den > num * scale
    let num = threshold.numer().clone();
    let den = threshold.denom().clone();
    let exceeds = |value: u128| {
        num_bigint::BigInt::from(value) * &den > &num * num_bigint::BigInt::from(scale)
    };

    let exhaustive = m <= cfg.exhaustive_limit;
    let subsets: Vec<u64> = if exhaustive {
        (0..1u64 << m).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        (0..cfg.samples)
            .map(|_| {
                let p: f64 = rng.gen_range(0.5..1.0);
                (0..m)
                    .filter(|_| rng.gen_bool(p))
                    .fold(0u64, |acc, i| acc | 1 << i)
            })
            .collect()
    };
    if m > 64 {
        return Err(Error::cap(format!(
            "{m} candidate edges do not fit a sample mask"
        )));
    }
    let results: Vec<Option<(u64, u64)>> = subsets
        .par_iter()
        .map(|&sel| {
            let value: u128 = (0..m)
                .filter(|&i| sel >> i & 1 == 1)
                .map(|i| cands[i].1)
                .sum();
            if !exceeds(value) {
                return Ok(None);
            }
            let g = Hypergraph::from_masks(
                n,
                (0..m).filter(|&i| sel >> i & 1 == 1).map(|i| cands[i].0),
            );
            Ok(Some((count_copies(&g, h)?, sel)))
        })
        .collect::<Result<_>>()?;

    let mut violations = Vec::new();
    let mut min_copies: Option<u64> = None;
    let mut exceeding = 0u64;
    for (copies, sel) in results.into_iter().flatten() {
        exceeding += 1;
        min_copies = Some(min_copies.map_or(copies, |c| c.min(copies)));
        if copies == 0 && violations.len() < 10 {
            violations.push(Violation {
                item: format!("n = {n}"),
                graph: Some(Hypergraph::from_masks(
                    n,
                    (0..m).filter(|&i| sel >> i & 1 == 1).map(|i| cands[i].0),
                )),
                detail: format!("Lubell value above {threshold} with no copy"),
            });
        }
    }
    let choose = binomial(n, h.vertex_count()).expect("n <= 64");
    Ok(SupersatReport {
        n,
        a: a.clone(),
        proxy,
        proxy_value,
        threshold,
        exhaustive,
        graphs_checked: subsets.len() as u64,
        exceeding,
        min_b: min_copies.map(|c| Rational::new(c, choose)),
        min_copies,
        violations,
    })
}

/// Finite relations between `π_n` values for each corpus member, at every
/// `n <= n_max` the search cap allows: flags sit at `|R| - 1`, `π_n` never
/// increases, blowing up by 2 never lowers `π_n`, and
/// `π_n(S(H)) <= π_{n-1}(H)`.
pub fn verify_relation_suite(
    corpus: &[Hypergraph],
    n_max: usize,
    cfg: &SearchConfig,
) -> Result<LemmaReport> {
    let mut report = LemmaReport {
        lemma: "relation-suite".into(),
        ..LemmaReport::default()
    };
    let mut cache: HashMap<Hypergraph, BTreeMap<usize, Rational>> = HashMap::new();
    let mut sequence = |h: &Hypergraph, report: &mut LemmaReport| -> BTreeMap<usize, Rational> {
        if let Some(s) = cache.get(h) {
            return s.clone();
        }
        let out = compute_sequence(h, n_max, cfg, report);
        cache.insert(h.clone(), out.clone());
        out
    };

    for (i, h) in corpus.iter().enumerate() {
        let name = format!("corpus[{i}]");
        let base = sequence(h, &mut report);
        let r = h.edge_types();

        if is_flag(h) {
            let want = Rational::from_integer(r.len() as i64 - 1);
            for (&n, v) in base.range(h.vertex_count()..) {
                report.universe_size += 1;
                if *v != want {
                    report.violations.push(Violation {
                        item: format!("{name} flag"),
                        graph: Some(h.clone()),
                        detail: format!("pi_{n} = {v}, expected {want}"),
                    });
                }
            }
        }

        for ((&n0, v0), (&n1, v1)) in base.iter().zip(base.iter().skip(1)) {
            report.universe_size += 1;
            if v1 > v0 {
                report.violations.push(Violation {
                    item: format!("{name} monotone"),
                    graph: Some(h.clone()),
                    detail: format!("pi_{n1} = {v1} exceeds pi_{n0} = {v0}"),
                });
            }
        }

        match blowup_uniform(h, 2) {
            Ok(b) => {
                let blown = sequence(&b, &mut report);
                for (&n, v) in &base {
                    if let Some(w) = blown.get(&n) {
                        report.universe_size += 1;
                        if v > w {
                            report.violations.push(Violation {
                                item: format!("{name} blow-up"),
                                graph: Some(h.clone()),
                                detail: format!("pi_{n}(H) = {v} exceeds pi_{n}(H(2)) = {w}"),
                            });
                        }
                    }
                }
            }
            Err(e) => report.skipped.push(format!("{name} blow-up: {e}")),
        }

        match suspend(h, 1) {
            Ok(s) => {
                let susp = sequence(&s, &mut report);
                for (&n, v) in &susp {
                    if let Some(w) = base.get(&(n - 1)) {
                        report.universe_size += 1;
                        if v > w {
                            report.violations.push(Violation {
                                item: format!("{name} suspension"),
                                graph: Some(h.clone()),
                                detail: format!("pi_{n}(S(H)) = {v} exceeds pi_{}(H) = {w}", n - 1),
                            });
                        }
                    }
                }
            }
            Err(e) => report.skipped.push(format!("{name} suspension: {e}")),
        }
    }
    Ok(report)
}

/// `π_n(h)` for `max R <= n <= n_max`, stopping at the search cap.
fn compute_sequence(
    h: &Hypergraph,
    n_max: usize,
    cfg: &SearchConfig,
    report: &mut LemmaReport,
) -> BTreeMap<usize, Rational> {
    let family = match ForbiddenFamily::single(h.clone()) {
        Ok(f) => f,
        Err(e) => {
            report.skipped.push(format!("{h:?}: {e}"));
            return BTreeMap::new();
        }
    };
    let lo = family.edge_types().largest();
    let mut hi = n_max;
    while hi >= lo && candidate_count(hi, family.edge_types()).map_or(true, |c| c > cfg.cap) {
        hi -= 1;
    }
    if hi < n_max {
        report.skipped.push(format!(
            "{h:?}: n in {}..={n_max} beyond the search cap",
            (hi + 1).max(lo)
        ));
    }
    if hi < lo {
        return BTreeMap::new();
    }
    match pi_sequence(&family, lo, hi, cfg) {
        Ok(seq) => seq.into_iter().collect(),
        Err(e) => {
            report.skipped.push(format!("{h:?}: {e}"));
            BTreeMap::new()
        }
    }
}
