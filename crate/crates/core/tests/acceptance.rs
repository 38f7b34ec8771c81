//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use turanlab::classify::{classify12, formula_1k};
use turanlab::combinatorics::permutations;
use turanlab::construct::{
    build_closed_path_extremal, build_example1, build_example2, build_suspension_tower,
    closed_path, limit_gap, matching_construction, ConstructionReport,
};
use turanlab::extremal::{
    candidate_count, pi_n_branch_bound, pi_n_exhaustive, pi_sequence, ForbiddenFamily,
    SearchConfig, ORACLE_GUARD,
};
use turanlab::format::parse_hypergraph_file;
use turanlab::hypergraph::{chain_graph, is_flag};
use turanlab::transforms::{blowup_uniform, suspend};
use turanlab::verify::{
    is_balanced_complete_bipartite_union, verify_square_lemma_exhaustive, verify_supersaturation,
    SupersatConfig,
};
use turanlab::{EdgeTypeSet, Hypergraph, Rational};

type Outcome = (bool, String);

fn fixture(name: &str) -> Hypergraph {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    parse_hypergraph_file(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn q(a: i64, b: i64) -> Rational {
    Rational::new(a, b)
}

fn pi(n: usize, h: &Hypergraph) -> Rational {
    let fam = ForbiddenFamily::single(h.clone()).unwrap();
    let out = pi_n_branch_bound(n, &fam, &SearchConfig::default()).unwrap();
    assert!(out.certified, "uncertified pi_{n}");
    out.value
}

fn chain12() -> Hypergraph {
    chain_graph(&EdgeTypeSet::new([1, 2]).unwrap())
}

/// Smallest relabelled edge list; equal keys mean isomorphic graphs.
fn iso_key(h: &Hypergraph) -> (usize, Vec<u64>) {
    let key = permutations(h.vertex_count())
        .iter()
        .map(|p| {
            let mut m: Vec<u64> = h.relabel(p).masks().to_vec();
            m.sort_unstable();
            m
        })
        .min()
        .unwrap_or_default();
    (h.vertex_count(), key)
}

/// All flags with edge sizes in `{1,2,3}` on at most three vertices, up to isomorphism.
fn flags() -> Vec<Hypergraph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for rbits in 1u32..8 {
        let r: Vec<usize> = (1..=3).filter(|k| rbits & (1 << (k - 1)) != 0).collect();
        let top = *r.last().unwrap();
        for v in top..=3 {
            let choices: Vec<Vec<u64>> = r
                .iter()
                .map(|&k| {
                    (1u64..1 << v)
                        .filter(|m| m.count_ones() as usize == k)
                        .collect()
                })
                .collect();
            let mut idx = vec![0usize; r.len()];
            loop {
                let h = Hypergraph::from_masks(v, idx.iter().zip(&choices).map(|(&i, c)| c[i]));
                if is_flag(&h) && seen.insert(iso_key(&h)) {
                    out.push(h);
                }
                let mut j = 0;
                while j < idx.len() {
                    idx[j] += 1;
                    if idx[j] < choices[j].len() {
                        break;
                    }
                    idx[j] = 0;
                    j += 1;
                }
                if j == idx.len() {
                    break;
                }
            }
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let all = flags();
    let mut bad = Vec::new();
    let mut runs = 0;
    for l in &all {
        let expected = Rational::from_integer(l.edge_types().len() as i64 - 1);
        for n in l.vertex_count()..=6 {
            runs += 1;
            let got = pi(n, l);
            if got != expected {
                bad.push(format!("{l:?} n={n}: {got} != {expected}"));
            }
        }
    }
    let t = start.elapsed();
    let ok = bad.is_empty() && t < Duration::from_secs(60);
    (
        ok,
        format!(
            "{} flags, {runs} searches, {:.2?}; mismatches: {bad:?}",
            all.len(),
            t
        ),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let h = fixture("k2_12.json");
    let fam = ForbiddenFamily::single(h.clone()).unwrap();
    let o2 = pi_n_exhaustive(2, &fam).unwrap().value;
    let o3 = pi_n_exhaustive(3, &fam).unwrap().value;
    let seq = pi_sequence(&fam, 2, 6, &SearchConfig::default()).unwrap();
    let vals: Vec<&Rational> = seq.iter().map(|(_, v)| v).collect();
    let oracle_ok = o2 == q(3, 2) && o3 == q(4, 3) && *vals[0] == o2 && *vals[1] == o3;
    let monotone = vals.windows(2).all(|w| w[1] <= w[0]);
    let floor = vals.iter().all(|v| **v >= q(5, 4));
    let t = start.elapsed();
    let seq_s: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
    (
        oracle_ok && monotone && floor && t < Duration::from_secs(600),
        format!(
            "oracle pi_2={o2} pi_3={o3}; sequence n=2..6: {}; {:.2?}",
            seq_s.join(", "),
            t
        ),
    )
}

fn random_member(rng: &mut ChaCha8Rng, r: &[usize], v: usize) -> Hypergraph {
    let mut masks = Vec::new();
    for &k in r {
        let level: Vec<u64> = (1u64..1 << v)
            .filter(|m| m.count_ones() as usize == k)
            .collect();
        let forced = rng.gen_range(0..level.len());
        let p = rng.gen_range(0.0..0.6);
        for (i, &m) in level.iter().enumerate() {
            if i == forced || rng.gen_bool(p) {
                masks.push(m);
            }
        }
    }
    Hypergraph::from_masks(v, masks)
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
    let sets: [&[usize]; 7] = [&[1], &[2], &[3], &[1, 2], &[1, 3], &[2, 3], &[1, 2, 3]];
    let mut instances = Vec::new();
    while instances.len() < 240 {
        let r = sets[rng.gen_range(0..sets.len())];
        let rs = EdgeTypeSet::new(r.iter().copied()).unwrap();
        let top = rs.largest();
        let ns: Vec<usize> = (top..=8)
            .filter(|&n| candidate_count(n, &rs).is_ok_and(|c| c <= ORACLE_GUARD))
            .collect();
        let n = ns[rng.gen_range(0..ns.len())];
        let members = (0..rng.gen_range(1..=2))
            .map(|_| {
                let v = rng.gen_range(top..=n.min(5));
                random_member(&mut rng, r, v)
            })
            .collect();
        instances.push((n, ForbiddenFamily::new(members).unwrap()));
    }
    let bad: Vec<String> = instances
        .par_iter()
        .filter_map(|(n, fam)| {
            let a = pi_n_exhaustive(*n, fam).unwrap();
            let b = pi_n_branch_bound(*n, fam, &SearchConfig::default()).unwrap();
            (a.value != b.value || a.witness != b.witness || !b.certified).then(|| {
                format!(
                    "n={n} {:?}: oracle {} vs {}",
                    fam.members(),
                    a.value,
                    b.value
                )
            })
        })
        .collect();
    let instances = instances.len();
    let t = start.elapsed();
    (
        bad.is_empty() && t < Duration::from_secs(300),
        format!("{instances} instances, {:.2?}; disagreements: {bad:?}", t),
    )
}

fn with_singletons(n: usize, pairs: &[(usize, usize)]) -> Hypergraph {
    let masks = (0..n)
        .map(|v| 1u64 << v)
        .chain(pairs.iter().map(|&(a, b)| (1u64 << a) | (1u64 << b)));
    Hypergraph::from_masks(n, masks)
}

fn criterion_4() -> Outcome {
    let cycle = |m: usize| (0..m).map(|i| (i, (i + 1) % m)).collect::<Vec<_>>();
    let k4: Vec<(usize, usize)> = (0..4)
        .flat_map(|a| (a + 1..4).map(move |b| (a, b)))
        .collect();
    let chain = fixture("chain_12.json");
    let corpus: Vec<(&str, Hypergraph, Rational)> = vec![
        ("K_2^{1,2}", fixture("k2_12.json"), q(5, 4)),
        ("closed P4", fixture("pbar4.json"), q(9, 8)),
        ("closed P6", closed_path(3).unwrap(), q(9, 8)),
        ("chain", chain.clone(), q(1, 1)),
        ("chain(2)", blowup_uniform(&chain, 2).unwrap(), q(1, 1)),
        ("chain(3)", blowup_uniform(&chain, 3).unwrap(), q(1, 1)),
        (
            "C3+singletons",
            fixture("triangle_plus_singletons.json"),
            q(3, 2),
        ),
        ("C5+singletons", with_singletons(5, &cycle(5)), q(3, 2)),
        ("K4+singletons", with_singletons(4, &k4), q(5, 3)),
    ];
    let n = 6;
    let mut bad = Vec::new();
    for (name, h, want) in &corpus {
        let c = classify12(h).unwrap();
        if c.density != *want {
            bad.push(format!("{name}: density {} != {want}", c.density));
            continue;
        }
        let upper = pi(n, h);
        let r = matching_construction(h, n).unwrap();
        if !(r.limit == c.density && r.freeness_checked && r.lubell <= upper && c.density <= upper)
        {
            bad.push(format!(
                "{name}: construction {} (limit {}, free {}) vs pi_6 = {upper}",
                r.lubell, r.limit, r.freeness_checked
            ));
        }
    }
    (
        bad.is_empty(),
        format!(
            "{} graphs bracketed at n = {n}; failures: {bad:?}",
            corpus.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut worst = 0.0f64;
    for k in 2..=6u32 {
        let kf = k as f64;
        let closed = 1.0 + (kf - 1.0) / kf.powf(kf / (kf - 1.0));
        let got = formula_1k(k as usize, &Rational::zero()).unwrap().to_f64();
        worst = worst.max((got - closed).abs());
    }
    (worst <= 1e-12, format!("k = 2..6, max deviation {worst:e}"))
}

/// `|E(G)| - |E(G^(2))|` with common neighbours counted directly.
fn square_difference(n: usize, adj: &[Vec<bool>]) -> i64 {
    let mut e = 0;
    let mut sq = 0;
    for u in 0..n {
        for v in u + 1..n {
            e += adj[u][v] as i64;
            sq += (0..n).any(|w| adj[u][w] && adj[v][w]) as i64;
        }
    }
    e - sq
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let report = verify_square_lemma_exhaustive(6).unwrap();
    let mut checked = 0u64;
    let mut bad = Vec::new();
    for n in 1..=6usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        for bits in 0u64..1 << pairs.len() {
            let mut adj = vec![vec![false; n]; n];
            let mut masks = Vec::new();
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if bits >> i & 1 == 1 {
                    adj[a][b] = true;
                    adj[b][a] = true;
                    masks.push((1u64 << a) | (1u64 << b));
                }
            }
            let d = square_difference(n, &adj);
            let bound = (n / 2) as i64;
            let g = Hypergraph::from_masks(n, masks);
            let pred = is_balanced_complete_bipartite_union(&g).unwrap();
            if d > bound || (d == bound) != pred {
                bad.push(format!(
                    "{g:?}: difference {d}, bound {bound}, predicate {pred}"
                ));
            }
            checked += 1;
        }
    }
    let t = start.elapsed();
    let ok = report.passed() && bad.is_empty() && t < Duration::from_secs(60);
    (
        ok,
        format!(
            "{checked} labelled graphs, verifier violations {}, independent mismatches {}, {:.2?}",
            report.violations.len(),
            bad.len(),
            t
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    let mut checks = Vec::new();
    for (name, h) in [("chain", chain12()), ("K_2^{1,2}", fixture("k2_12.json"))] {
        let s = suspend(&h, 1).unwrap();
        let lo = s
            .edge_types()
            .into_iter()
            .max()
            .unwrap()
            .max(h.edge_types().into_iter().max().unwrap() + 1);
        for n in lo..=5 {
            let (left, right) = (pi(n, &s), pi(n - 1, &h));
            checks.push(format!("{name} n={n}: {left} <= {right}"));
            if left > right {
                bad.push(n);
            }
        }
    }
    (bad.is_empty(), checks.join("; "))
}

fn criterion_8() -> Outcome {
    let mut bad = Vec::new();
    let mut checks = Vec::new();
    for (name, h) in [("chain", chain12()), ("K_2^{1,2}", fixture("k2_12.json"))] {
        let b = blowup_uniform(&h, 2).unwrap();
        for n in h.edge_types().into_iter().max().unwrap()..=5 {
            let (left, right) = (pi(n, &h), pi(n, &b));
            checks.push(format!("{name} n={n}: {left} <= {right}"));
            if left > right {
                bad.push(n);
            }
        }
    }
    (bad.is_empty(), checks.join("; "))
}

fn criterion_9() -> Outcome {
    type Builder = Box<dyn Fn(usize) -> ConstructionReport>;
    let builders: Vec<(String, Builder, bool)> = vec![
        (
            "example1".into(),
            Box::new(|n| build_example1(n, n / 2).unwrap()),
            false,
        ),
        (
            "example2".into(),
            Box::new(|n| build_example2(n).unwrap()),
            false,
        ),
        (
            "closedpath".into(),
            Box::new(|n| build_closed_path_extremal(n).unwrap()),
            false,
        ),
        (
            "tower k=1".into(),
            Box::new(|n| build_suspension_tower(n, 1).unwrap()),
            true,
        ),
        (
            "tower k=2".into(),
            Box::new(|n| build_suspension_tower(n, 2).unwrap()),
            true,
        ),
        (
            "tower k=3".into(),
            Box::new(|n| build_suspension_tower(n, 3).unwrap()),
            true,
        ),
    ];
    let mut ok = true;
    let mut lines = Vec::new();
    for (name, build, tower) in &builders {
        let reports: Vec<ConstructionReport> = (8..=24).step_by(4).map(build).collect();
        let gaps: Vec<Rational> = reports.iter().map(limit_gap).collect();
        let free = reports.iter().all(|r| r.freeness_checked);
        let positive = gaps.iter().all(Rational::is_positive);
        let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
        let shrinking = !tower || gaps.windows(2).all(|w| w[1].abs() < w[0].abs());
        let good = free && positive && decreasing && shrinking;
        ok &= good;
        let shown: Vec<String> = gaps.iter().map(|g| format!("{:+.4}", g.to_f64())).collect();
        lines.push(format!(
            "{name} [{}] free={free} positive={positive} decreasing={decreasing}{}",
            shown.join(" "),
            if *tower {
                format!(" shrinking={shrinking}")
            } else {
                String::new()
            }
        ));
    }
    (ok, lines.join("; "))
}

fn criterion_10() -> Outcome {
    let h = chain12();
    let cfg = SupersatConfig::default();
    let mut ok = true;
    let mut lines = Vec::new();
    for n in 3..=5 {
        let r = verify_supersaturation(&h, &q(1, 4), n, &cfg).unwrap();
        let b_pos = r.min_b.as_ref().is_some_and(Rational::is_positive);
        ok &= r.violations.is_empty() && b_pos && r.min_copies.is_some_and(|c| c >= 1);
        lines.push(format!(
            "n={n}: {} graphs over threshold {}, min copies {:?}, b = {}",
            r.exceeding,
            r.threshold,
            r.min_copies,
            r.min_b.map_or("none".to_string(), |b| b.to_string())
        ));
    }
    (ok, lines.join("; "))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let filter: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = Vec::new();
    for (id, run) in criteria {
        if filter.is_some_and(|f| f != id) {
            continue;
        }
        let (ok, detail) = run();
        println!(
            "criterion {id}: {} - {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
        if !ok {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
