//! Exhaustive reference solver.
//!
//! Walks every subset of `K_n^R` that contains no family member. Each newly
//! added edge is tested by brute force over injective vertex maps that send
//! some pattern edge onto it. Nothing here is shared with the branch-and-bound
//! search beyond the input types.

use std::cmp::Ordering;

use crate::combinatorics::{binomial, lcm, permutations, subsets_of_size};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rational::Rational;

use super::{
    candidate_count, cmp_edge_lists, ForbiddenFamily, Method, SearchOutcome, ORACLE_GUARD,
};

struct Oracle {
    n: usize,
    patterns: Vec<Pattern>,
    /// Permutations of `0..k`, indexed by `k`.
    perms: Vec<Vec<Vec<usize>>>,
    candidates: Vec<u64>,
    weight: Vec<u128>,
    chosen: Vec<u64>,
    present: Vec<bool>,
    value: u128,
    best: Option<(u128, Vec<u64>)>,
    nodes: u64,
}

impl Oracle {
    fn walk(&mut self, i: usize) {
        self.nodes += 1;
        if i == self.candidates.len() {
            let better = match &self.best {
                None => true,
                Some((v, edges)) => {
                    self.value > *v
                        || (self.value == *v
                            && cmp_edge_lists(&self.chosen, edges) == Ordering::Less)
                }
            };
            if better {
                self.best = Some((self.value, self.chosen.clone()));
            }
            return;
        }
        let c = self.candidates[i];
        self.chosen.push(c);
        self.present[c as usize] = true;
        let clash = self.patterns.iter().any(|p| {
            p.occurs_through(
                self.n,
                &self.present,
                c,
                &self.perms[c.count_ones() as usize],
            )
        });
        if !clash {
            self.value += self.weight[i];
            self.walk(i + 1);
            self.value -= self.weight[i];
        }
        self.present[c as usize] = false;
        self.chosen.pop();
        self.walk(i + 1);
    }
}

/// A family member with the data needed to anchor searches on one edge.
struct Pattern {
    k: usize,
    edges: Vec<Vec<usize>>,
    incident: Vec<Vec<usize>>,
    /// For each edge: its vertices first, then the rest breadth-first.
    orders: Vec<Vec<usize>>,
}

impl Pattern {
    fn new(h: &Hypergraph) -> Self {
        let k = h.vertex_count();
        let edges: Vec<Vec<usize>> = h.edges().iter().map(|e| e.vertices().to_vec()).collect();
        let mut incident = vec![Vec::new(); k];
        for (i, e) in edges.iter().enumerate() {
            for &x in e {
                incident[x].push(i);
            }
        }
        let orders = edges
            .iter()
            .map(|e| {
                let mut order = e.clone();
                let mut head = 0;
                while order.len() < k {
                    let next: Vec<usize> = match order.get(head) {
                        Some(&v) => {
                            head += 1;
                            incident[v]
                                .iter()
                                .flat_map(|&i| edges[i].iter().copied())
                                .collect()
                        }
                        None => (0..k).filter(|x| !order.contains(x)).take(1).collect(),
                    };
                    for x in next {
                        if !order.contains(&x) {
                            order.push(x);
                        }
                    }
                }
                order
            })
            .collect();
        Pattern {
            k,
            edges,
            incident,
            orders,
        }
    }

    fn consistent(&self, v: usize, map: &[usize], present: &[bool]) -> bool {
        self.incident[v].iter().all(|&i| {
            let mut m = 0u64;
            for &x in &self.edges[i] {
                if map[x] == usize::MAX {
                    return true;
                }
                m |= 1u64 << map[x];
            }
            present[m as usize]
        })
    }

    fn rec(
        &self,
        n: usize,
        order: &[usize],
        map: &mut [usize],
        used: u64,
        present: &[bool],
    ) -> bool {
        let Some((&v, rest)) = order.split_first() else {
            return true;
        };
        if map[v] != usize::MAX {
            return self.consistent(v, map, present)
                && self.rec(n, rest, map, used | (1u64 << map[v]), present);
        }
        for g in 0..n {
            if used & (1u64 << g) != 0 {
                continue;
            }
            map[v] = g;
            if self.consistent(v, map, present)
                && self.rec(n, rest, map, used | (1u64 << g), present)
            {
                return true;
            }
        }
        map[v] = usize::MAX;
        false
    }

    /// True iff some injective map sends every edge into `present` with at
    /// least one edge landing on `new`.
    fn occurs_through(&self, n: usize, present: &[bool], new: u64, perms: &[Vec<usize>]) -> bool {
        if self.k > n {
            return false;
        }
        let target: Vec<usize> = (0..n).filter(|&g| new & (1u64 << g) != 0).collect();
        let mut map = vec![usize::MAX; self.k];
        for (e, order) in self.edges.iter().zip(&self.orders) {
            if e.len() != target.len() {
                continue;
            }
            for perm in perms {
                map.fill(usize::MAX);
                for (j, &x) in e.iter().enumerate() {
                    map[x] = target[perm[j]];
                }
                if self.rec(n, order, &mut map, 0, present) {
                    return true;
                }
            }
        }
        false
    }
}

/// `π_n(family)` by exhaustive enumeration of all free subgraphs of `K_n^R`.
///
/// Refuses instances with more than [`ORACLE_GUARD`] candidate edges.
pub fn pi_n_exhaustive(n: usize, family: &ForbiddenFamily) -> Result<SearchOutcome> {
    let r = family.edge_types();
    let m = candidate_count(n, r)?;
    if m > ORACLE_GUARD {
        return Err(Error::cap(format!(
            "{m} candidate edges at n = {n} exceeds the exhaustive guard of {ORACLE_GUARD}"
        )));
    }
    let mut scale: u128 = 1;
    for &k in r.sizes() {
        scale = lcm(scale, binomial(n, k).expect("small")).expect("small");
    }
    let mut candidates = Vec::with_capacity(m);
    let mut weight = Vec::with_capacity(m);
    for &k in r.sizes() {
        let w = scale / binomial(n, k).expect("small");
        for s in subsets_of_size(n, k) {
            candidates.push(s);
            weight.push(w);
        }
    }
    let mut o = Oracle {
        n,
        patterns: family.members().iter().map(Pattern::new).collect(),
        perms: (0..=r.largest()).map(permutations).collect(),
        candidates,
        weight,
        chosen: Vec::new(),
        present: vec![false; 1usize << n],
        value: 0,
        best: None,
        nodes: 0,
    };
    o.walk(0);
    let (value, edges) = o.best.expect("the empty graph is always a leaf");
    Ok(SearchOutcome {
        n,
        value: Rational::new(value, scale),
        witness: Hypergraph::from_masks(n, edges),
        certified: true,
        nodes: o.nodes,
        method: Method::Oracle,
    })
}
