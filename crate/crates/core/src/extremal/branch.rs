//! Branch-and-bound for `π_n`.
//!
//! Candidate edges of `K_n^R` are decided one at a time (include first), in
//! descending Lubell weight. The search keeps the invariant that every
//! undecided candidate can still be added without creating a forbidden copy:
//! after each inclusion, candidates that would now complete a copy are
//! excluded. A copy created by a new edge must use that edge, so the check
//! only looks at embeddings anchored on it.
//!
//! Leaves are ranked by `(value, tie_bits)`, where `tie_bits` sets one bit per
//! chosen edge with earlier canonical edges on higher bits. Among graphs of
//! equal Lubell value neither edge list can be a prefix of the other, so the
//! largest `tie_bits` is exactly the lexicographically least edge list.
//!
//! Bounds: the weight of everything still undecided, and, when `π_{n-1}` is
//! known, the vertex-deletion average `h_n(G) = mean_v h_{n-1}(G - v)` with
//! each term capped at `π_{n-1}`.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::time::Instant;

use crate::combinatorics::{binomial, lcm, mask_vertices, permutations, subsets_of_size};
use crate::embed::{Host, Plan};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rational::Rational;

use super::{ForbiddenFamily, Method, SearchConfig, SearchOutcome, MAX_CANDIDATES};

struct Cand {
    mask: u64,
    size: usize,
    weight: u128,
    prev_weight: u128,
    bit: u128,
    slot: usize,
}

struct PrevBound {
    scale: u128,
    cap: u128,
}

struct Ctx {
    n: usize,
    scale: u128,
    cands: Vec<Cand>,
    /// Slot offset of each edge size, `None` for sizes outside `R`.
    offset: Vec<Option<usize>>,
    colex: Vec<Vec<usize>>,
    /// Plans anchored on a pattern edge, grouped by that edge's size.
    anchors: Vec<Vec<Plan>>,
    perms: Vec<Vec<Vec<usize>>>,
    /// Largest member vertex count.
    reach: u32,
    prev: Option<PrevBound>,
    symmetry: bool,
    split_depth: usize,
    deadline: Option<Instant>,
    expired: AtomicBool,
}

#[derive(Clone)]
struct State {
    chosen: Vec<bool>,
    decided: Vec<bool>,
    deg: Vec<Vec<u32>>,
    value: u128,
    bits: u128,
    rem_value: u128,
    rem_bits: u128,
    opt_total: u128,
    opt_through: Vec<u128>,
    picked: Vec<usize>,
}

#[derive(Clone)]
struct Best {
    value: u128,
    bits: u128,
    picked: Vec<usize>,
}

struct View<'a> {
    ctx: &'a Ctx,
    st: &'a State,
}

impl Host for View<'_> {
    fn vertex_count(&self) -> usize {
        self.ctx.n
    }

    fn contains(&self, mask: u64) -> bool {
        self.ctx.slot(mask).is_some_and(|s| self.st.chosen[s])
    }

    fn degree(&self, v: usize, k: usize) -> usize {
        self.st.deg[v].get(k).copied().unwrap_or(0) as usize
    }
}

impl Ctx {
    fn slot(&self, mask: u64) -> Option<usize> {
        let k = mask.count_ones() as usize;
        let off = (*self.offset.get(k)?)?;
        let mut rank = 0;
        let mut bits = mask;
        let mut i = 1;
        while bits != 0 {
            rank += self.colex[bits.trailing_zeros() as usize][i];
            bits &= bits - 1;
            i += 1;
        }
        Some(off + rank)
    }

    fn add(&self, st: &mut State, pos: usize) {
        let c = &self.cands[pos];
        st.chosen[c.slot] = true;
        let mut bits = c.mask;
        while bits != 0 {
            st.deg[bits.trailing_zeros() as usize][c.size] += 1;
            bits &= bits - 1;
        }
    }

    fn remove(&self, st: &mut State, pos: usize) {
        let c = &self.cands[pos];
        st.chosen[c.slot] = false;
        let mut bits = c.mask;
        while bits != 0 {
            st.deg[bits.trailing_zeros() as usize][c.size] -= 1;
            bits &= bits - 1;
        }
    }

    /// Whether the candidate at `pos`, currently present in `st`, lies in a
    /// copy of some family member.
    fn in_copy(&self, st: &State, pos: usize) -> bool {
        let c = &self.cands[pos];
        let ev = mask_vertices(c.mask);
        let view = View { ctx: self, st };
        let mut fixed = vec![0usize; c.size];
        for plan in &self.anchors[c.size] {
            for p in &self.perms[c.size] {
                for (slot, &i) in fixed.iter_mut().zip(p) {
                    *slot = ev[i];
                }
                if plan
                    .search(&view, &fixed, |_| ControlFlow::Break(()))
                    .is_break()
                {
                    return true;
                }
            }
        }
        false
    }

    fn addable(&self, st: &mut State, pos: usize) -> bool {
        self.add(st, pos);
        let ok = !self.in_copy(st, pos);
        self.remove(st, pos);
        ok
    }

    fn decide_in(&self, st: &mut State, pos: usize) {
        let c = &self.cands[pos];
        st.decided[pos] = true;
        st.rem_value -= c.weight;
        st.rem_bits -= c.bit;
        st.value += c.weight;
        st.bits += c.bit;
        st.picked.push(pos);
        self.add(st, pos);
    }

    fn undo_in(&self, st: &mut State, pos: usize) {
        let c = &self.cands[pos];
        self.remove(st, pos);
        st.picked.pop();
        st.bits -= c.bit;
        st.value -= c.weight;
        st.rem_bits += c.bit;
        st.rem_value += c.weight;
        st.decided[pos] = false;
    }

    fn decide_out(&self, st: &mut State, pos: usize) {
        let c = &self.cands[pos];
        st.decided[pos] = true;
        st.rem_value -= c.weight;
        st.rem_bits -= c.bit;
        st.opt_total -= c.prev_weight;
        let mut bits = c.mask;
        while bits != 0 {
            st.opt_through[bits.trailing_zeros() as usize] -= c.prev_weight;
            bits &= bits - 1;
        }
    }

    fn undo_out(&self, st: &mut State, pos: usize) {
        let c = &self.cands[pos];
        let mut bits = c.mask;
        while bits != 0 {
            st.opt_through[bits.trailing_zeros() as usize] += c.prev_weight;
            bits &= bits - 1;
        }
        st.opt_total += c.prev_weight;
        st.rem_bits += c.bit;
        st.rem_value += c.weight;
        st.decided[pos] = false;
    }

    /// Upper bound on the value of any completion of `st`.
    fn value_bound(&self, st: &State) -> u128 {
        let simple = st.value + st.rem_value;
        let Some(prev) = &self.prev else {
            return simple;
        };
        let mut sum: u128 = 0;
        for v in 0..self.n {
            sum += prev.cap.min(st.opt_total - st.opt_through[v]);
        }
        let denom = self.n as u128 * prev.scale;
        match sum.checked_mul(self.scale) {
            Some(num) => simple.min(num / denom),
            None => simple,
        }
    }

    fn pruned(&self, st: &State, best: &Best) -> bool {
        (self.value_bound(st), st.bits + st.rem_bits) <= (best.value, best.bits)
    }

    fn time_up(&self) -> bool {
        if self.expired.load(AtomicOrdering::Relaxed) {
            return true;
        }
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.expired.store(true, AtomicOrdering::Relaxed);
            return true;
        }
        false
    }

    fn dfs(&self, st: &mut State, mut pos: usize, depth: usize, best: &mut Best, nodes: &mut u64) {
        *nodes += 1;
        if (*nodes & 0x3ff == 0 && self.time_up()) || self.expired.load(AtomicOrdering::Relaxed) {
            return;
        }
        let m = self.cands.len();
        while pos < m && st.decided[pos] {
            pos += 1;
        }
        if pos == m {
            if (st.value, st.bits) > (best.value, best.bits) {
                *best = Best {
                    value: st.value,
                    bits: st.bits,
                    picked: st.picked.clone(),
                };
            }
            return;
        }
        if self.pruned(st, best) {
            return;
        }
        let root_symmetry = self.symmetry && depth == 0 && pos == 0;
        if depth < self.split_depth {
            let mut other = st.clone();
            let mut other_best = best.clone();
            let mut other_nodes = 0;
            rayon::join(
                || self.include(st, pos, depth, best, nodes),
                || {
                    self.exclude(
                        &mut other,
                        pos,
                        depth,
                        &mut other_best,
                        &mut other_nodes,
                        root_symmetry,
                    )
                },
            );
            if (other_best.value, other_best.bits) > (best.value, best.bits) {
                *best = other_best;
            }
            *nodes += other_nodes;
        } else {
            self.include(st, pos, depth, best, nodes);
            self.exclude(st, pos, depth, best, nodes, root_symmetry);
        }
    }

    fn include(&self, st: &mut State, pos: usize, depth: usize, best: &mut Best, nodes: &mut u64) {
        self.decide_in(st, pos);
        let mask = self.cands[pos].mask;
        let mut dropped = Vec::new();
        for j in pos + 1..self.cands.len() {
            if !st.decided[j]
                && (mask | self.cands[j].mask).count_ones() <= self.reach
                && !self.addable(st, j)
            {
                self.decide_out(st, j);
                dropped.push(j);
            }
        }
        self.dfs(st, pos + 1, depth + 1, best, nodes);
        for &j in dropped.iter().rev() {
            self.undo_out(st, j);
        }
        self.undo_in(st, pos);
    }

    fn exclude(
        &self,
        st: &mut State,
        pos: usize,
        depth: usize,
        best: &mut Best,
        nodes: &mut u64,
        root_symmetry: bool,
    ) {
        // At the root every edge of the smallest size is equivalent to the
        // first one, so excluding it means excluding the whole level.
        let size = self.cands[pos].size;
        let out: Vec<usize> = if root_symmetry {
            (pos..self.cands.len())
                .filter(|&j| !st.decided[j] && self.cands[j].size == size)
                .collect()
        } else {
            vec![pos]
        };
        for &j in &out {
            self.decide_out(st, j);
        }
        self.dfs(st, pos + 1, depth + 1, best, nodes);
        for &j in out.iter().rev() {
            self.undo_out(st, j);
        }
    }
}

pub(super) fn solve(
    n: usize,
    family: &ForbiddenFamily,
    cfg: &SearchConfig,
    prev_value: Option<&Rational>,
) -> Result<SearchOutcome> {
    let r = family.edge_types();
    let m = super::candidate_count(n, r)?;
    if m > cfg.cap.min(MAX_CANDIDATES) {
        return Err(Error::cap(format!(
            "{m} candidate edges at n = {n} exceeds the branch-and-bound cap of {}",
            cfg.cap.min(MAX_CANDIDATES)
        )));
    }
    let overflow = || Error::cap(format!("Lubell weights at n = {n} overflow 128 bits"));
    let mut scale: u128 = 1;
    for &k in r.sizes() {
        scale = lcm(scale, binomial(n, k).ok_or_else(overflow)?).ok_or_else(overflow)?;
    }
    scale.checked_mul(r.len() as u128).ok_or_else(overflow)?;

    // Weights at n - 1 for the averaging bound; a size equal to n contributes
    // nothing since such an edge meets every vertex.
    let prev = match prev_value {
        Some(p) if n > r.largest() => {
            let mut ps: u128 = 1;
            for &k in r.sizes() {
                ps = lcm(ps, binomial(n - 1, k).ok_or_else(overflow)?).ok_or_else(overflow)?;
            }
            let num = u128::try_from(p.numer().clone()).ok();
            let den = u128::try_from(p.denom().clone()).ok();
            match (num, den) {
                (Some(a), Some(b)) if a.checked_mul(ps).is_some_and(|x| x % b == 0) => {
                    Some(PrevBound {
                        scale: ps,
                        cap: a * ps / b,
                    })
                }
                _ => None,
            }
        }
        _ => None,
    };

    let mut offset = vec![None; n + 1];
    let mut acc = 0usize;
    let mut cands = Vec::with_capacity(m);
    let mut canon = 0usize;
    for &k in r.sizes() {
        offset[k] = Some(acc);
        let w = scale / binomial(n, k).expect("checked above");
        let pw = match &prev {
            Some(pb) if k < n => pb.scale / binomial(n - 1, k).expect("checked above"),
            _ => 0,
        };
        for mask in subsets_of_size(n, k) {
            cands.push(Cand {
                mask,
                size: k,
                weight: w,
                prev_weight: pw,
                bit: 1u128 << (m - 1 - canon),
                slot: 0,
            });
            canon += 1;
        }
        acc += binomial(n, k).expect("checked above") as usize;
    }
    let colex: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            (0..=r.largest())
                .map(|j| binomial(v, j).expect("small") as usize)
                .collect()
        })
        .collect();

    let mut anchors = vec![Vec::new(); r.largest() + 1];
    for h in family.members() {
        for e in h.edges() {
            anchors[e.len()].push(Plan::new(h, e.vertices()));
        }
    }
    let mut perms = vec![Vec::new(); r.largest() + 1];
    for &k in r.sizes() {
        perms[k] = permutations(k);
    }
    let reach = family
        .members()
        .iter()
        .map(|h| h.vertex_count() as u32)
        .max()
        .unwrap_or(0);

    // Branch order: heavier edges first, then canonical order. With symmetry
    // reduction the canonically first edge goes to the front.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| cands[b].weight.cmp(&cands[a].weight).then(a.cmp(&b)));
    if cfg.symmetry {
        let at = order.iter().position(|&i| i == 0).expect("present");
        let first = order.remove(at);
        order.insert(0, first);
    }
    let mut cands: Vec<Cand> = {
        let mut slots: Vec<Option<Cand>> = cands.into_iter().map(Some).collect();
        order
            .iter()
            .map(|&i| slots[i].take().expect("permutation"))
            .collect()
    };

    let mut ctx = Ctx {
        n,
        scale,
        cands: Vec::new(),
        offset,
        colex,
        anchors,
        perms,
        reach,
        prev,
        symmetry: cfg.symmetry,
        split_depth: cfg.split_depth,
        deadline: cfg.timeout.map(|t| Instant::now() + t),
        expired: AtomicBool::new(false),
    };
    for c in cands.iter_mut() {
        c.slot = ctx.slot(c.mask).expect("size in R");
    }
    ctx.cands = cands;

    let mut st = State {
        chosen: vec![false; m],
        decided: vec![false; m],
        deg: vec![vec![0; r.largest() + 1]; n],
        value: 0,
        bits: 0,
        rem_value: ctx.cands.iter().map(|c| c.weight).sum(),
        rem_bits: ctx.cands.iter().map(|c| c.bit).sum(),
        opt_total: ctx.cands.iter().map(|c| c.prev_weight).sum(),
        opt_through: vec![0; n],
        picked: Vec::new(),
    };
    for c in &ctx.cands {
        for v in mask_vertices(c.mask) {
            st.opt_through[v] += c.prev_weight;
        }
    }
    for pos in 0..m {
        if !ctx.addable(&mut st, pos) {
            ctx.decide_out(&mut st, pos);
        }
    }

    // Greedy incumbent: the first leaf of the include-first dive.
    let mut seed = st.clone();
    for pos in 0..m {
        if !seed.decided[pos] && ctx.addable(&mut seed, pos) {
            ctx.decide_in(&mut seed, pos);
        }
    }
    let mut best = Best {
        value: seed.value,
        bits: seed.bits,
        picked: seed.picked,
    };

    let mut nodes = 0u64;
    let run = |best: &mut Best, nodes: &mut u64, st: &mut State| ctx.dfs(st, 0, 0, best, nodes);
    match cfg.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::Internal(e.to_string()))?;
            pool.install(|| run(&mut best, &mut nodes, &mut st));
        }
        None => run(&mut best, &mut nodes, &mut st),
    }

    let certified = !ctx.expired.load(AtomicOrdering::Relaxed);
    let witness = Hypergraph::from_masks(n, best.picked.iter().map(|&p| ctx.cands[p].mask));
    Ok(SearchOutcome {
        n,
        value: Rational::new(best.value, scale),
        witness,
        certified,
        nodes,
        method: Method::BranchAndBound,
    })
}
