//! Exact computation of `π_n`: the largest Lubell value of a family-free
//! subgraph of `K_n^R`.
//!
//! Two solvers are provided. [`pi_n_exhaustive`] enumerates every free
//! subgraph and is only usable on tiny instances; [`pi_n_branch_bound`] is
//! the certified branch-and-bound used everywhere else. Both return the same
//! value and the same witness: among all optimal graphs, the one whose
//! canonical edge list is lexicographically least.

mod branch;
mod oracle;

use std::time::Duration;

use serde::Serialize;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeTypeSet, Hypergraph};
use crate::rational::Rational;

pub use oracle::pi_n_exhaustive;

/// Hard limit on candidate edges for the exhaustive solver.
pub const ORACLE_GUARD: usize = 24;
/// Default limit on candidate edges for branch-and-bound.
pub const DEFAULT_BRANCH_CAP: usize = 80;
/// Tie-break bits are packed in a `u128`.
const MAX_CANDIDATES: usize = 128;

/// Forbidden hypergraphs sharing one edge-type set `R`.
#[derive(Clone, Debug, PartialEq)]
pub struct ForbiddenFamily {
    members: Vec<Hypergraph>,
    r: EdgeTypeSet,
}

impl ForbiddenFamily {
    pub fn new(members: Vec<Hypergraph>) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::domain("forbidden family is empty"))?;
        let r = first
            .edge_type_set()
            .ok_or_else(|| Error::domain("forbidden hypergraph has no edges"))?;
        if let Some(bad) = members
            .iter()
            .find(|h| h.edge_type_set().as_ref() != Some(&r))
        {
            return Err(Error::domain(format!(
                "family members must share edge types {r}; found {:?}",
                bad.edge_types()
            )));
        }
        Ok(ForbiddenFamily { members, r })
    }

    pub fn single(h: Hypergraph) -> Result<Self> {
        Self::new(vec![h])
    }

    pub fn members(&self) -> &[Hypergraph] {
        &self.members
    }

    pub fn edge_types(&self) -> &EdgeTypeSet {
        &self.r
    }

    /// True iff `g` contains no member.
    pub fn is_free(&self, g: &Hypergraph) -> bool {
        self.members.iter().all(|h| !crate::embed::contains(g, h))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Oracle,
    BranchAndBound,
}

/// Result of a `π_n` computation.
///
/// When `certified` is false the search was cut short and `value` is only a
/// lower bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub n: usize,
    #[serde(rename = "pi_n")]
    pub value: Rational,
    pub witness: Hypergraph,
    pub certified: bool,
    pub nodes: u64,
    pub method: Method,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Maximum number of candidate edges `sum_{k in R} C(n, k)`.
    pub cap: usize,
    /// Wall-clock budget; exceeding it yields a non-certified outcome.
    pub timeout: Option<Duration>,
    /// Root symmetry reduction on the first canonical edge.
    pub symmetry: bool,
    /// Use `π_{n-1}` (computed first) as an averaging upper bound.
    pub averaging: bool,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Number of top branching levels solved as independent subtrees.
    pub split_depth: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            cap: DEFAULT_BRANCH_CAP,
            timeout: None,
            symmetry: true,
            averaging: true,
            threads: None,
            split_depth: 4,
        }
    }
}

/// Number of candidate edges of `K_n^R`; errors if some size exceeds `n`.
pub fn candidate_count(n: usize, r: &EdgeTypeSet) -> Result<usize> {
    if r.largest() > n {
        return Err(Error::domain(format!(
            "n = {n} is smaller than the largest edge size {}",
            r.largest()
        )));
    }
    r.sizes()
        .iter()
        .map(|&k| binomial(n, k).and_then(|c| usize::try_from(c).ok()))
        .try_fold(0usize, |acc, c| c.and_then(|c| acc.checked_add(c)))
        .ok_or_else(|| Error::cap(format!("candidate count for n = {n} overflows")))
}

/// Certified branch-and-bound computation of `π_n(family)`.
pub fn pi_n_branch_bound(
    n: usize,
    family: &ForbiddenFamily,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    check_branch_cap(n, family, cfg)?;
    let lo = family.edge_types().largest();
    let mut hint = None;
    if cfg.averaging {
        for m in lo..n {
            let out = branch::solve(m, family, cfg, hint.as_ref())?;
            hint = out.certified.then_some(out.value);
        }
    }
    branch::solve(n, family, cfg, hint.as_ref())
}

fn check_branch_cap(n: usize, family: &ForbiddenFamily, cfg: &SearchConfig) -> Result<()> {
    let m = candidate_count(n, family.edge_types())?;
    let cap = cfg.cap.min(MAX_CANDIDATES);
    if m > cap {
        return Err(Error::cap(format!(
            "{m} candidate edges at n = {n} exceeds the branch-and-bound cap of {cap}"
        )));
    }
    Ok(())
}

/// Exact `π_n` for `n` in `n_min..=n_max`, computed bottom-up.
///
/// A value that increases with `n` is reported as an internal error, since the
/// sequence is non-increasing. Non-certified values abort with
/// [`Error::Timeout`].
pub fn pi_sequence(
    family: &ForbiddenFamily,
    n_min: usize,
    n_max: usize,
    cfg: &SearchConfig,
) -> Result<Vec<(usize, Rational)>> {
    if n_min > n_max {
        return Err(Error::domain(format!("empty range {n_min}..={n_max}")));
    }
    let lo = family.edge_types().largest();
    if n_min < lo {
        return Err(Error::domain(format!(
            "n_min = {n_min} is below the largest edge size {lo}"
        )));
    }
    check_branch_cap(n_max, family, cfg)?;
    let start = if cfg.averaging { lo } else { n_min };
    let mut hint: Option<Rational> = None;
    let mut out: Vec<(usize, Rational)> = Vec::new();
    for n in start..=n_max {
        let res = branch::solve(n, family, cfg, hint.as_ref())?;
        if !res.certified {
            return Err(Error::Timeout {
                nodes: res.nodes,
                best: res.value.to_string(),
            });
        }
        if let Some(prev) = &hint {
            if res.value > *prev {
                return Err(Error::Internal(format!(
                    "pi_{n} = {} exceeds pi_{} = {prev}",
                    res.value,
                    n - 1
                )));
            }
        }
        if n >= n_min {
            out.push((n, res.value.clone()));
        }
        hint = Some(res.value);
    }
    Ok(out)
}

/// Lexicographic comparison of canonical edge lists.
pub(crate) fn cmp_edge_lists(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match crate::combinatorics::canonical_cmp(*x, *y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}
