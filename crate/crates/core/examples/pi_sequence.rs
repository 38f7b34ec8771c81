//! Exact π_n by branch-and-bound, cross-checked against exhaustive search.
//!
//! cargo run --release --example pi_sequence [n_max]

use std::time::Instant;

use turanlab::extremal::{
    pi_n_branch_bound, pi_n_exhaustive, pi_sequence, ForbiddenFamily, SearchConfig,
};
use turanlab::Hypergraph;

fn main() -> turanlab::Result<()> {
    let n_max: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(6);
    let k2 = Hypergraph::new(2, vec![vec![0], vec![1], vec![0, 1]])?;
    let family = ForbiddenFamily::single(k2)?;
    let cfg = SearchConfig::default();

    let start = Instant::now();
    for (n, v) in pi_sequence(&family, 2, n_max, &cfg)? {
        println!("pi_{n}(K_2^{{1,2}}) = {v}  ({:.3})", v.to_f64());
    }
    println!("sequence took {:?}", start.elapsed());

    for n in 2..=4 {
        let bb = pi_n_branch_bound(n, &family, &cfg)?;
        let ex = pi_n_exhaustive(n, &family)?;
        println!(
            "n = {n}: branch-and-bound {} in {} nodes, exhaustive {}; same witness: {}",
            bb.value,
            bb.nodes,
            ex.value,
            bb.witness == ex.witness
        );
    }
    Ok(())
}
