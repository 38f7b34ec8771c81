//! Minimum copy counts above a density threshold.
//!
//! cargo run --release --example supersaturation

use turanlab::hypergraph::chain_graph;
use turanlab::verify::{verify_supersaturation, SupersatConfig};
use turanlab::{EdgeTypeSet, Rational};

fn main() -> turanlab::Result<()> {
    let chain = chain_graph(&EdgeTypeSet::new([1, 2])?);
    let a = Rational::new(1, 4);
    for n in 3..=5 {
        let r = verify_supersaturation(&chain, &a, n, &SupersatConfig::default())?;
        println!(
            "n = {n}: threshold {} ({:?}), {} of {} graphs above it, min copies {:?}, b = {:?}",
            r.threshold,
            r.proxy,
            r.exceeding,
            r.graphs_checked,
            r.min_copies,
            r.min_b.map(|b| b.to_string())
        );
    }
    Ok(())
}
