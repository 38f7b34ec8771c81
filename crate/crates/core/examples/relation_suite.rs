//! Flags, monotonicity, blow-up and suspension relations between π_n values.
//!
//! cargo run --release --example relation_suite

use turanlab::extremal::SearchConfig;
use turanlab::hypergraph::chain_graph;
use turanlab::verify::verify_relation_suite;
use turanlab::{EdgeTypeSet, Hypergraph};

fn main() -> turanlab::Result<()> {
    let corpus = vec![
        chain_graph(&EdgeTypeSet::new([1, 2])?),
        Hypergraph::new(2, vec![vec![0], vec![1], vec![0, 1]])?,
        chain_graph(&EdgeTypeSet::new([1, 2, 3])?),
    ];
    let report = verify_relation_suite(&corpus, 5, &SearchConfig::default())?;
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(())
}
