//! The four-case density table for hypergraphs with edge sizes {1,2}.
//!
//! cargo run --example classify_12

use turanlab::classify::classify12;
use turanlab::hypergraph::chain_graph;
use turanlab::transforms::blowup_uniform;
use turanlab::{EdgeTypeSet, Hypergraph};

fn with_singleton(n: usize, pairs: &[(usize, usize)]) -> turanlab::Result<Hypergraph> {
    let mut edges: Vec<Vec<usize>> = pairs.iter().map(|&(u, v)| vec![u, v]).collect();
    edges.push(vec![0]);
    Hypergraph::new(n, edges)
}

fn main() -> turanlab::Result<()> {
    let chain = chain_graph(&EdgeTypeSet::new([1, 2])?);
    let corpus = [
        (
            "K_2^{1,2}",
            Hypergraph::new(2, vec![vec![0], vec![1], vec![0, 1]])?,
        ),
        (
            "closed path P4",
            Hypergraph::new(
                4,
                vec![vec![0], vec![3], vec![0, 1], vec![1, 2], vec![2, 3]],
            )?,
        ),
        ("chain", chain.clone()),
        ("chain(2)", blowup_uniform(&chain, 2)?),
        (
            "C_5 + singleton",
            with_singleton(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])?,
        ),
        (
            "K_4 + singleton",
            with_singleton(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])?,
        ),
    ];
    for (name, h) in &corpus {
        let c = classify12(h)?;
        println!(
            "{name:<16} {:<13} {:<5} {}",
            c.case.to_string(),
            c.density.to_string(),
            serde_json::to_string(&c.witness).unwrap()
        );
    }
    Ok(())
}
