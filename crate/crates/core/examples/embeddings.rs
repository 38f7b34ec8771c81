//! Subgraph search, copy counting and copy density.
//!
//! cargo run --example embeddings

use turanlab::embed::{automorphism_count, copy_density, count_copies, find_embedding};
use turanlab::hypergraph::complete_r_graph;
use turanlab::{EdgeTypeSet, Hypergraph};

fn main() -> turanlab::Result<()> {
    let k2 = Hypergraph::new(2, vec![vec![0], vec![1], vec![0, 1]])?;
    let host = complete_r_graph(4, &EdgeTypeSet::new([1, 2])?)?;
    let emb = find_embedding(&host, &k2).expect("K_4 contains K_2");
    println!("K_2^{{1,2}} -> K_4^{{1,2}} via {:?}", emb.0);
    println!("|Aut(K_2^{{1,2}})| = {}", automorphism_count(&k2)?);
    println!("copies: {}", count_copies(&host, &k2)?);
    println!("copy density: {}", copy_density(&host, &k2)?);

    let pbar4 = Hypergraph::new(
        4,
        vec![vec![0], vec![3], vec![0, 1], vec![1, 2], vec![2, 3]],
    )?;
    println!(
        "closed path P4 contains K_2^{{1,2}}: {}",
        find_embedding(&pbar4, &k2).is_some()
    );
    Ok(())
}
