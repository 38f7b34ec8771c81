//! Blow-ups, suspensions, 2-subdivision and the common-neighbour graph.
//!
//! cargo run --example transforms

use turanlab::classify::chain_blowup_embeddable;
use turanlab::format::to_canonical_json;
use turanlab::hypergraph::chain_graph;
use turanlab::transforms::{blowup, blowup_uniform, square2, subdivide2, suspend};
use turanlab::{EdgeTypeSet, Hypergraph};

fn main() -> turanlab::Result<()> {
    let k2 = Hypergraph::new(2, vec![vec![0], vec![1], vec![0, 1]])?;
    print!(
        "K_2^{{1,2}}(2):       {}",
        to_canonical_json(&blowup_uniform(&k2, 2)?)
    );
    print!(
        "blow-up by (1,3):   {}",
        to_canonical_json(&blowup(&k2, &[1, 3])?)
    );
    print!(
        "suspension S(K):    {}",
        to_canonical_json(&suspend(&k2, 1)?)
    );

    let chain = chain_graph(&EdgeTypeSet::new([2, 3])?);
    let h1 = subdivide2(&chain)?;
    print!("subdivided chain:   {}", to_canonical_json(&h1));
    println!(
        "  inside a chain blow-up: {}",
        chain_blowup_embeddable(&h1)?.is_some()
    );

    let c4 = Hypergraph::new(4, (0..4).map(|i| vec![i, (i + 1) % 4]))?;
    print!("C_4 squared:        {}", to_canonical_json(&square2(&c4)?));
    Ok(())
}
