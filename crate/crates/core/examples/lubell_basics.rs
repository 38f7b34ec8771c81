//! Building hypergraphs and evaluating the Lubell function.
//!
//! cargo run --example lubell_basics

use turanlab::hypergraph::{chain_graph, complete_r_graph, is_flag, level_graph, link_graph};
use turanlab::{EdgeTypeSet, Hypergraph};

fn main() -> turanlab::Result<()> {
    let r = EdgeTypeSet::new([1, 2])?;
    let k2 = complete_r_graph(2, &r)?;
    println!("K_2^{r}: {k2:?}  lubell = {}", k2.lubell());

    let k4 = complete_r_graph(4, &r)?;
    println!(
        "K_4^{r}: {} edges, lubell = {}",
        k4.edge_count(),
        k4.lubell()
    );

    let chain = chain_graph(&EdgeTypeSet::new([1, 2, 3])?);
    println!("chain {{1,2,3}}: {chain:?}  flag = {}", is_flag(&chain));

    let g = Hypergraph::new(4, vec![vec![1], vec![1, 3], vec![0, 1, 3], vec![2, 3]])?;
    println!("2-level of {g:?}: {:?}", level_graph(&g, 2));
    println!("link at vertex 1: {:?}", link_graph(&g, 1)?);
    Ok(())
}
