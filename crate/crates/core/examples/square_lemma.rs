//! Exhaustive check of |E(G)| - |E(G^(2))| <= floor(n/2) and its equality cases.
//!
//! cargo run --release --example square_lemma [n_max]

use turanlab::verify::verify_square_lemma_exhaustive;

fn main() -> turanlab::Result<()> {
    let n_max: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(6);
    let report = verify_square_lemma_exhaustive(n_max)?;
    println!(
        "{} labelled graphs checked, {} violations",
        report.universe_size,
        report.violations.len()
    );
    println!("equality classes:");
    for w in &report.extremal_witnesses {
        println!("  {w:?}");
    }
    for f in &report.findings {
        println!("finding: {f}");
    }
    Ok(())
}
