//! Lower-bound constructions and how fast they approach their limits.
//!
//! cargo run --release --example constructions

use turanlab::construct::{
    build_closed_path_extremal, build_example1, build_example2, build_suspension_tower,
};

fn main() -> turanlab::Result<()> {
    println!(
        "{:>3} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "n", "example1", "example2", "closedpath", "tower k=2", "tower k=3"
    );
    for n in (8..=24).step_by(4) {
        let reports = [
            build_example1(n, n / 2)?,
            build_example2(n)?,
            build_closed_path_extremal(n)?,
            build_suspension_tower(n, 2)?,
            build_suspension_tower(n, 3)?,
        ];
        assert!(reports.iter().all(|r| r.freeness_checked));
        let gaps: Vec<String> = reports
            .iter()
            .map(|r| format!("{:+.6}", r.gap.to_f64()))
            .collect();
        println!(
            "{n:>3} {:>12} {:>12} {:>12} {:>12} {:>12}",
            gaps[0], gaps[1], gaps[2], gaps[3], gaps[4]
        );
    }
    Ok(())
}
