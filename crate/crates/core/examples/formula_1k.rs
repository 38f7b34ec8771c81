//! High-precision values of the {1,k} density formula.
//!
//! cargo run --example formula_1k

use turanlab::classify::formula_1k;
use turanlab::Rational;

fn main() -> turanlab::Result<()> {
    for k in 2..=6 {
        let v = formula_1k(k, &Rational::zero())?;
        let closed = 1.0 + (k as f64 - 1.0) / (k as f64).powf(k as f64 / (k as f64 - 1.0));
        println!("k = {k}: {v}  (f64 closed form {closed:.15})");
    }
    for p in ["1/4", "1/2", "2/3"] {
        let p: Rational = p.parse().unwrap();
        println!("k = 3, level density {p}: {}", formula_1k(3, &p)?);
    }
    Ok(())
}
