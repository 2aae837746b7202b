//! Triangle area from unlimited slicing, in exact rational arithmetic.
//!
//! ```text
//! cargo run --example wallis_area -- 3 4
//! ```

use bcontinuum::filter::FilterSemantics;
use bcontinuum::hyperreal::wallis_area_detailed;
use bcontinuum::value::rational;
use num_rational::BigRational;

fn arg(i: usize, default: i64) -> BigRational {
    std::env::args()
        .nth(i)
        .and_then(|s| s.parse().ok())
        .unwrap_or_else(|| rational(default, 1))
}

fn main() -> bcontinuum::Result<()> {
    let (a, b) = (arg(1, 3), arg(2, 4));
    let w = wallis_area_detailed(&a, &b, FilterSemantics::default())?;
    println!("altitude {a}, base {b}");
    println!(
        "n * (1/n) = 1:   {} ({})",
        w.unit_product.value,
        w.unit_product.witness.flatten()
    );
    println!(
        "area constant:   {} ({})",
        w.area_equality.value,
        w.area_equality.witness.flatten()
    );
    println!("area = {}", w.area);
    Ok(())
}
