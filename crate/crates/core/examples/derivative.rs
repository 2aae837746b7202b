//! Derivatives as standard parts of difference quotients.
//!
//! The parabola gives the same slope along every infinitesimal; `|x|` at
//! the origin does not, and the divergent values come back as the witness.

use bcontinuum::analysis::{
    derivative_robust, functions, negative_harmonic, DEFAULT_DERIVATIVE_TOLERANCE,
};
use bcontinuum::filter::FilterSemantics;
use bcontinuum::hyperreal::Hyperreal;
use bcontinuum::seq::gen;
use bcontinuum::value::Value;

fn main() {
    let fs = FilterSemantics::default();
    let gens = [
        Hyperreal::harmonic(fs).with_label("1/n"),
        Hyperreal::new(gen::inverse_power(2), fs).with_label("1/n^2"),
        Hyperreal::new(gen::alternating_harmonic(), fs).with_label("(-1)^n/n"),
    ];
    let d = derivative_robust(
        &functions::square(),
        &Value::int(1),
        &gens,
        DEFAULT_DERIVATIVE_TOLERANCE,
    );
    println!("d/dx x^2 at 1");
    for (g, r) in &d.per_generator {
        match r {
            Ok(v) => println!("  eps={g:<9} {v}"),
            Err(e) => println!("  eps={g:<9} error: {e}"),
        }
    }
    println!("  uniform: {} ({})", d.uniform, d.witness.flatten());

    let gens = [
        Hyperreal::harmonic(fs).with_label("1/n"),
        negative_harmonic(fs),
    ];
    let d = derivative_robust(
        &functions::abs(),
        &Value::int(0),
        &gens,
        DEFAULT_DERIVATIVE_TOLERANCE,
    );
    println!("d/dx |x| at 0");
    println!("  uniform: {} ({})", d.uniform, d.witness.flatten());
}
