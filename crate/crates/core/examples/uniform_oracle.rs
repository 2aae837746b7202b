//! Diagonal probes against the sup-norm criterion over the series corpus.
//!
//! ```text
//! cargo run --release --example uniform_oracle -- 20000
//! ```
//! The optional argument is the horizon (default 100000).

use bcontinuum::decay::decimal_ladder;
use bcontinuum::filter::FilterSemantics;
use bcontinuum::sumtheorem::{
    corpus, default_b_probes, default_fixed_points, hypothesis_1853, uniform_cauchy_oracle,
};

fn main() -> bcontinuum::Result<()> {
    let horizon = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(100_000);
    let fs = FilterSemantics::default().with_window(horizon, 64)?;
    for s in corpus::all() {
        let probes = default_b_probes(s.interval(), fs)?;
        let rep = hypothesis_1853(&s, &default_fixed_points(s.interval()), &probes, &fs)?;
        let uniform = uniform_cauchy_oracle(&s, 101, &decimal_ladder(4), &fs)?;
        println!(
            "{:<13} {}  probes {:<6} uniform {:<6}",
            s.label(),
            s.interval(),
            rep.aggregate,
            uniform.value
        );
        for (label, v) in rep.probes.iter().filter(|(_, v)| !v.is_holds()) {
            println!("    {label:<8} {} {}", v.value, v.witness.flatten());
        }
        if !uniform.is_holds() {
            println!("    uniform  {}", uniform.witness.flatten());
        }
    }
    Ok(())
}
