//! `Σ sin(ix)/i` converges at every real of `[0, 1]` but not along `x = 1/n`.
//!
//! The diagonal window `Σ_{i=k+1}^{2k} sin(i/k)/i` tends to the integral of
//! `sin t / t` over `[1, 2]`, about 0.659, instead of zero.

use bcontinuum::filter::FilterSemantics;
use bcontinuum::hyperreal::Hyperreal;
use bcontinuum::sumtheorem::{
    corpus, default_fixed_points, diagonal_verdict, diagonal_window, hypothesis_1821,
    integral_comparison_bound, DEFAULT_WINDOW_FACTOR,
};

fn main() -> bcontinuum::Result<()> {
    let fs = FilterSemantics::default();
    let s = corpus::abel();
    for (x, v) in hypothesis_1821(&s, &default_fixed_points(s.interval()), &fs)? {
        println!("at x = {x:<6} {} {}", v.value, v.witness.flatten());
    }
    let probe = Hyperreal::harmonic(fs);
    let v = diagonal_verdict(&s, &probe, DEFAULT_WINDOW_FACTOR)?;
    println!("along x = 1/n  {} {}", v.value, v.witness.flatten());
    for k in [10u64, 100, 1_000, 10_000] {
        let w = diagonal_window(&s, &probe, k, DEFAULT_WINDOW_FACTOR);
        println!(
            "  k = {k:<6} window {:.6}  lower bound {:.6}",
            w.value,
            integral_comparison_bound(&s, k)?
        );
    }
    Ok(())
}
