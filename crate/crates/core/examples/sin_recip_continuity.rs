//! `sin(1/x)` on `(0, 1]`: continuous at every standard point, yet a point
//! generated by `1/n` sees the function jump.

use bcontinuum::analysis::{
    cauchy_continuous_on_default, functions, Interval, PointKind, ProbeFamily,
};
use bcontinuum::filter::FilterSemantics;

fn main() -> bcontinuum::Result<()> {
    let fs = FilterSemantics::default();
    let report = cauchy_continuous_on_default(
        &functions::sin_recip(),
        &Interval::left_open(0.0, 1.0),
        ProbeFamily::AAndB,
        fs,
    )?;
    for p in &report.probes {
        println!(
            "{:<22} {:<12} {}",
            p.label,
            p.verdict.value,
            p.verdict.witness.flatten()
        );
    }
    println!("A failures: {}", report.failures(PointKind::A).count());
    println!("B failures: {}", report.failures(PointKind::B).count());
    println!("fails only at B-points: {}", report.b_only_failure);
    Ok(())
}
