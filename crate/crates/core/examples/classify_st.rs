//! Classification and standard parts for a few representatives.

use bcontinuum::filter::FilterSemantics;
use bcontinuum::hyperreal::Hyperreal;
use bcontinuum::seq::{gen, Seq};

fn main() {
    let fs = FilterSemantics::default();
    let cases = [
        ("1/n", gen::harmonic()),
        ("n", gen::identity()),
        ("1/4, 1/3, 1/6, 1/5, ...", gen::swapped_reciprocals()),
        (
            "(1 + 1/n)^n",
            Seq::float(|n| (1.0 + 1.0 / n as f64).powf(n as f64)),
        ),
        (
            "2 + (-1)^n",
            Seq::float(|n| 2.0 + if n % 2 == 0 { 1.0 } else { -1.0 }),
        ),
        ("sin n", Seq::float(|n| (n as f64).sin())),
    ];
    for (name, rep) in cases {
        let a = Hyperreal::new(rep, fs);
        let c = a.classify();
        let st = match a.st() {
            Ok(v) => v.to_string(),
            Err(e) => format!("({e})"),
        };
        println!("{name:<24} {:<14} st {st}", format!("{:?}", c.kind));
    }
}
