//! The sign of `(-1)^n / n` depends on which parity class the filter contains.

use bcontinuum::filter::{FilterSemantics, ParityChoice};
use bcontinuum::hyperreal::{classify, hr_compare, Hyperreal};
use bcontinuum::seq::gen;
use bcontinuum::value::Value;

fn main() {
    for parity in [
        ParityChoice::EvensInFilter,
        ParityChoice::OddsInFilter,
        ParityChoice::None,
    ] {
        let fs = FilterSemantics::default().with_parity(parity);
        let a = Hyperreal::new(gen::alternating_harmonic(), fs);
        let zero = Hyperreal::from_real(Value::int(0), fs);
        let c = hr_compare(&a, &zero);
        let sign = c.relation.map_or("undetermined", |r| r.symbol());
        println!("{parity:>5}: sign {sign:<12} kind {:?}", classify(&a).kind);
        for (rel, v) in &c.by_relation {
            println!("         {rel} 0  {} {}", v.value, v.witness.flatten());
        }
    }
}
