//! A user series written as a term expression, checked like the corpus.
//!
//! ```text
//! cargo run --release --example series_expression -- "x^i/i^2" -1,1
//! ```

use bcontinuum::analysis::Interval;
use bcontinuum::casebook::{emit_report, series_check, Config, OutputFormat};

fn main() -> bcontinuum::Result<()> {
    let mut args = std::env::args().skip(1);
    let expr = args.next().unwrap_or_else(|| "x^i*(1-x)".into());
    let interval: Interval = args.next().as_deref().unwrap_or("0,1").parse()?;
    let cfg = Config {
        horizon: 20_000,
        ..Config::default()
    };
    let report = series_check(&expr, &interval, &cfg)?;
    print!(
        "{}",
        String::from_utf8_lossy(&emit_report(&report, OutputFormat::Text))
    );
    Ok(())
}
