//! Run a registered case and print its report in every output format.

use bcontinuum::casebook::{emit_report, list_cases, run_case, Config, OutputFormat};

fn main() -> bcontinuum::Result<()> {
    let name = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "signed-infinitesimal".into());
    for c in list_cases() {
        println!("{c}");
    }
    let report = run_case(&name, &Config::default())?;
    for format in [OutputFormat::Text, OutputFormat::Csv, OutputFormat::Json] {
        println!("--- {format}");
        print!("{}", String::from_utf8_lossy(&emit_report(&report, format)));
    }
    Ok(())
}
