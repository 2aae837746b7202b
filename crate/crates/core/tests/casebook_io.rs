//! Report emission, configuration and determinism of the case runner.

use bcontinuum::casebook::{
    emit_report, list_cases, run_case, run_case_with, CaseReport, Config, OutputFormat, Params,
};
use bcontinuum::filter::ParityChoice;
use bcontinuum::{Truth, Witness};

fn quick() -> Config {
    Config {
        horizon: 10_000,
        ..Config::default()
    }
}

const FAST: [&str; 5] = [
    "sin1x",
    "wallis",
    "signed-infinitesimal",
    "parabola-derivative",
    "absval-derivative",
];

#[test]
fn json_reports_round_trip() {
    for name in FAST.iter().chain(&["cauchy1821-sequence"]) {
        let r = run_case(name, &quick()).unwrap();
        let back: CaseReport =
            serde_json::from_slice(&emit_report(&r, OutputFormat::Json)).unwrap();
        assert_eq!(back.without_timing(), r.without_timing(), "{name}");
    }
}

#[test]
fn json_has_the_published_top_level_keys() {
    let r = run_case("wallis", &quick()).unwrap();
    let v: serde_json::Value =
        serde_json::from_slice(&emit_report(&r, OutputFormat::Json)).unwrap();
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort();
    assert_eq!(
        keys,
        [
            "bounds",
            "case_name",
            "config",
            "elapsed_ms",
            "schema_version",
            "verdicts"
        ]
    );
    let entry = &v["verdicts"][0];
    assert!(entry["label"].is_string());
    assert!(["holds", "fails", "undetermined"].contains(&entry["value"].as_str().unwrap()));
    assert_eq!(v["config"]["parity_choice"], "evens");
    assert_eq!(v["bounds"]["area"], 6.0);
}

#[test]
fn reruns_are_byte_identical_apart_from_timing() {
    for name in FAST {
        let a = run_case(name, &quick()).unwrap().without_timing();
        let b = run_case(name, &quick()).unwrap().without_timing();
        for f in [OutputFormat::Json, OutputFormat::Csv, OutputFormat::Text] {
            assert_eq!(emit_report(&a, f), emit_report(&b, f), "{name} {f}");
        }
    }
}

#[test]
fn config_echo_and_horizon_injection() {
    let recurring = |h: u64| {
        let cfg = Config {
            horizon: h,
            ..Config::default()
        };
        let r = run_case("sin1x", &cfg).unwrap();
        assert_eq!(r.config, cfg);
        match &r.verdict("B x=1/n +1/n (direct)").unwrap().witness {
            Witness::Recurring { indices, .. } => *indices.last().unwrap(),
            w => panic!("{w:?}"),
        }
    };
    assert_ne!(recurring(100_000), recurring(50_000));
    assert!(recurring(50_000) <= 50_000);
}

#[test]
fn parity_changes_the_sign_report() {
    let mut seen = vec![];
    for p in [
        ParityChoice::EvensInFilter,
        ParityChoice::OddsInFilter,
        ParityChoice::None,
    ] {
        let r = run_case(
            "signed-infinitesimal",
            &Config {
                parity_choice: p,
                ..quick()
            },
        )
        .unwrap();
        seen.push(emit_report(&r.without_timing(), OutputFormat::Json));
    }
    assert_ne!(seen[0], seen[1]);
    assert_ne!(seen[1], seen[2]);
    assert_ne!(seen[0], seen[2]);
}

#[test]
fn csv_and_text_shapes() {
    let empty = CaseReport::new("empty", &quick());
    assert_eq!(
        emit_report(&empty, OutputFormat::Csv),
        b"label,value,witness\n"
    );
    let r = run_case("parabola-derivative", &quick()).unwrap();
    let csv = String::from_utf8(emit_report(&r, OutputFormat::Csv)).unwrap();
    assert_eq!(csv.lines().count(), r.verdicts.len() + 1);
    let text = String::from_utf8(emit_report(&r, OutputFormat::Text)).unwrap();
    assert!(text.contains("parabola-derivative"));
    assert!(text.contains(&format!("aggregate: {}", Truth::Holds)));
}

#[test]
fn module_errors_become_entries() {
    let mut p = Params::new();
    p.insert("A".into(), "0".into());
    let r = run_case_with("wallis", &quick(), &p).unwrap();
    assert!(r.has_errors());
    p.insert("C".into(), "1".into());
    assert!(run_case_with("wallis", &quick(), &p).is_err());
}

#[test]
fn registry_lists_every_case_with_an_anchor() {
    let cases = list_cases();
    assert_eq!(cases.len(), 8);
    for c in &cases {
        assert!(!c.description.is_empty() && !c.anchor.is_empty());
        assert!(c.to_string().starts_with(&format!("{}: ", c.name)));
    }
    assert!(cases.iter().any(|c| c
        .to_string()
        .starts_with("cauchy1821-sequence: infinitesimal despite non-monotonicity")));
}
