//! Named case studies, configuration and report emission.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::FromPrimitive;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    cauchy_continuous_at, cauchy_continuous_on_default, derivative_robust, functions,
    negative_harmonic, ContinuityProbe, Interval, ProbeFamily, DEFAULT_DERIVATIVE_TOLERANCE,
};
use crate::decay::decimal_ladder;
use crate::error::{Error, Result};
use crate::filter::{frequently, FilterSemantics, ParityChoice};
use crate::hyperreal::{classify, hr_compare, wallis_area_detailed, Hyperreal, Kind};
use crate::seq::gen;
use crate::sumtheorem::{
    corpus, default_b_probes, default_fixed_points, diagonal_verdict, diagonal_window,
    hypothesis_1821, hypothesis_1853, integral_comparison_bound, sum_continuity_check,
    uniform_cauchy_oracle, Series, SINE_INTEGRAL_1_2,
};
use crate::value::Value;
use crate::verdict::{Truth, Verdict3, Witness};

pub const SCHEMA_VERSION: &str = "1.0";
/// Depth of the `10^-k` ladder handed to the uniform oracle.
pub const UNIFORM_EPS_DEPTH: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" | "txt" => Ok(OutputFormat::Text),
            other => Err(Error::InvalidConfig(format!(
                "output_format must be json, csv or text (got `{other}`)"
            ))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Text => "text",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub horizon: u64,
    pub tail_window: u64,
    pub parity_choice: ParityChoice,
    pub st_tolerance: f64,
    pub derivative_tolerance: f64,
    pub grid_density: u64,
    pub output_format: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            horizon: crate::filter::DEFAULT_HORIZON,
            tail_window: crate::filter::DEFAULT_TAIL_WINDOW,
            parity_choice: ParityChoice::EvensInFilter,
            st_tolerance: crate::filter::DEFAULT_ST_TOLERANCE,
            derivative_tolerance: DEFAULT_DERIVATIVE_TOLERANCE,
            grid_density: 101,
            output_format: OutputFormat::Json,
        }
    }
}

impl Config {
    pub const KEYS: [&'static str; 7] = [
        "horizon",
        "tail_window",
        "parity_choice",
        "st_tolerance",
        "derivative_tolerance",
        "grid_density",
        "output_format",
    ];

    /// Set one field from its textual form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad =
            |what: &str| Error::InvalidConfig(format!("{key}: expected {what}, got `{value}`"));
        let value = value.trim();
        match key.trim() {
            "horizon" => self.horizon = value.parse().map_err(|_| bad("a positive integer"))?,
            "tail_window" => {
                self.tail_window = value.parse().map_err(|_| bad("a positive integer"))?
            }
            "parity_choice" => self.parity_choice = value.parse()?,
            "st_tolerance" => self.st_tolerance = value.parse().map_err(|_| bad("a number"))?,
            "derivative_tolerance" => {
                self.derivative_tolerance = value.parse().map_err(|_| bad("a number"))?
            }
            "grid_density" => self.grid_density = value.parse().map_err(|_| bad("an integer"))?,
            "output_format" => self.output_format = value.parse()?,
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unknown key `{other}` (expected one of {})",
                    Config::KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    /// Flat `key = value` lines over the defaults. `#` starts a comment.
    pub fn parse_kv(text: &str) -> Result<Config> {
        let mut cfg = Config::default();
        cfg.apply_kv(text)?;
        Ok(cfg)
    }

    pub fn apply_kv(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::InvalidConfig(format!("line {}: expected key = value", lineno + 1))
            })?;
            self.set(k, v)?;
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.st_tolerance > 0.0 && self.st_tolerance.is_finite()) {
            return Err(Error::InvalidConfig("st_tolerance must be positive".into()));
        }
        if !(self.derivative_tolerance > 0.0 && self.derivative_tolerance.is_finite()) {
            return Err(Error::InvalidConfig(
                "derivative_tolerance must be positive".into(),
            ));
        }
        if self.grid_density < 2 {
            return Err(Error::InvalidConfig(
                "grid_density must be at least 2".into(),
            ));
        }
        self.semantics().map(|_| ())
    }

    pub fn semantics(&self) -> Result<FilterSemantics> {
        FilterSemantics::new(self.horizon, self.tail_window, self.parity_choice)?
            .with_st_tolerance(self.st_tolerance)
            .map_err(|e| Error::InvalidConfig(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictEntry {
    pub label: String,
    pub value: Truth,
    pub witness: Witness,
}

impl VerdictEntry {
    pub fn is_error(&self) -> bool {
        matches!(self.witness, Witness::Error(_))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub schema_version: String,
    pub case_name: String,
    pub config: Config,
    pub verdicts: Vec<VerdictEntry>,
    pub bounds: BTreeMap<String, f64>,
    pub elapsed_ms: u64,
}

impl CaseReport {
    pub fn new(case_name: impl Into<String>, config: &Config) -> CaseReport {
        CaseReport {
            schema_version: SCHEMA_VERSION.to_string(),
            case_name: case_name.into(),
            config: config.clone(),
            verdicts: vec![],
            bounds: BTreeMap::new(),
            elapsed_ms: 0,
        }
    }

    pub fn push(&mut self, label: impl Into<String>, v: Verdict3) {
        self.verdicts.push(VerdictEntry {
            label: label.into(),
            value: v.value,
            witness: v.witness,
        });
    }

    /// Record a result; an error becomes an undetermined entry carrying its text.
    pub fn push_result(&mut self, label: impl Into<String>, r: Result<Verdict3>) {
        match r {
            Ok(v) => self.push(label, v),
            Err(e) => self.push_error(label, &e),
        }
    }

    pub fn push_error(&mut self, label: impl Into<String>, e: &Error) {
        self.verdicts.push(VerdictEntry {
            label: label.into(),
            value: Truth::Undetermined,
            witness: Witness::Error(e.to_string()),
        });
    }

    pub fn bound(&mut self, name: impl Into<String>, value: f64) {
        self.bounds.insert(name.into(), value);
    }

    pub fn verdict(&self, label: &str) -> Option<&VerdictEntry> {
        self.verdicts.iter().find(|v| v.label == label)
    }

    pub fn has_errors(&self) -> bool {
        self.verdicts.iter().any(VerdictEntry::is_error)
    }

    pub fn aggregate(&self) -> Truth {
        Truth::all(self.verdicts.iter().map(|v| v.value))
    }

    /// Copy with `elapsed_ms` zeroed, for comparisons across runs.
    pub fn without_timing(&self) -> CaseReport {
        CaseReport {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseInfo {
    pub name: &'static str,
    pub description: &'static str,
    pub anchor: &'static str,
}

impl fmt::Display for CaseInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.name, self.description, self.anchor)
    }
}

const CASES: [CaseInfo; 8] = [
    CaseInfo {
        name: "abel",
        description: "pointwise convergence of sum sin(ix)/i holds, convergence at x = 1/n fails",
        anchor: "Abel's series and Cauchy's 1853 sum theorem",
    },
    CaseInfo {
        name: "sin1x",
        description: "B-point continuity failure of sin(1/x) on (0,1]",
        anchor: "Cauchy's continuity test at x = 1/n",
    },
    CaseInfo {
        name: "wallis",
        description: "triangle area A*B/2 from unlimited slicing",
        anchor: "Wallis, infinitely thin parallelograms",
    },
    CaseInfo {
        name: "signed-infinitesimal",
        description: "sign of (-1)^n/n decided by the parity oracle",
        anchor: "infinitesimals whose sign depends on the filter",
    },
    CaseInfo {
        name: "parabola-derivative",
        description: "derivative of x^2 at 1 along three infinitesimals",
        anchor: "Fermat's adequality, dy/dx of the parabola",
    },
    CaseInfo {
        name: "absval-derivative",
        description: "one-sided derivatives of |x| at 0 disagree",
        anchor: "uniqueness of the adequal derivative",
    },
    CaseInfo {
        name: "geometric",
        description: "uniformly convergent geometric series on [-1/2,1/2]",
        anchor: "sum theorem, hypothesis met",
    },
    CaseInfo {
        name: "cauchy1821-sequence",
        description: "infinitesimal despite non-monotonicity: 1/4, 1/3, 1/6, 1/5, ...",
        anchor: "Cauchy 1821, variable quantities becoming infinitesimal",
    },
];

/// The registry in its fixed order.
pub fn list_cases() -> Vec<CaseInfo> {
    CASES.to_vec()
}

pub type Params = BTreeMap<String, String>;

pub fn run_case(name: &str, cfg: &Config) -> Result<CaseReport> {
    run_case_with(name, cfg, &Params::new())
}

/// Run a registered case. Module errors are recorded in the report; only an
/// unknown case, an invalid config or a malformed parameter is an `Err`.
pub fn run_case_with(name: &str, cfg: &Config, params: &Params) -> Result<CaseReport> {
    cfg.validate()?;
    let fs = cfg.semantics()?;
    let start = Instant::now();
    let mut r = CaseReport::new(name, cfg);
    match name {
        "abel" => abel(&mut r, cfg, fs),
        "sin1x" => sin1x(&mut r, fs),
        "wallis" => wallis(&mut r, fs, params)?,
        "signed-infinitesimal" => signed_infinitesimal(&mut r, fs),
        "parabola-derivative" => parabola(&mut r, cfg, fs),
        "absval-derivative" => absval(&mut r, cfg, fs),
        "geometric" => series_suite(&mut r, cfg, fs, &corpus::geometric(), Some(0.0)),
        "cauchy1821-sequence" => cauchy1821(&mut r, fs),
        other => return Err(Error::UnknownCase(other.to_string())),
    }
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(r)
}

fn abel(r: &mut CaseReport, cfg: &Config, fs: FilterSemantics) {
    let s = corpus::abel();
    match hypothesis_1821(&s, &default_fixed_points(s.interval()), &fs) {
        Ok(points) => {
            for (x, v) in points {
                r.push(format!("hypothesis_1821 x={x}"), v);
            }
        }
        Err(e) => r.push_error("hypothesis_1821", &e),
    }
    r.push_result(
        "hypothesis_1853 x=1/n",
        diagonal_verdict(&s, &Hyperreal::harmonic(fs), 2),
    );
    r.push_result(
        "uniform_cauchy_oracle",
        uniform_cauchy_oracle(
            &s,
            cfg.grid_density,
            &decimal_ladder(UNIFORM_EPS_DEPTH),
            &fs,
        ),
    );
    if let Ok(b) = integral_comparison_bound(&s, 100) {
        r.bound("abel_diagonal_bound", b);
    }
    let harmonic = Hyperreal::harmonic(fs);
    for k in [100u64, 10_000] {
        r.bound(
            format!("diagonal_k{k}"),
            diagonal_window(&s, &harmonic, k, 2).value,
        );
    }
    r.bound("sine_integral_1_2", SINE_INTEGRAL_1_2);
}

fn sin1x(r: &mut CaseReport, fs: FilterSemantics) {
    let f = functions::sin_recip();
    let h = Hyperreal::harmonic(fs);
    let probe = ContinuityProbe::b_point(h.clone(), h, "1/n");
    let direct = cauchy_continuous_at(&f, &probe);
    if let Ok(Verdict3 {
        witness: Witness::Recurring { count, .. },
        ..
    }) = &direct
    {
        r.bound("recurring_witnesses", *count as f64);
    }
    r.push_result("B x=1/n +1/n (direct)", direct);
    match cauchy_continuous_on_default(&f, &Interval::left_open(0.0, 1.0), ProbeFamily::AAndB, fs) {
        Ok(report) => {
            r.bound(
                "b_only_failure",
                if report.b_only_failure { 1.0 } else { 0.0 },
            );
            for p in report.probes {
                r.push(p.label, p.verdict);
            }
        }
        Err(e) => r.push_error("probe family", &e),
    }
}

fn parse_rational(key: &str, s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim())
        .ok()
        .or_else(|| s.trim().parse::<f64>().ok().and_then(BigRational::from_f64))
        .ok_or_else(|| Error::InvalidArgument(format!("parameter {key}: `{s}` is not a rational")))
}

fn wallis(r: &mut CaseReport, fs: FilterSemantics, params: &Params) -> Result<()> {
    for k in params.keys() {
        if k != "A" && k != "B" {
            return Err(Error::InvalidArgument(format!(
                "wallis takes parameters A and B (got `{k}`)"
            )));
        }
    }
    let a = parse_rational("A", params.get("A").map_or("3", String::as_str))?;
    let b = parse_rational("B", params.get("B").map_or("4", String::as_str))?;
    r.bound("A", Value::Exact(a.clone()).to_f64());
    r.bound("B", Value::Exact(b.clone()).to_f64());
    match wallis_area_detailed(&a, &b, fs) {
        Ok(w) => {
            r.push("unit_product n*(1/n)=1", w.unit_product);
            r.push("area_equality", w.area_equality);
            r.push(
                "area",
                Verdict3::holds(
                    Witness::Exact(Value::Exact(w.area.clone()).to_string()),
                    fs.horizon(),
                ),
            );
            r.bound("area", Value::Exact(w.area).to_f64());
        }
        Err(e) => r.push_error("area", &e),
    }
    Ok(())
}

fn signed_infinitesimal(r: &mut CaseReport, fs: FilterSemantics) {
    let a = Hyperreal::new(gen::alternating_harmonic(), fs);
    let zero = Hyperreal::from_real(Value::int(0), fs);
    let c = hr_compare(&a, &zero);
    for (rel, v) in &c.by_relation {
        r.push(format!("(-1)^n/n {rel} 0"), v.clone());
    }
    r.push("sign", c.verdict);
    let infinitesimal = classify(&a).kind == Kind::Infinitesimal;
    r.bound("infinitesimal", if infinitesimal { 1.0 } else { 0.0 });
}

fn derivative_entries(
    r: &mut CaseReport,
    f: &crate::analysis::HFunction,
    x0: Value,
    gens: &[Hyperreal],
    tol: f64,
) {
    let d = derivative_robust(f, &x0, gens, tol);
    let h = gens.first().map_or(0, |g| g.fs().horizon());
    for (label, res) in &d.per_generator {
        let v = res
            .as_ref()
            .map(|v| Verdict3::holds(Witness::Value(v.to_f64()), h))
            .map_err(Clone::clone);
        r.push_result(format!("derivative eps={label}"), v);
    }
    let verdict = if d.uniform {
        Verdict3::holds(d.witness.clone(), h)
    } else {
        Verdict3::fails(d.witness.clone(), h)
    };
    if let Some(v) = &d.value {
        r.bound("derivative", v.to_f64());
    }
    r.push("uniform", verdict);
}

fn parabola(r: &mut CaseReport, cfg: &Config, fs: FilterSemantics) {
    let gens = [
        Hyperreal::harmonic(fs),
        Hyperreal::new(gen::inverse_power(2), fs),
        Hyperreal::new(gen::alternating_harmonic(), fs),
    ];
    derivative_entries(
        r,
        &functions::square(),
        Value::int(1),
        &gens,
        cfg.derivative_tolerance,
    );
}

fn absval(r: &mut CaseReport, cfg: &Config, fs: FilterSemantics) {
    let gens = [Hyperreal::harmonic(fs), negative_harmonic(fs)];
    derivative_entries(
        r,
        &functions::abs(),
        Value::int(0),
        &gens,
        cfg.derivative_tolerance,
    );
}

fn cauchy1821(r: &mut CaseReport, fs: FilterSemantics) {
    let a = Hyperreal::new(gen::swapped_reciprocals(), fs);
    let c = classify(&a);
    let h = fs.horizon();
    let v = match c.kind {
        Kind::Infinitesimal => Verdict3::holds(c.witness, h),
        Kind::Undetermined => Verdict3::undetermined(h),
        _ => Verdict3::fails(c.witness, h),
    };
    r.push("infinitesimal", v);
    let rise = |n: u64| a.term(n + 1).to_f64() > a.term(n).to_f64();
    let rises = frequently(|n| rise(n) || rise(n + 1), &fs);
    r.push("non-monotone (a rise within every two steps)", rises);
}

/// The series checks shared by `geometric` and `series check`.
fn series_suite(
    r: &mut CaseReport,
    cfg: &Config,
    fs: FilterSemantics,
    s: &Series,
    x0: Option<f64>,
) {
    let fixed = default_fixed_points(s.interval());
    match default_b_probes(s.interval(), fs).and_then(|p| hypothesis_1853(s, &fixed, &p, &fs)) {
        Ok(rep) => {
            for (x, v) in rep.fixed {
                r.push(format!("hypothesis_1821 x={x}"), v);
            }
            for (label, v) in rep.probes {
                r.push(format!("hypothesis_1853 x={label}"), v);
            }
            r.push(
                "hypothesis_1853 aggregate",
                Verdict3 {
                    value: rep.aggregate,
                    witness: Witness::Exhausted(fs.horizon()),
                    horizon_used: fs.horizon(),
                },
            );
        }
        Err(e) => r.push_error("hypothesis_1853", &e),
    }
    r.push_result(
        "uniform_cauchy_oracle",
        uniform_cauchy_oracle(s, cfg.grid_density, &decimal_ladder(UNIFORM_EPS_DEPTH), &fs),
    );
    if let Some(x0) = x0 {
        match sum_continuity_check(s, x0, &fs) {
            Ok(c) => {
                r.bound("truncation_floor", c.truncation_floor as f64);
                r.push(format!("sum_continuity x0={x0}"), c.verdict);
            }
            Err(e) => r.push_error(format!("sum_continuity x0={x0}"), &e),
        }
    }
}

/// Convergence checks for a user series given as an expression in `i` and `x`.
pub fn series_check(src: &str, interval: &Interval, cfg: &Config) -> Result<CaseReport> {
    cfg.validate()?;
    let fs = cfg.semantics()?;
    let s = Series::from_expr(src, *interval)?;
    let start = Instant::now();
    let mut r = CaseReport::new("series-check", cfg);
    r.bound("interval_lo", interval.lo);
    r.bound("interval_hi", interval.hi);
    let mid = (interval.lo + interval.hi) / 2.0;
    series_suite(&mut r, cfg, fs, &s, Some(mid));
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(r)
}

fn csv_bytes(r: &CaseReport) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(vec![]);
    w.write_record(["label", "value", "witness"])
        .expect("in-memory write");
    for v in &r.verdicts {
        w.write_record([
            v.label.as_str(),
            v.value.as_str(),
            v.witness.flatten().as_str(),
        ])
        .expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

fn text(r: &CaseReport) -> String {
    let c = &r.config;
    let mut out = format!(
        "case: {}\nschema: {}\nconfig: horizon={} tail_window={} parity={} st_tol={:e} deriv_tol={:e} grid={}\n",
        r.case_name,
        r.schema_version,
        c.horizon,
        c.tail_window,
        c.parity_choice,
        c.st_tolerance,
        c.derivative_tolerance,
        c.grid_density
    );
    let width = r.verdicts.iter().map(|v| v.label.len()).max().unwrap_or(0);
    for v in &r.verdicts {
        out.push_str(&format!(
            "  {:<width$}  {:<12}  {}\n",
            v.label,
            v.value.as_str(),
            v.witness.flatten()
        ));
    }
    for (k, v) in &r.bounds {
        out.push_str(&format!("  bound {k} = {v}\n"));
    }
    out.push_str(&format!("aggregate: {}\n", r.aggregate()));
    out.push_str(&format!("elapsed: {} ms\n", r.elapsed_ms));
    out
}

pub fn emit_report(r: &CaseReport, format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_vec_pretty(r).expect("reports serialize");
            s.push(b'\n');
            s
        }
        OutputFormat::Csv => csv_bytes(r),
        OutputFormat::Text => text(r).into_bytes(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> Config {
        Config {
            horizon: 10_000,
            ..Config::default()
        }
    }

    #[test]
    fn config_file_and_validation() {
        let c =
            Config::parse_kv("# demo\nhorizon = 5000\nparity_choice=odds\noutput_format = csv\n")
                .unwrap();
        assert_eq!(c.horizon, 5000);
        assert_eq!(c.parity_choice, ParityChoice::OddsInFilter);
        assert_eq!(c.output_format, OutputFormat::Csv);
        assert!(Config::parse_kv("horizon = 10\ntail_window = 64").is_err());
        assert!(Config::parse_kv("st_tolerance = -1").is_err());
        assert!(Config::parse_kv("colour = blue").is_err());
        assert!(Config::parse_kv("horizon").is_err());
    }

    #[test]
    fn registry_is_stable() {
        let names: Vec<&str> = list_cases().iter().map(|c| c.name).collect();
        assert_eq!(
            names,
            [
                "abel",
                "sin1x",
                "wallis",
                "signed-infinitesimal",
                "parabola-derivative",
                "absval-derivative",
                "geometric",
                "cauchy1821-sequence"
            ]
        );
        assert_eq!(list_cases(), list_cases());
        assert!(list_cases()[1]
            .to_string()
            .starts_with("sin1x: B-point continuity failure"));
    }

    #[test]
    fn unknown_case() {
        assert_eq!(
            run_case("nope", &quick()).unwrap_err(),
            Error::UnknownCase("nope".into())
        );
    }

    #[test]
    fn wallis_case() {
        let mut p = Params::new();
        p.insert("A".into(), "3".into());
        p.insert("B".into(), "4".into());
        let r = run_case_with("wallis", &quick(), &p).unwrap();
        assert_eq!(r.bounds["area"], 6.0);
        assert_eq!(
            r.verdict("area").unwrap().witness,
            Witness::Exact("6".into())
        );
        assert_eq!(r.aggregate(), Truth::Holds);
        p.insert("A".into(), "2/3".into());
        p.insert("B".into(), "3/5".into());
        let r = run_case_with("wallis", &quick(), &p).unwrap();
        assert_eq!(
            r.verdict("area").unwrap().witness,
            Witness::Exact("1/5".into())
        );
        p.insert("A".into(), "-1".into());
        let r = run_case_with("wallis", &quick(), &p).unwrap();
        assert!(r.has_errors());
        p.insert("C".into(), "1".into());
        assert!(run_case_with("wallis", &quick(), &p).is_err());
    }

    #[test]
    fn signed_infinitesimal_case() {
        for (parity, want) in [
            (ParityChoice::EvensInFilter, Some(">")),
            (ParityChoice::OddsInFilter, Some("<")),
            (ParityChoice::None, None),
        ] {
            let cfg = Config {
                parity_choice: parity,
                ..quick()
            };
            let r = run_case("signed-infinitesimal", &cfg).unwrap();
            let sign = r.verdict("sign").unwrap();
            match want {
                Some(rel) => assert!(
                    matches!(&sign.witness, Witness::Relation { relation, .. } if relation == rel),
                    "{sign:?}"
                ),
                None => assert_eq!(sign.value, Truth::Undetermined),
            }
        }
    }

    #[test]
    fn emitters() {
        let r = run_case("parabola-derivative", &quick()).unwrap();
        let json = emit_report(&r, OutputFormat::Json);
        let back: CaseReport = serde_json::from_slice(&json).unwrap();
        assert_eq!(back, r);
        let text = String::from_utf8(emit_report(&r, OutputFormat::Text)).unwrap();
        assert!(text.contains("parabola-derivative") && text.contains("aggregate: holds"));
        let empty = CaseReport::new("empty", &quick());
        assert_eq!(
            emit_report(&empty, OutputFormat::Csv),
            b"label,value,witness\n"
        );
        let csv = String::from_utf8(emit_report(&r, OutputFormat::Csv)).unwrap();
        assert_eq!(csv.lines().count(), r.verdicts.len() + 1);
    }

    #[test]
    fn absval_disagrees() {
        let r = run_case("absval-derivative", &quick()).unwrap();
        let u = r.verdict("uniform").unwrap();
        assert_eq!(u.value, Truth::Fails);
        assert_eq!(u.witness, Witness::Divergent(vec![1.0, -1.0]));
        assert!(!r.has_errors());
    }

    #[test]
    fn cauchy1821_case() {
        let r = run_case("cauchy1821-sequence", &quick()).unwrap();
        assert_eq!(r.aggregate(), Truth::Holds, "{r:?}");
    }

    #[test]
    fn series_check_expression() {
        let r = series_check("x^i", &"-0.5,0.5".parse().unwrap(), &quick()).unwrap();
        assert_eq!(r.aggregate(), Truth::Holds, "{:#?}", r.verdicts);
        assert!(series_check("x^", &"0,1".parse().unwrap(), &quick()).is_err());
    }
}
