//! Configuration, report assembly and rendering for the `bunpic` command line tool.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use bunpic_core::exact::DeInt;
use bunpic_core::family::{parse_family, CurveFamily};
use bunpic_core::forms::{conditional_form_lattice, d_even_forms, even_invariant_forms, ns_bun, ns_bun_p1, ns_rigidified};
use bunpic_core::gerbe::{evaluation_cokernel_at, poincare_bundle_exists, rigidified_picard_at, weight_cokernel_at};
use bunpic_core::picard::{reductive_picard_at, torus_picard, torus_picard_genus0};
use bunpic_core::root_datum::{build_group, generic_lift, parse_group_spec, Pi1Element, ReductiveGroupData};
use bunpic_core::Error;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

/// Largest accepted input file, in bytes.
const MAX_INPUT_BYTES: u64 = 1 << 22;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Computation {
    Pi1,
    Forms,
    Ns,
    Picard,
    Rigidified,
    Gerbe,
    Poincare,
}

impl Computation {
    pub const ALL: [Computation; 7] = [Computation::Pi1, Computation::Forms, Computation::Ns, Computation::Picard, Computation::Rigidified, Computation::Gerbe, Computation::Poincare];

    pub fn key(self) -> &'static str {
        match self {
            Computation::Pi1 => "pi1",
            Computation::Forms => "forms",
            Computation::Ns => "ns",
            Computation::Picard => "picard",
            Computation::Rigidified => "rigidified",
            Computation::Gerbe => "gerbe",
            Computation::Poincare => "poincare",
        }
    }

    fn needs_family(self) -> bool {
        matches!(self, Computation::Picard | Computation::Rigidified | Computation::Gerbe | Computation::Poincare)
    }
}

impl FromStr for Computation {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let t = s.trim().to_ascii_lowercase();
        Computation::ALL.into_iter().find(|c| c.key() == t).ok_or_else(|| CliError::Input(format!("unknown computation `{s}`; expected one of pi1, forms, ns, picard, rigidified, gerbe, poincare")))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(CliError::Input(format!("unknown format `{s}`; expected text or json"))),
        }
    }
}

/// Errors that stop a run before any report is produced.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        1
    }
}

/// One run: a group, a class in its fundamental group, an optional family and the requested
/// computations. This is also the line format of batch files.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// A group specification such as `GL(3)*T(1)`, `@datum.json`, or an inline raw datum object.
    pub group: Value,
    /// Coordinates of delta in the canonical generators of `pi_1(G)`.
    #[serde(default)]
    pub delta: Option<Vec<DeInt>>,
    /// A preset (`universal:2,1`), `raw:genus=..`, `@family.json`, or an inline family object.
    #[serde(default)]
    pub family: Option<Value>,
    /// An explicit cocharacter lifting delta.
    #[serde(default)]
    pub lift_d: Option<Vec<DeInt>>,
    #[serde(default)]
    pub compute: Vec<Computation>,
    #[serde(default)]
    pub format: Format,
}

impl RunConfig {
    pub fn from_json_line(line: &str) -> Result<Self, CliError> {
        serde_json::from_str(line).map_err(|e| CliError::Input(format!("run configuration: {e}")))
    }
}

/// Reads `@path` arguments; other text is returned unchanged.
pub fn resolve_text(arg: &str) -> Result<String, CliError> {
    match arg.trim().strip_prefix('@') {
        Some(path) => {
            let meta = std::fs::metadata(path).map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))?;
            if meta.len() > MAX_INPUT_BYTES {
                return Err(CliError::Input(format!("{path} exceeds {MAX_INPUT_BYTES} bytes")));
            }
            std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))
        }
        None => Ok(arg.to_string()),
    }
}

/// Builds the group and a JSON echo of its source.
pub fn load_group(v: &Value) -> Result<(ReductiveGroupData, Value), CliError> {
    match v {
        Value::String(s) if s.trim_start().starts_with('@') => {
            let text = resolve_text(s)?;
            Ok((ReductiveGroupData::from_json(&text)?, json!({ "source": s.trim(), "kind": "datum" })))
        }
        Value::String(s) => {
            let spec = parse_group_spec(s)?;
            let g = build_group(&spec)?;
            Ok((g, json!({ "source": s, "kind": "spec", "canonical": spec.to_string() })))
        }
        Value::Object(_) => {
            let g = ReductiveGroupData::from_json(&v.to_string())?;
            Ok((g, json!({ "source": "inline", "kind": "datum" })))
        }
        _ => Err(CliError::Input("group must be a specification string or a root datum object".into())),
    }
}

pub fn load_family(v: &Value) -> Result<CurveFamily, CliError> {
    match v {
        Value::String(s) => Ok(parse_family(&resolve_text(s)?)?),
        Value::Object(_) => Ok(CurveFamily::from_json(&v.to_string())?),
        _ => Err(CliError::Input("family must be a preset string or a family object".into())),
    }
}

/// A finished run: the JSON report and its exit code.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub report: Value,
    pub exit_code: i32,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

fn error_value(e: &Error) -> Value {
    match e {
        Error::HypothesisNotSatisfied { theorem, missing } => json!({ "kind": "hypothesis", "theorem": theorem, "missing": missing, "message": e.to_string() }),
        _ => json!({ "kind": "input", "message": e.to_string() }),
    }
}

fn ints(v: &Option<Vec<DeInt>>) -> Option<Vec<BigInt>> {
    v.as_ref().map(|x| x.iter().map(|d| d.0.clone()).collect())
}

fn int_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|x| to_value(&bunpic_core::exact::JsonInt(x))).collect())
}

fn group_echo(g: &ReductiveGroupData, source: Value) -> Value {
    let mut m = match source {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    m.insert("name".into(), json!(g.name()));
    m.insert("cochar_rank".into(), json!(g.cochar_rank()));
    m.insert("ss_rank".into(), json!(g.ss_rank()));
    m.insert("factors".into(), to_value(&g.factors()));
    Value::Object(m)
}

fn forms_section(g: &ReductiveGroupData) -> Result<Value, Error> {
    Ok(json!({
        "even_invariant": to_value(&even_invariant_forms(g)?),
        "d_even": to_value(&d_even_forms(g)?),
        "conditional": to_value(&conditional_form_lattice(g)?),
    }))
}

fn ns_section(g: &ReductiveGroupData, d: &[BigInt]) -> Result<Value, Error> {
    Ok(json!({
        "bun": to_value(&ns_bun(g, d)?),
        "rigidified": to_value(&ns_rigidified(g, d)?),
        "genus0": to_value(&ns_bun_p1(g, d)?),
    }))
}

/// Runs one configuration. Input errors become `Err`; engine failures are recorded per
/// computation and reflected in the exit code.
pub fn run_report(cfg: &RunConfig) -> Result<RunOutcome, CliError> {
    let (g, source) = load_group(&cfg.group)?;
    let family = cfg.family.as_ref().map(load_family).transpose()?;
    let requested: BTreeSet<Computation> = if cfg.compute.is_empty() { [Computation::Pi1].into() } else { cfg.compute.iter().copied().collect() };
    if let Some(c) = requested.iter().find(|c| c.needs_family()) {
        if family.is_none() {
            return Err(CliError::Input(format!("computation `{}` needs a curve family", c.key())));
        }
    }

    let delta = match ints(&cfg.delta) {
        Some(v) => Pi1Element::new(v).normalized(&g)?,
        None => match ints(&cfg.lift_d) {
            Some(d) => Pi1Element::of_cocharacter(&g, &d)?,
            None => Pi1Element::zero(&g),
        },
    };
    let lift = match ints(&cfg.lift_d) {
        Some(d) => {
            if Pi1Element::of_cocharacter(&g, &d)? != delta {
                return Err(CliError::Input("the explicit lift does not lie in the class delta".into()));
            }
            d
        }
        None => generic_lift(&g, &delta)?,
    };

    let mut results = Map::new();
    let mut errors = Map::new();
    let mut warnings: Vec<String> = Vec::new();
    let mut input_failure = false;
    let mut hypothesis_failure = false;
    let cross = g.cross();

    for c in &requested {
        let out: Result<Value, Error> = match c {
            Computation::Pi1 => Ok(json!({
                "group": to_value(cross.pi1.group()),
                "derived": to_value(&cross.pi1_derived),
                "adjoint": to_value(cross.pi1_adjoint.group()),
                "abelianization": to_value(cross.abelianization.group()),
                "center_characters": to_value(cross.center_characters.group()),
            })),
            Computation::Forms => forms_section(&g),
            Computation::Ns => ns_section(&g, &lift),
            Computation::Picard => {
                let f = family.as_ref().unwrap_or_else(|| unreachable!());
                let r = if g.is_torus() {
                    if f.genus == 0 {
                        torus_picard_genus0(&g, &lift, f)
                    } else {
                        torus_picard(&g, &lift, f)
                    }
                } else {
                    reductive_picard_at(&g, &lift, f)
                };
                r.map(|x| to_value(&x))
            }
            Computation::Rigidified => rigidified_picard_at(&g, &lift, family.as_ref().unwrap_or_else(|| unreachable!())).map(|x| to_value(&x)),
            Computation::Gerbe => {
                // The evaluation cokernel is unconditional and is reported even when the
                // hypotheses for the weight cokernel fail.
                match evaluation_cokernel_at(&g, &lift) {
                    Ok(ev) => {
                        results.insert("evaluation".into(), to_value(&ev));
                    }
                    Err(e) => {
                        errors.insert("evaluation".into(), error_value(&e));
                    }
                }
                weight_cokernel_at(&g, &lift, family.as_ref().unwrap_or_else(|| unreachable!())).map(|x| to_value(&x))
            }
            Computation::Poincare => {
                let f = family.as_ref().unwrap_or_else(|| unreachable!());
                if g.is_torus() && g.cochar_rank() == 1 {
                    Ok(json!({ "degree": int_json(&lift), "exists": poincare_bundle_exists(&lift[0], f) }))
                } else {
                    Err(Error::InvalidConfig("the Poincare criterion applies to the rank one torus T(1)".into()))
                }
            }
        };
        match out {
            Ok(v) => {
                if let Some(ws) = v.get("warnings").and_then(|w| w.as_array()) {
                    warnings.extend(ws.iter().filter_map(|w| w.as_str()).map(|w| format!("{}: {w}", c.key())));
                }
                if let Some(Value::Object(p)) = v.get("coker_wt") {
                    if p.get("kind").and_then(|k| k.as_str()) == Some("graded") {
                        warnings.push("gerbe: the weight cokernel is only determined up to extension".into());
                    }
                }
                results.insert(c.key().into(), v);
            }
            Err(e) => {
                if matches!(e, Error::HypothesisNotSatisfied { .. }) {
                    hypothesis_failure = true;
                } else {
                    input_failure = true;
                }
                errors.insert(c.key().into(), error_value(&e));
            }
        }
    }

    let exit_code = if input_failure {
        1
    } else if hypothesis_failure {
        2
    } else {
        0
    };
    let status = match exit_code {
        0 => "ok",
        2 => "hypothesis_failure",
        _ => "error",
    };
    let report = json!({
        "group": group_echo(&g, source),
        "pi1": to_value(cross.pi1.group()),
        "delta": to_value(&delta),
        "lift": int_json(&lift),
        "family": family.as_ref().map(to_value).unwrap_or(Value::Null),
        "computations": requested.iter().map(|c| c.key()).collect::<Vec<_>>(),
        "results": Value::Object(results),
        "errors": Value::Object(errors),
        "warnings": warnings,
        "status": status,
    });
    Ok(RunOutcome { report, exit_code })
}

/// JSON output: compact, with keys in sorted order.
pub fn render_json(report: &Value) -> String {
    serde_json::to_string(report).unwrap_or_default()
}

fn group_string(v: &Value) -> Option<String> {
    let o = v.as_object()?;
    if o.len() != 2 {
        return None;
    }
    let free = o.get("free_rank")?.as_u64()?;
    let torsion = o.get("torsion")?.as_array()?;
    let mut parts = Vec::new();
    if free > 0 {
        parts.push(if free == 1 { "Z".to_string() } else { format!("Z^{free}") });
    }
    for t in torsion {
        parts.push(format!("Z/{}", scalar(t)));
    }
    Some(if parts.is_empty() { "0".into() } else { parts.join(" + ") })
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && (!x.is_array() || is_flat(x))),
        Value::Object(_) => false,
        _ => true,
    }
}

fn render_text_into(out: &mut String, key: &str, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    if let Some(s) = group_string(v) {
        let _ = writeln!(out, "{pad}{key}: {s}");
        return;
    }
    match v {
        Value::Object(m) if m.is_empty() => {
            let _ = writeln!(out, "{pad}{key}: {{}}");
        }
        Value::Object(m) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, x) in m {
                render_text_into(out, k, x, indent + 1);
            }
        }
        Value::Array(_) if is_flat(v) => {
            let _ = writeln!(out, "{pad}{key}: {}", v);
        }
        Value::Array(a) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (i, x) in a.iter().enumerate() {
                render_text_into(out, &format!("[{i}]"), x, indent + 1);
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{key}: {}", scalar(other));
        }
    }
}

/// Text output: the JSON report laid out as an indented outline, with groups written as
/// direct sums of cyclic groups.
pub fn render_text(report: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(m) = report {
        for (k, v) in m {
            render_text_into(&mut out, k, v, 0);
        }
    }
    out
}

pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => render_json(report),
        Format::Text => render_text(report),
    }
}

/// The JSON value reported for a configuration that could not be run.
pub fn input_error_report(e: &CliError) -> Value {
    json!({ "status": "error", "errors": { "input": { "kind": "input", "message": e.to_string() } } })
}

/// Runs a batch of JSON lines concurrently. Blank lines are skipped; output order follows
/// input order. Returns one rendered line per configuration and the combined exit code.
pub fn run_batch(text: &str) -> (Vec<String>, i32) {
    let lines: Vec<(usize, &str)> = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()).collect();
    let outcomes: Vec<(String, i32)> = lines
        .par_iter()
        .map(|(i, line)| {
            let res = RunConfig::from_json_line(line).and_then(|cfg| run_report(&cfg));
            let (mut report, code) = match res {
                Ok(o) => (o.report, o.exit_code),
                Err(e) => (input_error_report(&e), e.exit_code()),
            };
            if let Value::Object(m) = &mut report {
                m.insert("line".into(), json!(i + 1));
            }
            (render_json(&report), code)
        })
        .collect();
    let code = if outcomes.iter().any(|(_, c)| *c == 1) {
        1
    } else if outcomes.iter().any(|(_, c)| *c == 2) {
        2
    } else {
        0
    };
    (outcomes.into_iter().map(|(s, _)| s).collect(), code)
}

/// Parses a delta or cocharacter given as `1,0`, `[1,0]` or an empty string.
pub fn parse_int_list(s: &str) -> Result<Vec<DeInt>, CliError> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
    if t.is_empty() {
        return Ok(vec![]);
    }
    t.split(',')
        .map(|x| BigInt::from_str(x.trim()).map(DeInt).map_err(|_| CliError::Input(format!("`{}` is not an integer", x.trim()))))
        .collect()
}

/// Parses a comma separated list of computations.
pub fn parse_computations(s: &str) -> Result<Vec<Computation>, CliError> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(Computation::from_str).collect()
}
