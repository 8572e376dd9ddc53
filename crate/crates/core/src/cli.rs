//! Document formats and command implementations behind the `cond` binary.
//!
//! Commands return a [`CommandOutput`] instead of printing, so the binary
//! stays a thin argument parser and the exit-code contract is testable
//! in-process.
//!
//! Input is a JSON curve-pair document:
//!
//! ```json
//! { "version": 1, "label": "optional", "curve0": [[0, 0], [2, 2]], "curve1": [[0, 2], [0, 2], [4, -2]] }
//! ```

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bernstein::BernsteinPoly;
use crate::conditioning::{condition_report, kappa_1d, ConditionReport, Flag};
use crate::curve::BezierCurve;
use crate::error::Error as CurveError;
use crate::fixtures;
use crate::intersect::{find_intersections, IntersectConfig, IntersectionRecord, Intersections};
use crate::linalg::Vec2;
use crate::perturb::{convergence_sweep, validate_epsilons, DEFAULT_EPSILONS};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_NAME: &str = "cond";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NO_INTERSECTIONS: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

/// A pair of curves given by their control points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvePairDocument {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub curve0: Vec<[f64; 2]>,
    pub curve1: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `version`: unsupported schema version {0} (expected {SCHEMA_VERSION})")]
    UnsupportedVersion(u32),
    #[error("field `{field}`: {message}")]
    Field {
        field: &'static str,
        message: String,
    },
}

impl CurvePairDocument {
    pub fn new(label: Option<String>, b0: &BezierCurve, b1: &BezierCurve) -> Self {
        let pts = |c: &BezierCurve| c.control_points().map(<[f64; 2]>::from).collect();
        CurvePairDocument {
            version: SCHEMA_VERSION,
            label,
            curve0: pts(b0),
            curve1: pts(b1),
        }
    }

    /// Parses and validates a document.
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: CurvePairDocument = serde_json::from_str(text).map_err(syntax_error)?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn validate(&self) -> Result<(), DocumentError> {
        if self.version != SCHEMA_VERSION {
            return Err(DocumentError::UnsupportedVersion(self.version));
        }
        for (field, pts) in [("curve0", &self.curve0), ("curve1", &self.curve1)] {
            if pts.len() < 2 {
                return Err(DocumentError::Field {
                    field,
                    message: format!("needs at least 2 control points, got {}", pts.len()),
                });
            }
            to_curve(field, pts)?;
        }
        Ok(())
    }

    pub fn curves(&self) -> Result<(BezierCurve, BezierCurve), DocumentError> {
        Ok((
            to_curve("curve0", &self.curve0)?,
            to_curve("curve1", &self.curve1)?,
        ))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

fn to_curve(field: &'static str, pts: &[[f64; 2]]) -> Result<BezierCurve, DocumentError> {
    let pts: Vec<Vec2> = pts.iter().map(|&p| Vec2::from(p)).collect();
    BezierCurve::new(&pts).map_err(|e: CurveError| DocumentError::Field {
        field,
        message: e.to_string(),
    })
}

fn syntax_error(e: serde_json::Error) -> DocumentError {
    DocumentError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// `f64` that may be infinite or NaN. JSON has no such numbers, so
/// non-finite values are written as the strings `"inf"`, `"-inf"`, `"nan"`.
pub mod ext_float {
    use serde::de::{self, Deserializer, Visitor};
    use serde::Serializer;
    use std::fmt;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else if x.is_nan() {
            s.serialize_str("nan")
        } else if *x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    struct ExtVisitor;

    impl Visitor<'_> for ExtVisitor {
        type Value = f64;

        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("a number or one of \"inf\", \"-inf\", \"nan\"")
        }

        fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
            Ok(v)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
            match v {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(E::invalid_value(de::Unexpected::Str(other), &self)),
            }
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        d.deserialize_any(ExtVisitor)
    }
}

/// Solver settings echoed into every report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigEcho {
    pub tol: f64,
    pub max_depth: usize,
    pub max_iter: usize,
    pub dedup_radius: f64,
    pub transversality_floor: f64,
}

impl From<&IntersectConfig> for ConfigEcho {
    fn from(c: &IntersectConfig) -> Self {
        ConfigEcho {
            tol: c.tol,
            max_depth: c.max_depth,
            max_iter: c.max_iter,
            dedup_radius: c.dedup_radius,
            transversality_floor: c.transversality_floor,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportEntry {
    pub alpha: f64,
    pub beta: f64,
    pub point: [f64; 2],
    pub det_j: f64,
    pub transversal: bool,
    pub residual: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub v: Option<[f64; 2]>,
    pub w: Option<[f64; 2]>,
    #[serde(rename = "W")]
    pub weight_sum: f64,
    #[serde(with = "ext_float")]
    pub kappa: f64,
    #[serde(with = "ext_float")]
    pub kappa_abs: f64,
    #[serde(with = "ext_float")]
    pub kappa_higham: f64,
    pub flags: Vec<Flag>,
}

impl ReportEntry {
    pub fn new(record: &IntersectionRecord, report: &ConditionReport) -> Self {
        ReportEntry {
            alpha: record.alpha,
            beta: record.beta,
            point: record.point.into(),
            det_j: record.det_j,
            transversal: record.transversal,
            residual: record.residual,
            mu1: report.mu1,
            mu2: report.mu2,
            v: report.v.map(Into::into),
            w: report.w.map(Into::into),
            weight_sum: report.weight_sum,
            kappa: report.kappa,
            kappa_abs: report.kappa_abs,
            kappa_higham: report.kappa_higham,
            flags: report.flags.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub tool: String,
    pub tool_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub config: ConfigEcho,
    pub intersections: Vec<ReportEntry>,
    pub diagnostics: Vec<String>,
}

impl ReportDocument {
    pub fn build(
        label: Option<String>,
        b0: &BezierCurve,
        b1: &BezierCurve,
        config: &IntersectConfig,
        found: &Intersections,
    ) -> Result<Self, CurveError> {
        let intersections = found
            .records
            .iter()
            .map(|r| Ok(ReportEntry::new(r, &condition_report(b0, b1, r)?)))
            .collect::<Result<_, CurveError>>()?;
        Ok(ReportDocument {
            tool: TOOL_NAME.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            label,
            config: config.into(),
            intersections,
            diagnostics: found.diagnostics.iter().map(|d| d.to_string()).collect(),
        })
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(syntax_error)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Exit code dictated by the contents.
    pub fn exit_code(&self) -> i32 {
        if !self.diagnostics.is_empty() || self.intersections.iter().any(|e| !e.transversal) {
            EXIT_DEGENERATE
        } else if self.intersections.is_empty() {
            EXIT_NO_INTERSECTIONS
        } else {
            EXIT_OK
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValueListError {
    #[error("item {index} (`{item}`) is not a number")]
    NotANumber { index: usize, item: String },
    #[error("item {index} (`{item}`) is not finite")]
    NotFinite { index: usize, item: String },
}

/// Parses `v1,v2,...`. Surrounding whitespace is ignored and an empty or
/// all-blank string gives an empty list.
pub fn parse_value_list(text: &str) -> Result<Vec<f64>, ValueListError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .enumerate()
        .map(|(index, raw)| {
            let item = raw.trim();
            let v = f64::from_str(item).map_err(|_| ValueListError::NotANumber {
                index,
                item: item.to_string(),
            })?;
            if !v.is_finite() {
                return Err(ValueListError::NotFinite {
                    index,
                    item: item.to_string(),
                });
            }
            Ok(v)
        })
        .collect()
}

/// Built-in one-parameter families with closed-form conditioning.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Two crossing lines with every coefficient shifted by `D >= 0`.
    OffsetD,
    /// A line rotating onto `y = 1` as `r -> 0+`.
    CoincidenceR,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::OffsetD => "offset-d",
            Family::CoincidenceR => "coincidence-r",
        }
    }

    pub fn curves(self, value: f64) -> (BezierCurve, BezierCurve) {
        match self {
            Family::OffsetD => fixtures::offset_lines(value),
            Family::CoincidenceR => fixtures::coincidence_lines(value),
        }
    }

    pub fn expected_root(self) -> (f64, f64) {
        match self {
            Family::OffsetD => (0.5, 0.5),
            Family::CoincidenceR => (1.0, 1.0),
        }
    }

    pub fn closed_form(self, value: f64) -> f64 {
        match self {
            Family::OffsetD => 2f64.sqrt() * (2.0 * value + 1.0),
            Family::CoincidenceR => (4.0 / (value * value) + 4.0 / value + 2.0).sqrt(),
        }
    }

    fn check(self, value: f64) -> Result<(), String> {
        match self {
            Family::OffsetD if value < 0.0 => {
                Err(format!("offset-d values must be nonnegative, got {value}"))
            }
            Family::CoincidenceR if value <= 0.0 => Err(format!(
                "coincidence-r values must be positive, got {value}"
            )),
            _ => Ok(()),
        }
    }

    /// Runs the full pipeline on the family member and returns the
    /// condition number of the root closest to the expected one.
    pub fn measured_kappa(self, value: f64, config: &IntersectConfig) -> Result<f64, String> {
        let (b0, b1) = self.curves(value);
        let found = find_intersections(&b0, &b1, config).map_err(|e| e.to_string())?;
        let (ea, eb) = self.expected_root();
        let rec = found
            .records
            .iter()
            .min_by(|x, y| {
                let dx = (x.alpha - ea).hypot(x.beta - eb);
                let dy = (y.alpha - ea).hypot(y.beta - eb);
                dx.total_cmp(&dy)
            })
            .ok_or_else(|| format!("{} = {value}: no intersection found", self.name()))?;
        Ok(condition_report(&b0, &b1, rec)
            .map_err(|e| e.to_string())?
            .kappa)
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "offset-d" => Ok(Family::OffsetD),
            "coincidence-r" => Ok(Family::CoincidenceR),
            other => Err(format!(
                "unknown family `{other}` (expected offset-d or coincidence-r)"
            )),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What a command printed and the exit code it asks for.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommandOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl CommandOutput {
    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        stderr.push('\n');
        CommandOutput {
            stdout: String::new(),
            stderr,
            code,
        }
    }
}

/// Shortest representation that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

fn load(source: &str, text: &str) -> Result<(CurvePairDocument, BezierCurve, BezierCurve), String> {
    let doc = CurvePairDocument::parse(text).map_err(|e| format!("{source}: {e}"))?;
    let (b0, b1) = doc.curves().map_err(|e| format!("{source}: {e}"))?;
    Ok((doc, b0, b1))
}

/// `cond intersect`. `source` names the input in diagnostics.
pub fn cmd_intersect(
    source: &str,
    text: &str,
    config: &IntersectConfig,
    json: bool,
) -> CommandOutput {
    let (doc, b0, b1) = match load(source, text) {
        Ok(v) => v,
        Err(msg) => return CommandOutput::fail(EXIT_INPUT, msg),
    };
    let found = match find_intersections(&b0, &b1, config) {
        Ok(f) => f,
        Err(e) => return CommandOutput::fail(EXIT_INPUT, format!("{source}: {e}")),
    };
    let report = match ReportDocument::build(doc.label.clone(), &b0, &b1, config, &found) {
        Ok(r) => r,
        Err(e) => return CommandOutput::fail(EXIT_INPUT, format!("{source}: {e}")),
    };
    let stdout = if json {
        let mut s = report.to_json();
        s.push('\n');
        s
    } else {
        render_report(&report)
    };
    let stderr = report
        .diagnostics
        .iter()
        .map(|d| format!("warning: {d}\n"))
        .collect();
    CommandOutput {
        stdout,
        stderr,
        code: report.exit_code(),
    }
}

fn render_report(report: &ReportDocument) -> String {
    let mut out = String::new();
    if let Some(label) = &report.label {
        let _ = writeln!(out, "# {label}");
    }
    let _ = writeln!(out, "intersections: {}", report.intersections.len());
    for (i, e) in report.intersections.iter().enumerate() {
        let flags = if e.flags.is_empty() {
            "-".to_string()
        } else {
            e.flags
                .iter()
                .map(|f| match f {
                    Flag::NonTransversal => "NON_TRANSVERSAL",
                    Flag::ZeroRootNorm => "ZERO_ROOT_NORM",
                })
                .collect::<Vec<_>>()
                .join(",")
        };
        let _ = writeln!(
            out,
            "[{i}] alpha={} beta={} point=({}, {}) det_j={} transversal={}",
            fmt_f64(e.alpha),
            fmt_f64(e.beta),
            fmt_f64(e.point[0]),
            fmt_f64(e.point[1]),
            fmt_f64(e.det_j),
            e.transversal
        );
        let _ = writeln!(
            out,
            "    mu1={} mu2={} W={} kappa={} kappa_abs={} kappa_higham={} flags={flags}",
            fmt_f64(e.mu1),
            fmt_f64(e.mu2),
            fmt_f64(e.weight_sum),
            fmt_f64(e.kappa),
            fmt_f64(e.kappa_abs),
            fmt_f64(e.kappa_higham),
        );
    }
    for d in &report.diagnostics {
        let _ = writeln!(out, "diagnostic: {d}");
    }
    out
}

/// `cond family`.
pub fn cmd_family(family: &str, values: &str, config: &IntersectConfig) -> CommandOutput {
    let family = match Family::from_str(family) {
        Ok(f) => f,
        Err(msg) => return CommandOutput::fail(EXIT_INPUT, msg),
    };
    let values = match parse_value_list(values) {
        Ok(v) => v,
        Err(e) => return CommandOutput::fail(EXIT_INPUT, format!("--values: {e}")),
    };
    let mut out = String::from("parameter,kappa_measured,kappa_closed_form,relative_difference\n");
    for value in values {
        if let Err(msg) = family.check(value) {
            return CommandOutput::fail(EXIT_INPUT, msg);
        }
        let measured = match family.measured_kappa(value, config) {
            Ok(k) => k,
            Err(msg) => return CommandOutput::fail(EXIT_INPUT, msg),
        };
        let closed = family.closed_form(value);
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(value),
            fmt_f64(measured),
            fmt_f64(closed),
            fmt_f64(((measured - closed) / closed).abs())
        );
    }
    CommandOutput {
        stdout: out,
        stderr: String::new(),
        code: EXIT_OK,
    }
}

/// `cond perturb`. An empty `eps` string selects the default sweep.
pub fn cmd_perturb(source: &str, text: &str, eps: &str, config: &IntersectConfig) -> CommandOutput {
    let eps = match parse_value_list(eps) {
        Ok(v) if v.is_empty() => DEFAULT_EPSILONS.to_vec(),
        Ok(v) => v,
        Err(e) => return CommandOutput::fail(EXIT_INPUT, format!("--eps: {e}")),
    };
    if let Err(e) = validate_epsilons(&eps) {
        return CommandOutput::fail(EXIT_INPUT, format!("--eps: {e}"));
    }
    let (_, b0, b1) = match load(source, text) {
        Ok(v) => v,
        Err(msg) => return CommandOutput::fail(EXIT_INPUT, msg),
    };
    let found = match find_intersections(&b0, &b1, config) {
        Ok(f) => f,
        Err(e) => return CommandOutput::fail(EXIT_INPUT, format!("{source}: {e}")),
    };
    if found.records.is_empty() {
        return CommandOutput::fail(EXIT_NO_INTERSECTIONS, format!("{source}: no intersections"));
    }
    if found.transversal().next().is_none() {
        return CommandOutput::fail(
            EXIT_DEGENERATE,
            format!(
                "{source}: condition number infinite for non-transversal intersections; \
                 nothing to perturb"
            ),
        );
    }

    let mut stdout = String::from("intersection,epsilon,sign_pattern,ratio,kappa,relative_gap\n");
    let mut stderr = String::new();
    for (index, rec) in found.records.iter().enumerate() {
        if !rec.transversal {
            let _ = writeln!(
                stderr,
                "warning: intersection {index} is non-transversal; skipped"
            );
            continue;
        }
        let kappa = match condition_report(&b0, &b1, rec) {
            Ok(r) => r.kappa,
            Err(e) => return CommandOutput::fail(EXIT_INPUT, format!("{source}: {e}")),
        };
        let rows = match convergence_sweep(&b0, &b1, rec, &eps) {
            Ok(rows) => rows,
            Err(e) => {
                let _ = writeln!(stderr, "warning: intersection {index}: {e}");
                continue;
            }
        };
        for row in rows {
            if row.unreliable {
                let _ = writeln!(
                    stderr,
                    "warning: epsilon {} is below rounding-noise level; ratios unreliable",
                    fmt_f64(row.epsilon)
                );
            }
            for trial in &row.trials {
                let (ratio, gap) = if trial.converged {
                    (fmt_f64(trial.ratio), fmt_f64((trial.ratio - kappa) / kappa))
                } else {
                    let _ = writeln!(
                        stderr,
                        "warning: intersection {index}, epsilon {}, pattern {}: \
                         perturbed Newton did not converge; excluded",
                        fmt_f64(trial.epsilon),
                        trial.sign_pattern
                    );
                    (String::new(), String::new())
                };
                let _ = writeln!(
                    stdout,
                    "{index},{},{},{ratio},{},{gap}",
                    fmt_f64(trial.epsilon),
                    trial.sign_pattern,
                    fmt_f64(kappa)
                );
            }
        }
    }
    CommandOutput {
        stdout,
        stderr,
        code: EXIT_OK,
    }
}

/// One checked quantity in `cond examples`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExampleRow {
    pub scenario: &'static str,
    pub quantity: String,
    pub expected_label: String,
    pub expected: f64,
    pub computed: f64,
    pub rel_tol: f64,
}

impl ExampleRow {
    pub fn passed(&self) -> bool {
        let scale = self.expected.abs().max(f64::MIN_POSITIVE);
        ((self.computed - self.expected) / scale).abs() <= self.rel_tol
    }
}

fn report_at_expected(
    b0: &BezierCurve,
    b1: &BezierCurve,
    expected: (f64, f64),
) -> Result<ConditionReport, String> {
    let found =
        find_intersections(b0, b1, &IntersectConfig::default()).map_err(|e| e.to_string())?;
    let rec = found
        .records
        .iter()
        .find(|r| (r.alpha - expected.0).hypot(r.beta - expected.1) < 1e-9)
        .ok_or("expected intersection not found")?;
    condition_report(b0, b1, rec).map_err(|e| e.to_string())
}

/// Computes every row of the worked-example table.
pub fn example_rows() -> Result<Vec<ExampleRow>, String> {
    let mut rows = Vec::new();
    let row = |scenario, quantity: &str, label: &str, expected, computed, rel_tol| ExampleRow {
        scenario,
        quantity: quantity.to_string(),
        expected_label: label.to_string(),
        expected,
        computed,
        rel_tol,
    };

    let (b0, b1) = fixtures::transversal_line_quadratic();
    let r = report_at_expected(&b0, &b1, (0.5, 0.5))?;
    let (v, w) = (r.v.ok_or("singular")?, r.w.ok_or("singular")?);
    let s = "transversal line/quadratic";
    rows.push(row(
        s,
        "kappa",
        "√202/8",
        202f64.sqrt() / 8.0,
        r.kappa,
        1e-12,
    ));
    rows.push(row(s, "mu1", "2", 2.0, r.mu1, 1e-14));
    rows.push(row(s, "mu2", "3", 3.0, r.mu2, 1e-14));
    rows.push(row(s, "v·v", "5/64", 5.0 / 64.0, v.dot(v), 1e-14));
    rows.push(row(s, "v·w", "3/64", 3.0 / 64.0, v.dot(w), 1e-14));
    rows.push(row(s, "w·w", "5/64", 5.0 / 64.0, w.dot(w), 1e-14));

    // p(s) = (s - 3/10)(s + 1/2): p̃(3/10) = 0.189, p'(3/10) = 0.8.
    let p = BernsteinPoly::new(vec![-0.15, -0.05, 1.05]).map_err(|e| e.to_string())?;
    let (c0, c1) = fixtures::collapse_embedding(&p);
    let r = report_at_expected(&c0, &c1, (0.3, 0.0))?;
    let scalar = kappa_1d(&p, r.alpha).map_err(|e| e.to_string())?.value;
    let s = "1-D collapse";
    rows.push(row(
        s,
        "kappa(α, 0)",
        "p̃(α)/|α p′(α)|",
        scalar,
        r.kappa,
        1e-12,
    ));
    rows.push(row(s, "p̃(α)/|α p′(α)|", "0.7875", 0.7875, scalar, 1e-12));

    let s = "offset lines";
    for d in [0.0, 1.0, 10.0, 100.0, 1e4] {
        let k = Family::OffsetD.measured_kappa(d, &IntersectConfig::default())?;
        rows.push(row(
            s,
            &format!("kappa(D={})", fmt_f64(d)),
            "√2(2D+1)",
            Family::OffsetD.closed_form(d),
            k,
            1e-10,
        ));
    }

    let s = "lines nearing coincidence";
    for r in [1.0, 0.1, 0.01, 1e-4] {
        let k = Family::CoincidenceR.measured_kappa(r, &IntersectConfig::default())?;
        rows.push(row(
            s,
            &format!("kappa(r={})", fmt_f64(r)),
            "sqrt(4/r²+4/r+2)",
            Family::CoincidenceR.closed_form(r),
            k,
            1e-9,
        ));
    }
    Ok(rows)
}

/// `cond examples`.
pub fn cmd_examples() -> CommandOutput {
    let rows = match example_rows() {
        Ok(r) => r,
        Err(msg) => return CommandOutput::fail(EXIT_INPUT, format!("internal failure: {msg}")),
    };
    let mut out = String::new();
    let mut all_pass = true;
    let mut current = "";
    for r in &rows {
        if r.scenario != current {
            current = r.scenario;
            let _ = writeln!(out, "== {current}");
        }
        let pass = r.passed();
        all_pass &= pass;
        let _ = writeln!(
            out,
            "  {:<22} expected {} = {:<22} computed {:<22} {}",
            r.quantity,
            r.expected_label,
            fmt_f64(r.expected),
            fmt_f64(r.computed),
            if pass { "PASS" } else { "FAIL" }
        );
    }
    CommandOutput {
        stdout: out,
        stderr: String::new(),
        code: if all_pass { EXIT_OK } else { EXIT_INPUT },
    }
}
