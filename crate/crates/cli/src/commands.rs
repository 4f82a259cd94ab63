use std::path::{Path, PathBuf};

use momentcone_core::linalg::{snf, IntMatrix, SmithDecomposition};
use momentcone_core::oracle::run_oracles_with;
use momentcone_core::{check_good, membership_check, validate, BigRational, ConeSpec, Error, Membership};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::exit;
use crate::format::{parse_json, read_cone, ParseError};
use crate::report::{self, analyze, Sections};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// What a command prints and the process exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn out(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn err(code: i32, stderr: String) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn parse_failure(e: ParseError) -> Outcome {
    Outcome::err(exit::PARSE, format!("error: {e}\n"))
}

fn internal_failure(e: Error) -> Outcome {
    Outcome::err(exit::ORACLE, format!("internal error: {e}\n"))
}

pub fn validate_cmd(path: &Path, format: OutputFormat) -> Outcome {
    let spec = match read_cone(path) {
        Ok(s) => s,
        Err(e) => return parse_failure(e),
    };
    let analysis = report::Analysis {
        validation: validate(&spec),
        reeb: None,
        goodness: None,
        homotopy: None,
        witnesses: None,
    };
    let code = if analysis.validation.ok() { exit::OK } else { exit::INVALID };
    let stdout = match format {
        OutputFormat::Json => {
            let full = analysis.to_json(Sections::default());
            let keep = ["schema", "name", "dim", "num_normals", "normals", "validation"];
            let trimmed: serde_json::Map<String, Value> = full
                .as_object()
                .expect("report is an object")
                .iter()
                .filter(|(k, _)| keep.contains(&k.as_str()))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect();
            render(&Value::Object(trimmed))
        }
        OutputFormat::Text => {
            let v = &analysis.validation;
            let mut s = format!("validation: {}\n", v.summary());
            if !v.normalized.is_empty() {
                let idx: Vec<String> = v.normalized.iter().map(|i| (i + 1).to_string()).collect();
                s.push_str(&format!("primitivized normals: {}\n", idx.join(", ")));
            }
            s
        }
    };
    Outcome::out(code, stdout)
}

pub fn analyze_spec(spec: &ConeSpec, format: OutputFormat, sections: Sections) -> Outcome {
    match analyze(spec, sections) {
        Ok(a) => {
            let stdout = match format {
                OutputFormat::Json => render(&a.to_json(sections)),
                OutputFormat::Text => a.to_text(sections),
            };
            Outcome::out(a.exit_code(), stdout)
        }
        Err(e) => internal_failure(e),
    }
}

pub fn analyze_cmd(path: &Path, format: OutputFormat, sections: Sections) -> Outcome {
    match read_cone(path) {
        Ok(spec) => analyze_spec(&spec, format, sections),
        Err(e) => parse_failure(e),
    }
}

fn invalid(report: &momentcone_core::ValidationReport) -> Outcome {
    Outcome::out(exit::INVALID, format!("validation: {}\n", report.summary()))
}

pub fn faces_cmd(path: &Path, format: OutputFormat) -> Outcome {
    let spec = match read_cone(path) {
        Ok(s) => s,
        Err(e) => return parse_failure(e),
    };
    let validation = validate(&spec);
    let Some(cone) = validation.cone() else {
        return invalid(&validation);
    };
    let stdout = match format {
        OutputFormat::Json => render(&report::lattice_json(cone)),
        OutputFormat::Text => report::lattice_text(cone),
    };
    Outcome::out(exit::OK, stdout)
}

/// Parses `"0,2,0,2"` or `"1/2 1/2 1 1"` into rationals.
pub fn parse_rationals(s: &str) -> Result<Vec<BigRational>, String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<BigRational>().map_err(|_| format!("not a rational number: {t:?}")))
        .collect()
}

pub fn witness_cmd(path: &Path, format: OutputFormat, check: Option<&str>) -> Outcome {
    let spec = match read_cone(path) {
        Ok(s) => s,
        Err(e) => return parse_failure(e),
    };
    let validation = validate(&spec);
    let Some(cone) = validation.cone() else {
        return invalid(&validation);
    };

    if let Some(values) = check {
        let m = match parse_rationals(values) {
            Ok(m) => m,
            Err(e) => return Outcome::err(exit::PARSE, format!("error: {e}\n")),
        };
        let membership = match membership_check(cone, &m) {
            Ok(x) => x,
            Err(e) => return internal_failure(e),
        };
        let stdout = match (&membership, format) {
            (Membership::Face { face, eta }, OutputFormat::Json) => render(&json!({
                "accepted": true,
                "face": face.active.to_one_based(),
                "eta": eta.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })),
            (Membership::Rejected(r), OutputFormat::Json) => render(&json!({
                "accepted": false,
                "reason": format!("{r:?}"),
            })),
            (Membership::Face { face, eta }, OutputFormat::Text) => {
                let eta: Vec<String> = eta.iter().map(ToString::to_string).collect();
                format!("accepted: face {} at eta = ({})\n", face.active, eta.join(","))
            }
            (Membership::Rejected(r), OutputFormat::Text) => format!("rejected: {r:?}\n"),
        };
        return Outcome::out(exit::OK, stdout);
    }

    match report::witnesses(cone) {
        Ok(ws) => {
            let stdout = match format {
                OutputFormat::Json => render(&Value::Array(ws.iter().map(report::witness_json).collect())),
                OutputFormat::Text => report::witnesses_text(&ws),
            };
            Outcome::out(exit::OK, stdout)
        }
        Err(e) => internal_failure(e),
    }
}

pub fn oracle_cmd(path: &Path, format: OutputFormat) -> Outcome {
    oracle_cmd_with(path, format, snf)
}

/// As [`oracle_cmd`] with a caller-supplied Smith form, for fault injection.
pub fn oracle_cmd_with<F>(path: &Path, format: OutputFormat, smith: F) -> Outcome
where
    F: Fn(&IntMatrix) -> SmithDecomposition,
{
    let spec = match read_cone(path) {
        Ok(s) => s,
        Err(e) => return parse_failure(e),
    };
    let validation = validate(&spec);
    let Some(cone) = validation.cone() else {
        return invalid(&validation);
    };
    let goodness = check_good(cone);
    if !goodness.good() {
        return Outcome::out(
            exit::NOT_GOOD,
            format!("not good: {} violation(s)\n", goodness.violations.len()),
        );
    }
    let report = match run_oracles_with(cone, smith) {
        Ok(r) => r,
        Err(e) => return internal_failure(e),
    };
    let code = if report.agree() { exit::OK } else { exit::ORACLE };
    let stdout = match format {
        OutputFormat::Json => render(&json!({
            "agree": report.agree(),
            "disagreements": report.disagreements,
        })),
        OutputFormat::Text if report.agree() => "all oracles agree\n".to_string(),
        OutputFormat::Text => {
            let mut s = String::from("oracle disagreement:\n");
            for d in &report.disagreements {
                s.push_str(&format!("  {d}\n"));
            }
            s
        }
    };
    Outcome::out(code, stdout)
}

enum Entry {
    Inline(String),
    File(PathBuf),
}

fn batch_record(index: usize, source: &str, entry: &Entry, sections: Sections) -> (i32, Value) {
    let spec = match entry {
        Entry::Inline(text) => parse_json(text),
        Entry::File(path) => read_cone(path),
    };
    let mut record = json!({ "line": index, "source": source });
    let obj = record.as_object_mut().expect("record is an object");
    let code = match spec {
        Err(e) => {
            obj.insert("error".into(), json!({ "kind": "parse", "message": e.to_string() }));
            exit::PARSE
        }
        Ok(spec) => match analyze(&spec, sections) {
            Ok(a) => {
                obj.insert("report".into(), a.to_json(sections));
                a.exit_code()
            }
            Err(e) => {
                obj.insert("error".into(), json!({ "kind": "internal", "message": e.to_string() }));
                exit::ORACLE
            }
        },
    };
    obj.insert("status".into(), json!(code));
    (code, record)
}

/// Evaluates every entry of a list file and prints one JSON record per line,
/// in input order. Blank lines and `#` comments are skipped; a line starting
/// with `{` is an inline JSON cone, anything else a path relative to the list
/// file. The exit code is 0 if every record has status 0, else the largest
/// record status.
pub fn batch_cmd(list: &Path, jobs: usize, sections: Sections) -> Outcome {
    let text = match std::fs::read_to_string(list) {
        Ok(t) => t,
        Err(e) => return Outcome::err(exit::PARSE, format!("error: cannot read {}: {e}\n", list.display())),
    };
    let base = list.parent().unwrap_or(Path::new("."));
    let entries: Vec<(usize, String, Entry)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| {
            let entry = if l.starts_with('{') {
                Entry::Inline(l.to_string())
            } else {
                Entry::File(base.join(l))
            };
            (i, l.to_string(), entry)
        })
        .collect();

    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(p) => p,
        Err(e) => return Outcome::err(exit::ORACLE, format!("error: cannot start worker pool: {e}\n")),
    };
    let results: Vec<(i32, Value)> = pool.install(|| {
        entries
            .par_iter()
            .map(|(i, source, entry)| batch_record(*i, source, entry, sections))
            .collect()
    });

    let mut stdout = String::new();
    let mut code = exit::OK;
    for (c, record) in &results {
        stdout.push_str(&serde_json::to_string(record).expect("records serialize"));
        stdout.push('\n');
        code = code.max(*c);
    }
    log::info!("batch: {} record(s), exit {code}", results.len());
    Outcome::out(code, stdout)
}
