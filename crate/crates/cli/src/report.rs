//! Turns parsed arguments into an exit code and rendered output.

use char2quad::{Error, FieldSpec, Poly};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::commands::{execute, Answer, CliError, Context};
use crate::grammar::parse_field;
use crate::{Cli, OutputMode, EXIT_BUDGET, EXIT_INTERNAL, EXIT_USAGE};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn command_name(cli: &Cli) -> String {
    let debug = format!("{:?}", cli.command);
    let variant = debug.split([' ', '{', '(']).next().unwrap_or_default();
    let mut name = String::new();
    for (i, ch) in variant.chars().enumerate() {
        if ch.is_uppercase() && i > 0 {
            name.push('-');
        }
        name.push(ch.to_ascii_lowercase());
    }
    name
}

fn field_json(field: FieldSpec) -> Value {
    let modulus = Poly::from_bits(FieldSpec::binary(), field.modulus() as u128);
    json!({ "q": field.order(), "modulus": modulus.to_string() })
}

fn request_json(cli: &Cli, field: FieldSpec, operands: Map<String, Value>) -> Value {
    json!({
        "command": command_name(cli),
        "field": field_json(field),
        "seed": cli.global.seed,
        "max_degree": cli.global.max_degree,
        "operands": operands,
    })
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(render_value).collect::<Vec<_>>().join(", ")),
        Value::Object(map) => {
            let parts: Vec<String> = map.iter().map(|(k, v)| format!("{k}: {}", render_value(v))).collect();
            format!("{{{}}}", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn render_text(answer: &Answer) -> String {
    let mut out = String::new();
    match &answer.answer {
        Value::Object(map) => {
            for (k, v) in map {
                out.push_str(&format!("{k}: {}\n", render_value(v)));
            }
        }
        // Scalar answers print bare so they can be consumed by scripts.
        scalar => {
            out.push_str(&render_value(scalar));
            out.push('\n');
            return out;
        }
    }
    if let Some(Value::Object(cert)) = &answer.certificate {
        out.push_str("certificate:\n");
        for (k, v) in cert {
            out.push_str(&format!("  {k}: {}\n", render_value(v)));
        }
    }
    out.push_str("verification:\n");
    for (k, v) in &answer.verification {
        out.push_str(&format!("  {k} = {}\n", render_value(v)));
    }
    out
}

fn render_json(request: Value, answer: &Answer) -> String {
    let mut report = Map::new();
    report.insert("request".into(), request);
    report.insert("answer".into(), answer.answer.clone());
    if let Some(cert) = &answer.certificate {
        report.insert("certificate".into(), cert.clone());
    }
    report.insert("verification".into(), Value::Object(answer.verification.clone()));
    let mut s = serde_json::to_string_pretty(&Value::Object(report)).expect("serializable");
    s.push('\n');
    s
}

fn failure(code: i32, message: String) -> Outcome {
    Outcome { code, stdout: String::new(), stderr: format!("error: {message}\n") }
}

/// Runs one request; the exit code and output are a pure function of `cli`.
pub fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    let field = match parse_field(g.field, g.modulus.as_deref()) {
        Ok(f) => f,
        Err(e) => return failure(EXIT_USAGE, format!("field: {e}")),
    };
    let mut ctx = Context { field, rng: ChaCha8Rng::seed_from_u64(g.seed), max_degree: g.max_degree };
    let answer = match execute(&cli.command, &mut ctx) {
        Ok(a) => a,
        Err(CliError::Library(e @ (Error::BudgetExhausted | Error::SamplingExhausted(_)))) => {
            let message = format!("{e} (max-degree {})", g.max_degree);
            return match g.output {
                OutputMode::Text => Outcome { code: EXIT_BUDGET, stdout: format!("budget exhausted: {message}\n"), stderr: String::new() },
                OutputMode::Json => {
                    let report = json!({
                        "request": request_json(cli, field, Map::new()),
                        "answer": Value::Null,
                        "error": message,
                    });
                    let mut s = serde_json::to_string_pretty(&report).expect("serializable");
                    s.push('\n');
                    Outcome { code: EXIT_BUDGET, stdout: s, stderr: String::new() }
                }
            };
        }
        Err(CliError::Library(e @ Error::Internal(_))) => return failure(EXIT_INTERNAL, e.to_string()),
        Err(e) => return failure(EXIT_USAGE, e.to_string()),
    };
    let stdout = match g.output {
        OutputMode::Text => render_text(&answer),
        OutputMode::Json => render_json(request_json(cli, field, answer.operands.clone()), &answer),
    };
    Outcome { code: answer.code, stdout, stderr: String::new() }
}
