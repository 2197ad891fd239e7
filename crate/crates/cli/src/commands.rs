//! One function per subcommand. Each returns the answer together with
//! residuals recomputed from the answer alone.

use char2quad::artin_schreier::{is_minimal, locally_represents, minimize_param, norm_pairing, splits_locally, symbol};
use char2quad::binary_norm::{solve_binary, NormEquation};
use char2quad::place::places_dividing;
use char2quad::quaternary::{
    is_isotropic, is_zero_vector, solve_quaternary, AnisotropyCertificate, QuaternaryForm, QuaternaryOutcome,
    SolveOptions,
};
use char2quad::quaternion::{
    construct_ramified, embed_subfield, is_split, quat_mul, ramified_places, Quaternion, QuaternionAlgebra, SplitTest,
};
use char2quad::{Error, FieldSpec, Place, RatFunc};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use thiserror::Error as ThisError;

use crate::grammar::{parse_place, parse_places, parse_ratfunc, ParseError};
use crate::{Command, EXIT_ANSWER, EXIT_CERTIFICATE};

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("parse error in --{flag}: {source}")]
    Parse { flag: String, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Library(#[from] Error),
}

/// Result of a command before rendering.
#[derive(Debug, Clone)]
pub struct Answer {
    pub code: i32,
    pub operands: Map<String, Value>,
    pub answer: Value,
    pub certificate: Option<Value>,
    pub verification: Map<String, Value>,
}

impl Answer {
    fn new(operands: Map<String, Value>) -> Self {
        Self { code: EXIT_ANSWER, operands, answer: Value::Null, certificate: None, verification: Map::new() }
    }

    fn check(&mut self, expr: &str, value: impl Into<Value>) {
        let value = match value.into() {
            Value::Number(n) => Value::String(n.to_string()),
            other => other,
        };
        self.verification.insert(expr.into(), value);
    }
}

pub struct Context {
    pub field: FieldSpec,
    pub rng: ChaCha8Rng,
    pub max_degree: usize,
}

struct Operands {
    field: FieldSpec,
    echo: Map<String, Value>,
}

impl Operands {
    fn new(field: FieldSpec) -> Self {
        Self { field, echo: Map::new() }
    }

    fn ratfunc(&mut self, flag: &str, text: &str) -> Result<RatFunc, CliError> {
        let value = parse_ratfunc(self.field, text).map_err(|source| CliError::Parse { flag: flag.into(), source })?;
        self.echo.insert(flag.into(), s(&value));
        Ok(value)
    }

    fn nonzero(&mut self, flag: &str, text: &str) -> Result<RatFunc, CliError> {
        let value = self.ratfunc(flag, text)?;
        if value.is_zero() {
            return Err(CliError::Usage(format!("--{flag} must be nonzero")));
        }
        Ok(value)
    }
}

fn s(x: &impl ToString) -> Value {
    Value::String(x.to_string())
}

fn bit(b: bool) -> Value {
    json!(u8::from(b))
}

fn vector(v: &[RatFunc]) -> Value {
    Value::Array(v.iter().map(s).collect())
}

fn places_json(places: &[Place]) -> Value {
    Value::Array(places.iter().map(s).collect())
}

fn options(ctx: &Context) -> SolveOptions {
    SolveOptions { degree_budget: ctx.max_degree, ..SolveOptions::default() }
}

pub fn execute(command: &Command, ctx: &mut Context) -> Result<Answer, CliError> {
    match command {
        Command::SolveQuaternary { a1, a2, a3, a4, gram } => {
            solve_quaternary_cmd(ctx, [a1, a2, a3, a4].map(|x| x.as_deref()), gram.as_deref())
        }
        Command::SolveBinary { a1, a2, c } => solve_binary_cmd(ctx, a1, a2, c),
        Command::Symbol { a, place } => symbol_cmd(ctx, a, place),
        Command::Minimize { a } => minimize_cmd(ctx, a),
        Command::IsSplit { a, b } => is_split_cmd(ctx, a, b),
        Command::RamifiedPlaces { a, b } => ramified_places_cmd(ctx, a, b),
        Command::ConstructRamified { places } => construct_ramified_cmd(ctx, places),
        Command::EmbedSubfield { a, b, c } => embed_subfield_cmd(ctx, a, b, c),
    }
}

fn certificate_json(cert: &AnisotropyCertificate) -> Value {
    let a = &cert.coefficients;
    let place = &cert.place;
    json!({
        "place": s(place),
        "coefficients": vector(a),
        "symbols": {
            "a2 splits": bit(splits_locally(&a[1], place)),
            "a2+a4 splits": bit(splits_locally(&(&a[1] + &a[3]), place)),
            "[a2, a1/a3)": norm_pairing(&a[1], &(&a[0] / &a[2]), place),
        },
    })
}

fn solve_quaternary_cmd(ctx: &mut Context, a: [Option<&str>; 4], gram: Option<&str>) -> Result<Answer, CliError> {
    let mut ops = Operands::new(ctx.field);
    let form = match gram {
        Some(text) => {
            let parts: Vec<&str> = text.split(',').collect();
            if parts.len() != 16 {
                return Err(CliError::Usage(format!("--gram needs 16 entries, got {}", parts.len())));
            }
            let mut entries = Vec::with_capacity(16);
            for part in &parts {
                entries.push(parse_ratfunc(ctx.field, part).map_err(|source| CliError::Parse { flag: "gram".into(), source })?);
            }
            ops.echo.insert("gram".into(), vector(&entries));
            let g: [[RatFunc; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| entries[4 * i + j].clone()));
            QuaternaryForm::new(g)?
        }
        None => {
            let mut coeffs = Vec::new();
            for (n, text) in a.iter().enumerate() {
                let text = text.ok_or_else(|| CliError::Usage("missing coefficient".into()))?;
                coeffs.push(ops.nonzero(&format!("a{}", n + 1), text)?);
            }
            let coeffs: [RatFunc; 4] = coeffs.try_into().expect("four coefficients");
            QuaternaryForm::from_coefficients(&coeffs)?
        }
    };
    let mut out = Answer::new(ops.echo);
    let opts = options(ctx);
    match solve_quaternary(&form, &mut ctx.rng, opts)? {
        QuaternaryOutcome::Isotropic { zero, common_value } => {
            let cv = common_value.map(|cv| json!({ "c": s(&cv.c), "h": s(&cv.h) }));
            out.answer = json!({ "zero": vector(&zero), "common_value": cv.unwrap_or(Value::Null) });
            out.check("Q(v)", s(&form.eval(&zero)));
            out.check("[v = 0]", bit(is_zero_vector(&zero)));
        }
        QuaternaryOutcome::Anisotropic(cert) => {
            out.code = EXIT_CERTIFICATE;
            out.answer = json!({ "isotropic": false });
            out.certificate = Some(certificate_json(&cert));
            out.check("[certificate fails]", bit(!cert.verify()));
        }
    }
    Ok(out)
}

/// Places where `c/scale` can fail to be a local norm for `X² + X + param`.
fn norm_candidates(param: &RatFunc, ratio: &RatFunc) -> Vec<Place> {
    let mut places = places_dividing(&(&(ratio.num() * ratio.den()) * param.den()));
    places.push(Place::Infinite);
    places
}

fn solve_binary_cmd(ctx: &mut Context, a1: &str, a2: &str, c: &str) -> Result<Answer, CliError> {
    let mut ops = Operands::new(ctx.field);
    let (scale, param, target) = (ops.nonzero("a1", a1)?, ops.ratfunc("a2", a2)?, ops.ratfunc("c", c)?);
    let mut out = Answer::new(ops.echo);
    if !target.is_zero() {
        let ratio = &target / &scale;
        let obstruction = norm_candidates(&param, &ratio)
            .into_iter()
            .find(|p| !locally_represents(&scale, &param, &target, p));
        if let Some(place) = obstruction {
            let pairing = norm_pairing(&param, &ratio, &place);
            out.code = EXIT_CERTIFICATE;
            out.answer = json!({ "solvable": false });
            out.certificate = Some(json!({ "place": s(&place), "symbols": { "[a2, c/a1)": pairing } }));
            out.check("[a2, c/a1) - 1", pairing ^ 1);
            return Ok(out);
        }
    }
    let eq = NormEquation::new(scale.clone(), param.clone(), target.clone())?;
    let (x, y) = solve_binary(&eq, &mut ctx.rng, ctx.max_degree)?;
    let value = &scale * &(&(&x.square() + &(&x * &y)) + &(&param * &y.square()));
    out.answer = json!({ "x": s(&x), "y": s(&y) });
    out.check("a1*(x^2+x*y+a2*y^2) - c", s(&(&value - &target)));
    Ok(out)
}

fn symbol_cmd(ctx: &mut Context, a: &str, place: &str) -> Result<Answer, CliError> {
    let mut ops = Operands::new(ctx.field);
    let a = ops.ratfunc("a", a)?;
    let place = parse_place(ctx.field, place).map_err(|source| CliError::Parse { flag: "place".into(), source })?;
    ops.echo.insert("place".into(), s(&place));
    let mut out = Answer::new(ops.echo);
    let value = symbol(&a, &place)?;
    let uniformizer = match &place {
        Place::Finite(f) => RatFunc::from_poly(f.clone()),
        Place::Infinite => RatFunc::t_pow(ctx.field, -1),
    };
    out.answer = json!(value);
    out.check("symbol - Tr Res(a dlog(pi))", value ^ norm_pairing(&a, &uniformizer, &place));
    Ok(out)
}

fn minimize_cmd(ctx: &mut Context, a: &str) -> Result<Answer, CliError> {
    let mut ops = Operands::new(ctx.field);
    let a = ops.ratfunc("a", a)?;
    let mut out = Answer::new(ops.echo);
    let (reduced, h) = minimize_param(&a);
    out.answer = json!({ "minimal": s(&reduced), "h": s(&h) });
    out.check("a - (minimal + h^2 + h)", s(&(&a - &(&reduced + &(&h.square() + &h)))));
    out.check("[not minimal]", bit(!is_minimal(&reduced)));
    Ok(out)
}

fn algebra(ops: &mut Operands, a: &str, b: &str) -> Result<QuaternionAlgebra, CliError> {
    let (a, b) = (ops.ratfunc("a", a)?, ops.nonzero("b", b)?);
    Ok(QuaternionAlgebra::new(a, b)?)
}

fn ramification_checks(out: &mut Answer, alg: &QuaternionAlgebra, ramified: &[Place]) {
    for p in ramified {
        out.check(&format!("[a, b)_{p} - 1"), norm_pairing(alg.a(), alg.b(), p) ^ 1);
    }
    out.check("#ramified mod 2", ramified.len() % 2);
}

fn is_split_cmd(ctx: &mut Context, a: &str, b: &str) -> Result<Answer, CliError> {
    let mut ops = Operands::new(ctx.field);
    let alg = algebra(&mut ops, a, b)?;
    let mut out = Answer::new(ops.echo);
    match is_split(&alg, &mut ctx.rng, ctx.max_degree)? {
        SplitTest::Split { x, y, zero_divisor } => {
            out.answer = json!({
                "split": true,
                "x": s(&x),
                "y": s(&y),
                "zero_divisor": vector(&zero_divisor.coords),
            });
            let norm = alg.b() * &(&(&x.square() + &(&x * &y)) + &(alg.a() * &y.square()));
            out.check("b*(x^2+x*y+a*y^2) - 1", s(&(&norm - &RatFunc::one(ctx.field))));
            out.check("nrd(z)", s(&zero_divisor.nrd()));
            out.check("[z = 0]", bit(zero_divisor.is_zero()));
        }
        SplitTest::Division { ramified } => {
            out.answer = json!({ "split": false, "ramified": places_json(&ramified) });
            ramification_checks(&mut out, &alg, &ramified);
        }
    }
    Ok(out)
}

fn ramified_places_cmd(ctx: &mut Context, a: &str, b: &str) -> Result<Answer, CliError> {
    let mut ops = Operands::new(ctx.field);
    let alg = algebra(&mut ops, a, b)?;
    let mut out = Answer::new(ops.echo);
    let ramified = ramified_places(&alg);
    out.answer = places_json(&ramified);
    ramification_checks(&mut out, &alg, &ramified);
    Ok(out)
}

fn construct_ramified_cmd(ctx: &mut Context, places: &str) -> Result<Answer, CliError> {
    let wanted = parse_places(ctx.field, places).map_err(|source| CliError::Parse { flag: "places".into(), source })?;
    let mut echo = Map::new();
    echo.insert("places".into(), places_json(&wanted));
    let mut out = Answer::new(echo);
    let alg = match construct_ramified(&wanted, ctx.field, &mut ctx.rng) {
        Err(Error::OddPlaceCount) => {
            out.code = EXIT_CERTIFICATE;
            out.answer = json!({ "exists": false });
            out.certificate = Some(json!({ "reason": "ramification sets have even cardinality", "count": wanted.len() }));
            out.check("#places mod 2 - 1", (wanted.len() + 1) % 2);
            return Ok(out);
        }
        other => other?,
    };
    let ramified = ramified_places(&alg);
    let mut sorted = wanted.clone();
    sorted.sort();
    let mismatched = sorted.iter().filter(|p| !ramified.contains(p)).count()
        + ramified.iter().filter(|p| !sorted.contains(p)).count();
    out.answer = json!({ "a": s(alg.a()), "b": s(alg.b()), "ramified": places_json(&ramified) });
    out.check("#(ramified xor places)", mismatched);
    Ok(out)
}

fn embed_subfield_cmd(ctx: &mut Context, a: &str, b: &str, c: &str) -> Result<Answer, CliError> {
    let mut ops = Operands::new(ctx.field);
    let alg = algebra(&mut ops, a, b)?;
    let c = ops.ratfunc("c", c)?;
    let mut out = Answer::new(ops.echo);
    let opts = options(ctx);
    let u = match embed_subfield(&alg, &c, &mut ctx.rng, opts) {
        Err(Error::Unsatisfiable(_)) => {
            let coeffs = [RatFunc::one(ctx.field), alg.a() + &c, alg.b().clone(), alg.a().clone()];
            let Err(cert) = is_isotropic(&QuaternaryForm::from_coefficients(&coeffs)?)? else {
                return Err(Error::Internal("embedding refused for an isotropic form").into());
            };
            out.code = EXIT_CERTIFICATE;
            out.answer = json!({ "embeds": false });
            out.certificate = Some(certificate_json(&cert));
            out.check("[certificate fails]", bit(!cert.verify()));
            return Ok(out);
        }
        other => other?,
    };
    out.answer = json!({ "u": vector(&u.coords) });
    let residual = quat_mul(&u, &u)?.add(&u)?.add(&alg.scalar(c.clone()))?;
    out.check("u^2+u-c", quaternion_value(&residual));
    out.check("trd(u) - 1", s(&(&u.trd() - &RatFunc::one(ctx.field))));
    Ok(out)
}

fn quaternion_value(q: &Quaternion) -> Value {
    if q.is_zero() {
        s(&0)
    } else {
        vector(&q.coords)
    }
}
