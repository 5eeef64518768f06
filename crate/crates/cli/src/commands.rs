use std::fmt::Write;
use std::fs;
use std::path::Path;

use maclane_core::json::{
    chain_from_json, equiv_to_json, factorization_to_json, qpoly_value, rational_value, residual_to_json,
    type_from_json, type_to_json,
};
use maclane_core::render::{factored, render_certificate, render_report, render_trace};
use maclane_core::{certify, equivalent, factorize, parse_poly, ri, Error, MacLaneChain, QPoly, Type, Valued};
use serde_json::{json, Value};

use crate::{Command, PolyInput};

pub struct Output {
    pub text: String,
    pub status: u8,
}

#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub status: u8,
}

const PARSE: u8 = 2;
const PRECONDITION: u8 = 3;
const CERTIFICATION: u8 = 1;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NotPrime(_)
            | Error::Parse { .. }
            | Error::Json(_)
            | Error::InvalidChain(_)
            | Error::InvalidType(_)
            | Error::InvalidElement(_)
            | Error::NotKeyPolynomial(_)
            | Error::ImproperStep
            | Error::NonPositiveSlope(_)
            | Error::DegreeNotMultiple { .. }
            | Error::Reducible(_)
            | Error::ModulusIsY
            | Error::LevelOutOfRange(_) => PARSE,
            _ => PRECONDITION,
        };
        Failure { message: e.to_string(), status }
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn config_error(message: String) -> Failure {
    Failure { message, status: PARSE }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| config_error(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value> {
    serde_json::from_str(&read(path)?).map_err(|e| config_error(format!("{}: {e}", path.display())))
}

fn read_poly(input: &PolyInput) -> Result<QPoly> {
    let text = match (&input.poly, &input.file) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => read(path)?,
        (None, None) => return Err(config_error("no polynomial given".into())),
    };
    let t = text.trim();
    if t.starts_with('[') {
        let v: Value = serde_json::from_str(t).map_err(|e| config_error(e.to_string()))?;
        return Ok(maclane_core::json::parse_qpoly(&v)?);
    }
    Ok(parse_poly(t, 'x')?)
}

fn in_file(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure { message: format!("{}: {e}", path.display()), ..Failure::from(e.clone()) }
}

fn read_type(path: &Path) -> Result<Type> {
    type_from_json(&read_json(path)?).map_err(in_file(path))
}

/// A chain file, or the chain of a type file.
fn read_chain(path: &Path) -> Result<MacLaneChain> {
    chain_from_json(&read_json(path)?).map_err(in_file(path))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn run(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Factor { prime, input, json, trace, precision_floor } => {
            factor(*prime, input, *json, *trace, *precision_floor)
        }
        Command::Equiv { a, b, json } => equiv(a, b, *json),
        Command::Eval { file, poly, level, residual, json } => eval(file, poly, level, *residual, *json),
        Command::Optimize { file, json } => optimize(file, *json),
        Command::Representative { file, json } => representative(file, *json),
    }
}

fn factor(p: u64, input: &PolyInput, as_json: bool, trace: bool, floor: Option<i64>) -> Result<Output> {
    maclane_core::arith::rational::check_prime(p)?;
    let f = read_poly(input)?;
    let out = factorize(&f, p)?;
    // The computed floor is reported; only an explicit one is enforced beyond v >= 1.
    let enforced = floor.unwrap_or(1);
    let report = certify(&f, p, &out.certificates, enforced)?;
    let status = if report.all_passed() { 0 } else { CERTIFICATION };
    let text = if as_json {
        let mut v = factorization_to_json(&f, p, &out);
        let checks: Vec<Value> =
            report.checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect();
        let pv = match report.product_valuation {
            Valued::Finite(x) => json!(x),
            Valued::Inf => json!("inf"),
        };
        v["certify"] = json!({
            "passed": report.all_passed(),
            "enforced_floor": enforced,
            "product_valuation": pv,
            "checks": checks,
        });
        if trace {
            v["trace"] = Value::Array(render_trace(&out.trace).lines().map(|l| Value::String(l.into())).collect());
        }
        pretty(&v)
    } else {
        let mut s = String::new();
        if trace {
            s.push_str(&render_trace(&out.trace));
            s.push('\n');
        }
        let _ = writeln!(s, "f = {f}, p = {p}: {} factor(s)", out.certificates.len());
        for (k, c) in out.certificates.iter().enumerate() {
            s.push_str(&render_certificate(k, c));
        }
        let _ = writeln!(
            s,
            "certify: {} (v(f - prod) = {}, computed floor {}, enforced {enforced})",
            if report.all_passed() { "passed" } else { "FAILED" },
            report.product_valuation,
            out.precision_floor
        );
        s.push_str(&render_report(&report));
        s
    };
    Ok(Output { text, status })
}

fn equiv(a: &Path, b: &Path, as_json: bool) -> Result<Output> {
    let (ta, tb) = (read_type(a)?, read_type(b)?);
    if ta.p() != tb.p() {
        return Err(Failure { message: format!("types over different primes ({} and {})", ta.p(), tb.p()), status: PRECONDITION });
    }
    let w = equivalent(&ta, &tb)?;
    let (oa, ob) = (ta.optimize()?, tb.optimize()?);
    let text = if as_json {
        let mut v = equiv_to_json(&w);
        v["optimized"] = json!([type_to_json(&oa), type_to_json(&ob)]);
        pretty(&v)
    } else {
        let mut s = String::new();
        match &w.verdict {
            Ok(()) => s.push_str("equivalent\n"),
            Err(e) => {
                let _ = writeln!(s, "not equivalent: {e}");
            }
        }
        for (i, eta) in w.etas.iter().enumerate() {
            let _ = writeln!(s, "eta_{i} = {}", oa.tower().field(i).fmt_elem(eta));
        }
        let _ = writeln!(s, "optimized: {oa}");
        let _ = writeln!(s, "optimized: {ob}");
        s
    };
    Ok(Output { text, status: 0 })
}

fn eval(file: &Path, poly: &str, levels: &[usize], residual: bool, as_json: bool) -> Result<Output> {
    let chain = read_chain(file)?;
    let g = parse_poly(poly, 'x')?;
    let levels: Vec<usize> = if levels.is_empty() { (0..=chain.len()).collect() } else { levels.to_vec() };
    let mut rows = Vec::new();
    let mut s = String::new();
    for &i in &levels {
        let mu = chain.mu(i, &g)?;
        let v = chain.v_norm(i, &g)?;
        let mut row = json!({
            "level": i,
            "mu": mu.as_finite().map(rational_value).unwrap_or(json!("inf")),
            "v": v.as_finite().map(|x| json!(x)).unwrap_or(json!("inf")),
        });
        let _ = write!(s, "level {i}: mu = {mu}, v = {v}");
        if residual {
            let r = ri(&chain, i, &g)?;
            let field = chain.tower().field(i);
            let _ = write!(s, ", (s, u, R) = ({}, {}, {})", r.s, r.u, factored(&field, &r.poly));
            row["residual"] = residual_to_json(&r);
        }
        s.push('\n');
        rows.push(row);
    }
    let text = if as_json { pretty(&json!({ "p": chain.p(), "poly": qpoly_value(&g), "levels": rows })) } else { s };
    Ok(Output { text, status: 0 })
}

fn optimize(file: &Path, as_json: bool) -> Result<Output> {
    let t = read_type(file)?;
    let o = t.optimize()?;
    let cls = o.classify();
    let (depth, frame) = o.okutsu_data()?;
    let text = if as_json {
        pretty(&json!({
            "type": type_to_json(&o),
            "strongly_optimal": cls.strongly_optimal,
            "okutsu_depth": depth,
            "okutsu_frame": frame.iter().map(qpoly_value).collect::<Vec<_>>(),
        }))
    } else {
        let frame: Vec<String> = frame.iter().map(|g| g.to_string()).collect();
        format!(
            "{o}\norder {} -> {}, {}strongly optimal, okutsu depth {depth}, frame [{}]\n",
            t.order(),
            o.order(),
            if cls.strongly_optimal { "" } else { "not " },
            frame.join(", ")
        )
    };
    Ok(Output { text, status: 0 })
}

fn representative(file: &Path, as_json: bool) -> Result<Output> {
    let t = read_type(file)?;
    let phi = t.representative()?;
    let text = if as_json {
        pretty(&json!({ "representative": qpoly_value(&phi), "degree": phi.deg() }))
    } else {
        format!("{phi}\n")
    };
    Ok(Output { text, status: 0 })
}
