//! JSON forms of chains, types, residual results and certificates.
//!
//! Field elements are integers at level 0 and nested arrays above it;
//! polynomial coefficients over Q are decimal strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::arith::qpoly::QPoly;
use crate::arith::tower::FqPoly;
use crate::error::{Error, Result};
use crate::montes::{FactorCertificate, Factorization};
use crate::residual::ResidualResult;
use crate::types::{EquivFailure, EquivWitness, Type};
use crate::valuation::{build_chain, MacLaneChain};

pub fn bigint_value(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

pub fn rational_value(q: &BigRational) -> Value {
    json!({ "num": bigint_value(q.numer()), "den": bigint_value(q.denom()) })
}

pub fn qpoly_value(g: &QPoly) -> Value {
    Value::Array(g.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

fn parse_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad(format!("{n} is not an integer"))),
        Value::String(s) => s.trim().parse().map_err(|_| bad(format!("{s:?} is not an integer"))),
        other => Err(bad(format!("expected an integer, got {other}"))),
    }
}

fn parse_coeff(v: &Value) -> Result<BigRational> {
    if let Value::String(s) = v {
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad(format!("bad rational {s:?}")))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad(format!("bad rational {s:?}")))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            return Ok(BigRational::new(n, d));
        }
    }
    Ok(BigRational::from_integer(parse_bigint(v)?))
}

pub fn parse_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::Object(m) => {
            let num = parse_bigint(m.get("num").ok_or_else(|| bad("missing num"))?)?;
            let den = parse_bigint(m.get("den").ok_or_else(|| bad("missing den"))?)?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(BigRational::new(num, den))
        }
        other => parse_coeff(other),
    }
}

pub fn parse_qpoly(v: &Value) -> Result<QPoly> {
    match v {
        Value::Array(a) => Ok(QPoly::new(a.iter().map(parse_coeff).collect::<Result<_>>()?)),
        other => Err(bad(format!("expected a coefficient array, got {other}"))),
    }
}

fn level_object(chain: &MacLaneChain, i: usize) -> Map<String, Value> {
    let l = chain.level(i);
    let mut m = Map::new();
    m.insert("phi".into(), qpoly_value(&l.phi));
    m.insert("nu".into(), rational_value(&l.nu));
    for (k, v) in [("e", l.e), ("h", l.h), ("f_prev", l.f_prev), ("m", l.m), ("V", l.big_v), ("l", l.l), ("lp", l.lp)] {
        m.insert(k.into(), Value::from(v));
    }
    m
}

pub fn chain_to_json(chain: &MacLaneChain) -> Value {
    let levels: Vec<Value> = (1..=chain.len()).map(|i| Value::Object(level_object(chain, i))).collect();
    json!({ "p": chain.p(), "levels": levels })
}

/// A type as its chain plus `psi0` and, at each level `i`, `ψ_i`.
pub fn type_to_json(t: &Type) -> Value {
    let chain = t.chain();
    let levels: Vec<Value> = (1..=chain.len())
        .map(|i| {
            let mut m = level_object(chain, i);
            m.insert("psi".into(), t.psi_at(i).to_json());
            Value::Object(m)
        })
        .collect();
    json!({ "p": chain.p(), "order": t.order(), "psi0": t.psi_at(0).to_json(), "levels": levels })
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

pub fn chain_from_json(v: &Value) -> Result<MacLaneChain> {
    let p = get(v, "p")?.as_u64().ok_or_else(|| bad("p must be a positive integer"))?;
    let levels = get(v, "levels")?.as_array().ok_or_else(|| bad("levels must be an array"))?;
    let mut steps = Vec::new();
    for lv in levels {
        steps.push((parse_qpoly(get(lv, "phi")?)?, parse_rational(get(lv, "nu")?)?));
    }
    let chain = build_chain(p, &steps)?;
    for (i, lv) in levels.iter().enumerate() {
        let ours = level_object(&chain, i + 1);
        for key in ["e", "h", "f_prev", "m", "V", "l", "lp"] {
            if let Some(given) = lv.get(key) {
                if given != &ours[key] {
                    return Err(Error::InvalidChain(format!("level {}: {key} = {given} but the data give {}", i + 1, ours[key])));
                }
            }
        }
    }
    Ok(chain)
}

pub fn type_from_json(v: &Value) -> Result<Type> {
    let chain = chain_from_json(v)?;
    let r = chain.len();
    let psi_at = |i: usize| -> Result<FqPoly> {
        if i == 0 {
            FqPoly::from_json(get(v, "psi0")?)
        } else {
            FqPoly::from_json(get(&get(v, "levels")?[i - 1], "psi")?)
        }
    };
    for i in 0..r {
        if psi_at(i)? != chain.level(i + 1).psi_prev {
            return Err(Error::InvalidType(format!("psi_{i} does not match the residual polynomial of phi_{}", i + 1)));
        }
    }
    let t = Type::new(chain, psi_at(r)?)?;
    if let Some(ord) = v.get("order") {
        if ord.as_u64() != Some(t.order() as u64) {
            return Err(Error::InvalidType(format!("order {ord} does not match {} levels", t.order())));
        }
    }
    Ok(t)
}

pub fn residual_to_json(r: &ResidualResult) -> Value {
    json!({ "s": r.s, "u": r.u, "poly": r.poly.to_json() })
}

pub fn certificate_to_json(c: &FactorCertificate) -> Value {
    json!({
        "degree": c.degree,
        "e": c.e,
        "f": c.f,
        "okutsu_depth": c.okutsu_depth,
        "okutsu_frame": c.okutsu_frame.iter().map(qpoly_value).collect::<Vec<_>>(),
        "slopes": c.slopes.iter().map(rational_value).collect::<Vec<_>>(),
        "approximation": qpoly_value(&c.approximation),
        "type": type_to_json(&c.final_type),
        "raw_type": type_to_json(&c.raw_type),
    })
}

pub fn factorization_to_json(f: &QPoly, p: u64, out: &Factorization) -> Value {
    json!({
        "p": p,
        "f": qpoly_value(f),
        "precision_floor": out.precision_floor,
        "certificates": out.certificates.iter().map(certificate_to_json).collect::<Vec<_>>(),
    })
}

pub fn equiv_to_json(w: &EquivWitness) -> Value {
    let verdict = match &w.verdict {
        Ok(()) => json!({ "equivalent": true }),
        Err(e) => {
            let (kind, level) = match e {
                EquivFailure::Prime => ("prime", None),
                EquivFailure::Order { .. } => ("order", None),
                EquivFailure::Slope { level } => ("slope", Some(*level)),
                EquivFailure::KeyPolynomial { level } => ("key_polynomial", Some(*level)),
                EquivFailure::Psi { level } => ("psi", Some(*level)),
                EquivFailure::Degenerate { level } => ("degenerate", Some(*level)),
            };
            json!({ "equivalent": false, "failed": kind, "level": level, "reason": e.to_string() })
        }
    };
    json!({ "verdict": verdict, "etas": w.etas.iter().map(|e| e.to_json()).collect::<Vec<_>>() })
}
