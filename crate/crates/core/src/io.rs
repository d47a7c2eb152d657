//! JSON encodings of pencils, polynomials, parametrizations and solver output.
//!
//! Rationals are written as strings `"p"` or `"p/q"`; integers are accepted on input.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::matrix::{LinearMatrix, RandomDraw, RatMatrix};
use crate::numeric::{Rational, RationalInterval};
use crate::param::{RationalParametrization, RealPointBox, SampleSet};
use crate::poly::{Monomial, MultiPoly, Ring, UniPoly};
use crate::solve::SolveReport;

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => s.trim().parse(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from(i)),
            None => n.to_string().parse().map_err(|_| perr(format!("expected an integer, found {n}"))),
        },
        other => Err(perr(format!("expected a rational, found {other}"))),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(format!("{what} must be an array")))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| perr(format!("missing field \"{key}\"")))
}

fn usize_field(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?.as_u64().map(|x| x as usize).ok_or_else(|| perr(format!("\"{key}\" must be a non-negative integer")))
}

pub fn matrix_to_json(a: &RatMatrix) -> Value {
    Value::Array(
        (0..a.rows()).map(|i| Value::Array(a.row(i).iter().map(rational_to_json).collect())).collect(),
    )
}

pub fn matrix_from_json(v: &Value) -> Result<RatMatrix> {
    let rows = array(v, "matrix")?
        .iter()
        .map(|r| array(r, "matrix row")?.iter().map(rational_from_json).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    RatMatrix::from_rows(rows)
}

pub fn pencil_to_json(a: &LinearMatrix) -> Value {
    json!({
        "m": a.m(),
        "n": a.n(),
        "A": a.mats().iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

pub fn pencil_from_json(v: &Value) -> Result<LinearMatrix> {
    let m = usize_field(v, "m")?;
    let n = usize_field(v, "n")?;
    let mats = array(field(v, "A")?, "\"A\"")?.iter().map(matrix_from_json).collect::<Result<Vec<_>>>()?;
    if mats.len() != n + 1 {
        return Err(perr(format!("expected {} matrices, found {}", n + 1, mats.len())));
    }
    if mats.iter().any(|a| a.rows() != m || a.cols() != m) {
        return Err(perr(format!("every matrix must be {m}x{m}")));
    }
    LinearMatrix::new(mats)
}

pub fn parse_pencil(text: &str) -> Result<LinearMatrix> {
    let v: Value = serde_json::from_str(text).map_err(|e| perr(e.to_string()))?;
    pencil_from_json(&v)
}

/// Sparse term list `[[exponents], "coeff"]` in increasing monomial order.
pub fn multipoly_to_json(p: &MultiPoly) -> Value {
    Value::Array(p.terms().map(|(m, c)| json!([m.exps(), c.to_string()])).collect())
}

pub fn multipoly_from_json(ring: &Arc<Ring>, v: &Value) -> Result<MultiPoly> {
    let mut terms = Vec::new();
    for t in array(v, "term list")? {
        let pair = array(t, "term")?;
        if pair.len() != 2 {
            return Err(perr("a term is [exponents, coefficient]"));
        }
        let exps = array(&pair[0], "exponents")?
            .iter()
            .map(|e| e.as_u64().and_then(|x| u16::try_from(x).ok()).ok_or_else(|| perr("bad exponent")))
            .collect::<Result<Vec<u16>>>()?;
        if exps.len() != ring.nvars() {
            return Err(perr(format!("exponent vector of length {} for {} variables", exps.len(), ring.nvars())));
        }
        terms.push((Monomial::from_exps(&exps), rational_from_json(&pair[1])?));
    }
    MultiPoly::from_terms(ring, terms)
}

pub fn unipoly_to_json(p: &UniPoly) -> Value {
    Value::Array(p.coeffs().iter().map(rational_to_json).collect())
}

pub fn unipoly_from_json(v: &Value) -> Result<UniPoly> {
    Ok(UniPoly::new(array(v, "coefficient vector")?.iter().map(rational_from_json).collect::<Result<_>>()?))
}

pub fn parametrization_to_json(rp: &RationalParametrization) -> Value {
    json!({
        "n": rp.n(),
        "q0": unipoly_to_json(rp.q0()),
        "q": rp.q().iter().map(unipoly_to_json).collect::<Vec<_>>(),
        "qlast": unipoly_to_json(rp.qlast()),
    })
}

pub fn parametrization_from_json(v: &Value) -> Result<RationalParametrization> {
    let n = usize_field(v, "n")?;
    let q = array(field(v, "q")?, "\"q\"")?.iter().map(unipoly_from_json).collect::<Result<Vec<_>>>()?;
    if q.len() != n {
        return Err(perr(format!("expected {n} coordinate polynomials, found {}", q.len())));
    }
    RationalParametrization::new(unipoly_from_json(field(v, "q0")?)?, q, unipoly_from_json(field(v, "qlast")?)?)
}

pub fn sample_set_to_json(s: &SampleSet) -> Value {
    json!({
        "n": s.n(),
        "items": s.items().iter().map(parametrization_to_json).collect::<Vec<_>>(),
    })
}

/// Accepts a sample set object or a solver report containing one under `"samples"`.
pub fn sample_set_from_json(v: &Value) -> Result<SampleSet> {
    let v = v.get("samples").unwrap_or(v);
    let n = usize_field(v, "n")?;
    let items = array(field(v, "items")?, "\"items\"")?
        .iter()
        .map(parametrization_from_json)
        .collect::<Result<Vec<_>>>()?;
    SampleSet::from_items(n, items)
}

pub fn interval_to_json(iv: &RationalInterval) -> Value {
    json!([iv.lo().to_string(), iv.hi().to_string()])
}

pub fn point_box_to_json(b: &RealPointBox, digits: u32) -> Value {
    json!({
        "source": b.source,
        "t_interval": interval_to_json(&b.t_interval),
        "box": b.coords.iter().map(interval_to_json).collect::<Vec<_>>(),
        "approx": b.approx(digits as usize),
    })
}

pub fn draw_to_json(d: &RandomDraw) -> Value {
    json!({
        "M": matrix_to_json(&d.mm),
        "u": d.u.iter().map(rational_to_json).collect::<Vec<_>>(),
        "v": d.v.iter().map(rational_to_json).collect::<Vec<_>>(),
        "fiber": rational_to_json(&d.fiber),
        "seed": d.seed,
    })
}

/// Full solver output: parametrizations, certified points and per-item verification.
pub fn report_to_json(a: &LinearMatrix, report: &SolveReport, seed: u64, digits: u32) -> Result<Value> {
    let points = report.samples.extract_real_points(digits)?;
    let verified = report.samples.verify_on_determinant(a)?;
    let levels: Vec<Value> = report
        .per_level
        .iter()
        .map(|l| {
            let mut o = Map::new();
            o.insert("n".into(), json!(l.n));
            o.insert("degree".into(), json!(l.degree));
            o.insert("retries".into(), json!(l.retries));
            o.insert("draw".into(), l.draw.as_ref().map_or(Value::Null, draw_to_json));
            Value::Object(o)
        })
        .collect();
    Ok(json!({
        "m": a.m(),
        "n": a.n(),
        "seed": seed,
        "digits": digits,
        "degree_sum": report.degree_sum,
        "samples": sample_set_to_json(&report.samples),
        "verified": verified,
        "points": points.iter().map(|b| point_box_to_json(b, digits)).collect::<Vec<_>>(),
        "levels": levels,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::tests::circle;

    #[test]
    fn pencil_roundtrip() {
        let a = circle();
        let v = pencil_to_json(&a);
        assert_eq!(pencil_from_json(&v).unwrap(), a);
        let text = r#"{"m":1,"n":1,"A":[[["1/2"]],[[3]]]}"#;
        let b = parse_pencil(text).unwrap();
        assert_eq!(b.mats()[0].get(0, 0), &"1/2".parse::<Rational>().unwrap());
        assert!(parse_pencil("{").is_err());
        assert!(parse_pencil(r#"{"m":2,"n":1,"A":[[["1"]],[["1"]]]}"#).is_err());
        assert!(parse_pencil(r#"{"m":1,"n":2,"A":[[["1"]],[["1"]]]}"#).is_err());
    }

    #[test]
    fn multipoly_roundtrip() {
        let d = circle().determinant();
        let v = multipoly_to_json(&d);
        assert_eq!(multipoly_from_json(d.ring(), &v).unwrap(), d);
    }

    #[test]
    fn sample_roundtrip_is_fixed_point() {
        let rp = RationalParametrization::new(
            UniPoly::from_ints(&[1, 1]),
            vec![UniPoly::t(), UniPoly::new(vec!["1/3".parse().unwrap()])],
            UniPoly::from_ints(&[-2, 0, 1]),
        )
        .unwrap();
        let s = SampleSet::from_items(2, vec![rp]).unwrap();
        let v = sample_set_to_json(&s);
        let back = sample_set_from_json(&v).unwrap();
        assert_eq!(back, s);
        assert_eq!(sample_set_to_json(&back), v);
    }
}
