//! JSON documents for surfaces, curves, extension data and matrices.
//!
//! Coefficients are decimal strings (`"n"` or `"n/d"`; residues over F_p), and JSON
//! numbers are accepted on input. Objects are emitted with sorted keys, so a parsed
//! document re-emits byte for byte.

use serde_json::{json, Map, Value};

use crate::birational::ExtensionDatum;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::forms::{BinaryForm, P1Point, PlaneCurve};
use crate::grassmann::SurfaceMap;
use crate::matrix::Matrix;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

/// Parses `q` or `fp:P`.
pub fn parse_field_flag(s: &str) -> Result<Field> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("q") {
        return Ok(Field::Rational);
    }
    let p = s
        .strip_prefix("fp:")
        .or_else(|| s.strip_prefix("Fp:"))
        .ok_or_else(|| bad(format!("field must be q or fp:P, got {s:?}")))?;
    Field::prime(p.trim().parse().map_err(|_| bad(format!("malformed prime {p:?}")))?)
}

pub fn field_to_json(field: Field) -> Value {
    match field {
        Field::Rational => json!({ "type": "Q" }),
        Field::Prime { p } => json!({ "type": "Fp", "p": p }),
    }
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    let obj = v.as_object().ok_or_else(|| bad("field must be an object"))?;
    match obj.get("type").and_then(Value::as_str) {
        Some("Q") => Ok(Field::Rational),
        Some("Fp") => {
            let p = obj.get("p").ok_or_else(|| bad("Fp field needs p"))?;
            let p = match p {
                Value::Number(n) => n.to_string(),
                Value::String(s) => s.clone(),
                _ => return Err(bad("p must be an integer")),
            };
            Field::prime(p.parse().map_err(|_| bad(format!("malformed prime {p:?}")))?)
        }
        _ => Err(bad("field type must be \"Q\" or \"Fp\"")),
    }
}

fn field_or_default(obj: &Map<String, Value>, default: Field) -> Result<Field> {
    obj.get("field").map_or(Ok(default), field_from_json)
}

pub fn scalar_to_json(x: &Scalar) -> Value {
    Value::String(x.to_canonical_string())
}

pub fn scalar_from_json(field: Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => Scalar::parse(field, s),
        Value::Number(n) => Scalar::parse(field, &n.to_string()),
        _ => Err(bad("coefficient must be a string or an integer")),
    }
}

fn scalars_from_json(field: Field, v: &Value) -> Result<Vec<Scalar>> {
    v.as_array()
        .ok_or_else(|| bad("expected an array of coefficients"))?
        .iter()
        .map(|x| scalar_from_json(field, x))
        .collect()
}

pub fn form_to_json(f: &BinaryForm) -> Value {
    Value::Array(f.coeffs().iter().map(scalar_to_json).collect())
}

pub fn form_from_json(field: Field, v: &Value) -> Result<BinaryForm> {
    let c = scalars_from_json(field, v)?;
    if c.is_empty() {
        return Err(bad("a form needs at least one coefficient"));
    }
    BinaryForm::new(c)
}

pub fn point_to_json(p: &P1Point) -> Value {
    let p = p.normalized();
    json!([scalar_to_json(&p.s), scalar_to_json(&p.t)])
}

fn object(v: &Value, what: &str) -> Result<Map<String, Value>> {
    v.as_object().cloned().ok_or_else(|| bad(format!("{what} document must be a JSON object")))
}

fn usize_field(obj: &Map<String, Value>, key: &str) -> Result<Option<usize>> {
    match obj.get(key) {
        None => Ok(None),
        Some(v) => {
            v.as_u64().map(|x| Some(x as usize)).ok_or_else(|| bad(format!("{key} must be a nonnegative integer")))
        }
    }
}

pub fn surface_to_json(psi: &SurfaceMap) -> Value {
    json!({
        "d": psi.degree(),
        "field": field_to_json(psi.field()),
        "omega": psi.forms().iter().map(form_to_json).collect::<Vec<_>>(),
    })
}

pub fn surface_from_json(v: &Value) -> Result<SurfaceMap> {
    let obj = object(v, "surface")?;
    let field = field_or_default(&obj, Field::Rational)?;
    let d = usize_field(&obj, "d")?.ok_or_else(|| bad("surface needs d"))?;
    if d == 0 {
        return Err(bad("surface degree must be at least 1"));
    }
    let omega = obj.get("omega").and_then(Value::as_array).ok_or_else(|| bad("surface needs omega"))?;
    if omega.len() != 6 {
        return Err(bad(format!("omega needs 6 forms, got {}", omega.len())));
    }
    let forms = omega.iter().map(|f| form_from_json(field, f)).collect::<Result<Vec<_>>>()?;
    if let Some(f) = forms.iter().find(|f| f.degree() != d) {
        return Err(bad(format!("form of degree {} in a surface of degree {d}", f.degree())));
    }
    SurfaceMap::from_vec(forms)
}

/// Emitted with the first nonzero coefficient scaled to 1.
pub fn curve_to_json(g: &PlaneCurve) -> Value {
    let g = if g.is_zero() { g.clone() } else { g.normalized() };
    json!({
        "coeffs": g.coeffs().iter().map(scalar_to_json).collect::<Vec<_>>(),
        "degree": g.degree(),
        "field": field_to_json(g.field()),
    })
}

pub fn curve_from_json(v: &Value) -> Result<PlaneCurve> {
    let obj = object(v, "curve")?;
    let field = field_or_default(&obj, Field::Rational)?;
    let k = usize_field(&obj, "degree")?.ok_or_else(|| bad("curve needs degree"))?;
    let coeffs = scalars_from_json(field, obj.get("coeffs").ok_or_else(|| bad("curve needs coeffs"))?)?;
    PlaneCurve::new(k, coeffs)
}

pub fn extension_to_json(e: &ExtensionDatum) -> Value {
    json!({
        "a": e.a.iter().map(|row| row.iter().map(form_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "field": field_to_json(e.field()),
        "n": e.n,
    })
}

pub fn extension_from_json(v: &Value) -> Result<ExtensionDatum> {
    let obj = object(v, "extension")?;
    let field = field_or_default(&obj, Field::Rational)?;
    let rows = obj.get("a").and_then(Value::as_array).ok_or_else(|| bad("extension needs a 2x2 array a"))?;
    if rows.len() != 2 {
        return Err(bad("extension matrix must be 2x2"));
    }
    let mut a: Vec<[BinaryForm; 2]> = Vec::with_capacity(2);
    for row in rows {
        let row = row.as_array().filter(|r| r.len() == 2).ok_or_else(|| bad("extension matrix must be 2x2"))?;
        a.push([form_from_json(field, &row[0])?, form_from_json(field, &row[1])?]);
    }
    let e = ExtensionDatum::new([a[0].clone(), a[1].clone()])?;
    if let Some(n) = usize_field(&obj, "n")? {
        if n != e.n {
            return Err(bad(format!("n = {n} does not match entries of degree {}", 2 * e.n - 2)));
        }
    }
    Ok(e)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    json!({
        "field": field_to_json(m.field()),
        "rows": m.to_rows().iter().map(|r| r.iter().map(scalar_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

/// Accepts `{"rows": [...], "field": ...}` or a bare array of rows.
pub fn matrix_from_json(v: &Value, default: Field) -> Result<Matrix> {
    let (field, rows) = match v {
        Value::Array(_) => (default, v.clone()),
        Value::Object(obj) => {
            (field_or_default(obj, default)?, obj.get("rows").cloned().ok_or_else(|| bad("matrix needs rows"))?)
        }
        _ => return Err(bad("matrix must be an object or an array of rows")),
    };
    let rows = rows.as_array().ok_or_else(|| bad("rows must be an array"))?;
    if rows.is_empty() {
        return Err(bad("matrix has no rows"));
    }
    let rows = rows.iter().map(|r| scalars_from_json(field, r)).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, rows)
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| bad(format!("malformed JSON: {e}")))
}

pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::worked_example;

    #[test]
    fn surface_round_trip() {
        for field in [Field::Rational, Field::prime(101).unwrap()] {
            let w = worked_example(field);
            let text = to_canonical_string(&surface_to_json(&w));
            let back = surface_from_json(&parse_json(&text).unwrap()).unwrap();
            assert_eq!(back, w);
            assert_eq!(to_canonical_string(&surface_to_json(&back)), text);
        }
    }

    #[test]
    fn worked_document_text() {
        let text = to_canonical_string(&surface_to_json(&worked_example(Field::Rational)));
        assert_eq!(
            text,
            r#"{"d":3,"field":{"type":"Q"},"omega":[["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","1","0"],["0","0","0","1"],["0","0","0","0"]]}"#
        );
    }

    #[test]
    fn curve_normalized() {
        let f = Field::Rational;
        let g = PlaneCurve::from_ints(f, 1, &[0, -3, 6]);
        let v = curve_to_json(&g);
        assert_eq!(v["coeffs"], json!(["0", "1", "-2"]));
        let back = curve_from_json(&v).unwrap();
        assert!(back.proportional(&g).is_some());
        assert_eq!(curve_to_json(&back), v);
    }

    #[test]
    fn rejects_bad_shapes() {
        let cases = [
            r#"{"d":3,"omega":[]}"#,
            r#"{"d":2,"omega":[["1","0","0"],["0"],["0","0","0"],["0","0","0"],["0","0","0"],["0","0","0"]]}"#,
            r#"{"d":1,"field":{"type":"Fp","p":100},"omega":[["1","0"],["0","1"],["0","0"],["0","0"],["0","0"],["0","0"]]}"#,
            r#"{"d":1,"omega":[["1/0","0"],["0","1"],["0","0"],["0","0"],["0","0"],["0","0"]]}"#,
            r#"[1,2]"#,
        ];
        for c in cases {
            assert!(surface_from_json(&parse_json(c).unwrap()).is_err(), "{c}");
        }
    }

    #[test]
    fn numbers_accepted() {
        let v = parse_json(r#"{"d":1,"omega":[[1,0],[0,1],[0,0],[0,0],[0,0],["-1/2",0]]}"#).unwrap();
        let s = surface_from_json(&v).unwrap();
        assert_eq!(s.forms()[5].coeff(0), &Field::Rational.parse("-1/2").unwrap());
    }

    #[test]
    fn field_flags() {
        assert_eq!(parse_field_flag("q").unwrap(), Field::Rational);
        assert_eq!(parse_field_flag("fp:10007").unwrap(), Field::Prime { p: 10007 });
        assert!(parse_field_flag("fp:10").is_err());
        assert!(parse_field_flag("r").is_err());
    }
}
