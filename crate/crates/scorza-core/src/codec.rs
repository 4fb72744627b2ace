//! JSON encoding of the public value types.
//!
//! Scalars travel as decimal strings ("num/den" over the rationals,
//! residues over a prime field), matrices as row-major nested arrays.
//! Parsing always happens against an explicit field, so the same payload
//! files work over Q and over GF(p).

use serde_json::{json, Value};

use crate::compalg::{Alg, AlgElem};
use crate::error::{Error, Result};
use crate::jordan::{herm_from_coords, upper_index, Herm};
use crate::linalg::Mat;
use crate::pencils::{OrbitLabel, TwoForm};
use crate::scalar::{parse_scalar, FieldSpec, Scalar};
use crate::scorza::{ConePoint, ScorzaSpace};
use crate::spinor::{Side, SpinorPair};
use crate::subspace::{QuotientMap, Subspace};

pub fn scalar_to_value(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn scalar_from_value(field: FieldSpec, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => parse_scalar(field, s),
        Value::Number(n) => parse_scalar(field, &n.to_string()),
        _ => Err(Error::Parse(format!("expected a scalar string, got {v}"))),
    }
}

pub fn vec_to_value(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_value).collect())
}

pub fn vec_from_value(field: FieldSpec, v: &Value) -> Result<Vec<Scalar>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array of scalars, got {v}")))?
        .iter()
        .map(|x| scalar_from_value(field, x))
        .collect()
}

pub fn mat_to_value(m: &Mat) -> Value {
    Value::Array((0..m.nrows()).map(|i| vec_to_value(&m.row(i))).collect())
}

pub fn mat_from_value(field: FieldSpec, v: &Value, cols: usize) -> Result<Mat> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected a nested array matrix".into()))?
        .iter()
        .map(|r| vec_from_value(field, r))
        .collect::<Result<Vec<_>>>()?;
    Mat::from_rows(field, cols, rows)
}

pub fn alg_to_value(e: &Alg) -> Value {
    json!({ "a": e.dim(), "coords": vec_to_value(e.coords()) })
}

pub fn alg_from_value(field: FieldSpec, v: &Value) -> Result<Alg> {
    let a = v
        .get("a")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("algebra element needs an \"a\" field".into()))?;
    let coords = vec_from_value(
        field,
        v.get("coords")
            .ok_or_else(|| Error::Parse("algebra element needs \"coords\"".into()))?,
    )?;
    if coords.len() != a as usize {
        return Err(Error::Parse(format!(
            "algebra element of dimension {a} with {} coordinates",
            coords.len()
        )));
    }
    AlgElem::new(coords)
}

pub fn herm_to_value(m: &Herm) -> Value {
    let n = m.n();
    let mut upper = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            upper.push(json!([i + 1, j + 1, alg_to_value(m.upper_entry(i, j))]));
        }
    }
    json!({
        "n": n,
        "a": m.alg_dim(),
        "diag": vec_to_value(m.diag()),
        "upper": upper,
    })
}

pub fn herm_from_value(field: FieldSpec, v: &Value) -> Result<Herm> {
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("Hermitian matrix needs \"n\"".into()))? as usize;
    let a = v
        .get("a")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("Hermitian matrix needs \"a\"".into()))? as u8;
    let diag = vec_from_value(
        field,
        v.get("diag")
            .ok_or_else(|| Error::Parse("Hermitian matrix needs \"diag\"".into()))?,
    )?;
    if diag.len() != n {
        return Err(Error::Parse("diagonal of the wrong length".into()));
    }
    let mut coords = diag;
    coords.extend(vec![field.zero(); (a as usize) * n * (n - 1) / 2]);
    let mut m = herm_from_coords(n, a, &coords)?;
    if let Some(list) = v.get("upper") {
        for entry in list
            .as_array()
            .ok_or_else(|| Error::Parse("\"upper\" must be an array".into()))?
        {
            let trip = entry
                .as_array()
                .filter(|t| t.len() == 3)
                .ok_or_else(|| Error::Parse("upper entries are [i, j, element]".into()))?;
            let i = trip[0]
                .as_u64()
                .ok_or_else(|| Error::Parse("bad row index".into()))? as usize;
            let j = trip[1]
                .as_u64()
                .ok_or_else(|| Error::Parse("bad column index".into()))? as usize;
            if i == 0 || j == 0 || i >= j || j > n {
                return Err(Error::Parse(format!(
                    "upper index ({i}, {j}) out of range (1-based, i < j <= {n})"
                )));
            }
            let e = alg_from_value(field, &trip[2])?;
            if e.dim() != a {
                return Err(Error::Parse("upper entry of the wrong dimension".into()));
            }
            let mut c = m.to_coords();
            let off = n + upper_index(n, i - 1, j - 1) * a as usize;
            for (k, s) in e.coords().iter().enumerate() {
                c[off + k] = s.clone();
            }
            m = herm_from_coords(n, a, &c)?;
        }
    }
    Ok(m)
}

pub fn spinor_to_value(s: &SpinorPair) -> Value {
    json!({
        "side": s.side.as_str(),
        "a": alg_to_value(&s.a),
        "b": alg_to_value(&s.b),
    })
}

pub fn spinor_from_value(field: FieldSpec, v: &Value) -> Result<SpinorPair> {
    let side = match v.get("side").and_then(Value::as_str) {
        Some("+") => Side::Plus,
        Some("-") => Side::Minus,
        _ => {
            return Err(Error::Parse(
                "spinor needs a \"side\" of \"+\" or \"-\"".into(),
            ))
        }
    };
    let a = alg_from_value(
        field,
        v.get("a")
            .ok_or_else(|| Error::Parse("spinor needs \"a\"".into()))?,
    )?;
    let b = alg_from_value(
        field,
        v.get("b")
            .ok_or_else(|| Error::Parse("spinor needs \"b\"".into()))?,
    )?;
    SpinorPair::new(a, b, side)
}

pub fn twoform_to_value(w: &TwoForm) -> Value {
    mat_to_value(w.gram())
}

pub fn twoform_from_value(field: FieldSpec, v: &Value) -> Result<TwoForm> {
    TwoForm::new(mat_from_value(field, v, crate::pencils::PENCIL_DIM)?)
}

pub fn subspace_to_value(s: &Subspace) -> Value {
    json!({
        "ambient": s.ambient_dim(),
        "dim": s.dim(),
        "basis": mat_to_value(s.basis()),
    })
}

pub fn chart_to_value(q: &QuotientMap) -> Value {
    json!({
        "subspace": subspace_to_value(q.sub()),
        "complement": q.complement_cols(),
    })
}

pub fn label_to_value(l: OrbitLabel) -> Value {
    Value::String(l.label().to_string())
}

pub fn cone_point_to_value(x: &ConePoint) -> Value {
    json!({
        "n": x.space().n,
        "a": x.space().a,
        "rep": herm_to_value(x.rep()),
    })
}

pub fn cone_point_from_value(field: FieldSpec, v: &Value) -> Result<ConePoint> {
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("cone point needs \"n\"".into()))? as usize;
    let a = v
        .get("a")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("cone point needs \"a\"".into()))? as u8;
    let space = ScorzaSpace::new(n, a, field)?;
    let rep = herm_from_value(
        field,
        v.get("rep")
            .ok_or_else(|| Error::Parse("cone point needs \"rep\"".into()))?,
    )?;
    ConePoint::from_rep(space, rep)
}
