//! The JSON arrangement file:
//!
//! ```json
//! {"dim": 2, "field": "Q", "hyperplanes": [{"normal": [1, 0], "offset": "1/2"}]}
//! ```
//!
//! `field` is `"Q"` (the default) or `{"p": 7}`. Coefficients are integers
//! or strings `"p/q"`. Array order fixes the labels `1..=m`, which is also
//! the default order for broken circuits.

use num::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::adjoint::Provenance;
use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exactq::field::{format_rational, parse_rational};
use crate::exactq::{Field, FieldKind, PrimeField, Rational, Rationals};

#[derive(Debug, Clone, PartialEq)]
pub enum AnyArrangement {
    Rational(Arrangement<Rationals>),
    Prime(Arrangement<PrimeField>),
}

impl AnyArrangement {
    pub fn dim(&self) -> usize {
        match self {
            AnyArrangement::Rational(a) => a.dim(),
            AnyArrangement::Prime(a) => a.dim(),
        }
    }

    pub fn rational(self) -> Result<Arrangement<Rationals>> {
        match self {
            AnyArrangement::Rational(a) => Ok(a),
            AnyArrangement::Prime(a) => Err(Error::parse(
                "field",
                format!("this command needs a rational arrangement, got F_{}", a.field().modulus()),
            )),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FieldRepr {
    Name(String),
    Prime { p: u64 },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Text(String),
    Other(Value),
}

#[derive(Deserialize)]
struct HyperplaneRepr {
    normal: Vec<Number>,
    offset: Number,
}

#[derive(Deserialize)]
struct FileRepr {
    dim: usize,
    field: Option<FieldRepr>,
    hyperplanes: Vec<HyperplaneRepr>,
}

fn rational_at(n: &Number, at: &str) -> Result<Rational> {
    match n {
        Number::Int(v) => Ok(Rational::from_integer((*v).into())),
        Number::Text(s) => parse_rational(s).ok_or_else(|| Error::parse(at, format!("not a rational number: {s:?}"))),
        Number::Other(v) => Err(Error::parse(at, format!("expected an integer or a \"p/q\" string, found {v}"))),
    }
}

fn residue_at(field: &PrimeField, n: &Number, at: &str) -> Result<u64> {
    let q = rational_at(n, at)?;
    if !q.is_integer() {
        return Err(Error::parse(at, "coefficients over F_p must be integers"));
    }
    Ok(field.reduce(q.numer()))
}

/// Parses an arrangement file. Errors name the offending line and column,
/// or the JSON path of the offending value.
pub fn parse_arrangement(text: &str) -> Result<AnyArrangement> {
    let file: FileRepr = serde_json::from_str(text)
        .map_err(|e| {
            let at = format!("line {} column {}", e.line(), e.column());
            let msg = e.to_string();
            let msg = msg.strip_suffix(&format!(" at {at}")).unwrap_or(&msg).to_string();
            Error::parse(at, msg)
        })?;
    let d = file.dim;
    for (i, h) in file.hyperplanes.iter().enumerate() {
        if h.normal.len() != d {
            return Err(Error::parse(
                format!("hyperplanes[{i}].normal"),
                format!("expected {d} coefficients, found {}", h.normal.len()),
            ));
        }
    }
    let kind = match file.field {
        None => FieldKind::Rationals,
        Some(FieldRepr::Name(s)) if s == "Q" => FieldKind::Rationals,
        Some(FieldRepr::Name(s)) => return Err(Error::parse("field", format!("unknown field {s:?}, expected \"Q\" or {{\"p\": prime}}"))),
        Some(FieldRepr::Prime { p }) => FieldKind::Prime(p),
    };
    match kind {
        FieldKind::Rationals => {
            let mut raw = Vec::with_capacity(file.hyperplanes.len());
            for (i, h) in file.hyperplanes.iter().enumerate() {
                let normal = h
                    .normal
                    .iter()
                    .enumerate()
                    .map(|(j, c)| rational_at(c, &format!("hyperplanes[{i}].normal[{j}]")))
                    .collect::<Result<Vec<_>>>()?;
                let offset = rational_at(&h.offset, &format!("hyperplanes[{i}].offset"))?;
                raw.push((normal, offset));
            }
            Ok(AnyArrangement::Rational(locate_errors(Arrangement::from_coefficients(Rationals, d, raw))?))
        }
        FieldKind::Prime(p) => {
            let field = PrimeField::new(p).ok_or_else(|| Error::parse("field.p", format!("{p} is not a usable prime")))?;
            let mut raw = Vec::with_capacity(file.hyperplanes.len());
            for (i, h) in file.hyperplanes.iter().enumerate() {
                let normal = h
                    .normal
                    .iter()
                    .enumerate()
                    .map(|(j, c)| residue_at(&field, c, &format!("hyperplanes[{i}].normal[{j}]")))
                    .collect::<Result<Vec<_>>>()?;
                let offset = residue_at(&field, &h.offset, &format!("hyperplanes[{i}].offset"))?;
                raw.push((normal, offset));
            }
            Ok(AnyArrangement::Prime(locate_errors(Arrangement::from_coefficients(field, d, raw))?))
        }
    }
}

/// Rewrites 1-based hyperplane errors as positioned parse errors.
fn locate_errors<T>(r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::ZeroNormal { index } => Error::parse(format!("hyperplanes[{}].normal", index - 1), "zero normal vector"),
        Error::DuplicateHyperplane { first, second } => Error::parse(
            format!("hyperplanes[{}]", second - 1),
            format!("duplicates hyperplanes[{}]", first - 1),
        ),
        other => other,
    })
}

pub fn load_arrangement(path: &std::path::Path) -> Result<AnyArrangement> {
    let text = std::fs::read_to_string(path)?;
    parse_arrangement(&text).map_err(|e| match e {
        Error::Parse { context, message } => Error::parse(format!("{}: {context}", path.display()), message),
        other => other,
    })
}

/// A coefficient as a JSON integer when it is one and fits, else `"p/q"`.
pub fn rational_json(q: &Rational) -> Value {
    match q.is_integer().then(|| q.numer().to_i64()).flatten() {
        Some(v) => json!(v),
        None => json!(format_rational(q)),
    }
}

/// Field elements as JSON: rationals via [`rational_json`], residues as
/// integers.
pub trait ElemJson: Field {
    fn elem_json(&self, e: &Self::Elem) -> Value;
    /// Offsets are written as strings over `Q`.
    fn offset_json(&self, e: &Self::Elem) -> Value;
    fn field_json(&self) -> Value;
    /// `q` as an element; `None` over `F_p` when `p` divides the denominator.
    fn lift(&self, q: &Rational) -> Option<Self::Elem>;
}

impl ElemJson for Rationals {
    fn elem_json(&self, e: &Rational) -> Value {
        rational_json(e)
    }
    fn offset_json(&self, e: &Rational) -> Value {
        json!(format_rational(e))
    }
    fn field_json(&self) -> Value {
        json!("Q")
    }
    fn lift(&self, q: &Rational) -> Option<Rational> {
        Some(q.clone())
    }
}

impl ElemJson for PrimeField {
    fn elem_json(&self, e: &u64) -> Value {
        json!(e)
    }
    fn offset_json(&self, e: &u64) -> Value {
        json!(e)
    }
    fn field_json(&self) -> Value {
        json!({ "p": self.modulus() })
    }
    fn lift(&self, q: &Rational) -> Option<u64> {
        let den = self.reduce(q.denom());
        (den != 0).then(|| self.div(&self.reduce(q.numer()), &den))
    }
}

pub fn vector_json<F: ElemJson>(field: &F, v: &[F::Elem]) -> Value {
    Value::Array(v.iter().map(|e| field.elem_json(e)).collect())
}

/// The file form of `a`, optionally with a provenance entry per member.
pub fn arrangement_json<F: ElemJson>(a: &Arrangement<F>, provenance: Option<&[Provenance]>) -> Value {
    let field = a.field();
    let hyperplanes: Vec<Value> = a
        .hyperplanes()
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let mut obj = json!({
                "normal": vector_json(field, h.normal()),
                "offset": field.offset_json(h.offset()),
            });
            if let Some(p) = provenance {
                obj["provenance"] = serde_json::to_value(&p[i]).expect("serializable");
            }
            obj
        })
        .collect();
    json!({ "dim": a.dim(), "field": field.field_json(), "hyperplanes": hyperplanes })
}

pub fn save_arrangement<F: ElemJson>(a: &Arrangement<F>) -> String {
    to_pretty(&arrangement_json(a, None))
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
