//! Matrix-file parsing and report serialization for the CLI.
//!
//! The input format is UTF-8 JSON: {"field": "q"|"fp"|"hq", "p": prime,
//! "rows": [[...]]}. Rational entries are integers or "a/b" strings,
//! prime-field entries are integers, quaternion entries are 4-element
//! arrays of rational components. Reports serialize with a fixed key
//! order and contain no floats, so parsing an emitted report and
//! re-serializing it is byte-identical.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::identities::IdentityReport;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::{parse_rational, Domain, Scalar};
use crate::structure::StructureReport;

/// Input-side failures, split by exit-code class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputError {
    /// Malformed JSON, unknown field tag, bad literal, bad modulus.
    Parse(String),
    /// Ragged or non-square shapes.
    Shape(String),
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputError::Parse(m) => write!(f, "parse error: {m}"),
            InputError::Shape(m) => write!(f, "shape error: {m}"),
        }
    }
}

#[derive(Deserialize)]
struct MatrixFileJson {
    field: String,
    #[serde(default)]
    p: Option<u64>,
    rows: Vec<Vec<Value>>,
}

fn parse_rational_value(v: &Value) -> Result<num::BigRational, InputError> {
    match v {
        Value::Number(n) => {
            let i =
                n.as_i64().ok_or_else(|| InputError::Parse(format!("non-integer number {n}")))?;
            Ok(num::BigRational::from(num::BigInt::from(i)))
        }
        Value::String(s) => parse_rational(s)
            .ok_or_else(|| InputError::Parse(format!("bad rational literal {s:?}"))),
        other => Err(InputError::Parse(format!("expected rational literal, got {other}"))),
    }
}

fn parse_scalar(domain: Domain, v: &Value) -> Result<Scalar, InputError> {
    match domain {
        Domain::Rationals => Ok(Scalar::Rat(parse_rational_value(v)?)),
        Domain::PrimeField(_) => match v {
            Value::Number(n) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| InputError::Parse(format!("non-integer number {n}")))?;
                Ok(domain.from_int(i))
            }
            Value::String(s) => {
                let i: i64 =
                    s.parse().map_err(|_| InputError::Parse(format!("bad field literal {s:?}")))?;
                Ok(domain.from_int(i))
            }
            other => Err(InputError::Parse(format!("expected integer literal, got {other}"))),
        },
        Domain::RationalQuaternions => match v {
            Value::Array(parts) if parts.len() == 4 => {
                let mut comps = parts.iter().map(parse_rational_value);
                let a = comps.next().unwrap()?;
                let b = comps.next().unwrap()?;
                let c = comps.next().unwrap()?;
                let d = comps.next().unwrap()?;
                Ok(Scalar::quaternion(a, b, c, d))
            }
            other => {
                Err(InputError::Parse(format!("expected quaternion [a, b, c, d], got {other}")))
            }
        },
    }
}

/// Parses a matrix file; the matrix is rectangular but not necessarily
/// square (squareness is a per-command requirement).
pub fn parse_matrix_file(text: &str) -> Result<Matrix, InputError> {
    let file: MatrixFileJson =
        serde_json::from_str(text).map_err(|e| InputError::Parse(e.to_string()))?;
    let domain = match file.field.as_str() {
        "q" => Domain::Rationals,
        "fp" => {
            let p = file
                .p
                .ok_or_else(|| InputError::Parse("field \"fp\" requires a modulus p".into()))?;
            Domain::prime_field(p).map_err(|e| InputError::Parse(e.to_string()))?
        }
        "hq" => Domain::RationalQuaternions,
        other => return Err(InputError::Parse(format!("unknown field tag {other:?}"))),
    };
    if file.rows.is_empty() || file.rows[0].is_empty() {
        return Err(InputError::Shape("matrix must have at least one row and column".into()));
    }
    let cols = file.rows[0].len();
    let mut rows = Vec::with_capacity(file.rows.len());
    for raw in &file.rows {
        if raw.len() != cols {
            return Err(InputError::Shape("ragged rows".into()));
        }
        let mut row = Vec::with_capacity(cols);
        for v in raw {
            row.push(parse_scalar(domain, v)?);
        }
        rows.push(row);
    }
    Ok(Matrix::from_rows(domain, rows))
}

pub fn require_square(m: &Matrix) -> Result<(), InputError> {
    if m.is_square() {
        Ok(())
    } else {
        Err(InputError::Shape(format!("matrix is {}x{}, not square", m.rows(), m.cols())))
    }
}

fn rational_literal(r: &num::BigRational) -> Value {
    use num::One;
    if r.denom().is_one() {
        Value::String(format!("{}", r.numer()))
    } else {
        Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}

/// Canonical JSON literal of a scalar, matching the input syntax.
pub fn render_scalar(s: &Scalar) -> Value {
    match s {
        Scalar::Rat(r) => rational_literal(r),
        Scalar::Fp { val, .. } => json!(val),
        Scalar::Quat(q) => Value::Array(vec![
            rational_literal(&q.a),
            rational_literal(&q.b),
            rational_literal(&q.c),
            rational_literal(&q.d),
        ]),
    }
}

pub fn render_matrix(m: &Matrix) -> Vec<Vec<Value>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| render_scalar(&m[(i, j)])).collect()).collect()
}

/// Ascending coefficient literals of a polynomial.
pub fn render_poly(p: &Poly) -> Vec<Value> {
    p.coeffs().iter().map(render_scalar).collect()
}

pub fn field_tag(domain: Domain) -> (String, Option<u64>) {
    match domain {
        Domain::Rationals => ("q".into(), None),
        Domain::PrimeField(p) => ("fp".into(), Some(p.get())),
        Domain::RationalQuaternions => ("hq".into(), None),
    }
}

// ---------------------------------------------------------------------
// report payloads
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JordanReport {
    pub sizes: Vec<usize>,
    pub n: usize,
    pub m: usize,
    pub change_of_base: Vec<Vec<Value>>,
}

/// Agreement of the three centralizer-dimension routes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionCheck {
    pub brute: u64,
    pub structured: u64,
    pub formula: u64,
    pub spans_equal: bool,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitBlockReport {
    pub eigenvalue: Value,
    pub sizes: Vec<usize>,
    pub dimension: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralizerReport {
    pub nilpotent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sizes: Option<Vec<usize>>,
    pub dimension: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<DimensionCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<SplitBlockReport>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NilpotentStructure {
    pub sizes: Vec<usize>,
    pub dimension: DimensionCheck,
    pub structure: StructureReport,
    /// trace-form radical dimension; rationals only
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radical_oracle_dim: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_agrees: Option<bool>,
    pub identity_checks: Vec<IdentityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity_checks_skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nonidentity_witness_degree: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitStructBlock {
    pub eigenvalue: Value,
    pub sizes: Vec<usize>,
    pub dimension: u64,
    pub structure: StructureReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitStructure {
    pub blocks: Vec<SplitStructBlock>,
    pub total_dimension: u64,
    pub pi_degree: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FullReport {
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub nilpotent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nilpotent_structure: Option<NilpotentStructure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitStructure>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContainReport {
    pub contained: bool,
    /// ascending coefficients of h with h(A) = B, when available
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<Vec<Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<Value>>>,
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization cannot fail")
}
