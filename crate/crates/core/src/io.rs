//! JSON envelopes and CSV output.
//!
//! Matrices are `{"n": n, "data": [[[re, im], ...], ...]}` in row-major order.
//! Points add `"model": "H" | "D"`; sphere pairs are `{"tag", "x1", "x2"}` and
//! reflections `{"tag", "eps"}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::block2::{Block2, FormTag};
use crate::cmat::{CMat, Tolerance, C64};
use crate::error::GeomError;
use crate::models::{KPair, ModelPoint};
use crate::reflections::Reflection;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Invariant(#[from] GeomError),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Parse(e.to_string())
    }
}

pub type IoResult<T> = std::result::Result<T, IoError>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub data: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointJson {
    pub model: String,
    pub n: usize,
    pub data: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KPairJson {
    pub tag: String,
    pub x1: MatrixJson,
    pub x2: MatrixJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReflectionJson {
    pub tag: String,
    pub eps: MatrixJson,
}

impl From<&CMat> for MatrixJson {
    fn from(m: &CMat) -> Self {
        let n = m.n();
        let data = (0..n)
            .map(|i| (0..n).map(|j| {
                let z = m.get(i, j);
                [z.re, z.im]
            }).collect())
            .collect();
        MatrixJson { n, data }
    }
}

impl MatrixJson {
    pub fn to_cmat(&self) -> IoResult<CMat> {
        if self.n == 0 {
            return Err(IoError::Parse("n must be at least 1".into()));
        }
        if self.data.len() != self.n || self.data.iter().any(|r| r.len() != self.n) {
            return Err(IoError::Parse(format!("data is not {0}x{0}", self.n)));
        }
        let flat: Vec<C64> = self.data.iter().flatten().map(|p| C64::new(p[0], p[1])).collect();
        Ok(CMat::from_row_major(self.n, &flat)?)
    }

    pub fn to_block2(&self) -> IoResult<Block2> {
        if !self.n.is_multiple_of(2) {
            return Err(IoError::Parse(format!("block matrix needs even size, got {}", self.n)));
        }
        Ok(Block2::from_cmat(self.to_cmat()?)?)
    }
}

pub fn parse_tag(s: &str) -> IoResult<FormTag> {
    match s {
        "H" | "h" => Ok(FormTag::H),
        "D" | "d" => Ok(FormTag::D),
        other => Err(IoError::Parse(format!("unknown model tag {other:?}"))),
    }
}

fn tag_str(tag: FormTag) -> String {
    tag.letter().to_string()
}

pub fn cmat_to_value(m: &CMat) -> Value {
    serde_json::to_value(MatrixJson::from(m)).expect("plain data serializes")
}

pub fn block2_to_value(b: &Block2) -> Value {
    cmat_to_value(b.as_cmat())
}

pub fn point_to_value(p: &ModelPoint) -> Value {
    let m = MatrixJson::from(p.matrix());
    serde_json::to_value(PointJson { model: tag_str(p.tag()), n: m.n, data: m.data })
        .expect("plain data serializes")
}

pub fn kpair_to_value(k: &KPair) -> Value {
    serde_json::to_value(KPairJson {
        tag: tag_str(k.tag()),
        x1: MatrixJson::from(k.x1()),
        x2: MatrixJson::from(k.x2()),
    })
    .expect("plain data serializes")
}

pub fn reflection_to_value(r: &Reflection) -> Value {
    serde_json::to_value(ReflectionJson { tag: tag_str(r.tag()), eps: MatrixJson::from(r.eps().as_cmat()) })
        .expect("plain data serializes")
}

pub fn cmat_from_value(v: &Value) -> IoResult<CMat> {
    MatrixJson::deserialize(v)?.to_cmat()
}

pub fn block2_from_value(v: &Value) -> IoResult<Block2> {
    MatrixJson::deserialize(v)?.to_block2()
}

/// Reads a point. A `"model"` field, when present, must agree with `expected`.
pub fn point_from_value(v: &Value, expected: Option<FormTag>, tol: &Tolerance) -> IoResult<ModelPoint> {
    let declared = match v.get("model") {
        Some(Value::String(s)) => Some(parse_tag(s)?),
        Some(_) => return Err(IoError::Parse("model must be a string".into())),
        None => None,
    };
    let tag = match (declared, expected) {
        (Some(a), Some(b)) if a != b => {
            return Err(IoError::Parse(format!("point is in model {} but {} was requested", a.letter(), b.letter())))
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(IoError::Parse("point has no model field".into())),
    };
    let m = MatrixJson::deserialize(v)?.to_cmat()?;
    Ok(ModelPoint::new(tag, m, tol)?)
}

pub fn kpair_from_value(v: &Value, tol: &Tolerance) -> IoResult<KPair> {
    let j = KPairJson::deserialize(v)?;
    let tag = parse_tag(&j.tag)?;
    Ok(KPair::with_tol(tag, j.x1.to_cmat()?, j.x2.to_cmat()?, tol)?)
}

pub fn reflection_from_value(v: &Value, tol: &Tolerance) -> IoResult<Reflection> {
    let j = ReflectionJson::deserialize(v)?;
    let tag = parse_tag(&j.tag)?;
    Ok(Reflection::with_tol(tag, j.eps.to_block2()?, crate::reflections::REFLECTION_TOL, tol)?)
}

pub fn parse_json(text: &str) -> IoResult<Value> {
    Ok(serde_json::from_str(text)?)
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV header: `t`, then `re_i_j` for every entry, then `im_i_j`.
pub fn csv_header(n: usize) -> String {
    let mut cols = vec!["t".to_string()];
    for part in ["re", "im"] {
        for i in 0..n {
            for j in 0..n {
                cols.push(format!("{part}_{i}_{j}"));
            }
        }
    }
    cols.join(",")
}

pub fn csv_row(t: f64, m: &CMat) -> String {
    let entries = m.to_row_major();
    let mut cols = vec![fmt_f64(t)];
    cols.extend(entries.iter().map(|z| fmt_f64(z.re)));
    cols.extend(entries.iter().map(|z| fmt_f64(z.im)));
    cols.join(",")
}

pub fn samples_to_csv(samples: &[(f64, CMat)]) -> String {
    let n = samples.first().map_or(1, |(_, m)| m.n());
    let mut out = csv_header(n);
    out.push('\n');
    for (t, m) in samples {
        out.push_str(&csv_row(*t, m));
        out.push('\n');
    }
    out
}
