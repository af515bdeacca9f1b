//! Shared JSON helpers.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::rational::{fmt_q, parse_q, Vector, Q};

/// Accepts an integer or a `"p/q"` string.
pub fn parse_scalar(v: &Value) -> Result<Q> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Q::from_integer(i.into()))
            .ok_or_else(|| Error::Fixture(format!("{n} is not an integer; use \"p/q\""))),
        Value::String(s) => parse_q(s).ok_or_else(|| Error::Fixture(format!("bad rational {s:?}"))),
        other => Err(Error::Fixture(format!("expected a rational, got {other}"))),
    }
}

pub fn parse_vector(v: &[Value]) -> Result<Vector> {
    v.iter().map(parse_scalar).collect()
}

pub fn vector_to_json(v: &[Q]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(fmt_q(x))).collect())
}

/// `serialize_with` helper writing a rational as `"p/q"`.
pub fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

pub fn ser_q_vec<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_q))
}

pub fn ser_q_mat<S: serde::Serializer>(v: &[Vec<Q>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.iter().map(fmt_q).collect::<Vec<_>>()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn scalars() {
        assert_eq!(fmt_q(&parse_scalar(&json!(3)).unwrap()), "3");
        assert_eq!(fmt_q(&parse_scalar(&json!("-2/4")).unwrap()), "-1/2");
        assert!(parse_scalar(&json!(0.5)).is_err());
        assert!(parse_scalar(&json!(null)).is_err());
    }
}
