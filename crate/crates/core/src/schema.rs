//! The JSON sequence schema shared by the library and the CLI.
//!
//! Finite sequences:  {"kind": "finite", "coords": {"1": "3/2", "4": "-1/3"}}
//! Lazy families:     {"kind": "power", "p": "1/2"}
//!                    {"kind": "exponential", "lambda": "-1"}
//!                    {"kind": "exponential", "lambda": {"re": "0", "im": "1"}}
//!                    {"kind": "constant", "c": "1"}
//!                    {"kind": "eigvec-unbounded", "lambda": "3", "w": "2"}
//!                    {"kind": "scaled", "scale": "2", "inner": {...}}
//!
//! Rationals travel as `"num/den"` strings (plain integers allowed);
//! complex scalars as `{"re": ..., "im": ...}` objects. Values are never
//! rounded: decimal rendering is a separate, display-only concern.

use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::lazy::LazySeq;
use crate::scalar::{parse_rat, Scalar};
use crate::seq::FiniteSeq;

/// A parsed sequence input: finite or lazy.
#[derive(Clone, Debug)]
pub enum AnySeq {
    Finite(FiniteSeq),
    Lazy(LazySeq),
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Rational(r) => Value::String(r.to_string()),
        Scalar::Complex { re, im } => json!({
            "re": re.to_string(),
            "im": im.to_string(),
        }),
    }
}

pub fn scalar_from_json(v: &Value) -> Result<Scalar, Error> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => {
            // integers only; anything fractional must be exact, i.e. a string
            if let Some(i) = n.as_i64() {
                Ok(Scalar::from_int(i))
            } else {
                Err(Error::Parse(format!(
                    "non-integer JSON number {n}; use an exact \"num/den\" string"
                )))
            }
        }
        Value::Object(map) => {
            let re = map
                .get("re")
                .ok_or_else(|| Error::Parse("complex object needs \"re\"".into()))?;
            let im = map
                .get("im")
                .ok_or_else(|| Error::Parse("complex object needs \"im\"".into()))?;
            let re = rat_from_json(re)?;
            let im = rat_from_json(im)?;
            Ok(Scalar::complex(re, im))
        }
        other => Err(Error::Parse(format!("cannot read scalar from {other}"))),
    }
}

fn rat_from_json(v: &Value) -> Result<crate::scalar::Rat, Error> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => n
            .as_i64()
            .map(|i| crate::scalar::rat_int(i))
            .ok_or_else(|| Error::Parse(format!("non-integer JSON number {n}"))),
        other => Err(Error::Parse(format!("cannot read rational from {other}"))),
    }
}

pub fn seq_to_json(x: &FiniteSeq) -> Value {
    let mut coords = Map::new();
    for (k, v) in x.iter() {
        coords.insert(k.to_string(), scalar_to_json(v));
    }
    json!({ "kind": "finite", "coords": coords })
}

pub fn lazy_to_json(s: &LazySeq) -> Result<Value, Error> {
    Ok(match s {
        LazySeq::Power { p } => json!({ "kind": "power", "p": p.to_string() }),
        LazySeq::Exponential { lambda } => {
            json!({ "kind": "exponential", "lambda": scalar_to_json(lambda) })
        }
        LazySeq::Constant { c } => json!({ "kind": "constant", "c": scalar_to_json(c) }),
        LazySeq::EigvecUnbounded { lambda, w } => json!({
            "kind": "eigvec-unbounded",
            "lambda": scalar_to_json(lambda),
            "w": scalar_to_json(w),
        }),
        LazySeq::Scaled { scale, inner } => json!({
            "kind": "scaled",
            "scale": scalar_to_json(scale),
            "inner": lazy_to_json(inner)?,
        }),
        LazySeq::Custom { label, .. } => {
            return Err(Error::Unsupported(format!(
                "custom family {label} has no serialized form"
            )))
        }
    })
}

pub fn any_to_json(s: &AnySeq) -> Result<Value, Error> {
    match s {
        AnySeq::Finite(x) => Ok(seq_to_json(x)),
        AnySeq::Lazy(l) => lazy_to_json(l),
    }
}

pub fn any_from_json(v: &Value) -> Result<AnySeq, Error> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("sequence object needs a \"kind\" field".into()))?;
    match kind {
        "finite" => {
            let coords = v
                .get("coords")
                .and_then(Value::as_object)
                .ok_or_else(|| Error::Parse("finite sequence needs a \"coords\" object".into()))?;
            let mut pairs = Vec::with_capacity(coords.len());
            for (key, val) in coords {
                let k: u64 = key
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad index {key:?}")))?;
                if k == 0 {
                    return Err(Error::Parse("indices are 1-based".into()));
                }
                pairs.push((k, scalar_from_json(val)?));
            }
            Ok(AnySeq::Finite(FiniteSeq::from_pairs(pairs)))
        }
        "power" => {
            let p = field(v, "p")?;
            Ok(AnySeq::Lazy(LazySeq::power(rat_from_json(p)?)))
        }
        "exponential" => {
            let lambda = scalar_from_json(field(v, "lambda")?)?;
            Ok(AnySeq::Lazy(LazySeq::exponential(lambda)))
        }
        "constant" => {
            let c = scalar_from_json(field(v, "c")?)?;
            Ok(AnySeq::Lazy(LazySeq::constant(c)))
        }
        "eigvec-unbounded" => {
            let lambda = scalar_from_json(field(v, "lambda")?)?;
            let w = scalar_from_json(field(v, "w")?)?;
            Ok(AnySeq::Lazy(LazySeq::eigvec_unbounded(lambda, w)?))
        }
        "scaled" => {
            let scale = scalar_from_json(field(v, "scale")?)?;
            match any_from_json(field(v, "inner")?)? {
                AnySeq::Lazy(inner) => Ok(AnySeq::Lazy(LazySeq::scaled(scale, inner))),
                AnySeq::Finite(x) => Ok(AnySeq::Finite(x.scale(&scale))),
            }
        }
        other => Err(Error::Parse(format!("unknown sequence kind {other:?}"))),
    }
}

fn field<'v>(v: &'v Value, name: &str) -> Result<&'v Value, Error> {
    v.get(name)
        .ok_or_else(|| Error::Parse(format!("missing field {name:?}")))
}

pub fn any_from_str(s: &str) -> Result<AnySeq, Error> {
    let v: Value =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    any_from_json(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn finite_round_trip() {
        let x = FiniteSeq::from_pairs([
            (1, Scalar::from_ratio(3, 2)),
            (4, Scalar::from_ratio(-1, 3)),
            (9, Scalar::complex(rat(1, 2), rat(-2, 7))),
        ]);
        let v = seq_to_json(&x);
        let back = any_from_json(&v).unwrap();
        match back {
            AnySeq::Finite(y) => assert_eq!(y, x),
            _ => panic!("expected finite"),
        }
    }

    #[test]
    fn schema_shape_matches_spec_examples() {
        let parsed =
            any_from_str(r#"{"kind":"finite","coords":{"1":"3/2","4":"-1/3"}}"#).unwrap();
        match parsed {
            AnySeq::Finite(x) => {
                assert_eq!(x.get(1), Scalar::from_ratio(3, 2));
                assert_eq!(x.get(4), Scalar::from_ratio(-1, 3));
            }
            _ => panic!("expected finite"),
        }
        let parsed = any_from_str(r#"{"kind":"power","p":"1/2"}"#).unwrap();
        match parsed {
            AnySeq::Lazy(LazySeq::Power { p }) => assert_eq!(p, rat(1, 2)),
            other => panic!("expected power family, got {other:?}"),
        }
        let parsed =
            any_from_str(r#"{"kind":"exponential","lambda":{"re":"0","im":"1"}}"#).unwrap();
        match parsed {
            AnySeq::Lazy(LazySeq::Exponential { lambda }) => assert_eq!(lambda, Scalar::i()),
            other => panic!("expected exponential family, got {other:?}"),
        }
    }

    #[test]
    fn lazy_round_trip() {
        let fams = [
            LazySeq::power(rat(-3, 2)),
            LazySeq::exponential(Scalar::from_ratio(1, 2)),
            LazySeq::constant(Scalar::from_int(2)),
            LazySeq::eigvec_unbounded(Scalar::from_int(3), Scalar::from_int(2)).unwrap(),
            LazySeq::scaled(
                Scalar::from_int(-2),
                LazySeq::exponential(Scalar::from_ratio(1, 3)),
            ),
        ];
        for f in fams {
            let v = lazy_to_json(&f).unwrap();
            let back = any_from_json(&v).unwrap();
            match back {
                AnySeq::Lazy(g) => assert_eq!(g.describe(), f.describe()),
                _ => panic!("expected lazy"),
            }
        }
    }

    #[test]
    fn rejects_lossy_numbers() {
        assert!(any_from_str(r#"{"kind":"finite","coords":{"1":0.5}}"#).is_err());
        assert!(any_from_str(r#"{"kind":"finite","coords":{"0":"1"}}"#).is_err());
    }
}
