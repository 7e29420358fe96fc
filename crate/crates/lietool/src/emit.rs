//! Argument parsing and JSON shapes shared by the subcommands.

use liecore::rat::{self, Q};
use liecore::{Error, Result, RootSystem, Weight};
use serde_json::{json, Value};

/// Comma-separated rationals such as `1,0,1/2`.
pub fn parse_coords(s: &str) -> Result<Vec<Q>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(rat::parse).collect()
}

/// Dominant integral Dynkin labels from fundamental-weight coordinates.
pub fn parse_labels(rs: &RootSystem, s: &str) -> Result<Vec<i64>> {
    let coords = parse_coords(s)?;
    if coords.len() != rs.rank() {
        return Err(Error::Parse(format!("{s}: expected {} coordinates for {}", rs.rank(), rs.id)));
    }
    let labels: Option<Vec<i64>> = coords.iter().map(rat::as_int).collect();
    match labels {
        Some(l) if RootSystem::is_dominant_labels(&l) => Ok(l),
        _ => Err(Error::NotDominant(s.to_string())),
    }
}

pub fn rat_strings(v: &[Q]) -> Vec<String> {
    v.iter().map(rat::to_string).collect()
}

pub fn label_key(labels: &[i64]) -> String {
    labels.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// `{"algebra": "B3", "basis": "fundamental", "coords": ["1","0","1/2"]}`.
pub fn weight(rs: &RootSystem, w: &Weight) -> Value {
    json!({
        "algebra": rs.id.to_string(),
        "basis": "fundamental",
        "coords": rat_strings(&rs.labels_q(w)),
    })
}

pub fn labels(rs: &RootSystem, l: &[i64]) -> Value {
    weight(rs, &rs.from_labels(l))
}

pub fn matrix(m: &[Vec<Q>]) -> Value {
    Value::from(m.iter().map(|r| rat_strings(r)).collect::<Vec<_>>())
}

/// Adds the top-level schema key.
pub fn with_schema(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), Value::from(crate::verify::SCHEMA));
    }
    v
}
