//! JSON reports: exact rationals plus decimal renderings, reproducible
//! byte-for-byte per seed apart from the timing field.

use serde::Serialize;
use serde_json::{json, Map, Value};

use regdepth::depth::{DepthCertificate, DepthWitness};
use regdepth::geometry::{Flat, Hyperplane, Pairing, Point};
use regdepth::to_decimal;
use regdepth::Scalar;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub input_digest: Option<String>,
    pub parameters: Value,
    pub result: Value,
    /// Wall time; excluded from reproducibility comparisons.
    pub timing_ms: f64,
}

pub fn scalar_value(v: &Scalar) -> Value {
    json!({ "exact": v.to_string(), "decimal": to_decimal(v) })
}

pub fn scalars_value(vs: &[Scalar]) -> Value {
    Value::Array(vs.iter().map(scalar_value).collect())
}

pub fn point_value(p: &Point) -> Value {
    scalars_value(p.coords())
}

pub fn hyperplane_value(h: &Hyperplane) -> Value {
    json!({
        "normal": scalars_value(&h.normal.0),
        "offset": scalar_value(&h.offset),
    })
}

pub fn flat_value(f: &Flat) -> Value {
    match f {
        Flat::Affine(af) => json!({
            "kind": "affine",
            "k": af.k(),
            "anchor": point_value(af.anchor()),
            "span": Value::Array(af.span().iter().map(|v| scalars_value(&v.0)).collect()),
            "text": flat_text(f),
        }),
        Flat::VerticalInfinity { j } => json!({
            "kind": "vertical-infinity",
            "j": j,
        }),
    }
}

/// The CLI wire form of a flat: "anchor;span[;span]".
pub fn flat_text(f: &Flat) -> String {
    match f {
        Flat::Affine(af) => {
            let fmt = |vals: &[Scalar]| -> String {
                vals.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let mut parts = vec![fmt(af.anchor().coords())];
            for v in af.span() {
                parts.push(fmt(&v.0));
            }
            parts.join(";")
        }
        Flat::VerticalInfinity { j } => format!("vertical-infinity:{j}"),
    }
}

pub fn certificate_value(cert: &DepthCertificate) -> Value {
    let witness = match &cert.witness {
        DepthWitness::Wedge(w) => json!({
            "kind": "double-wedge",
            "h1": hyperplane_value(&w.h1),
            "h2": w.h2.as_ref().map(hyperplane_value).unwrap_or(Value::String("at-infinity".into())),
            "pairing": match w.pairing { Pairing::Same => "same", Pairing::Opposite => "opposite" },
        }),
        DepthWitness::VerticalFlat { containing } => json!({
            "kind": "vertical-flat",
            "containing": hyperplane_value(containing),
        }),
    };
    json!({
        "depth": cert.depth,
        "witness": witness,
        "contained_indices": cert.contained_indices,
    })
}

pub fn params(entries: &[(&str, Value)]) -> Value {
    let mut m = Map::new();
    for (k, v) in entries {
        m.insert((*k).to_string(), v.clone());
    }
    Value::Object(m)
}
