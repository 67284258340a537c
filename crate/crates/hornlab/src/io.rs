//! File formats: the network JSON schema, m-function and two-face value
//! tables, and the exact rational codec used by all of them.
//!
//! Tropical −∞ is always the JSON string `"-inf"`, never a float sentinel.
//! Weights are accepted as JSON numbers or as exact strings (`"3"`, `"-1/3"`,
//! `"2.5"`); emission uses exact strings for network weights and plain
//! numbers for m-values whenever they are exactly representable.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::multipath::MFunction;
use crate::network::{PlanarNetwork, Vertex, Weighting};
use crate::reconstruct::TwoFaceData;
use crate::scaling::AngleAssignment;
use crate::trop::Trop;
use crate::{Error, Result};

/// Parse `"p/q"`, `"-3"`, or `"2.5"` into an exact rational.
pub fn rational_from_str(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("cannot parse rational from {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().map_err(|_| bad())?;
        let den: BigInt = q.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let frac_num: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let mut value = BigRational::new(int_part.magnitude().clone().into(), BigInt::one())
            + BigRational::new(frac_num, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let num: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(num))
}

/// Exact string form: integers plainly, denominators of the form `2^a·5^b`
/// as decimals, everything else as `p/q`.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    let mut d = r.denom().clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if d.magnitude() == &1u32.into() && twos.max(fives) <= 30 {
        let k = twos.max(fives);
        let scale = BigInt::from(10u32).pow(k);
        let scaled = r * BigRational::from_integer(scale);
        let digits = scaled.to_integer().magnitude().to_string();
        let digits = format!("{:0>width$}", digits, width = k as usize + 1);
        let split = digits.len() - k as usize;
        let sign = if r.is_negative() { "-" } else { "" };
        return format!("{sign}{}.{}", &digits[..split], &digits[split..]);
    }
    format!("{}/{}", r.numer(), r.denom())
}

/// Tropical value from a JSON number or string.
pub fn trop_from_value(v: &Value) -> Result<Trop> {
    match v {
        Value::Number(num) => {
            let f = num
                .as_f64()
                .ok_or_else(|| Error::Parse(format!("bad number {num}")))?;
            Trop::from_f64(f)
        }
        Value::String(s) if s == "-inf" => Ok(Trop::NegInf),
        Value::String(s) => Ok(Trop::Fin(rational_from_str(s)?)),
        other => Err(Error::Parse(format!("expected number or string, got {other}"))),
    }
}

/// Emit a tropical value: `"-inf"`, a JSON number when exactly representable,
/// otherwise an exact rational string.
pub fn trop_to_value(t: &Trop) -> Value {
    match t {
        Trop::NegInf => Value::String("-inf".into()),
        Trop::Fin(r) => {
            if r.is_integer() {
                if let Some(i) = r.numer().to_i64() {
                    return Value::from(i);
                }
            }
            if let Some(f) = r.to_f64() {
                if let Some(back) = BigRational::from_float(f) {
                    if &back == r {
                        return serde_json::json!(f);
                    }
                }
            }
            Value::String(rational_to_string(r))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: u64,
    x: Value,
    y: Value,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    tail: u64,
    head: u64,
    weight: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    angle: Option<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct NetworkJson {
    rank: usize,
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
    #[serde(default)]
    verticals: Vec<Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum NetworksFileJson {
    Many { networks: Vec<NetworkJson> },
    Single(NetworkJson),
}

fn rational_from_value(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(num) => {
            let f = num
                .as_f64()
                .ok_or_else(|| Error::Parse(format!("bad number {num}")))?;
            BigRational::from_float(f)
                .ok_or_else(|| Error::Parse(format!("non-finite number {f}")))
        }
        Value::String(s) => rational_from_str(s),
        other => Err(Error::Parse(format!("expected number or string, got {other}"))),
    }
}

fn network_from_json(nj: &NetworkJson) -> Result<(Weighting<Trop>, AngleAssignment)> {
    let mut id_index = BTreeMap::new();
    let mut vertices = Vec::with_capacity(nj.vertices.len());
    for (idx, v) in nj.vertices.iter().enumerate() {
        if id_index.insert(v.id, idx).is_some() {
            return Err(Error::Parse(format!("duplicate vertex id {}", v.id)));
        }
        vertices.push(Vertex {
            x: rational_from_value(&v.x)?,
            y: rational_from_value(&v.y)?,
        });
    }
    let mut edges = Vec::with_capacity(nj.edges.len());
    let mut weights = Vec::with_capacity(nj.edges.len());
    let mut angles = Vec::with_capacity(nj.edges.len());
    for e in &nj.edges {
        let t = *id_index
            .get(&e.tail)
            .ok_or_else(|| Error::Parse(format!("unknown tail id {}", e.tail)))?;
        let h = *id_index
            .get(&e.head)
            .ok_or_else(|| Error::Parse(format!("unknown head id {}", e.head)))?;
        edges.push((t, h));
        weights.push(trop_from_value(&e.weight)?);
        angles.push(match e.angle {
            None => Complex64::new(1.0, 0.0),
            Some([re, im]) => Complex64::new(re, im),
        });
    }
    let verticals = nj
        .verticals
        .iter()
        .map(rational_from_value)
        .collect::<Result<Vec<_>>>()?;
    let net = Arc::new(PlanarNetwork::from_parts(nj.rank, vertices, edges, verticals)?);
    let w = Weighting::new(net, weights)?;
    let phi = AngleAssignment { angles };
    phi.validate()?;
    Ok((w, phi))
}

/// Parse a networks file: either a single network object or
/// `{"networks": [...]}`.
pub fn parse_networks(text: &str) -> Result<Vec<(Weighting<Trop>, AngleAssignment)>> {
    let parsed: NetworksFileJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let list = match parsed {
        NetworksFileJson::Many { networks } => networks,
        NetworksFileJson::Single(net) => vec![net],
    };
    if list.is_empty() {
        return Err(Error::Parse("no networks in input".into()));
    }
    list.iter().map(network_from_json).collect()
}

fn network_to_json(w: &Weighting<Trop>, phi: Option<&AngleAssignment>) -> NetworkJson {
    let net = &w.net;
    NetworkJson {
        rank: net.rank(),
        vertices: net
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| VertexJson {
                id: i as u64,
                x: Value::String(rational_to_string(&v.x)),
                y: Value::String(rational_to_string(&v.y)),
            })
            .collect(),
        edges: net
            .edges()
            .iter()
            .enumerate()
            .map(|(e, &(t, h))| EdgeJson {
                tail: t as u64,
                head: h as u64,
                weight: match &w.weights[e] {
                    Trop::NegInf => Value::String("-inf".into()),
                    Trop::Fin(r) => Value::String(rational_to_string(r)),
                },
                angle: phi.and_then(|p| {
                    let a = p.angles[e];
                    if (a - Complex64::new(1.0, 0.0)).norm() < 1e-15 {
                        None
                    } else {
                        Some([a.re, a.im])
                    }
                }),
            })
            .collect(),
        verticals: net
            .verticals()
            .iter()
            .map(|x| Value::String(rational_to_string(x)))
            .collect(),
    }
}

/// Emit one weighted network as a JSON value.
pub fn network_to_value(w: &Weighting<Trop>, phi: Option<&AngleAssignment>) -> Value {
    serde_json::to_value(network_to_json(w, phi)).expect("network serialization")
}

#[derive(Serialize, Deserialize)]
struct MValueJson {
    alpha: Vec<usize>,
    m: Value,
}

#[derive(Serialize, Deserialize)]
struct MFunctionJson {
    n: usize,
    k: usize,
    values: Vec<MValueJson>,
}

pub fn mfunction_to_string(m: &MFunction) -> String {
    let values = m
        .values()
        .iter()
        .map(|(alpha, v)| MValueJson { alpha: alpha.clone(), m: trop_to_value(v) })
        .collect();
    let j = MFunctionJson { n: m.n, k: m.k, values };
    serde_json::to_string_pretty(&j).expect("m-function serialization")
}

pub fn parse_mfunction(text: &str) -> Result<MFunction> {
    let j: MFunctionJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut values = BTreeMap::new();
    for item in &j.values {
        values.insert(item.alpha.clone(), trop_from_value(&item.m)?);
    }
    MFunction::from_values(j.n, j.k, values)
}

#[derive(Serialize, Deserialize)]
struct TwoFaceValueJson {
    index: Vec<usize>,
    m: Value,
}

#[derive(Serialize, Deserialize)]
struct TwoFaceJson {
    n: usize,
    values: Vec<TwoFaceValueJson>,
}

pub fn two_face_to_string(x: &TwoFaceData) -> String {
    let values = x
        .values()
        .iter()
        .map(|(p, v)| TwoFaceValueJson { index: p.clone(), m: trop_to_value(v) })
        .collect();
    serde_json::to_string_pretty(&TwoFaceJson { n: x.n, values }).expect("two-face serialization")
}

pub fn parse_two_face(text: &str) -> Result<TwoFaceData> {
    let j: TwoFaceJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut values = BTreeMap::new();
    for item in &j.values {
        values.insert(item.index.clone(), trop_from_value(&item.m)?);
    }
    TwoFaceData::new(j.n, values)
}
