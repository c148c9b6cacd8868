//! JSON encodings. Rationals are canonical `p/q` strings.

use serde_json::{json, Value};

use ordercalc::dynreal::{Affine, PLMap};
use ordercalc::exact::{parse_rational, Rational};
use ordercalc::free::{BoxGraph, BoxRealization, Connector, GluedAction, ReducedWord};
use ordercalc::order::{CrossingWitness, Element, Exactness};

use crate::universe::Universe;

pub fn rat(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn point(p: &(Rational, Rational)) -> Value {
    json!([rat(&p.0), rat(&p.1)])
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str, String> {
    v.as_str().ok_or_else(|| format!("{what}: expected a string"))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, String> {
    v.as_array().ok_or_else(|| format!("{what}: expected an array"))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, String> {
    v.get(key).ok_or_else(|| format!("missing field {key:?}"))
}

fn as_u64(v: &Value, what: &str) -> Result<u64, String> {
    v.as_u64().ok_or_else(|| format!("{what}: expected a non-negative integer"))
}

/// Accepts a string or an integer.
pub fn parse_rat(v: &Value, what: &str) -> Result<Rational, String> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| format!("{what}: {e}")),
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| format!("{what}: expected an integer or a string"))?;
            Ok(Rational::from_integer(i.into()))
        }
        _ => Err(format!("{what}: expected a rational")),
    }
}

fn parse_point(v: &Value, what: &str) -> Result<(Rational, Rational), String> {
    match as_array(v, what)?.as_slice() {
        [x, y] => Ok((parse_rat(x, what)?, parse_rat(y, what)?)),
        _ => Err(format!("{what}: expected [x, y]")),
    }
}

fn points(v: &Value, what: &str) -> Result<Vec<(Rational, Rational)>, String> {
    as_array(v, what)?.iter().map(|p| parse_point(p, what)).collect()
}

fn affine(a: &Affine) -> Value {
    json!([rat(&a.slope), rat(&a.intercept)])
}

pub fn plmap(m: &PLMap) -> Value {
    json!({
        "breakpoints": m.breakpoints().iter().map(point).collect::<Vec<_>>(),
        "left": affine(m.left()),
        "right": affine(m.right()),
    })
}

pub fn parse_plmap(v: &Value) -> Result<PLMap, String> {
    let bps = points(field(v, "breakpoints")?, "breakpoints")?;
    let (ls, li) = parse_point(field(v, "left")?, "left")?;
    let (rs, ri) = parse_point(field(v, "right")?, "right")?;
    PLMap::new(bps, Affine::new(ls, li), Affine::new(rs, ri)).map_err(|e| e.to_string())
}

pub fn crossing<E: Element>(u: &Universe<E>, c: &CrossingWitness<E>) -> Value {
    json!({
        "f": u.format(&c.f),
        "g": u.format(&c.g),
        "u": u.format(&c.u),
        "v": u.format(&c.v),
        "w": u.format(&c.w),
        "n": c.n,
        "m": c.m,
        "checked_bound": c.checked_bound,
        "exactness": match c.exactness {
            Exactness::ExactForAll => "ExactForAll",
            Exactness::BoundedOnly => "BoundedOnly",
        },
    })
}

/// The quintuple may sit at the top level or under `payload.crossing`.
pub fn parse_crossing<E: Element>(u: &Universe<E>, v: &Value) -> Result<CrossingWitness<E>, String> {
    let v = match v.pointer("/payload/crossing") {
        Some(inner) => inner,
        None => v.get("crossing").unwrap_or(v),
    };
    let el = |k: &str| u.element(as_str(field(v, k)?, k)?);
    let exp = |k: &str| -> Result<u32, String> {
        u32::try_from(as_u64(field(v, k)?, k)?).map_err(|_| format!("{k}: too large"))
    };
    Ok(CrossingWitness {
        f: el("f")?,
        g: el("g")?,
        u: el("u")?,
        v: el("v")?,
        w: el("w")?,
        n: exp("n")?,
        m: exp("m")?,
        checked_bound: v.get("checked_bound").and_then(Value::as_u64).unwrap_or(0) as u32,
        exactness: Exactness::BoundedOnly,
    })
}

fn word(s: &str) -> Result<ReducedWord, String> {
    ReducedWord::parse(s).map_err(|e| e.to_string())
}

pub fn glued(ga: &GluedAction) -> Value {
    let boxes: Vec<Value> = ga
        .boxes
        .iter()
        .map(|b| {
            json!({
                "k": b.k,
                "radius": b.radius,
                "ordering": b.descriptor,
                "graphs": b.graphs.iter().map(|g| g.points.iter().map(point).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "table": b.table.iter().map(|(w, t)| json!([w.to_string(), rat(t)])).collect::<Vec<_>>(),
                "min": b.min.to_string(),
                "max": b.max.to_string(),
            })
        })
        .collect();
    let connectors: Vec<Value> = ga
        .connectors
        .iter()
        .map(|c| json!({"k": c.k, "case": c.case, "short": c.short.to_string(), "word": c.word.to_string()}))
        .collect();
    json!({
        "maps": ga.maps.iter().map(plmap).collect::<Vec<_>>(),
        "boxes": boxes,
        "connectors": connectors,
    })
}

pub fn parse_glued(v: &Value) -> Result<GluedAction, String> {
    let maps = as_array(field(v, "maps")?, "maps")?.iter().map(parse_plmap).collect::<Result<Vec<_>, _>>()?;
    let mut boxes = Vec::new();
    for b in as_array(field(v, "boxes")?, "boxes")? {
        let graphs = as_array(field(b, "graphs")?, "graphs")?
            .iter()
            .map(|g| points(g, "graph").map(|points| BoxGraph { points }))
            .collect::<Result<Vec<_>, _>>()?;
        let mut table = Vec::new();
        for row in as_array(field(b, "table")?, "table")? {
            match as_array(row, "table row")?.as_slice() {
                [w, t] => table.push((word(as_str(w, "table word")?)?, parse_rat(t, "table value")?)),
                _ => return Err("table row: expected [word, value]".into()),
            }
        }
        boxes.push(BoxRealization {
            k: field(b, "k")?.as_i64().ok_or("k: expected an integer")?,
            radius: as_u64(field(b, "radius")?, "radius")? as usize,
            descriptor: as_str(field(b, "ordering")?, "ordering")?.to_string(),
            graphs,
            table,
            min: word(as_str(field(b, "min")?, "min")?)?,
            max: word(as_str(field(b, "max")?, "max")?)?,
        });
    }
    if boxes.is_empty() {
        return Err("no boxes".into());
    }
    let mut connectors = Vec::new();
    for c in as_array(field(v, "connectors")?, "connectors")? {
        connectors.push(Connector {
            k: field(c, "k")?.as_i64().ok_or("k: expected an integer")?,
            case: as_u64(field(c, "case")?, "case")? as u8,
            short: word(as_str(field(c, "short")?, "short")?)?,
            word: word(as_str(field(c, "word")?, "word")?)?,
        });
    }
    Ok(GluedAction { maps, connectors, boxes })
}

/// `[{"radius": 2, "ordering": "magnus"}, …]`
pub fn parse_seeds(v: &Value) -> Result<Vec<(usize, String)>, String> {
    as_array(v, "seeds")?
        .iter()
        .map(|s| {
            let r = as_u64(field(s, "radius")?, "radius")? as usize;
            Ok((r, as_str(field(s, "ordering")?, "ordering")?.to_string()))
        })
        .collect()
}
