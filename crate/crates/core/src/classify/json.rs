//! Canonical JSON for orders: sorted keys, integer classes, rationals as
//! `"p/q"` strings.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::config::{BlowupPoint, CurveRecord, Parent, SurfaceModel};
use crate::error::{Error, Result};
use crate::lattice::{BasisTag, DivisorClass};
use crate::order::{OrderData, RamificationComponent};

fn base_json(b: BasisTag) -> Value {
    match b {
        BasisTag::P2 => json!({"type": "P2"}),
        BasisTag::Hirzebruch(n) => json!({"type": "F", "n": n}),
    }
}

fn class_json(c: &DivisorClass) -> Value {
    Value::Array(c.coeffs_base.iter().map(|x| json!(x.to_integer())).collect())
}

fn mults_json(m: &BTreeMap<String, u32>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.clone(), json!(v))).collect())
}

fn curve_json(c: &CurveRecord) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("id".into(), json!(c.id));
    m.insert("class".into(), class_json(&c.cls));
    m.insert("mults".into(), mults_json(&c.mults));
    if let Some(p) = &c.exceptional_of {
        m.insert("exceptional_of".into(), json!(p));
    }
    m
}

pub fn order_to_value(o: &OrderData) -> Value {
    let components: Vec<Value> = o
        .components
        .iter()
        .map(|c| {
            let mut m = curve_json(&c.curve);
            m.insert("id".into(), json!(c.id));
            m.insert("e".into(), json!(c.e));
            m.insert("nodes_at".into(), json!(o.nodes_at(&c.id)));
            if !c.annotations.is_empty() {
                m.insert("annotations".into(), json!(c.annotations));
            }
            Value::Object(m)
        })
        .collect();
    let points: Vec<Value> = o
        .surface
        .points
        .iter()
        .map(|p| {
            let parent = match &p.parent {
                Parent::Base => "base".to_string(),
                Parent::Point(q) => q.clone(),
            };
            json!({"id": p.id, "parent": parent, "on_D": p.on_d, "node": p.node})
        })
        .collect();
    let curves: Vec<Value> = o
        .surface
        .curves
        .iter()
        .map(|c| {
            let mut m = curve_json(c);
            m.insert("irreducible".into(), json!(c.irreducible));
            Value::Object(m)
        })
        .collect();
    json!({
        "base": base_json(o.base()),
        "components": components,
        "points": points,
        "curves": curves,
    })
}

pub fn order_to_string(o: &OrderData) -> String {
    to_pretty(&order_to_value(o))
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are always serializable");
    s.push('\n');
    s
}

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, ctx: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| err(format!("{ctx}: missing `{key}`")))
}

fn as_obj<'a>(v: &'a Value, ctx: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(format!("{ctx}: expected an object")))
}

fn as_str<'a>(v: &'a Value, ctx: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| err(format!("{ctx}: expected a string")))
}

fn as_bool(v: &Value, ctx: &str) -> Result<bool> {
    v.as_bool().ok_or_else(|| err(format!("{ctx}: expected a boolean")))
}

fn as_u32(v: &Value, ctx: &str) -> Result<u32> {
    v.as_u64()
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| err(format!("{ctx}: expected a small non-negative integer")))
}

fn parse_base(v: &Value) -> Result<BasisTag> {
    let o = as_obj(v, "base")?;
    match as_str(field(o, "type", "base")?, "base.type")? {
        "P2" => Ok(BasisTag::P2),
        "F" => {
            let n = as_u32(field(o, "n", "base")?, "base.n")?;
            if n > 2 {
                return Err(err(format!("base F{n} is not supported (n must be 0, 1 or 2)")));
            }
            Ok(BasisTag::Hirzebruch(n))
        }
        t => Err(err(format!("unknown base type `{t}`"))),
    }
}

fn parse_class(base: BasisTag, v: &Value, ctx: &str) -> Result<DivisorClass> {
    let arr = v.as_array().ok_or_else(|| err(format!("{ctx}: class must be an array")))?;
    let ints = arr
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| err(format!("{ctx}: class entries must be integers"))))
        .collect::<Result<Vec<_>>>()?;
    DivisorClass::from_ints(base, &ints, &[])
        .map_err(|_| err(format!("{ctx}: class {ints:?} has the wrong length for {base}")))
}

fn parse_mults(v: Option<&Value>, ctx: &str) -> Result<BTreeMap<String, u32>> {
    let Some(v) = v else {
        return Ok(BTreeMap::new());
    };
    let o = as_obj(v, ctx)?;
    let mut out = BTreeMap::new();
    for (k, m) in o {
        let m = as_u32(m, ctx)?;
        if m > 0 {
            out.insert(k.clone(), m);
        }
    }
    Ok(out)
}

fn parse_curve(base: BasisTag, v: &Value, ctx: &str) -> Result<(Map<String, Value>, CurveRecord)> {
    let o = as_obj(v, ctx)?;
    let id = as_str(field(o, "id", ctx)?, ctx)?.to_string();
    let ctx = format!("{ctx} `{id}`");
    let cls = parse_class(base, field(o, "class", &ctx)?, &ctx)?;
    let mults = parse_mults(o.get("mults"), &ctx)?;
    let exceptional_of = o.get("exceptional_of").map(|p| as_str(p, &ctx).map(str::to_string)).transpose()?;
    let irreducible = o.get("irreducible").map(|b| as_bool(b, &ctx)).transpose()?.unwrap_or(true);
    Ok((o.clone(), CurveRecord { id, cls, mults, irreducible, exceptional_of }))
}

pub fn order_from_value(v: &Value) -> Result<OrderData> {
    let top = as_obj(v, "order")?;
    let base = parse_base(field(top, "base", "order")?)?;
    let mut s = SurfaceModel::new(base);
    if let Some(points) = top.get("points") {
        for p in points.as_array().ok_or_else(|| err("points must be an array"))? {
            let o = as_obj(p, "point")?;
            let id = as_str(field(o, "id", "point")?, "point.id")?.to_string();
            let parent = match as_str(field(o, "parent", &id)?, "point.parent")? {
                "base" => Parent::Base,
                q => Parent::Point(q.to_string()),
            };
            let on_d = as_bool(field(o, "on_D", &id)?, "point.on_D")?;
            let node = as_bool(field(o, "node", &id)?, "point.node")?;
            s.points.push(BlowupPoint { id, parent, on_d, node });
        }
    }
    if let Some(curves) = top.get("curves") {
        for c in curves.as_array().ok_or_else(|| err("curves must be an array"))? {
            s.curves.push(parse_curve(base, c, "curve")?.1);
        }
    }
    let mut components = Vec::new();
    let mut declared_nodes = Vec::new();
    if let Some(comps) = top.get("components") {
        for c in comps.as_array().ok_or_else(|| err("components must be an array"))? {
            let (raw, curve) = parse_curve(base, c, "component")?;
            let e = as_u32(field(&raw, "e", &curve.id)?, "component.e")?;
            let annotations = match raw.get("annotations") {
                None => Vec::new(),
                Some(a) => a
                    .as_array()
                    .ok_or_else(|| err("annotations must be an array"))?
                    .iter()
                    .map(|x| as_str(x, "annotation").map(str::to_string))
                    .collect::<Result<Vec<_>>>()?,
            };
            if let Some(n) = raw.get("nodes_at") {
                let ids = n
                    .as_array()
                    .ok_or_else(|| err("nodes_at must be an array"))?
                    .iter()
                    .map(|x| as_str(x, "nodes_at").map(str::to_string))
                    .collect::<Result<Vec<_>>>()?;
                declared_nodes.push((curve.id.clone(), ids));
            }
            components.push(RamificationComponent { id: curve.id.clone(), curve, e, annotations });
        }
    }
    let o = OrderData::new(s, components)?;
    for (id, mut ids) in declared_nodes {
        ids.sort();
        let mut derived = o.nodes_at(&id);
        derived.sort();
        if ids != derived {
            return Err(Error::InconsistentConfiguration(format!(
                "component `{id}` declares nodes_at {ids:?} but its incidences give {derived:?}"
            )));
        }
    }
    Ok(o)
}

pub fn order_from_str(s: &str) -> Result<OrderData> {
    let v: Value = serde_json::from_str(s).map_err(|e| err(format!("malformed JSON: {e}")))?;
    order_from_value(&v)
}
