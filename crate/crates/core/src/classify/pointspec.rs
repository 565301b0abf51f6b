//! Textual point specifications for `dporders blowup --at`.
//!
//! A spec is a comma-separated list of `key=value` pairs:
//!
//! * `id=<name>` (required)
//! * `parent=<point>` for an infinitely near point
//! * `on=<component>` for a smooth point of `D`
//! * `node=<A>+<B>` for a crossing of two components, `node=<C>` for a node
//!   of a single component
//! * `curve=<id>[:<mult>]`, repeatable, for declared curves through the point
//!
//! With neither `on` nor `node` the point lies off `D`.

use crate::error::{Error, Result};
use crate::order::{Location, PointSpec};

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_point_spec(s: &str) -> Result<PointSpec> {
    let mut id = None;
    let mut parent = None;
    let mut location = Location::OffD;
    let mut curves = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| err(format!("point spec: `{part}` is not key=value")))?;
        let v = v.trim();
        if v.is_empty() {
            return Err(err(format!("point spec: empty value for `{k}`")));
        }
        match k.trim() {
            "id" => id = Some(v.to_string()),
            "parent" => parent = Some(v.to_string()),
            "on" | "node" if location != Location::OffD => {
                return Err(err("point spec: give at most one of `on` and `node`"))
            }
            "on" => location = Location::Smooth(v.to_string()),
            "node" => {
                location = match v.split_once('+') {
                    Some((a, b)) => Location::Node(a.trim().to_string(), b.trim().to_string()),
                    None => Location::SelfNode(v.to_string()),
                }
            }
            "curve" => {
                let (c, m) = match v.split_once(':') {
                    Some((c, m)) => {
                        let m = m
                            .trim()
                            .parse::<u32>()
                            .map_err(|_| err(format!("point spec: bad multiplicity in `{v}`")))?;
                        (c.trim(), m)
                    }
                    None => (v, 1),
                };
                curves.push((c.to_string(), m));
            }
            other => return Err(err(format!("point spec: unknown key `{other}`"))),
        }
    }
    let id = id.ok_or_else(|| err("point spec: missing `id`"))?;
    let mut spec = PointSpec { location, curves, ..PointSpec::off(&id) };
    if let Some(p) = parent {
        spec = spec.near(&p);
    }
    Ok(spec)
}
