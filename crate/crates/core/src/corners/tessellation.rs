//! Text format for complexes whose chambers are copies of one catalog polytope.
//!
//! ```text
//! # comment
//! dim 2; polytope pentagon; chambers 2
//! glue 0.0 1.0 : 0->0, 1->1
//! ```
//!
//! A `glue` line names two slots `chamber.facet` and the bijection between
//! the vertices of the first facet and those of the second, using the
//! polytope's own vertex ids. `→` is accepted in place of `->`.

use std::fmt::Write as _;

use super::{CornerComplex, CornersError, Gluing, Slot};
use crate::polytope::{catalog, FaceIso, FaceRef};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingSpec {
    pub a: Slot,
    pub b: Slot,
    pub map: Vec<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tessellation {
    pub dim: usize,
    pub polytope: String,
    pub chambers: usize,
    pub gluings: Vec<GluingSpec>,
}

impl Tessellation {
    pub fn build(&self) -> Result<CornerComplex, CornersError> {
        let p = catalog::load(&self.polytope)?;
        if p.dim() != self.dim {
            return Err(CornersError::Dimension(p.dim(), self.dim));
        }
        let gluings = self
            .gluings
            .iter()
            .map(|g| Gluing {
                a: g.a,
                b: g.b,
                iso: FaceIso::new(
                    FaceRef::new(self.dim - 1, g.a.facet as usize),
                    FaceRef::new(self.dim - 1, g.b.facet as usize),
                    g.map.clone(),
                ),
            })
            .collect();
        CornerComplex::build(vec![p; self.chambers], gluings)
    }

    /// The tessellation of a complex whose chambers all share one polytope.
    pub fn of_complex(cx: &CornerComplex) -> Option<Tessellation> {
        let name = cx.chamber(0).name();
        if cx.chambers().iter().any(|p| p.name() != name) {
            return None;
        }
        Some(Tessellation {
            dim: cx.dim(),
            polytope: name.to_string(),
            chambers: cx.chambers().len(),
            gluings: cx
                .gluings()
                .iter()
                .map(|g| GluingSpec { a: g.a, b: g.b, map: g.iso.vertex_map.clone() })
                .collect(),
        })
    }
}

pub fn write_tessellation(t: &Tessellation) -> String {
    let mut out = format!("dim {}; polytope {}; chambers {}\n", t.dim, t.polytope, t.chambers);
    for g in &t.gluings {
        let pairs: Vec<String> = g.map.iter().map(|(s, d)| format!("{s}->{d}")).collect();
        let _ = writeln!(out, "glue {} {} : {}", g.a, g.b, pairs.join(", "));
    }
    out
}

fn parse_slot(s: &str) -> Option<Slot> {
    let (c, f) = s.split_once('.')?;
    Some(Slot { chamber: c.parse().ok()?, facet: f.parse().ok()? })
}

pub fn parse_tessellation(text: &str) -> Result<Tessellation, CornersError> {
    let mut dim = None;
    let mut polytope = None;
    let mut chambers = None;
    let mut gluings = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |msg: &str| CornersError::Format { line: k + 1, msg: msg.to_string() };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("glue ") {
            let (slots, map) = rest.split_once(':').ok_or_else(|| err("missing `:`"))?;
            let slots: Vec<&str> = slots.split_whitespace().collect();
            let [a, b] = slots[..] else {
                return Err(err("expected two slots"));
            };
            let a = parse_slot(a).ok_or_else(|| err("bad slot"))?;
            let b = parse_slot(b).ok_or_else(|| err("bad slot"))?;
            let mut pairs = Vec::new();
            for item in map.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let item = item.replace('→', "->");
                let (s, d) = item.split_once("->").ok_or_else(|| err("expected `v->v`"))?;
                let s = s.trim().parse().map_err(|_| err("bad vertex"))?;
                let d = d.trim().parse().map_err(|_| err("bad vertex"))?;
                pairs.push((s, d));
            }
            gluings.push(GluingSpec { a, b, map: pairs });
            continue;
        }
        for field in line.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = field.split_once(char::is_whitespace).ok_or_else(|| err("expected `key value`"))?;
            let value = value.trim();
            match key {
                "dim" => dim = Some(value.parse().map_err(|_| err("bad dimension"))?),
                "polytope" => polytope = Some(value.to_string()),
                "chambers" => chambers = Some(value.parse().map_err(|_| err("bad chamber count"))?),
                _ => return Err(err(&format!("unknown field `{key}`"))),
            }
        }
    }
    let missing = |what: &str| CornersError::Format { line: 0, msg: format!("missing `{what}` in header") };
    Ok(Tessellation {
        dim: dim.ok_or_else(|| missing("dim"))?,
        polytope: polytope.ok_or_else(|| missing("polytope"))?,
        chambers: chambers.ok_or_else(|| missing("chambers"))?,
        gluings,
    })
}
