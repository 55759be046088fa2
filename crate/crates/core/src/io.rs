//! Serialization: canonical JSON (the only format carrying semi-edges and
//! labels), DOT for drawing, and graph6 for plain simple graphs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::semigraph::{Ends, LinkId, SemiGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Graph6,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            "graph6" => Ok(Format::Graph6),
            other => Err(Error::Format(format!("unknown format {other:?}"))),
        }
    }
}

pub fn export(g: &SemiGraph, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(to_json(g)),
        Format::Dot => Ok(to_dot(g)),
        Format::Graph6 => to_graph6(g).map(|mut s| {
            s.push('\n');
            s
        }),
    }
}

fn link_entry(g: &SemiGraph, id: LinkId) -> Value {
    let link = g.link(id).expect("id taken from the graph");
    let mut entry = match link.ends.sorted() {
        (u, Some(v)) => vec![json!(u.0), json!(v.0)],
        (u, None) => vec![json!(u.0)],
    };
    if let Some(label) = &link.label {
        entry.push(json!(label));
    }
    Value::Array(entry)
}

/// Canonical JSON: vertices ascending, then edges and semi-edges each in
/// canonical link order, one link per line.
pub fn to_json(g: &SemiGraph) -> String {
    let order = g.canonical_link_order();
    let (semis, edges): (Vec<LinkId>, Vec<LinkId>) = order
        .into_iter()
        .partition(|&l| g.ends(l).map(|e| e.is_semi()).unwrap_or(false));
    let vertices: Vec<u32> = g.vertices().map(|v| v.0).collect();
    let mut out = String::new();
    out.push_str("{\n  \"vertices\": ");
    out.push_str(&serde_json::to_string(&vertices).expect("integers serialize"));
    for (name, list, last) in [("edges", &edges, false), ("semi_edges", &semis, true)] {
        let _ = write!(out, ",\n  \"{name}\": [");
        for (i, &l) in list.iter().enumerate() {
            out.push_str(if i == 0 { "\n    " } else { ",\n    " });
            out.push_str(&link_entry(g, l).to_string());
        }
        out.push_str(if list.is_empty() { "]" } else { "\n  ]" });
        if last {
            out.push_str("\n}\n");
        }
    }
    out
}

fn vertex_of(v: &Value) -> Result<VertexId> {
    v.as_u64()
        .and_then(|x| u32::try_from(x).ok())
        .map(VertexId)
        .ok_or_else(|| Error::Format(format!("bad vertex id {v}")))
}

fn label_of(v: Option<&Value>) -> Result<Option<String>> {
    match v {
        None => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(other) => Err(Error::Format(format!("bad label {other}"))),
    }
}

/// Parses canonical JSON. Link ids are assigned by position: edges first,
/// then semi-edges.
pub fn from_json(text: &str) -> Result<SemiGraph> {
    let doc: Value = serde_json::from_str(text)?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Format("top level must be an object".into()))?;
    let list = |key: &str| -> Result<Vec<Value>> {
        match obj.get(key) {
            None => Ok(Vec::new()),
            Some(Value::Array(a)) => Ok(a.clone()),
            Some(_) => Err(Error::Format(format!("{key:?} must be an array"))),
        }
    };
    let mut g = SemiGraph::new();
    for v in list("vertices")? {
        g.insert_vertex(vertex_of(&v)?)
            .map_err(|e| Error::Format(e.to_string()))?;
    }
    for e in list("edges")? {
        let parts = e
            .as_array()
            .filter(|a| a.len() == 2 || a.len() == 3)
            .ok_or_else(|| Error::Format(format!("bad edge entry {e}")))?;
        let id = g
            .add_edge(vertex_of(&parts[0])?, vertex_of(&parts[1])?)
            .map_err(|err| Error::Format(err.to_string()))?;
        if let Some(label) = label_of(parts.get(2))? {
            g.set_label(id, label).map_err(|err| Error::Format(err.to_string()))?;
        }
    }
    for s in list("semi_edges")? {
        let parts = s
            .as_array()
            .filter(|a| a.len() == 1 || a.len() == 2)
            .ok_or_else(|| Error::Format(format!("bad semi-edge entry {s}")))?;
        let id = g
            .add_semi_edge(vertex_of(&parts[0])?)
            .map_err(|err| Error::Format(err.to_string()))?;
        if let Some(label) = label_of(parts.get(1))? {
            g.set_label(id, label).map_err(|err| Error::Format(err.to_string()))?;
        }
    }
    Ok(g)
}

/// Round-trips `g` through JSON. The result has positional link ids; the
/// returned map sends each original link id to its new id.
pub fn canonicalize(g: &SemiGraph) -> (SemiGraph, BTreeMap<LinkId, LinkId>) {
    let canon = from_json(&to_json(g)).expect("canonical JSON parses");
    let order = g.canonical_link_order();
    let (semis, edges): (Vec<LinkId>, Vec<LinkId>) = order
        .into_iter()
        .partition(|&l| g.ends(l).map(|e| e.is_semi()).unwrap_or(false));
    let map = edges
        .into_iter()
        .chain(semis)
        .enumerate()
        .map(|(i, l)| (l, LinkId(i as u32)))
        .collect();
    (canon, map)
}

pub fn digest(g: &SemiGraph) -> String {
    hex::encode(Sha256::digest(to_json(g).as_bytes()))
}

pub fn to_dot(g: &SemiGraph) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  {v};");
    }
    for l in g.canonical_link_order() {
        let link = g.link(l).expect("own link");
        let attr = match &link.label {
            Some(label) => format!(" [label=\"{}\"]", label.replace('"', "\\\"")),
            None => String::new(),
        };
        match link.ends {
            Ends::Edge(u, v) => {
                let (u, v) = (u.min(v), u.max(v));
                let _ = writeln!(out, "  {u} -- {v}{attr};");
            }
            Ends::Semi(u) => {
                let _ = writeln!(out, "  stub{l} [shape=point, style=invis];");
                let _ = writeln!(out, "  {u} -- stub{l}{attr};");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Standard graph6 without header. Vertices are numbered in ascending id
/// order. Only simple graphs without semi-edges can be encoded.
pub fn to_graph6(g: &SemiGraph) -> Result<String> {
    if !g.is_graph() {
        return Err(Error::Format("graph6 cannot encode semi-edges".into()));
    }
    if !g.is_simple() {
        return Err(Error::Format("graph6 cannot encode parallel edges".into()));
    }
    let n = g.order();
    if n > 258_047 {
        return Err(Error::Format("graph too large for graph6".into()));
    }
    let pos: BTreeMap<VertexId, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push(126 as char);
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
    let mut adj = vec![false; n * n];
    for (_, link) in g.links() {
        if let Ends::Edge(a, b) = link.ends {
            let (a, b) = (pos[&a], pos[&b]);
            adj[a * n + b] = true;
            adj[b * n + a] = true;
        }
    }
    let mut bits = Vec::with_capacity(n * n / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(adj[i * n + j]);
        }
    }
    for chunk in bits.chunks(6) {
        let mut x = 0u8;
        for k in 0..6 {
            x = (x << 1) | u8::from(chunk.get(k).copied().unwrap_or(false));
        }
        out.push((x + 63) as char);
    }
    Ok(out)
}

pub fn from_graph6(text: &str) -> Result<SemiGraph> {
    let bytes: Vec<u8> = text.trim().bytes().collect();
    let bad = || Error::Format("malformed graph6".into());
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad());
    }
    let (n, body) = match bytes.first() {
        None => return Err(bad()),
        Some(126) => {
            if bytes.len() < 4 || bytes[1] == 126 {
                return Err(bad());
            }
            let n = bytes[1..4]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &bytes[4..])
        }
        Some(&b) => ((b - 63) as usize, &bytes[1..]),
    };
    let need = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if body.len() != need {
        return Err(bad());
    }
    let mut g = SemiGraph::with_vertices(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(VertexId(i as u32), VertexId(j as u32))?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Reads JSON or graph6, deciding by the first non-blank character.
pub fn read_graph(path: &Path) -> Result<SemiGraph> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        from_json(&text)
    } else {
        from_graph6(&text)
    }
}
