//! File formats: embedded graphs and certificates as canonical JSON, plain
//! edge lists, color lists, and DOT output for renderers.
//!
//! Canonical JSON is compact with sorted keys (rotation keys in numeric
//! order) and a trailing newline. Each rotation starts at its least
//! neighbor; the outer walk starts at its least rotation. Emitting what was
//! parsed reproduces canonical input byte for byte.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cert::NiceDecomposition;
use crate::certify::{ColorError, ListAssignment};
use crate::graph::{canonical_cycle, GraphError, PlaneGraph, SimpleGraph, Vertex};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error("vertex {0} is listed but has no rotation")]
    MissingRotation(Vertex),
    #[error("rotation given for undeclared vertex {0}")]
    UndeclaredRotation(Vertex),
    #[error("outer_face: {0}")]
    OuterFace(GraphError),
    #[error("boundary_edge: {0}")]
    BoundaryEdge(GraphError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("certificate names vertex {0}, which is not in the graph")]
    UnknownCertVertex(Vertex),
    #[error(transparent)]
    Lists(#[from] ColorError),
}

impl IoError {
    fn from_json(e: serde_json::Error) -> Self {
        IoError::Syntax { line: e.line(), column: e.column(), msg: strip_position(&e.to_string()) }
    }
}

/// serde_json appends " at line L column C"; the position is kept separately.
fn strip_position(s: &str) -> String {
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s.to_string(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    boundary_edge: Option<(Vertex, Vertex)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    outer_face: Option<Vec<Vertex>>,
    rotations: BTreeMap<Vertex, Vec<Vertex>>,
    vertices: Vec<Vertex>,
}

pub fn parse_graph(text: &str) -> Result<PlaneGraph, IoError> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(IoError::from_json)?;
    let declared: BTreeSet<Vertex> = doc.vertices.iter().copied().collect();
    if declared.len() != doc.vertices.len() {
        let mut seen = BTreeSet::new();
        let dup = doc.vertices.iter().find(|v| !seen.insert(**v)).unwrap();
        return Err(GraphError::DuplicateVertex(*dup).into());
    }
    if let Some(&v) = doc.rotations.keys().find(|v| !declared.contains(v)) {
        return Err(IoError::UndeclaredRotation(v));
    }
    if let Some(&v) = declared.iter().find(|v| !doc.rotations.contains_key(v)) {
        return Err(IoError::MissingRotation(v));
    }
    let mut g = PlaneGraph::new(doc.rotations)?;
    if let Some(walk) = &doc.outer_face {
        g = g.with_outer_walk(walk).map_err(IoError::OuterFace)?;
    }
    if let Some((x, y)) = doc.boundary_edge {
        g = g.with_boundary_edge(x, y).map_err(IoError::BoundaryEdge)?;
    }
    Ok(g)
}

pub fn emit_graph(g: &PlaneGraph) -> String {
    let rotations = g
        .vertices()
        .map(|v| {
            let r = g.neighbors(v);
            let start = r.iter().enumerate().min_by_key(|&(_, &u)| u).map_or(0, |(i, _)| i);
            (v, r[start..].iter().chain(&r[..start]).copied().collect())
        })
        .collect();
    let outer_face = g.outer_dart().and_then(|_| {
        let faces = g.faces();
        let walk = faces.face(faces.outer()?).vertices();
        (!walk.is_empty()).then(|| canonical_cycle(&walk))
    });
    let doc = GraphDoc { boundary_edge: g.boundary_edge(), outer_face, rotations, vertices: g.vertices().collect() };
    let mut s = serde_json::to_string(&doc).expect("graph documents serialize");
    s.push('\n');
    s
}

/// One `u v` pair per line; blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<SimpleGraph, IoError> {
    let mut edges = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let err = |msg: String| IoError::EdgeList { line, msg };
        if fields.len() != 2 {
            return Err(err(format!("expected two vertex ids, found {}", fields.len())));
        }
        let parse = |s: &str| s.parse::<Vertex>().map_err(|e| err(format!("{s:?}: {e}")));
        let (u, v) = (parse(fields[0])?, parse(fields[1])?);
        if u == v {
            return Err(err(format!("loop at {u}")));
        }
        if !edges.insert((u.min(v), u.max(v))) {
            return Err(err(format!("edge {u} {v} repeated")));
        }
    }
    Ok(SimpleGraph::from_edges(edges.into_iter().collect()))
}

pub fn emit_edge_list(g: &SimpleGraph) -> String {
    g.edges().iter().fold(String::new(), |mut s, (u, v)| {
        let _ = writeln!(s, "{u} {v}");
        s
    })
}

pub fn parse_cert(text: &str) -> Result<NiceDecomposition, IoError> {
    serde_json::from_str(text).map_err(IoError::from_json)
}

/// Every vertex named by `cert` must be a vertex of `g`.
pub fn check_cert_vertices(g: &SimpleGraph, cert: &NiceDecomposition) -> Result<(), IoError> {
    let named = cert
        .matching
        .iter()
        .chain(&cert.arcs)
        .chain(cert.boundary_edge.iter())
        .flat_map(|&(a, b)| [a, b])
        .chain(cert.order.iter().copied());
    for v in named {
        if g.index_of(v).is_none() {
            return Err(IoError::UnknownCertVertex(v));
        }
    }
    Ok(())
}

pub fn emit_cert(cert: &NiceDecomposition) -> String {
    let mut s = serde_json::to_string(&cert.clone().normalized()).expect("certificates serialize");
    s.push('\n');
    s
}

/// `{"v": [c1, c2, c3], ...}`.
pub fn parse_lists(text: &str) -> Result<ListAssignment, IoError> {
    let raw: BTreeMap<Vertex, Vec<u32>> = serde_json::from_str(text).map_err(IoError::from_json)?;
    Ok(ListAssignment::new(raw)?)
}

/// Graphviz rendering: matching edges bold, arcs directed.
pub fn to_dot(g: &PlaneGraph, cert: Option<&NiceDecomposition>) -> String {
    let mut s = String::from("digraph G {\n  node [shape=circle];\n");
    for v in g.vertices() {
        let _ = writeln!(s, "  {v};");
    }
    match cert {
        Some(c) => {
            for (u, v) in &c.matching {
                let _ = writeln!(s, "  {u} -> {v} [dir=none, penwidth=3];");
            }
            for (t, h) in &c.arcs {
                let _ = writeln!(s, "  {t} -> {h};");
            }
        }
        None => {
            for (u, v) in g.edges() {
                let _ = writeln!(s, "  {u} -> {v} [dir=none];");
            }
        }
    }
    s.push_str("}\n");
    s
}
