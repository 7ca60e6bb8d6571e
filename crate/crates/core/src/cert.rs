//! The certificate exchanged between the decomposer, the verifier and files.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::Vertex;

/// A matching plus an oriented remainder, with an order witnessing
/// acyclicity: every arc `u -> v` has `v` earlier than `u`.
///
/// Field order is alphabetical so the derived JSON is already canonical.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NiceDecomposition {
    /// `(tail, head)` pairs.
    pub arcs: Vec<(Vertex, Vertex)>,
    /// Present when the certificate is nice with respect to this edge.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_edge: Option<(Vertex, Vertex)>,
    /// Edges as `(min, max)`.
    pub matching: Vec<(Vertex, Vertex)>,
    pub order: Vec<Vertex>,
}

pub(crate) fn undirected(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl NiceDecomposition {
    /// The certificate of a lone edge `xy`: matched, nothing oriented.
    pub fn base(x: Vertex, y: Vertex) -> Self {
        NiceDecomposition {
            arcs: Vec::new(),
            boundary_edge: Some((x, y)),
            matching: vec![undirected(x, y)],
            order: vec![x, y],
        }
    }

    /// Sorts arcs and matching edges; the order is left alone.
    pub fn normalize(&mut self) {
        for e in &mut self.matching {
            *e = undirected(e.0, e.1);
        }
        self.matching.sort_unstable();
        self.arcs.sort_unstable();
    }

    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    pub fn matched_vertices(&self) -> BTreeSet<Vertex> {
        self.matching.iter().flat_map(|&(a, b)| [a, b]).collect()
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.arcs.iter().filter(|a| a.0 == v).count()
    }

    /// Disjoint union; the boundary edge is dropped.
    pub fn merge_disjoint(parts: impl IntoIterator<Item = NiceDecomposition>) -> Self {
        let mut out = NiceDecomposition::default();
        for p in parts {
            out.arcs.extend(p.arcs);
            out.matching.extend(p.matching);
            out.order.extend(p.order);
        }
        out.normalized()
    }
}
