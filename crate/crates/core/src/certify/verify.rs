use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cert::{undirected, NiceDecomposition};
use crate::graph::{SimpleGraph, Vertex};

/// One failed clause of the certificate contract, with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    UnknownVertex { vertex: Vertex },
    ForeignEdge { edge: (Vertex, Vertex) },
    Uncovered { edge: (Vertex, Vertex) },
    CoveredTwice { edge: (Vertex, Vertex) },
    SharedVertex { vertex: Vertex, edges: [(Vertex, Vertex); 2] },
    OutDegree { vertex: Vertex, out: usize },
    NotSink { vertex: Vertex, out: usize },
    BoundaryUnmatched { edge: (Vertex, Vertex) },
    BoundaryMismatch { stated: Option<(Vertex, Vertex)>, expected: (Vertex, Vertex) },
    OrderMissing { vertex: Vertex },
    OrderRepeat { vertex: Vertex },
    OrderBroken { tail: Vertex, head: Vertex },
    Cycle { cycle: Vec<Vertex> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownVertex { vertex } => write!(f, "vertex {vertex} is not in the graph"),
            Violation::ForeignEdge { edge } => write!(f, "{}{} is not an edge of the graph", edge.0, edge.1),
            Violation::Uncovered { edge } => write!(f, "edge {}{} is neither matched nor oriented", edge.0, edge.1),
            Violation::CoveredTwice { edge } => write!(f, "edge {}{} appears more than once", edge.0, edge.1),
            Violation::SharedVertex { vertex, edges } => write!(
                f,
                "vertex {vertex} lies on matching edges {}{} and {}{}",
                edges[0].0, edges[0].1, edges[1].0, edges[1].1
            ),
            Violation::OutDegree { vertex, out } => write!(f, "d+({vertex}) = {out} exceeds 2"),
            Violation::NotSink { vertex, out } => write!(f, "boundary vertex {vertex} has d+ = {out}"),
            Violation::BoundaryUnmatched { edge } => write!(f, "boundary edge {}{} is not matched", edge.0, edge.1),
            Violation::BoundaryMismatch { stated, expected } => match stated {
                Some(s) => {
                    write!(f, "certificate names boundary {}{}, expected {}{}", s.0, s.1, expected.0, expected.1)
                }
                None => write!(f, "certificate names no boundary edge, expected {}{}", expected.0, expected.1),
            },
            Violation::OrderMissing { vertex } => write!(f, "vertex {vertex} is missing from the order"),
            Violation::OrderRepeat { vertex } => write!(f, "vertex {vertex} repeats in the order"),
            Violation::OrderBroken { tail, head } => write!(f, "arc {tail}->{head} points forward in the order"),
            Violation::Cycle { cycle } => write!(f, "directed cycle {cycle:?}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks a (2,1)-decomposition: matching, exact edge cover, out-degree at
/// most 2, and acyclicity both through the order and by direct search.
pub fn verify_plain(g: &SimpleGraph, cert: &NiceDecomposition) -> Verdict {
    let mut out = Vec::new();
    check_cover(g, cert, &mut out);
    check_matching(cert, &mut out);
    for (v, d) in out_degrees(cert) {
        if d > 2 {
            out.push(Violation::OutDegree { vertex: v, out: d });
        }
    }
    check_order(g, cert, &mut out);
    if let Some(cycle) = find_directed_cycle(&cert.arcs) {
        out.push(Violation::Cycle { cycle });
    }
    Verdict { violations: out }
}

/// [`verify_plain`] plus the nice conditions for boundary edge `e`.
pub fn verify_nice(g: &SimpleGraph, e: (Vertex, Vertex), cert: &NiceDecomposition) -> Verdict {
    let mut verdict = verify_plain(g, cert);
    let out = &mut verdict.violations;
    let (x, y) = e;
    if let Some(b) = cert.boundary_edge {
        if undirected(b.0, b.1) != undirected(x, y) {
            out.push(Violation::BoundaryMismatch { stated: Some(b), expected: e });
        }
    }
    if !cert.matching.iter().any(|&(a, b)| undirected(a, b) == undirected(x, y)) {
        out.push(Violation::BoundaryUnmatched { edge: e });
    }
    let degs = out_degrees(cert);
    for v in [x, y] {
        if let Some(&d) = degs.get(&v) {
            out.push(Violation::NotSink { vertex: v, out: d });
        }
    }
    verdict
}

fn out_degrees(cert: &NiceDecomposition) -> BTreeMap<Vertex, usize> {
    let mut d = BTreeMap::new();
    for &(t, _) in &cert.arcs {
        *d.entry(t).or_insert(0) += 1;
    }
    d
}

fn check_cover(g: &SimpleGraph, cert: &NiceDecomposition, out: &mut Vec<Violation>) {
    let mut seen = BTreeSet::new();
    let named = cert.matching.iter().chain(&cert.arcs);
    for &(a, b) in named {
        for v in [a, b] {
            if g.index_of(v).is_none() {
                out.push(Violation::UnknownVertex { vertex: v });
            }
        }
        let e = undirected(a, b);
        if !g.has_edge(a, b) {
            out.push(Violation::ForeignEdge { edge: e });
        } else if !seen.insert(e) {
            out.push(Violation::CoveredTwice { edge: e });
        }
    }
    for e in g.edges() {
        if !seen.contains(&e) {
            out.push(Violation::Uncovered { edge: e });
        }
    }
}

fn check_matching(cert: &NiceDecomposition, out: &mut Vec<Violation>) {
    let mut owner: BTreeMap<Vertex, (Vertex, Vertex)> = BTreeMap::new();
    for &(a, b) in &cert.matching {
        let e = undirected(a, b);
        for v in [a, b] {
            if let Some(&prev) = owner.get(&v) {
                if prev != e {
                    out.push(Violation::SharedVertex { vertex: v, edges: [prev, e] });
                }
            } else {
                owner.insert(v, e);
            }
        }
    }
}

fn check_order(g: &SimpleGraph, cert: &NiceDecomposition, out: &mut Vec<Violation>) {
    let mut pos = BTreeMap::new();
    for (i, &v) in cert.order.iter().enumerate() {
        if g.index_of(v).is_none() {
            out.push(Violation::UnknownVertex { vertex: v });
        } else if pos.insert(v, i).is_some() {
            out.push(Violation::OrderRepeat { vertex: v });
        }
    }
    for &v in g.labels() {
        if !pos.contains_key(&v) {
            out.push(Violation::OrderMissing { vertex: v });
        }
    }
    for &(t, h) in &cert.arcs {
        if let (Some(pt), Some(ph)) = (pos.get(&t), pos.get(&h)) {
            if ph >= pt {
                out.push(Violation::OrderBroken { tail: t, head: h });
            }
        }
    }
}

/// A directed cycle among `arcs`, found by iterative three-color DFS.
pub fn find_directed_cycle(arcs: &[(Vertex, Vertex)]) -> Option<Vec<Vertex>> {
    let mut succ: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &(t, h) in arcs {
        succ.entry(t).or_default().push(h);
        succ.entry(h).or_default();
    }
    // 0 white, 1 on stack, 2 done
    let mut state: BTreeMap<Vertex, u8> = succ.keys().map(|&v| (v, 0)).collect();
    for &root in succ.keys() {
        if state[&root] != 0 {
            continue;
        }
        let mut stack: Vec<(Vertex, usize)> = vec![(root, 0)];
        state.insert(root, 1);
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            let next = succ[&v].get(*i).copied();
            *i += 1;
            match next {
                None => {
                    state.insert(v, 2);
                    stack.pop();
                }
                Some(u) => match state[&u] {
                    0 => {
                        state.insert(u, 1);
                        stack.push((u, 0));
                    }
                    1 => {
                        let start = stack.iter().position(|&(w, _)| w == u).unwrap();
                        return Some(stack[start..].iter().map(|&(w, _)| w).collect());
                    }
                    _ => {}
                },
            }
        }
    }
    None
}
