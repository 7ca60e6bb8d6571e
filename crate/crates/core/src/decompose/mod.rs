//! Nice decompositions by reduction: find a reducible configuration, delete
//! it, solve the rest, and extend the smaller certificate back.

mod config;
mod pattern;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use config::{find_reducible, find_reducible_among, ConfigKind, ReducibleConfig};
pub use pattern::{extend_patterns, ContractError, ExtensionPattern};

use crate::cert::{undirected, NiceDecomposition};
use crate::certify::{oracle_nice, verify_nice, Verdict};
use crate::class_gate::{classify_report, CaseTag, ClassReport};
use crate::discharge::{audit_report, discharge, AuditReport};
use crate::graph::{Dart, GraphError, PlaneGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecomposeOptions {
    /// Re-verify the certificate of every intermediate graph.
    pub verify_steps: bool,
    /// Graphs this small fall back to the exhaustive oracle when no
    /// configuration is found.
    pub oracle_threshold: usize,
    /// Skip the class gate; the caller vouches for the input.
    pub trust_class: bool,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { verify_steps: false, oracle_threshold: 12, trust_class: false }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeStats {
    pub reductions: BTreeMap<ConfigKind, usize>,
    pub oracle_calls: usize,
    pub verified_steps: usize,
}

#[derive(Debug, Clone, Error)]
pub enum DecomposeError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has no boundary edge")]
    NoBoundaryEdge,
    #[error("graph fails the class hypotheses: {}", describe_report(.0))]
    OutOfClass(Box<ClassReport>),
    #[error("no reducible configuration on {vertices} vertices\n{report}")]
    TheoremViolation { vertices: usize, report: Box<AuditReport> },
    #[error("extension by {kind:?} failed verification: {verdict}")]
    StepRejected { kind: Option<ConfigKind>, verdict: Verdict },
    #[error(transparent)]
    PatternContract(#[from] ContractError),
    #[error("configuration does not match the graph: {0}")]
    StaleConfig(String),
}

fn describe_report(r: &ClassReport) -> String {
    r.witnesses.iter().map(|(c, w)| format!("{c}: {w}")).collect::<Vec<_>>().join("; ")
}

impl DecomposeError {
    pub fn is_theorem_violation(&self) -> bool {
        matches!(self, DecomposeError::TheoremViolation { .. })
    }
}

/// A nice decomposition of `g` with respect to `e`, which must lie on the
/// outer face. `g` must be connected.
pub fn decompose_nice(
    g: &PlaneGraph,
    e: (Vertex, Vertex),
    opts: &DecomposeOptions,
) -> Result<(NiceDecomposition, DecomposeStats), DecomposeError> {
    let g = g.clone().with_boundary_edge(e.0, e.1)?;
    let case = gate(&g, opts)?;
    let mut run = Run { opts: *opts, case, stats: DecomposeStats::default() };
    let cert = run.solve(&g)?.normalized();
    let verdict = verify_nice(&g.to_simple(), e, &cert);
    if !verdict.is_ok() {
        return Err(DecomposeError::StepRejected { kind: None, verdict });
    }
    Ok((cert, run.stats))
}

/// A (2,1)-decomposition of any in-class plane graph: each component is
/// solved as a nice decomposition on the first edge of its outer face.
pub fn decompose_21(
    g: &PlaneGraph,
    opts: &DecomposeOptions,
) -> Result<(NiceDecomposition, DecomposeStats), DecomposeError> {
    let g = g.clone().without_boundary_edge();
    let case = gate(&g, opts)?;
    let mut run = Run { opts: *opts, case, stats: DecomposeStats::default() };
    let mut parts = Vec::new();
    for comp in g.components() {
        let keep: BTreeSet<Vertex> = comp.iter().copied().collect();
        let h = g.induced(&keep)?;
        parts.push(run.solve_detached(&h)?);
    }
    let mut cert = NiceDecomposition::merge_disjoint(parts);
    cert.boundary_edge = None;
    Ok((cert, run.stats))
}

fn gate(g: &PlaneGraph, opts: &DecomposeOptions) -> Result<CaseTag, DecomposeError> {
    if opts.trust_class {
        return Ok(CaseTag::Case1);
    }
    let report = classify_report(&g.to_simple());
    match report.cases.iter().next() {
        Some(&c) => Ok(c),
        None => Err(DecomposeError::OutOfClass(Box::new(report))),
    }
}

/// Which orientation of the boundary edge has the outer face on its left.
fn outer_boundary_dart(g: &PlaneGraph) -> Option<Dart> {
    let (x, y) = g.boundary_edge()?;
    let faces = g.faces();
    let outer = faces.face(faces.outer()?);
    [(x, y), (y, x)].into_iter().find(|&d| outer.contains_dart(d))
}

struct Run {
    opts: DecomposeOptions,
    case: CaseTag,
    stats: DecomposeStats,
}

impl Run {
    /// A component without a boundary edge: a lone vertex, or the first dart
    /// of its outer face as boundary.
    fn solve_detached(&mut self, h: &PlaneGraph) -> Result<NiceDecomposition, DecomposeError> {
        let h = h.clone().without_boundary_edge();
        if h.edge_count() == 0 {
            return Ok(NiceDecomposition { order: h.vertices().collect(), ..Default::default() });
        }
        let faces = h.faces();
        let outer = faces.outer().ok_or(DecomposeError::NoBoundaryEdge)?;
        let (x, y) = faces.face(outer).walk[0];
        let h = h.with_boundary_edge(x, y)?;
        self.solve(&h)
    }

    /// Any graph with a boundary edge, possibly disconnected.
    fn solve(&mut self, g: &PlaneGraph) -> Result<NiceDecomposition, DecomposeError> {
        let (x, y) = g.boundary_edge().ok_or(DecomposeError::NoBoundaryEdge)?;
        if g.is_connected() {
            return self.solve_connected(g);
        }
        let dart = outer_boundary_dart(g);
        let mut parts = Vec::new();
        let mut home = None;
        for comp in g.components() {
            let keep: BTreeSet<Vertex> = comp.iter().copied().collect();
            if keep.contains(&x) {
                let mut h = g.induced(&keep)?;
                if let Some(d) = dart {
                    h = h.with_outer_dart(d)?;
                }
                home = Some(self.solve_connected(&h)?);
            } else {
                let h = g.clone().without_boundary_edge().induced(&keep)?;
                parts.push(self.solve_detached(&h)?);
            }
        }
        let home = home.expect("boundary component exists");
        let mut cert = NiceDecomposition::merge_disjoint(std::iter::once(home).chain(parts));
        cert.boundary_edge = Some((x, y));
        Ok(cert)
    }

    fn solve_connected(&mut self, g: &PlaneGraph) -> Result<NiceDecomposition, DecomposeError> {
        let (x, y) = g.boundary_edge().ok_or(DecomposeError::NoBoundaryEdge)?;
        if g.vertex_count() <= 2 {
            return Ok(NiceDecomposition::base(x, y));
        }
        let Some(cfg) = find_reducible(g) else {
            return self.fallback(g);
        };
        *self.stats.reductions.entry(cfg.kind()).or_insert(0) += 1;
        let cert = match &cfg {
            ReducibleConfig::CutVertex { v, side, y2 } => self.split(g, *v, side, *y2)?,
            _ => {
                let pattern = cfg.pattern(g).expect("non-cut configurations have patterns");
                let doomed = cfg.deleted();
                let dart = outer_boundary_dart(g);
                let mut rest = g.delete_vertices(&doomed)?;
                if let Some(d) = dart {
                    rest = rest.with_outer_dart(d)?;
                }
                let sub = self.solve(&rest)?;
                extend(g, &cfg.binding(), &pattern, sub)?
            }
        };
        if self.opts.verify_steps {
            let verdict = verify_nice(&g.to_simple(), (x, y), &cert);
            if !verdict.is_ok() {
                return Err(DecomposeError::StepRejected { kind: Some(cfg.kind()), verdict });
            }
            self.stats.verified_steps += 1;
        }
        Ok(cert)
    }

    fn fallback(&mut self, g: &PlaneGraph) -> Result<NiceDecomposition, DecomposeError> {
        let e = g.boundary_edge().ok_or(DecomposeError::NoBoundaryEdge)?;
        if g.vertex_count() <= self.opts.oracle_threshold {
            self.stats.oracle_calls += 1;
            if let Ok(Some(c)) = oracle_nice(&g.to_simple(), e) {
                return Ok(c);
            }
        }
        let simple = g.to_simple();
        let case = classify_report(&simple).cases.iter().next().copied().unwrap_or(self.case);
        let report = match discharge(g, e, case) {
            Ok(ledger) => audit_report(&ledger, case),
            Err(err) => return Err(DecomposeError::StaleConfig(format!("audit failed: {err}"))),
        };
        Err(DecomposeError::TheoremViolation { vertices: g.vertex_count(), report: Box::new(report) })
    }

    /// Splits at cut vertex `v`: `H1` keeps the boundary edge, `H2` is
    /// `side + v` with boundary edge `v y2`. The edge `v y2` leaves the
    /// matching and is oriented `y2 -> v`.
    fn split(
        &mut self,
        g: &PlaneGraph,
        v: Vertex,
        side: &[Vertex],
        y2: Vertex,
    ) -> Result<NiceDecomposition, DecomposeError> {
        let side_set: BTreeSet<Vertex> = side.iter().copied().collect();
        let dart = outer_boundary_dart(g);
        let mut h1 = g.delete_vertices(&side_set)?;
        if let Some(d) = dart {
            h1 = h1.with_outer_dart(d)?;
        }
        let mut keep = side_set.clone();
        keep.insert(v);
        let h2 =
            g.clone().without_boundary_edge().induced(&keep)?.with_outer_dart((y2, v))?.with_boundary_edge(v, y2)?;
        let c1 = self.solve(&h1)?;
        let c2 = self.solve(&h2)?;
        let vy2 = undirected(v, y2);
        let mut out = NiceDecomposition {
            arcs: c1.arcs,
            boundary_edge: c1.boundary_edge,
            matching: c1.matching,
            order: c1.order,
        };
        out.matching.extend(c2.matching.into_iter().filter(|&e| undirected(e.0, e.1) != vy2));
        out.arcs.extend(c2.arcs);
        out.arcs.push((y2, v));
        out.order.extend(c2.order.into_iter().filter(|&w| w != v));
        Ok(out.normalized())
    }
}

/// Extends `sub`, a nice decomposition of `g - binding`, over the bound
/// vertices following `pattern`. Role `i` is `binding[i]`.
fn extend(
    g: &PlaneGraph,
    binding: &[Vertex],
    pattern: &ExtensionPattern,
    sub: NiceDecomposition,
) -> Result<NiceDecomposition, DecomposeError> {
    pattern.check_contract()?;
    if binding.len() != pattern.len() {
        return Err(DecomposeError::StaleConfig(format!("{} roles, {} bound vertices", pattern.len(), binding.len())));
    }
    let role: BTreeMap<Vertex, usize> = binding.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for (i, &v) in binding.iter().enumerate() {
        if !g.contains(v) || g.degree(v) != pattern.degrees[i] {
            return Err(DecomposeError::StaleConfig(format!(
                "{}: {} is not a {}-vertex",
                pattern.name, v, pattern.degrees[i]
            )));
        }
    }
    for &(a, b) in &pattern.edges {
        if !g.has_edge(binding[a], binding[b]) {
            return Err(DecomposeError::StaleConfig(format!(
                "{}: missing edge {}{}",
                pattern.name, binding[a], binding[b]
            )));
        }
    }
    let internal = pattern.internal_order().expect("contract checked");
    let mut pos = vec![0; pattern.len()];
    for (i, &r) in internal.iter().enumerate() {
        pos[r] = i;
    }
    let assigned: BTreeSet<(usize, usize)> =
        pattern.matching.iter().chain(&pattern.arcs).map(|&(a, b)| (a.min(b), a.max(b))).collect();

    let mut out = sub;
    out.matching.extend(pattern.matching.iter().map(|&(a, b)| undirected(binding[a], binding[b])));
    out.arcs.extend(pattern.arcs.iter().map(|&(t, h)| (binding[t], binding[h])));
    for (i, &v) in binding.iter().enumerate() {
        let mut outdeg = pattern.arcs.iter().filter(|a| a.0 == i).count();
        for &u in g.neighbors(v) {
            match role.get(&u) {
                None => {
                    out.arcs.push((v, u));
                    outdeg += 1;
                }
                Some(&j) => {
                    if !assigned.contains(&(i.min(j), i.max(j))) && pos[i] > pos[j] {
                        out.arcs.push((v, u));
                        outdeg += 1;
                    }
                }
            }
        }
        if outdeg > 2 {
            return Err(DecomposeError::StaleConfig(format!(
                "{}: role {} ({v}) would get out-degree {outdeg}",
                pattern.name, pattern.roles[i]
            )));
        }
    }
    out.order.extend(internal.iter().map(|&r| binding[r]));
    Ok(out.normalized())
}
