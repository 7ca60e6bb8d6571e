//! Exact charge bookkeeping for the discharging argument.
//!
//! Charges are integers in units of 1/6. Vertices start at `6(d(v) - 4)`,
//! internal faces at `6(d(f) - 4)` and the outer face at `6(d(f0) + 4)`;
//! by Euler's formula this sums to zero on a connected plane graph. Rules
//! move charge along the incidences below and are applied once each, in
//! order. A corner of `v` is the face on the left of dart `(v, u)`; corners
//! are listed in rotation order.
//!
//! * R1: an internal 3-face takes 2 from the face across each of its edges.
//! * R2: a normal 3-vertex with an internal 4⁻-face corner takes 3 from each
//!   other corner (only the first such corner in rotation order is skipped);
//!   otherwise it takes 2 from each corner.
//! * R3: a normal 5-vertex gives 1 to each 4⁺-face corner, 1 across the far
//!   edge of each internal 3-face corner, and 1 more to the middle face of
//!   each run of three corners whose ends are 3-faces.
//! * R4: a normal 6⁺-vertex gives 2 to each 4⁺-face corner and 2 across the
//!   far edge of each internal 3-face corner.
//! * R5: `x` and `y` give 2 to each internal 4⁺-face corner and 2 across the
//!   far edge of each internal 3-face corner.
//! * R6: the outer face gives 2 across each edge it shares with a 4⁺-face.
//! * R7 (case 2): an internal 5-face takes 1 across each edge it shares with
//!   an internal 6⁺-face.
//! * R8 (case 3): a good 5-face takes 2 across each edge it shares with an
//!   internal 7⁺-face.
//!
//! The far-edge clause skips an outer 3-face: `x` and `y` then pay at most
//! once per internal corner, which is the bound the argument relies on.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::class_gate::CaseTag;
use crate::graph::{FaceSet, PlaneGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DischargeError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no edges")]
    NoEdges,
    #[error("{0}{1} is not an edge on the outer face")]
    NotOnOuterFace(Vertex, Vertex),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Element {
    Vertex(Vertex),
    Face(usize),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{v}"),
            Element::Face(i) => write!(f, "f{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transfer {
    pub from: Element,
    pub to: Element,
    /// In sixths.
    pub amount: i64,
    pub rule: Rule,
}

/// A charge in sixths, printed as a reduced fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Sixths(pub i64);

impl fmt::Display for Sixths {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = (self.0, 6i64);
        let g = gcd(n.unsigned_abs(), 6) as i64;
        let (n, d) = (n / g, d / g);
        if d == 1 {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeLedger {
    pub charges: BTreeMap<Element, i64>,
    pub transfers: Vec<Transfer>,
}

impl ChargeLedger {
    pub fn total(&self) -> i64 {
        self.charges.values().sum()
    }

    pub fn charge(&self, e: Element) -> i64 {
        self.charges.get(&e).copied().unwrap_or(0)
    }

    /// Sum of transfers into `e`.
    pub fn received(&self, e: Element) -> i64 {
        self.transfers.iter().filter(|t| t.to == e).map(|t| t.amount).sum()
    }

    fn send(&mut self, from: Element, to: Element, amount: i64, rule: Rule) {
        *self.charges.get_mut(&from).expect("known source") -= amount;
        *self.charges.get_mut(&to).expect("known target") += amount;
        self.transfers.push(Transfer { from, to, amount, rule });
    }
}

/// Per internal face: incident normal 3-vertices and adjacent internal
/// 3-faces (per common edge).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceStats {
    pub degree: usize,
    pub t: usize,
    pub s: usize,
}

struct Ctx<'a> {
    g: &'a PlaneGraph,
    faces: FaceSet,
    outer: usize,
    x: Vertex,
    y: Vertex,
}

impl<'a> Ctx<'a> {
    fn new(g: &'a PlaneGraph, e: (Vertex, Vertex)) -> Result<Self, DischargeError> {
        if g.edge_count() == 0 {
            return Err(DischargeError::NoEdges);
        }
        if !g.is_connected() {
            return Err(DischargeError::Disconnected);
        }
        let faces = g.faces();
        let outer = faces.outer().expect("connected graph with edges has an outer face");
        let f0 = faces.face(outer);
        if !(f0.contains_dart(e) || f0.contains_dart((e.1, e.0))) {
            return Err(DischargeError::NotOnOuterFace(e.0, e.1));
        }
        Ok(Ctx { g, faces, outer, x: e.0, y: e.1 })
    }

    fn normal(&self, v: Vertex) -> bool {
        v != self.x && v != self.y
    }

    fn deg(&self, f: usize) -> usize {
        self.faces.face(f).degree()
    }

    fn internal(&self, f: usize) -> bool {
        f != self.outer
    }

    fn face_of(&self, d: (Vertex, Vertex)) -> usize {
        self.faces.face_of(d).expect("every dart lies on a face")
    }

    fn corners(&self, v: Vertex) -> Vec<usize> {
        self.g.neighbors(v).iter().map(|&u| self.face_of((v, u))).collect()
    }

    /// Faces across each edge of `f`, one entry per edge.
    fn across(&self, f: usize) -> Vec<usize> {
        self.faces.face(f).walk.iter().map(|&(a, b)| self.face_of((b, a))).collect()
    }

    /// For the 3-face `f` at corner `v`, the face beyond the edge opposite `v`.
    fn beyond(&self, f: usize, v: Vertex) -> Option<usize> {
        let &(a, b) = self.faces.face(f).walk.iter().find(|&&(a, b)| a != v && b != v)?;
        let g = self.face_of((b, a));
        (g != f).then_some(g)
    }
}

/// Initial charges `μ`, with boundary edge `e` fixing `x`, `y` and `f0`.
pub fn initial_charges(g: &PlaneGraph, e: (Vertex, Vertex)) -> Result<ChargeLedger, DischargeError> {
    let ctx = Ctx::new(g, e)?;
    Ok(initial(&ctx))
}

fn initial(ctx: &Ctx) -> ChargeLedger {
    let mut charges = BTreeMap::new();
    for v in ctx.g.vertices() {
        charges.insert(Element::Vertex(v), 6 * (ctx.g.degree(v) as i64 - 4));
    }
    for f in ctx.faces.iter() {
        let d = f.degree() as i64;
        let mu = if f.id == ctx.outer { d + 4 } else { d - 4 };
        charges.insert(Element::Face(f.id), 6 * mu);
    }
    ChargeLedger { charges, transfers: Vec::new() }
}

/// Initial charges followed by R1–R6 and the case rule.
pub fn discharge(g: &PlaneGraph, e: (Vertex, Vertex), case: CaseTag) -> Result<ChargeLedger, DischargeError> {
    let ctx = Ctx::new(g, e)?;
    let mut ledger = initial(&ctx);
    apply(&ctx, &mut ledger, case);
    Ok(ledger)
}

/// Applies every rule of `case` to `ledger`, which must hold charges for `g`.
pub fn apply_rules(
    g: &PlaneGraph,
    e: (Vertex, Vertex),
    mut ledger: ChargeLedger,
    case: CaseTag,
) -> Result<ChargeLedger, DischargeError> {
    let ctx = Ctx::new(g, e)?;
    apply(&ctx, &mut ledger, case);
    Ok(ledger)
}

fn apply(ctx: &Ctx, l: &mut ChargeLedger, case: CaseTag) {
    use Element::{Face as F, Vertex as V};
    let nf = ctx.faces.len();

    for f in 0..nf {
        if ctx.internal(f) && ctx.deg(f) == 3 {
            for g in ctx.across(f) {
                if g != f {
                    l.send(F(g), F(f), 2, Rule::R1);
                }
            }
        }
    }

    for v in ctx.g.vertices() {
        if !ctx.normal(v) || ctx.g.degree(v) != 3 {
            continue;
        }
        let corners = ctx.corners(v);
        let minor = corners.iter().position(|&f| ctx.internal(f) && ctx.deg(f) <= 4);
        for (i, &f) in corners.iter().enumerate() {
            match minor {
                Some(m) if m == i => {}
                Some(_) => l.send(F(f), V(v), 3, Rule::R2),
                None => l.send(F(f), V(v), 2, Rule::R2),
            }
        }
    }

    for v in ctx.g.vertices() {
        let d = ctx.g.degree(v);
        let (rule, amount, only_internal) = if !ctx.normal(v) {
            (Rule::R5, 2, true)
        } else if d == 5 {
            (Rule::R3, 1, false)
        } else if d >= 6 {
            (Rule::R4, 2, false)
        } else {
            continue;
        };
        let corners = ctx.corners(v);
        for &f in &corners {
            if ctx.deg(f) >= 4 && (!only_internal || ctx.internal(f)) {
                l.send(V(v), F(f), amount, rule);
            }
        }
        for &f in &corners {
            if ctx.deg(f) == 3 && ctx.internal(f) {
                if let Some(g) = ctx.beyond(f, v) {
                    l.send(V(v), F(g), amount, rule);
                }
            }
        }
        if rule == Rule::R3 {
            let k = corners.len();
            for i in 0..k {
                if ctx.deg(corners[i]) == 3 && ctx.deg(corners[(i + 2) % k]) == 3 {
                    l.send(V(v), F(corners[(i + 1) % k]), 1, Rule::R3);
                }
            }
        }
    }

    for g in ctx.across(ctx.outer) {
        if g != ctx.outer && ctx.deg(g) >= 4 {
            l.send(F(ctx.outer), F(g), 2, Rule::R6);
        }
    }

    match case {
        CaseTag::Case1 => {}
        CaseTag::Case2 => {
            for f in 0..nf {
                if ctx.internal(f) && ctx.deg(f) == 5 {
                    for g in ctx.across(f) {
                        if ctx.internal(g) && ctx.deg(g) >= 6 {
                            l.send(F(g), F(f), 1, Rule::R7);
                        }
                    }
                }
            }
        }
        CaseTag::Case3 => {
            for f in 0..nf {
                if !(ctx.internal(f) && ctx.deg(f) == 5) {
                    continue;
                }
                let nbrs = ctx.across(f);
                let good = nbrs.iter().any(|&g| ctx.internal(g) && ctx.deg(g) == 3);
                if good {
                    for g in nbrs {
                        if ctx.internal(g) && ctx.deg(g) >= 7 {
                            l.send(F(g), F(f), 2, Rule::R8);
                        }
                    }
                }
            }
        }
    }
}

/// `t_f` and `s_f` for every internal face.
pub fn face_stats(g: &PlaneGraph, e: (Vertex, Vertex)) -> Result<BTreeMap<usize, FaceStats>, DischargeError> {
    let ctx = Ctx::new(g, e)?;
    let mut out = BTreeMap::new();
    for f in ctx.faces.iter() {
        if !ctx.internal(f.id) {
            continue;
        }
        let mut vs = f.vertices();
        vs.sort_unstable();
        vs.dedup();
        let t = vs.iter().filter(|&&v| ctx.normal(v) && g.degree(v) == 3).count();
        let s = ctx.across(f.id).into_iter().filter(|&h| ctx.internal(h) && ctx.deg(h) == 3).count();
        out.insert(f.id, FaceStats { degree: f.degree(), t, s });
    }
    Ok(out)
}

/// Final charges with the negative ones singled out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub case: CaseTag,
    /// In sixths; zero on every input.
    pub total: i64,
    pub negative: Vec<(Element, i64)>,
    pub charges: Vec<(Element, i64)>,
    pub transfers: Vec<Transfer>,
}

pub fn audit_report(ledger: &ChargeLedger, case: CaseTag) -> AuditReport {
    let charges: Vec<(Element, i64)> = ledger.charges.iter().map(|(&e, &c)| (e, c)).collect();
    AuditReport {
        case,
        total: ledger.total(),
        negative: charges.iter().copied().filter(|&(_, c)| c < 0).collect(),
        charges,
        transfers: ledger.transfers.clone(),
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: total {}", self.case, Sixths(self.total))?;
        for (e, c) in &self.charges {
            let flag = if *c < 0 { "  <- negative" } else { "" };
            writeln!(f, "  {e}: {}{flag}", Sixths(*c))?;
        }
        write!(f, "{} transfers, {} negative elements", self.transfers.len(), self.negative.len())
    }
}
