//! Extension patterns: how a nice decomposition of `G - S` grows back over
//! the deleted set `S`.
//!
//! Each pattern names its roles, the degree each role has in the host, the
//! configuration edges among roles, the matching edges and the internal
//! arcs. Every host edge from a role to the rest of the graph points away
//! from the role. Configuration edges the pattern leaves unassigned, and
//! extra host edges between roles, follow [`ExtensionPattern::internal_order`].

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionPattern {
    pub name: String,
    pub roles: Vec<String>,
    /// Host degree of each role.
    pub degrees: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub matching: Vec<(usize, usize)>,
    /// `(tail, head)` role pairs.
    pub arcs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractError {
    #[error("{0}: matching edge {1}{2} is not a configuration edge")]
    ForeignMatching(String, String, String),
    #[error("{0}: arc {1}->{2} is not a configuration edge")]
    ForeignArc(String, String, String),
    #[error("{0}: edge {1}{2} is assigned twice")]
    AssignedTwice(String, String, String),
    #[error("{0}: role {1} is on two matching edges")]
    NotAMatching(String, String),
    #[error("{0}: internal arcs contain a cycle")]
    Cyclic(String),
    #[error("{0}: role {1} has {2} configuration edges but degree {3}")]
    DegreeTooSmall(String, String, usize, usize),
    #[error("{0}: role {1} has out-degree {2}")]
    OutDegree(String, String, usize),
}

fn names(prefix: &str, range: std::ops::Range<usize>) -> impl Iterator<Item = String> + '_ {
    range.map(move |i| format!("{prefix}{i}"))
}

impl ExtensionPattern {
    /// A vertex of degree `d <= 2` with every edge pointing out.
    pub fn low_degree(d: usize) -> Self {
        ExtensionPattern {
            name: format!("LowDegree({d})"),
            roles: vec!["v".into()],
            degrees: vec![d],
            edges: vec![],
            matching: vec![],
            arcs: vec![],
        }
    }

    /// Two adjacent 3-vertices: matched together, the rest outward.
    pub fn adjacent_threes() -> Self {
        ExtensionPattern {
            name: "AdjacentThrees".into(),
            roles: vec!["u".into(), "v".into()],
            degrees: vec![3, 3],
            edges: vec![(0, 1)],
            matching: vec![(0, 1)],
            arcs: vec![],
        }
    }

    /// Roles `u1..u6` are 0..5: the 5-cycle `u1..u5` and the triangle
    /// `u1 u5 u6`.
    pub fn bad_five_cycle() -> Self {
        ExtensionPattern {
            name: "BadFiveCycle".into(),
            roles: names("u", 1..7).collect(),
            degrees: vec![3, 4, 3, 4, 4, 4],
            edges: vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5), (5, 0)],
            matching: vec![(0, 1), (2, 3), (4, 5)],
            arcs: vec![(0, 4), (0, 5), (4, 3), (2, 1)],
        }
    }

    /// Roles: `w0..w_{k+1}`, then `u0..u_k`, then `z`.
    pub fn tc1(k: usize) -> Self {
        let mut p = Self::chain(k);
        p.name = format!("TC1({k})");
        let z = p.push_role("z", 3);
        let wk1 = k + 1;
        p.edges.push((wk1, z));
        p.matching.push((wk1, z));
        p
    }

    /// TC1 roles with `z` of degree 4, then `z1` and `z2`.
    pub fn tc2(k: usize) -> Self {
        let mut p = Self::tc1(k);
        p.name = format!("TC2({k})");
        let z = p.roles.len() - 1;
        p.degrees[z] = 4;
        let z1 = p.push_role("z1", 3);
        let z2 = p.push_role("z2", 4);
        p.edges.extend([(z, z1), (z1, z2), (z2, z)]);
        p.matching.push((z1, z2));
        p.arcs.extend([(z, z2), (z1, z)]);
        p
    }

    /// Roles `v1..v6` are 0..5 and `u1..u5` are 6..10.
    pub fn tc3() -> Self {
        let v = |i: usize| i - 1;
        let u = |i: usize| 5 + i;
        let mut edges: Vec<_> = (1..=6).map(|i| (v(i), v(i % 6 + 1))).collect();
        let mut matching = Vec::new();
        let mut arcs = Vec::new();
        for i in 1..=5 {
            edges.extend([(v(i), u(i)), (v(i + 1), u(i))]);
            matching.push((v(i), u(i)));
            arcs.extend([(v(i), v(i + 1)), (v(i + 1), u(i))]);
        }
        arcs.push((v(1), v(6)));
        let mut degrees = vec![4; 11];
        degrees[v(1)] = 3;
        ExtensionPattern {
            name: "TC3".into(),
            roles: names("v", 1..7).chain(names("u", 1..6)).collect(),
            degrees,
            edges,
            matching,
            arcs,
        }
    }

    /// Minor triangle `w0 w1 u0` followed by the chain `[w_i w_{i+1} u_i]`.
    fn chain(k: usize) -> Self {
        let w = |i: usize| i;
        let u = |i: usize| k + 2 + i;
        let mut edges = Vec::new();
        let mut matching = Vec::new();
        let mut arcs = Vec::new();
        for i in 0..=k {
            edges.extend([(w(i), w(i + 1)), (w(i + 1), u(i)), (u(i), w(i))]);
            matching.push((w(i), u(i)));
            arcs.extend([(w(i), w(i + 1)), (w(i + 1), u(i))]);
        }
        let mut degrees = vec![4; 2 * k + 3];
        degrees[w(0)] = 3;
        ExtensionPattern {
            name: String::new(),
            roles: names("w", 0..k + 2).chain(names("u", 0..k + 1)).collect(),
            degrees,
            edges,
            matching,
            arcs,
        }
    }

    fn push_role(&mut self, name: &str, degree: usize) -> usize {
        self.roles.push(name.into());
        self.degrees.push(degree);
        self.roles.len() - 1
    }

    pub fn len(&self) -> usize {
        self.roles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roles.is_empty()
    }

    /// Roles ordered so that every arc head precedes its tail; ties go to
    /// the lower role index. `None` if the arcs have a cycle.
    pub fn internal_order(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let mut out = vec![0; n];
        let mut preds = vec![Vec::new(); n];
        for &(t, h) in &self.arcs {
            out[t] += 1;
            preds[h].push(t);
        }
        let mut ready: BinaryHeap<Reverse<usize>> = (0..n).filter(|&r| out[r] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(r)) = ready.pop() {
            order.push(r);
            for &t in &preds[r] {
                out[t] -= 1;
                if out[t] == 0 {
                    ready.push(Reverse(t));
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Out-degree of each role when the pattern stands alone: its own arcs,
    /// unassigned configuration edges oriented by the internal order, and
    /// one outward arc per degree slot not used by a configuration edge.
    pub fn isolated_out_degrees(&self) -> Result<Vec<usize>, ContractError> {
        self.check_shape()?;
        let order = self.internal_order().ok_or_else(|| ContractError::Cyclic(self.name.clone()))?;
        let mut pos = vec![0; self.len()];
        for (i, &r) in order.iter().enumerate() {
            pos[r] = i;
        }
        let mut out = vec![0; self.len()];
        let mut conf_deg = vec![0; self.len()];
        for &(a, b) in &self.edges {
            conf_deg[a] += 1;
            conf_deg[b] += 1;
            if self.assigned(a, b) {
                continue;
            }
            if pos[a] > pos[b] {
                out[a] += 1;
            } else {
                out[b] += 1;
            }
        }
        for &(t, _) in &self.arcs {
            out[t] += 1;
        }
        for r in 0..self.len() {
            if conf_deg[r] > self.degrees[r] {
                return Err(ContractError::DegreeTooSmall(
                    self.name.clone(),
                    self.roles[r].clone(),
                    conf_deg[r],
                    self.degrees[r],
                ));
            }
            out[r] += self.degrees[r] - conf_deg[r];
        }
        Ok(out)
    }

    /// The local contract: a matching on configuration edges, acyclic
    /// internal arcs, and out-degree at most 2 everywhere.
    pub fn check_contract(&self) -> Result<(), ContractError> {
        let out = self.isolated_out_degrees()?;
        for (r, &d) in out.iter().enumerate() {
            if d > 2 {
                return Err(ContractError::OutDegree(self.name.clone(), self.roles[r].clone(), d));
            }
        }
        Ok(())
    }

    fn assigned(&self, a: usize, b: usize) -> bool {
        let same = |&(p, q): &(usize, usize)| (p, q) == (a, b) || (q, p) == (a, b);
        self.matching.iter().any(same) || self.arcs.iter().any(same)
    }

    fn check_shape(&self) -> Result<(), ContractError> {
        let n = |r: usize| self.roles[r].clone();
        let is_edge = |a: usize, b: usize| self.edges.iter().any(|&(p, q)| (p, q) == (a, b) || (q, p) == (a, b));
        let mut matched = vec![false; self.len()];
        for &(a, b) in &self.matching {
            if !is_edge(a, b) {
                return Err(ContractError::ForeignMatching(self.name.clone(), n(a), n(b)));
            }
            for r in [a, b] {
                if std::mem::replace(&mut matched[r], true) {
                    return Err(ContractError::NotAMatching(self.name.clone(), n(r)));
                }
            }
        }
        for &(t, h) in &self.arcs {
            if !is_edge(t, h) {
                return Err(ContractError::ForeignArc(self.name.clone(), n(t), n(h)));
            }
        }
        for &(a, b) in &self.edges {
            let same = |&(p, q): &(usize, usize)| (p, q) == (a, b) || (q, p) == (a, b);
            let uses = self.matching.iter().filter(|e| same(e)).count() + self.arcs.iter().filter(|e| same(e)).count();
            if uses > 1 {
                return Err(ContractError::AssignedTwice(self.name.clone(), n(a), n(b)));
            }
        }
        Ok(())
    }
}

/// The pattern table: every fixed pattern plus the chain patterns for small
/// `k`.
pub fn extend_patterns() -> Vec<ExtensionPattern> {
    let mut t: Vec<_> = (0..=2).map(ExtensionPattern::low_degree).collect();
    t.push(ExtensionPattern::adjacent_threes());
    t.push(ExtensionPattern::bad_five_cycle());
    t.extend((0..=3).map(ExtensionPattern::tc1));
    t.extend((0..=2).map(ExtensionPattern::tc2));
    t.push(ExtensionPattern::tc3());
    t
}
