//! Reducible configurations and the search for them.
//!
//! Kinds are tried in a fixed order, cheap local checks first: LowDegree,
//! AdjacentThrees, CutVertex, BadFiveCycle, TC2, TC1, TC3. All searches are
//! on the abstract graph; only the cut-vertex split reads the rotation
//! system. "Normal" means not an endpoint of the boundary edge.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::graph::{PlaneGraph, Vertex};

use super::pattern::ExtensionPattern;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConfigKind {
    LowDegree,
    AdjacentThrees,
    CutVertex,
    BadFiveCycle,
    Tc2,
    Tc1,
    Tc3,
}

impl ConfigKind {
    pub const ALL: [ConfigKind; 7] = [
        ConfigKind::LowDegree,
        ConfigKind::AdjacentThrees,
        ConfigKind::CutVertex,
        ConfigKind::BadFiveCycle,
        ConfigKind::Tc2,
        ConfigKind::Tc1,
        ConfigKind::Tc3,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReducibleConfig {
    LowDegree {
        v: Vertex,
    },
    AdjacentThrees {
        u: Vertex,
        v: Vertex,
    },
    /// `side` is the part split off at `v` (without `v`); `y2` is the
    /// neighbor of `v` that becomes the boundary partner of `v` there.
    CutVertex {
        v: Vertex,
        side: Vec<Vertex>,
        y2: Vertex,
    },
    BadFiveCycle {
        u: [Vertex; 6],
    },
    /// `w` is `w0..w_{k+1}`, `u` is `u0..u_k`.
    Tc1 {
        w: Vec<Vertex>,
        u: Vec<Vertex>,
        z: Vertex,
    },
    Tc2 {
        w: Vec<Vertex>,
        u: Vec<Vertex>,
        z: Vertex,
        z1: Vertex,
        z2: Vertex,
    },
    Tc3 {
        v: [Vertex; 6],
        u: [Vertex; 5],
    },
}

impl ReducibleConfig {
    pub fn kind(&self) -> ConfigKind {
        match self {
            ReducibleConfig::LowDegree { .. } => ConfigKind::LowDegree,
            ReducibleConfig::AdjacentThrees { .. } => ConfigKind::AdjacentThrees,
            ReducibleConfig::CutVertex { .. } => ConfigKind::CutVertex,
            ReducibleConfig::BadFiveCycle { .. } => ConfigKind::BadFiveCycle,
            ReducibleConfig::Tc1 { .. } => ConfigKind::Tc1,
            ReducibleConfig::Tc2 { .. } => ConfigKind::Tc2,
            ReducibleConfig::Tc3 { .. } => ConfigKind::Tc3,
        }
    }

    /// Bound vertices in the role order of [`Self::pattern`]; empty for a
    /// cut vertex, which deletes nothing.
    pub fn binding(&self) -> Vec<Vertex> {
        match self {
            ReducibleConfig::LowDegree { v } => vec![*v],
            ReducibleConfig::AdjacentThrees { u, v } => vec![*u, *v],
            ReducibleConfig::CutVertex { .. } => vec![],
            ReducibleConfig::BadFiveCycle { u } => u.to_vec(),
            ReducibleConfig::Tc1 { w, u, z } => w.iter().chain(u).copied().chain([*z]).collect(),
            ReducibleConfig::Tc2 { w, u, z, z1, z2 } => w.iter().chain(u).copied().chain([*z, *z1, *z2]).collect(),
            ReducibleConfig::Tc3 { v, u } => v.iter().chain(u).copied().collect(),
        }
    }

    pub fn deleted(&self) -> BTreeSet<Vertex> {
        self.binding().into_iter().collect()
    }

    /// The extension pattern; `None` for a cut vertex. `g` supplies the
    /// degree of a low-degree vertex.
    pub fn pattern(&self, g: &PlaneGraph) -> Option<ExtensionPattern> {
        Some(match self {
            ReducibleConfig::LowDegree { v } => ExtensionPattern::low_degree(g.degree(*v)),
            ReducibleConfig::AdjacentThrees { .. } => ExtensionPattern::adjacent_threes(),
            ReducibleConfig::CutVertex { .. } => return None,
            ReducibleConfig::BadFiveCycle { .. } => ExtensionPattern::bad_five_cycle(),
            ReducibleConfig::Tc1 { u, .. } => ExtensionPattern::tc1(u.len() - 1),
            ReducibleConfig::Tc2 { u, .. } => ExtensionPattern::tc2(u.len() - 1),
            ReducibleConfig::Tc3 { .. } => ExtensionPattern::tc3(),
        })
    }
}

struct Search<'a> {
    g: &'a PlaneGraph,
    x: Vertex,
    y: Vertex,
}

impl Search<'_> {
    fn normal(&self, v: Vertex) -> bool {
        v != self.x && v != self.y
    }

    fn is(&self, v: Vertex, d: usize) -> bool {
        self.normal(v) && self.g.degree(v) == d
    }

    fn sorted_nbrs(&self, v: Vertex) -> Vec<Vertex> {
        let mut n = self.g.neighbors(v).to_vec();
        n.sort_unstable();
        n
    }
}

/// First reducible configuration in priority order. `g` must carry a
/// boundary edge.
pub fn find_reducible(g: &PlaneGraph) -> Option<ReducibleConfig> {
    find_reducible_among(g, &ConfigKind::ALL)
}

/// Like [`find_reducible`], restricted to `kinds` (still in priority order).
pub fn find_reducible_among(g: &PlaneGraph, kinds: &[ConfigKind]) -> Option<ReducibleConfig> {
    let (x, y) = g.boundary_edge().expect("search needs a boundary edge");
    let s = Search { g, x, y };
    for kind in ConfigKind::ALL {
        if !kinds.contains(&kind) {
            continue;
        }
        let found = match kind {
            ConfigKind::LowDegree => low_degree(&s),
            ConfigKind::AdjacentThrees => adjacent_threes(&s),
            ConfigKind::CutVertex => cut_vertex(&s),
            ConfigKind::BadFiveCycle => bad_five_cycle(&s),
            ConfigKind::Tc2 => chains(&s, true),
            ConfigKind::Tc1 => chains(&s, false),
            ConfigKind::Tc3 => tc3(&s),
        };
        if found.is_some() {
            return found;
        }
    }
    None
}

fn low_degree(s: &Search) -> Option<ReducibleConfig> {
    let v = s.g.vertices().find(|&v| s.normal(v) && s.g.degree(v) <= 2)?;
    Some(ReducibleConfig::LowDegree { v })
}

fn adjacent_threes(s: &Search) -> Option<ReducibleConfig> {
    s.g.vertices().filter(|&u| s.is(u, 3)).find_map(|u| {
        let v = s.sorted_nbrs(u).into_iter().find(|&v| v > u && s.is(v, 3))?;
        Some(ReducibleConfig::AdjacentThrees { u, v })
    })
}

fn cut_vertex(s: &Search) -> Option<ReducibleConfig> {
    let g = s.g;
    let v = *g.cut_vertices().iter().next()?;
    // Components of g - v; the one holding the boundary edge stays put.
    let anchor = if v == s.x { s.y } else { s.x };
    let mut label = vec![usize::MAX; g.vertices().last().map_or(0, |m| m as usize + 1)];
    let mut comps: Vec<Vec<Vertex>> = Vec::new();
    for start in g.vertices() {
        if start == v || label[start as usize] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut comp = vec![start];
        label[start as usize] = id;
        let mut i = 0;
        while i < comp.len() {
            let a = comp[i];
            i += 1;
            for &b in g.neighbors(a) {
                if b != v && label[b as usize] == usize::MAX {
                    label[b as usize] = id;
                    comp.push(b);
                }
            }
        }
        comps.push(comp);
    }
    let home = label[anchor as usize];
    // comps are discovered in order of their least vertex
    let (side_id, side) = comps.into_iter().enumerate().find(|&(i, _)| i != home)?;
    let rot = g.neighbors(v);
    let k = rot.len();
    let y2 = (0..k)
        .find(|&i| label[rot[i] as usize] != side_id && label[rot[(i + 1) % k] as usize] == side_id)
        .map(|i| rot[(i + 1) % k])?;
    let mut side = side;
    side.sort_unstable();
    Some(ReducibleConfig::CutVertex { v, side, y2 })
}

fn bad_five_cycle(s: &Search) -> Option<ReducibleConfig> {
    let g = s.g;
    for u1 in g.vertices().filter(|&v| s.is(v, 3)) {
        let n1 = s.sorted_nbrs(u1);
        for &u2 in &n1 {
            let rest: Vec<Vertex> = n1.iter().copied().filter(|&w| w != u2).collect();
            for (u5, u6) in [(rest[0], rest[1]), (rest[1], rest[0])] {
                if !(s.is(u2, 4) && s.is(u5, 4) && s.is(u6, 4) && g.has_edge(u5, u6)) {
                    continue;
                }
                for u3 in s.sorted_nbrs(u2) {
                    if !s.is(u3, 3) || [u1, u5, u6].contains(&u3) {
                        continue;
                    }
                    for u4 in s.sorted_nbrs(u3) {
                        if s.is(u4, 4) && ![u1, u2, u5, u6].contains(&u4) && g.has_edge(u4, u5) {
                            return Some(ReducibleConfig::BadFiveCycle { u: [u1, u2, u3, u4, u5, u6] });
                        }
                    }
                }
            }
        }
    }
    None
}

/// Ordered pairs `(a, b)` of adjacent neighbors of `v` outside `used` with
/// the given degrees.
fn triangle_pairs(s: &Search, v: Vertex, used: &[Vertex], da: usize, db: usize) -> Vec<(Vertex, Vertex)> {
    let n: Vec<Vertex> = s.sorted_nbrs(v).into_iter().filter(|w| !used.contains(w)).collect();
    let mut out = Vec::new();
    for &a in &n {
        for &b in &n {
            if a != b && s.is(a, da) && s.is(b, db) && s.g.has_edge(a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Minor triangle `w0 w1 u0` plus a triangle chain from `w1`, ending at a
/// 3-vertex `z` (TC1) or at a 4-vertex `z` on another minor triangle (TC2).
/// Chains grow depth first; each directed chain end is expanded once per
/// minor triangle, and a chain never reuses a vertex.
fn chains(s: &Search, second_triangle: bool) -> Option<ReducibleConfig> {
    for w0 in s.g.vertices().filter(|&v| s.is(v, 3)) {
        for (w1, u0) in triangle_pairs(s, w0, &[], 4, 4) {
            let mut seen = HashSet::new();
            let mut w = vec![w0, w1];
            let mut u = vec![u0];
            if let Some(c) = grow(s, second_triangle, &mut w, &mut u, &mut seen) {
                return Some(c);
            }
        }
    }
    None
}

fn grow(
    s: &Search,
    second: bool,
    w: &mut Vec<Vertex>,
    u: &mut Vec<Vertex>,
    seen: &mut HashSet<(Vertex, Vertex)>,
) -> Option<ReducibleConfig> {
    let end = *w.last().unwrap();
    let used: Vec<Vertex> = w.iter().chain(u.iter()).copied().collect();
    if !seen.insert((end, *u.last().unwrap())) {
        return None;
    }
    for z in s.sorted_nbrs(end) {
        if used.contains(&z) {
            continue;
        }
        if second {
            if !s.is(z, 4) {
                continue;
            }
            let mut taken = used.clone();
            taken.push(z);
            if let Some(&(z1, z2)) = triangle_pairs(s, z, &taken, 3, 4).first() {
                return Some(ReducibleConfig::Tc2 { w: w.clone(), u: u.clone(), z, z1, z2 });
            }
        } else if s.is(z, 3) {
            return Some(ReducibleConfig::Tc1 { w: w.clone(), u: u.clone(), z });
        }
    }
    for (next, apex) in triangle_pairs(s, end, &used, 4, 4) {
        w.push(next);
        u.push(apex);
        let r = grow(s, second, w, u, seen);
        w.pop();
        u.pop();
        if r.is_some() {
            return r;
        }
    }
    None
}

fn tc3(s: &Search) -> Option<ReducibleConfig> {
    for v1 in s.g.vertices().filter(|&v| s.is(v, 3)) {
        let n1 = s.sorted_nbrs(v1);
        for (v2, u1) in triangle_pairs(s, v1, &[], 4, 4) {
            let Some(&v6) = n1.iter().find(|&&w| w != v2 && w != u1) else { continue };
            if !s.is(v6, 4) {
                continue;
            }
            let mut v = vec![v1, v2];
            let mut u = vec![u1];
            if let Some(c) = tc3_walk(s, v6, &mut v, &mut u) {
                return Some(c);
            }
        }
    }
    None
}

fn tc3_walk(s: &Search, v6: Vertex, v: &mut Vec<Vertex>, u: &mut Vec<Vertex>) -> Option<ReducibleConfig> {
    let end = *v.last().unwrap();
    let mut used: Vec<Vertex> = v.iter().chain(u.iter()).copied().collect();
    used.push(v6);
    if v.len() == 5 {
        if !s.g.has_edge(end, v6) {
            return None;
        }
        let u5 = s.sorted_nbrs(end).into_iter().find(|&a| !used.contains(&a) && s.is(a, 4) && s.g.has_edge(a, v6))?;
        let vs = [v[0], v[1], v[2], v[3], v[4], v6];
        let us = [u[0], u[1], u[2], u[3], u5];
        return Some(ReducibleConfig::Tc3 { v: vs, u: us });
    }
    for (next, apex) in triangle_pairs(s, end, &used, 4, 4) {
        v.push(next);
        u.push(apex);
        let r = tc3_walk(s, v6, v, u);
        v.pop();
        u.pop();
        if r.is_some() {
            return r;
        }
    }
    None
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn with_boundary(g: PlaneGraph, x: Vertex, y: Vertex) -> PlaneGraph {
        g.with_boundary_edge(x, y).unwrap()
    }

    #[test]
    fn triangle_reduces_its_two_vertex() {
        let g = with_boundary(cycle(3), 0, 1);
        assert_eq!(find_reducible(&g), Some(ReducibleConfig::LowDegree { v: 2 }));
    }

    /// The bad 5-cycle gadget (ids 0..5) inside a 4-cycle frame 6..9 whose
    /// spokes give u1..u6 the degrees 3, 4, 3, 4, 4, 4; boundary edge 8-9.
    pub(crate) fn bad_five_host() -> PlaneGraph {
        let mut pts: Vec<_> = [150.0, 210.0, 270.0, 330.0, 30.0, 90.0].iter().map(|&a| polar(1.0, a)).collect();
        pts.extend([180.0, 270.0, 0.0, 90.0].iter().map(|&a| polar(3.0, a)));
        let edges = [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (4, 5),
            (5, 0),
            (6, 7),
            (7, 8),
            (8, 9),
            (9, 6),
            (1, 6),
            (1, 7),
            (2, 7),
            (3, 7),
            (3, 8),
            (4, 8),
            (5, 9),
            (5, 6),
        ];
        with_boundary(from_points(&pts, &edges).with_outer_walk(&[6, 7, 8, 9]).unwrap(), 8, 9)
    }

    #[test]
    fn bad_five_cycle_in_a_host() {
        let g = bad_five_host();
        assert_eq!(g.faces().len(), 2 + g.edge_count() - g.vertex_count());
        assert_eq!(find_reducible(&g), Some(ReducibleConfig::BadFiveCycle { u: [0, 1, 2, 3, 4, 5] }));
    }

    /// Minor triangle w0=0, w1=1, u0=2 with z=3 below it; 4 and 5 are the
    /// boundary edge.
    pub(crate) fn tc1_host() -> PlaneGraph {
        let pts = [(0.0, 2.0), (-1.0, 0.0), (1.0, 0.0), (0.0, -1.5), (-4.0, -3.0), (4.0, -3.0)];
        let edges = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4), (2, 5), (3, 5), (4, 5)];
        with_boundary(from_points(&pts, &edges).with_outer_walk(&[0, 4, 5, 2]).unwrap(), 4, 5)
    }

    #[test]
    fn minor_triangle_next_to_a_three_vertex_is_tc1_with_k0() {
        let g = tc1_host();
        let want = ReducibleConfig::Tc1 { w: vec![0, 1], u: vec![2], z: 3 };
        assert_eq!(find_reducible(&g), Some(want));
    }

    #[test]
    fn cut_vertex_splits_off_the_far_side() {
        // two triangles sharing vertex 2, boundary on the first
        let pts = [polar(1.0, 180.0), polar(1.0, 240.0), (0.0, 0.0), polar(1.0, 0.0), polar(1.0, 60.0)];
        let g = from_points(&pts, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        let g = with_boundary(g, 0, 1);
        let c = find_reducible_among(&g, &[ConfigKind::CutVertex]).unwrap();
        match c {
            ReducibleConfig::CutVertex { v, side, y2 } => {
                assert_eq!(v, 2);
                assert_eq!(side, vec![3, 4]);
                assert!(y2 == 3 || y2 == 4);
            }
            other => panic!("{other:?}"),
        }
    }
}
