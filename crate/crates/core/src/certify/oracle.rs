//! Exhaustive ground truth for small instances.
//!
//! A nice decomposition of `(G, xy)` exists iff some matching `M` containing
//! `xy` leaves `G - M` peelable: repeatedly remove a vertex outside `{x, y}`
//! with at most two remaining neighbors, orienting its remaining edges out of
//! it. Greedy peeling is complete because removing a vertex never raises
//! the degree of another, so a vertex that is removable stays removable
//! and the order of removals does not matter.
//!
//! Matchings are enumerated by depth-first search over the edges avoiding
//! `x` and `y`, skipping an edge before taking it, so smaller matchings come
//! first. A branch is cut when even deleting every edge it could still take
//! leaves the graph unpeelable; peelability only improves as `M` grows, so
//! this never cuts a branch that holds a solution.

use thiserror::Error;

use crate::cert::{undirected, NiceDecomposition};
use crate::graph::{SimpleGraph, Vertex};

pub const ORACLE_MAX_VERTICES: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle is limited to {ORACLE_MAX_VERTICES} vertices, graph has {0}")]
    TooLarge(usize),
    #[error("{0}{1} is not an edge")]
    NotAnEdge(Vertex, Vertex),
}

struct Instance {
    n: usize,
    /// Edge endpoints as indices.
    edges: Vec<(usize, usize)>,
    /// Edges that may join `M` besides `xy`.
    free: Vec<usize>,
    x: usize,
    y: usize,
}

pub fn oracle_nice(g: &SimpleGraph, e: (Vertex, Vertex)) -> Result<Option<NiceDecomposition>, OracleError> {
    if g.len() > ORACLE_MAX_VERTICES {
        return Err(OracleError::TooLarge(g.len()));
    }
    let (x, y) = e;
    if !g.has_edge(x, y) {
        return Err(OracleError::NotAnEdge(x, y));
    }
    let xi = g.index_of(x).unwrap();
    let yi = g.index_of(y).unwrap();
    let edges: Vec<(usize, usize)> =
        g.edges().iter().map(|&(a, b)| (g.index_of(a).unwrap(), g.index_of(b).unwrap())).collect();
    let free = (0..edges.len())
        .filter(|&i| {
            let (a, b) = edges[i];
            ![a, b].iter().any(|&v| v == xi || v == yi)
        })
        .collect();
    let inst = Instance { n: g.len(), edges, free, x: xi, y: yi };
    let xy = inst.edges.iter().position(|&(a, b)| undirected(a as u32, b as u32) == undirected(xi as u32, yi as u32));
    let base: u128 = 1 << xy.unwrap();
    let used = (1u16 << xi) | (1u16 << yi);
    let Some(mask) = search(&inst, 0, base, used) else {
        return Ok(None);
    };
    let (order_idx, arcs_idx) = peel(&inst, mask).expect("search returns peelable matchings");
    let label = |i: usize| g.label(i);
    let matching = (0..inst.edges.len())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| undirected(label(inst.edges[i].0), label(inst.edges[i].1)))
        .collect();
    let arcs = arcs_idx.into_iter().map(|(t, h)| (label(t), label(h))).collect();
    let mut order = vec![x, y];
    order.extend(order_idx.into_iter().rev().map(label));
    Ok(Some(NiceDecomposition { arcs, boundary_edge: Some(e), matching, order }.normalized()))
}

fn search(inst: &Instance, i: usize, mask: u128, used: u16) -> Option<u128> {
    // Everything still takeable, removed at once: an upper bound on success.
    let mut optimistic = mask;
    for &j in &inst.free[i..] {
        let (a, b) = inst.edges[j];
        if used >> a & 1 == 0 && used >> b & 1 == 0 {
            optimistic |= 1 << j;
        }
    }
    peel(inst, optimistic)?;
    if i == inst.free.len() {
        return Some(mask);
    }
    if let Some(m) = search(inst, i + 1, mask, used) {
        return Some(m);
    }
    let j = inst.free[i];
    let (a, b) = inst.edges[j];
    if used >> a & 1 == 0 && used >> b & 1 == 0 {
        return search(inst, i + 1, mask | 1 << j, used | 1 << a | 1 << b);
    }
    None
}

/// Removal sequence and arcs, in instance indices.
type Peeling = (Vec<usize>, Vec<(usize, usize)>);

/// Peels `G - removed`; on success returns the removal sequence and the arcs.
fn peel(inst: &Instance, removed: u128) -> Option<Peeling> {
    let mut adj = vec![0u16; inst.n];
    for (j, &(a, b)) in inst.edges.iter().enumerate() {
        if removed >> j & 1 == 0 {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
    }
    let mut alive: u16 = if inst.n == 16 { u16::MAX } else { (1u16 << inst.n) - 1 };
    let mut seq = Vec::with_capacity(inst.n);
    let mut arcs = Vec::new();
    loop {
        let v = (0..inst.n)
            .find(|&v| v != inst.x && v != inst.y && alive >> v & 1 == 1 && (adj[v] & alive).count_ones() <= 2);
        let Some(v) = v else { break };
        let mut nb = adj[v] & alive;
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            arcs.push((v, u));
            nb &= nb - 1;
        }
        alive &= !(1 << v);
        seq.push(v);
    }
    let rest = alive & !(1 << inst.x) & !(1 << inst.y);
    (rest == 0).then_some((seq, arcs))
}
