//! Plane graphs given by rotation systems.
//!
//! Rotations list the neighbors of each vertex in counter-clockwise order.
//! A face walk keeps its face on the left: after arriving at `v` from `u`
//! the walk leaves along the neighbor that precedes `u` in the rotation of
//! `v`. With counter-clockwise rotations bounded faces are therefore walked
//! counter-clockwise and the unbounded face clockwise.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

pub type Vertex = u32;

/// A directed edge side `(tail, head)`.
pub type Dart = (Vertex, Vertex);

/// Hard cap on vertex ids; ids index a slot table.
pub const MAX_VERTEX_ID: Vertex = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} is declared more than once")]
    DuplicateVertex(Vertex),
    #[error("vertex id {0} exceeds the supported maximum")]
    IdTooLarge(Vertex),
    #[error("vertex {0} lists itself as a neighbor")]
    Loop(Vertex),
    #[error("vertex {v} lists neighbor {u} more than once")]
    ParallelEdge { v: Vertex, u: Vertex },
    #[error("vertex {v} lists unknown neighbor {u}")]
    UnknownNeighbor { v: Vertex, u: Vertex },
    #[error("vertex {v} lists {u} but {u} does not list {v}")]
    Asymmetric { v: Vertex, u: Vertex },
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(Vertex, Vertex),
    #[error("walk {0:?} does not match any face")]
    NoSuchFace(Vec<Vertex>),
    #[error("edge {0}-{1} does not lie on the outer face")]
    NotOnOuterFace(Vertex, Vertex),
    #[error("cannot delete boundary edge endpoint {0}")]
    DeletesBoundary(Vertex),
}

/// A face of a traced rotation system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    /// Darts in walk order; consecutive darts share a vertex.
    pub walk: Vec<Dart>,
    /// Set for the single face of an isolated vertex, whose walk is empty.
    pub isolated: Option<Vertex>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.walk.len()
    }

    /// Vertices in walk order (tails of the darts).
    pub fn vertices(&self) -> Vec<Vertex> {
        match self.isolated {
            Some(v) => vec![v],
            None => self.walk.iter().map(|d| d.0).collect(),
        }
    }

    pub fn contains_dart(&self, d: Dart) -> bool {
        self.walk.contains(&d)
    }
}

/// All faces of a plane graph plus the dart-to-face index.
#[derive(Debug, Clone)]
pub struct FaceSet {
    pub faces: Vec<Face>,
    dart_face: HashMap<Dart, usize>,
    outer: Option<usize>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    /// The face on the left of dart `d`.
    pub fn face_of(&self, d: Dart) -> Option<usize> {
        self.dart_face.get(&d).copied()
    }

    pub fn outer(&self) -> Option<usize> {
        self.outer
    }

    pub fn iter(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter()
    }
}

/// Rotation of a cyclic sequence so that it starts at its lexicographically
/// least rotation.
pub fn canonical_cycle(seq: &[Vertex]) -> Vec<Vertex> {
    if seq.is_empty() {
        return Vec::new();
    }
    (0..seq.len()).map(|s| seq[s..].iter().chain(&seq[..s]).copied().collect::<Vec<_>>()).min().unwrap()
}

/// Simple plane graph with a rotation system, an optional designated outer
/// face and an optional boundary edge.
///
/// Values are immutable after construction; every operation returns a new
/// graph. Vertex ids survive deletions unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    rot: Vec<Option<Vec<Vertex>>>,
    n: usize,
    m: usize,
    /// A dart whose left face is the outer face.
    outer: Option<Dart>,
    boundary: Option<(Vertex, Vertex)>,
}

impl Default for PlaneGraph {
    fn default() -> Self {
        Self::empty()
    }
}

impl PlaneGraph {
    pub fn empty() -> Self {
        PlaneGraph { rot: Vec::new(), n: 0, m: 0, outer: None, boundary: None }
    }

    /// Builds a graph from `(vertex, rotation)` pairs, validating simplicity
    /// and rotation symmetry.
    pub fn new<I>(rotations: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vec<Vertex>)>,
    {
        let mut rot: Vec<Option<Vec<Vertex>>> = Vec::new();
        let mut n = 0;
        for (v, nbrs) in rotations {
            if v >= MAX_VERTEX_ID {
                return Err(GraphError::IdTooLarge(v));
            }
            let i = v as usize;
            if rot.len() <= i {
                rot.resize(i + 1, None);
            }
            if rot[i].is_some() {
                return Err(GraphError::DuplicateVertex(v));
            }
            rot[i] = Some(nbrs);
            n += 1;
        }
        let mut twice_m = 0;
        for (i, slot) in rot.iter().enumerate() {
            let Some(nbrs) = slot else { continue };
            let v = i as Vertex;
            let mut seen = BTreeSet::new();
            for &u in nbrs {
                if u == v {
                    return Err(GraphError::Loop(v));
                }
                if !seen.insert(u) {
                    return Err(GraphError::ParallelEdge { v, u });
                }
                match rot.get(u as usize) {
                    Some(Some(back)) => {
                        if !back.contains(&v) {
                            return Err(GraphError::Asymmetric { v, u });
                        }
                    }
                    _ => return Err(GraphError::UnknownNeighbor { v, u }),
                }
            }
            twice_m += nbrs.len();
        }
        Ok(PlaneGraph { rot, n, m: twice_m / 2, outer: None, boundary: None })
    }

    /// Designates the outer face by its vertex walk. The walk is matched
    /// cyclically, first in the traced orientation and then reversed.
    pub fn with_outer_walk(mut self, walk: &[Vertex]) -> Result<Self, GraphError> {
        let faces = trace_faces_raw(&self);
        let target = canonical_cycle(walk);
        let reversed: Vec<Vertex> = walk.iter().rev().copied().collect();
        let target_rev = canonical_cycle(&reversed);
        let find = |t: &Vec<Vertex>| faces.iter().find(|f| !f.walk.is_empty() && canonical_cycle(&f.vertices()) == *t);
        let face = find(&target).or_else(|| find(&target_rev)).ok_or_else(|| GraphError::NoSuchFace(walk.to_vec()))?;
        self.outer = Some(face.walk[0]);
        Ok(self)
    }

    /// Designates the outer face as the face on the left of dart `d`.
    pub fn with_outer_dart(mut self, d: Dart) -> Result<Self, GraphError> {
        if !self.has_edge(d.0, d.1) {
            return Err(GraphError::NotAnEdge(d.0, d.1));
        }
        self.outer = Some(d);
        Ok(self)
    }

    /// Sets the boundary edge; it must lie on the outer face.
    pub fn with_boundary_edge(mut self, x: Vertex, y: Vertex) -> Result<Self, GraphError> {
        if !self.has_edge(x, y) {
            return Err(GraphError::NotAnEdge(x, y));
        }
        let faces = self.faces();
        let outer = faces.outer().map(|o| faces.face(o));
        let on_outer = outer.is_some_and(|f| f.contains_dart((x, y)) || f.contains_dart((y, x)));
        if !on_outer {
            return Err(GraphError::NotOnOuterFace(x, y));
        }
        if self.outer.is_none() {
            self.outer = outer.map(|f| f.walk[0]);
        }
        self.boundary = Some((x, y));
        Ok(self)
    }

    pub fn without_boundary_edge(mut self) -> Self {
        self.boundary = None;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        matches!(self.rot.get(v as usize), Some(Some(_)))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.rot.iter().enumerate().filter(|(_, r)| r.is_some()).map(|(i, _)| i as Vertex)
    }

    /// Neighbors of `v` in rotation order; empty for unknown vertices.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        match self.rot.get(v as usize) {
            Some(Some(r)) => r,
            _ => &[],
        }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u).contains(&v)
    }

    /// Edges as `(min, max)` pairs in sorted order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.m);
        for v in self.vertices() {
            for &u in self.neighbors(v) {
                if v < u {
                    out.push((v, u));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn boundary_edge(&self) -> Option<(Vertex, Vertex)> {
        self.boundary
    }

    /// The stored outer dart, if the outer face was designated explicitly.
    pub fn outer_dart(&self) -> Option<Dart> {
        self.outer
    }

    /// Vertex following `u` in the rotation of `v`.
    pub fn rotation_next(&self, v: Vertex, u: Vertex) -> Option<Vertex> {
        let r = self.neighbors(v);
        let i = r.iter().position(|&w| w == u)?;
        Some(r[(i + 1) % r.len()])
    }

    /// Vertex preceding `u` in the rotation of `v`.
    pub fn rotation_prev(&self, v: Vertex, u: Vertex) -> Option<Vertex> {
        let r = self.neighbors(v);
        let i = r.iter().position(|&w| w == u)?;
        Some(r[(i + r.len() - 1) % r.len()])
    }

    /// Traces every face and resolves the outer face: the designated one,
    /// or else the lexicographically least face of maximum degree.
    pub fn faces(&self) -> FaceSet {
        let faces = trace_faces_raw(self);
        let mut dart_face = HashMap::with_capacity(2 * self.m);
        for f in &faces {
            for &d in &f.walk {
                dart_face.insert(d, f.id);
            }
        }
        let outer = match self.outer {
            Some(d) => dart_face.get(&d).copied(),
            None => default_outer(&faces),
        };
        FaceSet { faces, dart_face, outer }
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.rot.len()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s as usize] {
                continue;
            }
            seen[s as usize] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &u in self.neighbors(v) {
                    if !seen[u as usize] {
                        seen[u as usize] = true;
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Cut vertices by the low-point method.
    pub fn cut_vertices(&self) -> BTreeSet<Vertex> {
        let len = self.rot.len();
        let mut disc = vec![u32::MAX; len];
        let mut low = vec![0u32; len];
        let mut cut = BTreeSet::new();
        let mut time = 0u32;
        for root in self.vertices() {
            if disc[root as usize] != u32::MAX {
                continue;
            }
            disc[root as usize] = time;
            low[root as usize] = time;
            time += 1;
            let mut root_children = 0;
            // (vertex, parent, next neighbor index)
            let mut stack: Vec<(Vertex, Option<Vertex>, usize)> = vec![(root, None, 0)];
            while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
                let nbrs = self.neighbors(v);
                if *idx < nbrs.len() {
                    let u = nbrs[*idx];
                    *idx += 1;
                    if Some(u) == parent {
                        continue;
                    }
                    if disc[u as usize] == u32::MAX {
                        disc[u as usize] = time;
                        low[u as usize] = time;
                        time += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((u, Some(v), 0));
                    } else {
                        low[v as usize] = low[v as usize].min(disc[u as usize]);
                    }
                } else {
                    stack.pop();
                    if let Some(p) = parent {
                        low[p as usize] = low[p as usize].min(low[v as usize]);
                        if p != root && low[v as usize] >= disc[p as usize] {
                            cut.insert(p);
                        }
                    }
                }
            }
            if root_children > 1 {
                cut.insert(root);
            }
        }
        cut
    }

    /// Removes `doomed` and splices the removed neighbors out of every
    /// surviving rotation. The outer face follows the region it bounded.
    pub fn delete_vertices(&self, doomed: &BTreeSet<Vertex>) -> Result<PlaneGraph, GraphError> {
        for &v in doomed {
            if !self.contains(v) {
                return Err(GraphError::UnknownVertex(v));
            }
        }
        if let Some((x, y)) = self.boundary {
            for v in [x, y] {
                if doomed.contains(&v) {
                    return Err(GraphError::DeletesBoundary(v));
                }
            }
        }
        if doomed.is_empty() {
            return Ok(self.clone());
        }
        let outer = self.surviving_outer_dart(doomed);
        let mut rot = self.rot.clone();
        let mut n = self.n;
        // Each removed edge is counted once: from whichever endpoint goes first.
        let mut removed_edges = 0;
        for &v in doomed {
            let nbrs = rot[v as usize].take().unwrap();
            n -= 1;
            for u in nbrs {
                if let Some(r) = rot[u as usize].as_mut() {
                    r.retain(|&w| w != v);
                    removed_edges += 1;
                }
            }
        }
        while rot.last().is_some_and(|r| r.is_none()) {
            rot.pop();
        }
        Ok(PlaneGraph { rot, n, m: self.m - removed_edges, outer, boundary: self.boundary })
    }

    /// Keeps only `keep`.
    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> Result<PlaneGraph, GraphError> {
        let doomed: BTreeSet<Vertex> = self.vertices().filter(|v| !keep.contains(v)).collect();
        self.delete_vertices(&doomed)
    }

    fn surviving_outer_dart(&self, doomed: &BTreeSet<Vertex>) -> Option<Dart> {
        let faces = self.faces();
        let outer = faces.outer()?;
        let walk = &faces.face(outer).walk;
        let start = match self.outer {
            Some(d) => walk.iter().position(|&w| w == d).unwrap_or(0),
            None => 0,
        };
        (0..walk.len())
            .map(|i| walk[(start + i) % walk.len()])
            .find(|(a, b)| !doomed.contains(a) && !doomed.contains(b))
    }

    /// Abstract view for embedding-independent queries.
    pub fn to_simple(&self) -> SimpleGraph {
        SimpleGraph::from_parts(self.vertices().collect(), self.edges())
    }
}

fn trace_faces_raw(g: &PlaneGraph) -> Vec<Face> {
    let mut faces = Vec::new();
    let mut used: HashMap<Dart, ()> = HashMap::with_capacity(2 * g.m);
    for v in g.vertices() {
        let nbrs = g.neighbors(v);
        if nbrs.is_empty() {
            faces.push(Face { id: faces.len(), walk: Vec::new(), isolated: Some(v) });
            continue;
        }
        for &u in nbrs {
            let start = (v, u);
            if used.contains_key(&start) {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                used.insert(d, ());
                walk.push(d);
                let (a, b) = d;
                let w = g.rotation_prev(b, a).expect("rotation symmetry");
                d = (b, w);
                if d == start {
                    break;
                }
            }
            faces.push(Face { id: faces.len(), walk, isolated: None });
        }
    }
    faces
}

fn default_outer(faces: &[Face]) -> Option<usize> {
    let max = faces.iter().map(Face::degree).max()?;
    faces.iter().filter(|f| f.degree() == max).min_by_key(|f| canonical_cycle(&f.vertices())).map(|f| f.id)
}

/// Embedding-free simple graph on arbitrary vertex labels, indexed densely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    labels: Vec<Vertex>,
    adj: Vec<Vec<usize>>,
    bits: Vec<Vec<u64>>,
}

impl SimpleGraph {
    /// Builds from vertex labels and edges; edges may introduce new labels.
    /// Loops and repeated edges are dropped.
    pub fn from_parts(vertices: Vec<Vertex>, edges: Vec<(Vertex, Vertex)>) -> Self {
        let mut labels: BTreeSet<Vertex> = vertices.into_iter().collect();
        for &(a, b) in &edges {
            labels.insert(a);
            labels.insert(b);
        }
        let labels: Vec<Vertex> = labels.into_iter().collect();
        let index: HashMap<Vertex, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = labels.len();
        let words = n.div_ceil(64);
        let mut adj = vec![Vec::new(); n];
        let mut bits = vec![vec![0u64; words]; n];
        for (a, b) in edges {
            if a == b {
                continue;
            }
            let (i, j) = (index[&a], index[&b]);
            if bits[i][j / 64] >> (j % 64) & 1 == 1 {
                continue;
            }
            bits[i][j / 64] |= 1 << (j % 64);
            bits[j][i / 64] |= 1 << (i % 64);
            adj[i].push(j);
            adj[j].push(i);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        SimpleGraph { labels, adj, bits }
    }

    pub fn from_edges(edges: Vec<(Vertex, Vertex)>) -> Self {
        Self::from_parts(Vec::new(), edges)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn label(&self, i: usize) -> Vertex {
        self.labels[i]
    }

    pub fn labels(&self) -> &[Vertex] {
        &self.labels
    }

    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.labels.binary_search(&v).ok()
    }

    /// Neighbors of dense index `i`, ascending.
    pub fn adj(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.bits[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(i), Some(j)) => self.adjacent(i, j),
            _ => false,
        }
    }

    /// Edges by label, `(min, max)`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for &j in &self.adj[i] {
                if i < j {
                    out.push((self.labels[i], self.labels[j]));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Drops the labelled vertices.
    pub fn without(&self, doomed: &BTreeSet<Vertex>) -> SimpleGraph {
        let vertices = self.labels.iter().copied().filter(|v| !doomed.contains(v)).collect();
        let edges = self.edges().into_iter().filter(|(a, b)| !doomed.contains(a) && !doomed.contains(b)).collect();
        SimpleGraph::from_parts(vertices, edges)
    }
}
