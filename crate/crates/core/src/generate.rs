//! Random in-class plane graphs by rejection.
//!
//! Growth starts from a cycle and repeatedly draws a path (possibly a bare
//! chord) through a face between two of its corners, or a pendant edge at
//! one corner. A step survives only if the grown graph still meets the
//! requested case. Deterministic per `(seed, n, case)`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::class_gate::{satisfies, CaseTag};
use crate::graph::{PlaneGraph, Vertex};

#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: PlaneGraph,
    /// The attempt budget ran out before reaching `n` vertices.
    pub budget_exhausted: bool,
}

const START_CYCLES: [usize; 6] = [3, 5, 6, 7, 8, 10];

/// A connected in-class plane graph with at most `n` vertices. `n = 0` is
/// treated as 1.
pub fn generate(seed: u64, n: usize, case: CaseTag) -> Generated {
    let n = n.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rot: Vec<Vec<Vertex>> = match n {
        1 => vec![vec![]],
        2 => vec![vec![1], vec![0]],
        _ => {
            let choices: Vec<usize> = START_CYCLES.iter().copied().filter(|&l| l <= n).collect();
            let l = *choices.choose(&mut rng).unwrap();
            (0..l).map(|i| vec![((i + l - 1) % l) as Vertex, ((i + 1) % l) as Vertex]).collect()
        }
    };
    let mut graph = build(&rot);
    // after reaching n, keep trying chords for a while
    let mut densify = 8 * n;
    let budget = 40 * n + densify + 200;
    let mut attempts = 0;
    while attempts < budget && (rot.len() < n || densify > 0) && rot.len() >= 3 {
        attempts += 1;
        if rot.len() >= n {
            densify -= 1;
        }
        let Some(next) = propose(&graph, &rot, n, &mut rng) else { continue };
        let g = build(&next);
        if satisfies(&g.to_simple(), case) {
            rot = next;
            graph = g;
        }
    }
    let budget_exhausted = rot.len() < n;
    let graph = match graph.faces().outer().map(|o| graph.faces().face(o).walk.first().copied()) {
        Some(Some(d)) => graph.with_outer_dart(d).expect("dart of the graph"),
        _ => graph,
    };
    Generated { graph, budget_exhausted }
}

fn build(rot: &[Vec<Vertex>]) -> PlaneGraph {
    PlaneGraph::new(rot.iter().enumerate().map(|(v, r)| (v as Vertex, r.clone())))
        .expect("growth keeps rotations valid")
}

/// Inserts `w` into `rot[a]` right after `q`.
fn insert_after(rot: &mut [Vec<Vertex>], a: Vertex, q: Vertex, w: Vertex) {
    let r = &mut rot[a as usize];
    let i = r.iter().position(|&u| u == q).expect("q is a neighbor");
    r.insert(i + 1, w);
}

fn propose(g: &PlaneGraph, rot: &[Vec<Vertex>], n: usize, rng: &mut ChaCha8Rng) -> Option<Vec<Vec<Vertex>>> {
    let faces = g.faces();
    let f = faces.face(rng.gen_range(0..faces.len()));
    let walk = &f.walk;
    if walk.len() < 2 {
        return None;
    }
    // Corner i sits at walk[i].1, between walk[i].0 and walk[i + 1].1.
    let corner = |i: usize| (walk[i].1, walk[(i + 1) % walk.len()].1);
    let room = n - rot.len();
    let mut next = rot.to_vec();
    if room > 0 && rng.gen_bool(0.1) {
        let (a, q) = corner(rng.gen_range(0..walk.len()));
        let w = next.len() as Vertex;
        next.push(vec![a]);
        insert_after(&mut next, a, q, w);
        return Some(next);
    }
    // Paths prefer corners at low-degree vertices, and are sized so that
    // both new faces usually have length at least 5: short cycles are what
    // the class hypotheses restrict.
    let low: Vec<usize> = (0..walk.len()).filter(|&i| g.degree(walk[i].1) <= 2).collect();
    let pick = |rng: &mut ChaCha8Rng| match low.choose(rng) {
        Some(&i) if rng.gen_bool(0.7) => i,
        _ => rng.gen_range(0..walk.len()),
    };
    let i = pick(rng);
    let j = pick(rng);
    let ((a, qa), (b, qb)) = (corner(i), corner(j));
    if a == b {
        return None;
    }
    let d = (j + walk.len() - i) % walk.len();
    let shorter = d.min(walk.len() - d);
    let min_face = if rng.gen_bool(0.15) { 3usize } else { 5 };
    let k = min_face.saturating_sub(shorter + 1);
    if k > room {
        return None;
    }
    if k == 0 && g.has_edge(a, b) {
        return None;
    }
    let first = next.len() as Vertex;
    let inner: Vec<Vertex> = (0..k as Vertex).map(|t| first + t).collect();
    let path: Vec<Vertex> = std::iter::once(a).chain(inner.iter().copied()).chain([b]).collect();
    for t in 1..path.len() - 1 {
        next.push(vec![path[t - 1], path[t + 1]]);
    }
    insert_after(&mut next, a, qa, path[1]);
    insert_after(&mut next, b, qb, path[path.len() - 2]);
    Some(next)
}
