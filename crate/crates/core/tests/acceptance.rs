//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Every check is exact; time limits are part of the
//! criterion where one is stated.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twoone_core::certify::{greedy_color, oracle_nice, verify_nice, ListAssignment};
use twoone_core::class_gate::{classify, contains_config, find_cycle_of_length, is_cycle, CaseTag, ConfigId};
use twoone_core::decompose::{decompose_nice, extend_patterns, DecomposeOptions, ExtensionPattern};
use twoone_core::discharge::{discharge, Element};
use twoone_core::generate::generate;
use twoone_core::{NiceDecomposition, PlaneGraph, SimpleGraph, Vertex};

const PER_CASE: u64 = 500;
const MAX_N: usize = 60;

struct Item {
    case: CaseTag,
    seed: u64,
    g: PlaneGraph,
    edges: Vec<(Vertex, Vertex)>,
}

fn corpus() -> Vec<Item> {
    let mut out = Vec::new();
    for case in CaseTag::ALL {
        for seed in 0..PER_CASE {
            let n = 4 + (seed as usize % (MAX_N - 3));
            let g = generate(seed, n, case).graph;
            let edges = sampled_outer_edges(&g, 3);
            out.push(Item { case, seed, g, edges });
        }
    }
    out
}

/// Distinct outer-face edges, `k` of them spread along the walk (all of
/// them when there are fewer).
fn sampled_outer_edges(g: &PlaneGraph, k: usize) -> Vec<(Vertex, Vertex)> {
    let faces = g.faces();
    let Some(o) = faces.outer() else { return Vec::new() };
    let mut seen = BTreeSet::new();
    let distinct: Vec<(Vertex, Vertex)> =
        faces.face(o).walk.iter().copied().filter(|&(a, b)| seen.insert((a.min(b), a.max(b)))).collect();
    if distinct.len() <= k {
        return distinct;
    }
    (0..k).map(|i| distinct[i * distinct.len() / k]).collect()
}

type Outcome = Result<String, String>;

fn c1_instances(items: &[Item], certs: &mut Vec<(usize, NiceDecomposition)>) -> Outcome {
    let opts = DecomposeOptions::default();
    let mut runs = 0;
    for (i, it) in items.iter().enumerate() {
        if !classify(&it.g.to_simple()).contains(&it.case) {
            return Err(format!("{} seed {}: generator output out of class", it.case, it.seed));
        }
        if it.edges.len() < 3 {
            return Err(format!("{} seed {}: fewer than 3 outer edges", it.case, it.seed));
        }
        for &e in &it.edges {
            let (c, _) = decompose_nice(&it.g, e, &opts)
                .map_err(|err| format!("{} seed {} edge {e:?}: {err}", it.case, it.seed))?;
            let v = verify_nice(&it.g.to_simple(), e, &c);
            if !v.is_ok() {
                return Err(format!("{} seed {} edge {e:?}: {v}", it.case, it.seed));
            }
            certs.push((i, c));
            runs += 1;
        }
    }
    Ok(format!("{} graphs, {runs} (graph, edge) instances decomposed and verified", items.len()))
}

fn c2_oracle() -> Outcome {
    let opts = DecomposeOptions::default();
    let (mut graphs, mut instances) = (0, 0);
    for case in CaseTag::ALL {
        for seed in 0..70u64 {
            let n = 3 + (seed as usize % 10);
            let g = generate(10_000 + seed, n, case).graph;
            if g.vertex_count() > 12 {
                return Err(format!("generator exceeded 12 vertices: {}", g.vertex_count()));
            }
            let s = g.to_simple();
            graphs += 1;
            for e in sampled_outer_edges(&g, usize::MAX) {
                let o = oracle_nice(&s, e).map_err(|err| err.to_string())?;
                let Some(o) = o else {
                    return Err(format!("{case} seed {seed} edge {e:?}: oracle found none"));
                };
                let (d, _) = decompose_nice(&g, e, &opts).map_err(|err| format!("{case} seed {seed}: {err}"))?;
                for (who, c) in [("oracle", &o), ("decomposer", &d)] {
                    let v = verify_nice(&s, e, c);
                    if !v.is_ok() {
                        return Err(format!("{case} seed {seed} {who}: {v}"));
                    }
                }
                instances += 1;
            }
        }
    }
    if graphs < 200 {
        return Err(format!("only {graphs} graphs"));
    }
    Ok(format!("{graphs} graphs with n <= 12, {instances} boundary edges, oracle and decomposer agree"))
}

fn c3_steps(items: &[Item]) -> Outcome {
    let opts = DecomposeOptions { verify_steps: true, ..Default::default() };
    let mut steps = 0;
    let mut kinds = BTreeMap::new();
    for it in items {
        for &e in &it.edges {
            let (_, stats) = decompose_nice(&it.g, e, &opts)
                .map_err(|err| format!("{} seed {} edge {e:?}: {err}", it.case, it.seed))?;
            steps += stats.verified_steps;
            for (k, n) in stats.reductions {
                *kinds.entry(format!("{k:?}")).or_insert(0) += n;
            }
        }
    }
    // The generated corpus is sparse enough that low-degree deletions
    // carry it; a 3-regular fixture forces the other branches.
    let d = common::dodecahedron();
    for e in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)] {
        let (_, stats) = decompose_nice(&d, e, &opts).map_err(|err| format!("dodecahedron edge {e:?}: {err}"))?;
        steps += stats.verified_steps;
        for (k, n) in stats.reductions {
            *kinds.entry(format!("{k:?}")).or_insert(0) += n;
        }
    }
    Ok(format!("{steps} intermediate certificates verified; reductions {kinds:?}"))
}

/// Builds a plane graph from `(vertex, ccw neighbors)` pairs.
fn plane(rot: &[(Vertex, &[Vertex])]) -> PlaneGraph {
    PlaneGraph::new(rot.iter().map(|(v, r)| (*v, r.to_vec()))).unwrap()
}

fn c4_charges(items: &[Item]) -> Outcome {
    let mut checked = 0;
    for it in items {
        let Some(&e) = it.edges.first() else { continue };
        for case in classify(&it.g.to_simple()) {
            let l = discharge(&it.g, e, case).map_err(|err| err.to_string())?;
            if l.total() != 0 {
                return Err(format!("{} seed {} under {case}: total {}/6", it.case, it.seed, l.total()));
            }
            checked += 1;
        }
    }

    // Internal 3-face: -6 plus 2 across each edge.
    let tri = plane(&[(0, &[1, 2]), (1, &[2, 0]), (2, &[0, 1])]).with_outer_walk(&[0, 2, 1]).unwrap();
    let l = discharge(&tri, (0, 1), CaseTag::Case3).map_err(|e| e.to_string())?;
    let faces = tri.faces();
    let inner = (0..faces.len()).find(|&f| Some(f) != faces.outer()).unwrap();
    let w1 = l.charge(Element::Face(inner));

    // Normal 3-vertex 0 on an internal 4-face 0-1-2-3 and an internal
    // 5-face 0-4-5-6-1; the rest is the outer face, boundary edge 2-3.
    let g = plane(&[
        (0, &[1, 4, 3]),
        (1, &[6, 0, 2]),
        (2, &[1, 3]),
        (3, &[2, 0]),
        (4, &[5, 0]),
        (5, &[4, 6]),
        (6, &[5, 1]),
    ])
    .with_outer_walk(&[3, 2, 1, 6, 5, 4, 0])
    .unwrap();
    let w2 = discharge(&g, (2, 3), CaseTag::Case1).map_err(|e| e.to_string())?.charge(Element::Vertex(0));

    // Normal 6-vertex 0 whose corners are six internal 4-faces 0-s-m-s'.
    let mut rot: Vec<(Vertex, Vec<Vertex>)> = vec![(0, (1..=6).collect())];
    for i in 0..6u32 {
        let s = 1 + i;
        let m = 7 + i;
        let prev_m = 7 + (i + 5) % 6;
        rot.push((s, vec![m, 0, prev_m]));
        rot.push((m, vec![1 + (i + 1) % 6, s]));
    }
    let wheel = PlaneGraph::new(rot).unwrap();
    let w3 = discharge(&wheel, (1, 7), CaseTag::Case2).map_err(|e| e.to_string())?.charge(Element::Vertex(0));

    if (w1, w2, w3) != (0, 0, 0) {
        return Err(format!("worked values: internal 3-face {w1}/6, minor 3-vertex {w2}/6, 6-vertex {w3}/6"));
    }
    Ok(format!("{checked} (graph, case) ledgers sum to 0; worked values 0, 0, 0 reproduced"))
}

/// Independent check of a 1-defective list coloring with defects in `M`.
fn coloring_ok(
    s: &SimpleGraph,
    c: &NiceDecomposition,
    lists: &BTreeMap<Vertex, Vec<u32>>,
    color: &BTreeMap<Vertex, u32>,
) -> Result<(), String> {
    let m: BTreeSet<(Vertex, Vertex)> = c.matching.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let mut mono: BTreeMap<Vertex, usize> = BTreeMap::new();
    for &v in s.labels() {
        let col = color.get(&v).ok_or(format!("{v} uncolored"))?;
        if !lists[&v].contains(col) {
            return Err(format!("{v} colored off its list"));
        }
    }
    for (a, b) in s.edges() {
        if color[&a] == color[&b] {
            if !m.contains(&(a, b)) {
                return Err(format!("{a}{b} monochromatic outside M"));
            }
            for v in [a, b] {
                *mono.entry(v).or_insert(0) += 1;
                if mono[&v] > 1 {
                    return Err(format!("{v} has two monochromatic edges"));
                }
            }
        }
    }
    Ok(())
}

fn c5_coloring(items: &[Item], certs: &[(usize, NiceDecomposition)]) -> Outcome {
    for (i, c) in certs {
        let s = items[*i].g.to_simple();
        let lists: BTreeMap<Vertex, Vec<u32>> = s.labels().iter().map(|&v| (v, vec![1, 2, 3])).collect();
        let col = greedy_color(&s, c, None).map_err(|e| e.to_string())?;
        coloring_ok(&s, c, &lists, &col.color).map_err(|e| format!("uniform lists: {e}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let palette: Vec<u32> = (1..=6).collect();
    let step = certs.len() / 50;
    let mut runs = 0;
    for (i, c) in certs.iter().step_by(step.max(1)).take(50) {
        let s = items[*i].g.to_simple();
        for _ in 0..1000 {
            let lists: BTreeMap<Vertex, Vec<u32>> =
                s.labels().iter().map(|&v| (v, palette.choose_multiple(&mut rng, 3).copied().collect())).collect();
            let la = ListAssignment::new(lists.clone()).map_err(|e| e.to_string())?;
            let col = greedy_color(&s, c, Some(&la)).map_err(|e| e.to_string())?;
            coloring_ok(&s, c, &lists, &col.color)?;
            runs += 1;
        }
    }
    Ok(format!("{} certificates with uniform lists, {runs} random list assignments on 50 graphs", certs.len()))
}

/// Plain backtracking over injective maps, pattern vertices in index order.
fn naive_embeds(p: &SimpleGraph, h: &SimpleGraph) -> bool {
    fn go(p: &SimpleGraph, h: &SimpleGraph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == p.len() {
            return true;
        }
        for j in 0..h.len() {
            if used[j] {
                continue;
            }
            if p.adj(i).iter().all(|&k| k >= i || h.adjacent(map[k], j)) {
                map.push(j);
                used[j] = true;
                if go(p, h, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    go(p, h, &mut Vec::new(), &mut vec![false; h.len()])
}

/// Simple cycles through their least vertex, by exhaustive path search.
fn naive_has_cycle(h: &SimpleGraph, k: usize) -> bool {
    fn go(h: &SimpleGraph, s: usize, v: usize, len: usize, k: usize, on: &mut Vec<bool>) -> bool {
        if len == k {
            return h.adjacent(v, s);
        }
        for &u in h.adj(v) {
            if u > s && !on[u] {
                on[u] = true;
                let hit = go(h, s, u, len + 1, k, on);
                on[u] = false;
                if hit {
                    return true;
                }
            }
        }
        false
    }
    (0..h.len()).any(|s| {
        let mut on = vec![false; h.len()];
        on[s] = true;
        go(h, s, s, 1, k, &mut on)
    })
}

fn c6_class_gate() -> Outcome {
    for c in ConfigId::ALL {
        if contains_config(&c.pattern(), c).is_none() {
            return Err(format!("{c} not found in itself"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut pairs, mut positives, mut cyc) = (0, 0, 0);
    for host in 0..100 {
        let n = rng.gen_range(5..=12);
        let p = rng.gen_range(0.15..0.65);
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(p) {
                    edges.push((a, b));
                }
            }
        }
        let h = SimpleGraph::from_parts((0..n).collect(), edges);
        for c in ConfigId::ALL {
            let fast = contains_config(&h, c);
            let naive = naive_embeds(&c.pattern(), &h);
            if fast.is_some() != naive {
                return Err(format!("host {host}: {c} fast {} naive {naive}", fast.is_some()));
            }
            if let Some(map) = fast {
                for &(a, b) in c.edges() {
                    if !h.has_edge(map[a as usize].1, map[b as usize].1) {
                        return Err(format!("host {host}: {c} witness misses edge {a}{b}"));
                    }
                }
                positives += 1;
            }
            pairs += 1;
        }
        for k in 3..=9 {
            let fast = find_cycle_of_length(&h, k).map_err(|e| e.to_string())?;
            if fast.is_some() != naive_has_cycle(&h, k) {
                return Err(format!("host {host}: {k}-cycle disagreement"));
            }
            if let Some(cy) = fast {
                if cy.len() != k || !is_cycle(&h, &cy) {
                    return Err(format!("host {host}: bad {k}-cycle witness {cy:?}"));
                }
            }
            cyc += 1;
        }
    }
    Ok(format!(
        "12 patterns self-detected; {pairs} (pattern, host) pairs ({positives} embeddings), {cyc} cycle queries agree"
    ))
}

/// Applies a pattern to its configuration in isolation: every missing
/// degree becomes a stub to a fresh outside vertex.
fn c7_patterns() -> Outcome {
    let table = extend_patterns();
    for p in &table {
        p.check_contract().map_err(|e| e.to_string())?;
        isolated(p).map_err(|e| format!("{}: {e}", p.name))?;
    }
    let names: Vec<&str> = table.iter().map(|p| p.name.as_str()).collect();
    Ok(format!("{} patterns: {}", table.len(), names.join(", ")))
}

fn isolated(p: &ExtensionPattern) -> Result<(), String> {
    let r = p.roles.len();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let conf: BTreeSet<(usize, usize)> = p.edges.iter().map(|&(a, b)| key(a, b)).collect();
    let mut matched = vec![false; r];
    for &(a, b) in &p.matching {
        if !conf.contains(&key(a, b)) {
            return Err(format!("matching edge {a}{b} outside the configuration"));
        }
        for v in [a, b] {
            if std::mem::replace(&mut matched[v], true) {
                return Err(format!("role {v} matched twice"));
            }
        }
    }
    // Topological order of the drawn arcs, heads first.
    let mut out: Vec<usize> = vec![0; r];
    for &(t, _) in &p.arcs {
        out[t] += 1;
    }
    let mut order = Vec::new();
    let mut left = out.clone();
    let mut done = vec![false; r];
    while order.len() < r {
        let Some(v) = (0..r).find(|&v| !done[v] && left[v] == 0) else {
            return Err("drawn arcs have a cycle".into());
        };
        done[v] = true;
        order.push(v);
        for &(t, h) in &p.arcs {
            if h == v {
                left[t] -= 1;
            }
        }
    }
    let pos: Vec<usize> = (0..r).map(|v| order.iter().position(|&w| w == v).unwrap()).collect();
    let mut arcs: Vec<(usize, usize)> = p.arcs.clone();
    let assigned: BTreeSet<(usize, usize)> = p.matching.iter().chain(&p.arcs).map(|&(a, b)| key(a, b)).collect();
    for &(a, b) in &conf {
        if !assigned.contains(&(a, b)) {
            arcs.push(if pos[a] > pos[b] { (a, b) } else { (b, a) });
        }
    }
    let mut next = r;
    for v in 0..r {
        let inside = conf.iter().filter(|&&(a, b)| a == v || b == v).count();
        for _ in inside..p.degrees[v] {
            arcs.push((v, next));
            next += 1;
        }
    }
    for v in 0..r {
        let d = arcs.iter().filter(|a| a.0 == v).count();
        if d > 2 {
            return Err(format!("role {} has out-degree {d}", p.roles[v]));
        }
    }
    // Whole orientation acyclic: peel sinks.
    let mut alive: BTreeSet<usize> = (0..next).collect();
    loop {
        let sink = alive.iter().copied().find(|&v| !arcs.iter().any(|&(t, h)| t == v && alive.contains(&h)));
        match sink {
            Some(v) => {
                alive.remove(&v);
            }
            None if alive.is_empty() => break,
            None => return Err("orientation has a cycle".into()),
        }
    }
    let covered = arcs.iter().filter(|&&(t, h)| t < r && h < r).count() + p.matching.len();
    if covered != conf.len() {
        return Err(format!("{covered} of {} configuration edges assigned", conf.len()));
    }
    Ok(())
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let t = Instant::now();
    let r = f();
    let el = t.elapsed();
    let r = match (r, limit) {
        (Ok(m), Some(lim)) if el > lim => Err(format!("{m}, but took {el:.1?} (limit {lim:?})")),
        (r, _) => r,
    };
    (r, el)
}

fn main() -> ExitCode {
    let t = Instant::now();
    let items = corpus();
    println!("corpus: {} graphs generated in {:.1?}", items.len(), t.elapsed());
    let mut certs = Vec::new();
    let results = [
        ("1 Instance check", timed(Some(Duration::from_secs(120)), || c1_instances(&items, &mut certs))),
        ("2 Oracle equivalence", timed(Some(Duration::from_secs(60)), c2_oracle)),
        ("3 Reduction-step soundness", timed(None, || c3_steps(&items))),
        ("4 Charge conservation", timed(None, || c4_charges(&items))),
        ("5 Coloring consequence", timed(Some(Duration::from_secs(60)), || c5_coloring(&items, &certs))),
        ("6 Class-gate correctness", timed(None, c6_class_gate)),
        ("7 Extension-pattern local contract", timed(None, c7_patterns)),
    ];
    let mut failed = 0;
    for (name, (r, el)) in &results {
        match r {
            Ok(m) => println!("PASS  {name} ({el:.1?}): {m}"),
            Err(m) => {
                failed += 1;
                println!("FAIL  {name} ({el:.1?}): {m}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
