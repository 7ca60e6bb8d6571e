//! Backtracking subgraph (not induced) matcher for small patterns.
//!
//! Pattern vertices are placed in a connectivity-first order so every
//! vertex after the first has an already placed neighbor whose host
//! neighborhood supplies the candidates. Host candidates must have at least
//! the pattern degree. Equivalent embeddings under pattern automorphisms are
//! cut by ordering constraints `f(a) < f(b)` derived from a stabilizer chain.

use crate::graph::SimpleGraph;

#[derive(Debug, Clone)]
pub struct Matcher {
    pattern: SimpleGraph,
    /// Placement order of pattern vertices.
    order: Vec<usize>,
    /// For each order position, the placed pattern neighbors.
    back: Vec<Vec<usize>>,
    /// Pairs `(a, b)` requiring `f(a) < f(b)`.
    less: Vec<(usize, usize)>,
}

impl Matcher {
    pub fn new(pattern: SimpleGraph) -> Self {
        let order = placement_order(&pattern);
        let back = back_neighbors(&pattern, &order);
        let mut m = Matcher { pattern, order, back, less: Vec::new() };
        let auts = m.automorphisms();
        m.less = stabilizer_constraints(&m.order, auts);
        m
    }

    pub fn pattern(&self) -> &SimpleGraph {
        &self.pattern
    }

    /// Number of symmetry-breaking constraints in force.
    pub fn constraint_count(&self) -> usize {
        self.less.len()
    }

    /// First embedding found, as pattern index -> host index.
    pub fn find(&self, host: &SimpleGraph) -> Option<Vec<usize>> {
        let mut out = None;
        self.search(host, &mut |f| {
            out = Some(f.to_vec());
            true
        });
        out
    }

    /// Every embedding modulo pattern automorphisms.
    pub fn find_all(&self, host: &SimpleGraph) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.search(host, &mut |f| {
            out.push(f.to_vec());
            false
        });
        out
    }

    fn automorphisms(&self) -> Vec<Vec<usize>> {
        let mut auts = Vec::new();
        self.search(&self.pattern, &mut |f| {
            auts.push(f.to_vec());
            false
        });
        auts
    }

    /// Calls `visit` on each embedding until it returns true.
    fn search(&self, host: &SimpleGraph, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let k = self.pattern.len();
        if k == 0 {
            return visit(&[]);
        }
        if host.len() < k {
            return false;
        }
        let mut map = vec![usize::MAX; k];
        let mut used = vec![false; host.len()];
        self.place(host, 0, &mut map, &mut used, visit)
    }

    fn place(
        &self,
        host: &SimpleGraph,
        pos: usize,
        map: &mut [usize],
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if pos == self.order.len() {
            return visit(map);
        }
        let p = self.order[pos];
        let need = self.pattern.degree(p);
        let all: Vec<usize>;
        let candidates: &[usize] = match self.back[pos].first() {
            Some(&anchor) => host.adj(map[anchor]),
            None => {
                all = (0..host.len()).collect();
                &all
            }
        };
        for &h in candidates {
            if used[h] || host.degree(h) < need {
                continue;
            }
            if !self.back[pos].iter().all(|&q| host.adjacent(map[q], h)) {
                continue;
            }
            if !self.respects_order(p, h, map) {
                continue;
            }
            map[p] = h;
            used[h] = true;
            if self.place(host, pos + 1, map, used, visit) {
                return true;
            }
            used[h] = false;
            map[p] = usize::MAX;
        }
        false
    }

    fn respects_order(&self, p: usize, h: usize, map: &[usize]) -> bool {
        self.less.iter().all(|&(a, b)| {
            if a == p && map[b] != usize::MAX {
                h < map[b]
            } else if b == p && map[a] != usize::MAX {
                map[a] < h
            } else {
                true
            }
        })
    }
}

fn placement_order(p: &SimpleGraph) -> Vec<usize> {
    let k = p.len();
    let mut placed = vec![false; k];
    let mut order = Vec::with_capacity(k);
    while order.len() < k {
        let next = (0..k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = p.adj(v).iter().filter(|&&u| placed[u]).count();
                // prefer connected growth, then high degree, then low index
                (links > 0 || order.is_empty(), links, p.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    order
}

fn back_neighbors(p: &SimpleGraph, order: &[usize]) -> Vec<Vec<usize>> {
    let mut pos = vec![0; p.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order.iter().enumerate().map(|(i, &v)| p.adj(v).iter().copied().filter(|&u| pos[u] < i).collect()).collect()
}

fn stabilizer_constraints(order: &[usize], mut auts: Vec<Vec<usize>>) -> Vec<(usize, usize)> {
    let mut less = Vec::new();
    for &v in order {
        let mut orbit: Vec<usize> = auts.iter().map(|a| a[v]).filter(|&w| w != v).collect();
        orbit.sort_unstable();
        orbit.dedup();
        less.extend(orbit.into_iter().map(|w| (v, w)));
        auts.retain(|a| a[v] == v);
    }
    less
}
