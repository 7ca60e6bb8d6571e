use crate::graph::{SimpleGraph, Vertex};

use super::ClassError;

pub const MIN_CYCLE: usize = 3;
pub const MAX_CYCLE: usize = 9;

/// Finds a simple cycle with exactly `k` vertices, `3 <= k <= 9`.
///
/// Depth-bounded search from every start vertex, visiting only vertices with
/// a larger index than the start, so each cycle is rooted at its least
/// vertex. The returned cycle is checked against the edge set.
pub fn find_cycle_of_length(g: &SimpleGraph, k: usize) -> Result<Option<Vec<Vertex>>, ClassError> {
    if !(MIN_CYCLE..=MAX_CYCLE).contains(&k) {
        return Err(ClassError::CycleLength(k));
    }
    let n = g.len();
    let mut on_path = vec![false; n];
    let mut path = Vec::with_capacity(k);
    for s in 0..n {
        if g.degree(s) < 2 {
            continue;
        }
        path.clear();
        path.push(s);
        on_path[s] = true;
        let found = extend(g, s, k, &mut path, &mut on_path);
        on_path[s] = false;
        if found {
            for &v in &path {
                on_path[v] = false;
            }
            let cycle: Vec<Vertex> = path.iter().map(|&i| g.label(i)).collect();
            debug_assert!(is_cycle(g, &cycle));
            return Ok(Some(cycle));
        }
    }
    Ok(None)
}

fn extend(g: &SimpleGraph, s: usize, k: usize, path: &mut Vec<usize>, on_path: &mut [bool]) -> bool {
    let last = *path.last().unwrap();
    if path.len() == k {
        return g.adjacent(last, s);
    }
    for &u in g.adj(last) {
        if u <= s || on_path[u] {
            continue;
        }
        // the second vertex is smaller than the last one: each cycle once
        if path.len() == k - 1 && u < path[1] {
            continue;
        }
        path.push(u);
        on_path[u] = true;
        if extend(g, s, k, path, on_path) {
            return true;
        }
        on_path[u] = false;
        path.pop();
    }
    false
}

/// True iff `cycle` lists distinct vertices joined consecutively (and last
/// to first) by edges of `g`.
pub fn is_cycle(g: &SimpleGraph, cycle: &[Vertex]) -> bool {
    let k = cycle.len();
    if k < 3 {
        return false;
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len() == k && (0..k).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % k]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_graph(n: u32) -> SimpleGraph {
        SimpleGraph::from_edges((0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    #[test]
    fn nine_cycle_is_found_in_itself() {
        let g = cycle_graph(9);
        let c = find_cycle_of_length(&g, 9).unwrap().unwrap();
        assert_eq!(c.len(), 9);
        assert!(is_cycle(&g, &c));
        assert_eq!(find_cycle_of_length(&g, 8).unwrap(), None);
    }

    #[test]
    fn out_of_range_lengths_are_rejected() {
        let g = cycle_graph(5);
        assert_eq!(find_cycle_of_length(&g, 2), Err(ClassError::CycleLength(2)));
        assert_eq!(find_cycle_of_length(&g, 10), Err(ClassError::CycleLength(10)));
    }

    #[test]
    fn bad_five_gadget_has_no_four_cycle() {
        // 5-cycle 0..4 plus triangle 0-4-5
        let g = SimpleGraph::from_edges(vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5), (5, 0)]);
        assert_eq!(find_cycle_of_length(&g, 4).unwrap(), None);
        assert!(find_cycle_of_length(&g, 6).unwrap().is_some());
    }

    #[test]
    fn five_cycle_with_four_pendant_triangles_has_nine_cycle() {
        // x1..x5 = 1..5, apexes x6..x9 = 6..9 on x1x2, x2x3, x3x4, x4x5
        let mut e = vec![(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)];
        e.extend([(1, 6), (6, 2), (2, 7), (7, 3), (3, 8), (8, 4), (4, 9), (9, 5)]);
        let g = SimpleGraph::from_edges(e);
        let c = find_cycle_of_length(&g, 9).unwrap().unwrap();
        assert!(is_cycle(&g, &c));
        let mut vs = c.clone();
        vs.sort();
        assert_eq!(vs, (1..=9).collect::<Vec<_>>());
        // the stated witness is a valid 9-cycle too
        assert!(is_cycle(&g, &[1, 6, 2, 7, 3, 8, 4, 9, 5]));
    }
}
