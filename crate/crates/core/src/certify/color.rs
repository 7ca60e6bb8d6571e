use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cert::{undirected, NiceDecomposition};
use crate::graph::{SimpleGraph, Vertex};

use super::verify::find_directed_cycle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColorError {
    #[error("list of vertex {vertex} has {size} distinct colors, expected 3")]
    ListSize { vertex: Vertex, size: usize },
    #[error("vertex {0} has no list")]
    MissingList(Vertex),
    #[error("orientation has a directed cycle {0:?}")]
    Cyclic(Vec<Vertex>),
    #[error("every color of vertex {0} is taken by an out-neighbor")]
    Exhausted(Vertex),
}

/// Three colors per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<Vertex, Vec<u32>>", into = "BTreeMap<Vertex, Vec<u32>>")]
pub struct ListAssignment {
    lists: BTreeMap<Vertex, [u32; 3]>,
}

impl ListAssignment {
    pub fn new(lists: BTreeMap<Vertex, Vec<u32>>) -> Result<Self, ColorError> {
        let mut out = BTreeMap::new();
        for (v, l) in lists {
            let set: BTreeSet<u32> = l.iter().copied().collect();
            if set.len() != 3 || l.len() != 3 {
                return Err(ColorError::ListSize { vertex: v, size: set.len() });
            }
            let mut it = set.into_iter();
            out.insert(v, [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()]);
        }
        Ok(ListAssignment { lists: out })
    }

    /// `{1, 2, 3}` on every vertex of `g`.
    pub fn uniform(g: &SimpleGraph) -> Self {
        ListAssignment { lists: g.labels().iter().map(|&v| (v, [1, 2, 3])).collect() }
    }

    pub fn get(&self, v: Vertex) -> Option<&[u32; 3]> {
        self.lists.get(&v)
    }
}

impl TryFrom<BTreeMap<Vertex, Vec<u32>>> for ListAssignment {
    type Error = ColorError;

    fn try_from(m: BTreeMap<Vertex, Vec<u32>>) -> Result<Self, ColorError> {
        ListAssignment::new(m)
    }
}

impl From<ListAssignment> for BTreeMap<Vertex, Vec<u32>> {
    fn from(l: ListAssignment) -> Self {
        l.lists.into_iter().map(|(v, c)| (v, c.to_vec())).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectiveColoring {
    pub color: BTreeMap<Vertex, u32>,
    /// Monochromatic edges as `(min, max)`.
    pub defects: Vec<(Vertex, Vertex)>,
}

/// Sinks first, least id among the available ones. Each vertex comes after
/// all of its out-neighbors.
pub fn peel_order(vertices: &[Vertex], arcs: &[(Vertex, Vertex)]) -> Result<Vec<Vertex>, ColorError> {
    let mut out_left: BTreeMap<Vertex, usize> = vertices.iter().map(|&v| (v, 0)).collect();
    let mut preds: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &(t, h) in arcs {
        *out_left.entry(t).or_insert(0) += 1;
        out_left.entry(h).or_insert(0);
        preds.entry(h).or_default().push(t);
    }
    let mut ready: BinaryHeap<Reverse<Vertex>> =
        out_left.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| Reverse(v)).collect();
    let mut order = Vec::with_capacity(out_left.len());
    while let Some(Reverse(v)) = ready.pop() {
        order.push(v);
        for &t in preds.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            let d = out_left.get_mut(&t).unwrap();
            *d -= 1;
            if *d == 0 {
                ready.push(Reverse(t));
            }
        }
    }
    if order.len() < out_left.len() {
        let cycle = find_directed_cycle(arcs).unwrap_or_default();
        return Err(ColorError::Cyclic(cycle));
    }
    Ok(order)
}

/// Colors along the peel order, each vertex taking its least list color not
/// used by an out-neighbor. Proper on G - M; only matching edges can be
/// monochromatic.
pub fn greedy_color(
    g: &SimpleGraph,
    cert: &NiceDecomposition,
    lists: Option<&ListAssignment>,
) -> Result<DefectiveColoring, ColorError> {
    let uniform;
    let lists = match lists {
        Some(l) => l,
        None => {
            uniform = ListAssignment::uniform(g);
            &uniform
        }
    };
    let order = peel_order(g.labels(), &cert.arcs)?;
    let mut succ: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &(t, h) in &cert.arcs {
        succ.entry(t).or_default().push(h);
    }
    let mut color = BTreeMap::new();
    for v in order {
        let list = lists.get(v).ok_or(ColorError::MissingList(v))?;
        let taken: Vec<u32> =
            succ.get(&v).map(|hs| hs.iter().filter_map(|h| color.get(h).copied()).collect()).unwrap_or_default();
        let c = list.iter().copied().find(|c| !taken.contains(c)).ok_or(ColorError::Exhausted(v))?;
        color.insert(v, c);
    }
    let defects = g.edges().into_iter().filter(|&(a, b)| color.get(&a) == color.get(&b)).collect();
    Ok(DefectiveColoring { color, defects })
}

/// Why a coloring is not a 1-defective list coloring with defects in `M`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringFault {
    #[error("vertex {0} is uncolored")]
    Uncolored(Vertex),
    #[error("vertex {vertex} has color {color} outside its list")]
    OffList { vertex: Vertex, color: u32 },
    #[error("edge {0}{1} is monochromatic but not matched")]
    ImproperOffMatching(Vertex, Vertex),
    #[error("vertex {0} meets two monochromatic edges")]
    TooDefective(Vertex),
    #[error("defect set does not list exactly the monochromatic edges")]
    DefectsMisreported,
}

pub fn check_coloring(
    g: &SimpleGraph,
    matching: &[(Vertex, Vertex)],
    lists: Option<&ListAssignment>,
    c: &DefectiveColoring,
) -> Result<(), ColoringFault> {
    for &v in g.labels() {
        let col = *c.color.get(&v).ok_or(ColoringFault::Uncolored(v))?;
        let ok = match lists.and_then(|l| l.get(v)) {
            Some(l) => l.contains(&col),
            None => lists.is_none() && (1..=3).contains(&col),
        };
        if !ok {
            return Err(ColoringFault::OffList { vertex: v, color: col });
        }
    }
    let m: BTreeSet<_> = matching.iter().map(|&(a, b)| undirected(a, b)).collect();
    let mut mono = Vec::new();
    let mut hits: BTreeMap<Vertex, usize> = BTreeMap::new();
    for (a, b) in g.edges() {
        if c.color[&a] == c.color[&b] {
            if !m.contains(&(a, b)) {
                return Err(ColoringFault::ImproperOffMatching(a, b));
            }
            mono.push((a, b));
            for v in [a, b] {
                let h = hits.entry(v).or_insert(0);
                *h += 1;
                if *h > 1 {
                    return Err(ColoringFault::TooDefective(v));
                }
            }
        }
    }
    let mut reported = c.defects.clone();
    reported.sort_unstable();
    if reported != mono {
        return Err(ColoringFault::DefectsMisreported);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> (SimpleGraph, NiceDecomposition) {
        let g = SimpleGraph::from_edges(vec![(0, 1), (1, 2), (0, 2)]);
        let c = NiceDecomposition {
            arcs: vec![(2, 0), (2, 1)],
            boundary_edge: Some((0, 1)),
            matching: vec![(0, 1)],
            order: vec![0, 1, 2],
        };
        (g, c)
    }

    #[test]
    fn triangle_peels_sinks_first() {
        let (_, c) = triangle();
        assert_eq!(peel_order(&[0, 1, 2], &c.arcs).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn chain_puts_the_source_last() {
        let o = peel_order(&[1, 2, 3], &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(o, vec![3, 2, 1]);
        assert_eq!(peel_order(&[4, 2], &[]).unwrap(), vec![2, 4]);
    }

    #[test]
    fn cyclic_orientation_is_rejected() {
        assert!(matches!(peel_order(&[0, 1], &[(0, 1), (1, 0)]), Err(ColorError::Cyclic(_))));
    }

    #[test]
    fn triangle_coloring_by_hand() {
        let (g, c) = triangle();
        let col = greedy_color(&g, &c, None).unwrap();
        assert_eq!(col.color, BTreeMap::from([(0, 1), (1, 1), (2, 2)]));
        assert_eq!(col.defects, vec![(0, 1)]);
        check_coloring(&g, &c.matching, None, &col).unwrap();
    }

    #[test]
    fn matched_single_edge() {
        let g = SimpleGraph::from_edges(vec![(5, 9)]);
        let c = NiceDecomposition::base(5, 9);
        let col = greedy_color(&g, &c, None).unwrap();
        assert_eq!(col.color[&5], 1);
        assert_eq!(col.color[&9], 1);
        assert_eq!(col.defects, vec![(5, 9)]);
    }

    #[test]
    fn short_list_is_an_argument_error() {
        let r = ListAssignment::new(BTreeMap::from([(0, vec![1, 2])]));
        assert_eq!(r, Err(ColorError::ListSize { vertex: 0, size: 2 }));
        let r = ListAssignment::new(BTreeMap::from([(0, vec![1, 1, 2])]));
        assert!(r.is_err());
    }

    #[test]
    fn arbitrary_labels() {
        let (g, c) = triangle();
        let l =
            ListAssignment::new(BTreeMap::from([(0, vec![7, 8, 9]), (1, vec![9, 4, 5]), (2, vec![7, 9, 11])])).unwrap();
        let col = greedy_color(&g, &c, Some(&l)).unwrap();
        check_coloring(&g, &c.matching, Some(&l), &col).unwrap();
        assert_eq!(col.color[&2], 9);
    }
}
