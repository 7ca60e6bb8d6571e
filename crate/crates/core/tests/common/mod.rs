#![allow(dead_code)]

use twoone_core::{PlaneGraph, Vertex};

/// Straight-line embedding: rotations sorted counter-clockwise by angle.
pub fn plane_from_points(xy: &[(f64, f64)], edges: &[(Vertex, Vertex)]) -> PlaneGraph {
    let rot = (0..xy.len() as Vertex).map(|v| {
        let p = xy[v as usize];
        let angle = |u: Vertex| (xy[u as usize].1 - p.1).atan2(xy[u as usize].0 - p.0);
        let mut nb: Vec<Vertex> = edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        nb.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)));
        (v, nb)
    });
    PlaneGraph::new(rot).unwrap()
}

fn polar(r: f64, deg: f64) -> (f64, f64) {
    (r * deg.to_radians().cos(), r * deg.to_radians().sin())
}

/// Three rings: outer pentagon 0..5, middle decagon 5..15, inner pentagon
/// 15..20. Outer face is the pentagon 0-4-3-2-1.
pub fn dodecahedron() -> PlaneGraph {
    let mut xy = Vec::new();
    xy.extend((0..5).map(|i| polar(4.0, 90.0 + 72.0 * i as f64)));
    xy.extend((0..10).map(|j| polar(2.5, 90.0 + 36.0 * j as f64)));
    xy.extend((0..5).map(|i| polar(1.0, 126.0 + 72.0 * i as f64)));
    let mut e = Vec::new();
    for i in 0..5 {
        e.extend([(i, (i + 1) % 5), (i, 5 + 2 * i), (15 + i, 15 + (i + 1) % 5), (15 + i, 6 + 2 * i)]);
    }
    e.extend((0..10).map(|j| (5 + j, 5 + (j + 1) % 10)));
    plane_from_points(&xy, &e).with_outer_walk(&[0, 4, 3, 2, 1]).unwrap()
}
