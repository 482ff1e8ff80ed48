use std::collections::BTreeSet;

use super::{triangular_status, Triangularity};
use crate::plane_graph::{PlaneGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Heavy,
    MLight,
    VLight,
    None,
}

impl Role {
    pub fn is_light(self) -> bool {
        matches!(self, Role::MLight | Role::VLight)
    }
}

/// Role of the vertex at one corner of a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexRole {
    pub vertex: Vertex,
    pub face: usize,
    pub role: Role,
    /// Internal triangular 3-vertex.
    pub bad: bool,
}

/// Role of `v` at the face corner `prev, v, next`.
pub fn role_at_corner(
    g: &PlaneGraph,
    tri: &Triangularity,
    prev: Vertex,
    v: Vertex,
    next: Vertex,
) -> Role {
    if g.is_external(v) {
        return Role::None;
    }
    let (a, b) = (tri.edge(prev, v), tri.edge(v, next));
    let d = g.degree(v);
    match (a, b) {
        (true, true) if d >= 5 => Role::Heavy,
        (true, true) if d == 4 => Role::MLight,
        (false, false) if d == 4 && tri.vertex(v) => Role::VLight,
        _ => Role::None,
    }
}

fn is_bad(g: &PlaneGraph, tri: &Triangularity, v: Vertex) -> bool {
    !g.is_external(v) && g.degree(v) == 3 && tri.vertex(v)
}

pub fn face_roles(g: &PlaneGraph, face: usize) -> Vec<VertexRole> {
    let tri = triangular_status(g);
    g.faces()[face]
        .corners()
        .map(|(p, v, n)| VertexRole {
            vertex: v,
            face,
            role: role_at_corner(g, &tri, p, v, n),
            bad: is_bad(g, &tri, v),
        })
        .collect()
}

/// A weak tetrad `v1..v5` read along a face boundary in one direction;
/// `v0` is the boundary neighbour of `v1` other than `v2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakTetrad {
    pub face: usize,
    pub v0: Vertex,
    pub path: [Vertex; 5],
}

impl WeakTetrad {
    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.path.iter().copied().collect()
    }
}

/// Every weak tetrad, once per face and traversal direction.
pub fn find_weak_tetrads(g: &PlaneGraph) -> Vec<WeakTetrad> {
    let tri = triangular_status(g);
    let internal3 = |v: Vertex| !g.is_external(v) && g.degree(v) == 3;
    let mut out = Vec::new();
    for (fi, f) in g.faces().iter().enumerate() {
        let fwd = f.vertices();
        let n = fwd.len();
        if n < 5 {
            continue;
        }
        let mut rev = fwd.clone();
        rev.reverse();
        for walk in [&fwd, &rev] {
            for i in 0..n {
                let at = |k: usize| walk[(i + k) % n];
                let path = [at(0), at(1), at(2), at(3), at(4)];
                let v0 = walk[(i + n - 1) % n];
                if path.iter().collect::<BTreeSet<_>>().len() < 5 || v0 == path[1] {
                    continue;
                }
                if !(tri.edge(path[0], path[1]) && tri.edge(path[2], path[3])) {
                    continue;
                }
                if !path[..4].iter().all(|&v| internal3(v)) {
                    continue;
                }
                let v5 = path[4];
                let light = role_at_corner(g, &tri, path[3], v5, at(5)).is_light();
                if g.degree(v5) == 3 || light {
                    out.push(WeakTetrad { face: fi, v0, path });
                }
            }
        }
    }
    out
}

/// An 8-face with its boundary labelled `v1..v8` (stored as `labels[0..8]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EightFace {
    pub face: usize,
    pub labels: [Vertex; 8],
}

fn eight_face_labelings(g: &PlaneGraph) -> Vec<(usize, [Vertex; 8])> {
    let mut out = Vec::new();
    for (fi, f) in g.faces().iter().enumerate() {
        if f.size() != 8 || !f.is_cycle() || f.vertices().iter().any(|&v| g.is_external(v)) {
            continue;
        }
        let fwd = f.vertices();
        let mut rev = fwd.clone();
        rev.reverse();
        for walk in [&fwd, &rev] {
            for i in 0..8 {
                let labels: [Vertex; 8] = std::array::from_fn(|k| walk[(i + k) % 8]);
                out.push((fi, labels));
            }
        }
    }
    out
}

/// M-faces: `v1, v2, v3, v5, v6, v7` of degree 3 and `v1v2, v3v4, v4v5,
/// v6v7` triangular. One labelling per face and `(v4, v8)` pair.
pub fn find_m_faces(g: &PlaneGraph) -> Vec<EightFace> {
    let tri = triangular_status(g);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (face, l) in eight_face_labelings(g) {
        let deg3 = [0, 1, 2, 4, 5, 6].iter().all(|&i| g.degree(l[i]) == 3);
        let edges = [(0, 1), (2, 3), (3, 4), (5, 6)]
            .iter()
            .all(|&(i, j)| tri.edge(l[i], l[j]));
        if deg3 && edges && seen.insert((face, l[3], l[7])) {
            out.push(EightFace { face, labels: l });
        }
    }
    out
}

/// MM-faces: `v2, v7` of degree 4, the other six of degree 3, and `v1v2,
/// v2v3, v4v5, v6v7, v7v8` triangular. One labelling per face and
/// `{v1, v8}` pair.
pub fn find_mm_faces(g: &PlaneGraph) -> Vec<EightFace> {
    let tri = triangular_status(g);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (face, l) in eight_face_labelings(g) {
        let degs = (0..8).all(|i| g.degree(l[i]) == if i == 1 || i == 6 { 4 } else { 3 });
        let edges = [(0, 1), (1, 2), (3, 4), (5, 6), (6, 7)]
            .iter()
            .all(|&(i, j)| tri.edge(l[i], l[j]));
        if degs && edges && seen.insert((face, l[0].min(l[7]), l[0].max(l[7]))) {
            out.push(EightFace { face, labels: l });
        }
    }
    out
}

/// An edge `uv` between a 6-face and a 3-face with `u, v` internal 3-vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SixThreeEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub six_face: usize,
    pub three_face: usize,
}

pub fn find_six_three_edges(g: &PlaneGraph) -> Vec<SixThreeEdge> {
    let internal3 = |v: Vertex| !g.is_external(v) && g.degree(v) == 3;
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        if !(internal3(u) && internal3(v)) {
            continue;
        }
        let f1 = g.face_of_dart((u, v)).unwrap();
        let f2 = g.face_of_dart((v, u)).unwrap();
        let (s1, s2) = (g.faces()[f1].size(), g.faces()[f2].size());
        let pick = match (s1, s2) {
            (6, 3) => Some((f1, f2)),
            (3, 6) => Some((f2, f1)),
            _ => None,
        };
        if let Some((six_face, three_face)) = pick {
            if g.faces()[six_face].is_cycle() {
                out.push(SixThreeEdge {
                    u,
                    v,
                    six_face,
                    three_face,
                });
            }
        }
    }
    out
}
