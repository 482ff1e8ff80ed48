//! Short cycles and the named configurations of plane graphs without 4- and
//! 5-cycles.

mod faces;
mod partitions;
mod paths;
mod witness;

pub use faces::{
    face_roles, find_m_faces, find_mm_faces, find_six_three_edges, find_weak_tetrads,
    role_at_corner, EightFace, Role, SixThreeEdge, VertexRole, WeakTetrad,
};
pub use partitions::{
    bad_cycle_census, bad_partition_allowed, classify_cycle, find_biclaws, find_chords, find_claws,
    find_combclaws, find_triclaws, BadCycleCensus, BadPartition, CycleClass, PartitionKind,
};
pub use paths::{find_splitting_paths, splitting_path_violations, SplittingViolation};
pub use witness::{cut_vertices, unavoidable_witnesses, Witness};

use std::collections::BTreeSet;

use crate::plane_graph::{CycleRef, PlaneGraph, Side, Vertex};

/// No predicate needs cycles longer than this.
pub const MAX_CYCLE_LEN: usize = 12;

fn edge_key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

/// Simple cycles of length `3..=lmax` (capped at [`MAX_CYCLE_LEN`]), each
/// once, starting at its smallest vertex and oriented so that the second
/// vertex is smaller than the last. Sorted by length, then lexicographically.
pub fn cycle_lists(g: &PlaneGraph, lmax: usize) -> Vec<Vec<Vertex>> {
    let lmax = lmax.min(MAX_CYCLE_LEN);
    let mut out = Vec::new();
    if lmax < 3 {
        return out;
    }
    let mut path = Vec::with_capacity(lmax);
    for s in g.vertices() {
        path.clear();
        path.push(s);
        extend_cycles(g, s, lmax, &mut path, &mut out);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn extend_cycles(
    g: &PlaneGraph,
    s: Vertex,
    lmax: usize,
    path: &mut Vec<Vertex>,
    out: &mut Vec<Vec<Vertex>>,
) {
    let last = *path.last().unwrap();
    for &w in g.neighbors(last) {
        if w == s {
            if path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            }
        } else if w > s && path.len() < lmax && !path.contains(&w) {
            path.push(w);
            extend_cycles(g, s, lmax, path, out);
            path.pop();
        }
    }
}

/// Simple cycles up to `lmax` with their sides resolved.
pub fn enumerate_cycles(g: &PlaneGraph, lmax: usize) -> Vec<CycleRef> {
    cycle_lists(g, lmax)
        .into_iter()
        .map(|c| g.sides_of_cycle(&c).expect("enumerated cycles are valid"))
        .collect()
}

/// Which edges and vertices lie on a triangle.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Triangularity {
    pub edges: BTreeSet<(Vertex, Vertex)>,
    pub vertices: BTreeSet<Vertex>,
    pub triangles: Vec<[Vertex; 3]>,
}

impl Triangularity {
    pub fn edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&edge_key(u, v))
    }

    pub fn vertex(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }
}

pub fn triangular_status(g: &PlaneGraph) -> Triangularity {
    let mut t = Triangularity::default();
    for (u, v) in g.edges() {
        for &w in g.neighbors(u) {
            if w > v && g.has_edge(v, w) {
                t.triangles.push([u, v, w]);
            }
        }
    }
    for &[a, b, c] in &t.triangles {
        for (x, y) in [(a, b), (b, c), (a, c)] {
            t.edges.insert((x, y));
        }
        t.vertices.extend([a, b, c]);
    }
    t
}

/// A triangle other than `c` sharing an edge with `c` and lying in the
/// closed exterior of `c`, if any.
pub fn is_ext_triangular(g: &PlaneGraph, c: &CycleRef) -> Option<[Vertex; 3]> {
    let n = c.len();
    for i in 0..n {
        let (a, b) = (c.verts[i], c.verts[(i + 1) % n]);
        for &t in g.neighbors(a) {
            if t == b || !g.has_edge(b, t) {
                continue;
            }
            if n == 3 && c.verts.contains(&t) {
                continue;
            }
            if c.side(t) == Side::Inside {
                continue;
            }
            if c.edge_in_closed_exterior(a, t) && c.edge_in_closed_exterior(b, t) {
                let mut tri = [a, b, t];
                tri.sort_unstable();
                return Some(tri);
            }
        }
    }
    None
}

/// Why a graph falls outside the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassViolation {
    FourCycle(Vec<Vertex>),
    FiveCycle(Vec<Vertex>),
    ExtTriangularSeven {
        cycle: Vec<Vertex>,
        triangle: [Vertex; 3],
    },
}

impl std::fmt::Display for ClassViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let list = |c: &[Vertex]| {
            c.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        match self {
            ClassViolation::FourCycle(c) => write!(f, "4-cycle [{}]", list(c)),
            ClassViolation::FiveCycle(c) => write!(f, "5-cycle [{}]", list(c)),
            ClassViolation::ExtTriangularSeven { cycle, triangle } => write!(
                f,
                "ext-triangular 7-cycle [{}] with triangle [{}]",
                list(cycle),
                list(triangle)
            ),
        }
    }
}

/// The first witness that `g` has a 4-cycle, a 5-cycle or an ext-triangular
/// 7-cycle.
pub fn class_violation(g: &PlaneGraph) -> Option<ClassViolation> {
    let tri = triangular_status(g);
    for c in cycle_lists(g, 7) {
        match c.len() {
            4 => return Some(ClassViolation::FourCycle(c)),
            5 => return Some(ClassViolation::FiveCycle(c)),
            7 => {
                let n = c.len();
                let touches = (0..n).any(|i| tri.edge(c[i], c[(i + 1) % n]));
                if !touches {
                    continue;
                }
                let cref = g.sides_of_cycle(&c).expect("enumerated cycle");
                if let Some(triangle) = is_ext_triangular(g, &cref) {
                    return Some(ClassViolation::ExtTriangularSeven { cycle: c, triangle });
                }
            }
            _ => {}
        }
    }
    None
}

pub fn in_class(g: &PlaneGraph) -> bool {
    class_violation(g).is_none()
}

#[cfg(test)]
mod tests;
