use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use super::{
    classify_cycle, cycle_lists, find_m_faces, find_mm_faces, find_six_three_edges,
    find_weak_tetrads, is_ext_triangular, splitting_path_violations, CycleClass, EightFace,
    SixThreeEdge, SplittingViolation, WeakTetrad,
};
use crate::plane_graph::{PlaneGraph, Vertex};

/// One local configuration that lets the graph be reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    LowDegree(Vertex),
    CutVertex(Vertex),
    SeparatingGoodCycle(Vec<Vertex>),
    SplittingPath(SplittingViolation),
    Edge63(SixThreeEdge),
    WeakTetrad(WeakTetrad),
    MFace(EightFace),
    MMFace(EightFace),
    BadCycleWithChord(Vec<Vertex>),
    ExtTriangularBad9(Vec<Vertex>),
}

impl Witness {
    pub fn name(&self) -> &'static str {
        match self {
            Witness::LowDegree(_) => "low-degree",
            Witness::CutVertex(_) => "cut-vertex",
            Witness::SeparatingGoodCycle(_) => "separating-good-cycle",
            Witness::SplittingPath(_) => "splitting-path",
            Witness::Edge63(_) => "edge-6-3",
            Witness::WeakTetrad(_) => "weak-tetrad",
            Witness::MFace(_) => "m-face",
            Witness::MMFace(_) => "mm-face",
            Witness::BadCycleWithChord(_) => "bad-cycle-with-chord",
            Witness::ExtTriangularBad9(_) => "ext-triangular-bad-9-cycle",
        }
    }
}

fn list(vs: &[Vertex]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.name();
        match self {
            Witness::LowDegree(v) | Witness::CutVertex(v) => write!(f, "{name} {v}"),
            Witness::SeparatingGoodCycle(c)
            | Witness::BadCycleWithChord(c)
            | Witness::ExtTriangularBad9(c) => write!(f, "{name} [{}]", list(c)),
            Witness::SplittingPath(s) => {
                write!(
                    f,
                    "{name} [{}] parts=({},{})",
                    list(&s.path),
                    s.parts.0,
                    s.parts.1
                )
            }
            Witness::Edge63(e) => write!(f, "{name} {}-{}", e.u, e.v),
            Witness::WeakTetrad(t) => write!(f, "{name} [{}]", list(&t.path)),
            Witness::MFace(m) | Witness::MMFace(m) => write!(f, "{name} [{}]", list(&m.labels)),
        }
    }
}

fn connected_without(g: &PlaneGraph, gone: Vertex) -> bool {
    let Some(start) = g.vertices().find(|&v| v != gone) else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if w != gone && seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen.len() + 1 == g.vertex_count()
}

pub fn cut_vertices(g: &PlaneGraph) -> Vec<Vertex> {
    g.vertices()
        .filter(|&v| g.degree(v) > 1 && !connected_without(g, v))
        .collect()
}

/// Every configuration witness found in `g`. Splitting-path checks need the
/// outer boundary to be a cycle and are skipped otherwise.
pub fn unavoidable_witnesses(g: &PlaneGraph) -> Vec<Witness> {
    let mut out = Vec::new();
    for v in g.vertices() {
        if !g.is_external(v) && g.degree(v) <= 2 {
            out.push(Witness::LowDegree(v));
        }
    }
    out.extend(cut_vertices(g).into_iter().map(Witness::CutVertex));
    for verts in cycle_lists(g, 11) {
        let c = g.sides_of_cycle(&verts).expect("enumerated cycle");
        match classify_cycle(g, &c) {
            CycleClass::Good if g.is_separating(&c) => {
                out.push(Witness::SeparatingGoodCycle(verts))
            }
            CycleClass::Bad(_) => {
                if !c.inner_chords.is_empty() {
                    out.push(Witness::BadCycleWithChord(verts.clone()));
                }
                if c.len() == 9 && is_ext_triangular(g, &c).is_some() {
                    out.push(Witness::ExtTriangularBad9(verts));
                }
            }
            _ => {}
        }
    }
    if let Some(d) = g.boundary_cycle() {
        let d = g.sides_of_cycle(&d).expect("boundary is a cycle");
        out.extend(
            splitting_path_violations(g, &d)
                .into_iter()
                .map(Witness::SplittingPath),
        );
    }
    out.extend(find_six_three_edges(g).into_iter().map(Witness::Edge63));
    out.extend(find_weak_tetrads(g).into_iter().map(Witness::WeakTetrad));
    out.extend(find_m_faces(g).into_iter().map(Witness::MFace));
    out.extend(find_mm_faces(g).into_iter().map(Witness::MMFace));
    out
}
