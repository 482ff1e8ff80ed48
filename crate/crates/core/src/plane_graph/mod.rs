//! Combinatorial plane graphs.
//!
//! A [`PlaneGraph`] is a simple connected graph together with a rotation
//! system: for every vertex, the clockwise cyclic order of its neighbours.
//! Faces are recovered by tracing darts: the successor of the dart `u -> v`
//! is `v -> w`, where `w` follows `u` in the rotation at `v`. One traced face
//! is designated as the outer face through a dart lying on it.

mod builder;
pub mod text;

pub use builder::PlaneBuilder;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use thiserror::Error;

/// Vertex identifier. Ids are stable across edits: deleting or identifying
/// vertices never renames the survivors.
pub type Vertex = usize;

/// A directed edge `(tail, head)`.
pub type Dart = (Vertex, Vertex);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("structural input error: {0}")]
    Structure(String),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("reduction inapplicable: {0}")]
    ReductionInapplicable(String),
    #[error("identification unsafe: {0}")]
    IdentificationUnsafe(String),
}

pub type Result<T, E = GraphError> = std::result::Result<T, E>;

/// The boundary walk of one face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk {
    pub darts: Vec<Dart>,
    pub is_outer: bool,
}

impl FaceWalk {
    /// Number of edges on the walk, `d(f)`.
    pub fn size(&self) -> usize {
        self.darts.len()
    }

    /// Vertices in walk order (a vertex may repeat on non-2-connected graphs).
    pub fn vertices(&self) -> Vec<Vertex> {
        self.darts.iter().map(|d| d.0).collect()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.darts.iter().any(|d| d.0 == v)
    }

    /// True when no vertex is visited twice.
    pub fn is_cycle(&self) -> bool {
        let mut seen = HashSet::new();
        self.darts.iter().all(|d| seen.insert(d.0))
    }

    /// Corners `(previous, at, next)` in walk order.
    pub fn corners(&self) -> impl Iterator<Item = (Vertex, Vertex, Vertex)> + '_ {
        let n = self.darts.len();
        (0..n).map(move |i| {
            let (prev, at) = self.darts[(i + n - 1) % n];
            (prev, at, self.darts[i].1)
        })
    }
}

#[derive(Debug, Clone)]
struct FaceTable {
    walks: Vec<FaceWalk>,
    of_dart: HashMap<Dart, usize>,
    outer: usize,
}

/// A simple connected plane graph given by a clockwise rotation system.
#[derive(Debug, Clone)]
pub struct PlaneGraph {
    rot: BTreeMap<Vertex, Vec<Vertex>>,
    outer: Dart,
    edges: usize,
    faces: OnceLock<FaceTable>,
}

impl PartialEq for PlaneGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rot == other.rot && self.outer == other.outer
    }
}

impl Eq for PlaneGraph {}

fn succ_in(nbrs: &[Vertex], u: Vertex) -> Option<Vertex> {
    let i = nbrs.iter().position(|&w| w == u)?;
    Some(nbrs[(i + 1) % nbrs.len()])
}

/// Traces every face of a rotation system. The rotation must be symmetric.
pub(crate) fn trace_walks(rot: &BTreeMap<Vertex, Vec<Vertex>>) -> Vec<Vec<Dart>> {
    let mut seen: HashSet<Dart> = HashSet::new();
    let mut walks = Vec::new();
    for (&v, nbrs) in rot {
        for &w in nbrs {
            let start = (v, w);
            if seen.contains(&start) {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                seen.insert(d);
                walk.push(d);
                let next = succ_in(&rot[&d.1], d.0).expect("asymmetric rotation");
                d = (d.1, next);
                if d == start {
                    break;
                }
            }
            walks.push(walk);
        }
    }
    walks
}

fn canonical_rotation(mut nbrs: Vec<Vertex>) -> Vec<Vertex> {
    if let Some(i) = nbrs
        .iter()
        .enumerate()
        .min_by_key(|(_, &w)| w)
        .map(|(i, _)| i)
    {
        nbrs.rotate_left(i);
    }
    nbrs
}

impl PlaneGraph {
    /// Builds and validates a plane graph from clockwise rotations and a
    /// dart on the outer face.
    pub fn from_rotations(rot: BTreeMap<Vertex, Vec<Vertex>>, outer: Dart) -> Result<Self> {
        if rot.len() < 3 {
            return Err(GraphError::Structure(format!(
                "need at least 3 vertices, got {}",
                rot.len()
            )));
        }
        let mut degree_sum = 0usize;
        for (&v, nbrs) in &rot {
            if nbrs.is_empty() {
                return Err(GraphError::Structure(format!("vertex {v} is isolated")));
            }
            let mut seen = HashSet::new();
            for &w in nbrs {
                if w == v {
                    return Err(GraphError::Structure(format!("loop at vertex {v}")));
                }
                if !seen.insert(w) {
                    return Err(GraphError::Structure(format!(
                        "parallel edge {v}-{w} in rotation of {v}"
                    )));
                }
                match rot.get(&w) {
                    Some(back) if back.contains(&v) => {}
                    Some(_) => {
                        return Err(GraphError::Structure(format!(
                            "rotation asymmetry: {w} listed at {v} but not vice versa"
                        )))
                    }
                    None => {
                        return Err(GraphError::Structure(format!(
                            "vertex {v} lists unknown neighbour {w}"
                        )))
                    }
                }
            }
            degree_sum += nbrs.len();
        }
        // connectivity
        let first = *rot.keys().next().expect("nonempty");
        let mut seen = HashSet::from([first]);
        let mut queue = VecDeque::from([first]);
        while let Some(v) = queue.pop_front() {
            for &w in &rot[&v] {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        if seen.len() != rot.len() {
            return Err(GraphError::Structure("graph is disconnected".into()));
        }
        if !rot.get(&outer.0).is_some_and(|n| n.contains(&outer.1)) {
            return Err(GraphError::Structure(format!(
                "outer dart {}-{} is not an edge",
                outer.0, outer.1
            )));
        }
        let rot: BTreeMap<_, _> = rot
            .into_iter()
            .map(|(v, n)| (v, canonical_rotation(n)))
            .collect();
        let edges = degree_sum / 2;
        let walks = trace_walks(&rot);
        let euler = rot.len() as i64 - edges as i64 + walks.len() as i64;
        if euler != 2 {
            return Err(GraphError::Structure(format!(
                "rotation system is not planar (V - E + F = {euler})"
            )));
        }
        let outer_walk = walks
            .iter()
            .find(|w| w.contains(&outer))
            .expect("every dart is traced");
        let outer = *outer_walk.iter().min().expect("nonempty walk");
        Ok(PlaneGraph {
            rot,
            outer,
            edges,
            faces: OnceLock::new(),
        })
    }

    fn table(&self) -> &FaceTable {
        self.faces.get_or_init(|| {
            let mut walks: Vec<FaceWalk> = trace_walks(&self.rot)
                .into_iter()
                .map(|darts| FaceWalk {
                    darts,
                    is_outer: false,
                })
                .collect();
            let mut of_dart = HashMap::new();
            for (i, w) in walks.iter().enumerate() {
                for &d in &w.darts {
                    of_dart.insert(d, i);
                }
            }
            let outer = of_dart[&self.outer];
            walks[outer].is_outer = true;
            FaceTable {
                walks,
                of_dart,
                outer,
            }
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.rot.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.rot.keys().copied()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.rot.contains_key(&v)
    }

    /// Neighbours of `v` in clockwise order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        self.rot.get(&v).map_or(&[], Vec::as_slice)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u).contains(&v)
    }

    /// Edges as `(min, max)` pairs in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.rot
            .iter()
            .flat_map(|(&v, n)| n.iter().filter(move |&&w| v < w).map(move |&w| (v, w)))
    }

    pub fn rotations(&self) -> &BTreeMap<Vertex, Vec<Vertex>> {
        &self.rot
    }

    /// Clockwise successor of `u` around `v`.
    pub fn succ(&self, v: Vertex, u: Vertex) -> Vertex {
        succ_in(self.neighbors(v), u).expect("u must be a neighbour of v")
    }

    /// The canonical (lexicographically smallest) dart of the outer face.
    pub fn outer_dart(&self) -> Dart {
        self.outer
    }

    pub fn faces(&self) -> &[FaceWalk] {
        &self.table().walks
    }

    pub fn outer_face_index(&self) -> usize {
        self.table().outer
    }

    pub fn outer_face(&self) -> &FaceWalk {
        &self.faces()[self.outer_face_index()]
    }

    pub fn face_of_dart(&self, d: Dart) -> Option<usize> {
        self.table().of_dart.get(&d).copied()
    }

    /// A vertex is external when it lies on the outer face.
    pub fn is_external(&self, v: Vertex) -> bool {
        self.outer_face().contains(v)
    }

    pub fn external_vertices(&self) -> BTreeSet<Vertex> {
        self.outer_face().vertices().into_iter().collect()
    }

    /// The outer boundary as a vertex cycle, if the outer walk is a cycle.
    pub fn boundary_cycle(&self) -> Option<Vec<Vertex>> {
        let f = self.outer_face();
        f.is_cycle().then(|| f.vertices())
    }

    /// Splits the vertices off a cycle into the two sides determined by the
    /// embedding; the side holding the outer face is the exterior.
    pub fn sides_of_cycle(&self, verts: &[Vertex]) -> Result<CycleRef> {
        let n = verts.len();
        if n < 3 {
            return Err(GraphError::InvalidCycle(format!("length {n} < 3")));
        }
        let pos: HashMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        if pos.len() != n {
            return Err(GraphError::InvalidCycle("repeated vertex".into()));
        }
        for i in 0..n {
            let (a, b) = (verts[i], verts[(i + 1) % n]);
            if !self.has_edge(a, b) {
                return Err(GraphError::InvalidCycle(format!("{a}-{b} is not an edge")));
            }
        }
        // Side A at cycle vertex c (predecessor p, successor s): neighbours met
        // strictly between s and p when sweeping clockwise from s.
        let arc = |i: usize| -> (usize, usize, usize) {
            let c = verts[i];
            let rot = self.neighbors(c);
            let d = rot.len();
            let ps = rot.iter().position(|&w| w == verts[(i + 1) % n]).unwrap();
            let pp = rot
                .iter()
                .position(|&w| w == verts[(i + n - 1) % n])
                .unwrap();
            (d, ps, (pp + d - ps) % d)
        };
        let mut label: HashMap<Vertex, bool> = HashMap::new();
        let mut chords_a = BTreeSet::new();
        let mut chords_b = BTreeSet::new();
        for (i, &c) in verts.iter().enumerate() {
            let rot = self.neighbors(c);
            let (d, ps, k) = arc(i);
            for r in 1..d {
                if r == k {
                    continue;
                }
                let w = rot[(ps + r) % d];
                let side_a = r < k;
                if pos.contains_key(&w) {
                    let e = (c.min(w), c.max(w));
                    if side_a {
                        chords_a.insert(e);
                    } else {
                        chords_b.insert(e);
                    }
                } else if let Some(&prev) = label.get(&w) {
                    if prev != side_a {
                        return Err(GraphError::Structure(
                            "embedding places a vertex on both sides of a cycle".into(),
                        ));
                    }
                } else {
                    label.insert(w, side_a);
                }
            }
        }
        if !chords_a.is_disjoint(&chords_b) {
            return Err(GraphError::Structure(
                "embedding places a chord on both sides of a cycle".into(),
            ));
        }
        let mut queue: VecDeque<Vertex> = label.keys().copied().collect();
        while let Some(v) = queue.pop_front() {
            let side = label[&v];
            for &w in self.neighbors(v) {
                if pos.contains_key(&w) {
                    continue;
                }
                match label.get(&w) {
                    Some(&s) if s != side => {
                        return Err(GraphError::Structure(
                            "embedding places a component on both sides of a cycle".into(),
                        ))
                    }
                    Some(_) => {}
                    None => {
                        label.insert(w, side);
                        queue.push_back(w);
                    }
                }
            }
        }
        let outer = self.outer_face();
        let corner_side = outer.corners().find_map(|(a, x, _)| {
            let i = *pos.get(&x)?;
            let rot = self.neighbors(x);
            let (d, ps, k) = arc(i);
            let ra = (rot.iter().position(|&w| w == a).unwrap() + d - ps) % d;
            Some(ra < k)
        });
        let outer_is_a = match corner_side {
            Some(s) => s,
            None => {
                let w = outer.darts[0].0;
                label[&w]
            }
        };
        let mut interior = BTreeSet::new();
        let mut exterior = BTreeSet::new();
        for (&v, &side) in &label {
            if side == outer_is_a {
                exterior.insert(v);
            } else {
                interior.insert(v);
            }
        }
        let (inner_chords, outer_chords) = if outer_is_a {
            (chords_b, chords_a)
        } else {
            (chords_a, chords_b)
        };
        Ok(CycleRef {
            verts: verts.to_vec(),
            interior,
            exterior,
            inner_chords,
            outer_chords,
        })
    }

    /// A cycle is separating when both of its sides hold vertices.
    pub fn is_separating(&self, c: &CycleRef) -> bool {
        !c.interior.is_empty() && !c.exterior.is_empty()
    }

    /// Removes `gone` and every incident edge; surviving rotations keep
    /// their order.
    pub fn delete_vertices(&self, gone: &BTreeSet<Vertex>) -> Result<PlaneGraph> {
        if gone.is_empty() {
            return Err(GraphError::ReductionInapplicable(
                "empty deletion set".into(),
            ));
        }
        if let Some(v) = gone.iter().find(|v| !self.contains(**v)) {
            return Err(GraphError::ReductionInapplicable(format!(
                "vertex {v} not in graph"
            )));
        }
        let rot: BTreeMap<Vertex, Vec<Vertex>> = self
            .rot
            .iter()
            .filter(|(v, _)| !gone.contains(v))
            .map(|(&v, n)| (v, n.iter().copied().filter(|w| !gone.contains(w)).collect()))
            .collect();
        let outer_walk = self.outer_face();
        let alive = |v: &Vertex| !gone.contains(v);
        let outer = outer_walk
            .darts
            .iter()
            .copied()
            .find(|(a, b)| alive(a) && alive(b))
            .or_else(|| {
                // widen an outer corner at a surviving vertex
                outer_walk.corners().find_map(|(_, w, b)| {
                    if !alive(&w) {
                        return None;
                    }
                    let old = self.neighbors(w);
                    let start = old.iter().position(|&x| x == b).unwrap();
                    (0..old.len())
                        .map(|r| old[(start + r) % old.len()])
                        .find(alive)
                        .map(|x| (w, x))
                })
            })
            .ok_or_else(|| GraphError::ReductionInapplicable("outer face destroyed".into()))?;
        PlaneGraph::from_rotations(rot, outer).map_err(|e| match e {
            GraphError::Structure(m) => GraphError::ReductionInapplicable(m),
            other => other,
        })
    }

    /// Identifies `b` into `a` through the face `face`, which both must lie
    /// on. The merged vertex keeps the id `a`. When `a` and `b` have a common
    /// neighbour `x` bounding a digon after the merge, the pair `ax`, `bx`
    /// collapses into one edge and `x` is reported.
    pub fn identify_vertices(
        &self,
        a: Vertex,
        b: Vertex,
        face: usize,
    ) -> Result<(PlaneGraph, MergeReport)> {
        let unsafe_err = |m: String| GraphError::IdentificationUnsafe(m);
        if a == b {
            return Err(unsafe_err("cannot identify a vertex with itself".into()));
        }
        if !self.contains(a) || !self.contains(b) {
            return Err(unsafe_err("vertex not in graph".into()));
        }
        if self.has_edge(a, b) {
            return Err(unsafe_err(format!("{a} and {b} are adjacent")));
        }
        let walk = self
            .faces()
            .get(face)
            .ok_or_else(|| unsafe_err(format!("no face {face}")))?;
        let corner = |v: Vertex| walk.corners().find(|c| c.1 == v).map(|(p, _, s)| (p, s));
        let (Some((_, sa)), Some((_, sb))) = (corner(a), corner(b)) else {
            return Err(unsafe_err(format!("{a} and {b} do not share face {face}")));
        };
        let from = |v: Vertex, s: Vertex| -> Vec<Vertex> {
            let n = self.neighbors(v);
            let i = n.iter().position(|&w| w == s).unwrap();
            (0..n.len()).map(|r| n[(i + r) % n.len()]).collect()
        };
        let mut merged = from(a, sa);
        merged.extend(from(b, sb));
        let common: Vec<Vertex> = self
            .neighbors(a)
            .iter()
            .copied()
            .filter(|x| self.has_edge(b, *x))
            .collect();
        if common.len() > 1 {
            return Err(unsafe_err(format!(
                "merged>1: {} common neighbours {:?}",
                common.len(),
                common
            )));
        }
        let mut rot = self.rot.clone();
        rot.remove(&b);
        let mut report = MergeReport {
            kept: a,
            removed: b,
            merged_with: None,
        };
        if let Some(&x) = common.first() {
            let len = merged.len();
            let idx: Vec<usize> = (0..len).filter(|&i| merged[i] == x).collect();
            let consecutive =
                idx.len() == 2 && (idx[1] == idx[0] + 1 || (idx[0] == 0 && idx[1] == len - 1));
            let at_x = self.neighbors(x);
            let ia = at_x.iter().position(|&w| w == a).unwrap();
            let ib = at_x.iter().position(|&w| w == b).unwrap();
            let dx = at_x.len();
            let adjacent_at_x = (ia + 1) % dx == ib || (ib + 1) % dx == ia;
            if !consecutive || !adjacent_at_x {
                return Err(unsafe_err(format!(
                    "identifying {a} and {b} creates a parallel edge to {x}"
                )));
            }
            merged.remove(idx[1]);
            rot.get_mut(&x).unwrap().retain(|&w| w != b);
            report.merged_with = Some(x);
        }
        rot.insert(a, merged);
        for (v, n) in rot.iter_mut() {
            if *v == a {
                continue;
            }
            for w in n.iter_mut() {
                if *w == b {
                    *w = a;
                }
            }
        }
        let rename = |v: Vertex| if v == b { a } else { v };
        let outer = (rename(self.outer.0), rename(self.outer.1));
        let g = PlaneGraph::from_rotations(rot, outer).map_err(|e| unsafe_err(e.to_string()))?;
        Ok((g, report))
    }

    /// The cycle together with everything drawn inside it, as a plane graph
    /// whose outer boundary is the cycle.
    pub fn closed_interior(&self, c: &CycleRef) -> Result<PlaneGraph> {
        let keep: BTreeSet<Vertex> = c.verts.iter().chain(&c.interior).copied().collect();
        let on_c: BTreeSet<Vertex> = c.verts.iter().copied().collect();
        let rot: BTreeMap<Vertex, Vec<Vertex>> = keep
            .iter()
            .map(|&v| {
                let n = self
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| {
                        keep.contains(&w) && !c.outer_chords.contains(&(v.min(w), v.max(w)))
                    })
                    .collect();
                (v, n)
            })
            .collect();
        let outer = trace_walks(&rot)
            .into_iter()
            .find(|w| w.len() == c.len() && w.iter().all(|d| on_c.contains(&d.0)))
            .map(|w| w[0])
            .ok_or_else(|| {
                GraphError::InvalidCycle("cycle bounds no face of its closed interior".into())
            })?;
        PlaneGraph::from_rotations(rot, outer)
    }
}

/// Outcome of [`PlaneGraph::identify_vertices`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MergeReport {
    pub kept: Vertex,
    pub removed: Vertex,
    /// Common neighbour `x` whose edges `kept-x` and `removed-x` were merged.
    pub merged_with: Option<Vertex>,
}

/// Where a vertex sits relative to a cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    On,
    Inside,
    Outside,
}

/// A cycle of a plane graph with its two sides resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleRef {
    pub verts: Vec<Vertex>,
    pub interior: BTreeSet<Vertex>,
    pub exterior: BTreeSet<Vertex>,
    /// Chords drawn inside the cycle, as `(min, max)`.
    pub inner_chords: BTreeSet<(Vertex, Vertex)>,
    pub outer_chords: BTreeSet<(Vertex, Vertex)>,
}

impl CycleRef {
    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.verts.iter().position(|&w| w == v)
    }

    pub fn side(&self, v: Vertex) -> Side {
        if self.verts.contains(&v) {
            Side::On
        } else if self.interior.contains(&v) {
            Side::Inside
        } else {
            Side::Outside
        }
    }

    pub fn is_cycle_edge(&self, u: Vertex, v: Vertex) -> bool {
        let n = self.verts.len();
        match (self.position(u), self.position(v)) {
            (Some(i), Some(j)) => (i + 1) % n == j || (j + 1) % n == i,
            _ => false,
        }
    }

    /// Whether the graph edge `uv` belongs to the closed interior.
    pub fn edge_in_closed_interior(&self, u: Vertex, v: Vertex) -> bool {
        match (self.side(u), self.side(v)) {
            (Side::On, Side::On) => {
                self.is_cycle_edge(u, v) || self.inner_chords.contains(&(u.min(v), u.max(v)))
            }
            (Side::Outside, _) | (_, Side::Outside) => false,
            _ => true,
        }
    }

    /// Whether the graph edge `uv` belongs to the closed exterior.
    pub fn edge_in_closed_exterior(&self, u: Vertex, v: Vertex) -> bool {
        match (self.side(u), self.side(v)) {
            (Side::On, Side::On) => {
                self.is_cycle_edge(u, v) || self.outer_chords.contains(&(u.min(v), u.max(v)))
            }
            (Side::Inside, _) | (_, Side::Inside) => false,
            _ => true,
        }
    }
}
