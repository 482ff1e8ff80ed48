use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use super::{
    boundary_status, degeneracy_order, extend_backtrack, solve, validate_precoloring,
    BoundaryStatus, Color, ColorError, Coloring,
};
use crate::plane_graph::{GraphError, MergeReport, PlaneGraph, Vertex};
use crate::structures::{
    class_violation, classify_cycle, cut_vertices, cycle_lists, find_m_faces, find_mm_faces,
    find_six_three_edges, find_weak_tetrads, is_ext_triangular, ClassViolation, CycleClass,
};

/// Which configuration a reduction removes. Variants are listed in the
/// order [`find_reduction`] tries them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReductionKind {
    Deg2,
    CutBlock,
    SepGoodCycle,
    Edge63,
    WeakTetrad,
    MFace,
    MMFace,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 7] = [
        ReductionKind::Deg2,
        ReductionKind::CutBlock,
        ReductionKind::SepGoodCycle,
        ReductionKind::Edge63,
        ReductionKind::WeakTetrad,
        ReductionKind::MFace,
        ReductionKind::MMFace,
    ];
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionKind::Deg2 => "L1",
            ReductionKind::CutBlock => "L2",
            ReductionKind::SepGoodCycle => "L3",
            ReductionKind::Edge63 => "L8",
            ReductionKind::WeakTetrad => "L9",
            ReductionKind::MFace => "L10",
            ReductionKind::MMFace => "L11",
        })
    }
}

/// Local names a lift needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftData {
    Deg2 {
        v: Vertex,
    },
    CutBlock {
        cut: Vertex,
        block: BTreeSet<Vertex>,
    },
    SepGoodCycle {
        cycle: Vec<Vertex>,
    },
    /// 6-face `[u v w x y z]`, 3-face `[u v t]`.
    Edge63 {
        u: Vertex,
        v: Vertex,
        w: Vertex,
        x: Vertex,
        y: Vertex,
        z: Vertex,
        t: Vertex,
    },
    WeakTetrad {
        v0: Vertex,
        path: [Vertex; 5],
        x: Vertex,
        y: Vertex,
        v5_deleted: bool,
    },
    /// `t = [t12, t34, t45, t67]`.
    MFace {
        labels: [Vertex; 8],
        t: [Vertex; 4],
    },
    /// `t = [t12, t23, t45, t67, t78]`.
    MMFace {
        labels: [Vertex; 8],
        t: [Vertex; 5],
    },
}

/// `remove` is merged into `keep` through `face`, a face index of the graph
/// left after the deletions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Identification {
    pub keep: Vertex,
    pub remove: Vertex,
    pub face: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub tag: ReductionKind,
    pub deleted: BTreeSet<Vertex>,
    pub identify: Option<Identification>,
    pub lift: LiftData,
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let del: Vec<String> = self.deleted.iter().map(|v| v.to_string()).collect();
        write!(f, "{} delete=[{}]", self.tag, del.join(" "))?;
        if let Some(id) = &self.identify {
            write!(f, " identify={}<-{}", id.keep, id.remove)?;
        }
        Ok(())
    }
}

/// The graph a safe step produces.
#[derive(Debug, Clone)]
pub struct Reduced {
    pub graph: PlaneGraph,
    pub merge: Option<MergeReport>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SafetyViolation {
    DeletesExternal(Vertex),
    IdentifiesBoundary(Vertex, Vertex),
    MergedMany(String),
    Graph(String),
    BoundaryChanged,
    NewBoundaryChord(Vertex, Vertex),
    NotInClass(ClassViolation),
    BoundaryNotGood,
    CreatedShortCycle(Vec<Vertex>),
    CreatedExtTriangular7(Vec<Vertex>),
}

fn list(vs: &[Vertex]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for SafetyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SafetyViolation::DeletesExternal(v) => write!(f, "deletes external vertex {v}"),
            SafetyViolation::IdentifiesBoundary(a, b) => {
                write!(f, "identifies boundary vertices {a} and {b}")
            }
            SafetyViolation::MergedMany(m) => write!(f, "merged>1: {m}"),
            SafetyViolation::Graph(m) => write!(f, "invalid reduced graph: {m}"),
            SafetyViolation::BoundaryChanged => write!(f, "outer boundary changed"),
            SafetyViolation::NewBoundaryChord(u, v) => write!(f, "creates boundary chord {u}-{v}"),
            SafetyViolation::NotInClass(c) => write!(f, "reduced graph has a {c}"),
            SafetyViolation::BoundaryNotGood => write!(f, "boundary is not good after reduction"),
            SafetyViolation::CreatedShortCycle(c) => {
                write!(f, "creates {}-cycle [{}]", c.len(), list(c))
            }
            SafetyViolation::CreatedExtTriangular7(c) => {
                write!(f, "creates ext-triangular 7-cycle [{}]", list(c))
            }
        }
    }
}

fn same_cycle(a: &[Vertex], b: &[Vertex]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    if n == 0 {
        return true;
    }
    let Some(s) = b.iter().position(|&v| v == a[0]) else {
        return false;
    };
    let fwd = (0..n).all(|i| a[i] == b[(s + i) % n]);
    let bwd = (0..n).all(|i| a[i] == b[(s + n - i) % n]);
    fwd || bwd
}

pub(crate) fn apply(g: &PlaneGraph, step: &ReductionStep) -> Result<Reduced, GraphError> {
    let h = if step.deleted.is_empty() {
        g.clone()
    } else {
        g.delete_vertices(&step.deleted)?
    };
    match step.identify {
        None => Ok(Reduced {
            graph: h,
            merge: None,
        }),
        Some(id) => {
            let (graph, report) = h.identify_vertices(id.keep, id.remove, id.face)?;
            Ok(Reduced {
                graph,
                merge: Some(report),
            })
        }
    }
}

/// Builds the reduced graph and checks that coloring it is enough: deleted
/// vertices are internal, at most one edge pair merges, the boundary cycle
/// survives unchanged and chordless where it was, the graph stays in class
/// with a good boundary, and the identification creates no cycle of length
/// at most 6 and no ext-triangular 7-cycle.
pub fn safety_check(g: &PlaneGraph, step: &ReductionStep) -> Result<Reduced, SafetyViolation> {
    if let Some(&v) = step.deleted.iter().find(|&&v| g.is_external(v)) {
        return Err(SafetyViolation::DeletesExternal(v));
    }
    if let Some(id) = step.identify {
        if g.is_external(id.keep) && g.is_external(id.remove) {
            return Err(SafetyViolation::IdentifiesBoundary(id.keep, id.remove));
        }
    }
    let red = apply(g, step).map_err(|e| {
        let msg = match &e {
            GraphError::IdentificationUnsafe(m) => m.clone(),
            other => other.to_string(),
        };
        match msg.strip_prefix("merged>1: ") {
            Some(rest) => SafetyViolation::MergedMany(rest.to_string()),
            None => SafetyViolation::Graph(msg),
        }
    })?;
    let h = &red.graph;
    let d = g.boundary_cycle().ok_or(SafetyViolation::BoundaryChanged)?;
    match h.boundary_cycle() {
        Some(e) if same_cycle(&d, &e) => {}
        _ => return Err(SafetyViolation::BoundaryChanged),
    }
    for (i, &a) in d.iter().enumerate() {
        for &b in &d[i + 1..] {
            if h.has_edge(a, b) && !g.has_edge(a, b) {
                return Err(SafetyViolation::NewBoundaryChord(a, b));
            }
        }
    }
    if let Some(id) = step.identify {
        let (a, b) = (id.keep, id.remove);
        let k = a;
        let old_path = |p: Vertex, q: Vertex| {
            (g.has_edge(a, p) && g.has_edge(a, q)) || (g.has_edge(b, p) && g.has_edge(b, q))
        };
        for c in cycle_lists(h, 7) {
            let Some(i) = c.iter().position(|&v| v == k) else {
                continue;
            };
            let n = c.len();
            let (p, q) = (c[(i + n - 1) % n], c[(i + 1) % n]);
            if old_path(p, q) {
                continue;
            }
            if n <= 6 {
                return Err(SafetyViolation::CreatedShortCycle(c));
            }
            let cref = h
                .sides_of_cycle(&c)
                .map_err(|e| SafetyViolation::Graph(e.to_string()))?;
            if is_ext_triangular(h, &cref).is_some() {
                return Err(SafetyViolation::CreatedExtTriangular7(c));
            }
        }
    }
    if let Some(c) = class_violation(h) {
        return Err(SafetyViolation::NotInClass(c));
    }
    let dref = h
        .sides_of_cycle(&d)
        .map_err(|e| SafetyViolation::Graph(e.to_string()))?;
    if classify_cycle(h, &dref) != CycleClass::Good {
        return Err(SafetyViolation::BoundaryNotGood);
    }
    Ok(red)
}

fn common_neighbor(g: &PlaneGraph, a: Vertex, b: Vertex) -> Option<Vertex> {
    let mut it = g.neighbors(a).iter().copied().filter(|&w| g.has_edge(b, w));
    let first = it.next()?;
    it.next().is_none().then_some(first)
}

/// The face of `g - deleted` holding both `a` and `b` that meets the most
/// former neighbours of the deleted set.
fn merged_face(g: &PlaneGraph, deleted: &BTreeSet<Vertex>, a: Vertex, b: Vertex) -> Option<usize> {
    let h = g.delete_vertices(deleted).ok()?;
    let hint: BTreeSet<Vertex> = deleted
        .iter()
        .flat_map(|&v| g.neighbors(v).iter().copied())
        .filter(|w| !deleted.contains(w))
        .collect();
    h.faces()
        .iter()
        .enumerate()
        .filter(|(_, f)| f.contains(a) && f.contains(b))
        .max_by_key(|(i, f)| {
            let hits = f.vertices().iter().filter(|v| hint.contains(v)).count();
            (hits, std::cmp::Reverse(*i))
        })
        .map(|(i, _)| i)
}

/// Keeps the external endpoint when there is one; `None` when both are
/// external.
fn orient(g: &PlaneGraph, preferred: Vertex, other: Vertex) -> Option<(Vertex, Vertex)> {
    match (g.is_external(preferred), g.is_external(other)) {
        (true, true) => None,
        (false, true) => Some((other, preferred)),
        _ => Some((preferred, other)),
    }
}

fn with_identification(
    g: &PlaneGraph,
    tag: ReductionKind,
    deleted: BTreeSet<Vertex>,
    keep: Vertex,
    remove: Vertex,
    lift: LiftData,
) -> Option<ReductionStep> {
    if deleted.contains(&keep) || deleted.contains(&remove) || keep == remove {
        return None;
    }
    let face = merged_face(g, &deleted, keep, remove)?;
    Some(ReductionStep {
        tag,
        deleted,
        identify: Some(Identification { keep, remove, face }),
        lift,
    })
}

fn components_without(g: &PlaneGraph, c: Vertex) -> Vec<BTreeSet<Vertex>> {
    let mut seen = BTreeSet::from([c]);
    let mut out = Vec::new();
    for s in g.vertices() {
        if !seen.insert(s) {
            continue;
        }
        let mut comp = BTreeSet::from([s]);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if seen.insert(w) {
                    comp.insert(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

fn deg2_candidates(g: &PlaneGraph) -> Vec<ReductionStep> {
    g.vertices()
        .filter(|&v| !g.is_external(v) && g.degree(v) <= 2)
        .map(|v| ReductionStep {
            tag: ReductionKind::Deg2,
            deleted: BTreeSet::from([v]),
            identify: None,
            lift: LiftData::Deg2 { v },
        })
        .collect()
}

fn cut_block_candidates(g: &PlaneGraph) -> Vec<ReductionStep> {
    let mut out = Vec::new();
    for c in cut_vertices(g) {
        for block in components_without(g, c) {
            if block.iter().any(|&v| g.is_external(v)) {
                continue;
            }
            out.push(ReductionStep {
                tag: ReductionKind::CutBlock,
                deleted: block.clone(),
                identify: None,
                lift: LiftData::CutBlock { cut: c, block },
            });
        }
    }
    out
}

fn sep_good_cycle_candidates(g: &PlaneGraph) -> Vec<ReductionStep> {
    let mut out = Vec::new();
    for verts in cycle_lists(g, 11) {
        let c = g.sides_of_cycle(&verts).expect("enumerated cycle");
        if g.is_separating(&c) && classify_cycle(g, &c) == CycleClass::Good {
            out.push(ReductionStep {
                tag: ReductionKind::SepGoodCycle,
                deleted: c.interior.clone(),
                identify: None,
                lift: LiftData::SepGoodCycle { cycle: verts },
            });
        }
    }
    out
}

fn edge63_candidates(g: &PlaneGraph) -> Vec<ReductionStep> {
    let mut out = Vec::new();
    for e in find_six_three_edges(g) {
        let six = g.faces()[e.six_face].vertices();
        let Some(t) = g.faces()[e.three_face]
            .vertices()
            .into_iter()
            .find(|&w| w != e.u && w != e.v)
        else {
            continue;
        };
        for (u, v) in [(e.u, e.v), (e.v, e.u)] {
            // read the 6-face as u v w x y z
            let i = six.iter().position(|&a| a == u).unwrap();
            let fwd = six[(i + 1) % 6] == v;
            let at = |k: usize| {
                if fwd {
                    six[(i + k) % 6]
                } else {
                    six[(i + 6 - k) % 6]
                }
            };
            let (w, x, y, z) = (at(2), at(3), at(4), at(5));
            let Some((keep, remove)) = orient(g, y, w) else {
                continue;
            };
            let lift = LiftData::Edge63 {
                u,
                v,
                w,
                x,
                y,
                z,
                t,
            };
            if let Some(s) = with_identification(
                g,
                ReductionKind::Edge63,
                BTreeSet::from([u, v]),
                keep,
                remove,
                lift,
            ) {
                out.push(s);
            }
        }
    }
    out
}

fn weak_tetrad_candidates(g: &PlaneGraph) -> Vec<ReductionStep> {
    let mut out = Vec::new();
    for wt in find_weak_tetrads(g) {
        let p = wt.path;
        let (Some(x), Some(y)) = (
            common_neighbor(g, p[0], p[1]),
            common_neighbor(g, p[2], p[3]),
        ) else {
            continue;
        };
        let taken: BTreeSet<Vertex> = p.iter().copied().chain([wt.v0]).collect();
        if taken.contains(&x) || taken.contains(&y) || x == y {
            continue;
        }
        let Some((keep, remove)) = orient(g, wt.v0, y) else {
            continue;
        };
        let mut options = vec![false];
        if g.degree(p[4]) == 3 && !g.is_external(p[4]) {
            options.push(true);
        }
        for v5_deleted in options {
            let mut deleted: BTreeSet<Vertex> = p[..4].iter().copied().collect();
            if v5_deleted {
                deleted.insert(p[4]);
            }
            let lift = LiftData::WeakTetrad {
                v0: wt.v0,
                path: p,
                x,
                y,
                v5_deleted,
            };
            if let Some(s) =
                with_identification(g, ReductionKind::WeakTetrad, deleted, keep, remove, lift)
            {
                out.push(s);
            }
        }
    }
    out
}

fn apexes<const N: usize>(
    g: &PlaneGraph,
    l: &[Vertex; 8],
    pairs: [(usize, usize); N],
) -> Option<[Vertex; N]> {
    let mut t = [0; N];
    for (k, (i, j)) in pairs.into_iter().enumerate() {
        t[k] = common_neighbor(g, l[i], l[j])?;
    }
    let distinct: BTreeSet<Vertex> = t.iter().copied().collect();
    let off_face = t.iter().all(|v| !l.contains(v));
    (distinct.len() == N && off_face).then_some(t)
}

fn m_face_candidates(g: &PlaneGraph) -> Vec<ReductionStep> {
    let mut out = Vec::new();
    for m in find_m_faces(g) {
        let l = m.labels;
        let Some(t) = apexes(g, &l, [(0, 1), (2, 3), (3, 4), (5, 6)]) else {
            continue;
        };
        let deleted: BTreeSet<Vertex> = [0, 1, 2, 4, 5, 6].iter().map(|&i| l[i]).collect();
        let lift = LiftData::MFace { labels: l, t };
        if let Some(s) = with_identification(g, ReductionKind::MFace, deleted, l[7], l[3], lift) {
            out.push(s);
        }
    }
    out
}

fn mm_face_candidates(g: &PlaneGraph) -> Vec<ReductionStep> {
    let mut out = Vec::new();
    for m in find_mm_faces(g) {
        let l = m.labels;
        let Some(t) = apexes(g, &l, [(0, 1), (1, 2), (3, 4), (5, 6), (6, 7)]) else {
            continue;
        };
        let Some((keep, remove)) = orient(g, t[0], t[3]) else {
            continue;
        };
        let deleted: BTreeSet<Vertex> = l.iter().copied().collect();
        let lift = LiftData::MMFace { labels: l, t };
        if let Some(s) = with_identification(g, ReductionKind::MMFace, deleted, keep, remove, lift)
        {
            out.push(s);
        }
    }
    out
}

/// Candidate steps of one kind, in a deterministic order.
pub fn candidates(g: &PlaneGraph, tag: ReductionKind) -> Vec<ReductionStep> {
    match tag {
        ReductionKind::Deg2 => deg2_candidates(g),
        ReductionKind::CutBlock => cut_block_candidates(g),
        ReductionKind::SepGoodCycle => sep_good_cycle_candidates(g),
        ReductionKind::Edge63 => edge63_candidates(g),
        ReductionKind::WeakTetrad => weak_tetrad_candidates(g),
        ReductionKind::MFace => m_face_candidates(g),
        ReductionKind::MMFace => mm_face_candidates(g),
    }
}

fn next_step(g: &PlaneGraph) -> Option<(ReductionStep, Reduced)> {
    for tag in ReductionKind::ALL {
        for step in candidates(g, tag) {
            if let Ok(red) = safety_check(g, &step) {
                return Some((step, red));
            }
        }
    }
    None
}

/// The first step, in priority order, whose reduced graph passes
/// [`safety_check`].
pub fn find_reduction(g: &PlaneGraph) -> Option<ReductionStep> {
    next_step(g).map(|(s, _)| s)
}

/// Counts of steps taken per tag and of backtracking fallbacks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ColorStats {
    pub steps: BTreeMap<ReductionKind, usize>,
    pub fallbacks: usize,
}

impl ColorStats {
    pub fn count(&self, tag: ReductionKind) -> usize {
        self.steps.get(&tag).copied().unwrap_or(0)
    }

    pub fn total_steps(&self) -> usize {
        self.steps.values().sum()
    }

    fn record(&mut self, tag: ReductionKind) {
        *self.steps.entry(tag).or_default() += 1;
    }
}

impl fmt::Display for ColorStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = ReductionKind::ALL
            .iter()
            .map(|&t| format!("{t}:{}", self.count(t)))
            .collect();
        write!(
            f,
            "steps{{{},fallback:{}}}",
            parts.join(","),
            self.fallbacks
        )
    }
}

fn allowed(g: &PlaneGraph, col: &Coloring, v: Vertex) -> Vec<Color> {
    let used: BTreeSet<Color> = g.neighbors(v).iter().filter_map(|&w| col.get(w)).collect();
    (1..=3).filter(|c| !used.contains(c)).collect()
}

/// Colors `order` in turn, backtracking over earlier choices within
/// `order` only.
fn color_in_order(g: &PlaneGraph, col: &mut Coloring, order: &[Vertex]) -> bool {
    let Some((&v, rest)) = order.split_first() else {
        return true;
    };
    for c in allowed(g, col, v) {
        col.set(v, c);
        if color_in_order(g, col, rest) {
            return true;
        }
    }
    col.remove(v);
    false
}

fn lift_failed(step: &ReductionStep) -> ColorError {
    ColorError::Internal(format!("lift of {step} reached an impossible branch"))
}

fn lift_inner(
    g: &PlaneGraph,
    step: &ReductionStep,
    reduced: &Coloring,
    stats: &mut ColorStats,
) -> Result<Coloring, ColorError> {
    let mut col = reduced.clone();
    if let Some(id) = step.identify {
        let c = reduced
            .get(id.keep)
            .ok_or_else(|| ColorError::Internal(format!("vertex {} uncolored", id.keep)))?;
        col.set(id.remove, c);
    }
    let ok = match &step.lift {
        LiftData::Deg2 { v } => color_in_order(g, &mut col, &[*v]),
        LiftData::CutBlock { cut, block } => {
            let verts: BTreeSet<Vertex> = block.iter().copied().chain([*cut]).collect();
            let adj: BTreeMap<Vertex, Vec<Vertex>> = verts
                .iter()
                .map(|&v| {
                    let n = g
                        .neighbors(v)
                        .iter()
                        .copied()
                        .filter(|w| verts.contains(w))
                        .collect();
                    (v, n)
                })
                .collect();
            let rank: BTreeMap<Vertex, usize> = degeneracy_order(g)
                .into_iter()
                .enumerate()
                .map(|(i, v)| (v, i))
                .collect();
            match (solve(&adj, &rank, &Coloring::new()), col.get(*cut)) {
                (Some(bc), Some(want)) => {
                    let have = bc.get(*cut).unwrap();
                    let swap = |c: Color| match c {
                        c if c == have => want,
                        c if c == want => have,
                        c => c,
                    };
                    for &v in block {
                        col.set(v, swap(bc.get(v).unwrap()));
                    }
                    true
                }
                _ => false,
            }
        }
        LiftData::SepGoodCycle { cycle } => {
            let c = g
                .sides_of_cycle(cycle)
                .map_err(|e| ColorError::Internal(e.to_string()))?;
            let inner = g
                .closed_interior(&c)
                .map_err(|e| ColorError::Internal(e.to_string()))?;
            let on_c: BTreeSet<Vertex> = cycle.iter().copied().collect();
            let phi = col.restricted(|v| on_c.contains(&v));
            let ext = guided(&inner, &phi, stats)?;
            for v in &c.interior {
                col.set(*v, ext.get(*v).unwrap());
            }
            true
        }
        LiftData::Edge63 { u, v, .. } => color_in_order(g, &mut col, &[*v, *u]),
        LiftData::WeakTetrad {
            path: p,
            v5_deleted,
            ..
        } => {
            let mut order = Vec::new();
            if *v5_deleted {
                order.push(p[4]);
            }
            order.extend([p[3], p[2], p[0], p[1]]);
            color_in_order(g, &mut col, &order)
        }
        LiftData::MFace { labels: l, .. } => {
            color_in_order(g, &mut col, &[l[2], l[1], l[0], l[4], l[5], l[6]])
        }
        LiftData::MMFace { labels, t } => lift_mm_face(g, &mut col, labels, t).is_some(),
    };
    if !ok {
        return Err(lift_failed(step));
    }
    Ok(col)
}

/// How an MM-face lift finished.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum MmBranch {
    /// `v1, v8` and `v3, v6` differ after the greedy pass.
    Direct,
    /// `v1, v8` agreed and `v8, v7, v6` were recolored.
    Recolored,
    /// `v3, v6` agreed; the face was searched directly.
    Searched,
}

/// Colors the eight vertices of an MM-face `v1..v8` given colors on
/// everything else, with `t12` and `t67` sharing a color.
pub(crate) fn lift_mm_face(
    g: &PlaneGraph,
    col: &mut Coloring,
    l: &[Vertex; 8],
    t: &[Vertex; 5],
) -> Option<MmBranch> {
    let [v1, v2, v3, v4, v5, v6, v7, v8] = *l;
    let first_free = |col: &Coloring, v: Vertex, ignore: Vertex| -> Option<Color> {
        let used: BTreeSet<Color> = g
            .neighbors(v)
            .iter()
            .filter(|&&w| w != ignore)
            .filter_map(|&w| col.get(w))
            .collect();
        (1..=3).find(|c| !used.contains(c))
    };
    // v1 ignores v8 and v8 ignores v1; the edge v1v8 is settled below
    for (v, ignore) in [(v2, v2), (v1, v8), (v3, v3), (v7, v7), (v8, v1), (v6, v6)] {
        col.set(v, first_free(col, v, ignore)?);
    }
    let c = |col: &Coloring, v: Vertex| col.get(v).unwrap();
    let mut branch = MmBranch::Direct;
    if c(col, v1) == c(col, v8) {
        let (alpha, beta, gamma) = (c(col, t[0]), c(col, v1), c(col, v2));
        if c(col, t[3]) != alpha || c(col, v7) != gamma || c(col, t[4]) != alpha {
            return None;
        }
        col.set(v8, gamma);
        col.set(v7, beta);
        col.set(v6, gamma);
        branch = MmBranch::Recolored;
    }
    if c(col, v3) != c(col, v6) {
        return color_in_order(g, col, &[v4, v5]).then_some(branch);
    }
    // v1 and v8 differ but v3 and v6 agree: search the face directly
    for v in l {
        col.remove(*v);
    }
    color_in_order(g, col, &[v2, v1, v3, v7, v8, v6, v4, v5]).then_some(MmBranch::Searched)
}

/// Turns a coloring of the reduced graph into one of `g`. Only deleted
/// vertices and the removed endpoint of an identification get new colors.
pub fn lift_coloring(
    g: &PlaneGraph,
    step: &ReductionStep,
    reduced: &Coloring,
) -> Result<Coloring, ColorError> {
    lift_inner(g, step, reduced, &mut ColorStats::default())
}

fn guided(g: &PlaneGraph, phi: &Coloring, stats: &mut ColorStats) -> Result<Coloring, ColorError> {
    match next_step(g) {
        Some((step, red)) => {
            stats.record(step.tag);
            let sub = guided(&red.graph, phi, stats)?;
            lift_inner(g, &step, &sub, stats)
        }
        None => {
            if g.vertices().any(|v| !g.is_external(v)) {
                stats.fallbacks += 1;
            }
            extend_backtrack(g, phi)?.ok_or_else(|| {
                ColorError::Refuted(format!(
                    "precoloring {} of a good boundary does not extend",
                    phi.iter()
                        .map(|(v, c)| format!("{v}={c}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                ))
            })
        }
    }
}

/// Extends `phi` by repeatedly applying the first safe reduction, coloring
/// the final graph by backtracking and lifting back. Requires a class
/// graph whose outer boundary is a good cycle carrying `phi`.
pub fn color_proof_guided(
    g: &PlaneGraph,
    phi: &Coloring,
) -> Result<(Coloring, ColorStats), ColorError> {
    validate_precoloring(g, phi)?;
    if let Some(v) = phi.iter().map(|(v, _)| v).find(|&v| !g.is_external(v)) {
        return Err(ColorError::OffBoundary(v));
    }
    let status = boundary_status(g);
    if status != BoundaryStatus::Good {
        return Err(ColorError::Precondition(format!("boundary is {status}")));
    }
    let mut stats = ColorStats::default();
    let col = guided(g, phi, &mut stats)?;
    if !(col.is_total(g) && col.is_proper(g) && col.extends(phi)) {
        return Err(ColorError::Internal(
            "assembled coloring is not a proper extension".into(),
        ));
    }
    Ok((col, stats))
}
