use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{class_violation, cycle_lists, edge_key, is_ext_triangular, ClassViolation};
use crate::plane_graph::{trace_walks, CycleRef, PlaneGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PartitionKind {
    Chord,
    Claw,
    Biclaw,
    Triclaw,
    Combclaw,
}

impl fmt::Display for PartitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PartitionKind::Chord => "chord",
            PartitionKind::Claw => "claw",
            PartitionKind::Biclaw => "biclaw",
            PartitionKind::Triclaw => "triclaw",
            PartitionKind::Combclaw => "combclaw",
        })
    }
}

/// A cycle together with one attached structure and its cell lengths.
///
/// Cell tuples are canonical: chord and claw cells ascending; biclaw
/// `(end, middle, end, middle)` minimised over swapping the two ends and the
/// two middles; triclaw the triangle cell first, then the outer cells
/// ascending; combclaw the triangle cell, then the cell cut off by `x`, then
/// the remaining three in boundary order, minimised over reflection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadPartition {
    pub cycle: CycleRef,
    pub kind: PartitionKind,
    /// Edges of the attached structure, each as `(min, max)`, sorted.
    pub attachment: Vec<(Vertex, Vertex)>,
    pub cells: Vec<usize>,
}

impl fmt::Display for BadPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verts: Vec<String> = self.cycle.verts.iter().map(|v| v.to_string()).collect();
        let cells: Vec<String> = self.cells.iter().map(|c| c.to_string()).collect();
        write!(
            f,
            "{} cycle=[{}] cells=({})",
            self.kind,
            verts.join(" "),
            cells.join(",")
        )
    }
}

/// Faces of `C + T` on the inner side of `C`, as (length, vertex set).
fn cells_of(
    g: &PlaneGraph,
    c: &CycleRef,
    attachment: &[(Vertex, Vertex)],
) -> Vec<(usize, BTreeSet<Vertex>)> {
    let n = c.len();
    let mut edges: BTreeSet<(Vertex, Vertex)> = attachment.iter().copied().collect();
    for i in 0..n {
        edges.insert(edge_key(c.verts[i], c.verts[(i + 1) % n]));
    }
    let verts: BTreeSet<Vertex> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let rot: BTreeMap<Vertex, Vec<Vertex>> = verts
        .iter()
        .map(|&v| {
            let keep = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| edges.contains(&edge_key(v, w)))
                .collect();
            (v, keep)
        })
        .collect();
    let cycle_set: BTreeSet<Vertex> = c.verts.iter().copied().collect();
    let mut cells: Vec<(usize, BTreeSet<Vertex>)> = trace_walks(&rot)
        .into_iter()
        .map(|w| (w.len(), w.iter().map(|d| d.0).collect::<BTreeSet<_>>()))
        .collect();
    if let Some(i) = cells
        .iter()
        .position(|(len, set)| *len == n && *set == cycle_set)
    {
        cells.remove(i);
    }
    cells
}

fn sorted(cells: &[(usize, BTreeSet<Vertex>)]) -> Vec<usize> {
    let mut v: Vec<usize> = cells.iter().map(|c| c.0).collect();
    v.sort_unstable();
    v
}

fn canonical_biclaw(cells: &[(usize, BTreeSet<Vertex>)], u: Vertex, v: Vertex) -> Vec<usize> {
    let (mut ends, mut mids) = (Vec::new(), Vec::new());
    for (len, set) in cells {
        match (set.contains(&u), set.contains(&v)) {
            (true, true) => mids.push(*len),
            (true, false) | (false, true) => ends.push(*len),
            _ => {}
        }
    }
    if ends.len() != 2 || mids.len() != 2 {
        return sorted(cells);
    }
    ends.sort_unstable();
    mids.sort_unstable();
    vec![ends[0], mids[0], ends[1], mids[1]]
}

fn canonical_triclaw(cells: &[(usize, BTreeSet<Vertex>)], tri: [Vertex; 3]) -> Vec<usize> {
    let tri_set: BTreeSet<Vertex> = tri.into_iter().collect();
    let Some(i) = cells.iter().position(|(_, s)| *s == tri_set) else {
        return sorted(cells);
    };
    let mut rest: Vec<_> = cells.to_vec();
    let t = rest.remove(i);
    let mut out = vec![t.0];
    out.extend(sorted(&rest));
    out
}

fn canonical_combclaw(
    cells: &[(usize, BTreeSet<Vertex>)],
    u: Vertex,
    v: Vertex,
    w: Vertex,
    x: Vertex,
) -> Vec<usize> {
    let find = |yes: &[Vertex], no: &[Vertex]| {
        cells
            .iter()
            .find(|(_, s)| yes.iter().all(|a| s.contains(a)) && no.iter().all(|a| !s.contains(a)))
            .map(|c| c.0)
    };
    let tri_set = BTreeSet::from([u, v, w]);
    let tri = cells.iter().find(|(_, s)| *s == tri_set).map(|c| c.0);
    let parts = (
        tri,
        find(&[x], &[u]),
        find(&[x, u, v], &[w]),
        find(&[v, w], &[u]),
        find(&[w, u, x], &[v]),
    );
    match parts {
        (Some(t), Some(xc), Some(a), Some(b), Some(c)) if cells.len() == 5 => {
            let fwd = [a, b, c];
            let rev = [c, b, a];
            let mut out = vec![t, xc];
            out.extend(fwd.min(rev));
            out
        }
        _ => sorted(cells),
    }
}

fn make(
    g: &PlaneGraph,
    c: &CycleRef,
    kind: PartitionKind,
    edges: Vec<(Vertex, Vertex)>,
    canon: impl FnOnce(&[(usize, BTreeSet<Vertex>)]) -> Vec<usize>,
) -> BadPartition {
    let mut attachment: Vec<_> = edges.into_iter().map(|(a, b)| edge_key(a, b)).collect();
    attachment.sort_unstable();
    attachment.dedup();
    let cells = canon(&cells_of(g, c, &attachment));
    BadPartition {
        cycle: c.clone(),
        kind,
        attachment,
        cells,
    }
}

fn on_cycle_neighbors(g: &PlaneGraph, c: &CycleRef, v: Vertex) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = g
        .neighbors(v)
        .iter()
        .copied()
        .filter(|w| c.verts.contains(w))
        .collect();
    out.sort_unstable();
    out
}

fn pairs(xs: &[Vertex]) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
    (0..xs.len()).flat_map(move |i| ((i + 1)..xs.len()).map(move |j| (xs[i], xs[j])))
}

fn interior_triangles(g: &PlaneGraph, c: &CycleRef) -> Vec<[Vertex; 3]> {
    let mut out = Vec::new();
    for &u in &c.interior {
        for &v in g.neighbors(u) {
            if v <= u || !c.interior.contains(&v) {
                continue;
            }
            for &w in g.neighbors(v) {
                if w > v && c.interior.contains(&w) && g.has_edge(u, w) {
                    out.push([u, v, w]);
                }
            }
        }
    }
    out
}

pub fn find_chords(g: &PlaneGraph, c: &CycleRef) -> Vec<BadPartition> {
    c.inner_chords
        .iter()
        .map(|&e| make(g, c, PartitionKind::Chord, vec![e], sorted))
        .collect()
}

pub fn find_claws(g: &PlaneGraph, c: &CycleRef) -> Vec<BadPartition> {
    let mut out = Vec::new();
    for &v in &c.interior {
        let nc = on_cycle_neighbors(g, c, v);
        for i in 0..nc.len() {
            for j in i + 1..nc.len() {
                for k in j + 1..nc.len() {
                    let edges = vec![(v, nc[i]), (v, nc[j]), (v, nc[k])];
                    out.push(make(g, c, PartitionKind::Claw, edges, sorted));
                }
            }
        }
    }
    out
}

pub fn find_biclaws(g: &PlaneGraph, c: &CycleRef) -> Vec<BadPartition> {
    let mut out = Vec::new();
    for &u in &c.interior {
        for &v in g.neighbors(u) {
            if v <= u || !c.interior.contains(&v) {
                continue;
            }
            let (nu, nv) = (on_cycle_neighbors(g, c, u), on_cycle_neighbors(g, c, v));
            for (u1, u2) in pairs(&nu) {
                for (v1, v2) in pairs(&nv) {
                    let edges = vec![(u, v), (u, u1), (u, u2), (v, v1), (v, v2)];
                    out.push(make(g, c, PartitionKind::Biclaw, edges, |cells| {
                        canonical_biclaw(cells, u, v)
                    }));
                }
            }
        }
    }
    out
}

pub fn find_triclaws(g: &PlaneGraph, c: &CycleRef) -> Vec<BadPartition> {
    let mut out = Vec::new();
    for [u, v, w] in interior_triangles(g, c) {
        let (nu, nv, nw) = (
            on_cycle_neighbors(g, c, u),
            on_cycle_neighbors(g, c, v),
            on_cycle_neighbors(g, c, w),
        );
        for &a in &nu {
            for &b in &nv {
                for &d in &nw {
                    let edges = vec![(u, v), (v, w), (u, w), (u, a), (v, b), (w, d)];
                    out.push(make(g, c, PartitionKind::Triclaw, edges, |cells| {
                        canonical_triclaw(cells, [u, v, w])
                    }));
                }
            }
        }
    }
    out
}

pub fn find_combclaws(g: &PlaneGraph, c: &CycleRef) -> Vec<BadPartition> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for tri in interior_triangles(g, c) {
        for apex in 0..3 {
            let u = tri[apex];
            let (v, w) = (tri[(apex + 1) % 3], tri[(apex + 2) % 3]);
            let (nv, nw) = (on_cycle_neighbors(g, c, v), on_cycle_neighbors(g, c, w));
            for &x in g.neighbors(u) {
                if x == v || x == w || !c.interior.contains(&x) {
                    continue;
                }
                let nx = on_cycle_neighbors(g, c, x);
                for (x1, x2) in pairs(&nx) {
                    for &v1 in &nv {
                        for &w1 in &nw {
                            let ends = BTreeSet::from([x1, x2, v1, w1]);
                            if ends.len() != 4 {
                                continue;
                            }
                            let edges = vec![
                                (u, v),
                                (v, w),
                                (w, u),
                                (u, x),
                                (x, x1),
                                (x, x2),
                                (v, v1),
                                (w, w1),
                            ];
                            let p = make(g, c, PartitionKind::Combclaw, edges, |cells| {
                                canonical_combclaw(cells, u, v, w, x)
                            });
                            if seen.insert(p.attachment.clone()) {
                                out.push(p);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleClass {
    Good,
    Bad(Vec<BadPartition>),
    Long,
}

/// Long for 12+ cycles; otherwise good unless some claw, biclaw, triclaw or
/// combclaw exists, in which case every witness is returned.
pub fn classify_cycle(g: &PlaneGraph, c: &CycleRef) -> CycleClass {
    if c.len() >= 12 {
        return CycleClass::Long;
    }
    let mut all = find_claws(g, c);
    all.extend(find_biclaws(g, c));
    all.extend(find_triclaws(g, c));
    all.extend(find_combclaws(g, c));
    if all.is_empty() {
        CycleClass::Good
    } else {
        CycleClass::Bad(all)
    }
}

/// Cell tuples a bad cycle of the class may carry, by cycle length.
pub fn bad_partition_allowed(len: usize, kind: PartitionKind, cells: &[usize]) -> bool {
    use PartitionKind::*;
    match (len, kind) {
        (9, Claw) => cells == [3, 6, 6],
        (9, Triclaw) => cells == [3, 6, 6, 6],
        (11, Claw) => cells == [3, 6, 8],
        (11, Biclaw) => cells == [3, 6, 6, 6] || cells == [6, 3, 6, 6],
        (11, Triclaw) => cells == [3, 6, 6, 8],
        (11, Combclaw) => cells == [3, 6, 6, 6, 6],
        _ => false,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BadCycleCensus {
    /// Every bad cycle with all of its witnesses.
    pub bad_cycles: Vec<(CycleRef, Vec<BadPartition>)>,
    /// Witnesses whose length or cell tuple is outside the allowed list.
    pub disallowed: Vec<BadPartition>,
    /// Bad cycles having a chord.
    pub with_chord: Vec<CycleRef>,
    /// Ext-triangular bad 9-cycles.
    pub ext_triangular_bad9: Vec<CycleRef>,
}

impl BadCycleCensus {
    pub fn is_clean(&self) -> bool {
        self.disallowed.is_empty()
            && self.with_chord.is_empty()
            && self.ext_triangular_bad9.is_empty()
    }
}

/// Audits every bad cycle of a class graph.
pub fn bad_cycle_census(g: &PlaneGraph) -> Result<BadCycleCensus, ClassViolation> {
    if let Some(v) = class_violation(g) {
        return Err(v);
    }
    let mut report = BadCycleCensus::default();
    for verts in cycle_lists(g, 11) {
        let c = g.sides_of_cycle(&verts).expect("enumerated cycle");
        let CycleClass::Bad(parts) = classify_cycle(g, &c) else {
            continue;
        };
        for p in &parts {
            if !bad_partition_allowed(c.len(), p.kind, &p.cells) {
                report.disallowed.push(p.clone());
            }
        }
        if !c.inner_chords.is_empty() {
            report.with_chord.push(c.clone());
        }
        if c.len() == 9 && is_ext_triangular(g, &c).is_some() {
            report.ext_triangular_bad9.push(c.clone());
        }
        report.bad_cycles.push((c, parts));
    }
    Ok(report)
}
