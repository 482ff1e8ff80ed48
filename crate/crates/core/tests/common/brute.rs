//! Definition-literal searches used as references for the detectors.
//!
//! Every search loops over raw vertex tuples and tests the defining
//! predicate directly, without the neighbour-driven pruning of the library.

use std::collections::BTreeSet;

use plane3c::structures::{BadPartition, PartitionKind};
use plane3c::{CycleRef, PlaneGraph, Side, Vertex};

pub type Edge = (Vertex, Vertex);

/// An attached structure as (kind, sorted attachment edges, sorted cells).
pub type Found = (PartitionKind, Vec<Edge>, Vec<usize>);

fn key(a: Vertex, b: Vertex) -> Edge {
    (a.min(b), a.max(b))
}

fn attachment(edges: &[Edge]) -> Vec<Edge> {
    let set: BTreeSet<Edge> = edges.iter().map(|&(a, b)| key(a, b)).collect();
    set.into_iter().collect()
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

pub fn from_partition(p: &BadPartition) -> Found {
    (p.kind, p.attachment.clone(), sorted(p.cells.clone()))
}

pub fn triangular_edge(g: &PlaneGraph, u: Vertex, v: Vertex) -> bool {
    g.has_edge(u, v)
        && g.vertices()
            .any(|w| w != u && w != v && g.has_edge(u, w) && g.has_edge(v, w))
}

pub fn on_triangle(g: &PlaneGraph, v: Vertex) -> bool {
    g.vertices().any(|w| triangular_edge(g, v, w))
}

fn inside(c: &CycleRef) -> Vec<Vertex> {
    c.interior
        .iter()
        .copied()
        .filter(|&x| c.side(x) == Side::Inside)
        .collect()
}

/// Forward distance from position `i` to position `j` on an `n`-cycle.
fn fwd(n: usize, i: usize, j: usize) -> usize {
    (j + n - i) % n
}

/// Whether position `p` lies strictly inside the forward arc `i -> j`.
fn strictly_within(n: usize, i: usize, j: usize, p: usize) -> bool {
    let d = fwd(n, i, p);
    d > 0 && d < fwd(n, i, j)
}

/// Arc lengths between cyclically consecutive positions of `ps`.
fn gaps(n: usize, ps: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut s = ps.to_vec();
    s.sort_unstable();
    (0..s.len())
        .map(|k| {
            (
                s[k],
                s[(k + 1) % s.len()],
                fwd(n, s[k], s[(k + 1) % s.len()]),
            )
        })
        .collect()
}

pub fn claws(g: &PlaneGraph, c: &CycleRef) -> Vec<Found> {
    let n = c.len();
    let mut out = Vec::new();
    for v in inside(c) {
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let ends = [c.verts[i], c.verts[j], c.verts[k]];
                    if ends.iter().all(|&e| g.has_edge(v, e)) {
                        let edges: Vec<Edge> = ends.iter().map(|&e| (v, e)).collect();
                        let cells = vec![j - i + 2, k - j + 2, n - k + i + 2];
                        out.push((PartitionKind::Claw, attachment(&edges), sorted(cells)));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Cells of a biclaw whose ends attach at positions `(i, j)` and `(k, l)`.
fn biclaw_cells(n: usize, (i, j): (usize, usize), (k, l): (usize, usize)) -> Option<Vec<usize>> {
    let orient = |(a, b): (usize, usize), others: [usize; 2]| {
        let clear = |s, e| others.iter().all(|&p| !strictly_within(n, s, e, p));
        match (clear(a, b), clear(b, a)) {
            (true, false) => Some((a, b)),
            (false, true) => Some((b, a)),
            _ => None,
        }
    };
    let (sa, ea) = orient((i, j), [k, l])?;
    let (sb, eb) = orient((k, l), [i, j])?;
    let (la, lb) = (fwd(n, sa, ea), fwd(n, sb, eb));
    let (m1, m2) = (fwd(n, ea, sb), fwd(n, eb, sa));
    (la + lb + m1 + m2 == n).then(|| sorted(vec![la + 2, lb + 2, m1 + 3, m2 + 3]))
}

pub fn biclaws(g: &PlaneGraph, c: &CycleRef) -> Vec<Found> {
    let n = c.len();
    let ins = inside(c);
    let mut out = Vec::new();
    for &u in &ins {
        for &v in &ins {
            if u >= v || !g.has_edge(u, v) {
                continue;
            }
            for i in 0..n {
                for j in i + 1..n {
                    if !(g.has_edge(u, c.verts[i]) && g.has_edge(u, c.verts[j])) {
                        continue;
                    }
                    for k in 0..n {
                        for l in k + 1..n {
                            if !(g.has_edge(v, c.verts[k]) && g.has_edge(v, c.verts[l])) {
                                continue;
                            }
                            let edges = [
                                (u, v),
                                (u, c.verts[i]),
                                (u, c.verts[j]),
                                (v, c.verts[k]),
                                (v, c.verts[l]),
                            ];
                            let cells = biclaw_cells(n, (i, j), (k, l)).unwrap_or_default();
                            out.push((PartitionKind::Biclaw, attachment(&edges), cells));
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

fn inside_triangles(g: &PlaneGraph, c: &CycleRef) -> Vec<[Vertex; 3]> {
    let ins = inside(c);
    let mut out = Vec::new();
    for &a in &ins {
        for &b in &ins {
            for &d in &ins {
                if a < b && b < d && g.has_edge(a, b) && g.has_edge(b, d) && g.has_edge(a, d) {
                    out.push([a, b, d]);
                }
            }
        }
    }
    out
}

pub fn triclaws(g: &PlaneGraph, c: &CycleRef) -> Vec<Found> {
    let n = c.len();
    let mut out = Vec::new();
    for [u, v, w] in inside_triangles(g, c) {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, d) = (c.verts[i], c.verts[j], c.verts[k]);
                    if !(g.has_edge(u, a) && g.has_edge(v, b) && g.has_edge(w, d)) {
                        continue;
                    }
                    let edges = [(u, v), (v, w), (u, w), (u, a), (v, b), (w, d)];
                    let mut cells = vec![3];
                    cells.extend(gaps(n, &[i, j, k]).iter().map(|&(_, _, len)| len + 3));
                    out.push((PartitionKind::Triclaw, attachment(&edges), sorted(cells)));
                }
            }
        }
    }
    out.sort();
    out
}

pub fn combclaws(g: &PlaneGraph, c: &CycleRef) -> Vec<Found> {
    let n = c.len();
    let ins = inside(c);
    let mut out = BTreeSet::new();
    for tri in inside_triangles(g, c) {
        for apex in 0..3 {
            let u = tri[apex];
            let (v, w) = (tri[(apex + 1) % 3], tri[(apex + 2) % 3]);
            for &x in &ins {
                if tri.contains(&x) || !g.has_edge(u, x) {
                    continue;
                }
                for i in 0..n {
                    for j in i + 1..n {
                        for k in 0..n {
                            for l in 0..n {
                                let (x1, x2, v1, w1) =
                                    (c.verts[i], c.verts[j], c.verts[k], c.verts[l]);
                                let ok = g.has_edge(x, x1)
                                    && g.has_edge(x, x2)
                                    && g.has_edge(v, v1)
                                    && g.has_edge(w, w1)
                                    && BTreeSet::from([i, j, k, l]).len() == 4;
                                if !ok {
                                    continue;
                                }
                                let edges = [
                                    (u, v),
                                    (v, w),
                                    (w, u),
                                    (u, x),
                                    (x, x1),
                                    (x, x2),
                                    (v, v1),
                                    (w, w1),
                                ];
                                let xs = BTreeSet::from([i, j]);
                                let mut cells = vec![3];
                                for (s, e, len) in gaps(n, &[i, j, k, l]) {
                                    let add = match (xs.contains(&s), xs.contains(&e)) {
                                        (true, true) => 2,
                                        (false, false) => 3,
                                        _ => 4,
                                    };
                                    cells.push(len + add);
                                }
                                out.insert((
                                    PartitionKind::Combclaw,
                                    attachment(&edges),
                                    sorted(cells),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

fn pred(g: &PlaneGraph, v: Vertex, u: Vertex) -> Vertex {
    let nb = g.neighbors(v);
    let i = nb.iter().position(|&w| w == u).unwrap();
    nb[(i + nb.len() - 1) % nb.len()]
}

fn internal_deg(g: &PlaneGraph, v: Vertex, d: usize) -> bool {
    !g.is_external(v) && g.degree(v) == d
}

/// f-light at the corner `prev, v, next`.
pub fn light(g: &PlaneGraph, prev: Vertex, v: Vertex, next: Vertex) -> bool {
    if !internal_deg(g, v, 4) {
        return false;
    }
    let (a, b) = (triangular_edge(g, prev, v), triangular_edge(g, v, next));
    (a && b) || (!a && !b && on_triangle(g, v))
}

fn simple_paths(g: &PlaneGraph, len: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<Vertex>> = g.vertices().map(|v| vec![v]).collect();
    while let Some(p) = stack.pop() {
        if p.len() == len {
            out.push(p);
            continue;
        }
        for &w in g.neighbors(*p.last().unwrap()) {
            if !p.contains(&w) {
                let mut q = p.clone();
                q.push(w);
                stack.push(q);
            }
        }
    }
    out
}

/// Weak tetrads as `(face, v0, [v1..v5])`, once per traversal direction.
pub fn weak_tetrads(g: &PlaneGraph) -> BTreeSet<(usize, Vertex, [Vertex; 5])> {
    let mut out = BTreeSet::new();
    for p in simple_paths(g, 5) {
        let path: [Vertex; 5] = p.clone().try_into().unwrap();
        // along the face walk, or against it
        let along = (0..3).all(|i| g.succ(p[i + 1], p[i]) == p[i + 2]);
        let against = (1..4).all(|i| g.succ(p[i], p[i + 1]) == p[i - 1]);
        for (ok, face, v0, v6) in [
            (
                along,
                g.face_of_dart((p[0], p[1])),
                pred(g, p[0], p[1]),
                g.succ(p[4], p[3]),
            ),
            (
                against,
                g.face_of_dart((p[1], p[0])),
                g.succ(p[0], p[1]),
                pred(g, p[4], p[3]),
            ),
        ] {
            if !ok || v0 == p[1] {
                continue;
            }
            let shape = triangular_edge(g, p[0], p[1])
                && triangular_edge(g, p[2], p[3])
                && p[..4].iter().all(|&v| internal_deg(g, v, 3));
            let tail = g.degree(p[4]) == 3 || light(g, p[3], p[4], v6);
            if shape && tail {
                out.insert((face.unwrap(), v0, path));
            }
        }
    }
    out
}

/// Every labelling `v1..v8` of an internal 8-face whose boundary is a cycle.
fn eight_face_labellings(g: &PlaneGraph) -> Vec<(usize, [Vertex; 8])> {
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        for start in [(u, v), (v, u)] {
            let mut walk = vec![start.0];
            let mut d = start;
            for _ in 0..8 {
                d = (d.1, g.succ(d.1, d.0));
                walk.push(d.0);
            }
            let closes = d == start;
            let distinct = walk[..8].iter().collect::<BTreeSet<_>>().len() == 8;
            let fi = g.face_of_dart(start).unwrap();
            let size_ok = g.faces()[fi].size() == 8;
            if !(closes && distinct && size_ok) || walk.iter().any(|&x| g.is_external(x)) {
                continue;
            }
            let fwd: [Vertex; 8] = walk[..8].try_into().unwrap();
            let mut rev = fwd;
            rev.reverse();
            out.push((fi, fwd));
            out.push((fi, rev));
        }
    }
    out
}

/// M-faces keyed by `(face, v4, v8)`.
pub fn m_faces(g: &PlaneGraph) -> BTreeSet<(usize, Vertex, Vertex)> {
    eight_face_labellings(g)
        .into_iter()
        .filter(|(_, l)| {
            [0, 1, 2, 4, 5, 6].iter().all(|&i| g.degree(l[i]) == 3)
                && [(0, 1), (2, 3), (3, 4), (5, 6)]
                    .iter()
                    .all(|&(i, j)| triangular_edge(g, l[i], l[j]))
        })
        .map(|(f, l)| (f, l[3], l[7]))
        .collect()
}

/// MM-faces keyed by `(face, min(v1, v8), max(v1, v8))`.
pub fn mm_faces(g: &PlaneGraph) -> BTreeSet<(usize, Vertex, Vertex)> {
    eight_face_labellings(g)
        .into_iter()
        .filter(|(_, l)| {
            (0..8).all(|i| g.degree(l[i]) == if i == 1 || i == 6 { 4 } else { 3 })
                && [(0, 1), (1, 2), (3, 4), (5, 6), (6, 7)]
                    .iter()
                    .all(|&(i, j)| triangular_edge(g, l[i], l[j]))
        })
        .map(|(f, l)| (f, l[0].min(l[7]), l[0].max(l[7])))
        .collect()
}

/// Brute-force 3^k extension test over the vertices `fixed` leaves open.
pub fn extends(g: &PlaneGraph, fixed: &plane3c::colorer::Coloring) -> bool {
    let open: Vec<Vertex> = g.vertices().filter(|&v| fixed.get(v).is_none()).collect();
    let total = 3usize.pow(open.len() as u32);
    (0..total).any(|mut code| {
        let mut c = fixed.clone();
        for &v in &open {
            c.set(v, (code % 3) as u8 + 1);
            code /= 3;
        }
        c.is_proper(g)
    })
}
