use crate::plane_graph::{CycleRef, PlaneGraph, Vertex};

/// Paths of `2..=lmax` edges whose ends lie on `d` and whose inner vertices
/// lie strictly inside it. Each path is listed once, from its smaller end.
pub fn find_splitting_paths(g: &PlaneGraph, d: &CycleRef, lmax: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    for &a in &d.verts {
        for &w in g.neighbors(a) {
            if d.interior.contains(&w) {
                let mut path = vec![a, w];
                walk(g, d, lmax, &mut path, &mut out);
            }
        }
    }
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out
}

fn walk(
    g: &PlaneGraph,
    d: &CycleRef,
    lmax: usize,
    path: &mut Vec<Vertex>,
    out: &mut Vec<Vec<Vertex>>,
) {
    let last = *path.last().unwrap();
    let edges = path.len() - 1;
    for &w in g.neighbors(last) {
        if path.contains(&w) {
            continue;
        }
        if d.position(w).is_some() {
            if w > path[0] && edges < lmax {
                let mut p = path.clone();
                p.push(w);
                out.push(p);
            }
        } else if d.interior.contains(&w) && edges + 1 < lmax {
            path.push(w);
            walk(g, d, lmax, path, out);
            path.pop();
        }
    }
}

/// A splitting path of length 2 to 5 contradicting the length bounds on the
/// two cycles it cuts the boundary into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingViolation {
    pub path: Vec<Vertex>,
    /// Lengths of the two cycles formed with the boundary arcs, smaller first.
    pub parts: (usize, usize),
}

/// Splitting paths `P` of `d` such that: `|P| = 2` and neither part is a
/// triangle; `|P| = 3`; `|P| = 4` and both parts have length at least 8;
/// `|P| = 5` and both parts have length at least 10.
pub fn splitting_path_violations(g: &PlaneGraph, d: &CycleRef) -> Vec<SplittingViolation> {
    let n = d.len();
    find_splitting_paths(g, d, 5)
        .into_iter()
        .filter_map(|p| {
            let len = p.len() - 1;
            let i = d.position(p[0]).unwrap();
            let j = d.position(*p.last().unwrap()).unwrap();
            let arc = (j + n - i) % n;
            let (a, b) = (arc + len, n - arc + len);
            let small = a.min(b);
            let bad = match len {
                2 => small != 3,
                3 => true,
                4 => small >= 8,
                5 => small >= 10,
                _ => false,
            };
            bad.then(|| SplittingViolation {
                path: p,
                parts: (small, a.max(b)),
            })
        })
        .collect()
}
