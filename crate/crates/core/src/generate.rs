//! Named instances and a seeded random generator for the class.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::plane_graph::{Dart, GraphError, PlaneBuilder, PlaneGraph, Vertex};
use crate::structures::{
    classify_cycle, find_m_faces, find_mm_faces, find_weak_tetrads, in_class, CycleClass,
};

#[derive(Debug, Error)]
pub enum GenerateError {
    #[error("unknown generator `{0}`")]
    Unknown(String),
    #[error("bad generator parameter: {0}")]
    Param(String),
    #[error("no instance found after {0} attempts")]
    Budget(usize),
    #[error("generated instance failed validation: {0}")]
    Validation(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spec {
    Cycle(usize),
    G1,
    G2,
    Claw9,
    MFace,
    MMFace,
    Tetrad,
    RandomClass { seed: u64, nmax: usize },
}

impl fmt::Display for Spec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Spec::Cycle(n) => write!(f, "cycle {n}"),
            Spec::G1 => f.write_str("g1"),
            Spec::G2 => f.write_str("g2"),
            Spec::Claw9 => f.write_str("claw9"),
            Spec::MFace => f.write_str("mface"),
            Spec::MMFace => f.write_str("mmface"),
            Spec::Tetrad => f.write_str("tetrad"),
            Spec::RandomClass { seed, nmax } => write!(f, "random-class {seed} {nmax}"),
        }
    }
}

/// Parses `cycle <n>`, `g1`, `g2`, `claw9`, `mface`, `mmface`, `tetrad` or
/// `random-class <seed> <nmax>`.
impl FromStr for Spec {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let num = |i: usize| -> Result<u64, GenerateError> {
            let t = toks
                .get(i)
                .ok_or_else(|| GenerateError::Param(format!("`{s}` is missing an argument")))?;
            t.parse()
                .map_err(|_| GenerateError::Param(format!("`{t}` is not a number")))
        };
        let spec = match toks.first().copied() {
            Some("cycle") => Spec::Cycle(num(1)? as usize),
            Some("g1") => Spec::G1,
            Some("g2") => Spec::G2,
            Some("claw9") => Spec::Claw9,
            Some("mface") => Spec::MFace,
            Some("mmface") => Spec::MMFace,
            Some("tetrad") => Spec::Tetrad,
            Some("random-class") => Spec::RandomClass {
                seed: num(1)?,
                nmax: num(2)? as usize,
            },
            _ => return Err(GenerateError::Unknown(s.to_string())),
        };
        Ok(spec)
    }
}

/// Builds the instance and checks the properties its name promises.
pub fn generate(spec: Spec) -> Result<PlaneGraph, GenerateError> {
    let g = match spec {
        Spec::Cycle(n) => {
            if !(3..=64).contains(&n) {
                return Err(GenerateError::Param(format!(
                    "cycle length {n} outside 3..=64"
                )));
            }
            cycle(n)
        }
        Spec::G1 => g1(),
        Spec::G2 => g2(),
        Spec::Claw9 => claw9(),
        Spec::MFace => m_face(),
        Spec::MMFace => mm_face(),
        Spec::Tetrad => tetrad(),
        Spec::RandomClass { seed, nmax } => return random_class(seed, nmax),
    };
    let check = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(GenerateError::Validation(format!("{spec}: {what}")))
        }
    };
    match spec {
        Spec::Cycle(n) => check(
            g.vertex_count() == n && g.faces().len() == 2,
            "not a bare cycle",
        )?,
        Spec::G1 => check(g.vertex_count() == 13 && g.edge_count() == 15, "wrong size")?,
        Spec::G2 => check(g.vertex_count() == 15 && g.edge_count() == 18, "wrong size")?,
        Spec::Claw9 => check(
            in_class(&g) && matches!(boundary_class(&g), Some(CycleClass::Bad(_))),
            "boundary is not a bad 9-cycle",
        )?,
        Spec::MFace => check(!find_m_faces(&g).is_empty(), "no M-face")?,
        Spec::MMFace => check(!find_mm_faces(&g).is_empty(), "no MM-face")?,
        Spec::Tetrad => check(!find_weak_tetrads(&g).is_empty(), "no weak tetrad")?,
        Spec::RandomClass { .. } => unreachable!(),
    }
    Ok(g)
}

fn boundary_class(g: &PlaneGraph) -> Option<CycleClass> {
    let d = g.boundary_cycle()?;
    let c = g.sides_of_cycle(&d).ok()?;
    Some(classify_cycle(g, &c))
}

/// Whether the outer boundary is a chordless good cycle.
pub fn has_good_chordless_boundary(g: &PlaneGraph) -> bool {
    let Some(d) = g.boundary_cycle() else {
        return false;
    };
    let Ok(c) = g.sides_of_cycle(&d) else {
        return false;
    };
    c.inner_chords.is_empty()
        && c.outer_chords.is_empty()
        && matches!(classify_cycle(g, &c), CycleClass::Good)
}

pub fn cycle(n: usize) -> PlaneGraph {
    let ids: Vec<Vertex> = (1..=n).collect();
    PlaneBuilder::cycle(&ids).build().expect("a cycle is plane")
}

fn inner(b: &PlaneBuilder, vs: &[Vertex]) -> Dart {
    b.inner_face_with(vs).expect("construction face exists")
}

fn ear(b: &mut PlaneBuilder, x: Vertex, y: Vertex, new: &[Vertex]) {
    let f = inner(b, &[x, y]);
    b.ear(f, x, y, new).expect("construction ear");
}

/// A 12-cycle `1..12` with a vertex 13 joined to 1, 2 and 6.
pub fn g1() -> PlaneGraph {
    let ids: Vec<Vertex> = (1..=12).collect();
    let mut b = PlaneBuilder::cycle(&ids);
    ear(&mut b, 1, 2, &[13]);
    ear(&mut b, 13, 6, &[]);
    b.build().expect("g1")
}

/// A 12-cycle `1..12` with a triangle `13 14 15` inside, joined by the
/// edges 13-1, 14-4 and 15-7.
pub fn g2() -> PlaneGraph {
    let ids: Vec<Vertex> = (1..=12).collect();
    let mut b = PlaneBuilder::cycle(&ids);
    ear(&mut b, 1, 4, &[13, 14]);
    ear(&mut b, 13, 7, &[15]);
    ear(&mut b, 14, 15, &[]);
    b.build().expect("g2")
}

/// A 9-cycle `1..9` with a vertex 10 joined to 1, 2 and 6.
pub fn claw9() -> PlaneGraph {
    let ids: Vec<Vertex> = (1..=9).collect();
    let mut b = PlaneBuilder::cycle(&ids);
    ear(&mut b, 1, 2, &[10]);
    ear(&mut b, 10, 6, &[]);
    b.build().expect("claw9")
}

/// Outer cycle through `anchors` with `lens[i]` edges from `anchors[i]` to
/// the next anchor; filler vertices are numbered from `next`.
fn anchored_cycle(anchors: &[Vertex], lens: &[usize], mut next: Vertex) -> Vec<Vertex> {
    let mut out = Vec::new();
    for (&a, &len) in anchors.iter().zip(lens) {
        out.push(a);
        for _ in 1..len {
            out.push(next);
            next += 1;
        }
    }
    out
}

/// An internal 8-face `1..8` with triangles on 1-2, 3-4, 4-5 and 6-7 whose
/// apexes 9, 10, 11, 12 lie on the outer cycle.
pub fn m_face() -> PlaneGraph {
    let (t12, t34, t45, t67) = (9, 10, 11, 12);
    let d = anchored_cycle(&[t12, t34, t45, t67], &[5, 6, 5, 4], 13);
    let mut b = PlaneBuilder::cycle(&d);
    ear(&mut b, t12, t34, &[2, 3]);
    ear(&mut b, t34, t45, &[4]);
    ear(&mut b, 3, 4, &[]);
    ear(&mut b, t45, t67, &[5, 6]);
    ear(&mut b, 4, 5, &[]);
    ear(&mut b, t67, t12, &[7, 8, 1]);
    ear(&mut b, 6, 7, &[]);
    ear(&mut b, 1, 2, &[]);
    b.build().expect("m-face")
}

/// An internal 8-face `1..8` with triangles on 1-2, 2-3, 4-5, 6-7 and 7-8
/// whose apexes 9..13 lie on the outer cycle.
pub fn mm_face() -> PlaneGraph {
    let (t12, t23, t45, t67, t78) = (9, 10, 11, 12, 13);
    let d = anchored_cycle(&[t12, t23, t45, t67, t78], &[6, 5, 5, 6, 5], 14);
    let mut b = PlaneBuilder::cycle(&d);
    ear(&mut b, t12, t23, &[2]);
    ear(&mut b, t23, t45, &[3, 4]);
    ear(&mut b, 2, 3, &[]);
    ear(&mut b, t45, t67, &[5, 6]);
    ear(&mut b, 4, 5, &[]);
    ear(&mut b, t67, t78, &[7]);
    ear(&mut b, 6, 7, &[]);
    ear(&mut b, t78, t12, &[8, 1]);
    ear(&mut b, 7, 8, &[]);
    ear(&mut b, 1, 2, &[]);
    b.build().expect("mm-face")
}

/// An internal 9-face `1..9` with triangles on 1-2 (apex 10) and 3-4
/// (apex 11); vertices 5 and 9 reach the outer cycle at 12 and 13.
pub fn tetrad() -> PlaneGraph {
    let (x, y, p5, p9) = (10, 11, 12, 13);
    let d = anchored_cycle(&[x, y, p5, p9], &[5, 3, 2, 3], 14);
    let mut b = PlaneBuilder::cycle(&d);
    ear(&mut b, x, y, &[2, 3]);
    ear(&mut b, y, p5, &[4, 5]);
    ear(&mut b, 3, 4, &[]);
    ear(&mut b, 5, p9, &[6, 7, 8, 9]);
    ear(&mut b, 9, x, &[1]);
    ear(&mut b, 1, 2, &[]);
    b.build().expect("tetrad")
}

const RESTARTS: usize = 64;
const MOVE_FAILURES: usize = 80;
const CLOSING_TRIES: usize = 12;

/// A random member of the class with at most `nmax` vertices whose outer
/// boundary is a good chordless cycle of length 6 to 11.
///
/// Grows the graph from its boundary by drawing random paths of up to five
/// new vertices inside inner faces, with an occasional pendant vertex, and
/// finishes with a few single edges. Every move that leaves the class or
/// spoils the boundary is undone.
pub fn random_class(seed: u64, nmax: usize) -> Result<PlaneGraph, GenerateError> {
    if nmax < 6 {
        return Err(GenerateError::Param(format!("nmax {nmax} < 6")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RESTARTS {
        let len = rng.random_range(6..=nmax.min(11));
        let target = rng.random_range(len.min(nmax - 1) + 1..=nmax);
        let ids: Vec<Vertex> = (0..len).collect();
        let mut b = PlaneBuilder::cycle(&ids);
        let mut count = len;
        let mut failures = 0;
        while count < target && failures < MOVE_FAILURES {
            match try_move(&b, &mut rng, target - count) {
                Some((nb, added)) => {
                    b = nb;
                    count += added;
                }
                None => failures += 1,
            }
        }
        for _ in 0..CLOSING_TRIES {
            if let Some((nb, _)) = try_move(&b, &mut rng, 0) {
                b = nb;
            }
        }
        let g = b.build()?;
        if g.vertex_count() > len && in_class(&g) && has_good_chordless_boundary(&g) {
            return Ok(g);
        }
    }
    Err(GenerateError::Budget(RESTARTS))
}

/// Face-walk lengths of the two sides an ear of `edges` edges creates.
fn ear_ok(edges: usize, d: usize, n: usize) -> bool {
    let ok = |c: usize| c == 3 || c >= 6;
    ok(edges + d) && ok(edges + n - d)
}

fn try_move(b: &PlaneBuilder, rng: &mut ChaCha8Rng, room: usize) -> Option<(PlaneBuilder, usize)> {
    let faces = b.inner_faces();
    let walk = &faces[rng.random_range(0..faces.len())];
    let n = walk.len();
    let mut next = b.clone();
    let mut id = b.next_id();
    let i = rng.random_range(0..n);
    let into = |k: usize| walk[(k + n - 1) % n];
    if room > 0 && rng.random_bool(0.04) {
        next.pendant_at_corner(into(i), id).ok()?;
        return accept(next).map(|b| (b, 1));
    }
    let j = rng.random_range(0..n);
    let d = (j + n - i) % n;
    let (x, y) = (walk[i].0, walk[j].0);
    if x == y {
        return None;
    }
    let choices: Vec<usize> = (0..=room.min(5)).filter(|&k| ear_ok(k + 1, d, n)).collect();
    if choices.is_empty() {
        return None;
    }
    let k = choices[rng.random_range(0..choices.len())];
    let new: Vec<Vertex> = (0..k)
        .map(|_| {
            id += 1;
            id - 1
        })
        .collect();
    next.ear_at_corners(into(i), into(j), &new).ok()?;
    accept(next).map(|b| (b, k))
}

fn accept(b: PlaneBuilder) -> Option<PlaneBuilder> {
    let g = b.build().ok()?;
    (in_class(&g) && has_good_chordless_boundary(&g)).then_some(b)
}
