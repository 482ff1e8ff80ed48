//! Corpora and reference implementations shared by the integration tests.
#![allow(dead_code)]

pub mod brute;

use std::collections::BTreeSet;
use std::path::PathBuf;

use plane3c::generate::{self, has_good_chordless_boundary, random_class};
use plane3c::plane_graph::text::{parse, print};
use plane3c::plane_graph::PlaneBuilder;
use plane3c::structures::in_class;
use plane3c::{PlaneGraph, Vertex};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> PlaneGraph {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// The same embedding with each face in turn as the outer face.
pub fn reembeddings(g: &PlaneGraph) -> Vec<PlaneGraph> {
    g.faces()
        .iter()
        .filter_map(|f| PlaneGraph::from_rotations(g.rotations().clone(), f.darts[0]).ok())
        .collect()
}

/// Distinct random class instances with at most `nmax` vertices, in seed
/// order starting at `first_seed`.
pub fn random_corpus(first_seed: u64, nmax: usize, count: usize) -> Vec<PlaneGraph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut seed = first_seed;
    while out.len() < count {
        if let Ok(g) = random_class(seed, nmax) {
            if seen.insert(print(&g)) {
                out.push(g);
            }
        }
        seed += 1;
        assert!(
            seed < first_seed + 50 * count as u64,
            "generator keeps failing"
        );
    }
    out
}

/// Hand-built instances: the named generators, bare cycles, the degree-3
/// fixture and those of its re-embeddings with a good chordless boundary.
pub fn handcrafted() -> Vec<PlaneGraph> {
    let mut out: Vec<PlaneGraph> = (3..=12).map(generate::cycle).collect();
    out.extend([
        generate::g1(),
        generate::g2(),
        generate::claw9(),
        generate::m_face(),
        generate::mm_face(),
        generate::tetrad(),
        m_face_anchored(),
    ]);
    let f = fixture("edge63.pg");
    out.extend(
        reembeddings(&f)
            .into_iter()
            .filter(has_good_chordless_boundary),
    );
    out.push(f);
    out
}

/// Class instances with a good chordless boundary and at least one
/// internal vertex.
pub fn is_reducible_shape(g: &PlaneGraph) -> bool {
    in_class(g) && has_good_chordless_boundary(g) && g.vertices().any(|v| !g.is_external(v))
}

/// The generated M-face with `v8` also joined to the outer cycle through a
/// new vertex.
pub fn m_face_anchored() -> PlaneGraph {
    let mut b = PlaneBuilder::from_graph(&generate::m_face());
    let n = b.next_id();
    let f = b.inner_face_with(&[8, 27]).unwrap();
    b.ear(f, 8, 27, &[n]).unwrap();
    b.build().unwrap()
}

/// Positions `0..n` of a cycle labelled `1..=n`.
pub fn at(n: usize, pos: usize) -> Vertex {
    pos % n + 1
}

pub fn ear(b: &mut PlaneBuilder, x: Vertex, y: Vertex, new: &[Vertex]) -> Option<()> {
    let f = b.inner_face_with(&[x, y])?;
    b.ear(f, x, y, new).ok()
}
