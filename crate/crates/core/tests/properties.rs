mod common;

use std::collections::{BTreeSet, VecDeque};

use plane3c::colorer::{
    boundary_colorings, candidates, color_proof_guided, extend_backtrack, find_reduction,
    lift_coloring, safety_check, Coloring, ReductionKind,
};
use plane3c::discharging::{audit, replay, Element};
use plane3c::generate::random_class;
use plane3c::plane_graph::text::{parse, print};
use plane3c::structures::{
    classify_cycle, enumerate_cycles, face_roles, find_biclaws, find_chords, find_claws,
    find_combclaws, find_triclaws, in_class, triangular_status, CycleClass, PartitionKind, Role,
};
use plane3c::{PlaneGraph, Vertex};
use proptest::prelude::*;

use common::brute;

fn class_graph(nmax: usize) -> impl Strategy<Value = PlaneGraph> {
    (0u64..1_000_000).prop_filter_map("generator gave up", move |s| random_class(s, nmax).ok())
}

fn connected(g: &PlaneGraph) -> bool {
    let Some(start) = g.vertices().next() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen.len() == g.vertex_count()
}

fn assert_counts(g: &PlaneGraph) -> Result<(), TestCaseError> {
    let e = g.edge_count();
    let deg: usize = g.vertices().map(|v| g.degree(v)).sum();
    let face: usize = g.faces().iter().map(|f| f.size()).sum();
    prop_assert_eq!(deg, 2 * e);
    prop_assert_eq!(face, 2 * e);
    if connected(g) {
        prop_assert_eq!(g.vertex_count() + g.faces().len(), e + 2);
    }
    for v in g.vertices() {
        let n = g.neighbors(v);
        prop_assert!(!n.contains(&v), "loop at {}", v);
        prop_assert_eq!(
            n.iter().collect::<BTreeSet<_>>().len(),
            n.len(),
            "parallel edge at {}",
            v
        );
    }
    Ok(())
}

/// Whether the cycle bounds a face on either side.
fn facial(g: &PlaneGraph, verts: &[Vertex]) -> bool {
    let c = g.sides_of_cycle(verts).unwrap();
    (c.interior.is_empty() && c.inner_chords.is_empty())
        || (c.exterior.is_empty() && c.outer_chords.is_empty())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn counts_hold_after_edits(g in class_graph(24), pick in any::<prop::sample::Index>(), face in any::<prop::sample::Index>(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        assert_counts(&g)?;
        let vs: Vec<Vertex> = g.vertices().collect();
        let gone = BTreeSet::from([*pick.get(&vs)]);
        // deletions that would strand an isolated vertex are refused
        if let Ok(smaller) = g.delete_vertices(&gone) {
            prop_assert_eq!(smaller.vertex_count(), g.vertex_count() - 1);
            assert_counts(&smaller)?;
        }

        let f = face.index(g.faces().len());
        let walk: Vec<Vertex> = g.faces()[f].corners().map(|c| c.1).collect();
        let (a, b) = (*i.get(&walk), *j.get(&walk));
        if let Ok((merged, report)) = g.identify_vertices(a, b, f) {
            prop_assert!(connected(&merged));
            prop_assert_eq!(merged.vertex_count(), g.vertex_count() - 1);
            let lost = usize::from(report.merged_with.is_some());
            prop_assert_eq!(merged.edge_count(), g.edge_count() - lost);
            assert_counts(&merged)?;
        }
    }

    #[test]
    fn cycle_sides_partition_vertices(g in class_graph(20)) {
        let outer: BTreeSet<Vertex> = g.external_vertices();
        for c in enumerate_cycles(&g, 10) {
            let on: BTreeSet<Vertex> = c.verts.iter().copied().collect();
            prop_assert_eq!(on.len() + c.interior.len() + c.exterior.len(), g.vertex_count());
            prop_assert!(on.is_disjoint(&c.interior) && on.is_disjoint(&c.exterior));
            prop_assert!(c.interior.is_disjoint(&c.exterior));
            prop_assert!(outer.is_disjoint(&c.interior));
        }
    }

    #[test]
    fn print_parse_round_trip(g in class_graph(30), face in any::<prop::sample::Index>()) {
        let text = print(&g);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(print(&back), text);
        let f = face.index(g.faces().len());
        let other = PlaneGraph::from_rotations(g.rotations().clone(), g.faces()[f].darts[0]).unwrap();
        prop_assert_eq!(parse(&print(&other)).unwrap(), other);
    }

    #[test]
    fn charge_is_conserved_and_local(g in class_graph(40)) {
        let r = audit(&g);
        prop_assert_eq!(r.initial.total(), 0);
        prop_assert_eq!(r.final_charges.total(), 0);
        prop_assert_eq!(replay(&r.initial, &r.transfers), r.final_charges.clone());
        for t in &r.transfers {
            prop_assert!([1, 2, 4].contains(&t.amount), "amount {}", t.amount);
            let (v, f) = match (t.from, t.to) {
                (Element::Vertex(v), Element::Face(f)) | (Element::Face(f), Element::Vertex(v)) => (v, f),
                other => return Err(TestCaseError::fail(format!("{other:?} not a vertex-face pair"))),
            };
            prop_assert!(g.faces()[f].corners().any(|c| c.1 == v), "v{} not on f{}", v, f);
        }
    }

    #[test]
    fn roles_are_exclusive(g in class_graph(30)) {
        let tri = triangular_status(&g);
        for f in 0..g.faces().len() {
            for ((p, v, n), vr) in g.faces()[f].corners().zip(face_roles(&g, f)) {
                prop_assert_eq!(vr.vertex, v);
                let internal = !g.is_external(v);
                let (a, b) = (tri.edge(p, v), tri.edge(v, n));
                let d = g.degree(v);
                let heavy = internal && a && b && d >= 5;
                let m_light = internal && a && b && d == 4;
                let v_light = internal && !a && !b && d == 4 && tri.vertex(v);
                prop_assert!(usize::from(heavy) + usize::from(m_light) + usize::from(v_light) <= 1);
                let expect = if heavy { Role::Heavy } else if m_light { Role::MLight } else if v_light { Role::VLight } else { Role::None };
                prop_assert_eq!(vr.role, expect);
                prop_assert_eq!(vr.role.is_light(), brute::light(&g, p, v, n));
            }
        }
    }

    #[test]
    fn partition_cells_add_up(g in class_graph(24)) {
        for c in enumerate_cycles(&g, 11) {
            let found: Vec<_> = [find_chords, find_claws, find_biclaws, find_triclaws, find_combclaws]
                .iter()
                .flat_map(|f| f(&g, &c))
                .collect();
            for p in &found {
                let sum: usize = p.cells.iter().sum();
                prop_assert_eq!(sum, c.len() + 2 * p.attachment.len(), "{}", p);
                prop_assert!(p.cells.iter().all(|&l| l >= 3 && l != 4 && l != 5), "{}", p);
            }
            let claw_family = found.iter().filter(|p| p.kind != PartitionKind::Chord).count();
            if classify_cycle(&g, &c) == CycleClass::Good {
                prop_assert_eq!(claw_family, 0, "good cycle {:?}", c.verts);
            }
        }
    }

    #[test]
    fn reductions_shrink_the_graph(g in class_graph(24)) {
        for tag in ReductionKind::ALL {
            for step in candidates(&g, tag) {
                if let Ok(red) = safety_check(&g, &step) {
                    prop_assert!(red.graph.vertex_count() < g.vertex_count(), "{}", step);
                    prop_assert!(in_class(&red.graph), "{}", step);
                }
            }
        }
    }

    #[test]
    fn lifting_keeps_the_reduced_coloring(g in class_graph(22), pick in any::<prop::sample::Index>()) {
        let d = g.boundary_cycle().unwrap();
        let phi = pick.get(&boundary_colorings(&g, &d)).clone();
        let Some(step) = find_reduction(&g) else { return Ok(()) };
        let red = safety_check(&g, &step).unwrap();
        let sub = extend_backtrack(&red.graph, &phi).unwrap().unwrap();
        let lifted = lift_coloring(&g, &step, &sub).unwrap();
        prop_assert!(lifted.is_total(&g) && lifted.is_proper(&g));
        prop_assert!(lifted.extends(&phi));
        if step.tag != ReductionKind::MMFace {
            prop_assert!(lifted.extends(&sub), "{}", step);
        }
    }

    #[test]
    fn generation_and_coloring_are_deterministic(seed in 0u64..1_000_000, pick in any::<prop::sample::Index>()) {
        let (Ok(a), Ok(b)) = (random_class(seed, 22), random_class(seed, 22)) else { return Ok(()) };
        prop_assert_eq!(print(&a), print(&b));
        let d = a.boundary_cycle().unwrap();
        let phi = pick.get(&boundary_colorings(&a, &d)).clone();
        let (c1, s1) = color_proof_guided(&a, &phi).unwrap();
        let (c2, s2) = color_proof_guided(&b, &phi).unwrap();
        prop_assert_eq!(c1, c2);
        prop_assert_eq!(s1.to_string(), s2.to_string());
        prop_assert_eq!(audit(&a).to_string(), audit(&b).to_string());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_is_sound_and_complete(g in class_graph(18), pick in any::<prop::sample::Index>(), extra in any::<prop::sample::Index>(), color in 1u8..=3) {
        let d = g.boundary_cycle().unwrap();
        let mut phi = pick.get(&boundary_colorings(&g, &d)).clone();
        // an arbitrary extra pin makes unextendable inputs common
        let vs: Vec<Vertex> = g.vertices().collect();
        let v = *extra.get(&vs);
        if phi.get(v).is_none() {
            phi.set(v, color);
        }
        if !phi.is_proper(&g) {
            return Ok(());
        }
        let found = extend_backtrack(&g, &phi).unwrap();
        if let Some(c) = &found {
            prop_assert!(c.is_total(&g) && c.is_proper(&g) && c.extends(&phi));
        }
        prop_assert_eq!(found.is_some(), brute::extends(&g, &phi));
    }

    #[test]
    fn short_class_cycles_are_facial_or_reducible(g in class_graph(26)) {
        let reducible = !plane3c::structures::unavoidable_witnesses(&g).is_empty();
        for c in plane3c::structures::cycle_lists(&g, 8) {
            if [3, 6, 8].contains(&c.len()) && !facial(&g, &c) {
                let r = g.sides_of_cycle(&c).unwrap();
                prop_assert_eq!(classify_cycle(&g, &r), CycleClass::Good);
                prop_assert!(reducible, "non-facial {}-cycle {:?} without a witness", c.len(), c);
            }
        }
    }
}

#[test]
fn empty_precoloring_round_trips_through_text() {
    let c: Coloring = "".parse().unwrap();
    assert!(c.is_empty());
}
