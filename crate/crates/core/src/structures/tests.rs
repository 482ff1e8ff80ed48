use std::collections::BTreeSet;

use super::*;
use crate::generate::{claw9, cycle, g1, g2, m_face, mm_face, tetrad};
use crate::plane_graph::PlaneGraph;

/// Counts cycles by brute force: for every vertex subset, the Hamiltonian
/// cycles of the subgraph it induces.
fn brute_force_cycle_count(g: &PlaneGraph, lmax: usize) -> usize {
    let vs: Vec<Vertex> = g.vertices().collect();
    let n = vs.len();
    assert!(n <= 16);
    let mut total = 0;
    for mask in 1u32..(1 << n) {
        let k = mask.count_ones() as usize;
        if !(3..=lmax).contains(&k) {
            continue;
        }
        let sub: Vec<Vertex> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| vs[i])
            .collect();
        total += hamiltonian_cycles(g, &sub);
    }
    total
}

fn hamiltonian_cycles(g: &PlaneGraph, sub: &[Vertex]) -> usize {
    fn go(g: &PlaneGraph, sub: &[Vertex], path: &mut Vec<Vertex>, count: &mut usize) {
        if path.len() == sub.len() {
            if g.has_edge(path[0], *path.last().unwrap()) {
                *count += 1;
            }
            return;
        }
        for &w in sub {
            if !path.contains(&w) && g.has_edge(*path.last().unwrap(), w) {
                path.push(w);
                go(g, sub, path, count);
                path.pop();
            }
        }
    }
    let mut count = 0;
    go(g, sub, &mut vec![sub[0]], &mut count);
    // each cycle is traced in both directions
    count / 2
}

#[test]
fn cycle_counts() {
    assert_eq!(cycle_lists(&cycle(6), 12).len(), 1);
    assert_eq!(cycle_lists(&cycle(3), 3).len(), 1);
    assert_eq!(cycle_lists(&cycle(13), 12).len(), 0);
    for g in [g1(), g2(), claw9()] {
        assert_eq!(cycle_lists(&g, 12).len(), brute_force_cycle_count(&g, 12));
        assert_eq!(cycle_lists(&g, 7).len(), brute_force_cycle_count(&g, 7));
    }
}

#[test]
fn g1_cycles() {
    let lengths: Vec<usize> = cycle_lists(&g1(), 12).iter().map(Vec::len).collect();
    assert_eq!(lengths, vec![3, 6, 7, 9, 10, 12]);
}

#[test]
fn cycles_are_canonical() {
    for c in cycle_lists(&g2(), 12) {
        assert_eq!(c[0], *c.iter().min().unwrap());
        assert!(c[1] < *c.last().unwrap());
    }
}

#[test]
fn triangularity() {
    let t = triangular_status(&cycle(3));
    assert_eq!(t.edges.len(), 3);
    assert_eq!(t.vertices.len(), 3);
    assert!(triangular_status(&cycle(6)).edges.is_empty());
    let t = triangular_status(&g1());
    assert_eq!(t.edges, BTreeSet::from([(1, 2), (1, 13), (2, 13)]));
    assert_eq!(t.vertices, BTreeSet::from([1, 2, 13]));
    assert_eq!(t.triangles, vec![[1, 2, 13]]);
}

#[test]
fn ext_triangular_cycles() {
    let g = g1();
    let c = g.sides_of_cycle(&[13, 2, 3, 4, 5, 6]).unwrap();
    assert_eq!(is_ext_triangular(&g, &c), Some([1, 2, 13]));
    let c7 = cycle(7);
    let c = c7.sides_of_cycle(&[1, 2, 3, 4, 5, 6, 7]).unwrap();
    assert_eq!(is_ext_triangular(&c7, &c), None);
    let g = g2();
    let c = g.sides_of_cycle(&[13, 14, 15]).unwrap();
    assert_eq!(is_ext_triangular(&g, &c), None);
}

#[test]
fn class_membership() {
    assert!(matches!(
        class_violation(&cycle(4)),
        Some(ClassViolation::FourCycle(_))
    ));
    assert!(matches!(
        class_violation(&cycle(5)),
        Some(ClassViolation::FiveCycle(_))
    ));
    assert!(in_class(&g1()));
    assert!(in_class(&g2()));
    assert!(in_class(&cycle(6)));
    assert!(in_class(&cycle(3)));
    assert_eq!(
        class_violation(&cycle(4)).unwrap().to_string(),
        "4-cycle [1 2 3 4]"
    );
}

fn bad_names(parts: &[BadPartition]) -> Vec<String> {
    parts
        .iter()
        .map(|p| format!("{} {:?}", p.kind, p.cells))
        .collect()
}

#[test]
fn claw_on_nine_cycle() {
    let g = claw9();
    let d = g.sides_of_cycle(&g.boundary_cycle().unwrap()).unwrap();
    let claws = find_claws(&g, &d);
    assert_eq!(bad_names(&claws), vec!["claw [3, 6, 6]"]);
    assert_eq!(claws[0].attachment, vec![(1, 10), (2, 10), (6, 10)]);
    assert_eq!(
        claws[0].to_string(),
        "claw cycle=[1 2 3 4 5 6 7 8 9] cells=(3,6,6)"
    );
    assert!(find_biclaws(&g, &d).is_empty());
    assert!(find_triclaws(&g, &d).is_empty());
    assert!(find_combclaws(&g, &d).is_empty());
    assert!(find_chords(&g, &d).is_empty());
}

#[test]
fn claw_on_g1_boundary() {
    let g = g1();
    let d = g.sides_of_cycle(&g.boundary_cycle().unwrap()).unwrap();
    assert_eq!(bad_names(&find_claws(&g, &d)), vec!["claw [3, 6, 9]"]);
}

#[test]
fn bare_cycle_has_no_structures() {
    let g = cycle(6);
    let d = g.sides_of_cycle(&[1, 2, 3, 4, 5, 6]).unwrap();
    assert!(find_chords(&g, &d).is_empty());
    assert!(find_claws(&g, &d).is_empty());
    assert!(find_biclaws(&g, &d).is_empty());
    assert!(find_triclaws(&g, &d).is_empty());
    assert!(find_combclaws(&g, &d).is_empty());
}

#[test]
fn cells_sum_to_cycle_plus_twice_the_attachment() {
    for g in [g1(), g2(), claw9(), m_face(), tetrad()] {
        for c in enumerate_cycles(&g, 11) {
            if let CycleClass::Bad(parts) = classify_cycle(&g, &c) {
                for p in parts {
                    let sum: usize = p.cells.iter().sum();
                    assert_eq!(sum, c.len() + 2 * p.attachment.len(), "{p}");
                    assert!(p.cells.iter().all(|&x| x >= 3 && x != 4 && x != 5));
                }
            }
        }
    }
}

#[test]
fn classification() {
    let g = cycle(6);
    let c = g.sides_of_cycle(&[1, 2, 3, 4, 5, 6]).unwrap();
    assert_eq!(classify_cycle(&g, &c), CycleClass::Good);
    let g = claw9();
    let d = g.sides_of_cycle(&g.boundary_cycle().unwrap()).unwrap();
    assert!(matches!(classify_cycle(&g, &d), CycleClass::Bad(_)));
    let g = g1();
    let d = g.sides_of_cycle(&g.boundary_cycle().unwrap()).unwrap();
    assert_eq!(classify_cycle(&g, &d), CycleClass::Long);
}

#[test]
fn bad_cycle_census_on_claw9() {
    let r = bad_cycle_census(&claw9()).unwrap();
    assert_eq!(r.bad_cycles.len(), 1);
    assert_eq!(r.bad_cycles[0].0.len(), 9);
    assert!(r.is_clean());
    assert!(bad_partition_allowed(9, PartitionKind::Claw, &[3, 6, 6]));
}

#[test]
fn bad_cycle_census_on_clean_and_invalid_inputs() {
    assert!(bad_cycle_census(&cycle(6)).unwrap().bad_cycles.is_empty());
    assert!(bad_cycle_census(&cycle(4)).is_err());
}

#[test]
fn allowed_tuples() {
    use PartitionKind::*;
    let yes = [
        (9, Claw, vec![3, 6, 6]),
        (9, Triclaw, vec![3, 6, 6, 6]),
        (11, Claw, vec![3, 6, 8]),
        (11, Biclaw, vec![3, 6, 6, 6]),
        (11, Biclaw, vec![6, 3, 6, 6]),
        (11, Triclaw, vec![3, 6, 6, 8]),
        (11, Combclaw, vec![3, 6, 6, 6, 6]),
    ];
    for (len, kind, cells) in yes {
        assert!(bad_partition_allowed(len, kind, &cells));
    }
    assert!(!bad_partition_allowed(10, Claw, &[3, 6, 7]));
    assert!(!bad_partition_allowed(11, Claw, &[3, 3, 11]));
    assert!(!bad_partition_allowed(9, Chord, &[3, 8]));
}

#[test]
fn splitting_paths_of_g1() {
    let g = g1();
    let d = g.sides_of_cycle(&g.boundary_cycle().unwrap()).unwrap();
    assert_eq!(
        find_splitting_paths(&g, &d, 12),
        vec![vec![1, 13, 2], vec![1, 13, 6], vec![2, 13, 6]]
    );
    let v = splitting_path_violations(&g, &d);
    let paths: Vec<Vec<Vertex>> = v.iter().map(|s| s.path.clone()).collect();
    assert_eq!(paths, vec![vec![1, 13, 6], vec![2, 13, 6]]);
    assert_eq!(v[0].parts, (7, 9));
}

#[test]
fn splitting_paths_of_g2() {
    let g = g2();
    let d = g.sides_of_cycle(&g.boundary_cycle().unwrap()).unwrap();
    let paths = find_splitting_paths(&g, &d, 3);
    assert_eq!(
        paths,
        vec![vec![1, 13, 14, 4], vec![1, 13, 15, 7], vec![4, 14, 15, 7]]
    );
    assert!(splitting_path_violations(&g, &d)
        .iter()
        .any(|s| s.path.len() == 4));
}

#[test]
fn bare_cycle_has_no_splitting_paths() {
    let g = cycle(6);
    let d = g.sides_of_cycle(&[1, 2, 3, 4, 5, 6]).unwrap();
    assert!(find_splitting_paths(&g, &d, 12).is_empty());
}

#[test]
fn m_face_detected() {
    let g = m_face();
    let found = find_m_faces(&g);
    assert_eq!(found.len(), 1);
    let l = found[0].labels;
    assert_eq!((l[3], l[7]), (4, 8));
    assert!(find_mm_faces(&g).is_empty());
}

#[test]
fn mm_face_detected() {
    let g = mm_face();
    let found = find_mm_faces(&g);
    assert_eq!(found.len(), 1);
    let l = found[0].labels;
    assert_eq!(BTreeSet::from([l[0], l[7]]), BTreeSet::from([1, 8]));
    assert!(find_m_faces(&g).is_empty());
}

#[test]
fn weak_tetrad_in_both_directions() {
    let g = tetrad();
    let found = find_weak_tetrads(&g);
    assert_eq!(found.len(), 2);
    let paths: BTreeSet<[Vertex; 5]> = found.iter().map(|t| t.path).collect();
    assert_eq!(paths, BTreeSet::from([[1, 2, 3, 4, 5], [4, 3, 2, 1, 9]]));
    let sets: BTreeSet<_> = found.iter().map(WeakTetrad::vertex_set).collect();
    assert_eq!(sets.len(), 2);
    let t = found.iter().find(|t| t.path[0] == 1).unwrap();
    assert_eq!(t.v0, 9);
}

#[test]
fn bare_cycle_has_no_face_configurations() {
    let g = cycle(6);
    assert!(find_weak_tetrads(&g).is_empty());
    assert!(find_m_faces(&g).is_empty());
    assert!(find_mm_faces(&g).is_empty());
    assert!(find_six_three_edges(&g).is_empty());
}

#[test]
fn roles_on_the_tetrad_face() {
    let g = tetrad();
    let f = g
        .faces()
        .iter()
        .position(|w| w.size() == 9 && w.contains(1) && w.contains(5))
        .unwrap();
    let roles = face_roles(&g, f);
    let bad: BTreeSet<Vertex> = roles.iter().filter(|r| r.bad).map(|r| r.vertex).collect();
    assert_eq!(bad, BTreeSet::from([1, 2, 3, 4]));
    assert!(roles.iter().all(|r| r.role == Role::None));
}

#[test]
fn heavy_and_light_roles() {
    // vertex 4 of the M-face has degree 4 with both flanks triangular
    let g = m_face();
    let f = g
        .faces()
        .iter()
        .position(|w| w.size() == 8 && w.contains(4) && w.contains(8))
        .unwrap();
    let role = face_roles(&g, f)
        .into_iter()
        .find(|r| r.vertex == 4)
        .unwrap();
    assert_eq!(role.role, Role::MLight);
    assert!(role.role.is_light());
    assert!(!role.bad);
}
