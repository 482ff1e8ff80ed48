use std::collections::BTreeMap;

use super::{trace_walks, Dart, GraphError, PlaneGraph, Result, Vertex};

/// Grows an embedded graph from a cycle by drawing paths inside faces.
///
/// Every operation inserts new edges into one face corner at each endpoint,
/// so the rotation system stays planar by construction.
#[derive(Debug, Clone)]
pub struct PlaneBuilder {
    rot: BTreeMap<Vertex, Vec<Vertex>>,
    outer: Dart,
}

impl PlaneBuilder {
    /// A bare cycle through `ids`; the outer face is the walk in the given
    /// order.
    pub fn cycle(ids: &[Vertex]) -> Self {
        assert!(ids.len() >= 3, "cycle needs 3 vertices");
        let n = ids.len();
        let rot = (0..n)
            .map(|i| (ids[i], vec![ids[(i + n - 1) % n], ids[(i + 1) % n]]))
            .collect();
        PlaneBuilder {
            rot,
            outer: (ids[0], ids[1]),
        }
    }

    pub fn from_graph(g: &PlaneGraph) -> Self {
        PlaneBuilder {
            rot: g.rotations().clone(),
            outer: g.outer_dart(),
        }
    }

    pub fn next_id(&self) -> Vertex {
        self.rot.keys().next_back().map_or(0, |v| v + 1)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.rot.contains_key(&v)
    }

    fn walks(&self) -> Vec<Vec<Dart>> {
        trace_walks(&self.rot)
    }

    fn is_outer(&self, walk: &[Dart]) -> bool {
        walk.contains(&self.outer)
    }

    /// A dart of the first inner face (in tracing order) containing every
    /// vertex of `vs`.
    pub fn inner_face_with(&self, vs: &[Vertex]) -> Option<Dart> {
        self.walks()
            .into_iter()
            .filter(|w| !self.is_outer(w))
            .find(|w| vs.iter().all(|v| w.iter().any(|d| d.0 == *v)))
            .map(|w| w[0])
    }

    /// Inner face walks, each as a dart list.
    pub fn inner_faces(&self) -> Vec<Vec<Dart>> {
        self.walks()
            .into_iter()
            .filter(|w| !self.is_outer(w))
            .collect()
    }

    fn walk_of(&self, dart: Dart) -> Result<Vec<Dart>> {
        self.walks()
            .into_iter()
            .find(|w| w.contains(&dart))
            .ok_or_else(|| GraphError::Structure(format!("no face holds dart {dart:?}")))
    }

    /// Inserts `w` into the rotation of `at` right after `prev`.
    fn insert_after(&mut self, at: Vertex, prev: Vertex, w: Vertex) {
        let n = self.rot.get_mut(&at).expect("known vertex");
        let i = n.iter().position(|&x| x == prev).expect("corner neighbour");
        n.insert(i + 1, w);
    }

    /// Draws a path `x, new[0], ..., new[k-1], y` inside the face holding
    /// `face`, using the first corner of `x` and of `y` on that face. With
    /// `new` empty a single edge `xy` is drawn.
    pub fn ear(&mut self, face: Dart, x: Vertex, y: Vertex, new: &[Vertex]) -> Result<()> {
        let walk = self.walk_of(face)?;
        let corner = |v: Vertex| {
            let n = walk.len();
            (0..n)
                .find(|&i| walk[i].1 == v)
                .map(|i| (walk[i].0, walk[(i + 1) % n].1))
        };
        let (Some(cx), Some(cy)) = (corner(x), corner(y)) else {
            return Err(GraphError::Structure(format!(
                "{x} and {y} are not on that face"
            )));
        };
        self.ear_at_corners((cx.0, x), (cy.0, y), new)
    }

    /// Like [`ear`](Self::ear) with explicit corners, each given by the dart
    /// entering the endpoint along the face.
    pub fn ear_at_corners(&mut self, into_x: Dart, into_y: Dart, new: &[Vertex]) -> Result<()> {
        let (x, y) = (into_x.1, into_y.1);
        if x == y {
            return Err(GraphError::Structure("ear endpoints coincide".into()));
        }
        if new.is_empty() && self.rot[&x].contains(&y) {
            return Err(GraphError::Structure(format!("{x}-{y} already an edge")));
        }
        if let Some(v) = new.iter().find(|v| self.rot.contains_key(v)) {
            return Err(GraphError::Structure(format!("vertex {v} already exists")));
        }
        let mut path = vec![x];
        path.extend_from_slice(new);
        path.push(y);
        self.insert_after(x, into_x.0, path[1]);
        self.insert_after(y, into_y.0, path[path.len() - 2]);
        for i in 1..path.len() - 1 {
            self.rot.insert(path[i], vec![path[i - 1], path[i + 1]]);
        }
        Ok(())
    }

    /// Attaches a new degree-1 vertex at the corner entered by `into_x`.
    pub fn pendant_at_corner(&mut self, into_x: Dart, new: Vertex) -> Result<()> {
        if self.rot.contains_key(&new) {
            return Err(GraphError::Structure(format!(
                "vertex {new} already exists"
            )));
        }
        self.insert_after(into_x.1, into_x.0, new);
        self.rot.insert(new, vec![into_x.1]);
        Ok(())
    }

    pub fn build(&self) -> Result<PlaneGraph> {
        PlaneGraph::from_rotations(self.rot.clone(), self.outer)
    }
}
