//! Precoloring extension with three colors.
//!
//! [`extend_backtrack`] is an exhaustive search and serves as the oracle.
//! [`color_proof_guided`] shrinks the instance through local reductions,
//! colors the smallest remaining graph and lifts the coloring back.

mod reduce;

pub use reduce::{
    candidates, color_proof_guided, find_reduction, lift_coloring, safety_check, ColorStats,
    Identification, LiftData, Reduced, ReductionKind, ReductionStep, SafetyViolation,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::plane_graph::{PlaneGraph, Vertex};
use crate::structures::{classify_cycle, in_class, CycleClass};

pub type Color = u8;

pub const COLORS: [Color; 3] = [1, 2, 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColorError {
    #[error("precoloring is improper on edge {0}-{1}")]
    Improper(Vertex, Vertex),
    #[error("precoloring names unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("color {0} outside 1..=3")]
    BadColor(Color),
    #[error("precolored vertex {0} is not on the outer boundary")]
    OffBoundary(Vertex),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("precoloring does not extend")]
    Unextendable,
    #[error("THEOREM-VIOLATION: {0}")]
    Refuted(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("bad coloring text on line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A partial map from vertices to colors `1..=3`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Coloring(BTreeMap<Vertex, Color>);

impl Coloring {
    pub fn new() -> Self {
        Coloring::default()
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.0.get(&v).copied()
    }

    pub fn set(&mut self, v: Vertex, c: Color) {
        self.0.insert(v, c);
    }

    pub fn remove(&mut self, v: Vertex) -> Option<Color> {
        self.0.remove(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Color)> + '_ {
        self.0.iter().map(|(&v, &c)| (v, c))
    }

    pub fn domain(&self) -> BTreeSet<Vertex> {
        self.0.keys().copied().collect()
    }

    /// The restriction to the vertices for which `keep` holds.
    pub fn restricted(&self, keep: impl Fn(Vertex) -> bool) -> Coloring {
        Coloring(
            self.0
                .iter()
                .filter(|(&v, _)| keep(v))
                .map(|(&v, &c)| (v, c))
                .collect(),
        )
    }

    /// Whether every vertex of `g` is colored.
    pub fn is_total(&self, g: &PlaneGraph) -> bool {
        g.vertices().all(|v| self.0.contains_key(&v))
    }

    /// The first monochromatic edge with both ends colored, if any.
    pub fn conflict(&self, g: &PlaneGraph) -> Option<(Vertex, Vertex)> {
        g.edges()
            .find(|&(u, v)| matches!((self.get(u), self.get(v)), (Some(a), Some(b)) if a == b))
    }

    pub fn is_proper(&self, g: &PlaneGraph) -> bool {
        self.conflict(g).is_none()
    }

    /// Whether `self` agrees with `other` wherever `other` is defined.
    pub fn extends(&self, other: &Coloring) -> bool {
        other.iter().all(|(v, c)| self.get(v) == Some(c))
    }
}

impl FromIterator<(Vertex, Color)> for Coloring {
    fn from_iter<I: IntoIterator<Item = (Vertex, Color)>>(iter: I) -> Self {
        Coloring(iter.into_iter().collect())
    }
}

/// One `v=color` line per vertex.
impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, c) in self.iter() {
            writeln!(f, "{v}={c}")?;
        }
        Ok(())
    }
}

impl FromStr for Coloring {
    type Err = ColorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Coloring::new();
        for (i, raw) in s.lines().enumerate() {
            let line = i + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let bad = |message: &str| ColorError::Parse {
                line,
                message: message.to_string(),
            };
            let (v, c) = text
                .split_once('=')
                .ok_or_else(|| bad("expected `v=color`"))?;
            let v: Vertex = v.trim().parse().map_err(|_| bad("bad vertex id"))?;
            let c: Color = c.trim().parse().map_err(|_| bad("bad color"))?;
            if !COLORS.contains(&c) {
                return Err(bad("color outside 1..=3"));
            }
            out.set(v, c);
        }
        Ok(out)
    }
}

/// Checks that `phi` is a proper partial coloring of `g` with legal colors.
pub fn validate_precoloring(g: &PlaneGraph, phi: &Coloring) -> Result<(), ColorError> {
    for (v, c) in phi.iter() {
        if !g.contains(v) {
            return Err(ColorError::UnknownVertex(v));
        }
        if !COLORS.contains(&c) {
            return Err(ColorError::BadColor(c));
        }
    }
    match phi.conflict(g) {
        Some((u, v)) => Err(ColorError::Improper(u, v)),
        None => Ok(()),
    }
}

/// Smallest-last order: repeatedly remove a vertex of minimum remaining
/// degree (smallest id on ties), then reverse.
pub fn degeneracy_order(g: &PlaneGraph) -> Vec<Vertex> {
    let mut deg: BTreeMap<Vertex, usize> = g.vertices().map(|v| (v, g.degree(v))).collect();
    let mut removed = Vec::with_capacity(deg.len());
    while let Some((&v, _)) = deg.iter().min_by_key(|(&v, &d)| (d, v)) {
        deg.remove(&v);
        for w in g.neighbors(v) {
            if let Some(d) = deg.get_mut(w) {
                *d -= 1;
            }
        }
        removed.push(v);
    }
    removed.reverse();
    removed
}

/// Backtracking over the vertices of an adjacency map. At every step the
/// uncolored vertex with the fewest remaining colors is chosen, ties broken
/// by `rank`.
pub(crate) fn solve(
    adj: &BTreeMap<Vertex, Vec<Vertex>>,
    rank: &BTreeMap<Vertex, usize>,
    phi: &Coloring,
) -> Option<Coloring> {
    let ids: Vec<Vertex> = adj.keys().copied().collect();
    let index: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let nbrs: Vec<Vec<usize>> = ids
        .iter()
        .map(|v| adj[v].iter().map(|w| index[w]).collect())
        .collect();
    let ranks: Vec<usize> = ids
        .iter()
        .map(|v| rank.get(v).copied().unwrap_or(usize::MAX))
        .collect();
    let mut color = vec![0u8; ids.len()];
    for (v, c) in phi.iter() {
        color[index[&v]] = c;
    }
    fn allowed(nbrs: &[usize], color: &[u8]) -> u8 {
        let mut mask = 0b111u8;
        for &w in nbrs {
            if color[w] > 0 {
                mask &= !(1 << (color[w] - 1));
            }
        }
        mask
    }
    fn go(nbrs: &[Vec<usize>], ranks: &[usize], color: &mut [u8]) -> bool {
        let mut best: Option<(u32, usize, usize, u8)> = None;
        for i in 0..color.len() {
            if color[i] > 0 {
                continue;
            }
            let mask = allowed(&nbrs[i], color);
            let key = (mask.count_ones(), ranks[i], i, mask);
            if best.is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
                best = Some(key);
            }
            if mask == 0 {
                return false;
            }
        }
        let Some((_, _, i, mask)) = best else {
            return true;
        };
        for c in 1..=3u8 {
            if mask & (1 << (c - 1)) != 0 {
                color[i] = c;
                if go(nbrs, ranks, color) {
                    return true;
                }
            }
        }
        color[i] = 0;
        false
    }
    if !go(&nbrs, &ranks, &mut color) {
        return None;
    }
    Some(ids.iter().zip(color).map(|(&v, c)| (v, c)).collect())
}

/// A proper 3-coloring of `g` extending `phi`, or `None` when none exists.
pub fn extend_backtrack(g: &PlaneGraph, phi: &Coloring) -> Result<Option<Coloring>, ColorError> {
    validate_precoloring(g, phi)?;
    let rank: BTreeMap<Vertex, usize> = degeneracy_order(g)
        .into_iter()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let found = solve(g.rotations(), &rank, phi);
    if let Some(c) = &found {
        debug_assert!(c.is_proper(g) && c.is_total(g) && c.extends(phi));
    }
    Ok(found)
}

/// Proper colorings of the subgraph induced by `verts`, one per class under
/// permuting the colors: vertex `i` takes at most one more than the largest
/// color used before it.
pub fn boundary_colorings(g: &PlaneGraph, verts: &[Vertex]) -> Vec<Coloring> {
    fn go(g: &PlaneGraph, verts: &[Vertex], cur: &mut Vec<Color>, out: &mut Vec<Coloring>) {
        let i = cur.len();
        if i == verts.len() {
            out.push(verts.iter().copied().zip(cur.iter().copied()).collect());
            return;
        }
        let top = cur.iter().copied().max().unwrap_or(0);
        for c in 1..=(top + 1).min(3) {
            let clash = (0..i).any(|j| cur[j] == c && g.has_edge(verts[j], verts[i]));
            if !clash {
                cur.push(c);
                go(g, verts, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, verts, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryStatus {
    NotInClass,
    NotCycle,
    Good,
    Bad,
    Long,
}

impl fmt::Display for BoundaryStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryStatus::NotInClass => "not-in-class",
            BoundaryStatus::NotCycle => "not-a-cycle",
            BoundaryStatus::Good => "good",
            BoundaryStatus::Bad => "bad",
            BoundaryStatus::Long => "long",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionReport {
    pub status: BoundaryStatus,
    /// Boundary colorings tried; zero when the check is skipped.
    pub checked: usize,
    pub violations: Vec<Coloring>,
}

impl ExtensionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ExtensionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "boundary={}", self.status)?;
        writeln!(f, "checked={}", self.checked)?;
        writeln!(f, "violations={}", self.violations.len())?;
        for v in &self.violations {
            let list: Vec<String> = v.iter().map(|(v, c)| format!("{v}={c}")).collect();
            writeln!(f, "unextendable {}", list.join(" "))?;
        }
        Ok(())
    }
}

pub fn boundary_status(g: &PlaneGraph) -> BoundaryStatus {
    if !in_class(g) {
        return BoundaryStatus::NotInClass;
    }
    let Some(d) = g.boundary_cycle() else {
        return BoundaryStatus::NotCycle;
    };
    let c = g.sides_of_cycle(&d).expect("boundary is a cycle");
    match classify_cycle(g, &c) {
        CycleClass::Good => BoundaryStatus::Good,
        CycleClass::Bad(_) => BoundaryStatus::Bad,
        CycleClass::Long => BoundaryStatus::Long,
    }
}

/// When the outer boundary is good, tries every boundary coloring (up to
/// permuting colors) with the oracle and collects those that do not extend.
pub fn extension_check(g: &PlaneGraph) -> ExtensionReport {
    let status = boundary_status(g);
    if status != BoundaryStatus::Good {
        return ExtensionReport {
            status,
            checked: 0,
            violations: Vec::new(),
        };
    }
    let d = g.boundary_cycle().expect("good boundary is a cycle");
    let phis = boundary_colorings(g, &d);
    let violations: Vec<Coloring> = phis
        .par_iter()
        .filter(|phi| matches!(extend_backtrack(g, phi), Ok(None)))
        .cloned()
        .collect();
    ExtensionReport {
        status,
        checked: phis.len(),
        violations,
    }
}
