//! Discharging in exact thirds.
//!
//! Every charge is stored as an integer number of thirds. Vertices start at
//! `d(v) - 4`, the outer face at `d(f0) + 4` and every other face at
//! `d(f) - 4`; Euler's formula makes the total zero. Six local rules then
//! move charge between incident vertices and faces, counted once per
//! boundary incidence:
//!
//! | rule | transfer |
//! |------|----------|
//! | R1 | internal 3-face receives 1/3 from each incident vertex |
//! | R2 | internal 6+-face sends 2/3 to each incident 2-vertex |
//! | R3 | internal 6+-face sends 2/3 to each internal triangular 3-vertex, 1/3 to each other internal 3-vertex |
//! | R4 | internal 6+-face sends 1/3 to each f-light vertex, receives 1/3 from each f-heavy vertex |
//! | R5 | internal 6+-face receives 1/3 from each external 4+-vertex |
//! | R6 | outer face sends 4/3 to each incident vertex |

use std::collections::BTreeMap;
use std::fmt;

use crate::plane_graph::{PlaneGraph, Vertex};
use crate::structures::{
    find_m_faces, find_mm_faces, find_six_three_edges, find_weak_tetrads, role_at_corner,
    triangular_status, Role,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vertex(Vertex),
    Face(usize),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{v}"),
            Element::Face(i) => write!(f, "f{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Initial,
    Final,
}

/// Charges in thirds, keyed by element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeLedger {
    pub phase: Phase,
    pub charges: BTreeMap<Element, i64>,
}

impl ChargeLedger {
    pub fn total(&self) -> i64 {
        self.charges.values().sum()
    }

    pub fn get(&self, e: Element) -> i64 {
        self.charges.get(&e).copied().unwrap_or(0)
    }
}

pub fn initial_charges(g: &PlaneGraph) -> ChargeLedger {
    let mut charges = BTreeMap::new();
    for v in g.vertices() {
        charges.insert(Element::Vertex(v), 3 * (g.degree(v) as i64 - 4));
    }
    for (i, f) in g.faces().iter().enumerate() {
        let d = f.size() as i64;
        let c = if f.is_outer { d + 4 } else { d - 4 };
        charges.insert(Element::Face(i), 3 * c);
    }
    ChargeLedger {
        phase: Phase::Initial,
        charges,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One movement of charge; `amount` is in thirds and always positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransferRecord {
    pub rule: Rule,
    pub from: Element,
    pub to: Element,
    pub amount: i64,
}

/// All transfers the rules prescribe for `g`.
pub fn transfers(g: &PlaneGraph) -> Vec<TransferRecord> {
    let tri = triangular_status(g);
    let mut out = Vec::new();
    for (i, f) in g.faces().iter().enumerate() {
        let face = Element::Face(i);
        let mut push = |rule, from, to, amount| {
            out.push(TransferRecord {
                rule,
                from,
                to,
                amount,
            })
        };
        if f.is_outer {
            for (_, v, _) in f.corners() {
                push(Rule::R6, face, Element::Vertex(v), 4);
            }
            continue;
        }
        let d = f.size();
        if d == 3 {
            for (_, v, _) in f.corners() {
                push(Rule::R1, Element::Vertex(v), face, 1);
            }
            continue;
        }
        if d < 6 {
            continue;
        }
        for (p, v, n) in f.corners() {
            let vert = Element::Vertex(v);
            let deg = g.degree(v);
            let external = g.is_external(v);
            if deg == 2 {
                push(Rule::R2, face, vert, 2);
            }
            if !external && deg == 3 {
                push(Rule::R3, face, vert, if tri.vertex(v) { 2 } else { 1 });
            }
            match role_at_corner(g, &tri, p, v, n) {
                Role::MLight | Role::VLight => push(Rule::R4, face, vert, 1),
                Role::Heavy => push(Rule::R4, vert, face, 1),
                Role::None => {}
            }
            if external && deg >= 4 {
                push(Rule::R5, vert, face, 1);
            }
        }
    }
    out
}

/// Replays transfers against a ledger.
pub fn replay(start: &ChargeLedger, moves: &[TransferRecord]) -> ChargeLedger {
    let mut charges = start.charges.clone();
    for t in moves {
        *charges.entry(t.from).or_insert(0) -= t.amount;
        *charges.entry(t.to).or_insert(0) += t.amount;
    }
    ChargeLedger {
        phase: Phase::Final,
        charges,
    }
}

pub fn apply_rules(g: &PlaneGraph, initial: &ChargeLedger) -> (ChargeLedger, Vec<TransferRecord>) {
    let moves = transfers(g);
    (replay(initial, &moves), moves)
}

/// An element ending with negative charge and the local structure that
/// accounts for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Negative {
    pub element: Element,
    pub charge: i64,
    pub reasons: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DischargeReport {
    pub initial: ChargeLedger,
    pub final_charges: ChargeLedger,
    pub transfers: Vec<TransferRecord>,
    pub sum_ok: bool,
    pub outer_final: i64,
    pub negatives: Vec<Negative>,
}

pub fn audit(g: &PlaneGraph) -> DischargeReport {
    let initial = initial_charges(g);
    let (final_charges, moves) = apply_rules(g, &initial);
    let sum_ok = initial.total() == 0 && final_charges.total() == 0;
    let outer_final = final_charges.get(Element::Face(g.outer_face_index()));
    let negatives = final_charges
        .charges
        .iter()
        .filter(|(e, &c)| c < 0 && **e != Element::Face(g.outer_face_index()))
        .map(|(&element, &charge)| Negative {
            element,
            charge,
            reasons: explain(g, element),
        })
        .collect();
    DischargeReport {
        initial,
        final_charges,
        transfers: moves,
        sum_ok,
        outer_final,
        negatives,
    }
}

fn explain(g: &PlaneGraph, e: Element) -> Vec<String> {
    let mut out = Vec::new();
    match e {
        Element::Vertex(v) => {
            let d = g.degree(v);
            if !g.is_external(v) && d <= 2 {
                out.push(format!("internal vertex of degree {d}"));
            }
            if g.faces()
                .iter()
                .any(|f| f.darts.iter().filter(|x| x.0 == v).count() > 1)
            {
                out.push("cut vertex".into());
            }
            for f in g.faces().iter().filter(|f| f.contains(v)) {
                let s = f.size();
                if s == 4 || s == 5 {
                    out.push(format!("incident with a {s}-face"));
                }
                if s == 3 && d == 2 {
                    out.push("2-vertex on a triangle".into());
                }
            }
        }
        Element::Face(i) => {
            let f = &g.faces()[i];
            let s = f.size();
            if s == 4 || s == 5 {
                out.push(format!("{s}-face"));
            }
            if !f.is_cycle() {
                out.push("boundary walk repeats a vertex".into());
            }
            let twos = f.corners().filter(|c| g.degree(c.1) == 2).count();
            if twos > 1 {
                out.push(format!("face incident with {twos} two-vertices"));
            }
            if find_six_three_edges(g).iter().any(|x| x.six_face == i) {
                out.push("6-face sharing an edge of internal 3-vertices with a 3-face".into());
            }
            if find_weak_tetrads(g).iter().any(|t| t.face == i) {
                out.push("weak tetrad".into());
            }
            if find_m_faces(g).iter().any(|m| m.face == i) {
                out.push("M-face".into());
            }
            if find_mm_faces(g).iter().any(|m| m.face == i) {
                out.push("MM-face".into());
            }
        }
    }
    out
}

fn thirds(x: i64) -> String {
    format!("{x}/3")
}

impl fmt::Display for DischargeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, init) in &self.initial.charges {
            let (kind, id) = match e {
                Element::Vertex(v) => ("v", *v),
                Element::Face(i) => ("f", *i),
            };
            writeln!(
                f,
                "element kind={kind} id={id} init={} final={}",
                thirds(*init),
                thirds(self.final_charges.get(*e))
            )?;
        }
        writeln!(f, "sum_ok={}", self.sum_ok)?;
        writeln!(f, "outer_final={}", thirds(self.outer_final))?;
        let neg: Vec<String> = self
            .negatives
            .iter()
            .map(|n| format!("{}:{}", n.element, thirds(n.charge)))
            .collect();
        writeln!(f, "negatives=[{}]", neg.join(" "))?;
        for n in &self.negatives {
            let why = if n.reasons.is_empty() {
                "none".to_string()
            } else {
                n.reasons.join("; ")
            };
            writeln!(
                f,
                "negative {} final={} reasons: {why}",
                n.element,
                thirds(n.charge)
            )?;
        }
        Ok(())
    }
}
