use std::collections::BTreeSet;

use serde::Serialize;

use super::{gadget_roles, gadget_spec, is_input_role, junction_role, slot_letters, twin_role};
use crate::bitset::VertexSet;
use crate::geography::NodeType;
use crate::hypergraph::{is_pairing, Board, Hypergraph, Pairing, Player};
use crate::strategies::{family, regular_sequence, StepKind, SUBSTITUTIONS};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimEntry {
    pub gadget: NodeType,
    pub claim: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub passed: bool,
    pub entries: Vec<ClaimEntry>,
}

impl ClaimReport {
    pub fn failures(&self) -> impl Iterator<Item = &ClaimEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }
}

/// A gadget on its own, over role names.
struct Standalone {
    t: NodeType,
    hyper: Hypergraph,
    board: Board,
}

impl Standalone {
    fn new(t: NodeType) -> Self {
        let edges: Vec<Vec<String>> =
            gadget_spec(t).edges.iter().map(|e| e.iter().map(|r| r.to_string()).collect()).collect();
        let hyper = Hypergraph::new(gadget_roles(t), edges).expect("templates are well formed");
        let board = Board::new(&hyper).expect("gadgets are small");
        Standalone { t, hyper, board }
    }

    fn v(&self, role: &str) -> usize {
        self.board.index_of(role).unwrap_or_else(|| panic!("{} has no role {role}", self.t))
    }

    fn set(&self, roles: &[&str]) -> VertexSet {
        roles.iter().map(|r| self.v(r)).collect()
    }

    fn names(&self, s: VertexSet) -> Vec<&str> {
        s.iter().map(|v| self.board.name(v)).collect()
    }
}

struct Recorder {
    entries: Vec<ClaimEntry>,
}

impl Recorder {
    fn push(&mut self, gadget: NodeType, claim: String, result: Result<(), String>) {
        let (passed, detail) = match result {
            Ok(()) => (true, None),
            Err(d) => (false, Some(d)),
        };
        self.entries.push(ClaimEntry { gadget, claim, passed, detail });
    }
}

fn is_clean(a: &str, b: &str) -> bool {
    match (junction_role(a), junction_role(b)) {
        (Some((_, x)), Some((_, y))) => x == y,
        (None, None) => true,
        _ => false,
    }
}

fn check_pairings(g: &Standalone, rec: &mut Recorder) {
    let t = g.t;
    for entry in family(t) {
        for &key in entry.keys {
            let label = match key {
                None => format!("pairing({t})"),
                Some(z) => format!("pairing({t}, {z})"),
            };
            let literal_unknown: Vec<&str> = entry
                .pairs
                .iter()
                .flat_map(|&(a, b)| [a, b])
                .filter(|r| g.board.index_of(r).is_none())
                .collect();
            let mut pairs: Vec<(&str, &str)> = entry.pairs.to_vec();
            if !literal_unknown.is_empty() {
                for (a, b) in pairs.iter_mut() {
                    for &(ty, from, to) in SUBSTITUTIONS {
                        if ty == t {
                            if *a == from {
                                *a = to;
                            }
                            if *b == from {
                                *b = to;
                            }
                        }
                    }
                }
                let note = format!(
                    "undefined role(s) {} read as substitutes",
                    literal_unknown.join(", ")
                );
                let resolved = pairs.iter().all(|(a, b)| g.board.index_of(a).is_some() && g.board.index_of(b).is_some());
                rec.push(t, format!("{label}: literal reading is not a pairing"), Ok(()));
                rec.push(
                    t,
                    format!("{label}: substitution resolves"),
                    if resolved { Ok(()) } else { Err(note) },
                );
                if !resolved {
                    continue;
                }
            }
            let pairing = Pairing::new(pairs.iter().map(|&(a, b)| (g.v(a), g.v(b)))).expect("distinct pair members");
            let check = is_pairing(&g.hyper, &pairing);
            rec.push(
                t,
                format!("{label}: valid"),
                if check.is_valid() { Ok(()) } else { Err(format!("{check:?}")) },
            );
            if let Some(z) = key {
                rec.push(
                    t,
                    format!("{label}: avoids {z}"),
                    if pairing.uses(g.v(z)) { Err(format!("uses {z}")) } else { Ok(()) },
                );
            }
            let mixed: Vec<(&str, &str)> = pairs.iter().copied().filter(|&(a, b)| !is_clean(a, b)).collect();
            let classification = match key {
                Some(z) if is_input_role(t, z) => {
                    let twin = twin_role(z).unwrap();
                    match mixed.as_slice() {
                        [(a, b)] if (*a == twin && junction_role(b).is_none())
                            || (*b == twin && junction_role(a).is_none()) =>
                        {
                            Ok(())
                        }
                        _ => Err(format!("expected one mixed pair with {twin}, got {mixed:?}")),
                    }
                }
                _ if mixed.is_empty() => Ok(()),
                _ => Err(format!("mixed pairs {mixed:?} in a clean pairing")),
            };
            rec.push(t, format!("{label}: clean/mixed classification"), classification);
        }
    }
}

fn check_input_pair_law(g: &Standalone, rec: &mut Recorder) {
    let t = g.t;
    for &slot in slot_letters(t).0 {
        let (p, q) = (g.v(&format!("p{slot}")), g.v(&format!("q{slot}")));
        let bad: Vec<Vec<&str>> = g
            .board
            .edges()
            .iter()
            .filter(|e| e.contains(p) != e.contains(q))
            .map(|&e| g.names(e))
            .collect();
        rec.push(
            t,
            format!("input pair {{p{slot}, q{slot}}} occurs only jointly"),
            if bad.is_empty() { Ok(()) } else { Err(format!("split by {bad:?}")) },
        );
    }
}

/// Expected residue after a completed sequence: unpicked vertices and live
/// residues, in roles.
fn expected_residue(t: NodeType, entry: Option<char>, choice: Option<char>) -> (Vec<&'static str>, Vec<Vec<&'static str>>) {
    match (t, entry, choice) {
        (NodeType::B21, Some('a'), _) => (vec!["pb", "qb"], vec![]),
        (NodeType::B21, _, _) => (vec!["pa", "qa"], vec![]),
        (NodeType::M21, Some('a'), _) => (vec!["pb", "qb", "zb"], vec![vec!["pb", "qb", "zb"]]),
        (NodeType::M21, _, _) => (vec!["pa", "qa", "za"], vec![vec!["pa", "qa", "za"]]),
        (NodeType::B12, _, Some('b')) => (vec!["pc", "qc"], vec![]),
        (NodeType::B12, _, _) => (vec!["pb", "qb"], vec![]),
        (NodeType::M12, _, Some('b')) => (vec!["pc", "qc", "zc"], vec![]),
        (NodeType::M12, _, _) => (vec!["pb", "qb", "zb"], vec![]),
        _ => (vec![], vec![]),
    }
}

fn residue(g: &Standalone, maker: VertexSet, breaker: VertexSet) -> (BTreeSet<String>, BTreeSet<BTreeSet<String>>) {
    let vertices = g.board.all().difference(maker.union(breaker));
    let edges = g
        .board
        .residuals(maker, breaker)
        .map(|r| g.names(r).into_iter().map(String::from).collect())
        .collect();
    (g.names(vertices).into_iter().map(String::from).collect(), edges)
}

fn to_sets(v: &[&str], e: &[Vec<&str>]) -> (BTreeSet<String>, BTreeSet<BTreeSet<String>>) {
    (
        v.iter().map(|s| s.to_string()).collect(),
        e.iter().map(|x| x.iter().map(|s| s.to_string()).collect()).collect(),
    )
}

fn check_sequence(g: &Standalone, entry: Option<char>, choice: Option<char>, rec: &mut Recorder) {
    let t = g.t;
    let label = format!(
        "sequence({t}{}{})",
        entry.map(|c| format!(", in {c}")).unwrap_or_default(),
        choice.map(|c| format!(", out {c}")).unwrap_or_default()
    );
    let seq = regular_sequence(t, entry, choice).expect("valid arguments");
    let mut maker = entry.map_or(VertexSet::EMPTY, |c| g.set(&[&format!("p{c}"), &format!("q{c}")]));
    let mut breaker = VertexSet::EMPTY;
    let mut failures = Vec::new();
    for (i, step) in seq.iter().enumerate() {
        let v = g.v(step.role);
        if maker.union(breaker).contains(v) {
            failures.push(format!("step {i}: {} already picked", step.role));
            break;
        }
        match (step.mover, step.kind) {
            (Player::Maker, StepKind::Greedy) => {
                let y = g.v(seq[i + 1].role);
                if !g.board.greedy_pair_holds(maker, breaker, v, y) {
                    failures.push(format!("step {i}: ({}, {}) is not greedy", step.role, seq[i + 1].role));
                }
            }
            (Player::Breaker, StepKind::Forced) => {
                if !g.board.threats(maker, breaker).contains(v) {
                    failures.push(format!("step {i}: {} is not forced", step.role));
                }
            }
            (Player::Breaker, StepKind::Choice) => {
                // Any other reply lets Maker set up two threats at once.
                let options = g.set(&["y3", "y4"]);
                let free = g.board.all().difference(maker.union(breaker)).difference(options);
                for u in free.iter() {
                    let b2 = breaker.with(u);
                    let left = g.board.all().difference(maker.union(b2));
                    if g.board.double_threat(maker, b2, left).is_none() {
                        failures.push(format!("step {i}: Breaker reply {} is not refuted", g.board.name(u)));
                    }
                }
            }
            _ => {}
        }
        match step.mover {
            Player::Maker => maker = maker.with(v),
            Player::Breaker => breaker = breaker.with(v),
        }
        if g.board.filled(maker, breaker) {
            failures.push(format!("step {i}: Maker filled an edge"));
        }
    }
    rec.push(
        t,
        format!("{label}: greedy and forced labels"),
        if failures.is_empty() { Ok(()) } else { Err(failures.join("; ")) },
    );

    let (ev, ee) = expected_residue(t, entry, choice);
    let want = to_sets(&ev, &ee);
    let got = residue(g, maker, breaker);
    rec.push(
        t,
        format!("{label}: residue"),
        if got == want { Ok(()) } else { Err(format!("got {got:?}, expected {want:?}")) },
    );

    // Re-entering a 2-in gadget through its unused input pair.
    if t.in_degree() == 2 {
        let other = if entry == Some('a') { 'b' } else { 'a' };
        let m2 = maker.union(g.set(&[&format!("p{other}"), &format!("q{other}")]));
        let want = if t == NodeType::M21 {
            let z = if other == 'a' { "za" } else { "zb" };
            to_sets(&[z], &[vec![z]])
        } else {
            to_sets(&[], &[])
        };
        let got = residue(g, m2, breaker);
        rec.push(
            t,
            format!("{label}: residue after re-entry via {other}"),
            if got == want { Ok(()) } else { Err(format!("got {got:?}, expected {want:?}")) },
        );
    }
}

/// Checks every gadget against the pairing lists, the input-pair law, the
/// greedy/forced labels of the sequences and their end residues.
pub fn check_gadget_claims() -> ClaimReport {
    let mut rec = Recorder { entries: Vec::new() };
    for t in NodeType::ALL {
        let g = Standalone::new(t);
        if t != NodeType::B01 {
            check_pairings(&g, &mut rec);
            check_input_pair_law(&g, &mut rec);
        }
        let entries: &[Option<char>] = match t.in_degree() {
            0 => &[None],
            1 => &[Some('a')],
            _ => &[Some('a'), Some('b')],
        };
        let choices: &[Option<char>] = if t.out_degree() == 2 { &[Some('b'), Some('c')] } else { &[None] };
        for &e in entries {
            for &c in choices {
                check_sequence(&g, e, c, &mut rec);
            }
        }
    }
    let passed = rec.entries.iter().all(|e| e.passed);
    ClaimReport { passed, entries: rec.entries }
}
