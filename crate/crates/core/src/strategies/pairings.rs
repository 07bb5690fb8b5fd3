use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::families::gadget_pairing;
use super::regular::{NodeStatus, RegularPlay};
use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::geography::NodeType;
use crate::hypergraph::{find_pairing_with, Board, Hypergraph, Pairing};
use crate::reduction::{Owner, ReductionOutput};

const SEARCH_BUDGET: u64 = 1_000_000;

fn instantiate(red: &ReductionOutput, node: usize, pairs: &[(&str, &str)]) -> Pairing {
    let g = red.gadget(node);
    Pairing::new(pairs.iter().map(|&(a, b)| (g.v(a), g.v(b)))).expect("template pairs are proper")
}

/// The pairing kept for gadget `node` once regular play has reached `play`,
/// avoiding the vertices in `avoid`.
pub fn end_pairing(red: &ReductionOutput, play: &RegularPlay, node: usize, avoid: VertexSet) -> Result<Pairing> {
    let g = red.gadget(node);
    let inside = avoid.intersection(g.vertices);
    match play.status(node) {
        NodeStatus::Active => Err(Error::Precondition(format!(
            "no end pairing for the active gadget {}",
            red.instance.node_name(node)
        ))),
        NodeStatus::Reentered => Ok(Pairing::default()),
        NodeStatus::Cleared if g.node_type != NodeType::M21 => Ok(Pairing::default()),
        NodeStatus::Cleared => {
            let entry = play.first_entry(node).expect("visited gadget was entered");
            let unused = if g.in_arcs[0] == entry { g.in_arcs[1] } else { g.in_arcs[0] };
            let slot = g.arc_slot(unused).unwrap();
            let (p, q) = red.junctions[unused];
            let z = g.v(if slot == 'a' { "za" } else { "zb" });
            let pair = match (inside.contains(p), inside.contains(q), inside.contains(z)) {
                (false, false, _) => (p, q),
                (true, false, false) => (q, z),
                (false, true, false) => (p, z),
                _ => {
                    return Err(Error::Uncovered(format!(
                        "visited {} gadget cannot avoid {} vertices",
                        red.instance.node_name(node),
                        inside.len()
                    )))
                }
            };
            Ok(Pairing::new([pair])?)
        }
        NodeStatus::Unvisited => match inside.len() {
            0 | 1 => {
                let role = inside.first().map(|v| g.role_of(v).unwrap());
                let pairs = gadget_pairing(g.node_type, role).ok_or_else(|| {
                    Error::Uncovered(format!("no listed pairing for {} avoiding {role:?}", g.node_type))
                })?;
                Ok(instantiate(red, node, &pairs))
            }
            _ => constrained_pairing(red, node, inside),
        },
    }
}

/// Searches for a pairing of the intact gadget that avoids `avoid` and uses
/// only clean pairs, or a pair joining the twin of an avoided input vertex
/// with an interior vertex.
fn constrained_pairing(red: &ReductionOutput, node: usize, avoid: VertexSet) -> Result<Pairing> {
    let g = red.gadget(node);
    let verts: Vec<usize> = g.vertices.iter().collect();
    let names: Vec<&str> = verts.iter().map(|&v| red.name(v)).collect();
    let edges: Vec<Vec<&str>> = g.edges.iter().map(|&i| red.board.edges()[i].iter().map(|&v| red.name(v)).collect()).collect();
    let sub = Hypergraph::new(names.iter().copied(), edges)?;
    let to_board = |i: usize| red.vertex(sub.name(i)).expect("gadget vertex");
    let forbidden: BTreeSet<usize> = avoid.iter().map(|v| sub.index_of(red.name(v)).unwrap()).collect();
    let interior = |v: usize| matches!(red.owners[v], Owner::Interior { .. });
    let input = |v: usize| matches!(red.owners[v], Owner::Junction { arc, .. } if g.in_arcs.contains(&arc));
    let allowed = |a: usize, b: usize| {
        let (a, b) = (to_board(a), to_board(b));
        if interior(a) && interior(b) || red.twin(a) == Some(b) {
            return true;
        }
        let mixed = |j: usize, i: usize| interior(i) && input(j) && red.twin(j).is_some_and(|t| avoid.contains(t));
        mixed(a, b) || mixed(b, a)
    };
    let found = find_pairing_with(&sub, SEARCH_BUDGET, &forbidden, allowed);
    let pairing = found.pairing.ok_or_else(|| {
        let roles: Vec<&str> = avoid.iter().map(|v| g.role_of(v).unwrap()).collect();
        Error::Uncovered(format!("{} gadget has no pairing avoiding {roles:?}", g.node_type))
    })?;
    Ok(Pairing::new(pairing.pairs().map(|(a, b)| (to_board(a), to_board(b))))?)
}

/// Joins `local` pairs with the end pairings of every gadget except
/// `exclude`, drops pairs touched by `breaker`, and rejects pairs touched by
/// `maker` or vertices paired twice.
pub fn assemble(
    red: &ReductionOutput,
    play: &RegularPlay,
    exclude: Option<usize>,
    avoid: &BTreeMap<usize, VertexSet>,
    local: &[(usize, usize)],
    maker: VertexSet,
    breaker: VertexSet,
) -> Result<Pairing> {
    let mut out = Pairing::new(local.iter().copied())?;
    for node in 0..red.gadgets.len() {
        if Some(node) == exclude {
            continue;
        }
        let part = end_pairing(red, play, node, avoid.get(&node).copied().unwrap_or_default())?;
        for (a, b) in part.pairs() {
            if out.contains_pair(a, b) {
                continue;
            }
            if out.uses(a) || out.uses(b) {
                return Err(Error::Uncovered(format!(
                    "pairing of {} reuses {} or {}",
                    red.instance.node_name(node),
                    red.name(a),
                    red.name(b)
                )));
            }
            out.insert(a, b);
        }
    }
    out.retain(|a, b| !breaker.contains(a) && !breaker.contains(b));
    if let Some((a, b)) = out.pairs().find(|&(a, b)| maker.contains(a) || maker.contains(b)) {
        return Err(Error::Uncovered(format!("pair {{{}, {}}} holds a Maker vertex", red.name(a), red.name(b))));
    }
    Ok(out)
}

/// Breaker's answer to a Maker deviation and the pairing held afterwards.
/// The pairing is checked against `board` before it is returned.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PunishmentPlan {
    pub reply: usize,
    #[serde(skip)]
    pub pairing: Pairing,
    /// Which branch of the case analysis applied.
    pub case: &'static str,
}

/// Answers Maker's pick `x` in place of the regular move at one of the three
/// non-greedy Maker decision points. `maker`/`breaker` are the picks before `x`.
pub fn punish(
    red: &ReductionOutput,
    board: &Board,
    play: &RegularPlay,
    maker: VertexSet,
    breaker: VertexSet,
    x: usize,
) -> Result<PunishmentPlan> {
    if maker.union(breaker).contains(x) {
        return Err(Error::Precondition(format!("{} is already picked", red.name(x))));
    }
    let node = play.active();
    let g = red.gadget(node);
    let r = |role: &str| g.v(role);
    let head = |slot: char| red.instance.arc(g.slot_arc(slot)).head;
    let mut avoid: BTreeMap<usize, VertexSet> = BTreeMap::new();
    let add = |avoid: &mut BTreeMap<usize, VertexSet>, n: usize, v: usize| {
        let e = avoid.entry(n).or_default();
        *e = e.with(v);
    };
    let outside = !g.vertices.contains(x);
    if outside {
        for u in red.gadgets_of(x) {
            add(&mut avoid, u, x);
        }
    }
    let in_set = |roles: &[&str]| roles.iter().any(|&s| r(s) == x);
    let candidates: Vec<(usize, Vec<(usize, usize)>, BTreeMap<usize, VertexSet>, &'static str)> = match (g.node_type, play.phase()) {
        (NodeType::M12, 4) => {
            if in_set(&["z1", "z2"]) {
                return Err(Error::Precondition("not a deviation".into()));
            } else if in_set(&["y3", "zb", "zc"]) {
                add(&mut avoid, head('c'), r("pc"));
                vec![(r("z1"), vec![(r("z2"), r("pc"))], avoid.clone(), "1a")]
            } else if in_set(&["pb", "qb"]) {
                add(&mut avoid, head('b'), x);
                add(&mut avoid, head('c'), r("pc"));
                vec![(r("z1"), vec![(r("z2"), r("pc"))], avoid.clone(), "1b")]
            } else if in_set(&["pc", "qc"]) {
                add(&mut avoid, head('c'), x);
                add(&mut avoid, head('b'), r("pb"));
                vec![(r("z2"), vec![(r("z1"), r("pb"))], avoid.clone(), "1b")]
            } else if outside {
                vec![(r("y3"), vec![(r("z1"), r("z2")), (r("pb"), r("qb")), (r("pc"), r("qc"))], avoid.clone(), "1c")]
            } else {
                return Err(Error::Precondition(format!("{} is not a legal deviation", red.name(x))));
            }
        }
        (NodeType::B12, 4) => {
            if x == r("x3") {
                return Err(Error::Precondition("not a deviation".into()));
            } else if x == r("y3") {
                add(&mut avoid, head('b'), r("pb"));
                vec![(r("y4"), vec![(r("pb"), r("x3")), (r("pc"), r("qc"))], avoid.clone(), "2a")]
            } else if x == r("y4") {
                add(&mut avoid, head('c'), r("pc"));
                vec![(r("y3"), vec![(r("pc"), r("x3")), (r("pb"), r("qb"))], avoid.clone(), "2a")]
            } else if in_set(&["pb", "qb"]) {
                add(&mut avoid, head('b'), x);
                vec![(r("x3"), vec![(r("y3"), r("y4"))], avoid.clone(), "2b")]
            } else if in_set(&["pc", "qc"]) {
                add(&mut avoid, head('c'), x);
                vec![(r("x3"), vec![(r("y3"), r("y4"))], avoid.clone(), "2b")]
            } else if x == r("y5") {
                vec![(r("x3"), vec![(r("y3"), r("y4"))], avoid.clone(), "2b")]
            } else if outside {
                vec![(r("x3"), vec![(r("y3"), r("y4"))], avoid.clone(), "2c")]
            } else {
                return Err(Error::Precondition(format!("{} is not a legal deviation", red.name(x))));
            }
        }
        (NodeType::B12, 8) => {
            let chosen = g.arc_slot(play.choice().expect("choice made before phase 8")).unwrap();
            let other = if chosen == 'b' { 'c' } else { 'b' };
            let (p, q) = red.junctions[g.slot_arc(chosen)];
            let (po, qo) = red.junctions[g.slot_arc(other)];
            if x == q {
                return Err(Error::Precondition("not a deviation".into()));
            } else if x == r("y5") {
                vec![(q, vec![(po, qo)], avoid.clone(), "3a")]
            } else if x == po || x == qo {
                add(&mut avoid, head(other), x);
                let alt = avoid.clone();
                add(&mut avoid, head(chosen), p);
                vec![(r("y5"), Vec::new(), avoid.clone(), "3b"), (q, Vec::new(), alt, "3b-q")]
            } else if outside {
                let alt = avoid.clone();
                add(&mut avoid, head(chosen), p);
                vec![(r("y5"), Vec::new(), avoid.clone(), "3c"), (q, Vec::new(), alt, "3c-q")]
            } else {
                return Err(Error::Precondition(format!("{} is not a legal deviation", red.name(x))));
            }
        }
        (t, phase) => {
            return Err(Error::Precondition(format!("{t} phase {phase} is not a punishable decision point")));
        }
    };
    let mut first_error = None;
    for (reply, local, avoid, case) in candidates {
        let (m, b) = (maker.with(x), breaker.with(reply));
        match assemble(red, play, Some(node), &avoid, &local, m, b) {
            Ok(pairing) if board.pairing_holds(&pairing, m, b) => return Ok(PunishmentPlan { reply, pairing, case }),
            Ok(pairing) => {
                let missed = board.uncovered_residue(&pairing, m, b).unwrap_or_default();
                let names: Vec<&str> = missed.iter().map(|v| red.name(v)).collect();
                first_error.get_or_insert(Error::Uncovered(format!("case {case} leaves {{{}}} unpaired", names.join(","))));
            }
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    Err(first_error.expect("at least one candidate"))
}

/// Outcome of [`punishment_sweep`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    /// Decision points reached over all exit choices.
    pub points: usize,
    /// Deviant picks answered.
    pub deviations: usize,
    pub failures: Vec<String>,
}

/// Runs regular play along every combination of exit choices and, at each
/// punishable decision point, answers every unpicked deviant vertex, checking
/// the resulting pairing on the real board.
pub fn punishment_sweep(red: &ReductionOutput) -> Result<SweepReport> {
    use super::regular::Expected;
    use crate::hypergraph::Player;

    let board = red.bitboard()?;
    let mut report = SweepReport::default();
    let mut stack = vec![(RegularPlay::new(red), VertexSet::EMPTY, VertexSet::EMPTY)];
    while let Some((play, maker, breaker)) = stack.pop() {
        let expected = play.expected(red)?;
        let t = red.gadget(play.active()).node_type;
        let punishable = matches!((t, play.phase()), (NodeType::M12, 4) | (NodeType::B12, 4) | (NodeType::B12, 8));
        if punishable {
            report.points += 1;
            let regular: Vec<usize> = match &expected {
                Expected::Move { vertex, .. } => vec![*vertex],
                Expected::Choice { options, .. } => options.iter().map(|&(v, _)| v).collect(),
                Expected::Ended(_) => Vec::new(),
            };
            for x in board.all().difference(maker.union(breaker)).iter() {
                if regular.contains(&x) {
                    continue;
                }
                report.deviations += 1;
                let at = format!("{} phase {} deviant {}", red.instance.node_name(play.active()), play.phase(), red.name(x));
                match punish(red, &board, &play, maker, breaker, x) {
                    Ok(plan) => {
                        let (m, b) = (maker.with(x), breaker.with(plan.reply));
                        if !board.pairing_holds(&plan.pairing, m, b) {
                            report.failures.push(format!("{at}: case {} pairing does not cover", plan.case));
                        }
                    }
                    Err(e) => report.failures.push(format!("{at}: {e}")),
                }
            }
        }
        match expected {
            Expected::Ended(_) => {}
            Expected::Move { mover, vertex, .. } => {
                let mut next = play.clone();
                next.play(red, vertex)?;
                let (m, b) = if mover == Player::Maker { (maker.with(vertex), breaker) } else { (maker, breaker.with(vertex)) };
                stack.push((next, m, b));
            }
            Expected::Choice { mover, options } => {
                for (v, _) in options {
                    let mut next = play.clone();
                    next.play(red, v)?;
                    let (m, b) = if mover == Player::Maker { (maker.with(v), breaker) } else { (maker, breaker.with(v)) };
                    stack.push((next, m, b));
                }
            }
        }
    }
    Ok(report)
}
