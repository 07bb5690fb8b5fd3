use serde::Serialize;

use crate::error::{Error, Result};
use crate::geography::NodeType;
use crate::hypergraph::Player;

/// How a move of a regular-play sequence is justified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    /// Maker move satisfying the greedy-pair conditions with the next reply.
    Greedy,
    /// Breaker reply to a size-1 updated edge.
    Forced,
    /// Maker move that is neither greedy nor a choice.
    Free,
    /// The mover picks the exit arc here.
    Choice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Step {
    pub mover: Player,
    pub role: &'static str,
    pub kind: StepKind,
}

const fn m(role: &'static str, kind: StepKind) -> Step {
    Step { mover: Player::Maker, role, kind }
}

const fn b(role: &'static str, kind: StepKind) -> Step {
    Step { mover: Player::Breaker, role, kind }
}

use StepKind::{Choice, Forced, Free, Greedy};

/// Index of the step at which the exit arc of a 2-out gadget is chosen.
pub fn choice_index(t: NodeType) -> Option<usize> {
    match t {
        NodeType::M12 => Some(4),
        NodeType::B12 => Some(5),
        _ => None,
    }
}

/// The role picked at the choice step to exit through `slot`.
pub fn choice_role(t: NodeType, slot: char) -> Option<&'static str> {
    match (t, slot) {
        (NodeType::M12, 'b') => Some("z1"),
        (NodeType::M12, 'c') => Some("z2"),
        (NodeType::B12, 'b') => Some("y4"),
        (NodeType::B12, 'c') => Some("y3"),
        _ => None,
    }
}

/// The regular-play sequence through a gadget, in role names. `entry` is the
/// slot letter of the arc the token arrived by (absent for the start node),
/// `choice` the slot letter of the exit arc for 2-out gadgets.
pub fn regular_sequence(t: NodeType, entry: Option<char>, choice: Option<char>) -> Result<Vec<Step>> {
    let bad = |what: &str| Err(Error::Precondition(format!("{t} sequence: {what}")));
    match (t.in_degree(), entry) {
        (0, None) | (1, Some('a')) | (2, Some('a' | 'b')) => {}
        (0, Some(_)) => return bad("the start gadget has no entry arc"),
        (_, None) => return bad("missing entry arc"),
        (_, Some(e)) => return bad(&format!("no input slot {e}")),
    }
    match (t.out_degree(), choice) {
        (1, None) | (2, Some('b' | 'c')) => {}
        (1, Some(_)) => return bad("a 1-out gadget takes no choice"),
        (_, None) => return bad("missing exit choice"),
        (_, Some(c)) => return bad(&format!("no output slot {c}")),
    }
    let seq = match t {
        NodeType::B01 => vec![m("pa", Greedy), b("y1", Forced), m("qa", Greedy), b("y2", Forced)],
        NodeType::B11 | NodeType::M11 => vec![
            m("x1", Greedy),
            b("y1", Forced),
            m("pb", Greedy),
            b("y2", Forced),
            m("qb", Greedy),
            b("y3", Forced),
        ],
        NodeType::B21 => vec![
            m("x1", Greedy),
            b("y1", Forced),
            m("pc", Greedy),
            b("y2", Forced),
            m("qc", Greedy),
            b("y3", Forced),
        ],
        NodeType::M21 => vec![
            m("x1", Greedy),
            b(if entry == Some('a') { "za" } else { "zb" }, Forced),
            m("pc", Greedy),
            b("y1", Forced),
            m("qc", Greedy),
            b("y2", Forced),
        ],
        NodeType::B12 => {
            let (first, second, p, q) = if choice == Some('b') {
                ("y4", "y3", "pb", "qb")
            } else {
                ("y3", "y4", "pc", "qc")
            };
            vec![
                m("x1", Greedy),
                b("y1", Forced),
                m("x2", Greedy),
                b("y2", Forced),
                m("x3", Free),
                b(first, Choice),
                m(p, Greedy),
                b(second, Forced),
                m(q, Free),
                b("y5", Forced),
            ]
        }
        NodeType::M12 => {
            let (z, other, p, q, exit) = if choice == Some('b') {
                ("z1", "z2", "pb", "qb", "zb")
            } else {
                ("z2", "z1", "pc", "qc", "zc")
            };
            vec![
                m("x1", Greedy),
                b("y1", Forced),
                m("x2", Greedy),
                b("y2", Forced),
                m(z, Choice),
                b(other, Forced),
                m(p, Greedy),
                b("y3", Forced),
                m(q, Greedy),
                b(exit, Forced),
            ]
        }
    };
    Ok(seq)
}
