use crate::error::{Error, Result};
use crate::geography::NodeType;

/// A gadget template. Junction roles are `p`/`q` followed by the slot letter
/// (`pa`, `qb`, ...); every other role is interior.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GadgetSpec {
    pub node_type: NodeType,
    pub interior: &'static [&'static str],
    pub edges: &'static [&'static [&'static str]],
}

const B01: GadgetSpec = GadgetSpec {
    node_type: NodeType::B01,
    interior: &["y1", "y2"],
    edges: &[&["pa", "y1"], &["qa", "y2"]],
};

const ONE_ONE_INTERIOR: &[&str] = &["x1", "y1", "y2", "y3"];
const ONE_ONE_EDGES: &[&[&str]] = &[&["pa", "qa", "x1", "y1"], &["pa", "qa", "pb", "y2"], &["x1", "pb", "qb", "y3"]];

const B21: GadgetSpec = GadgetSpec {
    node_type: NodeType::B21,
    interior: &["x1", "y1", "y2", "y3"],
    edges: &[
        &["pa", "qa", "x1", "y1"],
        &["pb", "qb", "x1", "y1"],
        &["pa", "qa", "pc", "y2"],
        &["pb", "qb", "pc", "y2"],
        &["x1", "pc", "qc", "y3"],
    ],
};

const M21: GadgetSpec = GadgetSpec {
    node_type: NodeType::M21,
    interior: &["x1", "y1", "y2", "za", "zb"],
    edges: &[
        &["pa", "qa", "x1", "za"],
        &["pb", "qb", "x1", "zb"],
        &["pa", "qa", "pc", "y1"],
        &["pb", "qb", "pc", "y1"],
        &["x1", "pc", "qc", "y2"],
    ],
};

const B12: GadgetSpec = GadgetSpec {
    node_type: NodeType::B12,
    interior: &["x1", "x2", "x3", "y1", "y2", "y3", "y4", "y5"],
    edges: &[
        &["pa", "qa", "x1", "y1"],
        &["pa", "qa", "x2", "y2"],
        &["x1", "x2", "y3", "y4"],
        &["x1", "x3", "pb", "y3"],
        &["x2", "x3", "pc", "y4"],
        &["pb", "qb", "x3", "y5"],
        &["pc", "qc", "x3", "y5"],
    ],
};

const M12: GadgetSpec = GadgetSpec {
    node_type: NodeType::M12,
    interior: &["x1", "x2", "y1", "y2", "y3", "z1", "z2", "zb", "zc"],
    edges: &[
        &["pa", "qa", "y1", "x1"],
        &["pa", "qa", "y2", "x2"],
        &["x1", "x2", "z1", "z2"],
        &["x1", "z1", "pb", "y3"],
        &["x2", "z2", "y3", "pc"],
        &["z1", "pb", "qb", "zb"],
        &["z2", "pc", "qc", "zc"],
    ],
};

pub fn gadget_spec(t: NodeType) -> GadgetSpec {
    match t {
        NodeType::B01 => B01,
        NodeType::B11 | NodeType::M11 => GadgetSpec { node_type: t, interior: ONE_ONE_INTERIOR, edges: ONE_ONE_EDGES },
        NodeType::B21 => B21,
        NodeType::M21 => M21,
        NodeType::B12 => B12,
        NodeType::M12 => M12,
    }
}

/// Slot letters of the in-arcs and out-arcs, in arc-label order.
pub fn slot_letters(t: NodeType) -> (&'static [char], &'static [char]) {
    match (t.in_degree(), t.out_degree()) {
        (0, 1) => (&[], &['a']),
        (1, 1) => (&['a'], &['b']),
        (2, 1) => (&['a', 'b'], &['c']),
        (1, 2) => (&['a'], &['b', 'c']),
        _ => unreachable!(),
    }
}

/// Splits a junction role into (side, slot), e.g. `"qb"` into `('q', 'b')`.
pub fn junction_role(role: &str) -> Option<(char, char)> {
    let mut chars = role.chars();
    match (chars.next(), chars.next(), chars.next()) {
        (Some(side @ ('p' | 'q')), Some(slot @ 'a'..='c'), None) => Some((side, slot)),
        _ => None,
    }
}

/// Whether `role` names a vertex of an input pair of a `t` gadget.
pub fn is_input_role(t: NodeType, role: &str) -> bool {
    junction_role(role).is_some_and(|(_, slot)| slot_letters(t).0.contains(&slot))
}

/// The other vertex of a junction role's pair (`pa` <-> `qa`).
pub fn twin_role(role: &str) -> Option<String> {
    junction_role(role).map(|(side, slot)| format!("{}{slot}", if side == 'p' { 'q' } else { 'p' }))
}

/// All roles of a gadget: junction roles for every slot, then interior roles.
pub fn gadget_roles(t: NodeType) -> Vec<String> {
    let (ins, outs) = slot_letters(t);
    let mut roles: Vec<String> = ins
        .iter()
        .chain(outs)
        .flat_map(|c| [format!("p{c}"), format!("q{c}")])
        .collect();
    roles.extend(gadget_spec(t).interior.iter().map(|r| r.to_string()));
    roles
}

/// Concrete vertex id of `role` in the gadget of `node` with the given arc
/// labels bound to its slots.
pub(crate) fn role_vertex(node: &str, role: &str, slots: &[(char, &str)]) -> String {
    match junction_role(role) {
        Some((side, slot)) => {
            let arc = slots.iter().find(|(c, _)| *c == slot).map(|(_, a)| *a).expect("slot bound");
            format!("{arc}.{side}")
        }
        None => format!("{node}.{role}"),
    }
}

/// The edges of the gadget of `node`, over concrete vertex ids. In-arcs and
/// out-arcs are bound to slots in the order given.
pub fn gadget_edges(t: NodeType, node: &str, in_arcs: &[&str], out_arcs: &[&str]) -> Result<Vec<Vec<String>>> {
    let (ins, outs) = slot_letters(t);
    if in_arcs.len() != ins.len() || out_arcs.len() != outs.len() {
        return Err(Error::Precondition(format!(
            "{t} gadget takes {} in-arcs and {} out-arcs, got {} and {}",
            ins.len(),
            outs.len(),
            in_arcs.len(),
            out_arcs.len()
        )));
    }
    let slots: Vec<(char, &str)> = ins
        .iter()
        .zip(in_arcs)
        .chain(outs.iter().zip(out_arcs))
        .map(|(&c, &a)| (c, a))
        .collect();
    Ok(gadget_spec(t)
        .edges
        .iter()
        .map(|e| e.iter().map(|r| role_vertex(node, r, &slots)).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn templates_have_expected_shape() {
        for t in NodeType::ALL {
            let spec = gadget_spec(t);
            let roles: BTreeSet<String> = gadget_roles(t).into_iter().collect();
            for e in spec.edges {
                assert_eq!(e.len(), if t == NodeType::B01 { 2 } else { 4 }, "{t}");
                for r in *e {
                    assert!(roles.contains(*r), "{t}: {r}");
                }
            }
            // Every role occurs in some edge.
            let used: BTreeSet<&str> = spec.edges.iter().flat_map(|e| e.iter().copied()).collect();
            assert_eq!(used.len(), roles.len(), "{t}");
        }
    }

    #[test]
    fn instantiation() {
        let b01 = gadget_edges(NodeType::B01, "s", &[], &["a"]).unwrap();
        assert_eq!(b01, [vec!["a.p", "s.y1"], vec!["a.q", "s.y2"]]);
        let m21 = gadget_edges(NodeType::M21, "v7", &["h", "i"], &["j"]).unwrap();
        let vs: BTreeSet<&String> = m21.iter().flatten().collect();
        assert_eq!((m21.len(), vs.len()), (5, 11));
        assert!(m21.contains(&vec!["i.p".into(), "i.q".into(), "v7.x1".into(), "v7.zb".into()]));
        assert!(gadget_edges(NodeType::B12, "v", &["a"], &["b"]).is_err());
    }

    #[test]
    fn role_helpers() {
        assert_eq!(junction_role("qb"), Some(('q', 'b')));
        assert_eq!(junction_role("zb"), None);
        assert_eq!(junction_role("pd"), None);
        assert!(is_input_role(NodeType::M21, "pb"));
        assert!(!is_input_role(NodeType::M12, "pb"));
        assert_eq!(twin_role("pc").as_deref(), Some("qc"));
    }
}
