use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use super::{GeoInstance, NodeType};
use crate::error::{Error, Result};

/// One failed condition of the restricted instance class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum Violation {
    /// Some nodes are not reachable from the start in the underlying
    /// undirected graph.
    NotWeaklyConnected { unreached: Vec<String> },
    /// An arc joins two nodes forced to the same color.
    NotBipartite { tail: String, head: String },
    /// The start node must have in-degree 0 and out-degree 1.
    StartDegree { node: String, in_degree: usize, out_degree: usize },
    /// Other nodes must have (in, out) degree (1,1), (2,1) or (1,2).
    NodeDegree { node: String, in_degree: usize, out_degree: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotWeaklyConnected { unreached } => {
                write!(f, "digraph is not weakly connected (unreached: {})", unreached.join(", "))
            }
            Violation::NotBipartite { tail, head } => {
                write!(f, "digraph is not bipartite (arc {tail} -> {head} closes an odd cycle)")
            }
            Violation::StartDegree { node, in_degree, out_degree } => write!(
                f,
                "start node {node} must have in-degree 0 and out-degree 1 (has {in_degree}, {out_degree})"
            ),
            Violation::NodeDegree { node, in_degree, out_degree } => write!(
                f,
                "node {node} has (in, out) degree ({in_degree}, {out_degree}); allowed: (1,1), (2,1), (1,2)"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Checks weak connectivity, bipartiteness and the degree profile, listing
/// every violation.
pub fn validate_geo(inst: &GeoInstance) -> ValidationReport {
    let mut violations = Vec::new();
    let (colors, conflict) = propagate_colors(inst);

    let unreached: Vec<String> = colors
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_none())
        .map(|(v, _)| inst.node_name(v).to_string())
        .collect();
    if !unreached.is_empty() {
        violations.push(Violation::NotWeaklyConnected { unreached });
    }
    if let Some(arc) = conflict {
        let a = inst.arc(arc);
        violations.push(Violation::NotBipartite {
            tail: inst.node_name(a.tail).to_string(),
            head: inst.node_name(a.head).to_string(),
        });
    }
    for v in 0..inst.nodes().len() {
        let (i, o) = (inst.in_arcs(v).len(), inst.out_arcs(v).len());
        let node = inst.node_name(v).to_string();
        if v == inst.start() {
            if (i, o) != (0, 1) {
                violations.push(Violation::StartDegree { node, in_degree: i, out_degree: o });
            }
        } else if !matches!((i, o), (1, 1) | (2, 1) | (1, 2)) {
            violations.push(Violation::NodeDegree { node, in_degree: i, out_degree: o });
        }
    }
    ValidationReport { valid: violations.is_empty(), violations }
}

/// BFS over the underlying undirected graph from the start node. Returns the
/// colors (None for unreached nodes) and the first conflicting arc, if any.
fn propagate_colors(inst: &GeoInstance) -> (Vec<Option<u8>>, Option<usize>) {
    let n = inst.nodes().len();
    let mut colors = vec![None; n];
    let mut conflict = None;
    let mut queue = VecDeque::from([inst.start()]);
    colors[inst.start()] = Some(0u8);
    while let Some(v) = queue.pop_front() {
        let c = colors[v].unwrap();
        for &arc in inst.out_arcs(v).iter().chain(inst.in_arcs(v)) {
            let a = inst.arc(arc);
            let w = if a.tail == v { a.head } else { a.tail };
            match colors[w] {
                None => {
                    colors[w] = Some(1 - c);
                    queue.push_back(w);
                }
                Some(cw) if cw == c => {
                    conflict = conflict.or(Some(arc));
                }
                Some(_) => {}
            }
        }
    }
    (colors, conflict)
}

/// The 2-coloring with the start node colored 0, indexed by node.
pub fn two_coloring(inst: &GeoInstance) -> Result<Vec<u8>> {
    let (colors, conflict) = propagate_colors(inst);
    if let Some(arc) = conflict {
        let a = inst.arc(arc);
        return Err(Error::InvalidInstance(format!(
            "not bipartite: arc {} -> {}",
            inst.node_name(a.tail),
            inst.node_name(a.head)
        )));
    }
    colors
        .iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| Error::InvalidInstance(format!("node {} is disconnected", inst.node_name(v)))))
        .collect()
}

/// Node types by color and degree, indexed by node.
pub fn classify_nodes(inst: &GeoInstance) -> Result<Vec<NodeType>> {
    let report = validate_geo(inst);
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidInstance(v.to_string()));
    }
    let colors = two_coloring(inst)?;
    Ok((0..inst.nodes().len())
        .map(|v| {
            let degrees = (inst.in_arcs(v).len(), inst.out_arcs(v).len());
            match (colors[v] == 0, degrees) {
                (true, (0, 1)) => NodeType::B01,
                (true, (1, 1)) => NodeType::B11,
                (true, (2, 1)) => NodeType::B21,
                (true, (1, 2)) => NodeType::B12,
                (false, (1, 1)) => NodeType::M11,
                (false, (2, 1)) => NodeType::M21,
                (false, (1, 2)) => NodeType::M12,
                _ => unreachable!("validated degree profile"),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g1() -> GeoInstance {
        GeoInstance::new(
            &["s", "v1", "v2"],
            &[("s", "v1", Some("a")), ("v1", "v2", Some("b")), ("v2", "v1", Some("c"))],
            "s",
        )
        .unwrap()
    }

    #[test]
    fn small_cycle_instance() {
        let g = g1();
        assert!(validate_geo(&g).valid);
        assert_eq!(two_coloring(&g).unwrap(), [0, 1, 0]);
        assert_eq!(classify_nodes(&g).unwrap(), [NodeType::B01, NodeType::M21, NodeType::B11]);
    }

    #[test]
    fn nine_node_instance_classes() {
        let arcs = [
            ("s", "v1", "a"),
            ("v1", "v2", "b"),
            ("v2", "v3", "c"),
            ("v2", "v4", "d"),
            ("v3", "v5", "e"),
            ("v3", "v6", "f"),
            ("v4", "v6", "g"),
            ("v5", "v7", "h"),
            ("v6", "v7", "i"),
            ("v7", "v8", "j"),
            ("v8", "v4", "k"),
        ];
        let arcs: Vec<_> = arcs.iter().map(|&(t, h, l)| (t, h, Some(l))).collect();
        let g = GeoInstance::new(&["s", "v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8"], &arcs, "s").unwrap();
        assert!(validate_geo(&g).valid);
        assert_eq!(two_coloring(&g).unwrap(), [0, 1, 0, 1, 1, 0, 0, 1, 0]);
        use NodeType::*;
        assert_eq!(classify_nodes(&g).unwrap(), [B01, M11, B12, M12, M21, B11, B21, M21, B11]);
    }

    #[test]
    fn lone_start_is_rejected() {
        let g = GeoInstance::new(&["s"], &[], "s").unwrap();
        let report = validate_geo(&g);
        assert!(!report.valid);
        assert_eq!(
            report.violations,
            [Violation::StartDegree { node: "s".into(), in_degree: 0, out_degree: 0 }]
        );
        assert!(classify_nodes(&g).is_err());
    }

    #[test]
    fn reports_every_violation() {
        // Triangle plus a stray node: odd cycle, disconnection, bad degrees.
        let g = GeoInstance::new(
            &["s", "u", "v", "w"],
            &[("s", "u", None), ("u", "v", None), ("v", "s", None)],
            "s",
        )
        .unwrap();
        let report = validate_geo(&g);
        assert!(!report.valid);
        let kinds: Vec<_> = report.violations.iter().map(std::mem::discriminant).collect();
        assert!(kinds.contains(&std::mem::discriminant(&Violation::NotWeaklyConnected { unreached: vec![] })));
        assert!(report.violations.iter().any(|v| matches!(v, Violation::NotBipartite { .. })));
        assert!(report.violations.iter().any(|v| matches!(v, Violation::StartDegree { .. })));
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NodeDegree { node, .. } if node == "w")));
        assert!(two_coloring(&g).is_err());
    }
}
