//! Compiler from validated Geography instances to positional-game boards:
//! one gadget per node, glued along junction pairs `{<arc>.p, <arc>.q}`.

mod claims;
mod gadgets;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::geography::{classify_nodes, GeoInstance, NodeType};
use crate::hypergraph::{uniformize_mb, Board, Hypergraph};

pub use claims::{check_gadget_claims, ClaimEntry, ClaimReport};
pub use gadgets::{gadget_edges, gadget_roles, gadget_spec, is_input_role, junction_role, slot_letters, twin_role, GadgetSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "rank4")]
    Rank4,
    #[serde(rename = "mbUniform")]
    MbUniform,
    #[serde(rename = "mmUniform")]
    MmUniform,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Rank4 => "rank4",
            Variant::MbUniform => "mb-uniform",
            Variant::MmUniform => "mm-uniform",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rank4" => Ok(Variant::Rank4),
            "mb-uniform" | "mbUniform" => Ok(Variant::MbUniform),
            "mm-uniform" | "mmUniform" => Ok(Variant::MmUniform),
            _ => Err(Error::Precondition(format!("unknown variant {s:?}"))),
        }
    }
}

/// Which gadget(s) a board vertex belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Owner {
    /// `p` or `q` of an arc; shared by the gadgets of the arc's endpoints.
    Junction { arc: usize, twin: usize },
    Interior { node: usize },
}

/// One instantiated gadget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetInfo {
    pub node_type: NodeType,
    /// In-arcs and out-arcs (arc indices) in slot order.
    pub in_arcs: Vec<usize>,
    pub out_arcs: Vec<usize>,
    /// Role name to board vertex.
    pub roles: BTreeMap<String, usize>,
    pub vertices: VertexSet,
    /// Indices into the board's edge family.
    pub edges: Vec<usize>,
}

impl GadgetInfo {
    /// Board vertex of `role`; panics on roles the gadget does not have.
    pub fn v(&self, role: &str) -> usize {
        *self.roles.get(role).unwrap_or_else(|| panic!("{} gadget has no role {role}", self.node_type))
    }

    pub fn role_of(&self, v: usize) -> Option<&str> {
        self.roles.iter().find(|(_, &x)| x == v).map(|(r, _)| r.as_str())
    }

    /// Arc bound to a slot letter.
    pub fn slot_arc(&self, slot: char) -> usize {
        let (ins, outs) = slot_letters(self.node_type);
        if let Some(i) = ins.iter().position(|&c| c == slot) {
            self.in_arcs[i]
        } else {
            self.out_arcs[outs.iter().position(|&c| c == slot).expect("valid slot")]
        }
    }

    /// Slot letter of an incident arc.
    pub fn arc_slot(&self, arc: usize) -> Option<char> {
        let (ins, outs) = slot_letters(self.node_type);
        self.in_arcs
            .iter()
            .position(|&a| a == arc)
            .map(|i| ins[i])
            .or_else(|| self.out_arcs.iter().position(|&a| a == arc).map(|i| outs[i]))
    }
}

/// The compiled board with its gadget metadata.
#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub instance: GeoInstance,
    pub variant: Variant,
    pub board: Hypergraph,
    /// Per node, indexed like the instance's nodes.
    pub gadgets: Vec<GadgetInfo>,
    /// Per arc: the `p` and `q` board vertices.
    pub junctions: Vec<(usize, usize)>,
    /// Per board vertex.
    pub owners: Vec<Owner>,
    /// Elementary construction steps (nodes, arcs and template edges visited).
    pub work: u64,
}

impl ReductionOutput {
    pub fn bitboard(&self) -> Result<Board> {
        Board::new(&self.board)
    }

    pub fn name(&self, v: usize) -> &str {
        self.board.name(v)
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.board.index_of(id).ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn gadget(&self, node: usize) -> &GadgetInfo {
        &self.gadgets[node]
    }

    /// Nodes whose gadget contains `v`.
    pub fn gadgets_of(&self, v: usize) -> Vec<usize> {
        match self.owners[v] {
            Owner::Junction { arc, .. } => {
                let a = self.instance.arc(arc);
                vec![a.tail, a.head]
            }
            Owner::Interior { node } => vec![node],
        }
    }

    pub fn twin(&self, v: usize) -> Option<usize> {
        match self.owners[v] {
            Owner::Junction { twin, .. } => Some(twin),
            Owner::Interior { .. } => None,
        }
    }

    pub fn metadata(&self) -> ReductionMeta {
        let arcs = self
            .instance
            .arcs()
            .iter()
            .zip(&self.junctions)
            .map(|(a, &(p, q))| (a.label.clone(), [self.name(p).to_string(), self.name(q).to_string()]))
            .collect();
        let label = |arcs: &[usize]| -> Vec<String> {
            arcs.iter().map(|&a| self.instance.arc(a).label.clone()).collect()
        };
        let nodes = self
            .gadgets
            .iter()
            .enumerate()
            .map(|(i, g)| {
                (
                    self.instance.node_name(i).to_string(),
                    NodeMeta {
                        node_type: g.node_type,
                        vertices: g.vertices.iter().map(|v| self.name(v).to_string()).collect(),
                        in_arcs: label(&g.in_arcs),
                        out_arcs: label(&g.out_arcs),
                    },
                )
            })
            .collect();
        ReductionMeta { variant: self.variant, arcs, nodes }
    }
}

/// Metadata written next to the board.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionMeta {
    pub variant: Variant,
    pub arcs: BTreeMap<String, [String; 2]>,
    pub nodes: BTreeMap<String, NodeMeta>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeMeta {
    #[serde(rename = "type")]
    pub node_type: NodeType,
    pub vertices: Vec<String>,
    #[serde(rename = "in")]
    pub in_arcs: Vec<String>,
    #[serde(rename = "out")]
    pub out_arcs: Vec<String>,
}

/// Builds the board for a validated instance.
pub fn reduce(inst: &GeoInstance, variant: Variant) -> Result<ReductionOutput> {
    let types = classify_nodes(inst)?;
    let mut work = 0u64;
    let mut names: Vec<String> = Vec::new();
    let mut edges: Vec<Vec<String>> = Vec::new();
    // Role bindings by name; board indices are resolved once the board exists.
    let mut role_names: Vec<BTreeMap<String, String>> = Vec::with_capacity(types.len());
    for (v, &t) in types.iter().enumerate() {
        work += 1;
        let node = inst.node_name(v);
        let ins: Vec<&str> = inst.in_arcs(v).iter().map(|&a| inst.arc(a).label.as_str()).collect();
        let outs: Vec<&str> = inst.out_arcs(v).iter().map(|&a| inst.arc(a).label.as_str()).collect();
        let (in_slots, out_slots) = slot_letters(t);
        let slots: Vec<(char, &str)> = in_slots
            .iter()
            .zip(&ins)
            .chain(out_slots.iter().zip(&outs))
            .map(|(&c, &a)| (c, a))
            .collect();
        let roles: BTreeMap<String, String> = gadget_roles(t)
            .into_iter()
            .map(|r| {
                let id = gadgets::role_vertex(node, &r, &slots);
                (r, id)
            })
            .collect();
        for r in gadget_spec(t).interior {
            names.push(roles[*r].clone());
        }
        let mut gadget = gadget_edges(t, node, &ins, &outs)?;
        work += gadget.len() as u64;
        if variant == Variant::MmUniform && t == NodeType::B01 {
            gadget = start_edges_mm(node, &roles);
            names.extend((1..=10).map(|i| format!("{node}.z{i}")));
            work += gadget.len() as u64;
        }
        edges.extend(gadget);
        role_names.push(roles);
    }
    for a in inst.arcs() {
        work += 1;
        names.push(format!("{}.p", a.label));
        names.push(format!("{}.q", a.label));
    }
    let mut board = Hypergraph::new(&names, &edges)?;
    if variant == Variant::MbUniform {
        board = uniformize_mb(&board, 4)?;
    }

    let index = |id: &str| board.index_of(id).expect("constructed vertex");
    let junctions: Vec<(usize, usize)> = inst
        .arcs()
        .iter()
        .map(|a| (index(&format!("{}.p", a.label)), index(&format!("{}.q", a.label))))
        .collect();
    let mut owners = vec![Owner::Interior { node: inst.start() }; board.num_vertices()];
    for (arc, &(p, q)) in junctions.iter().enumerate() {
        owners[p] = Owner::Junction { arc, twin: q };
        owners[q] = Owner::Junction { arc, twin: p };
    }
    let mut gadgets: Vec<GadgetInfo> = role_names
        .into_iter()
        .enumerate()
        .map(|(v, roles)| {
            let roles: BTreeMap<String, usize> = roles.into_iter().map(|(r, id)| (r, index(&id))).collect();
            let vertices = roles.values().copied().collect();
            GadgetInfo {
                node_type: types[v],
                in_arcs: inst.in_arcs(v).to_vec(),
                out_arcs: inst.out_arcs(v).to_vec(),
                roles,
                vertices,
                edges: Vec::new(),
            }
        })
        .collect();
    for (v, g) in gadgets.iter().enumerate() {
        for &x in g.roles.values() {
            if junction_role(g.role_of(x).unwrap()).is_none() {
                owners[x] = Owner::Interior { node: v };
            }
        }
    }
    // Vertices added by the uniform variants belong to the start gadget.
    let start = inst.start();
    let claimed = gadgets.iter().fold(VertexSet::EMPTY, |acc, g| acc.union(g.vertices));
    for x in 0..board.num_vertices() {
        if !claimed.contains(x) {
            let name = board.name(x);
            let role = name.strip_prefix(&format!("{}.", inst.node_name(start))).unwrap_or(name).to_string();
            gadgets[start].roles.insert(role, x);
            gadgets[start].vertices = gadgets[start].vertices.with(x);
        }
    }
    for (i, e) in board.edges().iter().enumerate() {
        work += 1;
        let node = e
            .iter()
            .find_map(|&x| match owners[x] {
                Owner::Interior { node } => Some(node),
                Owner::Junction { .. } => None,
            })
            .expect("every gadget edge has an interior vertex");
        gadgets[node].edges.push(i);
    }
    Ok(ReductionOutput { instance: inst.clone(), variant, board, gadgets, junctions, owners, work })
}

/// The start gadget of the Maker-Maker uniform variant: each of its two edges
/// is replaced by ten edges through pairs of five fresh vertices.
fn start_edges_mm(node: &str, roles: &BTreeMap<String, String>) -> Vec<Vec<String>> {
    let mut edges = Vec::new();
    for (p, y, base) in [("pa", "y1", 0), ("qa", "y2", 5)] {
        for i in 1..=5 {
            for j in i + 1..=5 {
                edges.push(vec![
                    roles[p].clone(),
                    roles[y].clone(),
                    format!("{node}.z{}", base + i),
                    format!("{node}.z{}", base + j),
                ]);
            }
        }
    }
    edges
}
