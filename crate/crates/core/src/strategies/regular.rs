use serde::Serialize;

use super::sequence::{choice_index, choice_role, regular_sequence, Step, StepKind};
use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::geography::{GeoPlayer, GeoState, NodeType};
use crate::hypergraph::{Board, Player};
use crate::reduction::ReductionOutput;

/// How regular play ended: the token was moved along `arc` into `node`,
/// which had been active before.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RegularEnd {
    pub node: usize,
    pub arc: usize,
    /// The Geography winner: whoever did not move into the visited node.
    pub winner: GeoPlayer,
}

/// The move regular play prescribes next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expected {
    Move { mover: Player, vertex: usize, kind: StepKind },
    /// The mover picks the exit arc; `options` pairs each pick with its arc.
    Choice { mover: Player, options: Vec<(usize, usize)> },
    Ended(RegularEnd),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeStatus {
    Unvisited,
    Active,
    Cleared,
    /// Activated a second time, which ended regular play.
    Reentered,
}

/// Regular play on a reduced board, tracking the fictitious Geography game.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegularPlay {
    geo: GeoState,
    active: usize,
    entry: Option<usize>,
    choice: Option<usize>,
    phase: usize,
    first_entry: Vec<Option<usize>>,
    activations: Vec<u8>,
    history: Vec<(Player, usize)>,
    end: Option<RegularEnd>,
}

impl RegularPlay {
    pub fn new(red: &ReductionOutput) -> Self {
        let n = red.instance.nodes().len();
        let start = red.instance.start();
        let mut activations = vec![0; n];
        activations[start] = 1;
        RegularPlay {
            geo: GeoState::start(&red.instance),
            active: start,
            entry: None,
            choice: None,
            phase: 0,
            first_entry: vec![None; n],
            activations,
            history: Vec::new(),
            end: None,
        }
    }

    pub fn active(&self) -> usize {
        self.active
    }

    pub fn phase(&self) -> usize {
        self.phase
    }

    pub fn geo(&self) -> &GeoState {
        &self.geo
    }

    pub fn end(&self) -> Option<RegularEnd> {
        self.end
    }

    /// Exit arc chosen at the active 2-out gadget, once chosen.
    pub fn choice(&self) -> Option<usize> {
        self.choice
    }

    pub fn history(&self) -> &[(Player, usize)] {
        &self.history
    }

    /// Arc by which `node` was first entered.
    pub fn first_entry(&self, node: usize) -> Option<usize> {
        self.first_entry[node]
    }

    pub fn activations(&self, node: usize) -> u8 {
        self.activations[node]
    }

    pub fn status(&self, node: usize) -> NodeStatus {
        match self.end {
            Some(e) if e.node == node => NodeStatus::Reentered,
            _ if self.activations[node] == 0 => NodeStatus::Unvisited,
            None if node == self.active => NodeStatus::Active,
            _ => NodeStatus::Cleared,
        }
    }

    fn steps(&self, red: &ReductionOutput) -> Result<Vec<Step>> {
        let g = red.gadget(self.active);
        let entry = self.entry.map(|a| g.arc_slot(a).expect("entry arc is incident"));
        let choice = match g.node_type.out_degree() {
            2 => Some(self.choice.map_or('b', |a| g.arc_slot(a).expect("exit arc is incident"))),
            _ => None,
        };
        regular_sequence(g.node_type, entry, choice)
    }

    pub fn expected(&self, red: &ReductionOutput) -> Result<Expected> {
        if let Some(e) = self.end {
            return Ok(Expected::Ended(e));
        }
        let g = red.gadget(self.active);
        let steps = self.steps(red)?;
        let step = steps[self.phase];
        if choice_index(g.node_type) == Some(self.phase) && self.choice.is_none() {
            let options = g
                .out_arcs
                .iter()
                .map(|&a| (g.v(choice_role(g.node_type, g.arc_slot(a).unwrap()).unwrap()), a))
                .collect();
            return Ok(Expected::Choice { mover: step.mover, options });
        }
        Ok(Expected::Move { mover: step.mover, vertex: g.v(step.role), kind: step.kind })
    }

    /// Advances by the prescribed move `v`.
    pub fn play(&mut self, red: &ReductionOutput, v: usize) -> Result<()> {
        match self.expected(red)? {
            Expected::Move { mover, vertex, .. } if vertex == v => self.history.push((mover, v)),
            Expected::Choice { mover, options } => {
                let &(_, arc) = options
                    .iter()
                    .find(|(x, _)| *x == v)
                    .ok_or_else(|| Error::Precondition(format!("{} is not a choice here", red.name(v))))?;
                self.choice = Some(arc);
                self.history.push((mover, v));
            }
            Expected::Ended(_) => return Err(Error::Precondition("regular play has ended".into())),
            Expected::Move { .. } => {
                return Err(Error::Precondition(format!("{} is not the regular move", red.name(v))));
            }
        }
        self.phase += 1;
        if self.phase == self.steps(red)?.len() {
            self.leave(red);
        }
        Ok(())
    }

    /// The Maker or Breaker pick that selects `arc` at the current choice.
    pub fn choice_vertex(&self, red: &ReductionOutput, arc: usize) -> Option<usize> {
        match self.expected(red).ok()? {
            Expected::Choice { options, .. } => options.iter().find(|(_, a)| *a == arc).map(|(v, _)| *v),
            _ => None,
        }
    }

    fn leave(&mut self, red: &ReductionOutput) {
        let g = red.gadget(self.active);
        let arc = self.choice.unwrap_or(g.out_arcs[0]);
        let head = red.instance.arc(arc).head;
        self.activations[head] += 1;
        self.active = head;
        if self.activations[head] > 1 {
            let winner = if self.geo.mover() == GeoPlayer::Bob { GeoPlayer::Alice } else { GeoPlayer::Bob };
            self.end = Some(RegularEnd { node: head, arc, winner });
            return;
        }
        self.geo = self.geo.advance(head);
        self.first_entry[head] = Some(arc);
        self.entry = Some(arc);
        self.choice = None;
        self.phase = 0;
    }
}

/// Unpicked vertices of a gadget and its live residues.
pub fn gadget_residue(
    red: &ReductionOutput,
    board: &Board,
    maker: VertexSet,
    breaker: VertexSet,
    node: usize,
) -> (VertexSet, Vec<VertexSet>) {
    let g = red.gadget(node);
    let vertices = g.vertices.difference(maker.union(breaker));
    let mut edges: Vec<VertexSet> = g
        .edges
        .iter()
        .map(|&i| board.edges()[i])
        .filter(|e| e.is_disjoint(breaker))
        .map(|e| e.difference(maker))
        .collect();
    edges.sort();
    edges.dedup();
    (vertices, edges)
}

/// True for the node types whose re-entry ends regular play in Maker's favour.
pub fn maker_wins_reentry(t: NodeType) -> bool {
    t == NodeType::M21
}
