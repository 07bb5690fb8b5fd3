//! The Geography game on digraphs: instances, the degree/bipartiteness
//! validator, node classification for the reduction, and an exact solver.

mod instance;
pub mod samples;
mod solve;
mod validate;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use instance::{Arc, ArcJson, GeoInstance, GeoJson};
pub use solve::{solve_geo, FirstArcOracle, GeoOracle, GeoSolution, OptimalOracle, ScriptedOracle};
pub use validate::{classify_nodes, two_coloring, validate_geo, ValidationReport, Violation};

/// The Geography players. Alice places the token on the start node, Bob makes
/// the first token move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeoPlayer {
    Alice,
    Bob,
}

impl fmt::Display for GeoPlayer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeoPlayer::Alice => "Alice",
            GeoPlayer::Bob => "Bob",
        })
    }
}

/// Token position and visited nodes (as a bitmask over node indices).
/// The token's node is always visited.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeoState {
    pub current: usize,
    pub visited: u64,
}

impl GeoState {
    pub fn start(inst: &GeoInstance) -> Self {
        GeoState { current: inst.start(), visited: 1 << inst.start() }
    }

    /// Bob moves from the start, then the players alternate.
    pub fn mover(&self) -> GeoPlayer {
        if self.visited.count_ones() % 2 == 1 {
            GeoPlayer::Bob
        } else {
            GeoPlayer::Alice
        }
    }

    pub fn is_visited(&self, node: usize) -> bool {
        self.visited >> node & 1 == 1
    }

    /// Moves the token to `node`. Revisiting is a losing move and is not
    /// represented as a state.
    #[must_use]
    pub fn advance(&self, node: usize) -> Self {
        GeoState { current: node, visited: self.visited | 1 << node }
    }
}

/// Node classes of the reduction, by color relative to the start node and
/// by (in-degree, out-degree).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NodeType {
    B01,
    B11,
    B21,
    B12,
    M11,
    M21,
    M12,
}

impl NodeType {
    pub const ALL: [NodeType; 7] =
        [NodeType::B01, NodeType::B11, NodeType::B21, NodeType::B12, NodeType::M11, NodeType::M21, NodeType::M12];

    /// Whether the node shares the start node's color (Bob moves from it).
    pub fn is_breaker(self) -> bool {
        matches!(self, NodeType::B01 | NodeType::B11 | NodeType::B21 | NodeType::B12)
    }

    pub fn in_degree(self) -> usize {
        match self {
            NodeType::B01 => 0,
            NodeType::B11 | NodeType::M11 | NodeType::B12 | NodeType::M12 => 1,
            NodeType::B21 | NodeType::M21 => 2,
        }
    }

    pub fn out_degree(self) -> usize {
        match self {
            NodeType::B12 | NodeType::M12 => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NodeType::B01 => "B01",
            NodeType::B11 => "B11",
            NodeType::B21 => "B21",
            NodeType::B12 => "B12",
            NodeType::M11 => "M11",
            NodeType::M21 => "M21",
            NodeType::M12 => "M12",
        }
    }
}

impl fmt::Display for NodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
