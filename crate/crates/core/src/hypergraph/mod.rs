//! Hypergraphs, positions and the update rules of both game conventions.
//!
//! A [`Hypergraph`] keeps its vertex ids sorted, so vertex indices follow the
//! lexicographic order of the ids. Every "pick one arbitrarily" branch in the
//! crate resolves to the lowest index, which makes strategies deterministic.

mod board;
mod greedy;
mod pairing;
mod uniformize;
mod update;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use board::{Board, MbPosition, MmPosition};
pub use greedy::greedy_pairs_mb;
pub use pairing::{
    find_pairing, find_pairing_with, is_pairing, pairing_move, Pairing, PairingCheck,
    PairingSearch,
};
pub use uniformize::uniformize_mb;
pub use update::{mb_update, mm_update, prune_supersets};

/// The two seats at the table. In the Maker-Maker convention `Maker` is the
/// first player (FP) and `Breaker` the second player (SP).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    Maker,
    Breaker,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Maker => Player::Breaker,
            Player::Breaker => Player::Maker,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Maker => "Maker",
            Player::Breaker => "Breaker",
        })
    }
}

/// Game values. Maker-Breaker games only produce `MakerWin`/`BreakerWin`;
/// Maker-Maker games produce `FpWin`, `Draw` or (in subtrees) `SpWin`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    MakerWin,
    BreakerWin,
    #[serde(rename = "FPWin")]
    FpWin,
    Draw,
    #[serde(rename = "SPWin")]
    SpWin,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::MakerWin => "MakerWin",
            Outcome::BreakerWin => "BreakerWin",
            Outcome::FpWin => "FPWin",
            Outcome::Draw => "Draw",
            Outcome::SpWin => "SPWin",
        })
    }
}

pub(crate) fn check_id(id: &str) -> Result<()> {
    if id.is_empty() || id.chars().any(char::is_whitespace) {
        return Err(Error::InvalidId(id.to_string()));
    }
    Ok(())
}

/// A finite hypergraph over string-identified vertices.
///
/// Edges are stored as sorted index lists and the family is sorted by size,
/// then lexicographically, with duplicates removed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    vertices: Vec<String>,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a fresh board. Rejects empty edges, unknown members and
    /// malformed or duplicate ids.
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator,
        E::Item: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let h = Self::build(vertices, edges)?;
        if h.edges.iter().any(Vec::is_empty) {
            return Err(Error::EmptyEdge);
        }
        Ok(h)
    }

    /// Like [`Hypergraph::new`] but admits the empty edge, which only shows up
    /// in updated views (it means the edge has been filled).
    pub fn updated_view<V, E, S>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator,
        E::Item: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self::build(vertices, edges)
    }

    fn build<V, E, S>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator,
        E::Item: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut names = BTreeSet::new();
        for v in vertices {
            let v = v.as_ref();
            check_id(v)?;
            if !names.insert(v.to_string()) {
                return Err(Error::DuplicateVertex(v.to_string()));
            }
        }
        let vertices: Vec<String> = names.into_iter().collect();
        let index: BTreeMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut family = Vec::new();
        for e in edges {
            let mut members = Vec::new();
            for v in e {
                let v = v.as_ref();
                let &i = index.get(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
                members.push(i);
            }
            family.push(members);
        }
        Ok(Self::from_indexed(vertices, family))
    }

    /// Internal constructor over already-sorted, unique vertex ids.
    pub(crate) fn from_indexed(vertices: Vec<String>, edges: Vec<Vec<usize>>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut edges: Vec<Vec<usize>> = edges
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                e.dedup();
                e
            })
            .collect();
        edges.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        edges.dedup();
        Hypergraph { vertices, edges }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(id)).ok()
    }

    /// Resolves a list of ids to indices.
    pub fn indices<I, S>(&self, ids: I) -> Result<BTreeSet<usize>>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        ids.into_iter()
            .map(|s| self.index_of(s.as_ref()).ok_or_else(|| Error::UnknownVertex(s.as_ref().into())))
            .collect()
    }

    /// Edges as lists of vertex ids.
    pub fn edge_names(&self) -> Vec<Vec<&str>> {
        self.edges
            .iter()
            .map(|e| e.iter().map(|&v| self.vertices[v].as_str()).collect())
            .collect()
    }

    /// Largest edge size (0 for an edgeless board).
    pub fn rank(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_uniform(&self, k: usize) -> bool {
        self.edges.iter().all(|e| e.len() == k)
    }

    pub fn has_empty_edge(&self) -> bool {
        self.edges.first().is_some_and(Vec::is_empty)
    }

    pub fn to_json(&self) -> HypergraphJson {
        HypergraphJson {
            vertices: self.vertices.clone(),
            edges: self
                .edge_names()
                .into_iter()
                .map(|e| e.into_iter().map(str::to_string).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &HypergraphJson) -> Result<Self> {
        Self::new(&json.vertices, &json.edges)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("hypergraph serialization is infallible")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("vertices", &self.vertices)
            .field("edges", &self.edge_names())
            .finish()
    }
}

/// Wire format: `{"vertices":[...],"edges":[[...],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<Vec<String>>,
}
