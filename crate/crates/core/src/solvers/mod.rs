//! Exact solvers for Maker-Breaker and Maker-Maker games on small boards.
//!
//! Both searches are memoized over `(picks, picks)` bitmask pairs. With the
//! `parallel` feature and more than one worker, the children of the root are
//! searched on a rayon pool over a shared concurrent table.

mod mb;
mod mm;
pub(crate) mod table;

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::hypergraph::{is_pairing, pairing_move, Board, Hypergraph, MbPosition, MmPosition, Outcome, Pairing};

/// Search shortcuts. Each preserves the game value and can be switched off
/// to check that claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Rules {
    /// A player holding a size-1 residue takes it; the opponent must block a
    /// single threat.
    pub forced_singletons: bool,
    /// Two distinct threats against the mover decide the game.
    pub double_threat: bool,
    /// Vertices outside every live residue are never branched on.
    pub dead_vertices: bool,
}

impl Rules {
    pub const ALL: Rules = Rules { forced_singletons: true, double_threat: true, dead_vertices: true };
    pub const NONE: Rules = Rules { forced_singletons: false, double_threat: false, dead_vertices: false };
}

impl Default for Rules {
    fn default() -> Self {
        Rules::ALL
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Maximum number of expanded nodes.
    pub budget: Option<u64>,
    /// Worker threads; 1 runs the sequential search.
    pub workers: usize,
    pub rules: Rules,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { budget: None, workers: 1, rules: Rules::ALL }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub outcome: Outcome,
    pub nodes: u64,
    pub table_size: usize,
    /// One optimal line from the solved position, as vertex ids.
    pub principal_variation: Vec<String>,
}

pub fn solve_mb(board: &Hypergraph, opts: &SolveOptions) -> Result<SolveReport> {
    solve_mb_from(&Board::new(board)?, MbPosition::default(), opts)
}

pub fn solve_mb_from(board: &Board, pos: MbPosition, opts: &SolveOptions) -> Result<SolveReport> {
    MbPosition::new(board, pos.maker, pos.breaker)?;
    mb::solve(board, pos, opts)
}

pub fn solve_mm(board: &Hypergraph, opts: &SolveOptions) -> Result<SolveReport> {
    solve_mm_from(&Board::new(board)?, MmPosition::default(), opts)
}

pub fn solve_mm_from(board: &Board, pos: MmPosition, opts: &SolveOptions) -> Result<SolveReport> {
    MmPosition::new(board, pos.first, pos.second)?;
    mm::solve(board, pos, opts)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingRunReport {
    pub outcome: Outcome,
    /// Distinct positions with Maker to move that were explored.
    pub positions: u64,
}

/// Plays [`pairing_move`] for Breaker against every Maker line and checks
/// that Maker never fills an edge.
pub fn solve_mb_against_pairing(board: &Hypergraph, pairing: &Pairing) -> Result<PairingRunReport> {
    let check = is_pairing(board, pairing);
    if !check.is_valid() {
        return Err(Error::Precondition(format!("not a pairing: {check:?}")));
    }
    let b = Board::new(board)?;
    let mut seen = HashSet::new();
    let mut stack = vec![(VertexSet::EMPTY, VertexSet::EMPTY)];
    while let Some((m, k)) = stack.pop() {
        if !seen.insert((m.0, k.0)) {
            continue;
        }
        for v in b.all().difference(m.union(k)).iter() {
            let m2 = m.with(v);
            if b.filled(m2, k) {
                return Err(Error::Uncovered(format!("Maker filled an edge with {}", b.name(v))));
            }
            let unpicked: BTreeSet<usize> = b.all().difference(m2.union(k)).iter().collect();
            match pairing_move(pairing, Some(v), &unpicked) {
                Some(r) => stack.push((m2, k.with(r))),
                None => continue,
            }
        }
    }
    Ok(PairingRunReport { outcome: Outcome::BreakerWin, positions: seen.len() as u64 })
}
