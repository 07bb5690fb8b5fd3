use std::collections::BTreeSet;

use super::Hypergraph;
use crate::error::{Error, Result};

fn check_picks(board: &Hypergraph, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> Result<()> {
    let n = board.num_vertices();
    if let Some(&v) = a.iter().chain(b).find(|&&v| v >= n) {
        return Err(Error::Precondition(format!("picked vertex index {v} is outside the board")));
    }
    if let Some(&v) = a.intersection(b).next() {
        return Err(Error::Precondition(format!(
            "vertex {:?} is picked by both players",
            board.name(v)
        )));
    }
    Ok(())
}

/// Rebuilds `board` on the unpicked vertices with the given reduced family.
fn restrict(board: &Hypergraph, picked: &BTreeSet<usize>, family: Vec<Vec<usize>>) -> Hypergraph {
    let mut remap = vec![usize::MAX; board.num_vertices()];
    let mut names = Vec::with_capacity(board.num_vertices() - picked.len());
    for (i, name) in board.vertices().iter().enumerate() {
        if !picked.contains(&i) {
            remap[i] = names.len();
            names.push(name.clone());
        }
    }
    let edges = family
        .into_iter()
        .map(|e| e.into_iter().map(|v| remap[v]).collect())
        .collect();
    Hypergraph::from_indexed(names, edges)
}

fn reduced(board: &Hypergraph, progress: &BTreeSet<usize>, killers: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    board
        .edges()
        .iter()
        .filter(|e| !e.iter().any(|v| killers.contains(v)))
        .map(|e| e.iter().copied().filter(|v| !progress.contains(v)).collect())
        .collect()
}

/// The updated Maker-Breaker board after Maker picked `maker` and Breaker
/// picked `breaker`: edges touched by Breaker disappear, Maker's vertices are
/// removed from the rest. The empty edge appears once Maker filled an edge.
pub fn mb_update(board: &Hypergraph, maker: &BTreeSet<usize>, breaker: &BTreeSet<usize>) -> Result<Hypergraph> {
    check_picks(board, maker, breaker)?;
    let picked = maker.union(breaker).copied().collect();
    Ok(restrict(board, &picked, reduced(board, maker, breaker)))
}

/// Updated red (first player) and blue (second player) families of the
/// Maker-Maker game, both over the unpicked vertices.
pub fn mm_update(
    board: &Hypergraph,
    first: &BTreeSet<usize>,
    second: &BTreeSet<usize>,
) -> Result<(Hypergraph, Hypergraph)> {
    check_picks(board, first, second)?;
    let picked: BTreeSet<usize> = first.union(second).copied().collect();
    let red = restrict(board, &picked, reduced(board, first, second));
    let blue = restrict(board, &picked, reduced(board, second, first));
    Ok((red, blue))
}

/// Drops every edge that strictly contains another edge. Off by default in
/// all update paths: pairing validity is stated against the raw family.
pub fn prune_supersets(board: &Hypergraph) -> Hypergraph {
    let edges = board.edges();
    let kept = edges
        .iter()
        .enumerate()
        .filter(|(i, e)| {
            !edges[..*i]
                .iter()
                .any(|f| f.len() < e.len() && f.iter().all(|v| e.binary_search(v).is_ok()))
        })
        .map(|(_, e)| e.clone())
        .collect();
    Hypergraph::from_indexed(board.vertices().to_vec(), kept)
}
