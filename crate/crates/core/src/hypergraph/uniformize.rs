use std::collections::BTreeSet;

use super::Hypergraph;
use crate::error::{Error, Result};

/// Grows every edge to exactly `k` vertices by repeatedly replacing a short
/// edge `e` with `e ∪ {x}` and `e ∪ {y}` for two fresh vertices. This keeps
/// the Maker-Breaker outcome.
///
/// Fresh vertices are named `e<i>.u<n>`, where `i` is the position of the
/// original edge in the sorted family and `n` counts the vertices created
/// while expanding it.
pub fn uniformize_mb(board: &Hypergraph, k: usize) -> Result<Hypergraph> {
    let rank = board.rank();
    if rank > k {
        return Err(Error::RankExceeded { rank, k });
    }
    if board.has_empty_edge() {
        return Err(Error::Precondition("cannot uniformize a board containing the empty edge".into()));
    }
    let mut names: BTreeSet<String> = board.vertices().iter().cloned().collect();
    let mut fresh = |key: usize, n: &mut usize| {
        loop {
            *n += 1;
            let name = format!("e{key}.u{n}");
            if names.insert(name.clone()) {
                return name;
            }
        }
    };
    let mut edges: Vec<Vec<String>> = Vec::new();
    for (i, e) in board.edge_names().into_iter().enumerate() {
        let mut counter = 0;
        let mut pending = vec![e.into_iter().map(str::to_string).collect::<Vec<_>>()];
        while let Some(edge) = pending.pop() {
            if edge.len() >= k {
                edges.push(edge);
                continue;
            }
            let x = fresh(i, &mut counter);
            let y = fresh(i, &mut counter);
            let mut ex = edge.clone();
            ex.push(x);
            let mut ey = edge;
            ey.push(y);
            // Expand e ∪ {x} first so that naming follows a depth-first order.
            pending.push(ey);
            pending.push(ex);
        }
    }
    Hypergraph::new(names, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Hypergraph {
        Hypergraph::new(["a", "b"], [["a", "b"]]).unwrap()
    }

    #[test]
    fn already_uniform_is_unchanged() {
        assert_eq!(uniformize_mb(&ab(), 2).unwrap(), ab());
    }

    #[test]
    fn one_step_adds_two_vertices() {
        let u = uniformize_mb(&ab(), 3).unwrap();
        assert_eq!(u.edge_names(), vec![vec!["a", "b", "e0.u1"], vec!["a", "b", "e0.u2"]]);
        assert_eq!(u.num_vertices(), 4);
    }

    #[test]
    fn two_steps_give_four_edges() {
        let u = uniformize_mb(&ab(), 4).unwrap();
        assert!(u.is_uniform(4));
        assert_eq!(u.num_edges(), 4);
        assert_eq!(u.num_vertices(), 8);
    }

    #[test]
    fn rank_above_target_is_an_error() {
        let h = Hypergraph::new(["a", "b", "c"], [["a", "b", "c"]]).unwrap();
        assert!(matches!(uniformize_mb(&h, 2), Err(Error::RankExceeded { rank: 3, k: 2 })));
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let h = Hypergraph::new(["e0.u1", "b"], [["e0.u1", "b"]]).unwrap();
        let u = uniformize_mb(&h, 3).unwrap();
        assert_eq!(u.num_vertices(), 4);
        assert!(u.is_uniform(3));
    }
}
