use super::Hypergraph;

/// All ordered pairs `(x, y)` such that `{x, y}` is an edge and every edge
/// containing `y` also contains `x`. Maker picking `x` and Breaker answering
/// `y` is then an optimal first round.
pub fn greedy_pairs_mb(board: &Hypergraph) -> Vec<(usize, usize)> {
    let edges = board.edges();
    let dominated = |x: usize, y: usize| {
        edges
            .iter()
            .filter(|e| e.binary_search(&y).is_ok())
            .all(|e| e.binary_search(&x).is_ok())
    };
    let mut out = Vec::new();
    for e in edges.iter().filter(|e| e.len() == 2) {
        let (a, b) = (e[0], e[1]);
        if dominated(a, b) {
            out.push((a, b));
        }
        if dominated(b, a) {
            out.push((b, a));
        }
    }
    out.sort_unstable();
    out
}
