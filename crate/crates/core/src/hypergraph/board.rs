use super::{Hypergraph, Pairing, Player};
use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

/// Bitmask form of a [`Hypergraph`] used by the solvers, strategies and
/// verifiers. Vertex indices are the hypergraph's indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Board {
    names: Vec<String>,
    edges: Vec<VertexSet>,
}

impl Board {
    pub fn new(h: &Hypergraph) -> Result<Self> {
        if h.num_vertices() > MAX_VERTICES {
            return Err(Error::TooManyVertices { got: h.num_vertices(), max: MAX_VERTICES });
        }
        Ok(Board {
            names: h.vertices().to_vec(),
            edges: h.edges().iter().map(|e| e.iter().copied().collect()).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.names.binary_search_by(|v| v.as_str().cmp(id)).ok()
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.names.len())
    }

    /// Residues `e ∖ progress` of the edges not touched by `killer`.
    #[inline]
    pub fn residuals(&self, progress: VertexSet, killer: VertexSet) -> impl Iterator<Item = VertexSet> + '_ {
        self.edges
            .iter()
            .filter(move |e| e.is_disjoint(killer))
            .map(move |e| e.difference(progress))
    }

    /// Whether `progress` fills an edge that `killer` has not touched.
    pub fn filled(&self, progress: VertexSet, killer: VertexSet) -> bool {
        self.residuals(progress, killer).any(VertexSet::is_empty)
    }

    /// Union of all size-1 residues: the vertices that would complete an edge.
    pub fn threats(&self, progress: VertexSet, killer: VertexSet) -> VertexSet {
        self.residuals(progress, killer)
            .filter(|r| r.len() == 1)
            .fold(VertexSet::EMPTY, VertexSet::union)
    }

    /// Vertices occurring in some live residue.
    pub fn live(&self, progress: VertexSet, killer: VertexSet) -> VertexSet {
        self.residuals(progress, killer).fold(VertexSet::EMPTY, VertexSet::union)
    }

    /// The updated Maker-Breaker board as a [`Hypergraph`].
    pub fn updated(&self, maker: VertexSet, breaker: VertexSet) -> Hypergraph {
        self.view(maker.union(breaker), self.residuals(maker, breaker))
    }

    pub(crate) fn view<I: Iterator<Item = VertexSet>>(&self, picked: VertexSet, residues: I) -> Hypergraph {
        let mut remap = vec![usize::MAX; self.len()];
        let mut names = Vec::new();
        for (i, n) in self.names.iter().enumerate() {
            if !picked.contains(i) {
                remap[i] = names.len();
                names.push(n.clone());
            }
        }
        let edges = residues.map(|r| r.iter().map(|v| remap[v]).collect()).collect();
        Hypergraph::from_indexed(names, edges)
    }

    /// Whether `pairing` (over board indices) is a pairing of the updated
    /// board after `progress`/`killer` picks: pairs are disjoint, unpicked,
    /// and every live residue contains one of them.
    pub fn pairing_holds(&self, pairing: &Pairing, progress: VertexSet, killer: VertexSet) -> bool {
        self.uncovered_residue(pairing, progress, killer).is_none() && pairing.overlap().is_none() && {
            let picked = progress.union(killer);
            pairing.pairs().all(|(a, b)| a < self.len() && b < self.len() && !picked.contains(a) && !picked.contains(b))
        }
    }

    /// Whether `(x, y)` is a greedy pair for the `progress` side: `{x, y}` is
    /// a live residue and every live residue containing `y` contains `x`.
    pub fn greedy_pair_holds(&self, progress: VertexSet, killer: VertexSet, x: usize, y: usize) -> bool {
        let pair = VertexSet::singleton(x).with(y);
        let mut seen = false;
        for r in self.residuals(progress, killer) {
            if r == pair {
                seen = true;
            }
            if r.contains(y) && !r.contains(x) {
                return false;
            }
        }
        seen
    }

    /// Lowest vertex of `candidates` whose pick by the `progress` side leaves
    /// at least two distinct size-1 residues.
    pub fn double_threat(&self, progress: VertexSet, killer: VertexSet, candidates: VertexSet) -> Option<usize> {
        candidates
            .iter()
            .find(|&v| self.threats(progress.with(v), killer).len() >= 2)
    }

    /// First live residue containing no pair, if any.
    pub fn uncovered_residue(&self, pairing: &Pairing, progress: VertexSet, killer: VertexSet) -> Option<VertexSet> {
        let masks: Vec<VertexSet> = pairing
            .pairs()
            .map(|(a, b)| VertexSet::singleton(a).with(b))
            .collect();
        self.residuals(progress, killer)
            .find(|r| !masks.iter().any(|p| p.is_subset(*r)))
    }
}

fn check_counts(board: &Board, a: VertexSet, b: VertexSet) -> Result<()> {
    if !a.is_disjoint(b) {
        return Err(Error::Precondition("pick sets overlap".into()));
    }
    if !a.union(b).is_subset(board.all()) {
        return Err(Error::Precondition("picks outside the board".into()));
    }
    let (na, nb) = (a.len(), b.len());
    if na != nb && na != nb + 1 {
        return Err(Error::Precondition(format!(
            "first player has {na} picks and second player {nb}; expected equal or one more"
        )));
    }
    Ok(())
}

/// A Maker-Breaker position: Maker's and Breaker's picks. Maker moves first,
/// so Maker is to move exactly when both sets have the same size.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct MbPosition {
    pub maker: VertexSet,
    pub breaker: VertexSet,
}

impl MbPosition {
    pub fn new(board: &Board, maker: VertexSet, breaker: VertexSet) -> Result<Self> {
        check_counts(board, maker, breaker)?;
        Ok(MbPosition { maker, breaker })
    }

    /// Replays an alternating move list starting with Maker.
    pub fn from_moves(board: &Board, moves: &[usize]) -> Result<Self> {
        let mut pos = MbPosition::default();
        for &v in moves {
            if v >= board.len() || !pos.unpicked(board).contains(v) {
                return Err(Error::Precondition(format!("move {v} is not an unpicked vertex")));
            }
            pos = pos.play(v);
        }
        Ok(pos)
    }

    pub fn to_move(&self) -> Player {
        if self.maker.len() == self.breaker.len() {
            Player::Maker
        } else {
            Player::Breaker
        }
    }

    pub fn picked(&self) -> VertexSet {
        self.maker.union(self.breaker)
    }

    pub fn unpicked(&self, board: &Board) -> VertexSet {
        board.all().difference(self.picked())
    }

    #[must_use]
    pub fn play(&self, v: usize) -> Self {
        match self.to_move() {
            Player::Maker => MbPosition { maker: self.maker.with(v), ..*self },
            Player::Breaker => MbPosition { breaker: self.breaker.with(v), ..*self },
        }
    }

    pub fn maker_won(&self, board: &Board) -> bool {
        board.filled(self.maker, self.breaker)
    }

    pub fn updated(&self, board: &Board) -> Hypergraph {
        board.updated(self.maker, self.breaker)
    }
}

/// A Maker-Maker position: first player's (FP) and second player's (SP) picks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct MmPosition {
    pub first: VertexSet,
    pub second: VertexSet,
}

impl MmPosition {
    pub fn new(board: &Board, first: VertexSet, second: VertexSet) -> Result<Self> {
        check_counts(board, first, second)?;
        Ok(MmPosition { first, second })
    }

    pub fn to_move(&self) -> Player {
        if self.first.len() == self.second.len() {
            Player::Maker
        } else {
            Player::Breaker
        }
    }

    pub fn unpicked(&self, board: &Board) -> VertexSet {
        board.all().difference(self.first.union(self.second))
    }

    #[must_use]
    pub fn play(&self, v: usize) -> Self {
        match self.to_move() {
            Player::Maker => MmPosition { first: self.first.with(v), ..*self },
            Player::Breaker => MmPosition { second: self.second.with(v), ..*self },
        }
    }

    pub fn red<'a>(&self, board: &'a Board) -> impl Iterator<Item = VertexSet> + 'a {
        board.residuals(self.first, self.second)
    }

    pub fn blue<'a>(&self, board: &'a Board) -> impl Iterator<Item = VertexSet> + 'a {
        board.residuals(self.second, self.first)
    }
}
