use std::collections::BTreeSet;

use serde::Serialize;

use super::Hypergraph;
use crate::error::{Error, Result};

/// A set of vertex pairs, stored as `(low, high)` index tuples.
///
/// Disjointness is not enforced here; [`is_pairing`] reports overlaps so that
/// a broken certificate can be diagnosed rather than rejected up front.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Pairing {
    pairs: BTreeSet<(usize, usize)>,
}

impl Pairing {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in pairs {
            if a == b {
                return Err(Error::Precondition(format!("pair ({a},{b}) repeats a vertex")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Pairing { pairs: set })
    }

    pub fn from_names<S: AsRef<str>>(board: &Hypergraph, pairs: &[(S, S)]) -> Result<Self> {
        let lookup = |s: &S| {
            board
                .index_of(s.as_ref())
                .ok_or_else(|| Error::UnknownVertex(s.as_ref().to_string()))
        };
        let resolved = pairs
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(resolved)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains_pair(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a.min(b), a.max(b)))
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        assert_ne!(a, b, "a pair needs two distinct vertices");
        self.pairs.insert((a.min(b), a.max(b)));
    }

    pub fn remove(&mut self, a: usize, b: usize) -> bool {
        self.pairs.remove(&(a.min(b), a.max(b)))
    }

    /// Whether some pair contains `v`.
    pub fn uses(&self, v: usize) -> bool {
        self.pairs.iter().any(|&(a, b)| a == v || b == v)
    }

    /// Partner of `v` in the first pair containing it.
    pub fn partner(&self, v: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(a, b)| match v {
            _ if a == v => Some(b),
            _ if b == v => Some(a),
            _ => None,
        })
    }

    pub fn union(&self, other: &Pairing) -> Pairing {
        Pairing { pairs: self.pairs.union(&other.pairs).copied().collect() }
    }

    pub fn retain<F: FnMut(usize, usize) -> bool>(&mut self, mut keep: F) {
        self.pairs.retain(|&(a, b)| keep(a, b));
    }

    /// First vertex that occurs in two different pairs, if any.
    pub fn overlap(&self) -> Option<usize> {
        let mut seen = BTreeSet::new();
        self.pairs
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .find(|&v| !seen.insert(v))
    }

    pub fn names(&self, board: &Hypergraph) -> Vec<(String, String)> {
        self.pairs
            .iter()
            .map(|&(a, b)| (board.name(a).to_string(), board.name(b).to_string()))
            .collect()
    }
}

/// Outcome of [`is_pairing`], distinguishing the reasons for rejection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PairingCheck {
    Valid,
    /// Vertex index outside the board.
    ForeignVertex { vertex: usize },
    /// Vertex occurring in two pairs.
    OverlappingPairs { vertex: usize },
    /// Index (in the board's sorted family) of an edge containing no pair.
    UncoveredEdge { edge: usize },
}

impl PairingCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, PairingCheck::Valid)
    }
}

/// Checks that `candidate` is a pairing of `board`: disjoint pairs of board
/// vertices such that every edge contains one of the pairs.
pub fn is_pairing(board: &Hypergraph, candidate: &Pairing) -> PairingCheck {
    let n = board.num_vertices();
    if let Some((a, b)) = candidate.pairs().find(|&(a, b)| a >= n || b >= n) {
        return PairingCheck::ForeignVertex { vertex: if a >= n { a } else { b } };
    }
    if let Some(v) = candidate.overlap() {
        return PairingCheck::OverlappingPairs { vertex: v };
    }
    let mut partner = vec![usize::MAX; n];
    for (a, b) in candidate.pairs() {
        partner[a] = b;
        partner[b] = a;
    }
    for (i, e) in board.edges().iter().enumerate() {
        let covered = e
            .iter()
            .any(|&v| partner[v] != usize::MAX && e.binary_search(&partner[v]).is_ok());
        if !covered {
            return PairingCheck::UncoveredEdge { edge: i };
        }
    }
    PairingCheck::Valid
}

/// The pairing strategy's answer: the partner of the opponent's last pick if
/// it is still free, otherwise the lowest unpicked vertex.
pub fn pairing_move(pairing: &Pairing, opponent_last: Option<usize>, unpicked: &BTreeSet<usize>) -> Option<usize> {
    opponent_last
        .and_then(|v| pairing.partner(v))
        .filter(|p| unpicked.contains(p))
        .or_else(|| unpicked.first().copied())
}

/// Result of a bounded search for a pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingSearch {
    pub pairing: Option<Pairing>,
    /// True when the search finished within budget, so `None` proves that no
    /// pairing exists.
    pub complete: bool,
    pub nodes: u64,
}

/// Backtracking search for a pairing. Edges are processed in the board's
/// family order (size ascending, then lexicographic).
pub fn find_pairing(board: &Hypergraph, budget: u64) -> PairingSearch {
    find_pairing_with(board, budget, &BTreeSet::new(), |_, _| true)
}

/// [`find_pairing`] restricted to pairs avoiding `forbidden` and accepted by
/// `allowed`.
pub fn find_pairing_with<F>(board: &Hypergraph, budget: u64, forbidden: &BTreeSet<usize>, allowed: F) -> PairingSearch
where
    F: Fn(usize, usize) -> bool,
{
    struct Search<'a, F> {
        edges: &'a [Vec<usize>],
        partner: Vec<usize>,
        chosen: Vec<(usize, usize)>,
        allowed: F,
        nodes: u64,
        budget: u64,
        exhausted: bool,
    }

    impl<F: Fn(usize, usize) -> bool> Search<'_, F> {
        fn covered(&self, e: &[usize]) -> bool {
            e.iter()
                .any(|&v| self.partner[v] != usize::MAX && e.binary_search(&self.partner[v]).is_ok())
        }

        fn run(&mut self, from: usize) -> bool {
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return false;
            }
            let Some(i) = (from..self.edges.len()).find(|&i| !self.covered(&self.edges[i])) else {
                return true;
            };
            let e = &self.edges[i];
            for (j, &a) in e.iter().enumerate() {
                if self.partner[a] != usize::MAX {
                    continue;
                }
                for &b in &e[j + 1..] {
                    if self.partner[b] != usize::MAX || !(self.allowed)(a, b) {
                        continue;
                    }
                    self.partner[a] = b;
                    self.partner[b] = a;
                    self.chosen.push((a, b));
                    if self.run(i + 1) {
                        return true;
                    }
                    self.chosen.pop();
                    self.partner[a] = usize::MAX;
                    self.partner[b] = usize::MAX;
                    if self.exhausted {
                        return false;
                    }
                }
            }
            false
        }
    }

    // Forbidden vertices are marked as taken by a sentinel partner.
    let mut partner = vec![usize::MAX; board.num_vertices()];
    for &v in forbidden {
        if v < partner.len() {
            partner[v] = usize::MAX - 1;
        }
    }
    let mut search = Search {
        edges: board.edges(),
        partner,
        chosen: Vec::new(),
        allowed,
        nodes: 0,
        budget,
        exhausted: false,
    };
    let found = search.run(0);
    PairingSearch {
        pairing: found.then(|| Pairing::new(search.chosen.iter().copied()).expect("distinct pair members")),
        complete: !search.exhausted,
        nodes: search.nodes,
    }
}
