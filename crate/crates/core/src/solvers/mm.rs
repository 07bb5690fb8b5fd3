use std::cell::RefCell;
use std::collections::HashMap;

use super::table::{Counter, Table};
use super::{Rules, SolveOptions, SolveReport};
use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::hypergraph::{Board, MmPosition, Outcome};

type Key = (u128, u128);

pub(crate) struct MmSearch<'a, T> {
    pub board: &'a Board,
    pub table: &'a T,
    pub counter: &'a Counter,
    pub rules: Rules,
}

enum Node {
    Terminal(i8),
    Decided(i8, usize),
    Branch(VertexSet),
}

fn split(f: VertexSet, s: VertexSet) -> (VertexSet, VertexSet) {
    if f.len() == s.len() {
        (f, s)
    } else {
        (s, f)
    }
}

fn play(f: VertexSet, s: VertexSet, v: usize) -> (VertexSet, VertexSet) {
    if f.len() == s.len() {
        (f.with(v), s)
    } else {
        (f, s.with(v))
    }
}

impl<T: Table<Key, i8>> MmSearch<'_, T> {
    fn classify(&self, f: VertexSet, s: VertexSet) -> Node {
        let unpicked = self.board.all().difference(f.union(s));
        if unpicked.is_empty() {
            return Node::Terminal(0);
        }
        let (mine, theirs) = split(f, s);
        let mut live = VertexSet::EMPTY;
        let mut my_singles = VertexSet::EMPTY;
        for r in self.board.residuals(mine, theirs) {
            live = live.union(r);
            if r.len() == 1 {
                my_singles = my_singles.union(r);
            }
        }
        let mut their_singles = VertexSet::EMPTY;
        for r in self.board.residuals(theirs, mine) {
            live = live.union(r);
            if r.len() == 1 {
                their_singles = their_singles.union(r);
            }
        }
        if self.rules.forced_singletons && !my_singles.is_empty() {
            return Node::Decided(1, my_singles.first().unwrap());
        }
        if self.rules.double_threat && my_singles.is_empty() && their_singles.len() >= 2 {
            return Node::Decided(-1, their_singles.first().unwrap());
        }
        if self.rules.forced_singletons && their_singles.len() == 1 {
            return Node::Branch(their_singles);
        }
        if self.rules.dead_vertices {
            if live.is_empty() {
                return Node::Terminal(0);
            }
            return Node::Branch(live);
        }
        Node::Branch(unpicked)
    }

    fn child(&self, f: VertexSet, s: VertexSet, v: usize) -> Result<i8> {
        let (mine, theirs) = split(f, s);
        if self.board.filled(mine.with(v), theirs) {
            return Ok(1);
        }
        let (f2, s2) = play(f, s, v);
        Ok(-self.value(f2, s2)?)
    }

    /// Value of `(f, s)` for the player to move: 1 win, 0 draw, -1 loss.
    pub fn value(&self, f: VertexSet, s: VertexSet) -> Result<i8> {
        let cands = match self.classify(f, s) {
            Node::Terminal(v) | Node::Decided(v, _) => return Ok(v),
            Node::Branch(c) => c,
        };
        let key = (f.0, s.0);
        if let Some(v) = self.table.get(&key) {
            return Ok(v);
        }
        self.counter.tick()?;
        let mut best = -1;
        for v in cands.iter() {
            best = best.max(self.child(f, s, v)?);
            if best == 1 {
                break;
            }
        }
        self.table.insert(key, best);
        Ok(best)
    }

    pub fn principal_variation(&self, mut f: VertexSet, mut s: VertexSet) -> Result<Vec<usize>> {
        let mut line = Vec::new();
        loop {
            let next = match self.classify(f, s) {
                Node::Terminal(_) => break,
                Node::Decided(_, v) => v,
                Node::Branch(cands) => {
                    let target = self.value(f, s)?;
                    let mut pick = cands.first().unwrap();
                    for v in cands.iter() {
                        if self.child(f, s, v)? == target {
                            pick = v;
                            break;
                        }
                    }
                    pick
                }
            };
            line.push(next);
            let (mine, theirs) = split(f, s);
            let done = self.board.filled(mine.with(next), theirs);
            (f, s) = play(f, s, next);
            if done {
                break;
            }
        }
        Ok(line)
    }
}

pub(crate) fn solve(board: &Board, pos: MmPosition, opts: &SolveOptions) -> Result<SolveReport> {
    let red = board.filled(pos.first, pos.second);
    let blue = board.filled(pos.second, pos.first);
    if red && blue {
        return Err(Error::Precondition("both players have filled an edge".into()));
    }
    if red || blue {
        let outcome = if red { Outcome::FpWin } else { Outcome::SpWin };
        return Ok(SolveReport { outcome, nodes: 0, table_size: 0, principal_variation: Vec::new() });
    }
    let counter = Counter::new(opts.budget);
    let (f, s) = (pos.first, pos.second);
    #[cfg(feature = "parallel")]
    if opts.workers > 1 {
        let table = dashmap::DashMap::new();
        let search = MmSearch { board, table: &table, counter: &counter, rules: opts.rules };
        let (value, pv) = super::table::with_pool(opts.workers, || -> Result<(i8, Vec<usize>)> {
            use rayon::prelude::*;
            let value = match search.classify(f, s) {
                Node::Terminal(v) | Node::Decided(v, _) => v,
                Node::Branch(cands) => {
                    let children: Vec<usize> = cands.iter().collect();
                    let win = super::table::race(&counter, &children, |v| search.child(f, s, v), |c| c == 1)?;
                    let best = match win {
                        Some(v) => v,
                        // No winning child: the remaining values are mostly table hits.
                        None => {
                            let vals: Result<Vec<i8>> = children.par_iter().map(|&v| search.child(f, s, v)).collect();
                            vals?.into_iter().max().unwrap_or(-1)
                        }
                    };
                    search.table.insert((f.0, s.0), best);
                    best
                }
            };
            Ok((value, search.principal_variation(f, s)?))
        })??;
        return Ok(report(board, pos, value, counter.get(), Table::len(&table), pv));
    }
    let table = RefCell::new(HashMap::new());
    let search = MmSearch { board, table: &table, counter: &counter, rules: opts.rules };
    let value = search.value(f, s)?;
    let pv = search.principal_variation(f, s)?;
    Ok(report(board, pos, value, counter.get(), table.len(), pv))
}

fn report(board: &Board, pos: MmPosition, value: i8, nodes: u64, table_size: usize, pv: Vec<usize>) -> SolveReport {
    let fp_value = if pos.first.len() == pos.second.len() { value } else { -value };
    let outcome = match fp_value {
        1 => Outcome::FpWin,
        0 => Outcome::Draw,
        _ => Outcome::SpWin,
    };
    SolveReport {
        outcome,
        nodes,
        table_size,
        principal_variation: pv.into_iter().map(|v| board.name(v).to_string()).collect(),
    }
}
