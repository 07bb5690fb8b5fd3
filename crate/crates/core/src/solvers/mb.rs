use std::cell::RefCell;
use std::collections::HashMap;

use super::table::{Counter, Table};
use super::{Rules, SolveOptions, SolveReport};
use crate::bitset::VertexSet;
use crate::error::Result;
use crate::hypergraph::{Board, MbPosition, Outcome};

type Key = (u128, u128);

pub(crate) struct MbSearch<'a, T> {
    pub board: &'a Board,
    pub table: &'a T,
    pub counter: &'a Counter,
    pub rules: Rules,
}

enum Node {
    Terminal(bool),
    /// Win decided by a reduction rule; the vertex is a move realizing it.
    Decided(bool, usize),
    Branch(VertexSet),
}

impl<T: Table<Key, bool>> MbSearch<'_, T> {
    fn classify(&self, m: VertexSet, b: VertexSet) -> Node {
        let mut live = VertexSet::EMPTY;
        let mut singles = VertexSet::EMPTY;
        let mut any = false;
        for r in self.board.residuals(m, b) {
            if r.is_empty() {
                return Node::Terminal(true);
            }
            any = true;
            live = live.union(r);
            if r.len() == 1 {
                singles = singles.union(r);
            }
        }
        let unpicked = self.board.all().difference(m.union(b));
        if !any || unpicked.is_empty() {
            return Node::Terminal(false);
        }
        let maker_turn = m.len() == b.len();
        let pool = if self.rules.dead_vertices { live } else { unpicked };
        if maker_turn {
            if self.rules.forced_singletons && !singles.is_empty() {
                return Node::Decided(true, singles.first().unwrap());
            }
            Node::Branch(pool)
        } else {
            if self.rules.double_threat && singles.len() >= 2 {
                return Node::Decided(true, singles.first().unwrap());
            }
            if self.rules.forced_singletons && singles.len() == 1 {
                return Node::Branch(singles);
            }
            Node::Branch(pool)
        }
    }

    /// Whether Maker wins from `(m, b)` with optimal play.
    pub fn value(&self, m: VertexSet, b: VertexSet) -> Result<bool> {
        let cands = match self.classify(m, b) {
            Node::Terminal(v) | Node::Decided(v, _) => return Ok(v),
            Node::Branch(c) => c,
        };
        let key = (m.0, b.0);
        if let Some(v) = self.table.get(&key) {
            return Ok(v);
        }
        self.counter.tick()?;
        let maker_turn = m.len() == b.len();
        let mut result = !maker_turn;
        for v in cands.iter() {
            let child = if maker_turn { self.value(m.with(v), b)? } else { self.value(m, b.with(v))? };
            if child == maker_turn {
                result = maker_turn;
                break;
            }
        }
        self.table.insert(key, result);
        Ok(result)
    }

    /// One optimal line from `(m, b)`.
    pub fn principal_variation(&self, mut m: VertexSet, mut b: VertexSet) -> Result<Vec<usize>> {
        let mut line = Vec::new();
        loop {
            let maker_turn = m.len() == b.len();
            let next = match self.classify(m, b) {
                Node::Terminal(_) => break,
                Node::Decided(_, v) => v,
                Node::Branch(cands) => {
                    let target = self.value(m, b)?;
                    let mut pick = cands.first().unwrap();
                    for v in cands.iter() {
                        let child = if maker_turn { self.value(m.with(v), b)? } else { self.value(m, b.with(v))? };
                        if child == target {
                            pick = v;
                            break;
                        }
                    }
                    pick
                }
            };
            line.push(next);
            if maker_turn {
                m = m.with(next);
            } else {
                b = b.with(next);
            }
        }
        Ok(line)
    }
}

pub(crate) fn solve(board: &Board, pos: MbPosition, opts: &SolveOptions) -> Result<SolveReport> {
    let counter = Counter::new(opts.budget);
    #[cfg(feature = "parallel")]
    if opts.workers > 1 {
        let table = dashmap::DashMap::new();
        let search = MbSearch { board, table: &table, counter: &counter, rules: opts.rules };
        let (maker, pv) = super::table::with_pool(opts.workers, || -> Result<(bool, Vec<usize>)> {
            let m = pos.maker;
            let b = pos.breaker;
            let maker_turn = m.len() == b.len();
            let value = match search.classify(m, b) {
                Node::Terminal(v) | Node::Decided(v, _) => v,
                Node::Branch(cands) => {
                    let children: Vec<usize> = cands.iter().collect();
                    let eval = |v| if maker_turn { search.value(m.with(v), b) } else { search.value(m, b.with(v)) };
                    let value = super::table::race(&counter, &children, eval, |c| c == maker_turn)?.unwrap_or(!maker_turn);
                    search.table.insert((m.0, b.0), value);
                    value
                }
            };
            Ok((value, search.principal_variation(m, b)?))
        })??;
        return Ok(report(board, maker, counter.get(), Table::len(&table), pv));
    }
    let table = RefCell::new(HashMap::new());
    let search = MbSearch { board, table: &table, counter: &counter, rules: opts.rules };
    let maker = search.value(pos.maker, pos.breaker)?;
    let pv = search.principal_variation(pos.maker, pos.breaker)?;
    Ok(report(board, maker, counter.get(), table.len(), pv))
}

fn report(board: &Board, maker: bool, nodes: u64, table_size: usize, pv: Vec<usize>) -> SolveReport {
    SolveReport {
        outcome: if maker { Outcome::MakerWin } else { Outcome::BreakerWin },
        nodes,
        table_size,
        principal_variation: pv.into_iter().map(|v| board.name(v).to_string()).collect(),
    }
}
