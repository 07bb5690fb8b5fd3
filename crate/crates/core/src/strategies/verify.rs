use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

use super::composite::{Arena, BreakerStrategy, MakerStrategy, MbStrategy};
use crate::error::{Error, Result};
use crate::geography::GeoOracle;
use crate::hypergraph::{MbPosition, Player};
use crate::reduction::ReductionOutput;
use crate::solvers::table::{Counter, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub budget: Option<u64>,
    pub workers: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { budget: None, workers: 1 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LeafCounts {
    /// Maker filled an edge.
    pub maker_filled: u64,
    /// Breaker held a pairing of the updated board.
    pub breaker_pairing: u64,
    /// No live residue or no unpicked vertex remained.
    pub breaker_exhausted: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Alternating picks from the initial position, Maker first.
    pub moves: Vec<String>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrategyReport {
    pub side: Player,
    pub passed: bool,
    pub nodes: u64,
    pub table_size: usize,
    pub leaves: LeafCounts,
    /// Largest number of Maker picks between a Breaker deviation and the win.
    pub max_plies_after_deviation: Option<u32>,
    pub counterexample: Option<Counterexample>,
    /// Wall time; left out of serialized reports so they stay reproducible.
    #[serde(skip)]
    pub elapsed_ms: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Summary {
    ok: bool,
    max_plies: Option<u32>,
}

type Key<S> = (u128, u128, Option<usize>, S);

struct Explorer<'a, S, T> {
    arena: &'a Arena<'a>,
    side: Player,
    table: &'a T,
    counter: &'a Counter,
    leaves: [AtomicU64; 3],
    failure: Mutex<Option<Counterexample>>,
    parallel: bool,
    _marker: std::marker::PhantomData<S>,
}

impl<S: MbStrategy, T: Table<Key<S>, Summary> + Sync> Explorer<'_, S, T> {
    fn fail(&self, path: &[usize], reason: String) -> Summary {
        let mut slot = self.failure.lock().unwrap();
        if slot.is_none() {
            let moves = path.iter().map(|&v| self.arena.red.name(v).to_string()).collect();
            *slot = Some(Counterexample { moves, reason });
        }
        Summary { ok: false, max_plies: None }
    }

    fn leaf(&self, kind: usize, ok: bool, max_plies: Option<u32>) -> Summary {
        self.leaves[kind].fetch_add(1, Ordering::Relaxed);
        Summary { ok, max_plies }
    }

    fn explore(&self, pos: MbPosition, last: Option<usize>, state: &S, path: &mut Vec<usize>) -> Result<Summary> {
        let board = &self.arena.board;
        if pos.maker_won(board) {
            let s = self.leaf(0, self.side == Player::Maker, state.plies_since_deviation());
            if !s.ok {
                return Ok(self.fail(path, "Maker filled an edge".into()));
            }
            return Ok(s);
        }
        if self.side == Player::Breaker && pos.to_move() == Player::Maker {
            if let Some(p) = state.held_pairing() {
                if board.pairing_holds(p, pos.maker, pos.breaker) {
                    return Ok(self.leaf(1, true, None));
                }
                let missed = board
                    .uncovered_residue(p, pos.maker, pos.breaker)
                    .map(|r| r.iter().map(|v| self.arena.red.name(v)).collect::<Vec<_>>().join(","));
                return Ok(self.fail(path, format!("held pairing misses residue {{{}}}", missed.unwrap_or_default())));
            }
        }
        let unpicked = pos.unpicked(board);
        if unpicked.is_empty() || board.residuals(pos.maker, pos.breaker).next().is_none() {
            let ok = self.side == Player::Breaker;
            if !ok {
                return Ok(self.fail(path, "Maker can no longer fill an edge".into()));
            }
            return Ok(self.leaf(2, ok, None));
        }
        let key = (pos.maker.0, pos.breaker.0, last, state.clone());
        if let Some(s) = self.table.get(&key) {
            return Ok(s);
        }
        if self.failure.lock().unwrap().is_some() {
            return Ok(Summary { ok: false, max_plies: None });
        }
        self.counter.tick()?;
        let summary = if pos.to_move() == self.side {
            match state.respond(self.arena, pos, last) {
                Ok((v, next)) if unpicked.contains(v) => {
                    path.push(v);
                    let s = self.explore(pos.play(v), Some(v), &next, path);
                    path.pop();
                    s?
                }
                Ok((v, _)) => self.fail(path, format!("strategy picks taken vertex {}", self.arena.red.name(v))),
                Err(e @ Error::BudgetExhausted { .. }) => return Err(e),
                Err(e) => self.fail(path, e.to_string()),
            }
        } else {
            self.opponent(pos, state, unpicked.iter().collect(), path)?
        };
        if summary.ok {
            self.table.insert(key, summary);
        }
        Ok(summary)
    }

    fn opponent(&self, pos: MbPosition, state: &S, moves: Vec<usize>, path: &mut Vec<usize>) -> Result<Summary> {
        #[cfg(feature = "parallel")]
        if self.parallel && path.len() < 2 {
            use rayon::prelude::*;
            let base: &Vec<usize> = path;
            let results: Result<Vec<Summary>> = moves
                .par_iter()
                .map(|&v| {
                    let mut p = base.clone();
                    p.push(v);
                    self.explore(pos.play(v), Some(v), state, &mut p)
                })
                .collect();
            return Ok(combine(results?));
        }
        let _ = self.parallel;
        let mut out = Vec::with_capacity(moves.len());
        for v in moves {
            path.push(v);
            let s = self.explore(pos.play(v), Some(v), state, path);
            path.pop();
            let s = s?;
            out.push(s);
            if !s.ok {
                break;
            }
        }
        Ok(combine(out))
    }
}

fn combine(parts: Vec<Summary>) -> Summary {
    Summary {
        ok: parts.iter().all(|s| s.ok),
        max_plies: parts.iter().filter_map(|s| s.max_plies).max(),
    }
}

fn run<S: MbStrategy>(arena: &Arena, initial: S, opts: &VerifyOptions) -> Result<StrategyReport> {
    let started = Instant::now();
    let counter = Counter::new(opts.budget);
    let side = initial.side();
    macro_rules! go {
        ($table:expr, $parallel:expr) => {{
            let table = $table;
            let ex = Explorer {
                arena,
                side,
                table: &table,
                counter: &counter,
                leaves: Default::default(),
                failure: Mutex::new(None),
                parallel: $parallel,
                _marker: std::marker::PhantomData,
            };
            let summary = ex.explore(MbPosition::default(), None, &initial, &mut Vec::new())?;
            let [a, b, c] = &ex.leaves;
            let leaves = LeafCounts {
                maker_filled: a.load(Ordering::Relaxed),
                breaker_pairing: b.load(Ordering::Relaxed),
                breaker_exhausted: c.load(Ordering::Relaxed),
            };
            let failure = ex.failure.into_inner().unwrap();
            StrategyReport {
                side,
                passed: summary.ok && failure.is_none(),
                nodes: counter.get(),
                table_size: Table::len(&table),
                leaves,
                max_plies_after_deviation: summary.max_plies,
                counterexample: failure,
                elapsed_ms: started.elapsed().as_millis() as u64,
            }
        }};
    }
    #[cfg(feature = "parallel")]
    if opts.workers > 1 {
        return crate::solvers::table::with_pool(opts.workers, || -> Result<StrategyReport> {
            Ok(go!(dashmap::DashMap::new(), true))
        })?;
    }
    Ok(go!(Mutex::new(HashMap::new()), false))
}

/// Explores every opponent line against `side`'s composite strategy on a
/// rank4 reduction and reports whether each leaf is a win for `side`.
pub fn verify_mb_strategy(
    red: &ReductionOutput,
    side: Player,
    oracle: &dyn GeoOracle,
    opts: &VerifyOptions,
) -> Result<StrategyReport> {
    let arena = Arena::new(red, oracle)?;
    match side {
        Player::Maker => run(&arena, MakerStrategy::new(red), opts),
        Player::Breaker => run(&arena, BreakerStrategy::new(red), opts),
    }
}
