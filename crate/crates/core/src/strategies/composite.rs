use std::hash::Hash;

use super::pairings::{assemble, punish};
use super::regular::{Expected, RegularPlay};
use super::sequence::StepKind;
use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::geography::{GeoOracle, GeoPlayer};
use crate::hypergraph::{Board, MbPosition, Pairing, Player};
use crate::reduction::{ReductionOutput, Variant};

/// What the strategies play on: the reduction, its bitboard and the
/// Geography oracle deciding exit arcs.
pub struct Arena<'a> {
    pub red: &'a ReductionOutput,
    pub board: Board,
    pub oracle: &'a dyn GeoOracle,
}

impl<'a> Arena<'a> {
    pub fn new(red: &'a ReductionOutput, oracle: &'a dyn GeoOracle) -> Result<Self> {
        if red.variant != Variant::Rank4 {
            return Err(Error::Precondition(format!("strategies are defined on rank4 boards, not {}", red.variant)));
        }
        Ok(Arena { red, board: red.bitboard()?, oracle })
    }

    fn choose(&self, play: &RegularPlay) -> Result<usize> {
        let arc = self
            .oracle
            .choose(play.geo())
            .ok_or_else(|| Error::Precondition("oracle returned no arc".into()))?;
        play.choice_vertex(self.red, arc)
            .ok_or_else(|| Error::Precondition(format!("oracle arc {} is not an exit here", self.red.instance.arc(arc).label)))
    }
}

/// A deterministic Maker-Breaker strategy with explicit state.
pub trait MbStrategy: Clone + Eq + Hash + Send + Sync {
    fn side(&self) -> Player;

    /// The strategy's pick in `pos`, where `last` is the opponent's latest
    /// pick, with the successor state.
    fn respond(&self, arena: &Arena, pos: MbPosition, last: Option<usize>) -> Result<(usize, Self)>;

    /// Pairing that Breaker holds on the board once it stopped following
    /// regular play.
    fn held_pairing(&self) -> Option<&Pairing> {
        None
    }

    /// Maker picks since the opponent left regular play.
    fn plies_since_deviation(&self) -> Option<u32> {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MakerStrategy {
    play: RegularPlay,
    deviation: Option<u32>,
}

impl MakerStrategy {
    pub fn new(red: &ReductionOutput) -> Self {
        MakerStrategy { play: RegularPlay::new(red), deviation: None }
    }

    pub fn play(&self) -> &RegularPlay {
        &self.play
    }

    fn observe(&mut self, arena: &Arena, b: usize) -> Result<()> {
        let conforming = match self.play.expected(arena.red)? {
            Expected::Move { mover: Player::Breaker, vertex, .. } => vertex == b,
            Expected::Choice { mover: Player::Breaker, options } => options.iter().any(|&(v, _)| v == b),
            Expected::Ended(_) => return Ok(()),
            Expected::Move { .. } | Expected::Choice { .. } => false,
        };
        if conforming {
            self.play.play(arena.red, b)
        } else {
            self.deviation = Some(0);
            Ok(())
        }
    }

    fn picked(mut self, v: usize) -> Result<(usize, Self)> {
        if let Some(k) = self.deviation.as_mut() {
            *k += 1;
        }
        Ok((v, self))
    }
}

impl MbStrategy for MakerStrategy {
    fn side(&self) -> Player {
        Player::Maker
    }

    fn respond(&self, arena: &Arena, pos: MbPosition, last: Option<usize>) -> Result<(usize, Self)> {
        let red = arena.red;
        let mut s = self.clone();
        if let (None, Some(b)) = (s.deviation, last) {
            s.observe(arena, b)?;
        }
        if let Some(v) = arena.board.threats(pos.maker, pos.breaker).first() {
            return s.picked(v);
        }
        if s.deviation.is_some() {
            let live = arena.board.live(pos.maker, pos.breaker);
            let v = arena
                .board
                .double_threat(pos.maker, pos.breaker, live)
                .ok_or_else(|| Error::Uncovered("Breaker left regular play and no double threat exists".into()))?;
            return s.picked(v);
        }
        let v = match s.play.expected(red)? {
            Expected::Move { mover: Player::Maker, vertex, .. } => vertex,
            Expected::Choice { mover: Player::Maker, .. } => arena.choose(&s.play)?,
            Expected::Ended(e) => {
                return Err(Error::Uncovered(format!(
                    "regular play ended at {} without a Maker threat",
                    red.instance.node_name(e.node)
                )))
            }
            _ => return Err(Error::Precondition("a Breaker move is pending".into())),
        };
        s.play.play(red, v)?;
        s.picked(v)
    }

    fn plies_since_deviation(&self) -> Option<u32> {
        self.deviation
    }
}

/// Breaker's composite strategy. Maker's greedy moves played out of order
/// are absorbed by reserving the greedy pair and advancing a virtual regular
/// play; other deviations are punished and answered by a pairing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BreakerStrategy {
    play: RegularPlay,
    virtual_maker: VertexSet,
    virtual_breaker: VertexSet,
    reserved: Pairing,
    held: Option<Pairing>,
    case: Option<&'static str>,
}

impl BreakerStrategy {
    pub fn new(red: &ReductionOutput) -> Self {
        BreakerStrategy {
            play: RegularPlay::new(red),
            virtual_maker: VertexSet::EMPTY,
            virtual_breaker: VertexSet::EMPTY,
            reserved: Pairing::default(),
            held: None,
            case: None,
        }
    }

    pub fn play(&self) -> &RegularPlay {
        &self.play
    }

    /// Branch of the punishment analysis that fired, if any.
    pub fn case(&self) -> Option<&'static str> {
        self.case
    }

    fn hold(&mut self, arena: &Arena, pairing: Pairing) -> Result<()> {
        let all = pairing.union(&self.reserved);
        if let Some(v) = all.overlap() {
            return Err(Error::Uncovered(format!("reserved pair clashes at {}", arena.red.name(v))));
        }
        self.held = Some(all);
        Ok(())
    }

    fn regular_reply(mut self, arena: &Arena) -> Result<(usize, Self)> {
        let red = arena.red;
        let y = match self.play.expected(red)? {
            Expected::Move { mover: Player::Breaker, vertex, .. } => vertex,
            Expected::Choice { mover: Player::Breaker, .. } => arena.choose(&self.play)?,
            _ => return Err(Error::Precondition("no Breaker move is pending".into())),
        };
        self.virtual_breaker = self.virtual_breaker.with(y);
        self.play.play(red, y)?;
        self.end_pairing(arena)?;
        Ok((y, self))
    }

    /// Takes up the end-of-play pairing once regular play ended in Bob's favour.
    fn end_pairing(&mut self, arena: &Arena) -> Result<()> {
        match self.play.end() {
            Some(e) if e.winner == GeoPlayer::Bob => {
                let p = assemble(
                    arena.red,
                    &self.play,
                    Some(e.node),
                    &Default::default(),
                    &[],
                    self.virtual_maker,
                    self.virtual_breaker,
                )?;
                self.hold(arena, p)
            }
            _ => Ok(()),
        }
    }

    fn finish(mut self, pos: MbPosition, reply: usize) -> Result<(usize, Self)> {
        let picked = pos.picked().with(reply);
        for held in self.held.iter_mut() {
            held.retain(|a, b| !picked.contains(a) && !picked.contains(b));
        }
        self.reserved.retain(|a, b| !picked.contains(a) && !picked.contains(b));
        Ok((reply, self))
    }
}

impl MbStrategy for BreakerStrategy {
    fn side(&self) -> Player {
        Player::Breaker
    }

    fn respond(&self, arena: &Arena, pos: MbPosition, last: Option<usize>) -> Result<(usize, Self)> {
        let red = arena.red;
        let d = last.ok_or_else(|| Error::Precondition("Breaker answers a Maker pick".into()))?;
        let unpicked = pos.unpicked(&arena.board);
        let mut s = self.clone();
        if let Some(held) = &s.held {
            let reply = held
                .partner(d)
                .filter(|&p| unpicked.contains(p))
                .or_else(|| unpicked.first())
                .ok_or_else(|| Error::Precondition("board is full".into()))?;
            return s.finish(pos, reply);
        }
        if let Some(y) = s.reserved.partner(d) {
            return s.finish(pos, y);
        }
        loop {
            match s.play.expected(red)? {
                Expected::Move { mover: Player::Maker, vertex: x, .. } if x == d => {
                    s.virtual_maker = s.virtual_maker.with(d);
                    s.play.play(red, d)?;
                    let (y, s) = s.regular_reply(arena)?;
                    return s.finish(pos, y);
                }
                Expected::Choice { mover: Player::Maker, options } if options.iter().any(|&(v, _)| v == d) => {
                    s.virtual_maker = s.virtual_maker.with(d);
                    s.play.play(red, d)?;
                    let (y, s) = s.regular_reply(arena)?;
                    return s.finish(pos, y);
                }
                Expected::Move { mover: Player::Maker, vertex: x, kind: StepKind::Greedy } => {
                    let mut probe = s.play.clone();
                    probe.play(red, x)?;
                    let y = match probe.expected(red)? {
                        Expected::Move { mover: Player::Breaker, vertex, .. } => vertex,
                        _ => return Err(Error::Precondition("greedy move without a forced reply".into())),
                    };
                    if !arena.board.greedy_pair_holds(s.virtual_maker, s.virtual_breaker, x, y) {
                        return Err(Error::Uncovered(format!(
                            "({}, {}) is not a greedy pair",
                            red.name(x),
                            red.name(y)
                        )));
                    }
                    probe.play(red, y)?;
                    s.play = probe;
                    s.virtual_maker = s.virtual_maker.with(x);
                    s.virtual_breaker = s.virtual_breaker.with(y);
                    s.reserved.insert(x, y);
                    s.end_pairing(arena)?;
                    if let Some(held) = &s.held {
                        let reply = held.partner(d).filter(|&p| unpicked.contains(p)).or_else(|| unpicked.first());
                        let reply = reply.ok_or_else(|| Error::Precondition("board is full".into()))?;
                        return s.finish(pos, reply);
                    }
                    if let Some(p) = s.reserved.partner(d) {
                        return s.finish(pos, p);
                    }
                }
                Expected::Move { mover: Player::Maker, .. } | Expected::Choice { mover: Player::Maker, .. } => {
                    let plan = punish(red, &arena.board, &s.play, s.virtual_maker, s.virtual_breaker, d)?;
                    s.case = Some(plan.case);
                    s.hold(arena, plan.pairing)?;
                    return s.finish(pos, plan.reply);
                }
                Expected::Ended(e) => {
                    return Err(Error::Uncovered(format!(
                        "regular play ended at {} in Maker's favour",
                        red.instance.node_name(e.node)
                    )))
                }
                _ => return Err(Error::Precondition("a Breaker move is pending".into())),
            }
        }
    }

    fn held_pairing(&self) -> Option<&Pairing> {
        self.held.as_ref()
    }
}

/// Replays `moves` (alternating, Maker first) with `strategy` on its side,
/// checking that the strategy's own moves match, and returns the strategy's
/// next pick if it is to move.
pub fn replay<S: MbStrategy>(arena: &Arena, strategy: &S, moves: &[usize]) -> Result<Option<usize>> {
    let mut pos = MbPosition::default();
    let mut state = strategy.clone();
    let mut last = None;
    for &v in moves {
        if pos.to_move() == state.side() {
            let (w, next) = state.respond(arena, pos, last)?;
            if w != v {
                return Err(Error::Precondition(format!(
                    "strategy plays {} where the line has {}",
                    arena.red.name(w),
                    arena.red.name(v)
                )));
            }
            state = next;
        }
        if !pos.unpicked(&arena.board).contains(v) {
            return Err(Error::Precondition(format!("{} is already picked", arena.red.name(v))));
        }
        pos = pos.play(v);
        last = Some(v);
    }
    if pos.to_move() == state.side() {
        Ok(Some(state.respond(arena, pos, last)?.0))
    } else {
        Ok(None)
    }
}
