use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::pairings::assemble;
use super::regular::{Expected, RegularPlay};
use super::sequence::StepKind;
use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::geography::{GeoOracle, GeoPlayer, NodeType};
use crate::hypergraph::{Board, MmPosition, Player};
use crate::reduction::{ReductionOutput, Variant};

/// Tally for one checked property.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClaimTally {
    pub checks: u64,
    /// First few violations, for diagnosis.
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MmReport {
    pub passed: bool,
    pub claims: BTreeMap<&'static str, ClaimTally>,
    /// The simulated line, FP first.
    pub moves: Vec<String>,
    /// How regular play ended: the Geography winner.
    pub winner: Option<GeoPlayer>,
}

impl MmReport {
    fn check(&mut self, claim: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let t = self.claims.entry(claim).or_default();
        t.checks += 1;
        if !ok && t.failures.len() < 8 {
            t.failures.push(detail());
        }
    }

    fn finish(mut self) -> Self {
        self.passed = self.claims.values().all(|t| t.failures.is_empty());
        self
    }
}

fn names(red: &ReductionOutput, s: VertexSet) -> String {
    let v: Vec<&str> = s.iter().map(|v| red.name(v)).collect();
    format!("{{{}}}", v.join(","))
}

/// Whether `r` is a `{p, q, z}` residue at an exit of an M12 gadget.
fn exit_triple(red: &ReductionOutput, r: VertexSet) -> bool {
    red.gadgets.iter().filter(|g| g.node_type == NodeType::M12).any(|g| {
        ['b', 'c'].iter().any(|&slot| {
            let (p, q) = red.junctions[g.slot_arc(slot)];
            let z = g.v(if slot == 'b' { "zb" } else { "zc" });
            r == VertexSet::from_indices([p, q, z])
        })
    })
}

/// Simulates regular play in the Maker-Maker convention, FP as Maker and SP
/// as Breaker, with exit choices from `oracle`, and checks the no-threat,
/// size, greedy and end-of-play properties along the way.
pub fn verify_mm_claims(red: &ReductionOutput, oracle: &dyn GeoOracle) -> Result<MmReport> {
    let board = red.bitboard()?;
    let opening = if red.variant == Variant::MmUniform { 4 } else { 0 };
    if red.variant == Variant::MbUniform {
        return Err(Error::Precondition("the Maker-Maker claims concern rank4 and mmUniform boards".into()));
    }
    let mut rep = MmReport::default();
    let mut play = RegularPlay::new(red);
    let mut pos = MmPosition::default();
    let mut k = 0usize;
    loop {
        let expected = play.expected(red)?;
        let (mover, v, kind) = match expected {
            Expected::Ended(e) => {
                rep.winner = Some(e.winner);
                end_checks(red, &board, &play, pos, e.node, e.winner, &mut rep)?;
                break;
            }
            Expected::Move { mover, vertex, kind } => (mover, vertex, kind),
            Expected::Choice { mover, .. } => {
                let arc = oracle
                    .choose(play.geo())
                    .ok_or_else(|| Error::Precondition("oracle returned no arc".into()))?;
                let v = play
                    .choice_vertex(red, arc)
                    .ok_or_else(|| Error::Precondition("oracle arc is not an exit".into()))?;
                (mover, v, StepKind::Choice)
            }
        };
        let (red_fam, blue_fam) = (pos.first, pos.second);
        if k >= opening {
            match mover {
                Player::Breaker => {
                    let holding: Vec<VertexSet> = board.residuals(blue_fam, red_fam).filter(|r| r.contains(v)).collect();
                    let g = red.gadget(play.active());
                    let exception = g.node_type == NodeType::M12
                        && (v == g.v("z1") || v == g.v("z2"))
                        && holding.len() == 1
                        && holding[0].len() == 4
                        && exit_triple(red, holding[0].without(v));
                    rep.check("sp_no_blue_threat", holding.is_empty() || exception, || {
                        format!("move {}: {} lies in blue {}", k + 1, red.name(v), names(red, holding[0]))
                    });
                    if kind == StepKind::Forced {
                        let threats = board.threats(red_fam, blue_fam);
                        rep.check("sp_forced", threats.contains(v), || {
                            format!("move {}: {} is not a red singleton", k + 1, red.name(v))
                        });
                    }
                }
                Player::Maker if kind == StepKind::Greedy => {
                    let mut probe = play.clone();
                    probe.play(red, v)?;
                    if let Expected::Move { vertex: y, .. } = probe.expected(red)? {
                        rep.check("fp_greedy_red", board.greedy_pair_holds(red_fam, blue_fam, v, y), || {
                            format!("move {}: ({}, {}) is not a red greedy pair", k + 1, red.name(v), red.name(y))
                        });
                        let blue_y = board.residuals(blue_fam, red_fam).any(|r| r.contains(y) && !r.contains(v));
                        let blue_single = !board.threats(blue_fam, red_fam.with(v)).is_empty();
                        rep.check("fp_greedy_blue", !blue_y && !blue_single, || {
                            format!("move {}: SP has a blue answer to {}", k + 1, red.name(v))
                        });
                    }
                }
                Player::Maker => {}
            }
        }
        play.play(red, v)?;
        pos = pos.play(v);
        k += 1;
        rep.moves.push(red.name(v).to_string());
        let filled = board.filled(pos.first, pos.second) || board.filled(pos.second, pos.first);
        rep.check("no_fill", !filled, || format!("move {k}: an edge is filled"));
        if k >= 3 {
            let bad = board
                .residuals(pos.second, pos.first)
                .find(|&r| !(r.len() == 4 || r.len() == 3 && exit_triple(red, r)));
            rep.check("blue_sizes", bad.is_none(), || {
                format!("move {k}: blue residue {}", names(red, bad.unwrap()))
            });
        }
    }
    Ok(rep.finish())
}

fn end_checks(
    red: &ReductionOutput,
    board: &Board,
    play: &RegularPlay,
    pos: MmPosition,
    node: usize,
    winner: GeoPlayer,
    rep: &mut MmReport,
) -> Result<()> {
    let (f, s) = (pos.first, pos.second);
    match winner {
        GeoPlayer::Bob => {
            let sp = assemble(red, play, Some(node), &Default::default(), &[], f, s);
            let sp = match sp {
                Ok(p) => p,
                Err(e) => {
                    rep.check("sp_draw_pairing", false, || e.to_string());
                    return Ok(());
                }
            };
            rep.check("sp_draw_pairing", board.pairing_holds(&sp, f, s), || {
                format!("red residue {} is unpaired", names(red, board.uncovered_residue(&sp, f, s).unwrap_or_default()))
            });
            let mut fp = sp.clone();
            for r in board.residuals(s, f).filter(|&r| r.len() == 3) {
                let (p, q) = pair_of(red, r);
                if !fp.contains_pair(p, q) {
                    fp.insert(p, q);
                }
            }
            rep.check("fp_draw_pairing", board.pairing_holds(&fp, s, f), || {
                format!("blue residue {} is unpaired", names(red, board.uncovered_residue(&fp, s, f).unwrap_or_default()))
            });
        }
        GeoPlayer::Alice => {
            rep.check("fp_wins_next", !board.threats(f, s).is_empty(), || "no red singleton at the end".into());
            let small = board.residuals(s, f).find(|r| r.len() <= 2);
            rep.check("sp_no_counter", small.is_none(), || format!("blue residue {}", names(red, small.unwrap())));
        }
    }
    Ok(())
}

/// The junction pair inside a `{p, q, z}` residue.
fn pair_of(red: &ReductionOutput, r: VertexSet) -> (usize, usize) {
    let js: Vec<usize> = r.iter().filter(|&v| red.twin(v).is_some_and(|t| r.contains(t))).collect();
    (js[0], js[1])
}

/// Checks the opening of the mmUniform start gadget: `pa`/`y1` and `qa`/`y2`
/// are greedy rounds for FP, exhaustively over SP's replies, and the position
/// after them matches the rank4 board's up to isolated vertices.
pub fn mm_uniform_opening(red: &ReductionOutput) -> Result<MmReport> {
    if red.variant != Variant::MmUniform {
        return Err(Error::Precondition("opening analysis needs the mmUniform board".into()));
    }
    let board = red.bitboard()?;
    let s = red.gadget(red.instance.start());
    let mut rep = MmReport::default();
    let z = |range: std::ops::RangeInclusive<usize>| VertexSet::from_indices(range.map(|i| s.v(&format!("z{i}"))));
    let rounds = [(s.v("pa"), s.v("y1"), z(1..=5)), (s.v("qa"), s.v("y2"), z(6..=10))];
    let mut pos = MmPosition::default();
    for (i, &(x, y, zs)) in rounds.iter().enumerate() {
        let covered = board.edges().iter().filter(|e| e.contains(y)).all(|e| e.contains(x));
        rep.check("opening_y_inside_x", covered, || format!("an edge holds {} without {}", red.name(y), red.name(x)));
        let after_x = pos.play(x);
        for d in after_x.unpicked(&board).iter().filter(|&d| d != y) {
            let p1 = after_x.play(d).play(y);
            for d2 in p1.unpicked(&board).iter() {
                let p2 = p1.play(d2);
                let free = zs.difference(p2.first.union(p2.second));
                rep.check("opening_three_free", free.len() >= 3, || {
                    format!("round {}: SP {} then {} leaves {} free", i + 1, red.name(d), red.name(d2), free.len())
                });
                let mate = free.iter().any(|v| board.threats(p2.first.with(v), p2.second).len() >= 2);
                let sp_safe = board.residuals(p2.second, p2.first).all(|r| r.len() >= 2);
                rep.check("opening_mate_in_two", mate && sp_safe, || {
                    format!("round {}: SP {} then {}: no forced win", i + 1, red.name(d), red.name(d2))
                });
            }
        }
        pos = after_x.play(y);
        rep.moves.push(red.name(x).to_string());
        rep.moves.push(red.name(y).to_string());
    }
    let rank4 = crate::reduction::reduce(&red.instance, Variant::Rank4)?;
    let b4 = rank4.bitboard()?;
    let map = |v: usize| rank4.vertex(red.name(v));
    let p4 = MmPosition {
        first: VertexSet::from_indices(pos.first.iter().map(map).collect::<Result<Vec<_>>>()?),
        second: VertexSet::from_indices(pos.second.iter().map(map).collect::<Result<Vec<_>>>()?),
    };
    let family = |b: &Board, r: &ReductionOutput, prog: VertexSet, kill: VertexSet| -> BTreeSet<Vec<String>> {
        b.residuals(prog, kill).map(|e| e.iter().map(|v| r.name(v).to_string()).collect()).collect()
    };
    let same_red = family(&board, red, pos.first, pos.second) == family(&b4, &rank4, p4.first, p4.second);
    let same_blue = family(&board, red, pos.second, pos.first) == family(&b4, &rank4, p4.second, p4.first);
    rep.check("opening_same_families", same_red && same_blue, || "updated families differ from rank4".into());
    let live = board.live(pos.first, pos.second).union(board.live(pos.second, pos.first));
    let zs = z(1..=10);
    rep.check("opening_isolated_z", live.is_disjoint(zs), || "a fresh vertex is still live".into());
    Ok(rep.finish())
}
