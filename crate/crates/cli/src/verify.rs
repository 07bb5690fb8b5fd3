use clap::ValueEnum;
use serde::Serialize;

use posgame::geography::{solve_geo, GeoInstance, GeoPlayer, GeoSolution, OptimalOracle};
use posgame::reduction::{check_gadget_claims, reduce, ClaimEntry, Variant};
use posgame::solvers::{solve_mb, solve_mm, SolveOptions};
use posgame::strategies::{
    mm_uniform_opening, punishment_sweep, verify_mb_strategy, verify_mm_claims, MmReport, StrategyReport, SweepReport,
    VerifyOptions,
};
use posgame::{Outcome, Player};

use crate::Failure;

/// Boards up to these sizes are also solved by full search. Proving a
/// Maker-Maker draw visits far more positions than a Maker-Breaker search.
const MB_SOLVE_LIMIT: usize = 24;
const MM_SOLVE_LIMIT: usize = 18;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Gadgets,
    Mb,
    Mm,
    All,
}

#[derive(Serialize)]
pub struct GadgetSuite {
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<ClaimEntry>,
}

#[derive(Serialize)]
pub struct MbSuite {
    /// The Geography winner's side must win at every leaf, the other side
    /// must not.
    pub maker: StrategyReport,
    pub breaker: StrategyReport,
    pub punishments: SweepReport,
}

#[derive(Serialize)]
pub struct MmSuite {
    pub rank4: MmReport,
    pub mm_uniform_opening: MmReport,
    pub mm_uniform: MmReport,
}

#[derive(Serialize)]
pub struct Equivalence {
    pub vertices: usize,
    pub maker_breaker: Option<Outcome>,
    pub maker_maker: Option<Outcome>,
    pub consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub failed: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geography: Option<GeoSolution>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gadgets: Option<GadgetSuite>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maker_breaker: Option<MbSuite>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maker_maker: Option<MmSuite>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalence: Option<Equivalence>,
}

pub fn run(inst: Option<&GeoInstance>, suite: Suite, budget: Option<u64>, workers: usize) -> Result<VerifyReport, Failure> {
    let mut report = VerifyReport {
        passed: true,
        failed: Vec::new(),
        geography: None,
        gadgets: None,
        maker_breaker: None,
        maker_maker: None,
        equivalence: None,
    };
    let fail = |report: &mut VerifyReport, what: &str| report.failed.push(what.to_string());
    if matches!(suite, Suite::Gadgets | Suite::All) {
        let claims = check_gadget_claims();
        let failures: Vec<ClaimEntry> = claims.failures().cloned().collect();
        if !claims.passed {
            fail(&mut report, "gadgets");
        }
        report.gadgets = Some(GadgetSuite { passed: claims.passed, checks: claims.entries.len(), failures });
    }
    let Some(inst) = inst else {
        report.passed = report.failed.is_empty();
        return Ok(report);
    };
    let geo = solve_geo(inst, None)?;
    let alice = geo.winner == GeoPlayer::Alice;
    let oracle = OptimalOracle::new(inst)?;
    let red = reduce(inst, Variant::Rank4)?;
    if matches!(suite, Suite::Mb | Suite::All) {
        let opts = VerifyOptions { budget, workers };
        let maker = verify_mb_strategy(&red, Player::Maker, &oracle, &opts)?;
        let breaker = verify_mb_strategy(&red, Player::Breaker, &oracle, &opts)?;
        eprintln!("maker strategy: {} ms, breaker strategy: {} ms", maker.elapsed_ms, breaker.elapsed_ms);
        let punishments = punishment_sweep(&red)?;
        let (winner, loser) = if alice { (&maker, &breaker) } else { (&breaker, &maker) };
        if !winner.passed || loser.passed {
            fail(&mut report, "maker_breaker.strategy");
        }
        if !punishments.failures.is_empty() {
            fail(&mut report, "maker_breaker.punishments");
        }
        report.maker_breaker = Some(MbSuite { maker, breaker, punishments });
    }
    if matches!(suite, Suite::Mm | Suite::All) {
        let rank4 = verify_mm_claims(&red, &oracle)?;
        let uniform = reduce(inst, Variant::MmUniform)?;
        let opening = mm_uniform_opening(&uniform)?;
        let mm_uniform = verify_mm_claims(&uniform, &oracle)?;
        for (name, r) in [("maker_maker.rank4", &rank4), ("maker_maker.opening", &opening), ("maker_maker.mm_uniform", &mm_uniform)] {
            if !r.passed {
                fail(&mut report, name);
            }
        }
        report.maker_maker = Some(MmSuite { rank4, mm_uniform_opening: opening, mm_uniform });
    }
    if suite == Suite::All {
        let n = red.board.num_vertices();
        let opts = SolveOptions { budget, workers, ..Default::default() };
        let mb = if n <= MB_SOLVE_LIMIT { Some(solve_mb(&red.board, &opts)?.outcome) } else { None };
        let mm = if n <= MM_SOLVE_LIMIT { Some(solve_mm(&red.board, &opts)?.outcome) } else { None };
        let expected = if alice { (Outcome::MakerWin, Outcome::FpWin) } else { (Outcome::BreakerWin, Outcome::Draw) };
        let consistent = mb.map_or(true, |o| o == expected.0) && mm.map_or(true, |o| o == expected.1);
        let skipped = match (mb, mm) {
            (Some(_), Some(_)) => None,
            (Some(_), None) => Some(format!("Maker-Maker full search is limited to {MM_SOLVE_LIMIT} vertices")),
            _ => Some(format!("full search is limited to {MB_SOLVE_LIMIT} vertices")),
        };
        let eq = Equivalence { vertices: n, maker_breaker: mb, maker_maker: mm, consistent, skipped };
        if !eq.consistent {
            fail(&mut report, "equivalence");
        }
        report.equivalence = Some(eq);
    }
    report.geography = Some(geo);
    report.passed = report.failed.is_empty();
    Ok(report)
}
