//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use posgame::geography::{samples, solve_geo, GeoOracle, GeoPlayer, OptimalOracle, ScriptedOracle};
use posgame::hypergraph::{greedy_pairs_mb, uniformize_mb};
use posgame::reduction::{check_gadget_claims, gadget_spec, reduce, Variant};
use posgame::solvers::{solve_mb, solve_mb_from, solve_mm, SolveOptions};
use posgame::strategies::{
    gadget_residue, mm_uniform_opening, verify_mb_strategy, verify_mm_claims, Expected, NodeStatus, RegularPlay,
    VerifyOptions,
};
use posgame::{Hypergraph, MbPosition, Outcome, Player, VertexSet};

const SEED: u64 = 0x5eed;
const RANDOM_BOARDS: usize = 200;

struct Verdict {
    ok: bool,
    detail: String,
    limit: Duration,
}

fn verdict(ok: bool, detail: impl Into<String>, limit_secs: u64) -> Verdict {
    Verdict { ok, detail: detail.into(), limit: Duration::from_secs(limit_secs) }
}

fn opts() -> SolveOptions {
    SolveOptions { budget: Some(1_000_000_000), ..Default::default() }
}

fn c1_gadget_claims() -> Verdict {
    let report = check_gadget_claims();
    let failed = report.failures().count();
    verdict(report.passed, format!("{} checks, {failed} failed", report.entries.len()), 1)
}

fn c2_regular_residues() -> Verdict {
    let inst = samples::nine_nodes();
    let red = reduce(&inst, Variant::Rank4).unwrap();
    let board = red.bitboard().unwrap();
    let oracle = ScriptedOracle::new(&inst, &["d"]).unwrap();
    let v8 = inst.node_index("v8").unwrap();
    let mut play = RegularPlay::new(&red);
    let (mut m, mut b) = (VertexSet::default(), VertexSet::default());
    while !(play.active() == v8 && play.phase() == 0) {
        let (mover, v) = match play.expected(&red).unwrap() {
            Expected::Move { mover, vertex, .. } => (mover, vertex),
            Expected::Choice { mover, .. } => {
                let arc = oracle.choose(play.geo()).unwrap();
                (mover, play.choice_vertex(&red, arc).unwrap())
            }
            Expected::Ended(_) => return verdict(false, "regular play ended early", 1),
        };
        match mover {
            Player::Maker => m = m.with(v),
            Player::Breaker => b = b.with(v),
        }
        play.play(&red, v).unwrap();
    }
    let mut problems = Vec::new();
    let v4 = inst.node_index("v4").unwrap();
    let pqz = VertexSet::from_indices(["k.p", "k.q", "v4.zb"].map(|id| red.vertex(id).unwrap()));
    for node in 0..inst.nodes().len() {
        let name = inst.node_name(node);
        let (vertices, edges) = gadget_residue(&red, &board, m, b, node);
        let expected_edges: &[VertexSet] = match name {
            "v4" => &[pqz],
            "v7" => &[VertexSet::from_indices(["h.p", "h.q", "v7.za"].map(|id| red.vertex(id).unwrap()))],
            _ => &[],
        };
        match play.status(node) {
            NodeStatus::Cleared if edges != expected_edges => problems.push(format!("{name} residue")),
            NodeStatus::Cleared | NodeStatus::Unvisited | NodeStatus::Active => {}
            NodeStatus::Reentered => problems.push(format!("{name} reentered")),
        }
        if node == v4 && vertices != pqz {
            problems.push("v4 vertices".into());
        }
    }
    let cleared = ["s", "v1", "v2", "v4", "v6", "v7"];
    for name in cleared {
        if play.status(inst.node_index(name).unwrap()) != NodeStatus::Cleared {
            problems.push(format!("{name} not cleared"));
        }
    }
    let ok = problems.is_empty();
    let detail = if ok { "H'(v4) = ({k.p,k.q,v4.zb}, {{k.p,k.q,v4.zb}})".to_string() } else { problems.join(", ") };
    verdict(ok, detail, 1)
}

fn c3_full_search_g1() -> Verdict {
    let inst = samples::cycle_alice();
    let red = reduce(&inst, Variant::Rank4).unwrap();
    let geo = solve_geo(&inst, None).unwrap().winner;
    let mb = solve_mb(&red.board, &opts()).unwrap();
    let mm = solve_mm(&red.board, &opts()).unwrap();
    let ok = geo == GeoPlayer::Alice
        && red.board.num_vertices() == 17
        && mb.outcome == Outcome::MakerWin
        && mm.outcome == Outcome::FpWin;
    verdict(
        ok,
        format!(
            "geo {geo:?}, |V| {}, mb {:?} ({} nodes), mm {:?} ({} nodes)",
            red.board.num_vertices(),
            mb.outcome,
            mb.nodes,
            mm.outcome,
            mm.nodes
        ),
        300,
    )
}

fn c4_strategy_g2() -> Verdict {
    let inst = samples::cycle_bob();
    let red = reduce(&inst, Variant::Rank4).unwrap();
    let geo = solve_geo(&inst, None).unwrap().winner;
    let oracle = OptimalOracle::new(&inst).unwrap();
    let report = verify_mb_strategy(&red, Player::Breaker, &oracle, &VerifyOptions::default()).unwrap();
    let mm = verify_mm_claims(&red, &oracle).unwrap();
    let pairing_claim = |name: &str| mm.claims.get(name).is_some_and(|t| t.checks > 0 && t.failures.is_empty());
    let ok = geo == GeoPlayer::Bob
        && report.passed
        && report.leaves.maker_filled == 0
        && mm.passed
        && pairing_claim("sp_draw_pairing")
        && pairing_claim("fp_draw_pairing");
    verdict(
        ok,
        format!(
            "geo {geo:?}, breaker {} ({} pairing leaves), mm claims {}",
            if report.passed { "holds" } else { "fails" },
            report.leaves.breaker_pairing,
            if mm.passed { "hold" } else { "fail" }
        ),
        600,
    )
}

fn c5_maker_g1() -> Verdict {
    let inst = samples::cycle_alice();
    let red = reduce(&inst, Variant::Rank4).unwrap();
    let oracle = OptimalOracle::new(&inst).unwrap();
    let report = verify_mb_strategy(&red, Player::Maker, &oracle, &VerifyOptions::default()).unwrap();
    let plies = report.max_plies_after_deviation.unwrap_or(0);
    let ok = report.passed && report.leaves.breaker_pairing == 0 && report.leaves.breaker_exhausted == 0 && plies <= 2;
    verdict(ok, format!("{} maker-filled leaves, punishment within {plies} plies", report.leaves.maker_filled), 600)
}

fn c6_tiny_sweep() -> Verdict {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 1..=4 {
        for inst in common::valid_instances(n) {
            checked += 1;
            let geo = solve_geo(&inst, None).unwrap().winner;
            let red = reduce(&inst, Variant::Rank4).unwrap();
            let oracle = OptimalOracle::new(&inst).unwrap();
            let side = if geo == GeoPlayer::Alice { Player::Maker } else { Player::Breaker };
            let report = verify_mb_strategy(&red, side, &oracle, &VerifyOptions::default()).unwrap();
            if !report.passed {
                bad.push(inst.to_json_string());
            }
        }
    }
    verdict(checked > 0 && bad.is_empty(), format!("{checked} instances with |N| <= 4, {} disagreements", bad.len()), 1800)
}

fn random_board(rng: &mut StdRng, max_vertices: usize, max_rank: usize) -> Hypergraph {
    let n = rng.gen_range(2..=max_vertices);
    let m = rng.gen_range(1..=6);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges: Vec<Vec<String>> = (0..m)
        .map(|_| {
            let k = rng.gen_range(1..=max_rank.min(n));
            let mut e: Vec<usize> = (0..n).collect();
            for i in 0..k {
                let j = rng.gen_range(i..n);
                e.swap(i, j);
            }
            e[..k].iter().map(|&v| names[v].clone()).collect()
        })
        .collect();
    Hypergraph::new(&names, &edges).unwrap()
}

/// A board whose every edge contains one of a set of disjoint pairs.
fn paired_board(rng: &mut StdRng) -> Hypergraph {
    let n = rng.gen_range(4..=12);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let pairs: Vec<(usize, usize)> = (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect();
    let edges: Vec<Vec<String>> = (0..rng.gen_range(1..=6))
        .map(|_| {
            let (a, b) = pairs[rng.gen_range(0..pairs.len())];
            let mut e = vec![a, b];
            for _ in 0..rng.gen_range(0..=2) {
                let v = rng.gen_range(0..n);
                if !e.contains(&v) {
                    e.push(v);
                }
            }
            e.iter().map(|&v| names[v].clone()).collect()
        })
        .collect();
    Hypergraph::new(&names, &edges).unwrap()
}

fn c7_random_boards() -> Verdict {
    let mut rng = StdRng::seed_from_u64(SEED);
    let o = SolveOptions::default();
    let mut violations = [0usize; 4];
    let mut uniformized = 0;
    let mut sampled = 0;
    while uniformized < RANDOM_BOARDS {
        sampled += 1;
        let h = random_board(&mut rng, 10, 4);
        let u = uniformize_mb(&h, 4).unwrap();
        if u.num_vertices() <= 16 {
            uniformized += 1;
            if solve_mb(&h, &o).unwrap().outcome != solve_mb(&u, &o).unwrap().outcome {
                violations[0] += 1;
            }
        }
    }
    let mut greedy = 0;
    for _ in 0..RANDOM_BOARDS {
        let h = random_board(&mut rng, 12, 3);
        let board = posgame::Board::new(&h).unwrap();
        let base = solve_mb(&h, &o).unwrap().outcome;
        for (x, y) in greedy_pairs_mb(&h) {
            greedy += 1;
            let pos = MbPosition::from_moves(&board, &[x, y]).unwrap();
            if solve_mb_from(&board, pos, &o).unwrap().outcome != base {
                violations[1] += 1;
            }
        }
    }
    for _ in 0..RANDOM_BOARDS {
        let h = paired_board(&mut rng);
        if solve_mb(&h, &o).unwrap().outcome != Outcome::BreakerWin || solve_mm(&h, &o).unwrap().outcome == Outcome::FpWin {
            violations[2] += 1;
        }
    }
    for _ in 0..RANDOM_BOARDS {
        let h = random_board(&mut rng, 10, 4);
        if solve_mm(&h, &o).unwrap().outcome == Outcome::SpWin {
            violations[3] += 1;
        }
    }
    verdict(
        violations == [0; 4],
        format!(
            "violations uniformize {} ({uniformized} of {sampled} boards), greedy {} ({greedy} pairs), pairing {}, stealing {}",
            violations[0], violations[1], violations[2], violations[3]
        ),
        1200,
    )
}

fn c8_mm_uniform() -> Verdict {
    let inst = samples::cycle_alice();
    let red = reduce(&inst, Variant::MmUniform).unwrap();
    let oracle = OptimalOracle::new(&inst).unwrap();
    let opening = mm_uniform_opening(&red).unwrap();
    let claims = verify_mm_claims(&red, &oracle).unwrap();
    verdict(
        opening.passed && claims.passed && red.board.is_uniform(4),
        format!("opening {}, claims {}", opening.passed, claims.passed),
        600,
    )
}

fn c9_size_format() -> Verdict {
    let inst = samples::nine_nodes();
    let a = reduce(&inst, Variant::Rank4).unwrap();
    let b = reduce(&inst, Variant::Rank4).unwrap();
    let per_gadget: usize =
        a.gadgets.iter().filter(|g| g.in_arcs.len() > 0).map(|g| gadget_spec(g.node_type).edges.len()).sum();
    let meta = |r: &posgame::reduction::ReductionOutput| serde_json::to_string_pretty(&r.metadata()).unwrap();
    let stable = a.board.to_json_string() == b.board.to_json_string() && meta(&a) == meta(&b);
    let ok = a.board.num_vertices() == 67 && a.board.num_edges() == 2 + per_gadget && stable;
    verdict(ok, format!("|V| {}, |E| {} = 2 + {per_gadget}, stable {stable}", a.board.num_vertices(), a.board.num_edges()), 1)
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("gadget claims", c1_gadget_claims),
        ("regular-play residues", c2_regular_residues),
        ("full search on the 3-cycle instance", c3_full_search_g1),
        ("breaker strategy on the 4-node instance", c4_strategy_g2),
        ("maker strategy on the 3-cycle instance", c5_maker_g1),
        ("tiny instance sweep", c6_tiny_sweep),
        ("random board invariants", c7_random_boards),
        ("maker-maker uniform start", c8_mm_uniform),
        ("size and format", c9_size_format),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = run();
        let elapsed = t.elapsed();
        let ok = v.ok && elapsed <= v.limit;
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {}: {} {name}: {} [{:.2?} of {:?}]",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            v.detail,
            elapsed,
            v.limit
        );
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
