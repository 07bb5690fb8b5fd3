use proptest::prelude::*;

use posgame::hypergraph::{find_pairing, greedy_pairs_mb, is_pairing, uniformize_mb};
use posgame::solvers::{solve_mb, solve_mb_against_pairing, solve_mb_from, solve_mm, Rules, SolveOptions};
use posgame::{Board, Hypergraph, MbPosition, Outcome, Pairing};

fn board(n: usize, masks: &[u16]) -> Hypergraph {
    let names: Vec<String> = (0..n).map(|i| format!("v{i:02}")).collect();
    let edges: Vec<Vec<String>> = masks
        .iter()
        .map(|&m| (0..n).filter(|&i| m >> i & 1 == 1).map(|i| names[i].clone()).collect())
        .collect();
    Hypergraph::new(&names, &edges).unwrap()
}

/// Boards on up to `max_n` vertices with edges of size at most `max_rank`.
fn boards(max_n: usize, max_rank: u32) -> impl Strategy<Value = Hypergraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let edge = (1u16..1 << n).prop_filter("rank", move |m| m.count_ones() <= max_rank);
        prop::collection::vec(edge, 1..=6).prop_map(move |masks| board(n, &masks))
    })
}

/// Plain minimax over vertex bitmasks, no pruning of any kind.
fn naive_mb(edges: &[u16], all: u16, m: u16, b: u16, maker_to_move: bool) -> bool {
    if edges.iter().any(|&e| e & m == e) {
        return true;
    }
    let free = all & !(m | b);
    if free == 0 {
        return false;
    }
    let mut moves = (0..16).filter(|i| free >> i & 1 == 1);
    if maker_to_move {
        moves.any(|i| naive_mb(edges, all, m | 1 << i, b, false))
    } else {
        moves.all(|i| naive_mb(edges, all, m, b | 1 << i, true))
    }
}

/// Value for the first player: 1 win, 0 draw, -1 loss.
fn naive_mm(edges: &[u16], all: u16, mine: u16, theirs: u16, first: bool) -> i8 {
    let free = all & !(mine | theirs);
    let mut best = None;
    for i in (0..16).filter(|i| free >> i & 1 == 1) {
        let next = mine | 1 << i;
        let v = if edges.iter().any(|&e| e & next == e) { 1 } else { -naive_mm(edges, all, theirs, next, !first) };
        best = Some(best.map_or(v, |b: i8| b.max(v)));
    }
    best.unwrap_or(0)
}

fn masks(h: &Hypergraph) -> Vec<u16> {
    h.edges().iter().map(|e| e.iter().fold(0u16, |m, &v| m | 1 << v)).collect()
}

fn mm_outcome(v: i8) -> Outcome {
    match v {
        1 => Outcome::FpWin,
        0 => Outcome::Draw,
        _ => Outcome::SpWin,
    }
}

fn outcome(h: &Hypergraph, rules: Rules, mm: bool) -> Outcome {
    let opts = SolveOptions { rules, ..Default::default() };
    if mm { solve_mm(h, &opts) } else { solve_mb(h, &opts) }.unwrap().outcome
}

const RULE_SETS: [Rules; 5] = [
    Rules::NONE,
    Rules { forced_singletons: true, double_threat: false, dead_vertices: false },
    Rules { forced_singletons: false, double_threat: true, dead_vertices: false },
    Rules { forced_singletons: false, double_threat: false, dead_vertices: true },
    Rules::ALL,
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mb_matches_naive_minimax(h in boards(8, 4)) {
        let all = (1u16 << h.num_vertices()) - 1;
        let expected = if naive_mb(&masks(&h), all, 0, 0, true) { Outcome::MakerWin } else { Outcome::BreakerWin };
        prop_assert_eq!(outcome(&h, Rules::ALL, false), expected);
    }

    #[test]
    fn mm_matches_naive_minimax(h in boards(7, 4)) {
        let all = (1u16 << h.num_vertices()) - 1;
        let expected = mm_outcome(naive_mm(&masks(&h), all, 0, 0, true));
        prop_assert_eq!(outcome(&h, Rules::ALL, true), expected);
    }

    #[test]
    fn rule_toggles_preserve_outcomes(h in boards(10, 4)) {
        for mm in [false, true] {
            let base = outcome(&h, Rules::NONE, mm);
            for rules in RULE_SETS {
                prop_assert_eq!(outcome(&h, rules, mm), base, "{:?} mm={}", rules, mm);
            }
        }
    }

    #[test]
    fn convention_bridge(h in boards(12, 4)) {
        let mm = outcome(&h, Rules::ALL, true);
        prop_assert_ne!(mm, Outcome::SpWin);
        if outcome(&h, Rules::ALL, false) == Outcome::BreakerWin {
            prop_assert_eq!(mm, Outcome::Draw);
        }
    }

    #[test]
    fn adding_an_edge_never_helps_breaker(h in boards(10, 4), extra in 1u16..1 << 10) {
        let n = h.num_vertices();
        let extra = extra & ((1 << n) - 1);
        prop_assume!(extra != 0);
        let mut ms = masks(&h);
        ms.push(extra);
        if outcome(&h, Rules::ALL, false) == Outcome::MakerWin {
            prop_assert_eq!(outcome(&board(n, &ms), Rules::ALL, false), Outcome::MakerWin);
        }
    }

    #[test]
    fn greedy_round_keeps_outcome(h in boards(12, 3)) {
        let b = Board::new(&h).unwrap();
        let base = outcome(&h, Rules::ALL, false);
        for (x, y) in greedy_pairs_mb(&h) {
            let pos = MbPosition::from_moves(&b, &[x, y]).unwrap();
            prop_assert_eq!(solve_mb_from(&b, pos, &SolveOptions::default()).unwrap().outcome, base);
        }
    }

    #[test]
    fn uniformizing_keeps_outcome(h in boards(8, 4)) {
        let u = uniformize_mb(&h, 4).unwrap();
        prop_assume!(u.num_vertices() <= 16);
        prop_assert!(u.is_uniform(4));
        prop_assert_eq!(outcome(&u, Rules::ALL, false), outcome(&h, Rules::ALL, false));
    }

    #[test]
    fn found_pairings_certify_breaker(h in boards(12, 4)) {
        let search = find_pairing(&h, 1_000_000);
        prop_assert!(search.complete);
        if let Some(p) = search.pairing {
            prop_assert!(is_pairing(&h, &p).is_valid());
            prop_assert_eq!(solve_mb_against_pairing(&h, &p).unwrap().outcome, Outcome::BreakerWin);
            prop_assert_eq!(outcome(&h, Rules::ALL, false), Outcome::BreakerWin);
            prop_assert_ne!(outcome(&h, Rules::ALL, true), Outcome::FpWin);
        }
    }

    #[test]
    fn planted_pairings_certify_breaker(n in 2usize..=12, picks in prop::collection::vec((0usize..6, any::<u16>()), 1..=6)) {
        let pairs: Vec<(usize, usize)> = (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect();
        let ms: Vec<u16> = picks
            .iter()
            .map(|&(i, extra)| {
                let (a, b) = pairs[i % pairs.len()];
                let extra = extra & ((1 << n) - 1);
                let extra = (0..n).filter(|v| extra >> v & 1 == 1).take(2).fold(0u16, |m, v| m | 1 << v);
                extra | 1 << a | 1 << b
            })
            .collect();
        let h = board(n, &ms);
        let p = Pairing::new(pairs).unwrap();
        prop_assert!(is_pairing(&h, &p).is_valid());
        prop_assert_eq!(outcome(&h, Rules::ALL, false), Outcome::BreakerWin);
        prop_assert_ne!(outcome(&h, Rules::ALL, true), Outcome::FpWin);
    }

    #[test]
    fn single_worker_is_deterministic(h in boards(12, 4)) {
        let a = solve_mb(&h, &SolveOptions::default()).unwrap();
        let b = solve_mb(&h, &SolveOptions::default()).unwrap();
        prop_assert_eq!(a, b);
        let a = solve_mm(&h, &SolveOptions::default()).unwrap();
        let b = solve_mm(&h, &SolveOptions::default()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn workers_agree_with_sequential(h in boards(12, 4)) {
        let par = SolveOptions { workers: 4, ..Default::default() };
        prop_assert_eq!(solve_mb(&h, &par).unwrap().outcome, outcome(&h, Rules::ALL, false));
        prop_assert_eq!(solve_mm(&h, &par).unwrap().outcome, outcome(&h, Rules::ALL, true));
    }
}

#[test]
fn strategy_stealing_on_every_small_board_shape() {
    // All boards on 4 vertices with at most 3 edges.
    let edges: Vec<u16> = (1..16).collect();
    for a in 0..edges.len() {
        for b in a..edges.len() {
            for c in b..edges.len() {
                let h = board(4, &[edges[a], edges[b], edges[c]]);
                assert_ne!(outcome(&h, Rules::ALL, true), Outcome::SpWin, "{:?}", h.edge_names());
            }
        }
    }
}
