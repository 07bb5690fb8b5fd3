mod common;

use posgame::geography::{samples, solve_geo, GeoInstance, GeoPlayer};
use posgame::reduction::{gadget_spec, reduce, Owner, ReductionMeta, Variant};
use posgame::solvers::{solve_mb, SolveOptions};
use posgame::{Hypergraph, Outcome};

fn instances() -> Vec<GeoInstance> {
    let mut all: Vec<GeoInstance> = (1..=4).flat_map(common::valid_instances).collect();
    all.extend([samples::cycle_alice(), samples::cycle_bob(), samples::nine_nodes()]);
    all
}

#[test]
fn enumeration_finds_the_small_cycles() {
    assert_eq!(common::valid_instances(2).len(), 0);
    // s -> v1 -> v2 -> v1 and its relabelling.
    assert_eq!(common::valid_instances(3).len(), 2);
    assert!(!common::valid_instances(4).is_empty());
}

#[test]
fn size_bounds() {
    for inst in instances() {
        let (n, a) = (inst.nodes().len(), inst.arcs().len());
        for variant in [Variant::Rank4, Variant::MbUniform, Variant::MmUniform] {
            let r = reduce(&inst, variant).unwrap();
            if variant == Variant::Rank4 {
                assert!(r.board.num_vertices() <= 9 * n + 2 * a + 10);
                assert!(r.board.num_edges() <= 7 * n + 18);
                assert!(r.board.rank() <= 4);
            } else {
                assert!(r.board.is_uniform(4), "{variant}");
            }
        }
    }
}

#[test]
fn edge_count_is_the_sum_of_templates() {
    for inst in instances() {
        let r = reduce(&inst, Variant::Rank4).unwrap();
        let total: usize = r.gadgets.iter().map(|g| gadget_spec(g.node_type).edges.len()).sum();
        assert_eq!(r.board.num_edges(), total);
    }
}

#[test]
fn junctions_are_local() {
    for inst in instances() {
        let r = reduce(&inst, Variant::Rank4).unwrap();
        for (v, owner) in r.owners.iter().enumerate() {
            let holders: Vec<usize> = (0..inst.nodes().len()).filter(|&n| r.gadget(n).vertices.contains(v)).collect();
            match *owner {
                Owner::Junction { arc, twin } => {
                    let a = inst.arc(arc);
                    assert_eq!(holders, { let mut h = vec![a.tail, a.head]; h.sort(); h });
                    assert_eq!(r.twin(twin), Some(v));
                    assert_eq!(r.junctions[arc], if r.name(v).ends_with(".p") { (v, twin) } else { (twin, v) });
                }
                Owner::Interior { node } => assert_eq!(holders, [node]),
            }
        }
        // Edges never leave their gadget.
        for (node, g) in r.gadgets.iter().enumerate() {
            for &e in &g.edges {
                assert!(r.board.edges()[e].iter().all(|&v| r.gadgets_of(v).contains(&node)));
            }
        }
    }
}

#[test]
fn reduction_is_sound_on_small_boards() {
    let mut checked = 0;
    for inst in instances() {
        let r = reduce(&inst, Variant::Rank4).unwrap();
        if r.board.num_vertices() > 18 {
            continue;
        }
        checked += 1;
        let geo = solve_geo(&inst, None).unwrap().winner;
        let mb = solve_mb(&r.board, &SolveOptions::default()).unwrap().outcome;
        assert_eq!(geo == GeoPlayer::Alice, mb == Outcome::MakerWin);
    }
    assert!(checked >= 1);
}

#[test]
fn nine_node_artifacts() {
    let inst = samples::nine_nodes();
    let r = reduce(&inst, Variant::Rank4).unwrap();
    assert_eq!(r.board.num_vertices(), 67);
    let meta = r.metadata();
    let b11: Vec<&str> = meta
        .nodes
        .iter()
        .filter(|(_, m)| m.node_type.name() == "B11")
        .map(|(n, _)| n.as_str())
        .collect();
    assert_eq!(b11, ["v5", "v8"]);
    let json = serde_json::to_string(&meta).unwrap();
    let back: ReductionMeta = serde_json::from_str(&json).unwrap();
    assert_eq!(back, meta);
    let board = Hypergraph::from_json_str(&r.board.to_json_string()).unwrap();
    assert_eq!(board, r.board);
    assert_eq!(reduce(&inst, Variant::Rank4).unwrap().board.to_json_string(), r.board.to_json_string());
}

#[test]
fn geography_json_roundtrip() {
    for inst in instances() {
        let back = GeoInstance::from_json_str(&inst.to_json_string()).unwrap();
        assert_eq!(back.to_json_string(), inst.to_json_string());
    }
}
