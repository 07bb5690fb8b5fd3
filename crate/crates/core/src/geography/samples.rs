//! Small instances used by tests, benches and the command line.

use super::GeoInstance;

fn build(nodes: &[&str], arcs: &[(&str, &str, &str)]) -> GeoInstance {
    let arcs: Vec<(&str, &str, Option<&str>)> = arcs.iter().map(|&(t, h, l)| (t, h, Some(l))).collect();
    GeoInstance::new(nodes, &arcs, nodes[0]).expect("sample instance is well formed")
}

/// `s → v1 → v2 → v1`: Alice wins.
pub fn cycle_alice() -> GeoInstance {
    build(&["s", "v1", "v2"], &[("s", "v1", "a"), ("v1", "v2", "b"), ("v2", "v1", "c")])
}

/// `s → v1 → v2 → v3 → v2`: Bob wins.
pub fn cycle_bob() -> GeoInstance {
    build(
        &["s", "v1", "v2", "v3"],
        &[("s", "v1", "a"), ("v1", "v2", "b"), ("v2", "v3", "c"), ("v3", "v2", "d")],
    )
}

/// Nine nodes using every gadget type.
pub fn nine_nodes() -> GeoInstance {
    build(
        &["s", "v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8"],
        &[
            ("s", "v1", "a"),
            ("v1", "v2", "b"),
            ("v2", "v3", "c"),
            ("v2", "v4", "d"),
            ("v3", "v5", "e"),
            ("v3", "v6", "f"),
            ("v4", "v6", "g"),
            ("v5", "v7", "h"),
            ("v6", "v7", "i"),
            ("v7", "v8", "j"),
            ("v8", "v4", "k"),
        ],
    )
}
