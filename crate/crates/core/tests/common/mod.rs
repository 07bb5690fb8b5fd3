use posgame::geography::{validate_geo, GeoInstance};

/// Every simple digraph on `n` nodes (start named `s`) passing validation.
pub fn valid_instances(n: usize) -> Vec<GeoInstance> {
    let owned: Vec<String> = std::iter::once("s".to_string()).chain((1..n).map(|i| format!("v{i}"))).collect();
    let names: Vec<&str> = owned.iter().map(String::as_str).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|t| (0..n).map(move |h| (t, h))).filter(|(t, h)| t != h).collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let arcs: Vec<(&str, &str, Option<&str>)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &(t, h))| (names[t], names[h], None))
            .collect();
        if let Ok(inst) = GeoInstance::new(&names, &arcs, "s") {
            if validate_geo(&inst).valid {
                out.push(inst);
            }
        }
    }
    out
}
