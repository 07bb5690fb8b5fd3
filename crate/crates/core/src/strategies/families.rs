//! The clean pairings of intact gadgets, in role names.

use crate::geography::NodeType;

/// One pairing of a gadget together with the vertices it is declared for.
/// `None` in `keys` stands for the plain pairing of the intact gadget.
#[derive(Clone, Copy, Debug)]
pub struct FamilyEntry {
    pub keys: &'static [Option<&'static str>],
    pub pairs: &'static [(&'static str, &'static str)],
    /// False for entries obtained by the gadget's slot symmetry rather than
    /// listed in the source.
    pub transcribed: bool,
}

const fn e(
    keys: &'static [Option<&'static str>],
    pairs: &'static [(&'static str, &'static str)],
    transcribed: bool,
) -> FamilyEntry {
    FamilyEntry { keys, pairs, transcribed }
}

const ONE_ONE: &[FamilyEntry] = &[
    e(&[None, Some("x1"), Some("y1"), Some("y2"), Some("y3")], &[("pa", "qa"), ("pb", "qb")], true),
    e(&[Some("pa")], &[("qa", "y2"), ("pb", "qb"), ("x1", "y1")], true),
    e(&[Some("qa")], &[("pa", "y2"), ("pb", "qb"), ("x1", "y1")], false),
    e(&[Some("pb"), Some("qb")], &[("pa", "qa"), ("x1", "y3")], true),
];

const B21: &[FamilyEntry] = &[
    e(&[None, Some("x1"), Some("y1"), Some("y2"), Some("y3")], &[("pa", "qa"), ("pb", "qb"), ("pc", "qc")], true),
    e(&[Some("pa")], &[("qa", "y2"), ("pb", "qb"), ("pc", "qc"), ("x1", "y1")], true),
    e(&[Some("qa")], &[("pa", "y2"), ("pb", "qb"), ("pc", "qc"), ("x1", "y1")], false),
    e(&[Some("pb")], &[("qb", "y2"), ("pa", "qa"), ("pc", "qc"), ("x1", "y1")], false),
    e(&[Some("qb")], &[("pb", "y2"), ("pa", "qa"), ("pc", "qc"), ("x1", "y1")], false),
    e(&[Some("pc"), Some("qc")], &[("pa", "qa"), ("pb", "qb"), ("x1", "y3")], true),
];

const M21: &[FamilyEntry] = &[
    e(&[None, Some("x1"), Some("y1"), Some("y2"), Some("za")], &[("pa", "qa"), ("pb", "qb"), ("pc", "qc")], true),
    e(&[Some("zb")], &[("pa", "qa"), ("pb", "qb"), ("pc", "qc")], false),
    e(&[Some("pa")], &[("qa", "y1"), ("pb", "qb"), ("pc", "qc"), ("x1", "za")], true),
    e(&[Some("qa")], &[("pa", "y1"), ("pb", "qb"), ("pc", "qc"), ("x1", "za")], false),
    e(&[Some("pb")], &[("qb", "y1"), ("pa", "qa"), ("pc", "qc"), ("x1", "zb")], false),
    e(&[Some("qb")], &[("pb", "y1"), ("pa", "qa"), ("pc", "qc"), ("x1", "zb")], false),
    e(&[Some("pc"), Some("qc")], &[("pa", "qa"), ("pb", "qb"), ("x1", "y2")], true),
];

const B12: &[FamilyEntry] = &[
    e(
        &[None, Some("x3"), Some("y1"), Some("y5")],
        &[("pa", "qa"), ("pb", "qb"), ("pc", "qc"), ("x1", "y3"), ("x2", "y4")],
        true,
    ),
    e(&[Some("y2")], &[("pa", "qa"), ("pb", "qb"), ("pc", "qc"), ("x1", "y3"), ("x2", "y4")], false),
    e(&[Some("x1")], &[("pa", "qa"), ("pb", "qb"), ("pc", "qc"), ("x3", "y3"), ("x2", "y4")], true),
    e(&[Some("x2")], &[("pa", "qa"), ("pb", "qb"), ("pc", "qc"), ("x1", "y3"), ("x3", "y4")], false),
    e(&[Some("y3")], &[("pa", "qa"), ("pb", "qb"), ("pc", "qc"), ("x1", "x3"), ("x2", "y4")], true),
    e(&[Some("y4")], &[("pa", "qa"), ("pb", "qb"), ("pc", "qc"), ("x1", "y3"), ("x2", "x3")], false),
    e(
        &[Some("pa")],
        &[("qa", "y1"), ("pb", "qb"), ("pc", "qc"), ("x1", "y3"), ("x2", "y2"), ("x3", "y4")],
        true,
    ),
    e(
        &[Some("qa")],
        &[("pa", "y1"), ("pb", "qb"), ("pc", "qc"), ("x1", "y3"), ("x2", "y2"), ("x3", "y4")],
        false,
    ),
    e(
        &[Some("pb"), Some("qb")],
        &[("pa", "qa"), ("pc", "qc"), ("x1", "y3"), ("x2", "y4"), ("x3", "y5")],
        true,
    ),
    e(
        &[Some("pc"), Some("qc")],
        &[("pa", "qa"), ("pb", "qb"), ("x1", "y3"), ("x2", "y4"), ("x3", "y5")],
        false,
    ),
];

const M12: &[FamilyEntry] = &[
    e(
        &[None, Some("y1"), Some("y3")],
        &[("pa", "qa"), ("pb", "qb"), ("pc", "qc"), ("x1", "z1"), ("x2", "z2")],
        true,
    ),
    e(
        &[Some("y2"), Some("zb"), Some("zc")],
        &[("pa", "qa"), ("pb", "qb"), ("pc", "qc"), ("x1", "z1"), ("x2", "z2")],
        false,
    ),
    e(&[Some("x1")], &[("pa", "qa"), ("pb", "qb"), ("pc", "qc"), ("y3", "z1"), ("x2", "z2")], true),
    e(&[Some("x2")], &[("pa", "qa"), ("pb", "qb"), ("pc", "qc"), ("x1", "z1"), ("y3", "z2")], false),
    e(&[Some("z1")], &[("pa", "qa"), ("pb", "qb"), ("pc", "qc"), ("x1", "y3"), ("x2", "z2")], true),
    e(&[Some("z2")], &[("pa", "qa"), ("pb", "qb"), ("pc", "qc"), ("x1", "z1"), ("x2", "y3")], false),
    e(
        &[Some("pa")],
        &[("qa", "y1"), ("pb", "qb"), ("pc", "qc"), ("x1", "z1"), ("x2", "y2"), ("y3", "z2")],
        true,
    ),
    e(
        &[Some("qa")],
        &[("pa", "y1"), ("pb", "qb"), ("pc", "qc"), ("x1", "z1"), ("x2", "y2"), ("y3", "z2")],
        false,
    ),
    e(
        &[Some("pb"), Some("qb")],
        &[("pa", "qa"), ("pc", "qc"), ("x1", "y3"), ("x2", "z2"), ("z1", "z3")],
        true,
    ),
    e(
        &[Some("pc"), Some("qc")],
        &[("pa", "qa"), ("pb", "qb"), ("x1", "z1"), ("x2", "y3"), ("z2", "zc")],
        false,
    ),
];

/// Role names in the listed pairings that do not exist in the gadget, with
/// the role they are read as.
pub const SUBSTITUTIONS: &[(NodeType, &str, &str)] = &[(NodeType::M12, "z3", "zb")];

/// All listed pairings of a gadget type (empty for the start gadget).
pub fn family(t: NodeType) -> &'static [FamilyEntry] {
    match t {
        NodeType::B01 => &[],
        NodeType::B11 | NodeType::M11 => ONE_ONE,
        NodeType::B21 => B21,
        NodeType::M21 => M21,
        NodeType::B12 => B12,
        NodeType::M12 => M12,
    }
}

fn resolve(t: NodeType, role: &'static str) -> &'static str {
    SUBSTITUTIONS
        .iter()
        .find(|(ty, from, _)| *ty == t && *from == role)
        .map_or(role, |(_, _, to)| to)
}

/// The pairing of an intact `t` gadget avoiding `avoid` (or the plain one),
/// with substitutions applied. `None` for the start gadget or unknown roles.
pub fn gadget_pairing(t: NodeType, avoid: Option<&str>) -> Option<Vec<(&'static str, &'static str)>> {
    family(t)
        .iter()
        .find(|entry| entry.keys.contains(&avoid))
        .map(|entry| entry.pairs.iter().map(|&(a, b)| (resolve(t, a), resolve(t, b))).collect())
}
