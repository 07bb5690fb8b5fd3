use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use serde::Serialize;

use super::{two_coloring, validate_geo, GeoInstance, GeoPlayer, GeoState};
use crate::error::{Error, Result};

const MAX_NODES: usize = 64;

/// Picks the arc (by index) the mover takes from a state, or `None` when the
/// current node has no out-arcs.
pub trait GeoOracle: Sync {
    fn choose(&self, state: &GeoState) -> Option<usize>;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeoSolution {
    pub winner: GeoPlayer,
    /// Distinct states evaluated.
    pub states: usize,
}

struct Solver<'a> {
    inst: &'a GeoInstance,
    colors: Option<Vec<u8>>,
    memo: HashMap<GeoState, bool>,
    budget: Option<usize>,
    started: usize,
}

impl<'a> Solver<'a> {
    fn new(inst: &'a GeoInstance, budget: Option<usize>) -> Result<Self> {
        if inst.nodes().len() > MAX_NODES {
            return Err(Error::TooManyVertices { got: inst.nodes().len(), max: MAX_NODES });
        }
        let colors = if validate_geo(inst).valid { Some(two_coloring(inst)?) } else { None };
        Ok(Solver { inst, colors, memo: HashMap::new(), budget, started: 0 })
    }

    /// Whether the player to move from `state` wins.
    fn mover_wins(&mut self, state: GeoState) -> Result<bool> {
        if let Some(&w) = self.memo.get(&state) {
            return Ok(w);
        }
        if let Some(colors) = &self.colors {
            let bob = colors[state.current] == colors[self.inst.start()];
            assert_eq!(
                state.mover() == GeoPlayer::Bob,
                bob,
                "mover parity broken at {}",
                self.inst.node_name(state.current)
            );
        }
        if let Some(budget) = self.budget {
            if self.started >= budget {
                return Err(Error::BudgetExhausted { budget: budget as u64 });
            }
        }
        self.started += 1;
        let mut wins = false;
        for &arc in self.inst.out_arcs(state.current) {
            let head = self.inst.arc(arc).head;
            if !state.is_visited(head) && !self.mover_wins(state.advance(head))? {
                wins = true;
                break;
            }
        }
        self.memo.insert(state, wins);
        Ok(wins)
    }

    fn best_arc(&mut self, state: GeoState) -> Result<Option<usize>> {
        let outs = self.inst.out_arcs(state.current);
        let mut fallback = None;
        for &arc in outs {
            let head = self.inst.arc(arc).head;
            if state.is_visited(head) {
                continue;
            }
            if !self.mover_wins(state.advance(head))? {
                return Ok(Some(arc));
            }
            fallback = fallback.or(Some(arc));
        }
        Ok(fallback.or_else(|| outs.first().copied()))
    }
}

/// Winner under optimal play, by memoized search over `(current, visited)`.
///
/// Moving onto a visited node loses; so does being unable to move at all.
/// On validated instances the search also asserts that Bob always moves from
/// nodes colored like the start node.
pub fn solve_geo(inst: &GeoInstance, budget: Option<usize>) -> Result<GeoSolution> {
    let mut solver = Solver::new(inst, budget)?;
    let bob_wins = solver.mover_wins(GeoState::start(inst))?;
    Ok(GeoSolution {
        winner: if bob_wins { GeoPlayer::Bob } else { GeoPlayer::Alice },
        states: solver.memo.len(),
    })
}

/// Plays a winning arc whenever one exists, else the first arc to an
/// unvisited node. Evaluations are cached across calls.
pub struct OptimalOracle<'a> {
    solver: Mutex<Solver<'a>>,
}

impl<'a> OptimalOracle<'a> {
    pub fn new(inst: &'a GeoInstance) -> Result<Self> {
        Ok(OptimalOracle { solver: Mutex::new(Solver::new(inst, None)?) })
    }
}

impl GeoOracle for OptimalOracle<'_> {
    fn choose(&self, state: &GeoState) -> Option<usize> {
        let mut solver = self.solver.lock().unwrap();
        solver.best_arc(*state).expect("unbudgeted search cannot fail")
    }
}

/// Always takes the lowest-labelled out-arc.
pub struct FirstArcOracle<'a> {
    inst: &'a GeoInstance,
}

impl<'a> FirstArcOracle<'a> {
    pub fn new(inst: &'a GeoInstance) -> Self {
        FirstArcOracle { inst }
    }
}

impl GeoOracle for FirstArcOracle<'_> {
    fn choose(&self, state: &GeoState) -> Option<usize> {
        self.inst.out_arcs(state.current).first().copied()
    }
}

/// Takes a fixed arc at chosen nodes and the lowest-labelled arc elsewhere.
pub struct ScriptedOracle<'a> {
    inst: &'a GeoInstance,
    choices: BTreeMap<usize, usize>,
}

impl<'a> ScriptedOracle<'a> {
    /// `choices` are arc labels; the arc's tail is the node it applies to.
    pub fn new(inst: &'a GeoInstance, choices: &[&str]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for label in choices {
            let arc = inst
                .arc_index(label)
                .ok_or_else(|| Error::InvalidInstance(format!("unknown arc {label:?}")))?;
            map.insert(inst.arc(arc).tail, arc);
        }
        Ok(ScriptedOracle { inst, choices: map })
    }
}

impl GeoOracle for ScriptedOracle<'_> {
    fn choose(&self, state: &GeoState) -> Option<usize> {
        self.choices
            .get(&state.current)
            .copied()
            .or_else(|| self.inst.out_arcs(state.current).first().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(arcs: &[(&str, &str)]) -> GeoInstance {
        let mut nodes: Vec<&str> = Vec::new();
        for (t, h) in arcs {
            for n in [t, h] {
                if !nodes.contains(n) {
                    nodes.push(n);
                }
            }
        }
        let arcs: Vec<(&str, &str, Option<&str>)> = arcs.iter().map(|&(t, h)| (t, h, None)).collect();
        GeoInstance::new(&nodes, &arcs, "s").unwrap()
    }

    #[test]
    fn small_instances() {
        let g1 = chain(&[("s", "v1"), ("v1", "v2"), ("v2", "v1")]);
        assert_eq!(solve_geo(&g1, None).unwrap().winner, GeoPlayer::Alice);
        let g2 = chain(&[("s", "v1"), ("v1", "v2"), ("v2", "v3"), ("v3", "v2")]);
        assert_eq!(solve_geo(&g2, None).unwrap().winner, GeoPlayer::Bob);
    }

    #[test]
    fn dead_end_loses_for_mover() {
        let g = chain(&[("s", "v1")]);
        assert_eq!(solve_geo(&g, None).unwrap().winner, GeoPlayer::Bob);
        let lone = GeoInstance::new(&["s"], &[], "s").unwrap();
        assert_eq!(solve_geo(&lone, None).unwrap().winner, GeoPlayer::Alice);
    }

    #[test]
    fn budget_is_enforced() {
        let g2 = chain(&[("s", "v1"), ("v1", "v2"), ("v2", "v3"), ("v3", "v2")]);
        assert!(matches!(solve_geo(&g2, Some(1)), Err(Error::BudgetExhausted { .. })));
    }

    #[test]
    fn oracles() {
        let g = chain(&[("s", "v1"), ("v1", "v2"), ("v1", "v3"), ("v3", "v1"), ("v2", "v4"), ("v4", "v1")]);
        let start = GeoState::start(&g);
        let at_v1 = start.advance(1);
        let opt = OptimalOracle::new(&g).unwrap();
        // From v1 with s,v1 visited: v3 leaves Bob stuck on the revisit, v2 does not.
        assert_eq!(g.arc(opt.choose(&at_v1).unwrap()).head, g.node_index("v3").unwrap());
        assert_eq!(FirstArcOracle::new(&g).choose(&at_v1), Some(1));
        let scripted = ScriptedOracle::new(&g, &["a2"]).unwrap();
        assert_eq!(scripted.choose(&at_v1), Some(2));
        assert_eq!(scripted.choose(&start), Some(0));
    }
}
