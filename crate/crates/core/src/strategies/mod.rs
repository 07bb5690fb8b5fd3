//! Regular play on compiled boards, the composite Maker and Breaker
//! strategies built on it, and exhaustive verifiers for both conventions.

mod composite;
mod families;
mod mm;
mod pairings;
mod regular;
mod sequence;
mod verify;

pub use composite::{replay, Arena, BreakerStrategy, MakerStrategy, MbStrategy};
pub use families::{family, gadget_pairing, FamilyEntry, SUBSTITUTIONS};
pub use pairings::{assemble, end_pairing, punish, punishment_sweep, PunishmentPlan, SweepReport};
pub use regular::{gadget_residue, maker_wins_reentry, Expected, NodeStatus, RegularEnd, RegularPlay};
pub use sequence::{choice_index, choice_role, regular_sequence, Step, StepKind};
pub use verify::{verify_mb_strategy, Counterexample, LeafCounts, StrategyReport, VerifyOptions};
pub use mm::{mm_uniform_opening, verify_mm_claims, ClaimTally, MmReport};
