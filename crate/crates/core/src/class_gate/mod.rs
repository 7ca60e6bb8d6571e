//! Hypothesis checks: forbidden configurations and forbidden cycle lengths.
//!
//! All checks are on the abstract graph. Configurations are matched as
//! (not necessarily induced) subgraphs and cycles anywhere count, not only
//! face boundaries.

mod atlas;
mod cycles;
mod matcher;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{SimpleGraph, Vertex};

pub use atlas::ConfigId;
pub use cycles::{find_cycle_of_length, is_cycle, MAX_CYCLE, MIN_CYCLE};
pub use matcher::Matcher;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("cycle length {0} is outside 3..=9")]
    CycleLength(usize),
}

/// Which hypothesis of the decomposition theorem a graph meets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    /// No common configuration and none of the AT345 family.
    Case1,
    /// No common configuration and none of the AT48 family.
    Case2,
    /// No 4-cycle and no 9-cycle.
    Case3,
}

impl CaseTag {
    pub const ALL: [CaseTag; 3] = [CaseTag::Case1, CaseTag::Case2, CaseTag::Case3];

    pub fn number(self) -> u8 {
        match self {
            CaseTag::Case1 => 1,
            CaseTag::Case2 => 2,
            CaseTag::Case3 => 3,
        }
    }

    pub fn from_number(n: u8) -> Option<CaseTag> {
        match n {
            1 => Some(CaseTag::Case1),
            2 => Some(CaseTag::Case2),
            3 => Some(CaseTag::Case3),
            _ => None,
        }
    }

    /// Configurations excluded by this case; empty for the cycle case.
    pub fn forbidden_configs(self) -> Vec<ConfigId> {
        match self {
            CaseTag::Case1 => ConfigId::COMMON.iter().chain(&ConfigId::AT345).copied().collect(),
            CaseTag::Case2 => ConfigId::COMMON.iter().chain(&ConfigId::AT48).copied().collect(),
            CaseTag::Case3 => Vec::new(),
        }
    }

    pub fn forbidden_cycles(self) -> &'static [usize] {
        match self {
            CaseTag::Case3 => &[4, 9],
            _ => &[],
        }
    }
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "case{}", self.number())
    }
}

/// Evidence that a case hypothesis fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Config { config: ConfigId, map: Vec<(u32, Vertex)> },
    Cycle { cycle: Vec<Vertex> },
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::Config { config, map } => {
                write!(f, "{config} at")?;
                for (p, h) in map {
                    write!(f, " {p}->{h}")?;
                }
                Ok(())
            }
            Witness::Cycle { cycle } => write!(f, "{}-cycle {:?}", cycle.len(), cycle),
        }
    }
}

fn matchers() -> &'static [Matcher] {
    static CELL: OnceLock<Vec<Matcher>> = OnceLock::new();
    CELL.get_or_init(|| ConfigId::ALL.iter().map(|c| Matcher::new(c.pattern())).collect())
}

fn matcher(c: ConfigId) -> &'static Matcher {
    let i = ConfigId::ALL.iter().position(|&d| d == c).unwrap();
    &matchers()[i]
}

/// An embedding of configuration `c` into `g`, as (pattern vertex, host
/// vertex) pairs, if `g` has a subgraph isomorphic to it.
pub fn contains_config(g: &SimpleGraph, c: ConfigId) -> Option<Vec<(u32, Vertex)>> {
    let f = matcher(c).find(g)?;
    Some(f.into_iter().enumerate().map(|(p, h)| (p as u32, g.label(h))).collect())
}

/// Per-case verdicts with failure witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub cases: BTreeSet<CaseTag>,
    pub witnesses: Vec<(CaseTag, Witness)>,
}

impl ClassReport {
    pub fn holds(&self, c: CaseTag) -> bool {
        self.cases.contains(&c)
    }

    pub fn is_none(&self) -> bool {
        self.cases.is_empty()
    }

    pub fn witness(&self, c: CaseTag) -> Option<&Witness> {
        self.witnesses.iter().find(|(d, _)| *d == c).map(|(_, w)| w)
    }
}

/// Every case whose hypothesis `g` satisfies.
pub fn classify(g: &SimpleGraph) -> BTreeSet<CaseTag> {
    classify_report(g).cases
}

/// Does `g` satisfy the hypothesis of `case`? Stops at the first witness.
pub fn satisfies(g: &SimpleGraph, case: CaseTag) -> bool {
    case_witness(g, case).is_none()
}

/// First obstruction to `case`, if any.
pub fn case_witness(g: &SimpleGraph, case: CaseTag) -> Option<Witness> {
    for &k in case.forbidden_cycles() {
        if let Some(cycle) = find_cycle_of_length(g, k).expect("length in range") {
            return Some(Witness::Cycle { cycle });
        }
    }
    case.forbidden_configs()
        .into_iter()
        .find_map(|c| contains_config(g, c).map(|map| Witness::Config { config: c, map }))
}

pub fn classify_report(g: &SimpleGraph) -> ClassReport {
    let mut cases = BTreeSet::new();
    let mut witnesses = Vec::new();
    // Shared configurations are searched once for cases 1 and 2.
    let common =
        ConfigId::COMMON.iter().find_map(|&c| contains_config(g, c).map(|map| Witness::Config { config: c, map }));
    for case in [CaseTag::Case1, CaseTag::Case2] {
        let own = match case {
            CaseTag::Case1 => &ConfigId::AT345[..],
            _ => &ConfigId::AT48[..],
        };
        let w = common
            .clone()
            .or_else(|| own.iter().find_map(|&c| contains_config(g, c).map(|map| Witness::Config { config: c, map })));
        match w {
            Some(w) => witnesses.push((case, w)),
            None => {
                cases.insert(case);
            }
        }
    }
    match case_witness(g, CaseTag::Case3) {
        Some(w) => witnesses.push((CaseTag::Case3, w)),
        None => {
            cases.insert(CaseTag::Case3);
        }
    }
    debug_assert!(cycle_family_implications_hold(g, &cases));
    ClassReport { cases, witnesses }
}

/// Graphs without 4-cycles and without l-cycles for some l in {5,6,7} meet
/// case 1; without 4- and 8-cycles they meet case 2.
pub fn cycle_family_implications_hold(g: &SimpleGraph, cases: &BTreeSet<CaseTag>) -> bool {
    let free = |k| find_cycle_of_length(g, k).expect("length in range").is_none();
    if !free(4) {
        return true;
    }
    let case1_ok = !(5..=7).any(free) || cases.contains(&CaseTag::Case1);
    let case2_ok = !free(8) || cases.contains(&CaseTag::Case2);
    case1_ok && case2_ok
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> SimpleGraph {
        SimpleGraph::from_edges((0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    #[test]
    fn every_pattern_contains_itself() {
        for c in ConfigId::ALL {
            let p = c.pattern();
            let f = contains_config(&p, c).expect("self containment");
            assert_eq!(f.len(), p.len());
        }
    }

    #[test]
    fn k4_contains_chorded_square() {
        let k4 = SimpleGraph::from_edges(vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(contains_config(&k4, ConfigId::CommonA).is_some());
        assert!(!classify(&k4).contains(&CaseTag::Case1));
    }

    #[test]
    fn five_cycle_with_two_triangles_is_at345a() {
        // v1..v5 = 0..4, triangles on v1v2 (apex 5) and v2v3 (apex 6)
        let g = SimpleGraph::from_edges(vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 1), (1, 6), (6, 2)]);
        assert!(contains_config(&g, ConfigId::AT345A).is_some());
        assert!(!classify(&g).contains(&CaseTag::Case1));
    }

    #[test]
    fn four_cycle_meets_cases_one_and_two_only() {
        let g = cycle(4);
        let r = classify_report(&g);
        assert_eq!(r.cases, BTreeSet::from([CaseTag::Case1, CaseTag::Case2]));
        match r.witness(CaseTag::Case3) {
            Some(Witness::Cycle { cycle }) => assert_eq!(cycle.len(), 4),
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn config_forbidders_drop_both_config_cases() {
        let g = ConfigId::CommonA.pattern();
        let c = classify(&g);
        assert!(!c.contains(&CaseTag::Case1) && !c.contains(&CaseTag::Case2));
    }

    #[test]
    fn long_cycle_meets_everything() {
        let c = classify(&cycle(10));
        assert_eq!(c.len(), 3);
    }
}
