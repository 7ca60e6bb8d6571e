//! Forbidden configurations, transcribed from the drawings.
//!
//! Vertex order in each edge list follows the drawing's coordinate names;
//! the comments give that naming so the table can be re-checked by eye.

use serde::{Deserialize, Serialize};

use crate::graph::SimpleGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConfigId {
    CommonA,
    CommonB,
    CommonC,
    AT345A,
    AT345B,
    AT345C,
    AT345D,
    AT48A,
    AT48B,
    AT48C,
    AT48D,
    AT48E,
}

impl ConfigId {
    pub const ALL: [ConfigId; 12] = [
        ConfigId::CommonA,
        ConfigId::CommonB,
        ConfigId::CommonC,
        ConfigId::AT345A,
        ConfigId::AT345B,
        ConfigId::AT345C,
        ConfigId::AT345D,
        ConfigId::AT48A,
        ConfigId::AT48B,
        ConfigId::AT48C,
        ConfigId::AT48D,
        ConfigId::AT48E,
    ];

    /// Shared by cases 1 and 2.
    pub const COMMON: [ConfigId; 3] = [ConfigId::CommonA, ConfigId::CommonB, ConfigId::CommonC];
    /// Case 1 only.
    pub const AT345: [ConfigId; 4] = [ConfigId::AT345A, ConfigId::AT345B, ConfigId::AT345C, ConfigId::AT345D];
    /// Case 2 only.
    pub const AT48: [ConfigId; 5] =
        [ConfigId::AT48A, ConfigId::AT48B, ConfigId::AT48C, ConfigId::AT48D, ConfigId::AT48E];

    pub fn name(self) -> &'static str {
        match self {
            ConfigId::CommonA => "CommonA",
            ConfigId::CommonB => "CommonB",
            ConfigId::CommonC => "CommonC",
            ConfigId::AT345A => "AT345A",
            ConfigId::AT345B => "AT345B",
            ConfigId::AT345C => "AT345C",
            ConfigId::AT345D => "AT345D",
            ConfigId::AT48A => "AT48A",
            ConfigId::AT48B => "AT48B",
            ConfigId::AT48C => "AT48C",
            ConfigId::AT48D => "AT48D",
            ConfigId::AT48E => "AT48E",
        }
    }

    pub fn vertex_count(self) -> usize {
        let (n, _) = self.raw();
        n
    }

    pub fn edges(self) -> &'static [(u32, u32)] {
        let (_, e) = self.raw();
        e
    }

    /// Pattern graph on vertices `0..vertex_count()`.
    pub fn pattern(self) -> SimpleGraph {
        let (n, e) = self.raw();
        SimpleGraph::from_parts((0..n as u32).collect(), e.to_vec())
    }

    fn raw(self) -> (usize, &'static [(u32, u32)]) {
        match self {
            // E N W S: 4-cycle with chord N-S
            ConfigId::CommonA => (4, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)]),
            // NE NW SW SE H: 5-cycle NE-H-NW-SW-SE with chord NE-NW
            ConfigId::CommonB => (5, &[(0, 4), (4, 1), (1, 2), (2, 3), (3, 0), (0, 1)]),
            // NE N NW SW S SE: 6-cycle with chord N-S
            ConfigId::CommonC => (6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4)]),
            // v1..v5, NE on v1v2, NW on v2v3
            ConfigId::AT345A => (7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 1), (1, 6), (6, 2)]),
            // v1..v5, NE on v1v2, SW on v3v4
            ConfigId::AT345B => (7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 1), (2, 6), (6, 3)]),
            // v1..v5, NE1 NE2 path v2-NE2-NE1-v1, NW on v2v3
            ConfigId::AT345C => (8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 6), (6, 5), (5, 0), (1, 7), (7, 2)]),
            // v1..v5, NE1 NE2 path v2-NE2-NE1-v1, SW on v3v4
            ConfigId::AT345D => (8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 6), (6, 5), (5, 0), (2, 7), (7, 3)]),
            // A B C D E F H1 H2: 8-cycle A-H1-B-H2-C-D-E-F with chord B-E
            ConfigId::AT48A => (8, &[(0, 6), (6, 1), (1, 7), (7, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4)]),
            // NE NW SW SE H1 H2: 5-cycle NE-H1-NW-SW-SE plus path NE-H2-NW
            ConfigId::AT48B => (6, &[(0, 4), (4, 1), (1, 2), (2, 3), (3, 0), (0, 5), (5, 1)]),
            // v1..v7, W on v3v4
            ConfigId::AT48C => (8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (2, 7), (7, 3)]),
            // v1..v6, N on v1v2, path v3-SW1-SW2-v4
            ConfigId::AT48D => {
                (9, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (6, 1), (2, 7), (7, 8), (8, 3)])
            }
            // v1..v6, W on v1v2, path v4-S1-S2-v5
            ConfigId::AT48E => {
                (9, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (6, 1), (3, 7), (7, 8), (8, 4)])
            }
        }
    }
}

impl std::fmt::Display for ConfigId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
