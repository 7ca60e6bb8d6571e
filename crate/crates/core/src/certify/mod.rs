//! Independent certificate checks, colorings derived from certificates, and
//! the brute-force oracle.
//!
//! Nothing here looks at how a certificate was produced; the verifier works
//! from the abstract graph and the certificate alone.

mod color;
mod oracle;
mod verify;

pub use color::{
    check_coloring, greedy_color, peel_order, ColorError, ColoringFault, DefectiveColoring, ListAssignment,
};
pub use oracle::{oracle_nice, OracleError, ORACLE_MAX_VERTICES};
pub use verify::{find_directed_cycle, verify_nice, verify_plain, Verdict, Violation};
