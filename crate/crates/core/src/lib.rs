//! Proper chi-colorings in which every vertex begins a colorful path — a
//! path on chi vertices carrying all chi colors. The library builds such
//! colorings constructively for 3-chromatic graphs (the 7-cycle is the
//! lone impossible case) and for 4-chromatic graphs containing a 4-cycle,
//! and ships brute-force oracles that re-check every claim at small scale.

pub mod certify;
pub mod chromatic;
pub mod coloring;
pub mod digraph;
pub mod dot;
pub mod engine;
pub mod generate;
pub mod graph;
pub mod oracle;

pub use certify::{certify_all, find_colorful_path, verify_solution, CertificationReport, ColorfulPath, Direction, VerifyReport};
pub use chromatic::{chromatic_number, find_proper_coloring, two_coloring, LimitExceeded};
pub use coloring::{is_proper, next_color, prev_color, Coloring};
pub use digraph::{build_dc, find_oriented_cycle, level_partition, reachable_to, ColorDigraph, LevelPartition};
pub use engine::{solve, solve_3chromatic, solve_4chromatic_c4, solve_seeded, SolveError, SolveOutcome, SolveStatus, Trace};
pub use graph::{Graph, Vertex};
pub use oracle::{exhaustive_certifying_search, sweep_small_graphs, OracleVerdict, SweepSummary};
