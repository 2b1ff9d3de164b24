//! Exact solvers for the strong F-closure problem.
//!
//! Given a host graph `G`, a fixed pattern graph `F` and an integer `k`, the
//! problem asks for a spanning subgraph `H` of `G` with at least `k` edges
//! (the *strong* edges) such that whenever `H` induces a copy of `F` on some
//! vertex set, `G` induces something else there — strong copies of `F` must
//! always be broken by an extra edge of `G`. The `F = P3` case is the strong
//! triadic closure problem from social network analysis.
//!
//! The crate provides:
//! - a brute-force branch-and-bound oracle ([`oracle`]) used as ground truth,
//! - the parameter-`k` algorithms and kernels ([`solver_k`]),
//! - above-matching-guarantee algorithms for strong triadic closure on
//!   maximum degree 4 and for star patterns ([`above_matching`]),
//! - weak-edge parameterizations: bounded search tree and a hitting-set
//!   compression ([`weak_param`]),
//! - executable hardness constructions used as instance generators
//!   ([`reductions`]),
//! - seeded random graph models ([`gen`]).

pub mod bitset;
pub mod error;
pub mod gen;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod pattern;
pub mod report;

pub mod above_matching;
pub mod planarity;
pub mod reductions;
pub mod solver_k;
pub mod weak_param;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use graph::{Edge, EdgeSet, Graph, Matching};
pub use pattern::{Pattern, PatternClass};
pub use report::{Decision, SolveReport, SolveStats};
