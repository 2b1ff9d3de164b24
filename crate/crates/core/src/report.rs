//! Solve outcome shared by every algorithm in the suite.

use crate::graph::EdgeSet;

/// Three-valued outcome. `Inconclusive` means a budget ran out before the
/// search finished; it is never a wrong answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    Inconclusive,
}

impl Decision {
    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }
}

impl std::fmt::Display for Decision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Decision::Yes => write!(f, "yes"),
            Decision::No => write!(f, "no"),
            Decision::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SolveStats {
    /// Search nodes or enumeration states explored.
    pub nodes: u64,
    /// Reduction-rule applications.
    pub rules_fired: u64,
    /// Wall time of the solve.
    pub millis: u128,
}

/// Decision, witness and trace of a single solve.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub decision: Decision,
    /// Strong edge set certifying a yes answer.
    pub witness: Option<EdgeSet>,
    /// Maximum feasible number of strong edges, when computed.
    pub optimum: Option<usize>,
    pub stats: SolveStats,
    /// Which algorithm (or dispatcher branch) produced the answer.
    pub algorithm: &'static str,
    /// Rule firings, shortcuts and confidence annotations, one line each.
    pub trace: Vec<String>,
}

impl SolveReport {
    pub fn new(algorithm: &'static str, decision: Decision) -> SolveReport {
        SolveReport {
            decision,
            witness: None,
            optimum: None,
            stats: SolveStats::default(),
            algorithm,
            trace: Vec::new(),
        }
    }

    pub fn yes(algorithm: &'static str, witness: EdgeSet) -> SolveReport {
        SolveReport {
            decision: Decision::Yes,
            witness: Some(witness),
            optimum: None,
            stats: SolveStats::default(),
            algorithm,
            trace: Vec::new(),
        }
    }

    pub fn no(algorithm: &'static str) -> SolveReport {
        SolveReport::new(algorithm, Decision::No)
    }

    pub fn inconclusive(algorithm: &'static str) -> SolveReport {
        SolveReport::new(algorithm, Decision::Inconclusive)
    }

    pub fn with_trace(mut self, line: impl Into<String>) -> SolveReport {
        self.trace.push(line.into());
        self
    }
}
