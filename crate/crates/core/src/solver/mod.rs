//! Exact decision procedure for b-fold list colorability.
//!
//! The main entry point is [`solve`]: backtracking over b-subsets with
//! minimum-remaining-choices vertex selection, forward checking, and
//! interchangeable-value symmetry reduction driven by color orbits. A
//! budget turns long runs into a first-class TIMEOUT verdict — never into
//! a false UNSAT. [`brute::brute_force_solve`] is the deliberately dumb
//! reference oracle, and [`greedy::greedy_degenerate_solve`] realizes the
//! degeneracy upper-bound argument.

mod brute;
mod greedy;
mod orbit;
mod search;

pub use brute::{brute_force_solve, enumerate_colorings, BruteError};
pub use greedy::{greedy_degenerate_solve, GreedyOutcome};
pub use orbit::{color_orbits, ColorOrbit};

use std::time::{Duration, Instant};

use serde_json::{json, Value};
use thiserror::Error;

use crate::color::{verify_coloring, ColorUniverse, ListAssignment, MultiColoring};
use crate::exec::Parallelism;
use crate::graph::{Graph, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("b must be >= 1")]
    ZeroB,
    #[error("vertex {0} has no list")]
    MissingList(String),
    #[error("instance has {0} distinct colors; the solver caps at 128")]
    TooManyColors(u64),
    #[error("cycle cut names vertex {0} which is not in the graph")]
    BadCut(VertexId),
}

/// Node and wall-clock limits. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_millis: Option<u64>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_nodes: None,
        max_millis: None,
    };

    pub fn nodes(n: u64) -> Budget {
        Budget {
            max_nodes: Some(n),
            ..Budget::UNLIMITED
        }
    }

    pub fn millis(ms: u64) -> Budget {
        Budget {
            max_millis: Some(ms),
            ..Budget::UNLIMITED
        }
    }

    pub fn and_millis(self, ms: u64) -> Budget {
        Budget {
            max_millis: Some(ms),
            ..self
        }
    }

    pub(crate) fn deadline(&self, start: Instant) -> Option<Instant> {
        self.max_millis.map(|ms| start + Duration::from_millis(ms))
    }
}

/// A counting cut: each color may be used on at most `cap` vertices of the
/// cut set. Sound only when the cut's induced subgraph has independence
/// number ≤ cap — which holds for an induced odd cycle C_{2k+1} with
/// cap = k, the only shape this crate constructs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCut {
    pub vertices: Vec<VertexId>,
    pub cap: u32,
}

#[derive(Debug, Clone, Default)]
pub struct SolverConfig {
    pub budget: Budget,
    pub cuts: Vec<CycleCut>,
    /// Split the root branching across workers. Off by default; identical
    /// verdicts either way (see `solve` docs for the timeout edge case).
    pub parallel: Option<Parallelism>,
}

impl SolverConfig {
    pub fn budgeted(budget: Budget) -> SolverConfig {
        SolverConfig {
            budget,
            ..SolverConfig::default()
        }
    }

    pub fn with_cuts(mut self, cuts: Vec<CycleCut>) -> SolverConfig {
        self.cuts = cuts;
        self
    }

    pub fn with_parallelism(mut self, p: Parallelism) -> SolverConfig {
        self.parallel = Some(p);
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PruneStats {
    /// A vertex's remaining choices fell below b before search started.
    pub shortfall: u64,
    /// Forward check: a neighbor's availability dropped below b.
    pub forward: u64,
    /// A counting cut proved the remaining cut demand unsatisfiable.
    pub cycle: u64,
}

impl PruneStats {
    pub(crate) fn add(&mut self, other: &PruneStats) {
        self.shortfall += other.shortfall;
        self.forward += other.forward;
        self.cycle += other.cycle;
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolveStats {
    /// Assignment attempts (one per candidate subset tried at a vertex).
    pub nodes: u64,
    pub prunes: PruneStats,
    /// Wall time. Quarantined from primary serializations so identical
    /// configs produce byte-identical output.
    pub wall: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Sat(MultiColoring),
    Unsat,
    Timeout,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Sat(_) => "SAT",
            Verdict::Unsat => "UNSAT",
            Verdict::Timeout => "TIMEOUT",
        }
    }

    pub fn is_sat(&self) -> bool {
        matches!(self, Verdict::Sat(_))
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub verdict: Verdict,
    pub stats: SolveStats,
}

impl SolveOutcome {
    /// Primary JSON: verdict, optional witness, node/prune stats. Wall time
    /// deliberately excluded (it goes to the timing sidecar).
    pub fn to_json_value(&self, g: &Graph, universe: &ColorUniverse) -> Value {
        let mut doc = json!({
            "verdict": self.verdict.name(),
            "stats": {
                "nodes": self.stats.nodes,
                "prunes": {
                    "shortfall": self.stats.prunes.shortfall,
                    "forward": self.stats.prunes.forward,
                    "cycle": self.stats.prunes.cycle,
                },
            },
        });
        if let Verdict::Sat(phi) = &self.verdict {
            doc["witness"] = phi.to_json_value(g, universe);
        }
        doc
    }

    /// The quarantined timing record.
    pub fn timing_json_value(&self) -> Value {
        json!({ "wall_ms": self.stats.wall.as_millis() as u64 })
    }
}

/// Decide whether `g` has a b-fold coloring from `lists`.
///
/// SAT verdicts carry a witness which is re-checked against the
/// independent verifier before being returned; UNSAT is only reported
/// after the symmetry-reduced search space is exhausted; budget exhaustion
/// yields TIMEOUT.
///
/// With root splitting enabled the verdict agrees with sequential mode on
/// every instance that is decided within budget. When a subtree times out
/// while a later subtree finds a witness, the witness still wins (it is
/// verified evidence); UNSAT still requires every subtree to be exhausted.
pub fn solve(
    g: &Graph,
    lists: &ListAssignment,
    b: u32,
    config: &SolverConfig,
) -> Result<SolveOutcome, InstanceError> {
    let start = Instant::now();
    let mut outcome = search::run(g, lists, b, config, start)?;
    outcome.stats.wall = start.elapsed();
    if let Verdict::Sat(phi) = &outcome.verdict {
        // the solver must never hand out an unverified witness
        if let Err(violation) = verify_coloring(g, lists, phi) {
            panic!("solver produced an invalid witness: {violation}");
        }
    }
    Ok(outcome)
}
