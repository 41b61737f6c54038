//! Run reports: outcome classification, result payloads, and assertion
//! telemetry.
//!
//! Every pipeline invocation ends in exactly one [`Outcome`]. Successful
//! outcomes carry their verified payload (a colouring or a partition) and
//! nothing else does; the [`RunReport`] constructors enforce that shape and
//! [`RunReport::check`] re-audits it. Telemetry counters record how often
//! soft fallbacks fired — a clean proof-faithful run reports all zeroes —
//! so batch drivers can separate "succeeded" from "succeeded without ever
//! leaving the argued path".

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::ForestPartition;
use std::time::Duration;

/// How a pipeline run ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// A verified equitable colouring was produced.
    Colored,
    /// A verified forest partition was produced.
    Partitioned,
    /// A complete search proved that no solution exists.
    Infeasible,
    /// The input fails the pipeline's α_v hypothesis.
    HypothesisViolated {
        vertex: usize,
        alpha: usize,
        need: usize,
    },
    /// A heuristic stage gave up without a verdict.
    Unsolved(String),
    /// Any other failure: bad input, exceeded budget, broken invariant.
    Error(String),
}

impl Outcome {
    /// Classifies an error. `Infeasible` never comes from an error — it is
    /// the `None` of a completed search.
    pub fn from_error(e: &Error) -> Outcome {
        match e {
            Error::HypothesisViolated { vertex, alpha, need } => Outcome::HypothesisViolated {
                vertex: *vertex,
                alpha: *alpha,
                need: *need,
            },
            Error::Unsolved(msg) => Outcome::Unsolved(msg.clone()),
            other => Outcome::Error(other.to_string()),
        }
    }

    /// Process exit code: 0 for results, 2 for proof-shaped negatives
    /// (infeasible or hypothesis failure), 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Colored | Outcome::Partitioned => 0,
            Outcome::Infeasible | Outcome::HypothesisViolated { .. } => 2,
            Outcome::Unsolved(_) | Outcome::Error(_) => 1,
        }
    }

    /// One-word label used in rendered reports.
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Colored => "Colored",
            Outcome::Partitioned => "Partitioned",
            Outcome::Infeasible => "Infeasible",
            Outcome::HypothesisViolated { .. } => "HypothesisViolated",
            Outcome::Unsolved(_) => "Unsolved",
            Outcome::Error(_) => "Error",
        }
    }
}

/// Snapshot of the soft-fallback counters kept across the crate, plus the
/// per-run planar monitor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Telemetry {
    /// Forest colouring runs that left the greedy layer ([`crate::forest::stall_count`]).
    pub forest_stalls: u64,
    /// High-degree outerplanar witness re-derivations
    /// ([`crate::outerplanar::gap_fallback_count`]).
    pub gap_fallbacks: u64,
    /// Planar peel candidates below the α-style size bound
    /// ([`crate::planar::PlanarLoopState::monitor_misses`]).
    pub monitor_misses: u64,
}

impl Telemetry {
    /// Current values of the global counters (the planar monitor is
    /// per-run and starts at zero).
    pub fn snapshot() -> Telemetry {
        Telemetry {
            forest_stalls: crate::forest::stall_count(),
            gap_fallbacks: crate::outerplanar::gap_fallback_count(),
            monitor_misses: 0,
        }
    }

    /// What changed since `earlier` — the contribution of one run.
    pub fn since(&self, earlier: &Telemetry) -> Telemetry {
        Telemetry {
            forest_stalls: self.forest_stalls.saturating_sub(earlier.forest_stalls),
            gap_fallbacks: self.gap_fallbacks.saturating_sub(earlier.gap_fallbacks),
            monitor_misses: self.monitor_misses.saturating_sub(earlier.monitor_misses),
        }
    }

    /// True when no fallback fired: the run never left the argued path.
    pub fn is_clean(&self) -> bool {
        self.forest_stalls == 0 && self.gap_fallbacks == 0 && self.monitor_misses == 0
    }
}

fn fnv_mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(0x100000001b3)
}

/// Stable digest of a graph: order, size, and an FNV-1a hash over the
/// sorted edge list (embedding-independent).
pub fn graph_digest(g: &Graph) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    h = fnv_mix(h, g.n() as u64);
    for &(u, v) in &g.sorted_edges() {
        h = fnv_mix(h, u as u64);
        h = fnv_mix(h, v as u64);
    }
    format!("n{}-m{}-{:016x}", g.n(), g.m(), h)
}

/// Report of one pipeline invocation.
#[derive(Debug, Clone)]
pub struct RunReport {
    /// The subcommand or pipeline that ran.
    pub command: String,
    /// [`graph_digest`] of the input.
    pub input_digest: String,
    pub outcome: Outcome,
    /// Present exactly when the outcome is `Colored`.
    pub coloring: Option<Coloring>,
    /// Present exactly when the outcome is `Partitioned`.
    pub partition: Option<ForestPartition>,
    pub telemetry: Telemetry,
    pub wall: Duration,
}

impl RunReport {
    /// A successful colouring run.
    pub fn colored(
        command: impl Into<String>,
        g: &Graph,
        coloring: Coloring,
        telemetry: Telemetry,
        wall: Duration,
    ) -> RunReport {
        RunReport {
            command: command.into(),
            input_digest: graph_digest(g),
            outcome: Outcome::Colored,
            coloring: Some(coloring),
            partition: None,
            telemetry,
            wall,
        }
    }

    /// A successful partition run.
    pub fn partitioned(
        command: impl Into<String>,
        g: &Graph,
        partition: ForestPartition,
        telemetry: Telemetry,
        wall: Duration,
    ) -> RunReport {
        RunReport {
            command: command.into(),
            input_digest: graph_digest(g),
            outcome: Outcome::Partitioned,
            coloring: None,
            partition: Some(partition),
            telemetry,
            wall,
        }
    }

    /// A run that ended without a payload. `outcome` must not be `Colored`
    /// or `Partitioned` — use the dedicated constructors for those.
    pub fn outcome_only(
        command: impl Into<String>,
        g: &Graph,
        outcome: Outcome,
        telemetry: Telemetry,
        wall: Duration,
    ) -> RunReport {
        debug_assert!(!matches!(outcome, Outcome::Colored | Outcome::Partitioned));
        RunReport {
            command: command.into(),
            input_digest: graph_digest(g),
            outcome,
            coloring: None,
            partition: None,
            telemetry,
            wall,
        }
    }

    /// Exit code of this run's outcome.
    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }

    /// Audits the payload-presence invariant: a colouring iff `Colored`, a
    /// partition iff `Partitioned`.
    pub fn check(&self) -> Result<()> {
        let want_col = self.outcome == Outcome::Colored;
        let want_part = self.outcome == Outcome::Partitioned;
        if self.coloring.is_some() != want_col || self.partition.is_some() != want_part {
            return Err(Error::internal(format!(
                "report payload does not match outcome {}",
                self.outcome.label()
            )));
        }
        Ok(())
    }

    /// Human-readable rendering, one `key: value` line each.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("input: {}\n", self.input_digest));
        match &self.outcome {
            Outcome::HypothesisViolated { vertex, alpha, need } => {
                out.push_str(&format!(
                    "outcome: HypothesisViolated (vertex {vertex}: α = {alpha} < {need})\n"
                ));
            }
            Outcome::Unsolved(msg) | Outcome::Error(msg) => {
                out.push_str(&format!("outcome: {} ({msg})\n", self.outcome.label()));
            }
            other => out.push_str(&format!("outcome: {}\n", other.label())),
        }
        if let Some(col) = &self.coloring {
            let sizes: Vec<String> = col.sorted_sizes().iter().map(|k| k.to_string()).collect();
            out.push_str(&format!("classes: {}\n", sizes.join(" ")));
        }
        if let Some(fp) = &self.partition {
            let sizes: Vec<String> = fp.sizes().iter().map(|k| k.to_string()).collect();
            out.push_str(&format!("parts: {}\n", sizes.join(" ")));
        }
        if self.telemetry.is_clean() {
            out.push_str("telemetry: clean\n");
        } else {
            out.push_str(&format!(
                "telemetry: forest_stalls={} gap_fallbacks={} monitor_misses={}\n",
                self.telemetry.forest_stalls,
                self.telemetry.gap_fallbacks,
                self.telemetry.monitor_misses
            ));
        }
        out.push_str(&format!("wall: {:.1?}\n", self.wall));
        out
    }
}
