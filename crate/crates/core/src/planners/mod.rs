//! Path planners over [`crate::grid::TerrainGrid`].
//!
//! All planners share the cost rule from the grid module and report a
//! [`PlanOutcome`]: domain outcomes like an unreachable goal are
//! [`PlanStatus::Failure`] values, not errors. Errors are reserved for
//! invalid tasks and broken contracts.

mod astar;
mod dijkstra;
mod llm_astar;
mod rrt_star;

use std::fmt;
use std::time::Duration;

pub use astar::{astar, octile_heuristic};
pub use dijkstra::dijkstra_oracle;
pub use llm_astar::llm_astar;
pub use rrt_star::{rrt_star, rrt_star_traced, RrtParams};

use crate::grid::PlannedPath;

/// Result of one planning attempt.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanOutcome {
    pub status: PlanStatus,
    /// Nodes expanded (A* family) or tree nodes grown (RRT*).
    pub expansions: u64,
    pub wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PlanStatus {
    Success(PlannedPath),
    Failure(FailureReason),
}

impl PlanStatus {
    pub fn path(&self) -> Option<&PlannedPath> {
        match self {
            PlanStatus::Success(p) => Some(p),
            PlanStatus::Failure(_) => None,
        }
    }

    pub fn is_success(&self) -> bool {
        matches!(self, PlanStatus::Success(_))
    }
}

/// Why a planner gave up. The display strings are stable and appear in
/// path-file `status` fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureReason {
    /// No path exists (exhaustive search ran dry).
    Unreachable,
    /// The sampling budget ended before a connection was found.
    BudgetExhausted,
    /// A supplied waypoint sits on an obstacle cell or outside the grid.
    WaypointInObstacle,
    /// A leg between consecutive waypoints has no path.
    SegmentUnreachable,
    /// A waypoint list could not be read from backend text.
    WaypointParse,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureReason::Unreachable => "unreachable",
            FailureReason::BudgetExhausted => "budget exhausted",
            FailureReason::WaypointInObstacle => "waypoint in obstacle",
            FailureReason::SegmentUnreachable => "segment unreachable",
            FailureReason::WaypointParse => "waypoint parse failure",
        })
    }
}
