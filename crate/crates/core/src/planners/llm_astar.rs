//! A* chained through externally suggested waypoints: plan start -> w1,
//! w1 -> w2, ..., wk -> goal and splice the segments. With no waypoints
//! this is exactly plain A*.

use std::time::Instant;

use crate::grid::{Coord, PlannedPath, TerrainGrid};
use crate::planners::{astar, FailureReason, PlanOutcome, PlanStatus};
use crate::{PlanTask, Result};

pub fn llm_astar(grid: &TerrainGrid, task: &PlanTask, waypoints: &[Coord]) -> Result<PlanOutcome> {
    task.validate(grid)?;
    let clock = Instant::now();

    // Reject unusable waypoints up front, before spending any search effort.
    for &w in waypoints {
        if !grid.in_bounds(w) || grid.is_obstacle(w) {
            return Ok(PlanOutcome {
                status: PlanStatus::Failure(FailureReason::WaypointInObstacle),
                expansions: 0,
                wall_time: clock.elapsed(),
            });
        }
    }

    // Anchor sequence start, waypoints.., goal with consecutive duplicates
    // dropped (a repeated anchor would add a zero-length segment).
    let mut anchors = vec![task.start];
    for &w in waypoints.iter().chain(std::iter::once(&task.goal)) {
        if *anchors.last().expect("nonempty") != w {
            anchors.push(w);
        }
    }

    let mut points: Vec<Coord> = Vec::new();
    let mut expansions = 0u64;
    if anchors.len() == 1 {
        // Degenerate: every waypoint equals start equals goal.
        points.push(task.start);
    }
    for pair in anchors.windows(2) {
        let leg = PlanTask {
            map_id: task.map_id,
            start: pair[0],
            goal: pair[1],
        };
        let out = astar(grid, &leg)?;
        expansions += out.expansions;
        match out.status {
            PlanStatus::Success(p) => {
                // Segments share their junction point; keep it once.
                let skip = usize::from(!points.is_empty());
                points.extend_from_slice(&p.points[skip..]);
            }
            PlanStatus::Failure(_) => {
                return Ok(PlanOutcome {
                    status: PlanStatus::Failure(FailureReason::SegmentUnreachable),
                    expansions,
                    wall_time: clock.elapsed(),
                });
            }
        }
    }

    let (total_cost, step_costs) = crate::grid::path_cost(grid, &points)?;
    Ok(PlanOutcome {
        status: PlanStatus::Success(PlannedPath {
            points,
            step_costs,
            total_cost,
        }),
        expansions,
        wall_time: clock.elapsed(),
    })
}
