//! A* over the 8-connected grid with an octile-distance heuristic.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

use crate::grid::{path_cost, Coord, PlannedPath, TerrainGrid, SQRT_2};
use crate::planners::{FailureReason, PlanOutcome, PlanStatus};
use crate::{PlanTask, Result};

/// Octile distance scaled by the minimum finite cell cost.
///
/// The octile distance is the length of the cheapest unobstructed
/// 8-connected walk between the cells; multiplying by the cheapest possible
/// cell cost keeps the estimate admissible and consistent under the
/// destination-charging cost rule.
pub fn octile_heuristic(a: Coord, b: Coord, min_cost: f64) -> f64 {
    let dx = (a.x - b.x).abs() as f64;
    let dy = (a.y - b.y).abs() as f64;
    min_cost * (dx.max(dy) + (SQRT_2 - 1.0) * dx.min(dy))
}

/// Heap entry ordered for a deterministic expansion sequence: lowest f
/// first, ties by larger g, remaining ties by row-major cell index.
struct Open {
    f: f64,
    g: f64,
    idx: u32,
}

impl PartialEq for Open {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Open {}
impl PartialOrd for Open {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Open {
    fn cmp(&self, other: &Self) -> Ordering {
        // BinaryHeap pops the maximum; Greater means "expand sooner".
        other
            .f
            .total_cmp(&self.f)
            .then(self.g.total_cmp(&other.g))
            .then(other.idx.cmp(&self.idx))
    }
}

pub(super) const NEIGHBORS: [(i32, i32); 8] = [
    (-1, -1),
    (0, -1),
    (1, -1),
    (-1, 0),
    (1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
];

/// Plan with A*. Returns `Failure("unreachable")` when the open set runs
/// dry; errors only on an invalid task.
pub fn astar(grid: &TerrainGrid, task: &PlanTask) -> Result<PlanOutcome> {
    task.validate(grid)?;
    let clock = Instant::now();
    let min_cost = grid.min_cost();
    let n = grid.cells().len();
    let width = grid.width() as i32;

    let mut g = vec![f64::INFINITY; n];
    let mut parent = vec![u32::MAX; n];
    let mut heap = BinaryHeap::new();
    let start_idx = grid.index(task.start);
    let goal_idx = grid.index(task.goal);
    g[start_idx] = 0.0;
    heap.push(Open {
        f: octile_heuristic(task.start, task.goal, min_cost),
        g: 0.0,
        idx: start_idx as u32,
    });

    let mut expansions: u64 = 0;
    while let Some(Open {
        g: entry_g, idx, ..
    }) = heap.pop()
    {
        let idx = idx as usize;
        if entry_g > g[idx] {
            continue; // stale duplicate
        }
        expansions += 1;
        if idx == goal_idx {
            let points = reconstruct(grid, &parent, idx);
            let (total_cost, step_costs) = path_cost(grid, &points)?;
            let path = PlannedPath {
                points,
                step_costs,
                total_cost,
            };
            return Ok(PlanOutcome {
                status: PlanStatus::Success(path),
                expansions,
                wall_time: clock.elapsed(),
            });
        }
        let c = grid.coord_of(idx);
        for (dx, dy) in NEIGHBORS {
            let nb = Coord::new(c.x + dx, c.y + dy);
            if nb.x < 0 || nb.y < 0 || nb.x >= width || nb.y >= grid.height() as i32 {
                continue;
            }
            let cost = grid.cost_unchecked(nb);
            if cost.is_infinite() {
                continue;
            }
            let len = if dx != 0 && dy != 0 { SQRT_2 } else { 1.0 };
            let nb_idx = grid.index(nb);
            let g_new = g[idx] + cost * len;
            if g_new < g[nb_idx] {
                g[nb_idx] = g_new;
                parent[nb_idx] = idx as u32;
                heap.push(Open {
                    f: g_new + octile_heuristic(nb, task.goal, min_cost),
                    g: g_new,
                    idx: nb_idx as u32,
                });
            }
        }
    }
    Ok(PlanOutcome {
        status: PlanStatus::Failure(FailureReason::Unreachable),
        expansions,
        wall_time: clock.elapsed(),
    })
}

fn reconstruct(grid: &TerrainGrid, parent: &[u32], mut idx: usize) -> Vec<Coord> {
    let mut points = vec![grid.coord_of(idx)];
    while parent[idx] != u32::MAX {
        idx = parent[idx] as usize;
        points.push(grid.coord_of(idx));
    }
    points.reverse();
    points
}
