//! Uniform-cost search, kept deliberately plain so it can serve as an
//! independent optimality check on A*.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::grid::{Coord, TerrainGrid, SQRT_2};
use crate::{PlanTask, Result};

/// Exact optimal cost from start to goal under the destination-charging
/// rule, or `None` when the goal is unreachable.
pub fn dijkstra_oracle(grid: &TerrainGrid, task: &PlanTask) -> Result<Option<f64>> {
    task.validate(grid)?;
    let n = grid.cells().len();
    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    let mut heap: BinaryHeap<(Reverse<Key>, usize)> = BinaryHeap::new();
    let start = grid.index(task.start);
    let goal = grid.index(task.goal);
    dist[start] = 0.0;
    heap.push((Reverse(Key(0.0)), start));
    while let Some((Reverse(Key(d)), idx)) = heap.pop() {
        if done[idx] {
            continue;
        }
        done[idx] = true;
        if idx == goal {
            return Ok(Some(d));
        }
        let c = grid.coord_of(idx);
        for dy in -1i32..=1 {
            for dx in -1i32..=1 {
                if dx == 0 && dy == 0 {
                    continue;
                }
                let nb = Coord::new(c.x + dx, c.y + dy);
                if !grid.in_bounds(nb) {
                    continue;
                }
                let cost = grid.cost_unchecked(nb);
                if cost.is_infinite() {
                    continue;
                }
                let len = if dx != 0 && dy != 0 { SQRT_2 } else { 1.0 };
                let nd = d + cost * len;
                let nb_idx = grid.index(nb);
                if nd < dist[nb_idx] {
                    dist[nb_idx] = nd;
                    heap.push((Reverse(Key(nd)), nb_idx));
                }
            }
        }
    }
    Ok(None)
}

/// Finite f64 with a total order, for the heap.
#[derive(PartialEq)]
struct Key(f64);
impl Eq for Key {}
impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Key {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}
