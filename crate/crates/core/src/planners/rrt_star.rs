//! RRT* adapted to weighted grids: tree edges are straight segments scored
//! by the densified-segment cost, so the asymptotic-optimality machinery
//! (choose-parent and rewire inside a shrinking radius) optimizes the same
//! objective the grid planners do.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::grid::{densify, path_cost, segment_cost, Coord, PlannedPath, TerrainGrid};
use crate::planners::{FailureReason, PlanOutcome, PlanStatus};
use crate::{Error, PlanTask, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RrtParams {
    pub max_iterations: u32,
    /// Steering truncation length, in cells.
    pub step_size: f64,
    /// Scale of the shrinking neighbor radius `gamma * sqrt(ln n / n)`;
    /// the radius is additionally capped at `2 * step_size`.
    pub gamma: f64,
    /// Probability of sampling the goal instead of a uniform free cell.
    pub goal_bias: f64,
    /// A node this close to the goal (Euclidean, in cells) may connect.
    pub goal_tolerance: f64,
    pub rng_seed: u64,
}

impl Default for RrtParams {
    fn default() -> Self {
        RrtParams {
            max_iterations: 3000,
            step_size: 20.0,
            gamma: 1500.0,
            goal_bias: 0.05,
            goal_tolerance: 10.0,
            rng_seed: 0,
        }
    }
}

impl RrtParams {
    // Negated comparisons so NaN parameters also fail validation.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    fn validate(&self) -> Result<()> {
        if self.max_iterations == 0
            || !(self.step_size > 0.0)
            || !(self.gamma >= 0.0)
            || !(0.0..=1.0).contains(&self.goal_bias)
            || !(self.goal_tolerance >= 0.0)
        {
            return Err(Error::Contract("invalid RRT* parameters".into()));
        }
        Ok(())
    }
}

struct Node {
    pos: Coord,
    parent: u32,
    cost: f64,
    children: Vec<u32>,
}

const NO_PARENT: u32 = u32::MAX;

/// Uniform grid of node buckets sized to the steering step, so nearest and
/// radius queries touch a handful of buckets instead of the whole tree.
struct Buckets {
    size: i32,
    cols: i32,
    rows: i32,
    cells: Vec<Vec<u32>>,
}

impl Buckets {
    fn new(width: u32, height: u32, step: f64) -> Self {
        let size = (step.ceil() as i32).max(1);
        let cols = (width as i32 + size - 1) / size;
        let rows = (height as i32 + size - 1) / size;
        Buckets {
            size,
            cols,
            rows,
            cells: vec![Vec::new(); (cols * rows) as usize],
        }
    }

    fn key(&self, c: Coord) -> (i32, i32) {
        (c.x / self.size, c.y / self.size)
    }

    fn insert(&mut self, c: Coord, idx: u32) {
        let (bx, by) = self.key(c);
        self.cells[(by * self.cols + bx) as usize].push(idx);
    }

    /// Index of the node nearest to `q`; ties go to the oldest node.
    fn nearest(&self, nodes: &[Node], q: Coord) -> u32 {
        let (qx, qy) = self.key(q);
        let mut best: Option<(i64, u32)> = None;
        for ring in 0..self.cols.max(self.rows) + 1 {
            if let Some((d2, _)) = best {
                // Cells on this ring are at least (ring-1)*size cells away.
                let floor = ((ring - 1).max(0) as i64) * self.size as i64;
                if floor * floor > d2 {
                    break;
                }
            }
            self.for_ring(qx, qy, ring, |bucket| {
                for &i in bucket {
                    let d2 = q.dist2(nodes[i as usize].pos);
                    if best.map_or(true, |(bd, bi)| d2 < bd || (d2 == bd && i < bi)) {
                        best = Some((d2, i));
                    }
                }
            });
        }
        best.expect("tree is never empty").1
    }

    /// All node indices within Euclidean `radius` of `q`, ascending.
    fn within(&self, nodes: &[Node], q: Coord, radius: f64) -> Vec<u32> {
        let r = radius.max(0.0);
        let r2 = r * r;
        let (bx0, by0) = self.key(Coord::new(
            (q.x - r.ceil() as i32).max(0),
            (q.y - r.ceil() as i32).max(0),
        ));
        let bx1 = ((q.x + r.ceil() as i32) / self.size).min(self.cols - 1);
        let by1 = ((q.y + r.ceil() as i32) / self.size).min(self.rows - 1);
        let mut out = Vec::new();
        for by in by0..=by1 {
            for bx in bx0..=bx1 {
                for &i in &self.cells[(by * self.cols + bx) as usize] {
                    if (q.dist2(nodes[i as usize].pos) as f64) <= r2 {
                        out.push(i);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn for_ring(&self, qx: i32, qy: i32, ring: i32, mut f: impl FnMut(&[u32])) {
        let (x0, x1) = (qx - ring, qx + ring);
        let (y0, y1) = (qy - ring, qy + ring);
        for by in y0.max(0)..=y1.min(self.rows - 1) {
            for bx in x0.max(0)..=x1.min(self.cols - 1) {
                if bx == x0 || bx == x1 || by == y0 || by == y1 {
                    f(&self.cells[(by * self.cols + bx) as usize]);
                }
            }
        }
    }
}

/// Plan with RRT*. See [`rrt_star_traced`] for the anytime cost trace.
pub fn rrt_star(grid: &TerrainGrid, task: &PlanTask, params: &RrtParams) -> Result<PlanOutcome> {
    rrt_star_traced(grid, task, params).map(|(outcome, _)| outcome)
}

/// Plan with RRT* and also return the best goal-connected cost sampled every
/// 100 iterations (infinity until the first connection). The trace is
/// non-increasing: rewiring only ever lowers node costs.
pub fn rrt_star_traced(
    grid: &TerrainGrid,
    task: &PlanTask,
    params: &RrtParams,
) -> Result<(PlanOutcome, Vec<f64>)> {
    task.validate(grid)?;
    params.validate()?;
    let clock = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
    let min_cost = grid.min_cost();

    let mut nodes = vec![Node {
        pos: task.start,
        parent: NO_PARENT,
        cost: 0.0,
        children: Vec::new(),
    }];
    let mut buckets = Buckets::new(grid.width(), grid.height(), params.step_size);
    buckets.insert(task.start, 0);
    // (node index, cost of the segment from the node into the goal)
    let mut goal_links: Vec<(u32, f64)> = Vec::new();
    try_goal_link(grid, params, &nodes, 0, task.goal, &mut goal_links)?;

    let mut trace = Vec::with_capacity((params.max_iterations / 100) as usize);

    for iter in 1..=params.max_iterations {
        if let Some(q_new) = grow_once(
            grid,
            task,
            params,
            &mut rng,
            &mut nodes,
            &mut buckets,
            min_cost,
        )? {
            try_goal_link(grid, params, &nodes, q_new, task.goal, &mut goal_links)?;
        }
        if iter % 100 == 0 {
            trace.push(best_link_cost(&nodes, &goal_links));
        }
    }

    let expansions = nodes.len() as u64;
    let Some((leaf, _)) = best_link(&nodes, &goal_links) else {
        let outcome = PlanOutcome {
            status: PlanStatus::Failure(FailureReason::BudgetExhausted),
            expansions,
            wall_time: clock.elapsed(),
        };
        return Ok((outcome, trace));
    };

    // Collect the branch, then densify waypoints into a cell path.
    let mut waypoints = Vec::new();
    let mut at = leaf;
    loop {
        waypoints.push(nodes[at as usize].pos);
        if nodes[at as usize].parent == NO_PARENT {
            break;
        }
        at = nodes[at as usize].parent;
    }
    waypoints.reverse();
    if *waypoints.last().expect("branch nonempty") != task.goal {
        waypoints.push(task.goal);
    }
    let points = densify(&waypoints);
    let (total_cost, step_costs) = path_cost(grid, &points)?;
    let outcome = PlanOutcome {
        status: PlanStatus::Success(PlannedPath {
            points,
            step_costs,
            total_cost,
        }),
        expansions,
        wall_time: clock.elapsed(),
    };
    Ok((outcome, trace))
}

/// One sampling iteration. Returns the index of the inserted node, if any.
#[allow(clippy::too_many_arguments)]
fn grow_once(
    grid: &TerrainGrid,
    task: &PlanTask,
    params: &RrtParams,
    rng: &mut ChaCha8Rng,
    nodes: &mut Vec<Node>,
    buckets: &mut Buckets,
    min_cost: f64,
) -> Result<Option<u32>> {
    let Some(sample) = draw_sample(grid, task, params, rng) else {
        return Ok(None);
    };
    let near_idx = buckets.nearest(nodes, sample);
    let near = nodes[near_idx as usize].pos;
    if sample == near {
        return Ok(None);
    }

    // Steer: cap the advance at step_size along the straight line.
    let d = near.dist(sample);
    let q_new = if d <= params.step_size {
        sample
    } else {
        let t = params.step_size / d;
        Coord::new(
            near.x + ((sample.x - near.x) as f64 * t).round() as i32,
            near.y + ((sample.y - near.y) as f64 * t).round() as i32,
        )
    };
    if q_new == near || grid.cost_unchecked(q_new).is_infinite() {
        return Ok(None);
    }

    // Choose the cheapest parent among the nearest node and the radius
    // neighborhood. `bound` prunes candidates that provably cannot win:
    // a segment can never cost less than distance times the cheapest cell.
    let n = nodes.len();
    let radius = neighbor_radius(params, n);
    let neighbors = buckets.within(nodes, q_new, radius);
    let mut best: Option<(u32, f64)> = None; // (parent, cost through parent)
    let consider = |idx: u32, nodes: &[Node], best: &mut Option<(u32, f64)>| -> Result<()> {
        let cand = &nodes[idx as usize];
        let bound = cand.cost + cand.pos.dist(q_new) * min_cost;
        if best.is_some_and(|(_, c)| bound >= c) {
            return Ok(());
        }
        let edge = segment_cost(grid, cand.pos, q_new)?;
        if edge.is_finite() {
            let through = cand.cost + edge;
            if best.map_or(true, |(_, c)| through < c) {
                *best = Some((idx, through));
            }
        }
        Ok(())
    };
    consider(near_idx, nodes, &mut best)?;
    for &nb in &neighbors {
        if nb != near_idx {
            consider(nb, nodes, &mut best)?;
        }
    }
    let Some((parent, cost)) = best else {
        return Ok(None);
    };

    let new_idx = nodes.len() as u32;
    nodes.push(Node {
        pos: q_new,
        parent,
        cost,
        children: Vec::new(),
    });
    nodes[parent as usize].children.push(new_idx);
    buckets.insert(q_new, new_idx);

    // Rewire: reroute any neighbor that becomes cheaper through the new node.
    for &nb in &neighbors {
        if nb == parent {
            continue;
        }
        let nb_cost = nodes[nb as usize].cost;
        let nb_pos = nodes[nb as usize].pos;
        if cost + nb_pos.dist(q_new) * min_cost >= nb_cost {
            continue;
        }
        let edge = segment_cost(grid, q_new, nb_pos)?;
        let through = cost + edge;
        if edge.is_finite() && through < nb_cost {
            reparent(nodes, nb, new_idx, through);
        }
    }
    Ok(Some(new_idx))
}

fn draw_sample(
    grid: &TerrainGrid,
    task: &PlanTask,
    params: &RrtParams,
    rng: &mut ChaCha8Rng,
) -> Option<Coord> {
    if rng.gen::<f64>() < params.goal_bias {
        return Some(task.goal);
    }
    for _ in 0..10_000 {
        let c = Coord::new(
            rng.gen_range(0..grid.width()) as i32,
            rng.gen_range(0..grid.height()) as i32,
        );
        if !grid.cost_unchecked(c).is_infinite() {
            return Some(c);
        }
    }
    None
}

fn neighbor_radius(params: &RrtParams, n: usize) -> f64 {
    let n = n.max(2) as f64;
    (params.gamma * (n.ln() / n).sqrt()).min(2.0 * params.step_size)
}

/// Re-hang `node` under `new_parent` at `new_cost` and push the saving down
/// the subtree.
fn reparent(nodes: &mut [Node], node: u32, new_parent: u32, new_cost: f64) {
    let old_parent = nodes[node as usize].parent;
    if old_parent != NO_PARENT {
        nodes[old_parent as usize].children.retain(|&c| c != node);
    }
    nodes[node as usize].parent = new_parent;
    nodes[new_parent as usize].children.push(node);
    let delta = nodes[node as usize].cost - new_cost;
    debug_assert!(delta > 0.0);
    let mut stack = vec![node];
    while let Some(i) = stack.pop() {
        nodes[i as usize].cost -= delta;
        stack.extend_from_slice(&nodes[i as usize].children);
    }
}

fn try_goal_link(
    grid: &TerrainGrid,
    params: &RrtParams,
    nodes: &[Node],
    idx: u32,
    goal: Coord,
    links: &mut Vec<(u32, f64)>,
) -> Result<()> {
    let pos = nodes[idx as usize].pos;
    let tol = params.goal_tolerance;
    if (pos.dist2(goal) as f64) <= tol * tol {
        let edge = segment_cost(grid, pos, goal)?;
        if edge.is_finite() {
            links.push((idx, edge));
        }
    }
    Ok(())
}

fn best_link(nodes: &[Node], links: &[(u32, f64)]) -> Option<(u32, f64)> {
    let mut best: Option<(u32, f64)> = None;
    for &(idx, edge) in links {
        let total = nodes[idx as usize].cost + edge;
        if best.map_or(true, |(_, c)| total < c) {
            best = Some((idx, total));
        }
    }
    best
}

fn best_link_cost(nodes: &[Node], links: &[(u32, f64)]) -> f64 {
    best_link(nodes, links).map_or(f64::INFINITY, |(_, c)| c)
}
