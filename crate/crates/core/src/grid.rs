//! Terrain grids, cost models, and the cost arithmetic shared by every
//! planner and judge in the crate.
//!
//! Conventions that everything else depends on:
//!
//! * Coordinates are `(x, y)` where `x` is the column and `y` is the row,
//!   both 0-based.
//! * Moves connect 8-neighbors. A cardinal move has length 1, a diagonal
//!   move length sqrt(2).
//! * Each move is charged the cost of its *destination* cell times the move
//!   length. The start cell of a path is never charged.
//! * Impassable cells carry [`INFINITE`] (IEEE infinity). Cost sums stay
//!   correct without any sentinel arithmetic.

use std::collections::HashMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Cost of an impassable cell.
pub const INFINITE: f64 = f64::INFINITY;

/// Length of a diagonal move.
pub const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// A grid cell position: `x` is the column, `y` the row, both 0-based.
///
/// Serialized as a `[x, y]` pair everywhere (JSON sidecars, path files,
/// reports), matching the textual `(x, y)` convention of the describers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coord {
    pub x: i32,
    pub y: i32,
}

impl Coord {
    pub const fn new(x: i32, y: i32) -> Self {
        Coord { x, y }
    }

    /// Chebyshev distance, the move count of an unobstructed 8-connected walk.
    pub fn chebyshev(self, other: Coord) -> i32 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }

    /// Squared Euclidean distance, exact in integer arithmetic.
    pub fn dist2(self, other: Coord) -> i64 {
        let dx = (self.x - other.x) as i64;
        let dy = (self.y - other.y) as i64;
        dx * dx + dy * dy
    }

    pub fn dist(self, other: Coord) -> f64 {
        (self.dist2(other) as f64).sqrt()
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for Coord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.x, self.y).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (x, y) = <(i32, i32)>::deserialize(d)?;
        Ok(Coord { x, y })
    }
}

/// One terrain class: a display label, its exact image color, and its cost.
#[derive(Debug, Clone, PartialEq)]
pub struct CostEntry {
    pub label: String,
    pub color: [u8; 3],
    /// Positive traversal cost; [`INFINITE`] marks an impassable class.
    pub cost: f64,
}

/// Ordered list of terrain classes.
///
/// Invariants, checked at construction:
/// * at least one entry, at least one finite cost;
/// * colors are pairwise distinct (costs may repeat);
/// * every cost is positive;
/// * exactly one entry carries the minimum finite cost. That entry is the
///   free terrain: generated maps use it as the base fill and the describers
///   omit it from terrain summaries.
#[derive(Debug, Clone, PartialEq)]
pub struct CostModel {
    entries: Vec<CostEntry>,
}

impl CostModel {
    pub fn new(entries: Vec<CostEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::CostModel("no entries".into()));
        }
        let mut colors = HashMap::new();
        for e in &entries {
            if let Some(prev) = colors.insert(e.color, e.label.clone()) {
                return Err(Error::CostModel(format!(
                    "entries {:?} and {:?} share color {:?}",
                    prev, e.label, e.color
                )));
            }
            if e.cost <= 0.0 || e.cost.is_nan() {
                return Err(Error::CostModel(format!(
                    "entry {:?} has non-positive cost {}",
                    e.label, e.cost
                )));
            }
        }
        let free = entries
            .iter()
            .filter(|e| e.cost.is_finite())
            .map(|e| e.cost)
            .fold(f64::INFINITY, f64::min);
        if !free.is_finite() {
            return Err(Error::CostModel("every entry is impassable".into()));
        }
        if entries.iter().filter(|e| e.cost == free).count() != 1 {
            return Err(Error::CostModel(format!(
                "minimum finite cost {free} must belong to exactly one entry"
            )));
        }
        Ok(CostModel { entries })
    }

    pub fn entries(&self) -> &[CostEntry] {
        &self.entries
    }

    /// Cost of the free terrain: the unique minimum finite cost.
    pub fn free_cost(&self) -> f64 {
        self.entries
            .iter()
            .filter(|e| e.cost.is_finite())
            .map(|e| e.cost)
            .fold(f64::INFINITY, f64::min)
    }

    /// Distinct finite costs above the free cost, ascending. These are the
    /// costs map generation draws high-cost regions from.
    pub fn region_costs(&self) -> Vec<f64> {
        let free = self.free_cost();
        let mut costs: Vec<f64> = self
            .entries
            .iter()
            .map(|e| e.cost)
            .filter(|c| c.is_finite() && *c > free)
            .collect();
        costs.sort_by(f64::total_cmp);
        costs.dedup();
        costs
    }

    pub fn color_of(&self, cost: f64) -> Option<[u8; 3]> {
        self.entries
            .iter()
            .find(|e| e.cost == cost)
            .map(|e| e.color)
    }

    pub fn cost_of_color(&self, color: [u8; 3]) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.color == color)
            .map(|e| e.cost)
    }

    /// True if `cost` is exactly one of the model's costs.
    pub fn contains_cost(&self, cost: f64) -> bool {
        self.entries.iter().any(|e| e.cost == cost)
    }

    /// Parse the JSON map format: `{ label: { "color": [r, g, b], "cost": number | "inf" } }`.
    /// Entry order in the file is preserved and meaningful: when two entries
    /// share a cost, rendering uses the first matching color.
    pub fn from_json_str(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct RawEntry {
            color: [u8; 3],
            cost: CostValue,
        }
        let raw: serde_json::Map<String, serde_json::Value> = serde_json::from_str(text)?;
        let mut entries = Vec::with_capacity(raw.len());
        for (label, value) in raw {
            let e: RawEntry = serde_json::from_value(value)?;
            entries.push(CostEntry {
                label,
                color: e.color,
                cost: e.cost.0,
            });
        }
        CostModel::new(entries)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> String {
        let mut map = serde_json::Map::new();
        for e in &self.entries {
            map.insert(
                e.label.clone(),
                serde_json::json!({ "color": e.color, "cost": CostValue(e.cost) }),
            );
        }
        serde_json::to_string_pretty(&map).expect("cost model serializes")
    }

    /// Built-in model for the synthetic multi-terrain dataset: twelve
    /// difficulty levels from free (white, cost 1) to impassable (black).
    pub fn multi_terra_path() -> Self {
        builtin(include_str!("../data/multi_terra_path.json"))
    }

    /// Built-in model for the relabeled outdoor-scene dataset: 24 semantic
    /// classes, most impassable, over concrete/gravel/grass/dirt/mulch/
    /// rockbed/sand as traversable ground.
    pub fn rugd_v2() -> Self {
        builtin(include_str!("../data/rugd_v2.json"))
    }
}

fn builtin(text: &str) -> CostModel {
    CostModel::from_json_str(text).expect("built-in cost model is valid")
}

/// Which bundled dataset convention a map collection follows. Controls the
/// cost model and how retrieval picks historical examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DatasetKind {
    #[default]
    MultiTerraPath,
    #[serde(rename = "RUGD_v2")]
    RugdV2,
}

impl DatasetKind {
    pub fn cost_model(self) -> CostModel {
        match self {
            DatasetKind::MultiTerraPath => CostModel::multi_terra_path(),
            DatasetKind::RugdV2 => CostModel::rugd_v2(),
        }
    }
}

/// A cost that serializes as a JSON number, or as the string `"inf"` when
/// infinite. JSON has no literal for infinity; this wrapper keeps impassable
/// costs symbolic instead of smuggling in an integer sentinel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostValue(pub f64);

impl Serialize for CostValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for CostValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::Number(n) => n
                .as_f64()
                .map(CostValue)
                .ok_or_else(|| D::Error::custom("cost is not representable as f64")),
            serde_json::Value::String(s) if s == "inf" => Ok(CostValue(INFINITE)),
            other => Err(D::Error::custom(format!(
                "cost must be a number or \"inf\", got {other}"
            ))),
        }
    }
}

/// A width x height grid of per-cell traversal costs plus the model the
/// costs come from. Immutable after construction.
#[derive(Debug, Clone)]
pub struct TerrainGrid {
    width: u32,
    height: u32,
    cells: Vec<f64>,
    model: CostModel,
}

impl TerrainGrid {
    /// Build a grid from row-major cell costs. Every cost must be exactly
    /// one of the model's costs.
    pub fn from_cells(width: u32, height: u32, cells: Vec<f64>, model: CostModel) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Contract("grid dimensions must be positive".into()));
        }
        if cells.len() != (width as usize) * (height as usize) {
            return Err(Error::Contract(format!(
                "expected {} cells for a {width}x{height} grid, got {}",
                (width as usize) * (height as usize),
                cells.len()
            )));
        }
        for (i, &c) in cells.iter().enumerate() {
            if !model.contains_cost(c) {
                return Err(Error::CostModel(format!(
                    "cell ({}, {}) has cost {c} not present in the model",
                    i % width as usize,
                    i / width as usize
                )));
            }
        }
        Ok(TerrainGrid {
            width,
            height,
            cells,
            model,
        })
    }

    /// Uniform grid filled with a single model cost.
    pub fn uniform(width: u32, height: u32, cost: f64, model: CostModel) -> Result<Self> {
        let n = (width as usize) * (height as usize);
        Self::from_cells(width, height, vec![cost; n], model)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn model(&self) -> &CostModel {
        &self.model
    }

    pub fn in_bounds(&self, c: Coord) -> bool {
        c.x >= 0 && c.y >= 0 && (c.x as u32) < self.width && (c.y as u32) < self.height
    }

    /// Row-major index of an in-bounds coordinate.
    #[inline]
    pub fn index(&self, c: Coord) -> usize {
        debug_assert!(self.in_bounds(c));
        c.y as usize * self.width as usize + c.x as usize
    }

    pub fn coord_of(&self, index: usize) -> Coord {
        Coord::new(
            (index % self.width as usize) as i32,
            (index / self.width as usize) as i32,
        )
    }

    /// Cost of the cell at `c`, or an out-of-bounds error.
    pub fn cost_at(&self, c: Coord) -> Result<f64> {
        if !self.in_bounds(c) {
            return Err(Error::OutOfBounds {
                coord: c,
                width: self.width,
                height: self.height,
            });
        }
        Ok(self.cells[self.index(c)])
    }

    /// Overwrites one cell. The new cost must belong to the grid's model.
    pub fn set_cost(&mut self, c: Coord, cost: f64) -> Result<()> {
        if !self.in_bounds(c) {
            return Err(Error::OutOfBounds {
                coord: c,
                width: self.width,
                height: self.height,
            });
        }
        if !self.model.contains_cost(cost) {
            return Err(Error::CostModel(format!("cost {cost} is not in the model")));
        }
        let i = self.index(c);
        self.cells[i] = cost;
        Ok(())
    }

    /// Cost lookup without the bounds check; `c` must be in bounds.
    #[inline]
    pub(crate) fn cost_unchecked(&self, c: Coord) -> f64 {
        self.cells[self.index(c)]
    }

    pub fn is_obstacle(&self, c: Coord) -> bool {
        self.in_bounds(c) && self.cells[self.index(c)].is_infinite()
    }

    /// Minimum finite cost of the model; the unit the A* heuristic scales by.
    pub fn min_cost(&self) -> f64 {
        self.model.free_cost()
    }

    pub(crate) fn cells(&self) -> &[f64] {
        &self.cells
    }
}

/// One planning problem: a map identifier plus start and goal cells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanTask {
    pub map_id: u64,
    pub start: Coord,
    pub goal: Coord,
}

impl PlanTask {
    /// Check the task against a grid: both endpoints in bounds, on finite
    /// cells, and distinct.
    pub fn validate(&self, grid: &TerrainGrid) -> Result<()> {
        for (name, c) in [("start", self.start), ("goal", self.goal)] {
            let cost = grid
                .cost_at(c)
                .map_err(|_| Error::Task(format!("{name} {c} is out of bounds")))?;
            if cost.is_infinite() {
                return Err(Error::Task(format!("{name} {c} is on an obstacle cell")));
            }
        }
        if self.start == self.goal {
            return Err(Error::Task("start and goal coincide".into()));
        }
        Ok(())
    }
}

/// A concrete path: its points, the cost charged by each move, and the sum.
///
/// Planner output always has consecutive points that are 8-neighbors and
/// finite step costs. Externally supplied paths may cross obstacles, in
/// which case the crossing steps and the total are [`INFINITE`].
#[derive(Debug, Clone, PartialEq)]
pub struct PlannedPath {
    pub points: Vec<Coord>,
    pub step_costs: Vec<f64>,
    pub total_cost: f64,
}

impl PlannedPath {
    /// Compute step costs and total for an 8-connected point sequence.
    pub fn from_points(grid: &TerrainGrid, points: Vec<Coord>) -> Result<Self> {
        let (total_cost, step_costs) = path_cost(grid, &points)?;
        Ok(PlannedPath {
            points,
            step_costs,
            total_cost,
        })
    }

    pub fn start(&self) -> Coord {
        self.points[0]
    }

    pub fn end(&self) -> Coord {
        *self.points.last().expect("paths are nonempty")
    }
}

/// Total cost and per-move costs of a point sequence.
///
/// Every point must be in bounds and consecutive points must be distinct
/// 8-neighbors; violations are structured errors. A single point is a valid
/// path of cost 0. The first cell is never charged; each move is charged
/// `cost(destination) * length`, so a path through an obstacle cell sums to
/// [`INFINITE`] rather than failing.
pub fn path_cost(grid: &TerrainGrid, points: &[Coord]) -> Result<(f64, Vec<f64>)> {
    let Some(&first) = points.first() else {
        return Err(Error::Contract("path_cost: empty point sequence".into()));
    };
    grid.cost_at(first)?;
    let mut step_costs = Vec::with_capacity(points.len().saturating_sub(1));
    let mut total = 0.0;
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        let dx = (b.x - a.x).abs();
        let dy = (b.y - a.y).abs();
        if dx > 1 || dy > 1 || (dx == 0 && dy == 0) {
            return Err(Error::NonAdjacentStep { a, b });
        }
        let len = if dx + dy == 2 { SQRT_2 } else { 1.0 };
        let step = grid.cost_at(b)? * len;
        total += step;
        step_costs.push(step);
    }
    Ok((total, step_costs))
}

/// Walks every cell a straight segment between two cell centers passes
/// through, in order. Where the segment crosses a cell corner exactly, the
/// walk takes the diagonal step; everywhere else consecutive cells share an
/// edge, so nothing the segment touches is skipped.
struct SegmentWalk {
    pos: Coord,
    major: (i32, i32),
    minor: (i32, i32),
    ddx: i64,
    ddy: i64,
    err: i64,
    prev: i64,
    remaining: i32,
    pending: Option<Coord>,
    started: bool,
}

impl SegmentWalk {
    fn new(a: Coord, b: Coord) -> Self {
        let dx = (b.x - a.x).abs();
        let dy = (b.y - a.y).abs();
        let sx = (b.x - a.x).signum();
        let sy = (b.y - a.y).signum();
        // Walk the longer axis; the shorter one advances on error overflow.
        let (major, minor, dmaj, dmin) = if dx >= dy {
            ((sx, 0), (0, sy), dx, dy)
        } else {
            ((0, sy), (sx, 0), dy, dx)
        };
        SegmentWalk {
            pos: a,
            major,
            minor,
            ddx: 2 * dmaj as i64,
            ddy: 2 * dmin as i64,
            err: dmaj as i64,
            prev: dmaj as i64,
            remaining: dmaj,
            pending: None,
            started: false,
        }
    }
}

impl Iterator for SegmentWalk {
    type Item = Coord;

    fn next(&mut self) -> Option<Coord> {
        if !self.started {
            self.started = true;
            return Some(self.pos);
        }
        if let Some(p) = self.pending.take() {
            return Some(p);
        }
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let old = self.pos;
        self.err += self.ddy;
        if self.err > self.ddx {
            self.err -= self.ddx;
            // The segment leaves the old cell through a side or exactly
            // through the corner; `cross` tells which side came first.
            let cross = self.err + self.prev;
            self.prev = self.err;
            self.pos = Coord::new(
                old.x + self.major.0 + self.minor.0,
                old.y + self.major.1 + self.minor.1,
            );
            let extra = if cross < self.ddx {
                Some(Coord::new(old.x + self.major.0, old.y + self.major.1))
            } else if cross > self.ddx {
                Some(Coord::new(old.x + self.minor.0, old.y + self.minor.1))
            } else {
                None
            };
            match extra {
                Some(e) => {
                    self.pending = Some(self.pos);
                    Some(e)
                }
                None => Some(self.pos),
            }
        } else {
            self.prev = self.err;
            self.pos = Coord::new(old.x + self.major.0, old.y + self.major.1);
            Some(self.pos)
        }
    }
}

/// Expand a waypoint sequence into an 8-connected path by rasterizing each
/// consecutive pair with [`SegmentWalk`].
///
/// The endpoints of every segment are preserved, consecutive duplicates in
/// the input collapse, and the function is idempotent: an already 8-connected
/// path comes back unchanged. Inputs of fewer than two points are returned
/// as-is.
pub fn densify(points: &[Coord]) -> Vec<Coord> {
    if points.len() < 2 {
        return points.to_vec();
    }
    let mut out: Vec<Coord> = Vec::with_capacity(points.len());
    for w in points.windows(2) {
        // After the first segment, the shared endpoint is already in `out`;
        // a zero-length segment then contributes nothing at all.
        let skip = usize::from(!out.is_empty());
        for c in SegmentWalk::new(w[0], w[1]).skip(skip) {
            out.push(c);
        }
    }
    out
}

/// Cost of the densified straight segment from `a` to `b`, without
/// materializing the point list. Both endpoints must be in bounds; every
/// cell the segment touches then lies in their bounding box and is in
/// bounds too. Returns [`INFINITE`] as soon as the segment enters an
/// obstacle cell.
pub fn segment_cost(grid: &TerrainGrid, a: Coord, b: Coord) -> Result<f64> {
    grid.cost_at(a)?;
    grid.cost_at(b)?;
    let mut total = 0.0;
    let mut prev = a;
    for c in SegmentWalk::new(a, b).skip(1) {
        let cost = grid.cost_unchecked(c);
        if cost.is_infinite() {
            return Ok(INFINITE);
        }
        let len = if (c.x - prev.x).abs() + (c.y - prev.y).abs() == 2 {
            SQRT_2
        } else {
            1.0
        };
        total += cost * len;
        prev = c;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> CostModel {
        CostModel::multi_terra_path()
    }

    /// Small painted grid for cost tests.
    fn grid_with(cells: &[(Coord, f64)]) -> TerrainGrid {
        let mut v = vec![1.0; 100];
        for (c, cost) in cells {
            v[c.y as usize * 10 + c.x as usize] = *cost;
        }
        TerrainGrid::from_cells(10, 10, v, model()).unwrap()
    }

    #[test]
    fn cost_at_reads_cells_and_bounds() {
        let g = grid_with(&[(Coord::new(3, 4), 8.0), (Coord::new(5, 5), INFINITE)]);
        assert_eq!(g.cost_at(Coord::new(0, 0)).unwrap(), 1.0);
        assert_eq!(g.cost_at(Coord::new(3, 4)).unwrap(), 8.0);
        assert!(g.cost_at(Coord::new(5, 5)).unwrap().is_infinite());
        assert!(matches!(
            g.cost_at(Coord::new(10, 0)),
            Err(Error::OutOfBounds { .. })
        ));
        assert!(matches!(
            g.cost_at(Coord::new(0, -1)),
            Err(Error::OutOfBounds { .. })
        ));
    }

    #[test]
    fn path_cost_charges_destination_cells() {
        let g = grid_with(&[]);
        // Single point: zero cost, no steps.
        let (t, s) = path_cost(&g, &[Coord::new(2, 2)]).unwrap();
        assert_eq!(t, 0.0);
        assert!(s.is_empty());
        // Three collinear cardinal points on cost 1: total 2.
        let pts = [Coord::new(0, 0), Coord::new(1, 0), Coord::new(2, 0)];
        let (t, s) = path_cost(&g, &pts).unwrap();
        assert_eq!(t, 2.0);
        assert_eq!(s, vec![1.0, 1.0]);
    }

    #[test]
    fn diagonal_into_cost_five_charges_five_sqrt_two() {
        let g = grid_with(&[(Coord::new(1, 1), 5.0)]);
        let (t, s) = path_cost(&g, &[Coord::new(0, 0), Coord::new(1, 1)]).unwrap();
        let expected = 5.0 * SQRT_2;
        assert!((t - expected).abs() < 1e-12);
        assert_eq!(s.len(), 1);
        assert!((s[0] - expected).abs() < 1e-12);
    }

    #[test]
    fn path_through_obstacle_is_infinite_not_sentinel() {
        let g = grid_with(&[(Coord::new(1, 0), INFINITE)]);
        let (t, s) =
            path_cost(&g, &[Coord::new(0, 0), Coord::new(1, 0), Coord::new(2, 0)]).unwrap();
        assert!(t.is_infinite());
        assert!(s[0].is_infinite());
        assert_eq!(s[1], 1.0);
    }

    #[test]
    fn start_cell_cost_is_not_charged() {
        let g = grid_with(&[(Coord::new(0, 0), 8.0)]);
        let (t, _) = path_cost(&g, &[Coord::new(0, 0), Coord::new(1, 0)]).unwrap();
        assert_eq!(t, 1.0);
    }

    #[test]
    fn non_adjacent_and_duplicate_steps_are_errors() {
        let g = grid_with(&[]);
        assert!(matches!(
            path_cost(&g, &[Coord::new(0, 0), Coord::new(2, 0)]),
            Err(Error::NonAdjacentStep { .. })
        ));
        assert!(matches!(
            path_cost(&g, &[Coord::new(0, 0), Coord::new(0, 0)]),
            Err(Error::NonAdjacentStep { .. })
        ));
        assert!(matches!(path_cost(&g, &[]), Err(Error::Contract(_))));
    }

    #[test]
    fn densify_exact_diagonal_is_pure_diagonal_chain() {
        let out = densify(&[Coord::new(0, 0), Coord::new(3, 3)]);
        assert_eq!(
            out,
            vec![
                Coord::new(0, 0),
                Coord::new(1, 1),
                Coord::new(2, 2),
                Coord::new(3, 3)
            ]
        );
    }

    #[test]
    fn densify_shallow_segment_is_supercover() {
        let out = densify(&[Coord::new(0, 0), Coord::new(2, 1)]);
        assert_eq!(
            out,
            vec![
                Coord::new(0, 0),
                Coord::new(1, 0),
                Coord::new(1, 1),
                Coord::new(2, 1)
            ]
        );
    }

    #[test]
    fn densify_adjacent_input_is_unchanged() {
        let pts = vec![Coord::new(0, 0), Coord::new(0, 1), Coord::new(1, 2)];
        assert_eq!(densify(&pts), pts);
    }

    #[test]
    fn densify_covers_every_cell_the_line_touches() {
        // A shallow line must not tunnel diagonally between edge-adjacent
        // cells it actually passes through.
        let out = densify(&[Coord::new(0, 0), Coord::new(4, 1)]);
        assert_eq!(
            out,
            vec![
                Coord::new(0, 0),
                Coord::new(1, 0),
                Coord::new(2, 0),
                Coord::new(2, 1),
                Coord::new(3, 1),
                Coord::new(4, 1)
            ]
        );
        // Steep mirror of the same segment.
        let out = densify(&[Coord::new(0, 0), Coord::new(1, 4)]);
        assert_eq!(
            out,
            vec![
                Coord::new(0, 0),
                Coord::new(0, 1),
                Coord::new(0, 2),
                Coord::new(1, 2),
                Coord::new(1, 3),
                Coord::new(1, 4)
            ]
        );
    }

    #[test]
    fn densify_handles_duplicates_and_degenerate_inputs() {
        assert_eq!(densify(&[Coord::new(4, 4)]), vec![Coord::new(4, 4)]);
        assert_eq!(
            densify(&[Coord::new(1, 1), Coord::new(1, 1), Coord::new(2, 2)]),
            vec![Coord::new(1, 1), Coord::new(2, 2)]
        );
    }

    #[test]
    fn segment_cost_matches_densified_path_cost() {
        let g = grid_with(&[(Coord::new(4, 2), 7.0), (Coord::new(6, 3), 3.5)]);
        for (a, b) in [
            (Coord::new(0, 0), Coord::new(9, 4)),
            (Coord::new(2, 9), Coord::new(7, 1)),
            (Coord::new(0, 5), Coord::new(9, 5)),
            (Coord::new(3, 3), Coord::new(3, 3)),
        ] {
            let pts = densify(&[a, b]);
            let (expect, _) = path_cost(&g, &pts).unwrap();
            let got = segment_cost(&g, a, b).unwrap();
            assert!(
                (got - expect).abs() < 1e-12,
                "{a} -> {b}: {got} vs {expect}"
            );
        }
    }

    #[test]
    fn segment_cost_hits_obstacles_between_waypoints() {
        let g = grid_with(&[(Coord::new(2, 1), INFINITE)]);
        // (0,0) -> (4,2) passes through (2,1).
        assert!(segment_cost(&g, Coord::new(0, 0), Coord::new(4, 2))
            .unwrap()
            .is_infinite());
    }

    #[test]
    fn cost_model_validation() {
        let m = model();
        assert_eq!(m.entries().len(), 12);
        assert_eq!(m.free_cost(), 1.0);
        assert_eq!(
            m.region_costs(),
            vec![3.0, 3.5, 4.0, 4.5, 5.0, 6.0, 6.5, 7.0, 8.0]
        );
        assert_eq!(m.cost_of_color([0, 0, 0]), Some(INFINITE));
        assert_eq!(m.cost_of_color([255, 192, 203]), Some(8.0));
        // Duplicate color rejected.
        let dup = CostModel::new(vec![
            CostEntry {
                label: "a".into(),
                color: [1, 2, 3],
                cost: 1.0,
            },
            CostEntry {
                label: "b".into(),
                color: [1, 2, 3],
                cost: 2.0,
            },
        ]);
        assert!(matches!(dup, Err(Error::CostModel(_))));
        // Ambiguous free terrain rejected.
        let two_free = CostModel::new(vec![
            CostEntry {
                label: "a".into(),
                color: [1, 2, 3],
                cost: 1.0,
            },
            CostEntry {
                label: "b".into(),
                color: [4, 5, 6],
                cost: 1.0,
            },
        ]);
        assert!(matches!(two_free, Err(Error::CostModel(_))));
    }

    #[test]
    fn cost_model_json_round_trip() {
        let m = model();
        let text = m.to_json_string();
        let back = CostModel::from_json_str(&text).unwrap();
        assert_eq!(m, back);
        // "inf" stays symbolic through the round trip.
        assert!(text.contains("\"inf\""));
        assert!(!text.contains("9223372036854775807"));
    }

    #[test]
    fn rugd_model_matches_published_costs() {
        let m = CostModel::rugd_v2();
        assert_eq!(m.entries().len(), 24);
        assert_eq!(m.free_cost(), 1.0);
        // Sand: (1, 0.9, 0.8) scaled to bytes.
        assert_eq!(m.cost_of_color([255, 230, 204]), Some(3.5));
        // Grass.
        assert_eq!(m.cost_of_color([0, 102, 0]), Some(1.8));
        // Water is impassable.
        assert_eq!(m.cost_of_color([0, 128, 255]), Some(INFINITE));
    }

    #[test]
    fn grid_rejects_costs_outside_model() {
        let cells = vec![1.0, 2.75, 1.0, 1.0];
        assert!(matches!(
            TerrainGrid::from_cells(2, 2, cells, model()),
            Err(Error::CostModel(_))
        ));
    }

    #[test]
    fn task_validation() {
        let g = grid_with(&[(Coord::new(5, 5), INFINITE)]);
        let ok = PlanTask {
            map_id: 0,
            start: Coord::new(0, 0),
            goal: Coord::new(9, 9),
        };
        ok.validate(&g).unwrap();
        let on_obstacle = PlanTask {
            map_id: 0,
            start: Coord::new(5, 5),
            goal: Coord::new(9, 9),
        };
        assert!(matches!(on_obstacle.validate(&g), Err(Error::Task(_))));
        let oob = PlanTask {
            map_id: 0,
            start: Coord::new(0, 0),
            goal: Coord::new(10, 10),
        };
        assert!(matches!(oob.validate(&g), Err(Error::Task(_))));
        let same = PlanTask {
            map_id: 0,
            start: Coord::new(1, 1),
            goal: Coord::new(1, 1),
        };
        assert!(matches!(same.validate(&g), Err(Error::Task(_))));
    }

    #[test]
    fn coord_serializes_as_pair() {
        let c = Coord::new(7, 9);
        assert_eq!(serde_json::to_string(&c).unwrap(), "[7,9]");
        let back: Coord = serde_json::from_str("[7,9]").unwrap();
        assert_eq!(back, c);
    }
}
