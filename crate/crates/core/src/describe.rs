//! Plain-text renderings of grids and paths, and the parser for the
//! run-length path grammar.
//!
//! These strings are the only view of the map an LLM advisor gets, so the
//! grammar is fixed:
//!
//! * terrain: `High-cost area with cost {c} is approximately located between
//!   grid coordinates ({x1}, {y1}) and ({x2}, {y2}).` — one sentence per
//!   non-free cost present, plus one `Obstacles are approximately located
//!   between ...` sentence when the grid has impassable cells;
//! * detailed path: `Point {i} at ({x}, {y}) has a terrain cost of {c}.`
//!   per point, 1-based;
//! * brief path: `From ({xa}, {ya}) to ({xb}, {yb}) the terrain cost is
//!   {c}.` per run of equal-cost points;
//! * both path styles end with `The total cost of the path is {total}.`
//!
//! Numbers render bare when integral and with at most two decimals
//! otherwise. Impassable cells render as the word `infinite`; no integer
//! stands in for infinity anywhere in the grammar.

use std::fmt::Write as _;
use std::sync::OnceLock;

use regex::Regex;

use crate::grid::{Coord, PlannedPath, TerrainGrid, INFINITE};
use crate::{Error, Result};

/// Render a cost or total for the describers: `infinite` for impassable,
/// otherwise at most two decimals with trailing zeros trimmed.
pub fn fmt_cost(v: f64) -> String {
    if v.is_infinite() {
        return "infinite".into();
    }
    let s = format!("{v:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

/// Axis-aligned bounding box of all cells sharing one terrain class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionSummary {
    pub kind: RegionKind,
    pub min: Coord,
    pub max: Coord,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegionKind {
    /// A finite non-free cost value.
    Cost(f64),
    /// The union of all impassable cells.
    Obstacle,
}

/// Bounding boxes of every non-free cost present in the grid.
///
/// Finite costs come first, ordered by ascending `(min.x, min.y)`; the
/// obstacle box, if any, is last. Boxes are over-approximations: cells of
/// one cost may be scattered, the box covers them all.
pub fn summarize_regions(grid: &TerrainGrid) -> Vec<RegionSummary> {
    struct Acc {
        min: Coord,
        max: Coord,
    }
    let free = grid.min_cost();
    let mut finite: Vec<(f64, Acc)> = Vec::new();
    let mut obstacle: Option<Acc> = None;
    let w = grid.width() as usize;
    for (i, &cost) in grid.cells().iter().enumerate() {
        if cost == free {
            continue;
        }
        let c = Coord::new((i % w) as i32, (i / w) as i32);
        let slot = if cost.is_infinite() {
            &mut obstacle
        } else {
            match finite.iter_mut().find(|(v, _)| *v == cost) {
                Some((_, acc)) => {
                    grow(acc, c);
                    continue;
                }
                None => {
                    finite.push((cost, Acc { min: c, max: c }));
                    continue;
                }
            }
        };
        match slot {
            Some(acc) => grow(acc, c),
            None => *slot = Some(Acc { min: c, max: c }),
        }
    }
    fn grow(acc: &mut Acc, c: Coord) {
        acc.min.x = acc.min.x.min(c.x);
        acc.min.y = acc.min.y.min(c.y);
        acc.max.x = acc.max.x.max(c.x);
        acc.max.y = acc.max.y.max(c.y);
    }
    finite.sort_by_key(|(_, a)| (a.min.x, a.min.y));
    let mut out: Vec<RegionSummary> = finite
        .into_iter()
        .map(|(cost, acc)| RegionSummary {
            kind: RegionKind::Cost(cost),
            min: acc.min,
            max: acc.max,
        })
        .collect();
    if let Some(acc) = obstacle {
        out.push(RegionSummary {
            kind: RegionKind::Obstacle,
            min: acc.min,
            max: acc.max,
        });
    }
    out
}

/// One sentence per non-free cost, joined by single spaces. A grid of pure
/// free terrain describes to the empty string.
pub fn describe_terrain(grid: &TerrainGrid) -> String {
    let sentences: Vec<String> = summarize_regions(grid)
        .into_iter()
        .map(|r| match r.kind {
            RegionKind::Cost(c) => format!(
                "High-cost area with cost {} is approximately located between grid coordinates {} and {}.",
                fmt_cost(c),
                r.min,
                r.max
            ),
            RegionKind::Obstacle => format!(
                "Obstacles are approximately located between grid coordinates {} and {}.",
                r.min, r.max
            ),
        })
        .collect();
    sentences.join(" ")
}

/// Every point spelled out with its cell cost, then the total.
pub fn describe_path_detailed(grid: &TerrainGrid, path: &PlannedPath) -> String {
    let mut out = String::new();
    for (i, p) in path.points.iter().enumerate() {
        let cost = grid
            .cost_at(*p)
            .map(fmt_cost)
            .unwrap_or_else(|_| "infinite".into());
        let _ = write!(
            out,
            "Point {} at {} has a terrain cost of {}. ",
            i + 1,
            p,
            cost
        );
    }
    let _ = write!(
        out,
        "The total cost of the path is {}.",
        fmt_cost(path.total_cost)
    );
    out
}

/// Maximal runs of consecutive equal-cost points, then the total. Runs
/// break on cost changes only, so a one-point run is possible and renders
/// with identical endpoints.
pub fn describe_path_brief(grid: &TerrainGrid, path: &PlannedPath) -> String {
    let mut out = String::new();
    for run in brief_runs(grid, path) {
        let _ = write!(
            out,
            "From {} to {} the terrain cost is {}. ",
            run.start,
            run.end,
            fmt_cost(run.cost)
        );
    }
    let _ = write!(
        out,
        "The total cost of the path is {}.",
        fmt_cost(path.total_cost)
    );
    out
}

/// One run of the brief grammar: inclusive endpoints and the shared cell
/// cost ([`INFINITE`] when the text says `infinite`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostRun {
    pub start: Coord,
    pub end: Coord,
    pub cost: f64,
}

/// Compute the run structure the brief describer renders.
pub fn brief_runs(grid: &TerrainGrid, path: &PlannedPath) -> Vec<CostRun> {
    let mut runs: Vec<CostRun> = Vec::new();
    for p in &path.points {
        let cost = grid.cost_at(*p).unwrap_or(INFINITE);
        match runs.last_mut() {
            // Bit-equal comparison: both costs come from the same model.
            Some(run) if run.cost == cost => run.end = *p,
            _ => runs.push(CostRun {
                start: *p,
                end: *p,
                cost,
            }),
        }
    }
    runs
}

/// Parse text in the brief grammar back into its runs.
///
/// Tolerant of surrounding prose; strict about the runs themselves. Text
/// containing no well-formed run is a parse error, as is an empty string.
pub fn parse_path_brief(text: &str) -> Result<Vec<CostRun>> {
    static RUN: OnceLock<Regex> = OnceLock::new();
    let re = RUN.get_or_init(|| {
        Regex::new(
            r"From \((-?\d+), (-?\d+)\) to \((-?\d+), (-?\d+)\) the terrain cost is (infinite|\d+(?:\.\d+)?)\.",
        )
        .expect("run regex compiles")
    });
    let mut runs = Vec::new();
    for cap in re.captures_iter(text) {
        let num = |i: usize| {
            cap[i]
                .parse::<i32>()
                .map_err(|e| Error::Parse(e.to_string()))
        };
        let cost = if &cap[5] == "infinite" {
            INFINITE
        } else {
            cap[5]
                .parse::<f64>()
                .map_err(|e| Error::Parse(e.to_string()))?
        };
        runs.push(CostRun {
            start: Coord::new(num(1)?, num(2)?),
            end: Coord::new(num(3)?, num(4)?),
            cost,
        });
    }
    if runs.is_empty() {
        return Err(Error::Parse("no path runs found in text".into()));
    }
    Ok(runs)
}
