//! Seeded random terrain maps and their PNG + JSON sidecar representation.
//!
//! A generated map is free terrain with a handful of axis-aligned high-cost
//! rectangles and one or two impassable rectangles painted over it, later
//! paint winning where rectangles overlap. The start/goal pair is sampled on
//! finite cells, far enough apart, and verified mutually reachable by flood
//! fill before the map is accepted.

use std::io::Cursor;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::grid::{Coord, CostModel, PlanTask, TerrainGrid, INFINITE};
use crate::{Error, Result};

/// Overlay color for drawing paths onto rendered maps. Deliberately absent
/// from both built-in palettes so an overlaid pixel can never be mistaken
/// for terrain.
pub const PATH_OVERLAY_COLOR: [u8; 3] = [255, 105, 180];

/// Parameters for one generated map.
#[derive(Debug, Clone, PartialEq)]
pub struct MapSpec {
    pub width: u32,
    pub height: u32,
    /// Identifier recorded into the returned task and the sidecar file.
    pub map_id: u64,
    /// How many high-cost rectangles to paint.
    pub cost_regions: RangeInclusive<u32>,
    /// How many impassable rectangles to paint; both ends must stay in 1..=2.
    pub obstacles: RangeInclusive<u32>,
    /// Side length range for every painted rectangle, in cells. Sides are
    /// clamped to the grid dimensions.
    pub region_size: RangeInclusive<u32>,
    pub rng_seed: u64,
}

impl MapSpec {
    /// Defaults tuned for maps of a few hundred cells per side: 4-7 cost
    /// regions and 1-2 obstacles, sides between 40 and 350 cells.
    pub fn new(width: u32, height: u32, rng_seed: u64) -> Self {
        MapSpec {
            width,
            height,
            map_id: 0,
            cost_regions: 4..=7,
            obstacles: 1..=2,
            region_size: 40..=350,
            rng_seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::Contract("map dimensions must be positive".into()));
        }
        for (name, r) in [
            ("cost_regions", &self.cost_regions),
            ("obstacles", &self.obstacles),
            ("region_size", &self.region_size),
        ] {
            if r.is_empty() {
                return Err(Error::Contract(format!("{name} range is empty")));
            }
        }
        if *self.obstacles.start() < 1 || *self.obstacles.end() > 2 {
            return Err(Error::Contract(
                "obstacle count must stay within 1..=2".into(),
            ));
        }
        if *self.region_size.start() == 0 {
            return Err(Error::Contract(
                "region sides must be at least 1 cell".into(),
            ));
        }
        Ok(())
    }
}

const OBSTACLE_LAYOUT_ATTEMPTS: u32 = 25;
const TASK_TRIES_PER_LAYOUT: u32 = 100;
const CELL_DRAWS_PER_SAMPLE: u32 = 400;

/// Generate a map and its task deterministically from `spec.rng_seed`.
///
/// Cost regions are drawn once; if no reachable start/goal pair is found in
/// 100 tries the obstacles are re-rolled, and after enough layout attempts
/// generation fails with an error rather than looping forever.
pub fn generate_map(spec: &MapSpec) -> Result<(TerrainGrid, PlanTask)> {
    spec.validate()?;
    let model = CostModel::multi_terra_path();
    let free = model.free_cost();
    let palette = model.region_costs();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let (w, h) = (spec.width, spec.height);

    let mut base = vec![free; (w as usize) * (h as usize)];
    let n_regions = rng.gen_range(spec.cost_regions.clone());
    for _ in 0..n_regions {
        let cost = palette[rng.gen_range(0..palette.len())];
        paint_random_rect(&mut rng, &mut base, spec, cost);
    }

    let diag = ((w as f64).powi(2) + (h as f64).powi(2)).sqrt();
    let min_sep2 = (0.25 * diag) * (0.25 * diag);

    for _ in 0..OBSTACLE_LAYOUT_ATTEMPTS {
        let mut cells = base.clone();
        let n_obstacles = rng.gen_range(spec.obstacles.clone());
        for _ in 0..n_obstacles {
            paint_random_rect(&mut rng, &mut cells, spec, INFINITE);
        }
        let grid = TerrainGrid::from_cells(w, h, cells, model.clone())?;
        if !grid.cells().iter().any(|c| c.is_finite()) {
            continue;
        }
        for _ in 0..TASK_TRIES_PER_LAYOUT {
            let Some(start) = sample_finite_cell(&mut rng, &grid) else {
                break;
            };
            let Some(goal) = sample_finite_cell(&mut rng, &grid) else {
                break;
            };
            if goal == start || (start.dist2(goal) as f64) < min_sep2 {
                continue;
            }
            if reachable(&grid, start, goal) {
                let task = PlanTask {
                    map_id: spec.map_id,
                    start,
                    goal,
                };
                return Ok((grid, task));
            }
        }
    }
    Err(Error::Generation(format!(
        "no reachable start/goal pair after {OBSTACLE_LAYOUT_ATTEMPTS} obstacle layouts"
    )))
}

fn paint_random_rect(rng: &mut ChaCha8Rng, cells: &mut [f64], spec: &MapSpec, cost: f64) {
    let side_w = rng.gen_range(spec.region_size.clone()).min(spec.width);
    let side_h = rng.gen_range(spec.region_size.clone()).min(spec.height);
    let x0 = rng.gen_range(0..=spec.width - side_w);
    let y0 = rng.gen_range(0..=spec.height - side_h);
    for y in y0..y0 + side_h {
        let row = (y * spec.width) as usize;
        cells[row + x0 as usize..row + (x0 + side_w) as usize].fill(cost);
    }
}

fn sample_finite_cell(rng: &mut ChaCha8Rng, grid: &TerrainGrid) -> Option<Coord> {
    for _ in 0..CELL_DRAWS_PER_SAMPLE {
        let c = Coord::new(
            rng.gen_range(0..grid.width()) as i32,
            rng.gen_range(0..grid.height()) as i32,
        );
        if !grid.is_obstacle(c) {
            return Some(c);
        }
    }
    None
}

/// Breadth-first reachability over finite cells, 8-connected.
fn reachable(grid: &TerrainGrid, from: Coord, to: Coord) -> bool {
    let mut seen = vec![false; grid.cells().len()];
    let mut queue = std::collections::VecDeque::new();
    seen[grid.index(from)] = true;
    queue.push_back(from);
    while let Some(c) = queue.pop_front() {
        if c == to {
            return true;
        }
        for dy in -1..=1 {
            for dx in -1..=1 {
                if dx == 0 && dy == 0 {
                    continue;
                }
                let n = Coord::new(c.x + dx, c.y + dy);
                if grid.in_bounds(n) && !grid.is_obstacle(n) && !seen[grid.index(n)] {
                    seen[grid.index(n)] = true;
                    queue.push_back(n);
                }
            }
        }
    }
    false
}

/// Render the grid as a PNG, one pixel per cell, using the model palette
/// bit-exactly. When two model entries share a cost, the first entry's color
/// is used. An optional path is drawn on top in [`PATH_OVERLAY_COLOR`].
pub fn render_map(grid: &TerrainGrid, path: Option<&[Coord]>) -> Result<Vec<u8>> {
    let mut img = image::RgbImage::new(grid.width(), grid.height());
    for y in 0..grid.height() {
        for x in 0..grid.width() {
            let cost = grid.cost_unchecked(Coord::new(x as i32, y as i32));
            let color = grid.model().color_of(cost).ok_or_else(|| {
                Error::CostModel(format!("cell cost {cost} has no palette color"))
            })?;
            img.put_pixel(x, y, image::Rgb(color));
        }
    }
    if let Some(points) = path {
        for p in points {
            if grid.in_bounds(*p) {
                img.put_pixel(p.x as u32, p.y as u32, image::Rgb(PATH_OVERLAY_COLOR));
            }
        }
    }
    let mut bytes = Vec::new();
    img.write_to(&mut Cursor::new(&mut bytes), image::ImageFormat::Png)?;
    Ok(bytes)
}

/// Decode an image and translate every pixel color into its model cost.
/// A pixel whose color is not in the model is an error naming the offending
/// pixel.
pub fn load_map(bytes: &[u8], model: &CostModel) -> Result<TerrainGrid> {
    let img = image::load_from_memory(bytes)?.to_rgb8();
    let (w, h) = img.dimensions();
    let mut cells = Vec::with_capacity((w as usize) * (h as usize));
    for y in 0..h {
        for x in 0..w {
            let rgb = img.get_pixel(x, y).0;
            let cost = model
                .cost_of_color(rgb)
                .ok_or(Error::UnknownColor { x, y, rgb })?;
            cells.push(cost);
        }
    }
    TerrainGrid::from_cells(w, h, cells, model.clone())
}

pub fn load_map_path(path: &Path, model: &CostModel) -> Result<TerrainGrid> {
    load_map(&std::fs::read(path)?, model)
}

/// On-disk form of a task sidecar. `scene` is only present for datasets
/// whose maps belong to named scenes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SavedTask {
    pub map_id: u64,
    pub start: Coord,
    pub goal: Coord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scene: Option<String>,
}

impl SavedTask {
    pub fn new(task: PlanTask) -> Self {
        SavedTask {
            map_id: task.map_id,
            start: task.start,
            goal: task.goal,
            scene: None,
        }
    }

    pub fn task(&self) -> PlanTask {
        PlanTask {
            map_id: self.map_id,
            start: self.start,
            goal: self.goal,
        }
    }
}

/// File names of a dataset entry: `map_0042.png` / `map_0042.json`.
pub fn map_file_names(map_id: u64) -> (String, String) {
    (
        format!("map_{map_id:04}.png"),
        format!("map_{map_id:04}.json"),
    )
}

/// Write the PNG and sidecar for one generated map into `dir`.
pub fn write_map_files(
    dir: &Path,
    grid: &TerrainGrid,
    task: &PlanTask,
) -> Result<(PathBuf, PathBuf)> {
    let (png_name, json_name) = map_file_names(task.map_id);
    let png_path = dir.join(png_name);
    let json_path = dir.join(json_name);
    std::fs::write(&png_path, render_map(grid, None)?)?;
    std::fs::write(
        &json_path,
        serde_json::to_string_pretty(&SavedTask::new(*task))?,
    )?;
    Ok((png_path, json_path))
}

pub fn read_task(path: &Path) -> Result<SavedTask> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}
