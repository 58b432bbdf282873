//! C interface to the terrapath planning core.
//!
//! Conventions shared by every entry point:
//!
//! - Fallible functions return a [`TpStatus`]; out parameters are written
//!   only on `Ok`. Creator functions set their out pointer to null before
//!   doing anything else, so a failed call always leaves it null.
//! - Handles (`TpGrid`, `TpPath`) and strings returned through out
//!   parameters are owned by the caller and must be released exactly once
//!   with the matching free function. Free functions accept null.
//! - After a non-`Ok` status, [`tp_last_error_message`] describes what went
//!   wrong. The message is per-thread and stays valid until the next
//!   failing call on the same thread.
//! - Panics never unwind across the boundary; they surface as
//!   `TpStatus::Internal`.
//!
//! Pointer arguments must be either null or valid for their declared use;
//! handles must come from this library and not have been freed.

#![deny(unsafe_op_in_unsafe_fn)]
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fmt::Display;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::slice;

use terrapath::advisor::{judge_suggestion, shortcut_oracle, AdvisorVerdict, JudgmentOutcome};
use terrapath::describe::{describe_path_brief, describe_path_detailed, describe_terrain};
use terrapath::eval::{improvement_ratio, relative_precision, EvalCounts};
use terrapath::grid::DatasetKind;
use terrapath::mapgen::load_map_path;
use terrapath::planners::{
    astar, llm_astar, rrt_star, FailureReason, PlanOutcome, PlanStatus, RrtParams,
};
use terrapath::{Coord, Error, PlanTask, PlannedPath, TerrainGrid};

/// Result code returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TpStatus {
    /// The call succeeded and all out parameters were written.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// An argument was malformed or violated a documented contract.
    InvalidArgument = 2,
    /// A coordinate or index fell outside its valid range.
    OutOfBounds = 3,
    /// File or image content could not be interpreted.
    ParseError = 4,
    /// The underlying file could not be read or decoded.
    IoError = 5,
    /// The planner proved no path exists between start and goal.
    Unreachable = 6,
    /// The sampling budget ran out before the goal was connected.
    BudgetExhausted = 7,
    /// A supplied waypoint was out of bounds or on an obstacle.
    WaypointRejected = 8,
    /// The requested metric is undefined for these counts.
    Undefined = 9,
    /// An internal invariant failed; report this as a bug.
    Internal = 10,
}

/// Which built-in cost model interprets map pixel colors.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TpDataset {
    /// Twelve difficulty levels, dark-red obstacle palette.
    MultiTerraPath = 0,
    /// Semantic terrain classes (trees, water, asphalt, ...).
    RugdV2 = 1,
}

/// Grid coordinate; `x` is the column, `y` the row, origin top-left.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TpCoord {
    pub x: i32,
    pub y: i32,
}

/// One planning problem on a grid.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct TpTask {
    pub map_id: u64,
    pub start: TpCoord,
    pub goal: TpCoord,
}

/// Sampling-planner parameters; obtain defaults from
/// [`tp_rrt_params_default`] and override selectively.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct TpRrtParams {
    pub max_iterations: u32,
    pub step_size: f64,
    pub gamma: f64,
    pub goal_bias: f64,
    pub goal_tolerance: f64,
    pub rng_seed: u64,
}

/// Outcome class assigned to a suggested path by [`tp_judge_suggestion`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TpJudgeOutcome {
    /// Valid and strictly cheaper than the original.
    Improved = 0,
    /// Valid and equal in cost within tolerance.
    Equal = 1,
    /// Valid but more expensive.
    Deteriorated = 2,
    /// Rejected before costing; `tp_last_error_message` says why.
    Invalid = 3,
}

/// Verdict on a suggested path, with both costs for context.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct TpJudgment {
    pub outcome: TpJudgeOutcome,
    pub original_cost: f64,
    /// Infinite when the suggestion is invalid.
    pub suggested_cost: f64,
}

/// Opaque terrain handle. Create with `tp_grid_load_png` or
/// `tp_grid_uniform`; release with `tp_grid_free`.
pub struct TpGrid {
    inner: TerrainGrid,
}

/// Opaque path handle. Release with `tp_path_free`.
pub struct TpPath {
    inner: PlannedPath,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_message(msg: impl Display) {
    let text = msg.to_string().replace('\0', " ");
    let text = CString::new(text).expect("NUL bytes stripped above");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn fail(status: TpStatus, msg: impl Display) -> TpStatus {
    set_message(msg);
    status
}

fn fail_err(e: Error) -> TpStatus {
    let status = match e {
        Error::OutOfBounds { .. } => TpStatus::OutOfBounds,
        Error::UnknownColor { .. } | Error::Parse(_) => TpStatus::ParseError,
        Error::Io(_) | Error::Image(_) | Error::Json(_) => TpStatus::IoError,
        Error::Backend(_) | Error::Retrieval(_) | Error::FixtureMissing { .. } => {
            TpStatus::Internal
        }
        _ => TpStatus::InvalidArgument,
    };
    fail(status, e)
}

fn guarded(f: impl FnOnce() -> TpStatus) -> TpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(TpStatus::Internal, "internal panic"),
    }
}

impl TpCoord {
    fn to_coord(self) -> Coord {
        Coord::new(self.x, self.y)
    }

    fn of(c: Coord) -> Self {
        TpCoord { x: c.x, y: c.y }
    }
}

impl TpTask {
    fn to_task(self) -> PlanTask {
        PlanTask {
            map_id: self.map_id,
            start: self.start.to_coord(),
            goal: self.goal.to_coord(),
        }
    }
}

impl TpDataset {
    fn kind(self) -> DatasetKind {
        match self {
            TpDataset::MultiTerraPath => DatasetKind::MultiTerraPath,
            TpDataset::RugdV2 => DatasetKind::RugdV2,
        }
    }
}

impl TpRrtParams {
    fn to_params(self) -> RrtParams {
        RrtParams {
            max_iterations: self.max_iterations,
            step_size: self.step_size,
            gamma: self.gamma,
            goal_bias: self.goal_bias,
            goal_tolerance: self.goal_tolerance,
            rng_seed: self.rng_seed,
        }
    }
}

/// Reads a coordinate array argument. Null is accepted for an empty list.
unsafe fn coord_slice<'a>(points: *const TpCoord, count: usize) -> Option<&'a [TpCoord]> {
    if count == 0 {
        Some(&[])
    } else if points.is_null() {
        None
    } else {
        Some(unsafe { slice::from_raw_parts(points, count) })
    }
}

/// Boxes a successful plan into an out pointer, or translates the failure
/// reason into a status code.
unsafe fn finish_plan(outcome: PlanOutcome, out_path: *mut *mut TpPath) -> TpStatus {
    match outcome.status {
        PlanStatus::Success(path) => {
            unsafe { *out_path = Box::into_raw(Box::new(TpPath { inner: path })) };
            TpStatus::Ok
        }
        PlanStatus::Failure(reason) => {
            let status = match reason {
                FailureReason::Unreachable | FailureReason::SegmentUnreachable => {
                    TpStatus::Unreachable
                }
                FailureReason::BudgetExhausted => TpStatus::BudgetExhausted,
                FailureReason::WaypointInObstacle | FailureReason::WaypointParse => {
                    TpStatus::WaypointRejected
                }
            };
            fail(status, reason)
        }
    }
}

unsafe fn export_string(text: String, out_text: *mut *mut c_char) -> TpStatus {
    let text = text.replace('\0', " ");
    let text = CString::new(text).expect("NUL bytes stripped above");
    unsafe { *out_text = text.into_raw() };
    TpStatus::Ok
}

/// Description of the most recent failure on this thread, as a
/// NUL-terminated UTF-8 string. Empty when nothing has failed yet. Valid
/// until the next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn tp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| match slot.borrow().as_ref() {
        Some(msg) => msg.as_ptr(),
        None => b"\0".as_ptr() as *const c_char,
    })
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn tp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Static lowercase name for a status code; do not free.
#[no_mangle]
pub extern "C" fn tp_status_name(status: TpStatus) -> *const c_char {
    let name: &[u8] = match status {
        TpStatus::Ok => b"ok\0",
        TpStatus::NullArgument => b"null argument\0",
        TpStatus::InvalidArgument => b"invalid argument\0",
        TpStatus::OutOfBounds => b"out of bounds\0",
        TpStatus::ParseError => b"parse error\0",
        TpStatus::IoError => b"io error\0",
        TpStatus::Unreachable => b"unreachable\0",
        TpStatus::BudgetExhausted => b"budget exhausted\0",
        TpStatus::WaypointRejected => b"waypoint rejected\0",
        TpStatus::Undefined => b"undefined\0",
        TpStatus::Internal => b"internal error\0",
    };
    name.as_ptr() as *const c_char
}

/// Loads a terrain map from a PNG whose pixel colors all belong to the
/// chosen dataset's cost model. `path` is a NUL-terminated UTF-8 file path.
#[no_mangle]
pub unsafe extern "C" fn tp_grid_load_png(
    path: *const c_char,
    dataset: TpDataset,
    out_grid: *mut *mut TpGrid,
) -> TpStatus {
    guarded(|| {
        if path.is_null() || out_grid.is_null() {
            return fail(TpStatus::NullArgument, "null argument");
        }
        unsafe { *out_grid = ptr::null_mut() };
        let Ok(path) = unsafe { CStr::from_ptr(path) }.to_str() else {
            return fail(TpStatus::InvalidArgument, "path is not valid UTF-8");
        };
        match load_map_path(Path::new(path), &dataset.kind().cost_model()) {
            Ok(grid) => {
                unsafe { *out_grid = Box::into_raw(Box::new(TpGrid { inner: grid })) };
                TpStatus::Ok
            }
            Err(e) => fail_err(e),
        }
    })
}

/// Builds a grid filled with one cost, which must belong to the dataset's
/// cost model (pass INFINITY for all-obstacle).
#[no_mangle]
pub unsafe extern "C" fn tp_grid_uniform(
    width: u32,
    height: u32,
    cost: f64,
    dataset: TpDataset,
    out_grid: *mut *mut TpGrid,
) -> TpStatus {
    guarded(|| {
        if out_grid.is_null() {
            return fail(TpStatus::NullArgument, "null argument");
        }
        unsafe { *out_grid = ptr::null_mut() };
        match TerrainGrid::uniform(width, height, cost, dataset.kind().cost_model()) {
            Ok(grid) => {
                unsafe { *out_grid = Box::into_raw(Box::new(TpGrid { inner: grid })) };
                TpStatus::Ok
            }
            Err(e) => fail_err(e),
        }
    })
}

/// Grid width in cells; 0 when `grid` is null.
#[no_mangle]
pub unsafe extern "C" fn tp_grid_width(grid: *const TpGrid) -> u32 {
    unsafe { grid.as_ref() }.map_or(0, |g| g.inner.width())
}

/// Grid height in cells; 0 when `grid` is null.
#[no_mangle]
pub unsafe extern "C" fn tp_grid_height(grid: *const TpGrid) -> u32 {
    unsafe { grid.as_ref() }.map_or(0, |g| g.inner.height())
}

/// Traversal cost of one cell; infinite for obstacles.
#[no_mangle]
pub unsafe extern "C" fn tp_grid_cost_at(
    grid: *const TpGrid,
    x: i32,
    y: i32,
    out_cost: *mut f64,
) -> TpStatus {
    guarded(|| {
        let (Some(g), false) = (unsafe { grid.as_ref() }, out_cost.is_null()) else {
            return fail(TpStatus::NullArgument, "null argument");
        };
        match g.inner.cost_at(Coord::new(x, y)) {
            Ok(cost) => {
                unsafe { *out_cost = cost };
                TpStatus::Ok
            }
            Err(e) => fail_err(e),
        }
    })
}

/// Overwrites one cell. The new cost must belong to the grid's cost model.
#[no_mangle]
pub unsafe extern "C" fn tp_grid_set_cost(
    grid: *mut TpGrid,
    x: i32,
    y: i32,
    cost: f64,
) -> TpStatus {
    guarded(|| {
        let Some(g) = (unsafe { grid.as_mut() }) else {
            return fail(TpStatus::NullArgument, "null argument");
        };
        match g.inner.set_cost(Coord::new(x, y), cost) {
            Ok(()) => TpStatus::Ok,
            Err(e) => fail_err(e),
        }
    })
}

/// Releases a grid handle. Accepts null.
#[no_mangle]
pub unsafe extern "C" fn tp_grid_free(grid: *mut TpGrid) {
    if !grid.is_null() {
        drop(unsafe { Box::from_raw(grid) });
    }
}

/// Default sampling-planner parameters.
#[no_mangle]
pub extern "C" fn tp_rrt_params_default() -> TpRrtParams {
    let p = RrtParams::default();
    TpRrtParams {
        max_iterations: p.max_iterations,
        step_size: p.step_size,
        gamma: p.gamma,
        goal_bias: p.goal_bias,
        goal_tolerance: p.goal_tolerance,
        rng_seed: p.rng_seed,
    }
}

/// Plans with A*. On success writes an owned path handle.
#[no_mangle]
pub unsafe extern "C" fn tp_plan_astar(
    grid: *const TpGrid,
    task: TpTask,
    out_path: *mut *mut TpPath,
) -> TpStatus {
    guarded(|| {
        let (Some(g), false) = (unsafe { grid.as_ref() }, out_path.is_null()) else {
            return fail(TpStatus::NullArgument, "null argument");
        };
        unsafe { *out_path = ptr::null_mut() };
        match astar(&g.inner, &task.to_task()) {
            Ok(outcome) => unsafe { finish_plan(outcome, out_path) },
            Err(e) => fail_err(e),
        }
    })
}

/// Plans with RRT*. Deterministic for a fixed `rng_seed`.
#[no_mangle]
pub unsafe extern "C" fn tp_plan_rrt_star(
    grid: *const TpGrid,
    task: TpTask,
    params: TpRrtParams,
    out_path: *mut *mut TpPath,
) -> TpStatus {
    guarded(|| {
        let (Some(g), false) = (unsafe { grid.as_ref() }, out_path.is_null()) else {
            return fail(TpStatus::NullArgument, "null argument");
        };
        unsafe { *out_path = ptr::null_mut() };
        match rrt_star(&g.inner, &task.to_task(), &params.to_params()) {
            Ok(outcome) => unsafe { finish_plan(outcome, out_path) },
            Err(e) => fail_err(e),
        }
    })
}

/// Plans A* through the given waypoints in order. With zero waypoints this
/// is exactly `tp_plan_astar`. `waypoints` may be null when `count` is 0.
#[no_mangle]
pub unsafe extern "C" fn tp_plan_llm_astar(
    grid: *const TpGrid,
    task: TpTask,
    waypoints: *const TpCoord,
    count: usize,
    out_path: *mut *mut TpPath,
) -> TpStatus {
    guarded(|| {
        let (Some(g), false) = (unsafe { grid.as_ref() }, out_path.is_null()) else {
            return fail(TpStatus::NullArgument, "null argument");
        };
        let Some(points) = (unsafe { coord_slice(waypoints, count) }) else {
            return fail(
                TpStatus::NullArgument,
                "null waypoint array with nonzero count",
            );
        };
        unsafe { *out_path = ptr::null_mut() };
        let points: Vec<Coord> = points.iter().map(|p| p.to_coord()).collect();
        match llm_astar(&g.inner, &task.to_task(), &points) {
            Ok(outcome) => unsafe { finish_plan(outcome, out_path) },
            Err(e) => fail_err(e),
        }
    })
}

/// Wraps an explicit 8-connected point sequence as a path handle, costing
/// it against the grid. Rejects empty, out-of-bounds, or non-adjacent input.
#[no_mangle]
pub unsafe extern "C" fn tp_path_from_points(
    grid: *const TpGrid,
    points: *const TpCoord,
    count: usize,
    out_path: *mut *mut TpPath,
) -> TpStatus {
    guarded(|| {
        let (Some(g), false) = (unsafe { grid.as_ref() }, out_path.is_null()) else {
            return fail(TpStatus::NullArgument, "null argument");
        };
        let Some(points) = (unsafe { coord_slice(points, count) }) else {
            return fail(
                TpStatus::NullArgument,
                "null point array with nonzero count",
            );
        };
        unsafe { *out_path = ptr::null_mut() };
        let points: Vec<Coord> = points.iter().map(|p| p.to_coord()).collect();
        match PlannedPath::from_points(&g.inner, points) {
            Ok(path) => {
                unsafe { *out_path = Box::into_raw(Box::new(TpPath { inner: path })) };
                TpStatus::Ok
            }
            Err(e) => fail_err(e),
        }
    })
}

/// Number of points in the path; 0 when `path` is null.
#[no_mangle]
pub unsafe extern "C" fn tp_path_len(path: *const TpPath) -> usize {
    unsafe { path.as_ref() }.map_or(0, |p| p.inner.points.len())
}

/// Copies out the point at `index`.
#[no_mangle]
pub unsafe extern "C" fn tp_path_point(
    path: *const TpPath,
    index: usize,
    out_point: *mut TpCoord,
) -> TpStatus {
    guarded(|| {
        let (Some(p), false) = (unsafe { path.as_ref() }, out_point.is_null()) else {
            return fail(TpStatus::NullArgument, "null argument");
        };
        let Some(&point) = p.inner.points.get(index) else {
            return fail(
                TpStatus::OutOfBounds,
                format!(
                    "point index {index} out of range for {}-point path",
                    p.inner.points.len()
                ),
            );
        };
        unsafe { *out_point = TpCoord::of(point) };
        TpStatus::Ok
    })
}

/// Total traversal cost of the path; NaN when `path` is null.
#[no_mangle]
pub unsafe extern "C" fn tp_path_total_cost(path: *const TpPath) -> f64 {
    unsafe { path.as_ref() }.map_or(f64::NAN, |p| p.inner.total_cost)
}

/// Releases a path handle. Accepts null.
#[no_mangle]
pub unsafe extern "C" fn tp_path_free(path: *mut TpPath) {
    if !path.is_null() {
        drop(unsafe { Box::from_raw(path) });
    }
}

/// Renders the grid's terrain regions as prose. The string is owned by the
/// caller; release with `tp_string_free`.
#[no_mangle]
pub unsafe extern "C" fn tp_describe_terrain(
    grid: *const TpGrid,
    out_text: *mut *mut c_char,
) -> TpStatus {
    guarded(|| {
        let (Some(g), false) = (unsafe { grid.as_ref() }, out_text.is_null()) else {
            return fail(TpStatus::NullArgument, "null argument");
        };
        unsafe { *out_text = ptr::null_mut() };
        unsafe { export_string(describe_terrain(&g.inner), out_text) }
    })
}

/// Renders a path as prose: turn-by-turn when `brief` is false, compressed
/// runs when true. Release the string with `tp_string_free`.
#[no_mangle]
pub unsafe extern "C" fn tp_describe_path(
    grid: *const TpGrid,
    path: *const TpPath,
    brief: bool,
    out_text: *mut *mut c_char,
) -> TpStatus {
    guarded(|| {
        let (Some(g), Some(p), false) = (
            unsafe { grid.as_ref() },
            unsafe { path.as_ref() },
            out_text.is_null(),
        ) else {
            return fail(TpStatus::NullArgument, "null argument");
        };
        unsafe { *out_text = ptr::null_mut() };
        let text = if brief {
            describe_path_brief(&g.inner, &p.inner)
        } else {
            describe_path_detailed(&g.inner, &p.inner)
        };
        unsafe { export_string(text, out_text) }
    })
}

/// Releases a string returned by this library. Accepts null.
#[no_mangle]
pub unsafe extern "C" fn tp_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(unsafe { CString::from_raw(text) });
    }
}

/// Runs the deterministic shortcut reviewer over a path. On `Ok`,
/// `*out_improved` is either null (the path admits no splice improvement)
/// or an owned, strictly cheaper replacement path.
#[no_mangle]
pub unsafe extern "C" fn tp_oracle_review(
    grid: *const TpGrid,
    task: TpTask,
    path: *const TpPath,
    out_improved: *mut *mut TpPath,
) -> TpStatus {
    guarded(|| {
        let (Some(g), Some(p), false) = (
            unsafe { grid.as_ref() },
            unsafe { path.as_ref() },
            out_improved.is_null(),
        ) else {
            return fail(TpStatus::NullArgument, "null argument");
        };
        unsafe { *out_improved = ptr::null_mut() };
        match shortcut_oracle(&g.inner, &task.to_task(), &p.inner) {
            AdvisorVerdict::Optimal => TpStatus::Ok,
            AdvisorVerdict::Suggestion(points) => {
                match PlannedPath::from_points(&g.inner, points) {
                    Ok(better) => {
                        unsafe {
                            *out_improved = Box::into_raw(Box::new(TpPath { inner: better }))
                        };
                        TpStatus::Ok
                    }
                    Err(e) => fail_err(e),
                }
            }
            AdvisorVerdict::ParseFailure(msg) => fail(TpStatus::ParseError, msg),
        }
    })
}

/// Judges a suggested point sequence against an existing path for the same
/// task. Sparse suggestions are densified before costing. An `Invalid`
/// outcome is a successful judgment, not an error; the rejection reason is
/// available from `tp_last_error_message`.
#[no_mangle]
pub unsafe extern "C" fn tp_judge_suggestion(
    grid: *const TpGrid,
    task: TpTask,
    original: *const TpPath,
    points: *const TpCoord,
    count: usize,
    out_judgment: *mut TpJudgment,
) -> TpStatus {
    guarded(|| {
        let (Some(g), Some(orig), false) = (
            unsafe { grid.as_ref() },
            unsafe { original.as_ref() },
            out_judgment.is_null(),
        ) else {
            return fail(TpStatus::NullArgument, "null argument");
        };
        let Some(points) = (unsafe { coord_slice(points, count) }) else {
            return fail(
                TpStatus::NullArgument,
                "null point array with nonzero count",
            );
        };
        let points: Vec<Coord> = points.iter().map(|p| p.to_coord()).collect();
        let judgment = judge_suggestion(&g.inner, &task.to_task(), &orig.inner, &points);
        let outcome = match judgment.outcome {
            JudgmentOutcome::Improved => TpJudgeOutcome::Improved,
            JudgmentOutcome::Equal => TpJudgeOutcome::Equal,
            JudgmentOutcome::Deteriorated => TpJudgeOutcome::Deteriorated,
            JudgmentOutcome::Invalid(reason) => {
                set_message(reason);
                TpJudgeOutcome::Invalid
            }
        };
        unsafe {
            *out_judgment = TpJudgment {
                outcome,
                original_cost: judgment.original_cost,
                suggested_cost: judgment.suggested_cost,
            };
        }
        TpStatus::Ok
    })
}

/// Relative precision: 100 x improved / suggested. Returns
/// `TpStatus::Undefined` when nothing was suggested.
#[no_mangle]
pub unsafe extern "C" fn tp_relative_precision(
    n_improved: u64,
    n_suggested: u64,
    out_value: *mut f64,
) -> TpStatus {
    guarded(|| {
        if out_value.is_null() {
            return fail(TpStatus::NullArgument, "null argument");
        }
        let counts = EvalCounts {
            n_improved,
            n_suggested,
            ..EvalCounts::default()
        };
        match relative_precision(&counts) {
            Some(v) => {
                unsafe { *out_value = v };
                TpStatus::Ok
            }
            None => fail(
                TpStatus::Undefined,
                "relative precision undefined: nothing suggested",
            ),
        }
    })
}

/// Improvement ratio: 100 x (improved + equal) / paths. `n_path` must be
/// positive.
#[no_mangle]
pub unsafe extern "C" fn tp_improvement_ratio(
    n_improved: u64,
    n_equal: u64,
    n_path: u64,
    out_value: *mut f64,
) -> TpStatus {
    guarded(|| {
        if out_value.is_null() {
            return fail(TpStatus::NullArgument, "null argument");
        }
        let counts = EvalCounts {
            n_improved,
            n_equal,
            n_path,
            ..EvalCounts::default()
        };
        match improvement_ratio(&counts) {
            Ok(v) => {
                unsafe { *out_value = v };
                TpStatus::Ok
            }
            Err(e) => fail_err(e),
        }
    })
}
