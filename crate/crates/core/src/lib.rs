//! Cost-aware path planning on weighted terrain grids.
//!
//! The crate is organized around a few small pieces that compose into a full
//! pipeline:
//!
//! * [`grid`] — terrain grids, cost models, paths, and the cost arithmetic
//!   every other module relies on.
//! * [`mapgen`] — seeded random map generation plus PNG load/render.
//! * [`planners`] — A*, a Dijkstra reference, RRT*, and waypoint-chained A*.
//! * [`describe`] — plain-text renderings of terrain and paths, and the
//!   parser for the run-length path grammar.
//! * [`llm`] — a minimal chat-completions client with remote and scripted
//!   backends.
//! * [`advisor`] — prompt construction, reply parsing, suggestion judging,
//!   and a search-based advisor oracle for offline runs.
//! * [`eval`] — batch evaluation over a map directory with RP/IR/FPS
//!   metrics and a per-task audit log.
//! * [`config`] — the on-disk configuration file and seed derivation.

pub mod advisor;
pub mod config;
pub mod describe;
mod error;
pub mod eval;
pub mod grid;
pub mod llm;
pub mod mapgen;
pub mod planners;

pub use error::Error;
pub use grid::{Coord, CostModel, PlanTask, PlannedPath, TerrainGrid};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
