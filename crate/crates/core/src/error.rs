use crate::grid::Coord;

/// Unified error type for the crate.
///
/// Planner outcomes such as an unreachable goal are not errors; they are
/// reported as [`crate::planners::PlanStatus::Failure`] values. `Error` is
/// reserved for contract violations, bad input data, and I/O.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A coordinate fell outside the grid.
    #[error("coordinate ({}, {}) out of bounds for {width}x{height} grid", coord.x, coord.y)]
    OutOfBounds {
        coord: Coord,
        width: u32,
        height: u32,
    },

    /// A path violated the step adjacency contract.
    #[error("path points ({}, {}) and ({}, {}) are not 8-neighbors", a.x, a.y, b.x, b.y)]
    NonAdjacentStep { a: Coord, b: Coord },

    /// A cost model failed validation.
    #[error("invalid cost model: {0}")]
    CostModel(String),

    /// An image pixel color has no entry in the cost model.
    #[error("pixel ({x}, {y}) has color #{:02X}{:02X}{:02X} not present in the cost model", rgb[0], rgb[1], rgb[2])]
    UnknownColor { x: u32, y: u32, rgb: [u8; 3] },

    /// Map generation could not satisfy the placement constraints.
    #[error("map generation failed: {0}")]
    Generation(String),

    /// A task is inconsistent with the grid it is paired with.
    #[error("invalid task: {0}")]
    Task(String),

    /// Text that was expected to follow a known grammar did not.
    #[error("parse error: {0}")]
    Parse(String),

    /// The scripted chat backend has no canned reply for a prompt.
    #[error("no scripted response for prompt digest {digest}")]
    FixtureMissing { digest: String },

    /// The remote chat backend failed after exhausting retries.
    #[error("chat backend error: {0}")]
    Backend(String),

    /// Example retrieval had no candidate to return.
    #[error("retrieval error: {0}")]
    Retrieval(String),

    /// A caller broke an API contract (empty input, zero denominator, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// Bad configuration or unusable CLI arguments.
    #[error("config error: {0}")]
    Config(String),

    #[error("image error: {0}")]
    Image(#[from] image::ImageError),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors describing the problem instance rather than misuse of
    /// the tool (exit code 1 in the CLI, as opposed to 2).
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::OutOfBounds { .. }
                | Error::NonAdjacentStep { .. }
                | Error::UnknownColor { .. }
                | Error::Generation(_)
                | Error::Task(_)
                | Error::Parse(_)
                | Error::Retrieval(_)
                | Error::FixtureMissing { .. }
                | Error::Backend(_)
        )
    }
}
