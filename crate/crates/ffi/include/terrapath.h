#ifndef TERRAPATH_H
#define TERRAPATH_H

/* Generated by cbindgen from the Rust sources; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which built-in cost model interprets map pixel colors.
 */
typedef enum TpDataset {
  /**
   * Twelve difficulty levels, dark-red obstacle palette.
   */
  TP_DATASET_MULTI_TERRA_PATH = 0,
  /**
   * Semantic terrain classes (trees, water, asphalt, ...).
   */
  TP_DATASET_RUGD_V2 = 1,
} TpDataset;

/**
 * Outcome class assigned to a suggested path by [`tp_judge_suggestion`].
 */
typedef enum TpJudgeOutcome {
  /**
   * Valid and strictly cheaper than the original.
   */
  TP_JUDGE_OUTCOME_IMPROVED = 0,
  /**
   * Valid and equal in cost within tolerance.
   */
  TP_JUDGE_OUTCOME_EQUAL = 1,
  /**
   * Valid but more expensive.
   */
  TP_JUDGE_OUTCOME_DETERIORATED = 2,
  /**
   * Rejected before costing; `tp_last_error_message` says why.
   */
  TP_JUDGE_OUTCOME_INVALID = 3,
} TpJudgeOutcome;

/**
 * Result code returned by every fallible function.
 */
typedef enum TpStatus {
  /**
   * The call succeeded and all out parameters were written.
   */
  TP_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  TP_STATUS_NULL_ARGUMENT = 1,
  /**
   * An argument was malformed or violated a documented contract.
   */
  TP_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A coordinate or index fell outside its valid range.
   */
  TP_STATUS_OUT_OF_BOUNDS = 3,
  /**
   * File or image content could not be interpreted.
   */
  TP_STATUS_PARSE_ERROR = 4,
  /**
   * The underlying file could not be read or decoded.
   */
  TP_STATUS_IO_ERROR = 5,
  /**
   * The planner proved no path exists between start and goal.
   */
  TP_STATUS_UNREACHABLE = 6,
  /**
   * The sampling budget ran out before the goal was connected.
   */
  TP_STATUS_BUDGET_EXHAUSTED = 7,
  /**
   * A supplied waypoint was out of bounds or on an obstacle.
   */
  TP_STATUS_WAYPOINT_REJECTED = 8,
  /**
   * The requested metric is undefined for these counts.
   */
  TP_STATUS_UNDEFINED = 9,
  /**
   * An internal invariant failed; report this as a bug.
   */
  TP_STATUS_INTERNAL = 10,
} TpStatus;

/**
 * Opaque terrain handle. Create with `tp_grid_load_png` or
 * `tp_grid_uniform`; release with `tp_grid_free`.
 */
typedef struct TpGrid TpGrid;

/**
 * Opaque path handle. Release with `tp_path_free`.
 */
typedef struct TpPath TpPath;

/**
 * Sampling-planner parameters; obtain defaults from
 * [`tp_rrt_params_default`] and override selectively.
 */
typedef struct TpRrtParams {
  uint32_t max_iterations;
  double step_size;
  double gamma;
  double goal_bias;
  double goal_tolerance;
  uint64_t rng_seed;
} TpRrtParams;

/**
 * Grid coordinate; `x` is the column, `y` the row, origin top-left.
 */
typedef struct TpCoord {
  int32_t x;
  int32_t y;
} TpCoord;

/**
 * One planning problem on a grid.
 */
typedef struct TpTask {
  uint64_t map_id;
  struct TpCoord start;
  struct TpCoord goal;
} TpTask;

/**
 * Verdict on a suggested path, with both costs for context.
 */
typedef struct TpJudgment {
  enum TpJudgeOutcome outcome;
  double original_cost;
  /**
   * Infinite when the suggestion is invalid.
   */
  double suggested_cost;
} TpJudgment;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Description of the most recent failure on this thread, as a
 * NUL-terminated UTF-8 string. Empty when nothing has failed yet. Valid
 * until the next failing call on the same thread; do not free.
 */
const char *tp_last_error_message(void);

/**
 * Library version as a static string; do not free.
 */
const char *tp_version(void);

/**
 * Static lowercase name for a status code; do not free.
 */
const char *tp_status_name(enum TpStatus status);

/**
 * Loads a terrain map from a PNG whose pixel colors all belong to the
 * chosen dataset's cost model. `path` is a NUL-terminated UTF-8 file path.
 */
enum TpStatus tp_grid_load_png(const char *path, enum TpDataset dataset, struct TpGrid **out_grid);

/**
 * Builds a grid filled with one cost, which must belong to the dataset's
 * cost model (pass INFINITY for all-obstacle).
 */
enum TpStatus tp_grid_uniform(uint32_t width,
                              uint32_t height,
                              double cost,
                              enum TpDataset dataset,
                              struct TpGrid **out_grid);

/**
 * Grid width in cells; 0 when `grid` is null.
 */
uint32_t tp_grid_width(const struct TpGrid *grid);

/**
 * Grid height in cells; 0 when `grid` is null.
 */
uint32_t tp_grid_height(const struct TpGrid *grid);

/**
 * Traversal cost of one cell; infinite for obstacles.
 */
enum TpStatus tp_grid_cost_at(const struct TpGrid *grid, int32_t x, int32_t y, double *out_cost);

/**
 * Overwrites one cell. The new cost must belong to the grid's cost model.
 */
enum TpStatus tp_grid_set_cost(struct TpGrid *grid, int32_t x, int32_t y, double cost);

/**
 * Releases a grid handle. Accepts null.
 */
void tp_grid_free(struct TpGrid *grid);

/**
 * Default sampling-planner parameters.
 */
struct TpRrtParams tp_rrt_params_default(void);

/**
 * Plans with A*. On success writes an owned path handle.
 */
enum TpStatus tp_plan_astar(const struct TpGrid *grid,
                            struct TpTask task,
                            struct TpPath **out_path);

/**
 * Plans with RRT*. Deterministic for a fixed `rng_seed`.
 */
enum TpStatus tp_plan_rrt_star(const struct TpGrid *grid,
                               struct TpTask task,
                               struct TpRrtParams params,
                               struct TpPath **out_path);

/**
 * Plans A* through the given waypoints in order. With zero waypoints this
 * is exactly `tp_plan_astar`. `waypoints` may be null when `count` is 0.
 */
enum TpStatus tp_plan_llm_astar(const struct TpGrid *grid,
                                struct TpTask task,
                                const struct TpCoord *waypoints,
                                size_t count,
                                struct TpPath **out_path);

/**
 * Wraps an explicit 8-connected point sequence as a path handle, costing
 * it against the grid. Rejects empty, out-of-bounds, or non-adjacent input.
 */
enum TpStatus tp_path_from_points(const struct TpGrid *grid,
                                  const struct TpCoord *points,
                                  size_t count,
                                  struct TpPath **out_path);

/**
 * Number of points in the path; 0 when `path` is null.
 */
size_t tp_path_len(const struct TpPath *path);

/**
 * Copies out the point at `index`.
 */
enum TpStatus tp_path_point(const struct TpPath *path, size_t index, struct TpCoord *out_point);

/**
 * Total traversal cost of the path; NaN when `path` is null.
 */
double tp_path_total_cost(const struct TpPath *path);

/**
 * Releases a path handle. Accepts null.
 */
void tp_path_free(struct TpPath *path);

/**
 * Renders the grid's terrain regions as prose. The string is owned by the
 * caller; release with `tp_string_free`.
 */
enum TpStatus tp_describe_terrain(const struct TpGrid *grid, char **out_text);

/**
 * Renders a path as prose: turn-by-turn when `brief` is false, compressed
 * runs when true. Release the string with `tp_string_free`.
 */
enum TpStatus tp_describe_path(const struct TpGrid *grid,
                               const struct TpPath *path,
                               bool brief,
                               char **out_text);

/**
 * Releases a string returned by this library. Accepts null.
 */
void tp_string_free(char *text);

/**
 * Runs the deterministic shortcut reviewer over a path. On `Ok`,
 * `*out_improved` is either null (the path admits no splice improvement)
 * or an owned, strictly cheaper replacement path.
 */
enum TpStatus tp_oracle_review(const struct TpGrid *grid,
                               struct TpTask task,
                               const struct TpPath *path,
                               struct TpPath **out_improved);

/**
 * Judges a suggested point sequence against an existing path for the same
 * task. Sparse suggestions are densified before costing. An `Invalid`
 * outcome is a successful judgment, not an error; the rejection reason is
 * available from `tp_last_error_message`.
 */
enum TpStatus tp_judge_suggestion(const struct TpGrid *grid,
                                  struct TpTask task,
                                  const struct TpPath *original,
                                  const struct TpCoord *points,
                                  size_t count,
                                  struct TpJudgment *out_judgment);

/**
 * Relative precision: 100 x improved / suggested. Returns
 * `TpStatus::Undefined` when nothing was suggested.
 */
enum TpStatus tp_relative_precision(uint64_t n_improved, uint64_t n_suggested, double *out_value);

/**
 * Improvement ratio: 100 x (improved + equal) / paths. `n_path` must be
 * positive.
 */
enum TpStatus tp_improvement_ratio(uint64_t n_improved,
                                   uint64_t n_equal,
                                   uint64_t n_path,
                                   double *out_value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TERRAPATH_H */
