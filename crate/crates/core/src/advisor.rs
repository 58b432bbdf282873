//! Post-hoc path advising: prompt construction for a chat model, verdict
//! parsing, suggestion validation and scoring, retrieval of historical
//! examples, and a deterministic search-based oracle that stands in for the
//! model during offline runs.

use std::path::Path;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::describe::{describe_path_brief, describe_path_detailed, describe_terrain};
use crate::grid::{
    densify, path_cost, segment_cost, Coord, DatasetKind, PlannedPath, TerrainGrid, INFINITE,
};
use crate::{Error, PlanTask, Result};

/// Absolute tolerance under which two path costs count as equal.
pub const EQUAL_TOLERANCE: f64 = 1e-9;

/// Main advisor prompt, up to and including the reply-format preamble.
/// The asymmetric "**Start-End Pair **:" marker is part of the fixed text.
const ADVISOR_BODY: &str = "\
You are provided with a terrain cost grid description:
{terrain_description}
You are also provided with the real coordinates of start and goal points, and a description of path list computed by A*. Below is the data for each pair:

**Start-End Pair **:
- Start: {start}
- End: {end}
- A* path: {path_description}

Analyzing the A* paths, evaluate whether the most cost-efficient path has already been found for each pair.

IMPORTANT: **If not, you must suggest a path list, ensure the first point is the exact start coordinates and the last point is the exact end coordinates as provided, display every single coordinate pair**.

IMPORTANT: **Make your reply strictly in the following format**:

";

/// Standard reply format: a bare Yes, or No plus a bracketed list.
const FORMAT_STANDARD: &str = "\
Requirements:
If a path is optimal, the answer should be Yes.
If a path is not optimal, the answer should be No, the suggested path coordinates (P).
The list of coordinates (P) must start at the corresponding start coordinate and end at the corresponding end coordinate.
The output format must strictly follow the format below, without any additional information.
Output Format:
Yes or No, No or [P]
IMPORTANT: Only output the real list of coordinates for P. Do not include any extra explanations or text.";

/// Descriptive reply format: the suggested path is spelled out as a
/// step-by-step sentence instead of a coordinate list.
const FORMAT_DESCRIPTIVE: &str = "\
Requirements:
If the path is optimal, respond with \"Yes.\"
If the path is not optimal, respond with \"No,\" followed by a descriptive sentence indicating that the suggested path is not feasible, and then provide an alternative path.
The description should clearly outline the movement from the start coordinate to the end coordinate, step by step.
The output must strictly follow the format below, without any additional information.
Output Format:
Yes or No, No or from (start_x, start_y) it goes to (x_1, y_1), then (x_2, y_2), ..., finally, it arrives at (end_x, end_y).";

/// Retrieval preamble, prepended when a historical example is supplied.
const RAG_BLOCK: &str = "\
You are provided with a terrain cost grid description based on historical tasks:
{retrieved_terrain_description}
Additionally, you have the start and goal coordinates along with computed A-star paths retrieved from similar tasks:
{retrieved_path_description}

";

/// Waypoint-suggestion prompt for the chained planner. Note the marker here
/// is "**Start-End Pair**:" without the trailing space.
const WAYPOINT_BODY: &str = "\
You are provided with a terrain cost grid description:
{terrain_description}

You are also provided with the real coordinates of start and goal points,

**Start-End Pair**:
- Start: {start}
- End: {end}

Suggest a list of intermediate target states, P, to help an A* algorithm plan the most cost-efficient path.
The output format must strictly follow the format below, without any additional information.
Output Format:
[P]
IMPORTANT: Only output the real list of coordinates for P. Do not include any extra explanations or text.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathStyle {
    Detailed,
    Brief,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct PromptConfig {
    pub use_rag: bool,
    pub use_descpath: bool,
    pub path_style: PathStyle,
}

impl Default for PromptConfig {
    fn default() -> Self {
        PromptConfig {
            use_rag: false,
            use_descpath: false,
            path_style: PathStyle::Detailed,
        }
    }
}

/// One historical task for retrieval augmentation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RagExample {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scene: Option<String>,
    pub map_id: u64,
    pub terrain_description: String,
    pub start: Coord,
    pub end: Coord,
    pub path_description: String,
}

impl RagExample {
    fn validate(&self) -> Result<()> {
        if self.terrain_description.is_empty() || self.path_description.is_empty() {
            return Err(Error::Retrieval("example has an empty description".into()));
        }
        Ok(())
    }
}

/// Loads a JSON-lines store, one example per line. Blank lines are skipped.
pub fn load_rag_store(path: &Path) -> Result<Vec<RagExample>> {
    let text = std::fs::read_to_string(path)?;
    let mut store = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let example: RagExample = serde_json::from_str(line)?;
        example.validate()?;
        store.push(example);
    }
    Ok(store)
}

/// Picks a historical example: uniformly over the whole store, or uniformly
/// within the matching scene for the outdoor dataset. The example belonging
/// to the queried map itself is never returned.
pub fn retrieve_example<'a>(
    store: &'a [RagExample],
    kind: DatasetKind,
    scene: Option<&str>,
    query_map_id: u64,
    rng_seed: u64,
) -> Result<&'a RagExample> {
    let candidates: Vec<&RagExample> = store
        .iter()
        .filter(|e| e.map_id != query_map_id)
        .filter(|e| match (kind, scene) {
            (DatasetKind::RugdV2, Some(s)) => e.scene.as_deref() == Some(s),
            _ => true,
        })
        .collect();
    if candidates.is_empty() {
        return Err(Error::Retrieval("no retrieval candidates".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    Ok(candidates[rng.gen_range(0..candidates.len())])
}

fn render_path(grid: &TerrainGrid, path: &PlannedPath, style: PathStyle) -> String {
    match style {
        PathStyle::Detailed => describe_path_detailed(grid, path),
        PathStyle::Brief => describe_path_brief(grid, path),
    }
}

/// Builds the advisor prompt for one planned path. The retrieval block is
/// included when `cfg.use_rag` and an example is supplied; the descriptive
/// output format replaces the standard one when `cfg.use_descpath`.
pub fn build_advisor_prompt(
    grid: &TerrainGrid,
    task: &PlanTask,
    path: &PlannedPath,
    cfg: &PromptConfig,
    rag: Option<&RagExample>,
) -> String {
    let mut prompt = String::new();
    if cfg.use_rag {
        if let Some(example) = rag {
            // The preamble promises coordinates along with the retrieved
            // path, so the path slot carries all three lines.
            let retrieved_path = format!(
                "- Start: {}\n- End: {}\n- A* path: {}",
                example.start, example.end, example.path_description
            );
            prompt.push_str(
                &RAG_BLOCK
                    .replace(
                        "{retrieved_terrain_description}",
                        &example.terrain_description,
                    )
                    .replace("{retrieved_path_description}", &retrieved_path),
            );
        }
    }
    prompt.push_str(
        &ADVISOR_BODY
            .replace("{terrain_description}", &describe_terrain(grid))
            .replace("{start}", &task.start.to_string())
            .replace("{end}", &task.goal.to_string())
            .replace(
                "{path_description}",
                &render_path(grid, path, cfg.path_style),
            ),
    );
    prompt.push_str(if cfg.use_descpath {
        FORMAT_DESCRIPTIVE
    } else {
        FORMAT_STANDARD
    });
    prompt
}

/// Builds the waypoint-suggestion prompt for the chained planner.
pub fn build_llm_astar_prompt(grid: &TerrainGrid, task: &PlanTask) -> String {
    WAYPOINT_BODY
        .replace("{terrain_description}", &describe_terrain(grid))
        .replace("{start}", &task.start.to_string())
        .replace("{end}", &task.goal.to_string())
}

#[derive(Debug, Clone, PartialEq)]
pub enum AdvisorVerdict {
    /// The model (or oracle) holds the given path to be cost-optimal.
    Optimal,
    /// A replacement path, as parsed; not yet validated or scored.
    Suggestion(Vec<Coord>),
    /// The reply matched no accepted form; the raw text is kept for audit.
    ParseFailure(String),
}

fn coord_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)").expect("valid regex"))
}

fn extract_coords(text: &str) -> Vec<Coord> {
    coord_re()
        .captures_iter(text)
        .filter_map(|c| {
            let x = c[1].parse().ok()?;
            let y = c[2].parse().ok()?;
            Some(Coord::new(x, y))
        })
        .collect()
}

/// Classifies a raw model reply. Total: every input maps to a verdict, and
/// malformed replies become `ParseFailure` rather than errors.
pub fn parse_verdict(raw: &str, cfg: &PromptConfig) -> AdvisorVerdict {
    let text = raw.trim();
    // The first alphabetic run decides yes/no, so wrappers like quotes,
    // asterisks, or a trailing period do not matter.
    let Some(word_start) = text.find(|c: char| c.is_ascii_alphabetic()) else {
        return AdvisorVerdict::ParseFailure(raw.to_string());
    };
    let word_len = text[word_start..]
        .chars()
        .take_while(|c| c.is_ascii_alphabetic())
        .map(|c| c.len_utf8())
        .sum::<usize>();
    let word = &text[word_start..word_start + word_len];
    let rest = &text[word_start + word_len..];

    if word.eq_ignore_ascii_case("yes") {
        return AdvisorVerdict::Optimal;
    }
    if word.eq_ignore_ascii_case("no") {
        if let Some(open) = rest.find('[') {
            if let Some(close) = rest[open..].find(']') {
                let points = extract_coords(&rest[open..open + close + 1]);
                if !points.is_empty() {
                    return AdvisorVerdict::Suggestion(points);
                }
            }
        }
        if cfg.use_descpath && rest.contains("it goes to") {
            let points = extract_coords(rest);
            // The sentence names at least the start and the arrival point.
            if points.len() >= 2 {
                return AdvisorVerdict::Suggestion(points);
            }
        }
    }
    AdvisorVerdict::ParseFailure(raw.to_string())
}

/// Parses a waypoint-suggestion reply: the first bracketed list of
/// coordinate pairs. A bare `[]` is a valid empty list (no waypoints);
/// brackets holding anything that is not coordinates are not.
pub fn parse_waypoints(raw: &str) -> Option<Vec<Coord>> {
    let open = raw.find('[')?;
    let close = open + raw[open..].find(']')?;
    let inner = &raw[open + 1..close];
    let points = extract_coords(inner);
    if points.is_empty() && !inner.trim().is_empty() {
        return None;
    }
    Some(points)
}

#[derive(Debug, Clone, PartialEq)]
pub enum JudgmentOutcome {
    Improved,
    Equal,
    Deteriorated,
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuggestionJudgment {
    pub outcome: JudgmentOutcome,
    pub original_cost: f64,
    /// Cost of the densified suggestion; INFINITE when invalid.
    pub suggested_cost: f64,
}

/// Validates a suggested path and compares its cost against the original.
/// The suggestion is densified first, so sparse waypoint lists are fine.
pub fn judge_suggestion(
    grid: &TerrainGrid,
    task: &PlanTask,
    original: &PlannedPath,
    suggestion: &[Coord],
) -> SuggestionJudgment {
    let original_cost = original.total_cost;
    let invalid = |reason: &str| SuggestionJudgment {
        outcome: JudgmentOutcome::Invalid(reason.to_string()),
        original_cost,
        suggested_cost: INFINITE,
    };
    let (Some(&first), Some(&last)) = (suggestion.first(), suggestion.last()) else {
        return invalid("empty suggestion");
    };
    if first != task.start {
        return invalid("start mismatch");
    }
    if last != task.goal {
        return invalid("end mismatch");
    }
    if suggestion.iter().any(|p| !grid.in_bounds(*p)) {
        return invalid("point out of bounds");
    }
    let cells = densify(suggestion);
    let Ok((suggested_cost, _)) = path_cost(grid, &cells) else {
        return invalid("malformed suggestion");
    };
    if suggested_cost.is_infinite() {
        return invalid("crosses an obstacle");
    }
    let outcome = if (suggested_cost - original_cost).abs() <= EQUAL_TOLERANCE {
        JudgmentOutcome::Equal
    } else if suggested_cost < original_cost {
        JudgmentOutcome::Improved
    } else {
        JudgmentOutcome::Deteriorated
    };
    SuggestionJudgment {
        outcome,
        original_cost,
        suggested_cost,
    }
}

/// Deterministic stand-in for the model: greedy string-pulling. Repeatedly
/// splices in the straight segment between the farthest pair of path points
/// that beats the sub-path it replaces, then reports either `Optimal` or the
/// improved path as a `Suggestion`.
///
/// A suggestion from this oracle always judges as `Improved`; an `Optimal`
/// admits no single-splice improvement at all.
pub fn shortcut_oracle(grid: &TerrainGrid, _task: &PlanTask, path: &PlannedPath) -> AdvisorVerdict {
    let mut points = path.points.clone();
    let original = path.total_cost;
    let mut current = original;
    // Every pass strictly lowers the cost; the cap only guards against
    // pathological float creep.
    for _ in 0..1_000 {
        let Ok((total, steps)) = path_cost(grid, &points) else {
            break;
        };
        current = total;
        let mut prefix = Vec::with_capacity(points.len());
        prefix.push(0.0);
        for s in &steps {
            prefix.push(prefix.last().expect("nonempty") + s);
        }
        let Some((i, j)) = best_splice(grid, &points, &prefix) else {
            break;
        };
        let walk = densify(&[points[i], points[j]]);
        let mut next = Vec::with_capacity(points.len());
        next.extend_from_slice(&points[..=i]);
        next.extend_from_slice(&walk[1..]);
        next.extend_from_slice(&points[j + 1..]);
        points = next;
    }
    if current < original - EQUAL_TOLERANCE {
        AdvisorVerdict::Suggestion(points)
    } else {
        AdvisorVerdict::Optimal
    }
}

/// Farthest pair (max j - i, ties to the smallest i) whose straight segment
/// strictly beats the sub-path between them.
fn best_splice(grid: &TerrainGrid, points: &[Coord], prefix: &[f64]) -> Option<(usize, usize)> {
    let n = points.len();
    for sep in (2..n).rev() {
        for i in 0..n - sep {
            let j = i + sep;
            let sub = prefix[j] - prefix[i];
            let seg = segment_cost(grid, points[i], points[j]).unwrap_or(INFINITE);
            if seg < sub - EQUAL_TOLERANCE {
                return Some((i, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::CostModel;
    use crate::planners::astar;

    fn grid_with_region() -> TerrainGrid {
        // 20x20 free ground with a small cost-5 block.
        let mut cells = vec![1.0; 20 * 20];
        for y in 4..9 {
            for x in 10..14 {
                cells[y * 20 + x] = 5.0;
            }
        }
        TerrainGrid::from_cells(20, 20, cells, CostModel::multi_terra_path()).unwrap()
    }

    fn uniform(side: u32) -> TerrainGrid {
        TerrainGrid::uniform(side, side, 1.0, CostModel::multi_terra_path()).unwrap()
    }

    fn plan(grid: &TerrainGrid, task: &PlanTask) -> PlannedPath {
        astar(grid, task).unwrap().status.path().unwrap().clone()
    }

    fn example(map_id: u64, scene: Option<&str>) -> RagExample {
        RagExample {
            scene: scene.map(str::to_string),
            map_id,
            terrain_description: "High-cost area with cost 5 is approximately located between grid coordinates (1, 1) and (3, 3).".into(),
            start: Coord::new(0, 0),
            end: Coord::new(9, 9),
            path_description: "Point 1 at (0, 0) has a terrain cost of 1. The total cost of the path is 0.".into(),
        }
    }

    #[test]
    fn plain_prompt_contains_the_fixed_lines() {
        let g = grid_with_region();
        let task = PlanTask {
            map_id: 0,
            start: Coord::new(3, 4),
            goal: Coord::new(17, 12),
        };
        let p = plan(&g, &task);
        let prompt = build_advisor_prompt(&g, &task, &p, &PromptConfig::default(), None);
        assert!(prompt.contains(
            "Analyzing the A* paths, evaluate whether the most cost-efficient path has already been found for each pair."
        ));
        assert!(
            prompt.contains("**Start-End Pair **:"),
            "marker keeps its odd space"
        );
        assert!(prompt.contains("- Start: (3, 4)"));
        assert!(prompt.contains("- End: (17, 12)"));
        assert!(prompt.contains("Yes or No, No or [P]"));
        assert!(prompt.contains("High-cost area with cost 5"));
        assert!(prompt.contains("The total cost of the path is"));
        assert!(
            !prompt.contains('{') && !prompt.contains('}'),
            "no unfilled placeholders"
        );
        assert!(!prompt.contains("based on historical tasks"));
    }

    #[test]
    fn rag_prompt_prepends_the_retrieval_block() {
        let g = grid_with_region();
        let task = PlanTask {
            map_id: 5,
            start: Coord::new(0, 0),
            goal: Coord::new(19, 19),
        };
        let p = plan(&g, &task);
        let cfg = PromptConfig {
            use_rag: true,
            ..PromptConfig::default()
        };
        let ex = example(2, None);
        let prompt = build_advisor_prompt(&g, &task, &p, &cfg, Some(&ex));
        assert!(prompt.starts_with(
            "You are provided with a terrain cost grid description based on historical tasks:"
        ));
        assert!(prompt.contains("retrieved from similar tasks"));
        // The retrieved example's coordinates and descriptions are embedded.
        assert!(prompt.contains("- Start: (0, 0)\n- End: (9, 9)"));
        assert!(prompt.contains(&ex.terrain_description));
        assert!(prompt.contains(&ex.path_description));
        assert!(!prompt.contains('{'));
    }

    #[test]
    fn descpath_prompt_swaps_the_format_block() {
        let g = grid_with_region();
        let task = PlanTask {
            map_id: 0,
            start: Coord::new(0, 0),
            goal: Coord::new(19, 19),
        };
        let p = plan(&g, &task);
        let cfg = PromptConfig {
            use_descpath: true,
            ..PromptConfig::default()
        };
        let prompt = build_advisor_prompt(&g, &task, &p, &cfg, None);
        assert!(prompt.contains("finally, it arrives at"));
        assert!(prompt.contains("step by step"));
        assert!(!prompt.contains("Yes or No, No or [P]"));
        assert!(!prompt.contains("the answer should be Yes"));
    }

    #[test]
    fn brief_style_uses_the_run_length_grammar() {
        let g = grid_with_region();
        let task = PlanTask {
            map_id: 0,
            start: Coord::new(0, 0),
            goal: Coord::new(19, 19),
        };
        let p = plan(&g, &task);
        let cfg = PromptConfig {
            path_style: PathStyle::Brief,
            ..PromptConfig::default()
        };
        let prompt = build_advisor_prompt(&g, &task, &p, &cfg, None);
        assert!(prompt.contains("the terrain cost is"));
        assert!(!prompt.contains("Point 1 at"));
    }

    #[test]
    fn waypoint_prompt_matches_its_template() {
        let g = grid_with_region();
        let task = PlanTask {
            map_id: 0,
            start: Coord::new(2, 3),
            goal: Coord::new(18, 16),
        };
        let prompt = build_llm_astar_prompt(&g, &task);
        assert!(prompt.contains("help an A* algorithm plan the most cost-efficient path"));
        assert!(prompt.contains("Suggest a list of intermediate target states, P,"));
        assert!(
            prompt.contains("**Start-End Pair**:"),
            "no trailing space in this marker"
        );
        assert!(prompt.contains("- Start: (2, 3)"));
        assert!(prompt.contains("- End: (18, 16)"));
        assert!(!prompt.contains('{') && !prompt.contains('}'));
    }

    #[test]
    fn verdict_yes_forms() {
        let cfg = PromptConfig::default();
        for raw in [
            "Yes",
            "yes.",
            "  **Yes**  ",
            "\"Yes.\"",
            "YES, the path is optimal",
        ] {
            assert_eq!(
                parse_verdict(raw, &cfg),
                AdvisorVerdict::Optimal,
                "raw: {raw:?}"
            );
        }
    }

    #[test]
    fn verdict_bracketed_suggestion() {
        let cfg = PromptConfig::default();
        let v = parse_verdict("No, [(0, 0), (5, 5), (9, 9)]", &cfg);
        let expected = vec![Coord::new(0, 0), Coord::new(5, 5), Coord::new(9, 9)];
        assert_eq!(v, AdvisorVerdict::Suggestion(expected));
    }

    #[test]
    fn verdict_goes_to_sentence_requires_descpath() {
        let raw = "No, from (0, 0) it goes to (5, 5), then (7, 7), finally, it arrives at (9, 9).";
        let on = PromptConfig {
            use_descpath: true,
            ..PromptConfig::default()
        };
        let v = parse_verdict(raw, &on);
        let expected = vec![
            Coord::new(0, 0),
            Coord::new(5, 5),
            Coord::new(7, 7),
            Coord::new(9, 9),
        ];
        assert_eq!(v, AdvisorVerdict::Suggestion(expected));
        // Without the descriptive format the sentence is not an accepted form.
        let off = PromptConfig::default();
        assert!(matches!(
            parse_verdict(raw, &off),
            AdvisorVerdict::ParseFailure(_)
        ));
    }

    #[test]
    fn verdict_rejects_everything_else() {
        let cfg = PromptConfig::default();
        for raw in [
            "The path looks fine to me",
            "Yesterday it rained",
            "No",
            "No, []",
            "No, [(99999999999999, 0)]",
            "",
            "12345",
            "Nope, [(0, 0), (1, 1)]",
        ] {
            match parse_verdict(raw, &cfg) {
                AdvisorVerdict::ParseFailure(kept) => assert_eq!(kept, raw),
                other => panic!("{raw:?} parsed as {other:?}"),
            }
        }
    }

    #[test]
    fn waypoint_replies() {
        assert_eq!(
            parse_waypoints("[(3, 4), (10, 12)]"),
            Some(vec![Coord::new(3, 4), Coord::new(10, 12)])
        );
        assert_eq!(
            parse_waypoints("Sure! P = [(7, 7)] should help."),
            Some(vec![Coord::new(7, 7)])
        );
        assert_eq!(parse_waypoints("[]"), Some(vec![]));
        assert_eq!(parse_waypoints("[ ]"), Some(vec![]));
        assert_eq!(parse_waypoints("no list here"), None);
        assert_eq!(parse_waypoints("[not coordinates]"), None);
    }

    #[test]
    fn judge_self_suggestion_is_equal() {
        let g = grid_with_region();
        let task = PlanTask {
            map_id: 0,
            start: Coord::new(1, 1),
            goal: Coord::new(18, 17),
        };
        let p = plan(&g, &task);
        let j = judge_suggestion(&g, &task, &p, &p.points);
        assert_eq!(j.outcome, JudgmentOutcome::Equal);
        assert!((j.suggested_cost - j.original_cost).abs() <= EQUAL_TOLERANCE);
    }

    #[test]
    fn judge_endpoint_mismatches() {
        let g = uniform(10);
        let task = PlanTask {
            map_id: 0,
            start: Coord::new(0, 0),
            goal: Coord::new(9, 0),
        };
        let p = plan(&g, &task);
        let off_start = vec![Coord::new(1, 0), Coord::new(9, 0)];
        assert_eq!(
            judge_suggestion(&g, &task, &p, &off_start).outcome,
            JudgmentOutcome::Invalid("start mismatch".into())
        );
        let off_end = vec![Coord::new(0, 0), Coord::new(9, 1)];
        assert_eq!(
            judge_suggestion(&g, &task, &p, &off_end).outcome,
            JudgmentOutcome::Invalid("end mismatch".into())
        );
        assert_eq!(
            judge_suggestion(&g, &task, &p, &[]).outcome,
            JudgmentOutcome::Invalid("empty suggestion".into())
        );
    }

    #[test]
    fn judge_out_of_bounds_point() {
        let g = uniform(10);
        let task = PlanTask {
            map_id: 0,
            start: Coord::new(0, 0),
            goal: Coord::new(9, 0),
        };
        let p = plan(&g, &task);
        let s = vec![Coord::new(0, 0), Coord::new(5, 12), Coord::new(9, 0)];
        assert_eq!(
            judge_suggestion(&g, &task, &p, &s).outcome,
            JudgmentOutcome::Invalid("point out of bounds".into())
        );
    }

    #[test]
    fn judge_obstacle_crossing() {
        let mut cells = vec![1.0; 10 * 10];
        cells[5] = crate::grid::INFINITE; // (5, 0)
        let g = TerrainGrid::from_cells(10, 10, cells, CostModel::multi_terra_path()).unwrap();
        let task = PlanTask {
            map_id: 0,
            start: Coord::new(0, 0),
            goal: Coord::new(9, 0),
        };
        let p = plan(&g, &task);
        let straight = vec![Coord::new(0, 0), Coord::new(9, 0)];
        let j = judge_suggestion(&g, &task, &p, &straight);
        assert_eq!(
            j.outcome,
            JudgmentOutcome::Invalid("crosses an obstacle".into())
        );
        assert!(j.suggested_cost.is_infinite());
    }

    #[test]
    fn judge_improvement_and_deterioration() {
        let g = uniform(10);
        let task = PlanTask {
            map_id: 0,
            start: Coord::new(0, 0),
            goal: Coord::new(9, 0),
        };
        // Hand-built detour: down 5 rows, across, back up. Cost 19.
        let mut detour = Vec::new();
        for y in 0..=5 {
            detour.push(Coord::new(0, y));
        }
        for x in 1..=9 {
            detour.push(Coord::new(x, 5));
        }
        for y in (0..5).rev() {
            detour.push(Coord::new(9, y));
        }
        let original = PlannedPath::from_points(&g, detour).unwrap();
        assert!((original.total_cost - 19.0).abs() < 1e-9);

        let shortcut = vec![Coord::new(0, 0), Coord::new(9, 0)];
        let improved = judge_suggestion(&g, &task, &original, &shortcut);
        assert_eq!(improved.outcome, JudgmentOutcome::Improved);
        assert!((improved.suggested_cost - 9.0).abs() < 1e-9);

        // Against the straight optimum the same detour is a deterioration.
        let straight = plan(&g, &task);
        let worse = judge_suggestion(&g, &task, &straight, &original.points);
        assert_eq!(worse.outcome, JudgmentOutcome::Deteriorated);
        assert!((worse.suggested_cost - 19.0).abs() < 1e-9);
    }

    #[test]
    fn oracle_accepts_a_straight_optimum() {
        let g = uniform(20);
        let task = PlanTask {
            map_id: 0,
            start: Coord::new(0, 0),
            goal: Coord::new(10, 10),
        };
        let p = plan(&g, &task);
        assert_eq!(shortcut_oracle(&g, &task, &p), AdvisorVerdict::Optimal);
    }

    #[test]
    fn oracle_straightens_an_l_detour() {
        let g = uniform(20);
        let task = PlanTask {
            map_id: 0,
            start: Coord::new(0, 0),
            goal: Coord::new(10, 10),
        };
        let mut l = Vec::new();
        for y in 0..=10 {
            l.push(Coord::new(0, y));
        }
        for x in 1..=10 {
            l.push(Coord::new(x, 10));
        }
        let p = PlannedPath::from_points(&g, l).unwrap();
        assert!((p.total_cost - 20.0).abs() < 1e-9);
        let AdvisorVerdict::Suggestion(s) = shortcut_oracle(&g, &task, &p) else {
            panic!("detour must yield a suggestion");
        };
        let j = judge_suggestion(&g, &task, &p, &s);
        assert_eq!(j.outcome, JudgmentOutcome::Improved);
        // The diagonal costs 10 * sqrt(2).
        assert!((j.suggested_cost - 10.0 * crate::grid::SQRT_2).abs() < 1e-9);
    }

    #[test]
    fn oracle_leaves_an_obstacle_hugging_path_alone() {
        // Wall down the middle with a gap at the bottom; the best route hugs it.
        let mut cells = vec![1.0; 20 * 20];
        for y in 0..19 {
            cells[y * 20 + 10] = crate::grid::INFINITE;
        }
        let g = TerrainGrid::from_cells(20, 20, cells, CostModel::multi_terra_path()).unwrap();
        let task = PlanTask {
            map_id: 0,
            start: Coord::new(5, 5),
            goal: Coord::new(15, 5),
        };
        let p = plan(&g, &task);
        assert_eq!(shortcut_oracle(&g, &task, &p), AdvisorVerdict::Optimal);
        // Exhaustive check: no single splice improves.
        let (_, steps) = path_cost(&g, &p.points).unwrap();
        let mut prefix = vec![0.0];
        for s in &steps {
            prefix.push(prefix.last().unwrap() + s);
        }
        for i in 0..p.points.len() {
            for j in i + 2..p.points.len() {
                let seg = segment_cost(&g, p.points[i], p.points[j]).unwrap();
                assert!(
                    seg >= prefix[j] - prefix[i] - EQUAL_TOLERANCE,
                    "splice {i}..{j} would improve"
                );
            }
        }
    }

    #[test]
    fn oracle_suggestions_always_judge_improved() {
        // Random suboptimal inputs: plan through a forced corner waypoint.
        let g = grid_with_region();
        for seed in 0..10u64 {
            let x = 1 + (seed as i32 * 3) % 17;
            let task = PlanTask {
                map_id: 0,
                start: Coord::new(x, 1),
                goal: Coord::new(18, 18),
            };
            let via = crate::planners::llm_astar(&g, &task, &[Coord::new(1, 18)]).unwrap();
            let p = via.status.path().unwrap().clone();
            match shortcut_oracle(&g, &task, &p) {
                AdvisorVerdict::Optimal => {}
                AdvisorVerdict::Suggestion(s) => {
                    let j = judge_suggestion(&g, &task, &p, &s);
                    assert_eq!(j.outcome, JudgmentOutcome::Improved, "seed {seed}");
                }
                AdvisorVerdict::ParseFailure(_) => unreachable!("oracle never fails to parse"),
            }
        }
    }

    #[test]
    fn retrieval_is_seed_deterministic_and_skips_the_query_map() {
        let store: Vec<RagExample> = (0..6).map(|i| example(i, None)).collect();
        let a = retrieve_example(&store, DatasetKind::MultiTerraPath, None, 3, 7).unwrap();
        let b = retrieve_example(&store, DatasetKind::MultiTerraPath, None, 3, 7).unwrap();
        assert_eq!(a, b);
        for seed in 0..50 {
            let e = retrieve_example(&store, DatasetKind::MultiTerraPath, None, 3, seed).unwrap();
            assert_ne!(e.map_id, 3, "query map leaked at seed {seed}");
        }
    }

    #[test]
    fn retrieval_single_example_store() {
        let store = vec![example(4, None)];
        let e = retrieve_example(&store, DatasetKind::MultiTerraPath, None, 9, 0).unwrap();
        assert_eq!(e.map_id, 4);
        // The sole example belongs to the query map: nothing left to retrieve.
        assert!(retrieve_example(&store, DatasetKind::MultiTerraPath, None, 4, 0).is_err());
    }

    #[test]
    fn retrieval_matches_scene_for_the_outdoor_dataset() {
        let store = vec![
            example(0, Some("park")),
            example(1, Some("trail")),
            example(2, Some("park")),
            example(3, Some("creek")),
        ];
        for seed in 0..30 {
            let e = retrieve_example(&store, DatasetKind::RugdV2, Some("park"), 99, seed).unwrap();
            assert_eq!(e.scene.as_deref(), Some("park"));
        }
        // Same store, whole-dataset kind: scene is not a filter.
        let mut seen_other = false;
        for seed in 0..30 {
            let e = retrieve_example(&store, DatasetKind::MultiTerraPath, Some("park"), 99, seed)
                .unwrap();
            seen_other |= e.scene.as_deref() != Some("park");
        }
        assert!(seen_other);
        assert!(retrieve_example(&store, DatasetKind::RugdV2, Some("desert"), 99, 0).is_err());
    }

    #[test]
    fn rag_store_round_trips_through_json_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("store.jsonl");
        let examples = vec![example(0, Some("park")), example(1, None)];
        let lines: Vec<String> = examples
            .iter()
            .map(|e| serde_json::to_string(e).unwrap())
            .collect();
        std::fs::write(&path, format!("{}\n\n{}\n", lines[0], lines[1])).unwrap();
        let store = load_rag_store(&path).unwrap();
        assert_eq!(store, examples);
    }
}
