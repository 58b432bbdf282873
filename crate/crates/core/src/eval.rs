//! Batch evaluation: plan and advise over a map directory, accumulate the
//! count taxonomy, and compute the three metrics.
//!
//! Counting conventions: an `Optimal` verdict, a parse failure, or an
//! advising error keeps the original path and counts under `n_equal`
//! (no suggestion changed hands). A judged suggestion lands in its own
//! bucket, with `Invalid` folded into `n_deteriorated`. A planner failure
//! counts under `n_deteriorated` and leaves `n_successful` alone, so
//! `n_improved + n_equal + n_deteriorated = n_path` always holds.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::advisor::{
    build_advisor_prompt, build_llm_astar_prompt, judge_suggestion, parse_verdict, parse_waypoints,
    retrieve_example, shortcut_oracle, AdvisorVerdict, JudgmentOutcome, PromptConfig, RagExample,
};
use crate::config::derive_seed;
use crate::grid::{CostValue, DatasetKind, TerrainGrid};
use crate::llm::{ChatBackend, ChatRequest};
use crate::mapgen::{load_map_path, map_file_names, read_task};
use crate::planners::{astar, llm_astar, rrt_star, PlanStatus, RrtParams};
use crate::{Error, PlanTask, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlannerKind {
    Astar,
    RrtStar,
    LlmAstar,
}

impl PlannerKind {
    /// Human-readable method label for reports.
    pub fn method_label(self) -> &'static str {
        match self {
            PlannerKind::Astar => "LLM-Advisor + A*",
            PlannerKind::RrtStar => "LLM-Advisor + RRT*",
            PlannerKind::LlmAstar => "LLM-Advisor + LLM-A*",
        }
    }
}

#[derive(Debug, Clone)]
pub struct PlannerSetup {
    pub kind: PlannerKind,
    pub rrt: RrtParams,
    /// Base seed; each task derives its own stream from it.
    pub rng_seed: u64,
}

/// Who answers advisor (and waypoint) prompts.
#[derive(Clone)]
pub enum BackendChoice {
    /// The deterministic in-process shortcut oracle.
    Oracle,
    Chat(Arc<dyn ChatBackend>),
}

#[derive(Clone)]
pub struct AdvisorSetup {
    pub prompt: PromptConfig,
    pub backend: BackendChoice,
    /// Chat model name sent with every request.
    pub model: String,
    /// Historical examples for retrieval; empty disables the block.
    pub rag_store: Vec<RagExample>,
    pub rng_seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct EvalCounts {
    pub n_images: u64,
    pub n_path: u64,
    pub n_successful: u64,
    pub n_suggested: u64,
    pub n_improved: u64,
    pub n_equal: u64,
    pub n_deteriorated: u64,
}

/// 100 x n_improved / n_suggested; `None` when nothing was suggested.
pub fn relative_precision(counts: &EvalCounts) -> Option<f64> {
    if counts.n_suggested == 0 {
        return None;
    }
    Some(100.0 * counts.n_improved as f64 / counts.n_suggested as f64)
}

/// 100 x (n_improved + n_equal) / n_path.
pub fn improvement_ratio(counts: &EvalCounts) -> Result<f64> {
    if counts.n_path == 0 {
        return Err(Error::Contract("improvement ratio over zero paths".into()));
    }
    Ok(100.0 * (counts.n_improved + counts.n_equal) as f64 / counts.n_path as f64)
}

/// Paths per second over the summed planning + advising wall time.
pub fn measure_fps(paths: u64, total: Duration) -> Result<f64> {
    if paths == 0 {
        return Err(Error::Contract("fps over zero paths".into()));
    }
    let secs = total.as_secs_f64();
    if secs <= 0.0 {
        return Err(Error::Contract("fps over zero measured time".into()));
    }
    Ok(paths as f64 / secs)
}

/// One audited task. `wall_time` covers planning and advising, not map I/O.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskRecord {
    pub map_id: u64,
    /// Cost of the planner's path; absent when the plan failed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub original_cost: Option<CostValue>,
    /// "optimal", "suggestion", "parse failure", "backend error: ...",
    /// or "plan failure: ...".
    pub verdict: String,
    /// For suggestions: "improved", "equal", "deteriorated", "invalid: ...".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub judgment: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suggested_cost: Option<CostValue>,
    pub wall_time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub counts: EvalCounts,
    /// `None` when no suggestions were made.
    pub rp: Option<f64>,
    pub ir: f64,
    pub fps: f64,
    pub per_task: Vec<TaskRecord>,
}

/// Rebuilds the count taxonomy from audit records. This is the only way
/// counts are ever computed, so a recount from `per_task` always matches.
pub fn counts_from_records(records: &[TaskRecord]) -> EvalCounts {
    let mut c = EvalCounts {
        n_images: records.len() as u64,
        n_path: records.len() as u64,
        ..EvalCounts::default()
    };
    for r in records {
        if r.verdict.starts_with("plan failure") {
            c.n_deteriorated += 1;
            continue;
        }
        c.n_successful += 1;
        if r.verdict == "suggestion" {
            c.n_suggested += 1;
            match r.judgment.as_deref() {
                Some("improved") => c.n_improved += 1,
                Some("equal") => c.n_equal += 1,
                _ => c.n_deteriorated += 1,
            }
        } else {
            c.n_equal += 1;
        }
    }
    c
}

struct DatasetEntry {
    map_id: u64,
    png: PathBuf,
    json: PathBuf,
}

fn scan_dataset(dir: &Path) -> Result<Vec<DatasetEntry>> {
    let mut ids = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let name = entry?.file_name();
        let name = name.to_string_lossy();
        if let Some(id) = name
            .strip_prefix("map_")
            .and_then(|n| n.strip_suffix(".json"))
        {
            if let Ok(id) = id.parse::<u64>() {
                ids.push(id);
            }
        }
    }
    ids.sort_unstable();
    let entries: Vec<DatasetEntry> = ids
        .into_iter()
        .map(|map_id| {
            let (png, json) = map_file_names(map_id);
            DatasetEntry {
                map_id,
                png: dir.join(png),
                json: dir.join(json),
            }
        })
        .collect();
    for e in &entries {
        if !e.png.is_file() {
            return Err(Error::Generation(format!(
                "missing map image {}",
                e.png.display()
            )));
        }
    }
    if entries.is_empty() {
        return Err(Error::Generation(format!(
            "no map sidecars under {}",
            dir.display()
        )));
    }
    Ok(entries)
}

/// Runs planner + advisor over every map in `dir` with a bounded worker
/// pool. Per-task problems are recorded, never abort the batch; only an
/// unreadable dataset is an error.
pub fn run_evaluation(
    dir: &Path,
    kind: DatasetKind,
    planner: &PlannerSetup,
    advisor: &AdvisorSetup,
    jobs: usize,
) -> Result<EvalReport> {
    if planner.kind == PlannerKind::LlmAstar && matches!(advisor.backend, BackendChoice::Oracle) {
        return Err(Error::Config(
            "waypoint suggestions need a chat backend; the oracle only reviews finished paths"
                .into(),
        ));
    }
    let entries = scan_dataset(dir)?;
    let model = kind.cost_model();

    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Result<TaskRecord>>> = Mutex::new(Vec::new());
    let workers = jobs.max(1).min(entries.len());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(entry) = entries.get(i) else { break };
                let record = process_task(entry, &model, kind, planner, advisor);
                slots.lock().expect("result lock").push(record);
            });
        }
    });

    let mut records = Vec::with_capacity(entries.len());
    for r in slots.into_inner().expect("result lock") {
        records.push(r?);
    }
    records.sort_by_key(|r| r.map_id);

    let counts = counts_from_records(&records);
    let total_wall = Duration::from_secs_f64(records.iter().map(|r| r.wall_time).sum());
    Ok(EvalReport {
        counts,
        rp: relative_precision(&counts),
        ir: improvement_ratio(&counts)?,
        fps: measure_fps(counts.n_path, total_wall)?,
        per_task: records,
    })
}

fn process_task(
    entry: &DatasetEntry,
    model: &crate::grid::CostModel,
    kind: DatasetKind,
    planner: &PlannerSetup,
    advisor: &AdvisorSetup,
) -> Result<TaskRecord> {
    // Dataset I/O happens before the clock starts.
    let grid = load_map_path(&entry.png, model)?;
    let saved = read_task(&entry.json)?;
    let task = saved.task();

    let clock = Instant::now();
    let planned = match plan_one(&grid, &task, planner, advisor) {
        Ok(PlanStatus::Success(p)) => p,
        Ok(PlanStatus::Failure(reason)) => {
            return Ok(TaskRecord {
                map_id: entry.map_id,
                original_cost: None,
                verdict: format!("plan failure: {reason}"),
                judgment: None,
                suggested_cost: None,
                wall_time: clock.elapsed().as_secs_f64(),
            });
        }
        Err(msg) => {
            return Ok(TaskRecord {
                map_id: entry.map_id,
                original_cost: None,
                verdict: format!("plan failure: {msg}"),
                judgment: None,
                suggested_cost: None,
                wall_time: clock.elapsed().as_secs_f64(),
            });
        }
    };

    let mut record = TaskRecord {
        map_id: entry.map_id,
        original_cost: Some(CostValue(planned.total_cost)),
        verdict: String::new(),
        judgment: None,
        suggested_cost: None,
        wall_time: 0.0,
    };
    match advise_one(
        &grid,
        &task,
        &planned,
        kind,
        advisor,
        saved.scene.as_deref(),
    ) {
        Ok(AdvisorVerdict::Optimal) => record.verdict = "optimal".into(),
        Ok(AdvisorVerdict::ParseFailure(_)) => record.verdict = "parse failure".into(),
        Ok(AdvisorVerdict::Suggestion(points)) => {
            record.verdict = "suggestion".into();
            let j = judge_suggestion(&grid, &task, &planned, &points);
            record.suggested_cost = Some(CostValue(j.suggested_cost));
            record.judgment = Some(match j.outcome {
                JudgmentOutcome::Improved => "improved".into(),
                JudgmentOutcome::Equal => "equal".into(),
                JudgmentOutcome::Deteriorated => "deteriorated".into(),
                JudgmentOutcome::Invalid(reason) => format!("invalid: {reason}"),
            });
        }
        Err(e) => record.verdict = format!("backend error: {e}"),
    }
    record.wall_time = clock.elapsed().as_secs_f64();
    Ok(record)
}

/// Plans one task. `Err(String)` carries non-planner trouble (waypoint
/// backend or parse problems) that the caller records as a plan failure.
fn plan_one(
    grid: &TerrainGrid,
    task: &PlanTask,
    planner: &PlannerSetup,
    advisor: &AdvisorSetup,
) -> std::result::Result<PlanStatus, String> {
    let outcome = match planner.kind {
        PlannerKind::Astar => astar(grid, task),
        PlannerKind::RrtStar => {
            let params = RrtParams {
                rng_seed: derive_seed(planner.rng_seed, &format!("rrt:{}", task.map_id)),
                ..planner.rrt
            };
            rrt_star(grid, task, &params)
        }
        PlannerKind::LlmAstar => {
            let BackendChoice::Chat(chat) = &advisor.backend else {
                unreachable!("checked before the batch starts");
            };
            let prompt = build_llm_astar_prompt(grid, task);
            let reply = chat
                .complete(&ChatRequest::new(&advisor.model, prompt))
                .map_err(|e| format!("waypoint backend error: {e}"))?;
            let Some(waypoints) = parse_waypoints(&reply.text) else {
                return Err(crate::planners::FailureReason::WaypointParse.to_string());
            };
            llm_astar(grid, task, &waypoints)
        }
    };
    outcome.map(|o| o.status).map_err(|e| e.to_string())
}

fn advise_one(
    grid: &TerrainGrid,
    task: &PlanTask,
    planned: &crate::grid::PlannedPath,
    kind: DatasetKind,
    advisor: &AdvisorSetup,
    scene: Option<&str>,
) -> Result<AdvisorVerdict> {
    match &advisor.backend {
        BackendChoice::Oracle => Ok(shortcut_oracle(grid, task, planned)),
        BackendChoice::Chat(chat) => {
            let example = if advisor.prompt.use_rag && !advisor.rag_store.is_empty() {
                let seed = derive_seed(advisor.rng_seed, &format!("rag:{}", task.map_id));
                Some(retrieve_example(&advisor.rag_store, kind, scene, task.map_id, seed)?.clone())
            } else {
                None
            };
            let prompt =
                build_advisor_prompt(grid, task, planned, &advisor.prompt, example.as_ref());
            let reply = chat.complete(&ChatRequest::new(&advisor.model, prompt))?;
            Ok(parse_verdict(&reply.text, &advisor.prompt))
        }
    }
}

/// Two-line CSV mirroring the main results table layout.
pub fn report_csv(report: &EvalReport, planner: PlannerKind, prompt: &PromptConfig) -> String {
    let style = match prompt.path_style {
        crate::advisor::PathStyle::Detailed => "detailed",
        crate::advisor::PathStyle::Brief => "brief",
    };
    let rp = match report.rp {
        Some(v) => format!("{v:.2}"),
        None => "undefined".into(),
    };
    format!(
        "method,terrain_description,path_style,n_images,n_path,n_suggested,n_improved,rp\n{},yes,{},{},{},{},{},{}\n",
        planner.method_label(),
        style,
        report.counts.n_images,
        report.counts.n_path,
        report.counts.n_suggested,
        report.counts.n_improved,
        rp
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::llm::ScriptedBackend;
    use crate::mapgen::{generate_map, write_map_files, MapSpec};

    fn counts(suggested: u64, improved: u64, equal: u64, n_path: u64) -> EvalCounts {
        EvalCounts {
            n_images: n_path,
            n_path,
            n_successful: n_path,
            n_suggested: suggested,
            n_improved: improved,
            n_equal: equal,
            n_deteriorated: n_path - improved - equal,
        }
    }

    #[test]
    fn relative_precision_reference_values() {
        for (suggested, improved, expected) in
            [(612, 432, 70.59), (737, 512, 69.47), (770, 606, 78.70)]
        {
            let rp = relative_precision(&counts(suggested, improved, 0, 1000)).unwrap();
            assert!(
                (rp - expected).abs() <= 0.005,
                "{improved}/{suggested} -> {rp}"
            );
        }
        assert_eq!(relative_precision(&counts(0, 0, 0, 10)), None);
    }

    #[test]
    fn improvement_ratio_reference_values() {
        for (improved, equal, expected) in [(432, 393, 82.50), (152, 538, 69.00), (208, 0, 20.80)] {
            let ir = improvement_ratio(&counts(1000, improved, equal, 1000)).unwrap();
            assert_eq!(ir, expected, "{improved}+{equal} over 1000");
        }
        assert!(improvement_ratio(&EvalCounts::default()).is_err());
    }

    #[test]
    fn fps_arithmetic() {
        assert_eq!(measure_fps(10, Duration::from_secs(2)).unwrap(), 5.0);
        assert_eq!(measure_fps(1, Duration::from_millis(500)).unwrap(), 2.0);
        assert!(measure_fps(0, Duration::from_secs(1)).is_err());
        assert!(measure_fps(5, Duration::ZERO).is_err());
    }

    fn write_dataset(dir: &Path, n: u64, side: u32) {
        for map_id in 0..n {
            let mut spec = MapSpec::new(side, side, derive_seed(11, &format!("map:{map_id}")));
            spec.map_id = map_id;
            spec.region_size = 8..=(side / 2).max(9);
            let (grid, task) = generate_map(&spec).unwrap();
            write_map_files(dir, &grid, &task).unwrap();
        }
    }

    fn astar_setup() -> PlannerSetup {
        PlannerSetup {
            kind: PlannerKind::Astar,
            rrt: RrtParams::default(),
            rng_seed: 0,
        }
    }

    fn advisor_setup(backend: BackendChoice) -> AdvisorSetup {
        AdvisorSetup {
            prompt: PromptConfig::default(),
            backend,
            model: "test-model".into(),
            rag_store: Vec::new(),
            rng_seed: 0,
        }
    }

    #[test]
    fn all_yes_backend_keeps_every_path() {
        let dir = tempfile::tempdir().unwrap();
        write_dataset(dir.path(), 10, 40);
        let backend = BackendChoice::Chat(Arc::new(ScriptedBackend::constant("Yes")));
        let report = run_evaluation(
            dir.path(),
            DatasetKind::MultiTerraPath,
            &astar_setup(),
            &advisor_setup(backend),
            2,
        )
        .unwrap();
        assert_eq!(report.counts.n_path, 10);
        assert_eq!(report.counts.n_successful, 10);
        assert_eq!(report.counts.n_suggested, 0);
        assert_eq!(report.ir, 100.0);
        assert_eq!(report.rp, None);
        for r in &report.per_task {
            assert_eq!(r.verdict, "optimal");
            assert!(r.original_cost.unwrap().0.is_finite());
            assert_eq!(r.suggested_cost, None);
        }
    }

    #[test]
    fn garbage_backend_counts_as_parse_failures() {
        let dir = tempfile::tempdir().unwrap();
        write_dataset(dir.path(), 10, 40);
        let backend = BackendChoice::Chat(Arc::new(ScriptedBackend::constant("hmm, hard to say")));
        let report = run_evaluation(
            dir.path(),
            DatasetKind::MultiTerraPath,
            &astar_setup(),
            &advisor_setup(backend),
            2,
        )
        .unwrap();
        assert_eq!(report.counts.n_suggested, 0);
        assert_eq!(report.counts.n_equal, 10);
        assert_eq!(report.ir, 100.0);
        assert!(report.per_task.iter().all(|r| r.verdict == "parse failure"));
    }

    #[test]
    fn oracle_on_astar_paths_finds_nothing_to_fix() {
        let dir = tempfile::tempdir().unwrap();
        write_dataset(dir.path(), 8, 40);
        let report = run_evaluation(
            dir.path(),
            DatasetKind::MultiTerraPath,
            &astar_setup(),
            &advisor_setup(BackendChoice::Oracle),
            3,
        )
        .unwrap();
        // A shortcut splice can never beat an optimal path.
        assert_eq!(report.counts.n_suggested, 0);
        assert_eq!(report.counts.n_equal, 8);
        assert!(report.per_task.iter().all(|r| r.verdict == "optimal"));
    }

    #[test]
    fn oracle_improves_sampling_planner_paths_and_recounts_match() {
        let dir = tempfile::tempdir().unwrap();
        write_dataset(dir.path(), 8, 60);
        let planner = PlannerSetup {
            kind: PlannerKind::RrtStar,
            rrt: RrtParams {
                max_iterations: 600,
                ..RrtParams::default()
            },
            rng_seed: 5,
        };
        let report = run_evaluation(
            dir.path(),
            DatasetKind::MultiTerraPath,
            &planner,
            &advisor_setup(BackendChoice::Oracle),
            4,
        )
        .unwrap();
        assert!(
            report.counts.n_suggested > 0,
            "sampling paths leave room to improve"
        );
        for r in &report.per_task {
            if r.verdict == "suggestion" {
                assert_eq!(r.judgment.as_deref(), Some("improved"));
                let s = r.suggested_cost.unwrap().0;
                assert!(s < r.original_cost.unwrap().0);
            }
        }
        // Counts audit: the taxonomy is a recount of the records.
        assert_eq!(counts_from_records(&report.per_task), report.counts);
        assert_eq!(
            report.counts.n_improved + report.counts.n_equal + report.counts.n_deteriorated,
            report.counts.n_path
        );
        // Metrics recompute bit-for-bit.
        assert_eq!(report.rp, relative_precision(&report.counts));
        assert_eq!(report.ir, improvement_ratio(&report.counts).unwrap());
    }

    #[test]
    fn report_is_parallelism_invariant() {
        let dir = tempfile::tempdir().unwrap();
        write_dataset(dir.path(), 6, 50);
        let planner = PlannerSetup {
            kind: PlannerKind::RrtStar,
            rrt: RrtParams {
                max_iterations: 400,
                ..RrtParams::default()
            },
            rng_seed: 9,
        };
        let advisor = advisor_setup(BackendChoice::Oracle);
        let a = run_evaluation(
            dir.path(),
            DatasetKind::MultiTerraPath,
            &planner,
            &advisor,
            1,
        )
        .unwrap();
        let b = run_evaluation(
            dir.path(),
            DatasetKind::MultiTerraPath,
            &planner,
            &advisor,
            8,
        )
        .unwrap();
        assert_eq!(a.counts, b.counts);
        assert_eq!(a.rp, b.rp);
        assert_eq!(a.ir, b.ir);
        for (x, y) in a.per_task.iter().zip(&b.per_task) {
            // Everything but timing is deterministic.
            assert_eq!(x.map_id, y.map_id);
            assert_eq!(x.original_cost, y.original_cost);
            assert_eq!(x.verdict, y.verdict);
            assert_eq!(x.judgment, y.judgment);
            assert_eq!(x.suggested_cost, y.suggested_cost);
        }
    }

    #[test]
    fn chained_planner_demands_a_chat_backend() {
        let dir = tempfile::tempdir().unwrap();
        write_dataset(dir.path(), 1, 40);
        let planner = PlannerSetup {
            kind: PlannerKind::LlmAstar,
            rrt: RrtParams::default(),
            rng_seed: 0,
        };
        let err = run_evaluation(
            dir.path(),
            DatasetKind::MultiTerraPath,
            &planner,
            &advisor_setup(BackendChoice::Oracle),
            1,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn chained_planner_runs_with_scripted_waypoints() {
        let dir = tempfile::tempdir().unwrap();
        write_dataset(dir.path(), 4, 40);
        // Empty waypoint list: chained planning degenerates to plain A*.
        let backend = BackendChoice::Chat(Arc::new(ScriptedBackend::constant("[]")));
        let planner = PlannerSetup {
            kind: PlannerKind::LlmAstar,
            rrt: RrtParams::default(),
            rng_seed: 0,
        };
        let report = run_evaluation(
            dir.path(),
            DatasetKind::MultiTerraPath,
            &planner,
            &advisor_setup(backend),
            2,
        )
        .unwrap();
        assert_eq!(report.counts.n_successful, 4);
        // The constant "[]" reply is a parse failure for the advisor prompt,
        // so every task keeps its path.
        assert_eq!(report.counts.n_equal, 4);
    }

    #[test]
    fn unparseable_waypoints_are_plan_failures() {
        let dir = tempfile::tempdir().unwrap();
        write_dataset(dir.path(), 3, 40);
        let backend = BackendChoice::Chat(Arc::new(ScriptedBackend::constant("no list here")));
        let planner = PlannerSetup {
            kind: PlannerKind::LlmAstar,
            rrt: RrtParams::default(),
            rng_seed: 0,
        };
        let report = run_evaluation(
            dir.path(),
            DatasetKind::MultiTerraPath,
            &planner,
            &advisor_setup(backend),
            1,
        )
        .unwrap();
        assert_eq!(report.counts.n_successful, 0);
        assert_eq!(report.counts.n_deteriorated, 3);
        assert!(report
            .per_task
            .iter()
            .all(|r| r.verdict == "plan failure: waypoint parse failure"));
        // The three-way sum still covers every path.
        assert_eq!(
            report.counts.n_improved + report.counts.n_equal + report.counts.n_deteriorated,
            report.counts.n_path
        );
    }

    #[test]
    fn csv_layout() {
        let records = vec![TaskRecord {
            map_id: 0,
            original_cost: Some(CostValue(10.0)),
            verdict: "optimal".into(),
            judgment: None,
            suggested_cost: None,
            wall_time: 0.5,
        }];
        let counts = counts_from_records(&records);
        let report = EvalReport {
            counts,
            rp: relative_precision(&counts),
            ir: improvement_ratio(&counts).unwrap(),
            fps: 2.0,
            per_task: records,
        };
        let csv = report_csv(&report, PlannerKind::Astar, &PromptConfig::default());
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "method,terrain_description,path_style,n_images,n_path,n_suggested,n_improved,rp"
        );
        assert_eq!(
            lines.next().unwrap(),
            "LLM-Advisor + A*,yes,detailed,1,1,0,0,undefined"
        );
    }

    #[test]
    fn report_json_round_trips() {
        let records = vec![TaskRecord {
            map_id: 3,
            original_cost: Some(CostValue(12.5)),
            verdict: "suggestion".into(),
            judgment: Some("improved".into()),
            suggested_cost: Some(CostValue(11.0)),
            wall_time: 0.25,
        }];
        let counts = counts_from_records(&records);
        let report = EvalReport {
            counts,
            rp: relative_precision(&counts),
            ir: improvement_ratio(&counts).unwrap(),
            fps: 4.0,
            per_task: records,
        };
        let json = serde_json::to_string_pretty(&report).unwrap();
        let back: EvalReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.rp, Some(100.0));
    }
}
