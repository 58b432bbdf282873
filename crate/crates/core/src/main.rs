//! Command-line front end: map generation, planning, describing, advising,
//! batch evaluation, and rendering.
//!
//! Exit codes: 0 success, 1 domain errors (unreachable goals, parse
//! failures, bad pixels), 2 usage and configuration errors.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use terrapath::advisor::{
    build_advisor_prompt, judge_suggestion, load_rag_store, parse_verdict, retrieve_example,
    shortcut_oracle, AdvisorVerdict, JudgmentOutcome, PathStyle, PromptConfig,
};
use terrapath::config::{derive_seed, AppConfig};
use terrapath::eval::{
    report_csv, run_evaluation, AdvisorSetup, BackendChoice, EvalReport, PlannerKind, PlannerSetup,
};
use terrapath::grid::CostValue;
use terrapath::llm::{ChatRequest, RemoteBackend, ScriptedBackend};
use terrapath::mapgen::{
    generate_map, load_map_path, read_task, render_map, write_map_files, MapSpec,
};
use terrapath::planners::{astar, llm_astar, rrt_star, PlanStatus, RrtParams};
use terrapath::{Coord, Error, PlanTask, PlannedPath, Result, TerrainGrid};

#[derive(Parser)]
#[command(
    name = "terrapath",
    version,
    about = "Cost-aware path planning on terrain grids"
)]
struct Cli {
    /// Configuration file (JSON); defaults apply when absent.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Base seed; every random component derives its own stream from it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate random maps with task sidecars.
    GenMaps(GenMapsArgs),
    /// Plan a single task and write the path as JSON.
    Plan(PlanArgs),
    /// Print a terrain or path description.
    Describe(DescribeArgs),
    /// Ask the advisor about one planned path.
    Advise(AdviseArgs),
    /// Batch-run planner + advisor over a dataset and report metrics.
    Evaluate(EvaluateArgs),
    /// Render a map (optionally with a path overlay) to PNG.
    Render(RenderArgs),
}

#[derive(Args)]
struct GenMapsArgs {
    #[arg(long)]
    count: u64,
    #[arg(long)]
    out: PathBuf,
    /// Map dimensions as WxH cells.
    #[arg(long, default_value = "500x500", value_parser = parse_size)]
    size: (u32, u32),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Astar,
    RrtStar,
    LlmAstar,
}

#[derive(Args)]
struct PlanArgs {
    #[arg(long, value_enum)]
    algo: AlgoArg,
    #[arg(long)]
    map: PathBuf,
    #[arg(long)]
    task: PathBuf,
    /// Overrides the derived RRT* seed.
    #[arg(long)]
    rrt_seed: Option<u64>,
    /// Waypoints JSON ([[x,y], ...]) for the chained planner.
    #[arg(long)]
    waypoints: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StyleArg {
    Terrain,
    Detailed,
    Brief,
}

#[derive(Args)]
struct DescribeArgs {
    #[arg(long)]
    map: PathBuf,
    /// Path JSON, required for the detailed and brief styles.
    #[arg(long)]
    path: Option<PathBuf>,
    #[arg(long, value_enum)]
    style: StyleArg,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Remote,
    Scripted,
    Oracle,
}

#[derive(Args)]
struct AdviseArgs {
    #[arg(long)]
    map: PathBuf,
    #[arg(long)]
    task: PathBuf,
    #[arg(long)]
    path: PathBuf,
    #[arg(long, value_enum)]
    backend: BackendArg,
    /// JSON-lines store of historical examples; enables retrieval.
    #[arg(long)]
    rag: Option<PathBuf>,
    /// Use the descriptive (step-by-step) output format.
    #[arg(long)]
    descpath: bool,
    /// Describe the path run-length style instead of point by point.
    #[arg(long)]
    brief: bool,
    /// Canned responses for the scripted backend.
    #[arg(long)]
    fixtures: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    #[arg(long)]
    dataset: PathBuf,
    #[arg(long, value_enum)]
    planner: AlgoArg,
    #[arg(long, value_enum)]
    backend: BackendArg,
    #[arg(long, default_value_t = 4)]
    jobs: usize,
    #[arg(long)]
    report: PathBuf,
    #[arg(long)]
    csv: PathBuf,
    #[arg(long)]
    rag: Option<PathBuf>,
    #[arg(long)]
    descpath: bool,
    #[arg(long)]
    brief: bool,
    #[arg(long)]
    fixtures: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    map: PathBuf,
    #[arg(long)]
    path: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

fn parse_size(s: &str) -> std::result::Result<(u32, u32), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or("size must look like 200x200")?;
    let w = w.trim().parse().map_err(|_| "bad width")?;
    let h = h.trim().parse().map_err(|_| "bad height")?;
    if w == 0 || h == 0 {
        return Err("size must be positive".into());
    }
    Ok((w, h))
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(if e.is_domain() { 1 } else { 2 });
    }
}

fn run(cli: Cli) -> Result<()> {
    let config = match &cli.config {
        Some(path) => AppConfig::load(path)?,
        None => AppConfig::default(),
    };
    match cli.command {
        Command::GenMaps(args) => gen_maps(&config, cli.seed, args),
        Command::Plan(args) => plan(&config, cli.seed, args),
        Command::Describe(args) => describe(&config, args),
        Command::Advise(args) => advise(&config, cli.seed, args),
        Command::Evaluate(args) => evaluate(&config, cli.seed, args),
        Command::Render(args) => render(&config, args),
    }
}

fn gen_maps(config: &AppConfig, seed: u64, args: GenMapsArgs) -> Result<()> {
    std::fs::create_dir_all(&args.out)?;
    let (width, height) = args.size;
    for map_id in 0..args.count {
        let mut spec = MapSpec::new(
            width,
            height,
            derive_seed(seed, &format!("mapgen:{map_id}")),
        );
        spec.map_id = map_id;
        let (grid, task) = generate_map(&spec)?;
        // Generated maps always use the configured palette.
        let _ = config;
        write_map_files(&args.out, &grid, &task)?;
    }
    println!("wrote {} map(s) to {}", args.count, args.out.display());
    Ok(())
}

fn load_grid(config: &AppConfig, map: &Path) -> Result<TerrainGrid> {
    load_map_path(map, &config.cost_model()?)
}

fn load_task(path: &Path) -> Result<(PlanTask, Option<String>)> {
    let saved = read_task(path)?;
    Ok((saved.task(), saved.scene))
}

/// Shape of the path JSON written by `plan` and read back by `describe`,
/// `advise`, and `render`.
#[derive(Deserialize)]
struct PathFile {
    points: Vec<Coord>,
    #[serde(default)]
    status: Option<String>,
}

fn load_path(grid: &TerrainGrid, path: &Path) -> Result<PlannedPath> {
    let file: PathFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    if file.status.as_deref().is_some_and(|s| s != "success") || file.points.is_empty() {
        return Err(Error::Task(format!(
            "{} holds no successful path",
            path.display()
        )));
    }
    PlannedPath::from_points(grid, file.points)
}

fn plan(config: &AppConfig, seed: u64, args: PlanArgs) -> Result<()> {
    let grid = load_grid(config, &args.map)?;
    let (task, _) = load_task(&args.task)?;
    let status = match args.algo {
        AlgoArg::Astar => astar(&grid, &task)?.status,
        AlgoArg::RrtStar => {
            let rng_seed = args
                .rrt_seed
                .unwrap_or_else(|| derive_seed(seed, &format!("rrt:{}", task.map_id)));
            let params = RrtParams {
                rng_seed,
                ..config.rrt
            };
            rrt_star(&grid, &task, &params)?.status
        }
        AlgoArg::LlmAstar => {
            let waypoints: Vec<Coord> = match &args.waypoints {
                Some(p) => serde_json::from_str(&std::fs::read_to_string(p)?)?,
                None => Vec::new(),
            };
            llm_astar(&grid, &task, &waypoints)?.status
        }
    };
    let body = match &status {
        PlanStatus::Success(p) => serde_json::json!({
            "points": p.points,
            "total_cost": p.total_cost,
            "status": "success",
        }),
        PlanStatus::Failure(reason) => serde_json::json!({
            "points": [],
            "total_cost": null,
            "status": reason.to_string(),
        }),
    };
    std::fs::write(&args.out, format!("{:#}\n", body))?;
    match status {
        PlanStatus::Success(p) => {
            println!(
                "planned {} points, total cost {}",
                p.points.len(),
                p.total_cost
            );
            Ok(())
        }
        PlanStatus::Failure(reason) => Err(Error::Task(format!("planning failed: {reason}"))),
    }
}

fn describe(config: &AppConfig, args: DescribeArgs) -> Result<()> {
    let grid = load_grid(config, &args.map)?;
    let text = match args.style {
        StyleArg::Terrain => terrapath::describe::describe_terrain(&grid),
        StyleArg::Detailed | StyleArg::Brief => {
            let Some(path_file) = &args.path else {
                return Err(Error::Config(
                    "--path is required for path descriptions".into(),
                ));
            };
            let path = load_path(&grid, path_file)?;
            match args.style {
                StyleArg::Detailed => terrapath::describe::describe_path_detailed(&grid, &path),
                _ => terrapath::describe::describe_path_brief(&grid, &path),
            }
        }
    };
    match &args.out {
        Some(out) => std::fs::write(out, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn chat_backend(
    config: &AppConfig,
    backend: BackendArg,
    fixtures: Option<&Path>,
) -> Result<BackendChoice> {
    match backend {
        BackendArg::Oracle => Ok(BackendChoice::Oracle),
        BackendArg::Scripted => {
            let Some(path) = fixtures else {
                return Err(Error::Config(
                    "the scripted backend needs --fixtures FILE".into(),
                ));
            };
            Ok(BackendChoice::Chat(Arc::new(
                ScriptedBackend::from_fixture_path(path)?,
            )))
        }
        BackendArg::Remote => {
            let remote = RemoteBackend::new(&config.llm.base_url)?
                .with_timeout(Duration::from_secs(config.llm.timeout_s))?
                .with_concurrency(config.llm.concurrency);
            Ok(BackendChoice::Chat(Arc::new(remote)))
        }
    }
}

fn prompt_config(descpath: bool, brief: bool, rag: bool) -> PromptConfig {
    PromptConfig {
        use_rag: rag,
        use_descpath: descpath,
        path_style: if brief {
            PathStyle::Brief
        } else {
            PathStyle::Detailed
        },
    }
}

fn advise(config: &AppConfig, seed: u64, args: AdviseArgs) -> Result<()> {
    let grid = load_grid(config, &args.map)?;
    let (task, scene) = load_task(&args.task)?;
    let path = load_path(&grid, &args.path)?;
    let prompt_cfg = prompt_config(args.descpath, args.brief, args.rag.is_some());

    let verdict = match chat_backend(config, args.backend, args.fixtures.as_deref())? {
        BackendChoice::Oracle => shortcut_oracle(&grid, &task, &path),
        BackendChoice::Chat(chat) => {
            let example = match &args.rag {
                Some(store_path) => {
                    let store = load_rag_store(store_path)?;
                    let seed = derive_seed(seed, &format!("rag:{}", task.map_id));
                    Some(
                        retrieve_example(
                            &store,
                            config.dataset_kind,
                            scene.as_deref(),
                            task.map_id,
                            seed,
                        )?
                        .clone(),
                    )
                }
                None => None,
            };
            let prompt = build_advisor_prompt(&grid, &task, &path, &prompt_cfg, example.as_ref());
            let reply = chat.complete(&ChatRequest::new(&config.llm.model, prompt))?;
            parse_verdict(&reply.text, &prompt_cfg)
        }
    };

    let body = match &verdict {
        AdvisorVerdict::Optimal => serde_json::json!({
            "verdict": "optimal",
            "original_cost": path.total_cost,
        }),
        AdvisorVerdict::ParseFailure(raw) => serde_json::json!({
            "verdict": "parse failure",
            "original_cost": path.total_cost,
            "raw": raw,
        }),
        AdvisorVerdict::Suggestion(points) => {
            let j = judge_suggestion(&grid, &task, &path, points);
            let judgment = match &j.outcome {
                JudgmentOutcome::Improved => "improved".to_string(),
                JudgmentOutcome::Equal => "equal".to_string(),
                JudgmentOutcome::Deteriorated => "deteriorated".to_string(),
                JudgmentOutcome::Invalid(reason) => format!("invalid: {reason}"),
            };
            serde_json::json!({
                "verdict": "suggestion",
                "judgment": judgment,
                "original_cost": j.original_cost,
                "suggested_cost": CostValue(j.suggested_cost),
                "suggestion": points,
            })
        }
    };
    println!("{:#}", body);
    Ok(())
}

fn evaluate(config: &AppConfig, seed: u64, args: EvaluateArgs) -> Result<()> {
    let planner = PlannerSetup {
        kind: match args.planner {
            AlgoArg::Astar => PlannerKind::Astar,
            AlgoArg::RrtStar => PlannerKind::RrtStar,
            AlgoArg::LlmAstar => PlannerKind::LlmAstar,
        },
        rrt: config.rrt,
        rng_seed: derive_seed(seed, "planner"),
    };
    let advisor = AdvisorSetup {
        prompt: prompt_config(args.descpath, args.brief, args.rag.is_some()),
        backend: chat_backend(config, args.backend, args.fixtures.as_deref())?,
        model: config.llm.model.clone(),
        rag_store: match &args.rag {
            Some(p) => load_rag_store(p)?,
            None => Vec::new(),
        },
        rng_seed: derive_seed(seed, "advisor"),
    };
    let report = run_evaluation(
        &args.dataset,
        config.dataset_kind,
        &planner,
        &advisor,
        args.jobs,
    )?;
    write_report(&report, &args, planner.kind, &advisor.prompt)?;
    let rp = report
        .rp
        .map_or("undefined".to_string(), |v| format!("{v:.2}"));
    println!(
        "n_path={} n_suggested={} n_improved={} rp={} ir={:.2} fps={:.2}",
        report.counts.n_path,
        report.counts.n_suggested,
        report.counts.n_improved,
        rp,
        report.ir,
        report.fps
    );
    Ok(())
}

fn write_report(
    report: &EvalReport,
    args: &EvaluateArgs,
    kind: PlannerKind,
    prompt: &PromptConfig,
) -> Result<()> {
    std::fs::write(
        &args.report,
        format!("{}\n", serde_json::to_string_pretty(report)?),
    )?;
    std::fs::write(&args.csv, report_csv(report, kind, prompt))?;
    Ok(())
}

fn render(config: &AppConfig, args: RenderArgs) -> Result<()> {
    let grid = load_grid(config, &args.map)?;
    let overlay = match &args.path {
        Some(p) => Some(load_path(&grid, p)?.points),
        None => None,
    };
    let png = render_map(&grid, overlay.as_deref())?;
    std::fs::write(&args.out, png)?;
    println!("rendered {}", args.out.display());
    Ok(())
}
