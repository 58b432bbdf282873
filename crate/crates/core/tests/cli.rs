//! End-to-end runs of the compiled binary: every subcommand, exit codes,
//! and determinism of generated artifacts.

use std::path::Path;
use std::process::{Command, Output};

use terrapath::grid::DatasetKind;
use terrapath::mapgen::{render_map, SavedTask};
use terrapath::{Coord, PlanTask, TerrainGrid};

const BIN: &str = env!("CARGO_BIN_EXE_terrapath");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn gen_maps(dir: &Path, count: u64, size: &str, seed: u64) {
    let out = run(&[
        "--seed",
        &seed.to_string(),
        "gen-maps",
        "--count",
        &count.to_string(),
        "--out",
        dir.to_str().unwrap(),
        "--size",
        size,
    ]);
    assert!(out.status.success(), "gen-maps failed: {}", stderr(&out));
}

/// A 12x12 map split by a full-height wall, with the task straddling it.
/// Returns the map and task file paths.
fn walled_map(dir: &Path) -> (std::path::PathBuf, std::path::PathBuf) {
    let model = DatasetKind::MultiTerraPath.cost_model();
    let mut cells = vec![1.0; 144];
    for y in 0..12 {
        cells[y * 12 + 6] = f64::INFINITY;
    }
    let grid = TerrainGrid::from_cells(12, 12, cells, model).unwrap();
    let png = dir.join("walled.png");
    std::fs::write(&png, render_map(&grid, None).unwrap()).unwrap();

    let task = PlanTask {
        map_id: 77,
        start: Coord::new(1, 5),
        goal: Coord::new(10, 5),
    };
    let json = dir.join("walled.json");
    std::fs::write(&json, serde_json::to_string(&SavedTask::new(task)).unwrap()).unwrap();
    (png, json)
}

#[test]
fn generated_maps_are_deterministic() {
    let root = tempfile::tempdir().unwrap();
    let (a, b) = (root.path().join("a"), root.path().join("b"));
    gen_maps(&a, 3, "128x128", 5);
    gen_maps(&b, 3, "128x128", 5);

    for id in 0..3 {
        for ext in ["png", "json"] {
            let name = format!("map_{id:04}.{ext}");
            let left = std::fs::read(a.join(&name)).unwrap();
            let right = std::fs::read(b.join(&name)).unwrap();
            assert_eq!(left, right, "{name} differs between identical runs");
        }
    }

    // A different base seed changes the data.
    let c = root.path().join("c");
    gen_maps(&c, 1, "128x128", 6);
    assert_ne!(
        std::fs::read(a.join("map_0000.png")).unwrap(),
        std::fs::read(c.join("map_0000.png")).unwrap()
    );
}

#[test]
fn plan_describe_advise_render_pipeline() {
    let root = tempfile::tempdir().unwrap();
    let maps = root.path().join("maps");
    gen_maps(&maps, 1, "128x128", 9);
    let map = maps.join("map_0000.png");
    let task = maps.join("map_0000.json");
    let path_file = root.path().join("path.json");

    let out = run(&[
        "plan",
        "--algo",
        "astar",
        "--map",
        map.to_str().unwrap(),
        "--task",
        task.to_str().unwrap(),
        "--out",
        path_file.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "plan failed: {}", stderr(&out));
    assert!(stdout(&out).starts_with("planned "));
    let body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path_file).unwrap()).unwrap();
    assert_eq!(body["status"], "success");
    assert!(body["total_cost"].as_f64().unwrap() > 0.0);

    let out = run(&[
        "describe",
        "--map",
        map.to_str().unwrap(),
        "--style",
        "terrain",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("approximately located between grid coordinates"));

    let out = run(&[
        "describe",
        "--map",
        map.to_str().unwrap(),
        "--style",
        "brief",
        "--path",
        path_file.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("The total cost of the path is"));

    let out = run(&[
        "advise",
        "--map",
        map.to_str().unwrap(),
        "--task",
        task.to_str().unwrap(),
        "--path",
        path_file.to_str().unwrap(),
        "--backend",
        "oracle",
    ]);
    assert!(out.status.success(), "advise failed: {}", stderr(&out));
    let verdict: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(verdict["verdict"], "optimal");

    let png_out = root.path().join("overlay.png");
    let out = run(&[
        "render",
        "--map",
        map.to_str().unwrap(),
        "--path",
        path_file.to_str().unwrap(),
        "--out",
        png_out.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "render failed: {}", stderr(&out));
    let bytes = std::fs::read(&png_out).unwrap();
    assert_eq!(&bytes[..4], b"\x89PNG");
}

#[test]
fn waypoint_planning_via_files() {
    let root = tempfile::tempdir().unwrap();
    let maps = root.path().join("maps");
    gen_maps(&maps, 1, "128x128", 13);
    let map = maps.join("map_0000.png");
    let task = maps.join("map_0000.json");

    // Passing the task's own endpoints as waypoints is always valid.
    let saved: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&task).unwrap()).unwrap();
    let waypoints = root.path().join("waypoints.json");
    std::fs::write(&waypoints, format!("[{}]", saved["start"])).unwrap();

    let path_file = root.path().join("path.json");
    let out = run(&[
        "plan",
        "--algo",
        "llm-astar",
        "--map",
        map.to_str().unwrap(),
        "--task",
        task.to_str().unwrap(),
        "--waypoints",
        waypoints.to_str().unwrap(),
        "--out",
        path_file.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "llm-astar plan failed: {}",
        stderr(&out)
    );
    let body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path_file).unwrap()).unwrap();
    assert_eq!(body["status"], "success");
}

#[test]
fn failed_plans_exit_one_with_the_reason_on_disk() {
    let root = tempfile::tempdir().unwrap();
    let (png, json) = walled_map(root.path());
    let path_file = root.path().join("path.json");

    let out = run(&[
        "plan",
        "--algo",
        "astar",
        "--map",
        png.to_str().unwrap(),
        "--task",
        json.to_str().unwrap(),
        "--out",
        path_file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1), "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("unreachable"));

    // The failure is still recorded for downstream tooling.
    let body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path_file).unwrap()).unwrap();
    assert_eq!(body["status"], "unreachable");
    assert!(body["total_cost"].is_null());
}

#[test]
fn usage_errors_exit_two() {
    let root = tempfile::tempdir().unwrap();

    // Unknown flag: rejected by argument parsing.
    let out = run(&["plan", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));

    // Missing input file.
    let out = run(&[
        "describe",
        "--map",
        root.path().join("absent.png").to_str().unwrap(),
        "--style",
        "terrain",
    ]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));

    // Path-style description without a path file.
    let maps = root.path().join("maps");
    gen_maps(&maps, 1, "128x128", 3);
    let map = maps.join("map_0000.png");
    let out = run(&[
        "describe",
        "--map",
        map.to_str().unwrap(),
        "--style",
        "brief",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--path is required"));

    // Scripted backend without fixtures.
    let task = maps.join("map_0000.json");
    let path_file = root.path().join("path.json");
    let out = run(&[
        "plan",
        "--algo",
        "astar",
        "--map",
        map.to_str().unwrap(),
        "--task",
        task.to_str().unwrap(),
        "--out",
        path_file.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "plan failed: {}", stderr(&out));
    let out = run(&[
        "advise",
        "--map",
        map.to_str().unwrap(),
        "--task",
        task.to_str().unwrap(),
        "--path",
        path_file.to_str().unwrap(),
        "--backend",
        "scripted",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--fixtures"));
}

#[test]
fn evaluate_writes_report_and_csv() {
    let root = tempfile::tempdir().unwrap();
    let maps = root.path().join("maps");
    gen_maps(&maps, 2, "128x128", 21);
    let report = root.path().join("report.json");
    let csv = root.path().join("table.csv");

    let out = run(&[
        "evaluate",
        "--dataset",
        maps.to_str().unwrap(),
        "--planner",
        "astar",
        "--backend",
        "oracle",
        "--jobs",
        "2",
        "--report",
        report.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "evaluate failed: {}", stderr(&out));
    let summary = stdout(&out);
    assert!(summary.contains("n_path=2"), "summary was: {summary}");

    let body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(body["per_task"].as_array().unwrap().len(), 2);
    assert_eq!(body["counts"]["n_path"], 2);

    let table = std::fs::read_to_string(&csv).unwrap();
    let mut lines = table.lines();
    assert_eq!(
        lines.next(),
        Some("method,terrain_description,path_style,n_images,n_path,n_suggested,n_improved,rp")
    );
    assert!(lines
        .next()
        .unwrap()
        .starts_with("LLM-Advisor + A*,yes,detailed,2,2,"));
}
