//! Batch runner for the segment-spectra toolkit.
//!
//! Exit status: 0 on success, 1 when a verification fails (orthogonality
//! violations or a failed suite), 2 on usage or configuration errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use segment_spectra::diagnostics::{
    fractional_part_analysis, parseval_defect, periodicity_certificate, TestFunction,
};
use segment_spectra::projection::{
    construct_line_spectrum, find_constant_projection_lines, project, ProjectionLine,
};
use segment_spectra::spectra::{candidate_lambda1, CandidateFile, SpectrumCandidate};
use segment_spectra::tiling::{identity_report_to_csv, tiles_line, tiling_identity_check};
use segment_spectra::verification;
use segment_spectra::zeroset::{line_roots_batch, roots_to_csv, LineWindow};
use segment_spectra::{
    greedy_pack, greedy_pack_integer, packing_stats, verify_orthogonal, IntervalUnion, Scalar,
    SymmetricAdditiveMeasure,
};

#[derive(Parser)]
#[command(
    name = "segspectra",
    version,
    about = "Measures on unions of line segments: transforms, zero sets, packings, tilings, projections, diagnostics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Isolate transform zeros on the admissible lines and export them
    Zeroset(ZerosetArgs),
    /// Build a greedy maximal orthogonal packing and report its statistics
    Pack(PackArgs),
    /// Check a candidate file: pairwise orthogonality, optional tiling identity
    Verify(VerifyArgs),
    /// Project a configuration onto lines and search for line spectra
    Project(ProjectArgs),
    /// Decide whether a rational interval union tiles the line
    Tile(TileArgs),
    /// Defect trajectories, periodicity certificate, fractional parts
    Diagnose(DiagnoseArgs),
    /// Run the complete verification suite and print a summary table
    PaperSuite(PaperSuiteArgs),
}

fn parse_scalar(s: &str) -> Result<Scalar> {
    Scalar::from_str(s).map_err(|e| anyhow!("[{}] {}", e.code(), e))
}

fn lib<T>(r: segment_spectra::Result<T>) -> Result<T> {
    r.map_err(|e| anyhow!("[{}] {}", e.code(), e))
}

#[derive(Args)]
struct ZerosetArgs {
    /// Segment parameter: p/q, decimal, or sqrt(n)
    #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
    t: Scalar,
    #[arg(long, default_value_t = -5, allow_hyphen_values = true)]
    k_min: i64,
    #[arg(long, default_value_t = 5, allow_hyphen_values = true)]
    k_max: i64,
    #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
    x_min: f64,
    #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
    x_max: f64,
    /// Initial grid step for root isolation
    #[arg(long, default_value_t = 0.05)]
    step: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, ValueEnum)]
enum PackMode {
    /// Candidates from the admissible lines
    Lines,
    /// Candidates from the integer lattice
    Integer,
}

#[derive(Args)]
struct PackArgs {
    #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
    t: Scalar,
    #[arg(long, default_value_t = 10.0)]
    window: f64,
    #[arg(long, default_value_t = 0.05)]
    step: f64,
    #[arg(long, value_enum, default_value_t = PackMode::Lines)]
    mode: PackMode,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Candidate file produced by `pack` or `project`
    #[arg(long)]
    candidate: PathBuf,
    #[arg(long, default_value_t = 50.0)]
    window: f64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Also run the tiling identity of the first-coordinate projection at
    /// this level (e.g. 2 for the two-segment measure)
    #[arg(long)]
    identity_level: Option<f64>,
    #[arg(long, default_value_t = 400.0)]
    identity_window: f64,
    /// Sample count for the identity grid over [0, 1]
    #[arg(long, default_value_t = 101)]
    grid: usize,
    /// Write the identity samples as CSV (x, sum, residual)
    #[arg(long)]
    identity_csv: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProjectArgs {
    /// Two-segment parameter; mutually exclusive with --segments
    #[arg(long, value_parser = parse_scalar, conflicts_with = "segments", allow_hyphen_values = true)]
    t: Option<Scalar>,
    /// Segment configuration file: {"schema":"v1","segments":[{"a":[..],"b":[..],"density":..}]}
    #[arg(long)]
    segments: Option<PathBuf>,
    /// Project onto this direction only (format: "x,y") instead of searching
    #[arg(long, allow_hyphen_values = true)]
    line: Option<String>,
    #[arg(long, default_value_t = 360)]
    angular_grid: usize,
    #[arg(long, default_value_t = 8)]
    search_denominator: i64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TileArgs {
    /// Interval union file: {"schema":"v1","intervals":[{"left":"p/q","right":"p/q","weight":1.0}]}
    #[arg(long)]
    intervals: PathBuf,
    #[arg(long, default_value_t = 64)]
    period_bound: i64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DiagnoseArgs {
    #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
    t: Scalar,
    /// Defect enumeration windows, comma separated
    #[arg(long, default_value = "10,20,30", value_delimiter = ',')]
    windows: Vec<f64>,
    /// Packing window; defaults to the largest defect window
    #[arg(long)]
    pack_window: Option<f64>,
    #[arg(long, default_value_t = 0.05)]
    step: f64,
    /// Bump center; defaults to t + 1/2
    #[arg(long, allow_hyphen_values = true)]
    bump_center: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    bump_radius: f64,
    /// Clustering precision for fractional parts
    #[arg(long, default_value_t = 1e-9)]
    precision: f64,
    /// Write the bump defect trajectory as CSV (window, defect)
    #[arg(long)]
    csv_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PaperSuiteArgs {
    #[arg(long)]
    out: Option<PathBuf>,
}

fn now_ms() -> u128 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

fn emit<T: Serialize>(
    command: &str,
    config: serde_json::Value,
    report: &T,
    out: Option<&Path>,
) -> Result<()> {
    let full = json!({
        "schema": "v1",
        "command": command,
        "config": config,
        "report": report,
        "metadata": { "generated_unix_ms": now_ms() },
    });
    let text = serde_json::to_string_pretty(&full)? + "\n";
    write_text(out, &text)
}

fn write_text(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn run_zeroset(args: ZerosetArgs) -> Result<i32> {
    if args.k_min > args.k_max {
        bail!("--k-min must not exceed --k-max");
    }
    let m = SymmetricAdditiveMeasure::new(args.t.clone());
    let windows: Vec<LineWindow> = (args.k_min..=args.k_max)
        .map(|k| lib(LineWindow::new(k, args.x_min, args.x_max)))
        .collect::<Result<_>>()?;
    let roots = lib(line_roots_batch(&m, &windows, args.step))?;
    let config = json!({
        "t": args.t, "k_min": args.k_min, "k_max": args.k_max,
        "x_min": args.x_min, "x_max": args.x_max, "step": args.step,
    });
    match args.format {
        Format::Csv => write_text(args.out.as_deref(), &roots_to_csv(&roots))?,
        Format::Json => emit("zeroset", config, &roots, args.out.as_deref())?,
    }
    Ok(0)
}

fn run_pack(args: PackArgs) -> Result<i32> {
    let m = SymmetricAdditiveMeasure::new(args.t.clone());
    let pack = match args.mode {
        PackMode::Lines => lib(greedy_pack(&m, args.window, args.step))?,
        PackMode::Integer => lib(greedy_pack_integer(&m, args.window))?,
    };
    let stats = lib(packing_stats(&m, &pack))?;
    let candidate = SpectrumCandidate::Window(pack);
    let report = json!({
        "candidate": CandidateFile::new(args.t.clone(), &candidate),
        "stats": stats,
    });
    let config = json!({
        "t": args.t, "window": args.window, "step": args.step,
        "mode": match args.mode { PackMode::Lines => "lines", PackMode::Integer => "integer" },
    });
    emit("pack", config, &report, args.out.as_deref())?;
    Ok(0)
}

/// Accept a bare candidate file or the envelopes written by `pack` and
/// `project` (candidate under `report.candidate`, or the first found
/// spectrum under `report.lines[..].spectrum`).
fn load_candidate_file(path: &Path) -> Result<CandidateFile> {
    let value: serde_json::Value = read_json(path)?;
    let body = if value.get("variant").is_some() {
        value
    } else if let Some(c) = value.pointer("/report/candidate") {
        c.clone()
    } else if let Some(lines) = value.pointer("/report/lines").and_then(|v| v.as_array()) {
        lines
            .iter()
            .filter_map(|l| l.get("spectrum"))
            .find(|s| !s.is_null())
            .cloned()
            .ok_or_else(|| anyhow!("no spectrum found in {}", path.display()))?
    } else {
        bail!("{} holds no candidate in a known shape", path.display());
    };
    serde_json::from_value(body).with_context(|| format!("parsing candidate in {}", path.display()))
}

fn run_verify(args: VerifyArgs) -> Result<i32> {
    let file = load_candidate_file(&args.candidate)?;
    if file.schema != "v1" {
        bail!("unsupported schema {:?}", file.schema);
    }
    let m = SymmetricAdditiveMeasure::new(file.t.clone());
    let candidate = lib(file.candidate())?;
    let ortho = lib(verify_orthogonal(&m, &candidate, args.window, args.tol))?;

    let identity = match args.identity_level {
        Some(level) => {
            let lam = lib(candidate_lambda1(&candidate, args.window))?;
            let n = args.grid.max(2);
            let grid: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
            let report = lib(tiling_identity_check(
                &lam,
                level,
                &grid,
                args.identity_window,
            ))?;
            if let Some(csv) = &args.identity_csv {
                write_text(Some(csv), &identity_report_to_csv(&report))?;
            }
            Some(report)
        }
        None => None,
    };

    let ok = ortho.ok && identity.as_ref().is_none_or(|i| i.consistent);
    let report = json!({
        "ok": ok,
        "orthogonality": ortho,
        "identity": identity,
    });
    let config = json!({
        "candidate": args.candidate.display().to_string(),
        "window": args.window, "tol": args.tol,
        "identity_level": args.identity_level, "identity_window": args.identity_window,
        "grid": args.grid,
    });
    emit("verify", config, &report, args.out.as_deref())?;
    Ok(if ok { 0 } else { 1 })
}

fn run_project(args: ProjectArgs) -> Result<i32> {
    let (s, t_for_file) = match (&args.t, &args.segments) {
        (Some(t), None) => (
            SymmetricAdditiveMeasure::new(t.clone()).to_segments(),
            Some(t.clone()),
        ),
        (None, Some(path)) => {
            let file: SegmentFileEnvelope = read_json(path)?;
            if file.schema != "v1" {
                bail!("unsupported schema {:?}", file.schema);
            }
            (file.measure, None)
        }
        _ => bail!("provide exactly one of --t or --segments"),
    };

    let lines: Vec<(ProjectionLine, bool)> = match &args.line {
        Some(raw) => {
            let (x, y) = raw
                .split_once(',')
                .ok_or_else(|| anyhow!("--line expects \"x,y\""))?;
            let x: f64 = x.trim().parse().context("parsing --line x")?;
            let y: f64 = y.trim().parse().context("parsing --line y")?;
            vec![(lib(ProjectionLine::from_vector(x, y))?, false)]
        }
        None => lib(find_constant_projection_lines(&s, args.angular_grid))?
            .into_iter()
            .map(|c| (c.line, c.approximate))
            .collect(),
    };

    let mut line_reports = Vec::new();
    for (line, approximate) in &lines {
        let proj = lib(project(&s, line))?;
        let searchable = proj.injective && proj.density.is_some();
        let search = if searchable {
            match construct_line_spectrum(&s, line, args.search_denominator) {
                Ok(r) => Some(r),
                Err(segment_spectra::Error::NotConstant)
                | Err(segment_spectra::Error::NotInjective) => None,
                Err(e) => return Err(anyhow!("[{}] {}", e.code(), e)),
            }
        } else {
            None
        };
        let spectrum_json = search.as_ref().and_then(|r| {
            r.spectrum.as_ref().map(|found| {
                let cand = SpectrumCandidate::PeriodicLine(found.clone());
                match &t_for_file {
                    Some(t) => json!(CandidateFile::new(t.clone(), &cand)),
                    None => json!({
                        "variant": "periodic-line",
                        "direction": found.direction(),
                        "period": found.period(),
                        "offsets": found.offsets(),
                    }),
                }
            })
        });
        line_reports.push(json!({
            "direction": line.unit(),
            "angle": line.angle(),
            "approximate": approximate,
            "projection": proj,
            "search_status": search.as_ref().map(|r| &r.status),
            "tiling": search.as_ref().map(|r| &r.tiling),
            "spectrum": spectrum_json,
        }));
    }

    let report = json!({ "lines": line_reports });
    let config = json!({
        "t": args.t,
        "segments": args.segments.as_ref().map(|p| p.display().to_string()),
        "line": args.line,
        "angular_grid": args.angular_grid,
        "search_denominator": args.search_denominator,
    });
    emit("project", config, &report, args.out.as_deref())?;
    Ok(0)
}

#[derive(serde::Deserialize)]
struct SegmentFileEnvelope {
    schema: String,
    #[serde(flatten)]
    measure: segment_spectra::SegmentMeasure,
}

#[derive(serde::Deserialize)]
struct IntervalFileEnvelope {
    schema: String,
    #[serde(flatten)]
    union: IntervalUnion,
}

fn run_tile(args: TileArgs) -> Result<i32> {
    let file: IntervalFileEnvelope = read_json(&args.intervals)?;
    if file.schema != "v1" {
        bail!("unsupported schema {:?}", file.schema);
    }
    let decision = lib(tiles_line(&file.union, args.period_bound))?;
    let config = json!({
        "intervals": args.intervals.display().to_string(),
        "period_bound": args.period_bound,
    });
    emit("tile", config, &decision, args.out.as_deref())?;
    Ok(0)
}

fn run_diagnose(args: DiagnoseArgs) -> Result<i32> {
    if args.windows.is_empty() {
        bail!("--windows must not be empty");
    }
    let m = SymmetricAdditiveMeasure::new(args.t.clone());
    let t = args.t.to_f64();
    let pack_window = args
        .pack_window
        .unwrap_or_else(|| args.windows.iter().cloned().fold(0.0, f64::max));
    let pack = lib(greedy_pack(&m, pack_window, args.step))?;
    let candidate = SpectrumCandidate::Window(pack);
    let ortho = lib(verify_orthogonal(&m, &candidate, pack_window, 1e-10))?;
    if !ortho.ok {
        bail!("internal packing failed its own orthogonality check");
    }

    let bump = TestFunction::SmoothBump {
        center: args.bump_center.unwrap_or(t + 0.5),
        radius: args.bump_radius,
    };
    let mut windows = args.windows.clone();
    windows.sort_by(f64::total_cmp);
    let mut defects = Vec::new();
    let mut csv = String::from("window,defect\n");
    for &w in &windows {
        let bump_defect = lib(parseval_defect(&m, &bump, &candidate, w))?;
        let indicator_defect = lib(parseval_defect(
            &m,
            &TestFunction::IndicatorHorizontal,
            &candidate,
            w,
        ))?;
        csv.push_str(&format!("{},{}\n", w, bump_defect.defect));
        defects.push(json!({
            "window": w,
            "bump": bump_defect,
            "indicator": indicator_defect,
        }));
    }
    if let Some(path) = &args.csv_out {
        write_text(Some(path), &csv)?;
    }

    let certificate = if t > -0.5 && t < 0.0 {
        Some(lib(periodicity_certificate(&m, &candidate, &bump))?)
    } else {
        None
    };
    let fractional = lib(fractional_part_analysis(&m, &candidate, args.precision))?;

    let report = json!({
        "pack_points": candidate.enumerate(0.0).len(),
        "orthogonality": ortho,
        "defect_trajectory": defects,
        "certificate": certificate,
        "certificate_applicable": t > -0.5 && t < 0.0,
        "fractional_parts": fractional,
    });
    let config = json!({
        "t": args.t, "windows": windows, "pack_window": pack_window,
        "step": args.step,
        "bump_center": args.bump_center.unwrap_or(t + 0.5),
        "bump_radius": args.bump_radius,
        "precision": args.precision,
    });
    emit("diagnose", config, &report, args.out.as_deref())?;
    Ok(0)
}

fn run_paper_suite(args: PaperSuiteArgs) -> Result<i32> {
    let report = verification::run_all();
    println!("{:<6} {:<3} check", "status", "id");
    for c in &report.checks {
        println!(
            "{:<6} {:<3} {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.id,
            c.name
        );
        for d in &c.details {
            println!("           {d}");
        }
    }
    println!(
        "{} of {} checks passed",
        report.checks.iter().filter(|c| c.passed).count(),
        report.checks.len()
    );
    if args.out.is_some() {
        emit("paper-suite", json!({}), &report, args.out.as_deref())?;
    }
    Ok(if report.all_passed { 0 } else { 1 })
}

fn run() -> Result<i32> {
    match Cli::parse().command {
        Command::Zeroset(a) => run_zeroset(a),
        Command::Pack(a) => run_pack(a),
        Command::Verify(a) => run_verify(a),
        Command::Project(a) => run_project(a),
        Command::Tile(a) => run_tile(a),
        Command::Diagnose(a) => run_diagnose(a),
        Command::PaperSuite(a) => run_paper_suite(a),
    }
}

fn main() {
    let code = match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    };
    std::process::exit(code);
}
