//! Operator entry point: single-point certification, uniqueness balls,
//! covering runs, certificate re-verification, and CSV export.
//!
//! Exit codes: 0 success; 1 malformed input; 2 proof failure; 3 covering
//! incomplete; 4 journal re-verification failure.

use cc4b::covering::{self, Certificate, MassGrid, RunParams};
use cc4b::eqs::{Configuration, MassPoint};
use cc4b::exclusion::{self, ExclusionStatus};
use cc4b::ift::{self, BoundMode};
use cc4b::krawczyk::{self, SearchConfig};
use cc4b::CcError;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cc4b", version, about = "Certified convex central configurations of the planar four-body problem")]
struct Cli {
    /// Optional TOML config file; command-line flags win over file values.
    #[arg(long, global = true, env = "CC4B_CONFIG")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Rigorous,
    Reference,
}

impl From<Mode> for BoundMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Rigorous => BoundMode::Rigorous,
            Mode::Reference => BoundMode::Reference,
        }
    }
}

/// Knobs shared by every proving command; mirror RunParams one-to-one.
#[derive(Args, Clone)]
struct CommonOpts {
    /// Tiles per side of the initial search subdivision.
    #[arg(long, env = "CC4B_GRID_N1")]
    grid_n1: Option<u32>,
    /// Enclosure diameter tolerance.
    #[arg(long, env = "CC4B_TOL")]
    tol: Option<f64>,
    /// Bisection budget per box.
    #[arg(long, env = "CC4B_MAX_DEPTH")]
    max_depth: Option<u32>,
    /// Position-ball radius R1 for the second-derivative sup.
    #[arg(long, env = "CC4B_R1")]
    r1: Option<f64>,
    /// Joint-ball radius R2.
    #[arg(long, env = "CC4B_R2")]
    r2: Option<f64>,
    /// Exclusion bisection depth budget per complement piece.
    #[arg(long, env = "CC4B_EXCLUSION_DEPTH")]
    exclusion_depth: Option<u32>,
    /// Bound mode for the proof path.
    #[arg(long, value_enum, env = "CC4B_MODE")]
    mode: Option<Mode>,
}

/// File-backed defaults (same field names as the flags).
#[derive(serde::Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    grid_n1: Option<u32>,
    tol: Option<f64>,
    max_depth: Option<u32>,
    r1: Option<f64>,
    r2: Option<f64>,
    exclusion_depth: Option<u32>,
    mode: Option<String>,
    delta0: Option<f64>,
    m1: Option<u32>,
    workers: Option<usize>,
}

#[derive(Clone)]
struct Resolved {
    search: SearchConfig,
    r1: f64,
    r2: f64,
    exclusion_depth: u32,
    mode: BoundMode,
}

fn resolve(common: &CommonOpts, file: &FileConfig) -> Result<Resolved, CcError> {
    let mode = match (&common.mode, file.mode.as_deref()) {
        (Some(m), _) => (*m).into(),
        (None, Some("rigorous")) => BoundMode::Rigorous,
        (None, Some("reference")) => BoundMode::Reference,
        (None, Some(other)) => {
            return Err(CcError::Parse(format!("bad mode in config file: {other}")))
        }
        (None, None) => BoundMode::Rigorous,
    };
    let r = Resolved {
        search: SearchConfig {
            grid_n1: common.grid_n1.or(file.grid_n1).unwrap_or(20),
            tol: common.tol.or(file.tol).unwrap_or(1e-15),
            max_depth: common.max_depth.or(file.max_depth).unwrap_or(60),
        },
        r1: common.r1.or(file.r1).unwrap_or(0.1),
        r2: common.r2.or(file.r2).unwrap_or(0.2),
        exclusion_depth: common.exclusion_depth.or(file.exclusion_depth).unwrap_or(60),
        mode,
    };
    for (name, v) in [("r1", r.r1), ("r2", r.r2), ("tol", r.search.tol)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(CcError::Parse(format!("{name} must be positive, got {v}")));
        }
    }
    Ok(r)
}

#[derive(Subcommand)]
enum Command {
    /// Certify the unique convex central configuration for fixed masses.
    Certify {
        m1: String,
        m3: String,
        m4: String,
        #[command(flatten)]
        common: CommonOpts,
        /// Emit the certificate as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Certify, build the uniqueness ball (r, eps), and run exclusion.
    Ball {
        m1: String,
        m3: String,
        m4: String,
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        json: bool,
    },
    /// Tile a mass cube with uniqueness balls and verify the covering.
    Cover {
        /// Lower bound of the mass cube [delta0, 1]^3.
        #[arg(long, env = "CC4B_DELTA0")]
        delta0: Option<f64>,
        /// Segments per side; omit to auto-suggest from a pilot run.
        #[arg(long, env = "CC4B_M1")]
        m1: Option<u32>,
        /// Worker threads (0 = all cores).
        #[arg(long, env = "CC4B_WORKERS")]
        workers: Option<usize>,
        /// Journal path (appended to on resume).
        #[arg(long, default_value = "cover.journal", env = "CC4B_JOURNAL")]
        journal: PathBuf,
        /// Optional CSV export path.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Re-verify every record of a journal from scratch.
    Check {
        journal: PathBuf,
        /// Skip re-running the exclusion sweeps (fast structural check).
        #[arg(long)]
        skip_exclusion: bool,
    },
    /// Export a journal to CSV.
    ExportCsv {
        journal: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_mass(m1: &str, m3: &str, m4: &str) -> Result<MassPoint, CcError> {
    let p = |s: &str, name: &str| -> Result<f64, CcError> {
        s.trim()
            .parse::<f64>()
            .map_err(|e| CcError::InvalidMass(format!("{name} = {s:?}: {e}")))
    };
    MassPoint::new(p(m1, "m1")?, p(m3, "m3")?, p(m4, "m4")?)
}

fn load_file_config(path: &Option<PathBuf>) -> Result<FileConfig, CcError> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            toml::from_str(&text).map_err(|e| CcError::Parse(format!("config file: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let file = match load_file_config(&cli.config) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command, file) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                CcError::InvalidMass(_) | CcError::Parse(_) | CcError::Io(_) => 1,
                CcError::CorruptJournal(_) => 4,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cmd: Command, file: FileConfig) -> Result<ExitCode, CcError> {
    match cmd {
        Command::Certify { m1, m3, m4, common, json } => {
            let opts = resolve(&common, &file)?;
            let mass = parse_mass(&m1, &m3, &m4)?;
            let sol = krawczyk::certify_unique(&mass, &opts.search)?;
            if json {
                let cert = serde_json::json!({
                    "mass": { "m1": m1.trim(), "m3": m3.trim(), "m4": m4.trim() },
                    "enclosure": sol.enclosure.components.iter()
                        .map(|c| c.to_bracket_string()).collect::<Vec<_>>(),
                    "survivor_count": sol.survivor_count,
                    "bisection_count": sol.bisection_count,
                    "midpoint_residual_bound": sol.midpoint_residual_bound,
                    "deriv_hash": cc4b::eqs::DERIV_CODE_HASH,
                    "tool_version": cc4b::TOOL_VERSION,
                });
                println!("{}", serde_json::to_string_pretty(&cert).expect("json"));
            } else {
                println!("mass (as parsed): m1={} m3={} m4={} (m2=1)", m1.trim(), m3.trim(), m4.trim());
                println!("unique convex central configuration certified:");
                for (name, c) in ["x1", "y1", "x3", "y3"].iter().zip(&sol.enclosure.components) {
                    println!("  {name} in {c}");
                }
                println!("survivors after residual filter: {}", sol.survivor_count);
                println!("bisections: {}", sol.bisection_count);
                println!("midpoint residual bound: {:.3e}", sol.midpoint_residual_bound);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Ball { m1, m3, m4, common, json } => {
            let opts = resolve(&common, &file)?;
            let mass = parse_mass(&m1, &m3, &m4)?;
            let sol = krawczyk::certify_unique(&mass, &opts.search)?;
            let rig = ift::compute_constants(&sol.enclosure, &mass, opts.r1, opts.r2, BoundMode::Rigorous)?;
            let refc = ift::compute_constants(&sol.enclosure, &mass, opts.r1, opts.r2, BoundMode::Reference)?;
            let proof = match opts.mode {
                BoundMode::Rigorous => rig,
                BoundMode::Reference => refc,
            };
            let x0 = Configuration::from_array(sol.enclosure.midpoint());
            let report = exclusion::exclude_with_fallback(
                &x0, proof.r, &mass, proof.epsilon, opts.exclusion_depth,
            )?;
            let excluded = report.status == ExclusionStatus::Excluded;
            let mut ball = ift::UniquenessBall::new(mass, x0, proof);
            ball.excluded = excluded;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "mass": { "m1": m1.trim(), "m3": m3.trim(), "m4": m4.trim() },
                        "ball": ball,
                        "constants_rigorous": rig,
                        "constants_reference": refc,
                        "proof_mode": proof.mode,
                        "r": proof.r,
                        "epsilon": proof.epsilon,
                        "exclusion": report,
                    }))
                    .expect("json")
                );
            } else {
                println!("mass (as parsed): m1={} m3={} m4={} (m2=1)", m1.trim(), m3.trim(), m4.trim());
                for c in [&refc, &rig] {
                    println!(
                        "{:?} mode: M_x={:.6} L_m={:.6} K_xx={:.6} K_xm={:.7} K_mm={:.6} -> r={:.6} eps={:.6}",
                        c.mode, c.m_x, c.l_m, c.k_xx, c.k_xm, c.k_mm, c.r, c.epsilon
                    );
                }
                println!(
                    "exclusion ({:?} ball): {} (leaves={}, depth={}, retry divisor={})",
                    proof.mode,
                    if excluded { "Excluded" } else { "FAILED" },
                    report.boxes_checked,
                    report.max_depth_used,
                    report.retry_divisor
                );
            }
            Ok(if excluded { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Cover { delta0, m1, workers, journal, csv, common } => {
            let opts = resolve(&common, &file)?;
            let delta0 = delta0.or(file.delta0).unwrap_or(0.9);
            let workers = workers.or(file.workers).unwrap_or(0);
            let m1 = match m1.or(file.m1) {
                Some(v) => v,
                None => {
                    let suggested = pilot_suggest_m1(delta0, &opts)?;
                    eprintln!("auto-suggested M1 = {suggested} (from pilot min eps)");
                    suggested
                }
            };
            let params = RunParams {
                grid: MassGrid::new(delta0, m1)?,
                search: opts.search,
                r1: opts.r1,
                r2: opts.r2,
                exclusion_depth: opts.exclusion_depth,
                mode: opts.mode,
            };
            let total = params.grid.point_count();
            eprintln!(
                "covering [{delta0}, 1]^3 with M1={m1}: {total} grid points, journal {}",
                journal.display()
            );
            let certs = covering::run_grid(&params, &journal, workers, false, &|done, all| {
                if done % 50 == 0 || done == all {
                    eprintln!("  {done}/{all} points");
                }
            })?;
            let complete = certs.iter().filter(|c| c.is_complete()).count();
            eprintln!("complete certificates: {complete}/{total}");
            let report = covering::verify_covering(&certs, &params.grid);
            println!(
                "covered={} min_epsilon={:.7} required_m1={}",
                report.covered, report.min_epsilon, report.required_m1
            );
            if let Some(csv_path) = csv {
                let f = std::fs::File::create(&csv_path)?;
                covering::export_csv(&certs, std::io::BufWriter::new(f))?;
                eprintln!("csv written to {}", csv_path.display());
            }
            if report.covered {
                Ok(ExitCode::SUCCESS)
            } else {
                for w in report.uncovered_witnesses.iter().take(8) {
                    eprintln!("uncovered near m = ({:.6}, {:.6}, {:.6})", w[0], w[1], w[2]);
                }
                eprintln!("try M1 >= {}", report.required_m1);
                Ok(ExitCode::from(3))
            }
        }
        Command::Check { journal, skip_exclusion } => {
            let failures = check_journal(&journal, skip_exclusion)?;
            if failures.is_empty() {
                println!("journal verifies: all records pass");
                Ok(ExitCode::SUCCESS)
            } else {
                for (idx, why) in &failures {
                    println!("record {idx}: {why}");
                }
                println!("{} record(s) failed re-verification", failures.len());
                Ok(ExitCode::from(4))
            }
        }
        Command::ExportCsv { journal, out } => {
            let (_, certs) = read_journal_any(&journal)?;
            match out {
                Some(p) => {
                    let f = std::fs::File::create(&p)?;
                    covering::export_csv(&certs, std::io::BufWriter::new(f))?;
                    eprintln!("csv written to {}", p.display());
                }
                None => covering::export_csv(&certs, std::io::stdout().lock())?,
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Pilot: certify the八 corners and center of the cube, suggest M1 from the
/// smallest eps seen (with a 10% safety margin on the count).
fn pilot_suggest_m1(delta0: f64, opts: &Resolved) -> Result<u32, CcError> {
    let lo = delta0;
    let hi = 1.0;
    let mid = 0.5 * (lo + hi);
    let mut min_eps = f64::INFINITY;
    let mut corners: Vec<[f64; 3]> = Vec::new();
    for a in [lo, hi] {
        for b in [lo, hi] {
            for c in [lo, hi] {
                corners.push([a, b, c]);
            }
        }
    }
    corners.push([mid, mid, mid]);
    for [a, b, c] in corners {
        let m = MassPoint::new(a, b, c)?;
        let sol = krawczyk::certify_unique(&m, &opts.search)?;
        let k = ift::compute_constants(&sol.enclosure, &m, opts.r1, opts.r2, opts.mode)?;
        min_eps = min_eps.min(k.epsilon);
        eprintln!("  pilot ({a:.3},{b:.3},{c:.3}): eps = {:.7}", k.epsilon);
    }
    let base = covering::required_m1(delta0, min_eps);
    Ok((f64::from(base) * 1.1).ceil() as u32)
}

fn read_journal_any(path: &std::path::Path) -> Result<(RunParams, Vec<Certificate>), CcError> {
    use std::io::BufRead;
    let file = std::fs::File::open(path)?;
    let mut lines = std::io::BufReader::new(file).lines();
    let header_line = lines
        .next()
        .ok_or_else(|| CcError::CorruptJournal("empty journal".into()))??;
    let header: covering::Record = serde_json::from_str(&header_line)
        .map_err(|e| CcError::CorruptJournal(format!("bad header: {e}")))?;
    let params = match header {
        covering::Record::Header(h) => {
            let expect = h.params.config_hash();
            if h.config_hash != expect {
                return Err(CcError::CorruptJournal(format!(
                    "config hash mismatch: recorded {} vs recomputed {expect}",
                    h.config_hash
                )));
            }
            h.params
        }
        covering::Record::Point(_) => {
            return Err(CcError::CorruptJournal("first record is not a header".into()))
        }
    };
    let mut certs = Vec::new();
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<covering::Record>(&line)
            .map_err(|e| CcError::CorruptJournal(e.to_string()))?
        {
            covering::Record::Point(c) => certs.push(c),
            covering::Record::Header(_) => {
                return Err(CcError::CorruptJournal("duplicate header".into()))
            }
        }
    }
    Ok((params, certs))
}

/// Independent re-verification of journal records: Krawczyk image on the
/// recorded enclosure, constant recomputation and the defining inequality,
/// and (unless skipped) a fresh exclusion sweep.
fn check_journal(
    path: &std::path::Path,
    skip_exclusion: bool,
) -> Result<Vec<(u64, String)>, CcError> {
    let (params, certs) = read_journal_any(path)?;
    let mut failures = Vec::new();
    for cert in &certs {
        if let Err(why) = check_one(cert, &params, skip_exclusion) {
            failures.push((cert.index, why));
        }
    }
    Ok(failures)
}

fn check_one(cert: &Certificate, params: &RunParams, skip_exclusion: bool) -> Result<(), String> {
    if cert.mass.as_array() != params.grid.point(cert.index).as_array() {
        return Err("mass does not match grid index".into());
    }
    if !cert.is_complete() {
        // failed points carry no proof claim; nothing to refute
        return Ok(());
    }
    let enc = cert.enclosure_box().map_err(|e| e.to_string())?;
    let k = cert.constants.ok_or("missing constants")?;

    // 1. Krawczyk re-check: K(mid, box, F) interior to a slightly inflated
    //    enclosure re-certifies local uniqueness of the recorded box
    let probe = enc.inflate(1e-12);
    let image = cc4b::krawczyk::krawczyk_image(probe.midpoint(), &probe, &cert.mass)
        .map_err(|e| format!("krawczyk image: {e}"))?;
    if !probe.contains_in_interior(&image) {
        return Err("krawczyk re-check failed: image not interior".into());
    }

    // 2. residuals at the midpoint stay small and all six admit zero
    let mid = Configuration::from_array(enc.midpoint());
    let six = cc4b::eqs::residuals_six_tight(&mid, &cert.mass).map_err(|e| e.to_string())?;
    let bound = six.iter().map(|i| i.magnitude()).fold(0.0, f64::max);
    if let Some(recorded) = cert.residual_bound {
        if bound > recorded * 1.000001 + 1e-300 {
            return Err(format!("midpoint residual bound {bound:.3e} exceeds recorded {recorded:.3e}"));
        }
    }

    // 3. recompute the constants in the recorded mode; recorded values must
    //    not be below the recomputed bounds (and the inequality must hold)
    let fresh = ift::compute_constants(&enc, &cert.mass, k.r1, k.r2, k.mode)
        .map_err(|e| format!("recompute constants: {e}"))?;
    let tol = 1.0 + 1e-9;
    if k.m_x * tol < fresh.m_x
        || k.l_m * tol < fresh.l_m
        || k.k_xx * tol < fresh.k_xx
        || k.k_xm * tol < fresh.k_xm
    {
        return Err("recorded norm constants are below recomputed bounds".into());
    }
    if k.r > fresh.r * tol || k.epsilon > fresh.epsilon * tol {
        return Err("recorded radii exceed recomputed radii".into());
    }
    if !ift::ift_inequality_holds(&k, k.r, k.epsilon) {
        return Err("defining inequality violated".into());
    }

    // 4. exclusion re-run
    if !skip_exclusion {
        let report = exclusion::exclude_with_fallback(
            &mid,
            k.r,
            &cert.mass,
            k.epsilon,
            params.exclusion_depth,
        )
        .map_err(|e| format!("exclusion re-run: {e}"))?;
        if report.status != ExclusionStatus::Excluded {
            return Err("exclusion re-run failed".into());
        }
        let recorded = cert.exclusion.as_ref().ok_or("missing exclusion report")?;
        if report.retry_divisor > recorded.retry_divisor {
            return Err("exclusion now needs a larger retry divisor than recorded".into());
        }
    }
    // 5. covering halfwidth consistency
    if let Some(h) = cert.covered_halfwidth {
        let d = cert
            .exclusion
            .as_ref()
            .map_or(3.0_f64.sqrt(), |r| r.retry_divisor.max(3.0_f64.sqrt()));
        if h > k.epsilon / d * (1.0 + 1e-12) {
            return Err("covered halfwidth exceeds eps over divisor".into());
        }
    }
    Ok(())
}
