//! Command-line driver: single-equation analysis, parameter sweeps
//! producing cycle-count atlases, curve export for plotting, and the
//! trigonometric analysis at infinity.
//!
//! Exit codes: 0 success, 1 malformed configuration, 2 precondition
//! failure (a structurally valid configuration that violates an invariant).

use std::fs::File;
use std::io::Write as IoWrite;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use abelcycles::criteria::alpha_beta_diagnostics;
use abelcycles::{
    bounded_supremum, check_c1, criteria_report, derived_functions, find_closed_solutions,
    hopf_coefficients, infinity_analysis, integrate_with_variations, lambda_curve, no_c3_witness,
    q_and_region, uniqueness_precheck, CoefficientFamily, CriteriaReport, CycleSearch,
    FamilyTemplate, FlowStatus, HopfCoefficients, IntegratorOptions, MonotoneParam,
    UniquenessPrecheck, ZeroStructure,
};
use abelcycles::cycles::Classification;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "abelcycles", version, about = "Limit cycles of Abel equations x' = A(t) x^3 + B(t) x^2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one coefficient family and write a JSON report.
    Analyze(CommonArgs),
    /// Sweep a monotone parameter and write a cycle-count atlas CSV.
    Sweep(CommonArgs),
    /// Export curve CSV bundles: alpha/beta, phi, displacement, Lambda.
    Curves(CommonArgs),
    /// Analyze the trigonometric family at infinity; write a JSON report.
    TrigInfinity(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Configuration file (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output directory; created if missing.
    #[arg(long)]
    out: PathBuf,
    /// Worker threads for sweeps; defaults to one per core.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AnalysisConfig {
    schema_version: u32,
    family: FamilySpec,
    #[serde(default)]
    integrator: IntegratorConfig,
    #[serde(default)]
    grid: GridConfig,
    #[serde(default)]
    sweep: Option<SweepConfig>,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum FamilySpec {
    QuadPoly { t_a: f64, t_b: f64 },
    LinTrig { a0: f64, b0: f64, b1: f64, b2: f64 },
}

#[derive(Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntegratorConfig {
    rel_tol: Option<f64>,
    abs_tol: Option<f64>,
    x_blowup: Option<f64>,
    max_steps: Option<usize>,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridConfig {
    #[serde(default = "default_n_grid")]
    n_grid: usize,
    /// Upper end of the cycle search; defaults to just below the blow-up
    /// boundary.
    x_max: Option<f64>,
    #[serde(default = "default_curve_samples")]
    curve_samples: usize,
}

fn default_n_grid() -> usize {
    256
}
fn default_curve_samples() -> usize {
    512
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            n_grid: default_n_grid(),
            x_max: None,
            curve_samples: default_curve_samples(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum SweepParam {
    TA,
    TB,
    A0,
    B0,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepConfig {
    param: SweepParam,
    lo: f64,
    hi: f64,
    steps: usize,
}

impl AnalysisConfig {
    fn validate(&self) -> Result<(), String> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        let pos = |name: &str, v: Option<f64>| -> Result<(), String> {
            match v {
                Some(x) if !(x > 0.0) => Err(format!("{name} must be positive, got {x}")),
                _ => Ok(()),
            }
        };
        pos("integrator.rel_tol", self.integrator.rel_tol)?;
        pos("integrator.abs_tol", self.integrator.abs_tol)?;
        pos("integrator.x_blowup", self.integrator.x_blowup)?;
        pos("grid.x_max", self.grid.x_max)?;
        if self.grid.n_grid < 16 {
            return Err(format!("grid.n_grid must be at least 16, got {}", self.grid.n_grid));
        }
        if self.grid.curve_samples < 2 {
            return Err("grid.curve_samples must be at least 2".into());
        }
        if let FamilySpec::LinTrig { b0, b2, .. } = self.family {
            if !(b0 + b2 > 0.0) {
                return Err(format!("lin_trig requires b0 + b2 > 0, got {}", b0 + b2));
            }
        }
        if let Some(sw) = &self.sweep {
            if sw.steps < 1 {
                return Err("sweep.steps must be at least 1".into());
            }
            if sw.steps > 1 && !(sw.lo < sw.hi) {
                return Err(format!("sweep range ({}, {}) is empty", sw.lo, sw.hi));
            }
            let applies = matches!(
                (&self.family, sw.param),
                (FamilySpec::QuadPoly { .. }, SweepParam::TA | SweepParam::TB)
                    | (FamilySpec::LinTrig { .. }, SweepParam::A0 | SweepParam::B0)
            );
            if !applies {
                return Err("sweep.param does not apply to this family kind".into());
            }
        }
        Ok(())
    }

    fn family(&self) -> CoefficientFamily {
        match self.family {
            FamilySpec::QuadPoly { t_a, t_b } => CoefficientFamily::quad_poly_f64(t_a, t_b),
            FamilySpec::LinTrig { a0, b0, b1, b2 } => CoefficientFamily::lin_trig(a0, b0, b1, b2),
        }
    }

    fn integrator_options(&self) -> IntegratorOptions {
        let mut opts = IntegratorOptions::default();
        if let Some(v) = self.integrator.rel_tol {
            opts.rel_tol = v;
        }
        if let Some(v) = self.integrator.abs_tol {
            opts.abs_tol = v;
        }
        if let Some(v) = self.integrator.x_blowup {
            opts.x_blowup = v;
        }
        if let Some(v) = self.integrator.max_steps {
            opts.max_steps = v;
        }
        opts
    }
}

fn search_ceiling(fam: &CoefficientFamily, cfg: &AnalysisConfig, opts: &IntegratorOptions) -> f64 {
    cfg.grid.x_max.unwrap_or_else(|| {
        bounded_supremum(fam, opts).finite().map_or(1e6, |x| x * 0.999)
    })
}

#[derive(Serialize)]
struct AnalyzeReport {
    schema_version: u32,
    config: AnalysisConfig,
    zero_structure: ZeroStructure,
    uniqueness_precheck: UniquenessPrecheck,
    /// True when a precheck already bounds the cycle count by one and the
    /// certificate machinery is skipped.
    short_circuit: bool,
    criteria: Option<CriteriaReport>,
    criteria_error: Option<String>,
    cycles: CycleSearch,
    hopf: HopfCoefficients,
}

fn build_analyze_report(cfg: &AnalysisConfig) -> Result<AnalyzeReport, String> {
    let fam = cfg.family();
    let opts = cfg.integrator_options();
    let zero_structure = check_c1(&fam);
    let precheck = uniqueness_precheck(&fam);
    let short_circuit = precheck != UniquenessPrecheck::Inconclusive;
    let (criteria, criteria_error) = if short_circuit {
        (None, None)
    } else {
        match criteria_report(&fam) {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        }
    };
    let x_max = search_ceiling(&fam, cfg, &opts);
    let cycles = find_closed_solutions(&fam, x_max, cfg.grid.n_grid, &opts)
        .map_err(|e| e.to_string())?;
    let hopf = hopf_coefficients(&fam);
    Ok(AnalyzeReport {
        schema_version: SCHEMA_VERSION,
        config: cfg.clone(),
        zero_structure,
        uniqueness_precheck: precheck,
        short_circuit,
        criteria,
        criteria_error,
        cycles,
        hopf,
    })
}

fn run_analyze(cfg: &AnalysisConfig, out: &Path) -> Result<(), String> {
    let report = build_analyze_report(cfg)?;
    let path = out.join("analyze.json");
    write_json(&path, &report)?;
    println!("wrote {}", path.display());
    Ok(())
}

/// One atlas row; `cycles` is a compact `x@multiplier/class` listing.
struct AtlasRow {
    index: usize,
    family: CoefficientFamily,
    n_cycles: usize,
    cycles: String,
    c2: String,
    c3: String,
    hopf_origin: bool,
    hopf_infinity: bool,
    status: String,
    warnings: String,
}

const ATLAS_HEADER: [&str; 14] = [
    "index", "kind", "t_a", "t_b", "a0", "b0", "b1", "b2", "n_cycles", "cycles", "c2", "c3",
    "flags", "status",
];

impl AtlasRow {
    fn record(&self) -> Vec<String> {
        let (kind, t_a, t_b, a0, b0, b1, b2) = match &self.family {
            CoefficientFamily::QuadPoly { t_a, t_b } => (
                "quad_poly",
                format!("{}", abelcycles::rat_to_f64(t_a)),
                format!("{}", abelcycles::rat_to_f64(t_b)),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
            ),
            CoefficientFamily::LinTrig { a0, b0, b1, b2 } => (
                "lin_trig",
                String::new(),
                String::new(),
                format!("{a0}"),
                format!("{b0}"),
                format!("{b1}"),
                format!("{b2}"),
            ),
        };
        let mut flags = Vec::new();
        if self.hopf_origin {
            flags.push("hopf_origin");
        }
        if self.hopf_infinity {
            flags.push("hopf_infinity");
        }
        let status = if self.warnings.is_empty() {
            self.status.clone()
        } else {
            format!("{} [{}]", self.status, self.warnings)
        };
        vec![
            self.index.to_string(),
            kind.to_string(),
            t_a,
            t_b,
            a0,
            b0,
            b1,
            b2,
            self.n_cycles.to_string(),
            self.cycles.clone(),
            self.c2.clone(),
            self.c3.clone(),
            flags.join("|"),
            status,
        ]
    }
}

fn mean_b(fam: &CoefficientFamily) -> f64 {
    let t_end = fam.period();
    let n = 1 << 12;
    let h = t_end / n as f64;
    let mut acc = 0.5 * (fam.b(0.0) + fam.b(t_end));
    for i in 1..n {
        acc += fam.b(i as f64 * h);
    }
    acc * h
}

fn atlas_row(index: usize, fam: CoefficientFamily, cfg: &AnalysisConfig) -> AtlasRow {
    let opts = cfg.integrator_options();
    let x_max = search_ceiling(&fam, cfg, &opts);
    let (n_cycles, cycles, warnings, mut status) =
        match find_closed_solutions(&fam, x_max, cfg.grid.n_grid, &opts) {
            Ok(s) => {
                let compact = s
                    .cycles
                    .iter()
                    .map(|c| {
                        let class = match c.classification {
                            Classification::StableHyperbolic => "stable",
                            Classification::UnstableHyperbolic => "unstable",
                            Classification::SemistableCandidate => "semistable",
                        };
                        format!("{:.12e}@{:.12e}/{class}", c.x_star, c.multiplier)
                    })
                    .collect::<Vec<_>>()
                    .join(";");
                (s.cycles.len(), compact, s.warnings.join("|"), "ok".to_string())
            }
            Err(e) => (0, String::new(), String::new(), format!("error: {e}")),
        };
    // The quadratic family admits at most two positive closed solutions;
    // a violating row is reported prominently, never clamped.
    if matches!(fam, CoefficientFamily::QuadPoly { .. }) && n_cycles > 2 && status == "ok" {
        status = format!("N_EXCEEDS_BOUND({n_cycles})");
        eprintln!(
            "warning: atlas row {index} reports {n_cycles} cycles, above the proven bound of 2"
        );
    }
    let (c2, c3) = match criteria_report(&fam) {
        Ok(r) => (format!("{:?}", r.c2.verdict), format!("{:?}", r.c3.verdict)),
        Err(e) => {
            let s = format!("n/a ({e})");
            (s.clone(), s)
        }
    };
    let hopf = hopf_coefficients(&fam);
    let hopf_infinity = mean_b(&fam).abs() < 1e-8;
    AtlasRow {
        index,
        family: fam,
        n_cycles,
        cycles,
        c2,
        c3,
        hopf_origin: hopf.c2.abs() < 1e-8 && hopf.c3.abs() < 1e-8,
        hopf_infinity,
        status,
        warnings,
    }
}

fn sweep_families(cfg: &AnalysisConfig) -> Result<Vec<CoefficientFamily>, String> {
    let sw = cfg.sweep.as_ref().ok_or("sweep requires a `sweep` section")?;
    let value = |i: usize| {
        if sw.steps == 1 {
            sw.lo
        } else {
            sw.lo + (sw.hi - sw.lo) * i as f64 / (sw.steps - 1) as f64
        }
    };
    Ok((0..sw.steps)
        .map(|i| {
            let v = value(i);
            match (&cfg.family, sw.param) {
                (FamilySpec::QuadPoly { t_b, .. }, SweepParam::TA) => {
                    CoefficientFamily::quad_poly_f64(v, *t_b)
                }
                (FamilySpec::QuadPoly { t_a, .. }, SweepParam::TB) => {
                    CoefficientFamily::quad_poly_f64(*t_a, v)
                }
                (FamilySpec::LinTrig { b0, b1, b2, .. }, SweepParam::A0) => {
                    CoefficientFamily::lin_trig(v, *b0, *b1, *b2)
                }
                (FamilySpec::LinTrig { a0, b1, b2, .. }, SweepParam::B0) => {
                    CoefficientFamily::lin_trig(*a0, v, *b1, *b2)
                }
                _ => unreachable!("validated"),
            }
        })
        .collect())
}

fn run_sweep(cfg: &AnalysisConfig, out: &Path) -> Result<(), String> {
    use rayon::prelude::*;

    let families = sweep_families(cfg)?;
    let path = out.join("atlas.csv");
    let mut file = File::create(&path).map_err(|e| e.to_string())?;
    writeln!(file, "# abelcycles atlas schema_version {SCHEMA_VERSION}")
        .map_err(|e| e.to_string())?;
    let mut wtr = csv::Writer::from_writer(file);
    wtr.write_record(ATLAS_HEADER).map_err(|e| e.to_string())?;

    // Chunked evaluation: parallel within a chunk (rayon preserves index
    // order on collect), sequential flush between chunks so partial
    // results survive interruption.
    let chunk = rayon::current_num_threads().max(4);
    for (c, batch) in families.chunks(chunk).enumerate() {
        let rows: Vec<AtlasRow> = batch
            .par_iter()
            .enumerate()
            .map(|(i, fam)| atlas_row(c * chunk + i, fam.clone(), cfg))
            .collect();
        for row in rows {
            wtr.write_record(row.record()).map_err(|e| e.to_string())?;
        }
        wtr.flush().map_err(|e| e.to_string())?;
    }
    println!("wrote {}", path.display());
    Ok(())
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), String> {
    let mut wtr = csv::Writer::from_path(path).map_err(|e| e.to_string())?;
    wtr.write_record(header).map_err(|e| e.to_string())?;
    for row in rows {
        wtr.write_record(row).map_err(|e| e.to_string())?;
    }
    wtr.flush().map_err(|e| e.to_string())?;
    println!("wrote {}", path.display());
    Ok(())
}

fn fmt_finite(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.12e}")
    } else {
        String::new()
    }
}

fn run_curves(cfg: &AnalysisConfig, out: &Path) -> Result<(), String> {
    let fam = cfg.family();
    let opts = cfg.integrator_options();
    let t_end = fam.period();
    let n = cfg.grid.curve_samples;
    let tgrid: Vec<f64> = (0..=n).map(|i| t_end * i as f64 / n as f64).collect();

    // phi(t) = -B / (2 A): poles where A vanishes.
    let der = derived_functions(&fam);
    let phi_rows: Vec<Vec<String>> = tgrid
        .iter()
        .map(|&t| {
            let phi = der.phi(t).map_or(String::new(), fmt_finite);
            vec![format!("{t:.12e}"), phi]
        })
        .collect();
    write_csv(&out.join("phi.csv"), &["t", "phi"], &phi_rows)?;

    // Displacement map on a log grid below the blow-up boundary.
    let x_max = search_ceiling(&fam, cfg, &opts);
    let x_min = x_max * 1e-8;
    let ratio = (x_max / x_min).ln();
    let mut disp_rows = Vec::with_capacity(n);
    for i in 0..n {
        let x = x_min * (ratio * i as f64 / (n - 1) as f64).exp();
        let r = integrate_with_variations(&fam, x, &opts).map_err(|e| e.to_string())?;
        let d = match r.status {
            FlowStatus::Completed => fmt_finite(r.u_t - x),
            FlowStatus::BlowUp { .. } => String::new(),
        };
        disp_rows.push(vec![format!("{x:.12e}"), d]);
    }
    write_csv(&out.join("displacement.csv"), &["x", "displacement"], &disp_rows)?;

    // Alpha and beta along the closed solution nearest multiplier 1.
    let search = find_closed_solutions(&fam, x_max, cfg.grid.n_grid, &opts)
        .map_err(|e| e.to_string())?;
    match search
        .cycles
        .iter()
        .min_by(|a, b| (a.multiplier - 1.0).abs().total_cmp(&(b.multiplier - 1.0).abs()))
    {
        Some(cycle) => {
            let curves = alpha_beta_diagnostics(&fam, cycle, &opts).map_err(|e| e.to_string())?;
            let traj = curves.trajectory();
            let rows: Vec<Vec<String>> = tgrid
                .iter()
                .map(|&t| {
                    let s = traj.sample(t);
                    let (u, ux) = (s[0], s[1]);
                    let w = 2.0 * fam.a(t) * u + fam.b(t);
                    let alpha = 2.0 + 2.0 * fam.a(t) * u / w;
                    vec![
                        format!("{t:.12e}"),
                        format!("{u:.12e}"),
                        fmt_finite(alpha),
                        format!("{:.12e}", ux / u),
                    ]
                })
                .collect();
            write_csv(&out.join("alpha_beta.csv"), &["t", "u", "alpha", "beta"], &rows)?;
        }
        None => println!("no closed solution found; skipping alpha_beta.csv"),
    }

    // Lambda-curve: requires a declared monotone parameter.
    match &cfg.sweep {
        Some(sw) => {
            let (param, to_lambda): (MonotoneParam, fn(f64) -> f64) = match sw.param {
                SweepParam::TA => (MonotoneParam::NegTA, |v| -v),
                SweepParam::TB => (MonotoneParam::NegTB, |v| -v),
                SweepParam::A0 => (MonotoneParam::A0, |v| v),
                SweepParam::B0 => (MonotoneParam::B0, |v| v),
            };
            let template = FamilyTemplate { base: fam.clone(), param };
            let (la, lb) = (to_lambda(sw.lo), to_lambda(sw.hi));
            let lambda_range = (la.min(lb), la.max(lb));
            let x_grid: Vec<f64> = (0..n)
                .map(|i| x_min * (ratio * i as f64 / (n - 1) as f64).exp())
                .collect();
            let samples =
                lambda_curve(&template, lambda_range, &x_grid, &opts).map_err(|e| e.to_string())?;
            let rows: Vec<Vec<String>> = samples
                .iter()
                .map(|s| {
                    let v = s.lambda.map(|l| {
                        // Report the natural parameter, not the internal
                        // monotone one.
                        match sw.param {
                            SweepParam::TA | SweepParam::TB => -l,
                            _ => l,
                        }
                    });
                    vec![
                        format!("{:.12e}", s.x),
                        v.map(|l| format!("{l:.12e}")).unwrap_or_default(),
                    ]
                })
                .collect();
            write_csv(&out.join("lambda.csv"), &["x", "param"], &rows)?;
        }
        None => println!("no sweep section; skipping lambda.csv"),
    }
    Ok(())
}

#[derive(Serialize)]
struct TrigInfinityReport {
    schema_version: u32,
    config: AnalysisConfig,
    q_region: Option<serde_json::Value>,
    q_region_error: Option<String>,
    witness: Option<serde_json::Value>,
    witness_error: Option<String>,
    infinity: Option<serde_json::Value>,
    infinity_error: Option<String>,
}

fn run_trig_infinity(cfg: &AnalysisConfig, out: &Path) -> Result<(), String> {
    let (b1, b2) = match cfg.family {
        FamilySpec::LinTrig { b1, b2, .. } => (b1, b2),
        FamilySpec::QuadPoly { .. } => {
            return Err("trig-infinity requires a lin_trig family".into());
        }
    };
    let fam = cfg.family();
    let json = |r: Result<serde_json::Value, String>| match r {
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(e)),
    };
    let (q_region, q_region_error) = json(
        q_and_region(b1, b2)
            .map_err(|e| e.to_string())
            .and_then(|r| serde_json::to_value(&r).map_err(|e| e.to_string())),
    );
    let (witness, witness_error) = json(
        no_c3_witness(b1, b2)
            .map_err(|e| e.to_string())
            .and_then(|r| serde_json::to_value(&r).map_err(|e| e.to_string())),
    );
    let (infinity, infinity_error) = json(
        infinity_analysis(&fam)
            .map_err(|e| e.to_string())
            .and_then(|r| serde_json::to_value(&r).map_err(|e| e.to_string())),
    );
    let report = TrigInfinityReport {
        schema_version: SCHEMA_VERSION,
        config: cfg.clone(),
        q_region,
        q_region_error,
        witness,
        witness_error,
        infinity,
        infinity_error,
    };
    let path = out.join("trig_infinity.json");
    write_json(&path, &report)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    std::fs::write(path, text + "\n").map_err(|e| e.to_string())
}

fn run() -> i32 {
    let cli = Cli::parse();
    let args = match &cli.command {
        Command::Analyze(a) | Command::Sweep(a) | Command::Curves(a) | Command::TrigInfinity(a) => {
            a
        }
    };
    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.config.display());
            return 1;
        }
    };
    let cfg: AnalysisConfig = match serde_json::from_str(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: malformed configuration: {e}");
            return 1;
        }
    };
    if let Err(e) = cfg.validate() {
        eprintln!("error: invalid configuration: {e}");
        return 2;
    }
    if let Err(e) = std::fs::create_dir_all(&args.out) {
        eprintln!("error: cannot create {}: {e}", args.out.display());
        return 2;
    }
    if let Some(jobs) = args.jobs {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .is_err()
        {
            eprintln!("warning: thread pool already initialized; ignoring --jobs");
        }
    }
    let result = match &cli.command {
        Command::Analyze(_) => run_analyze(&cfg, &args.out),
        Command::Sweep(_) => run_sweep(&cfg, &args.out),
        Command::Curves(_) => run_curves(&cfg, &args.out),
        Command::TrigInfinity(_) => run_trig_infinity(&cfg, &args.out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn main() {
    std::process::exit(run());
}
