//! Command-line surface over the library: evaluate discriminants, emit
//! Floquet arcs (JSON/CSV), real band tables, SVG pictures, identity
//! verification reports and perturbation comparisons.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad flags or domain,
//! 3 I/O failure, 4 solver non-convergence.

use crate::discriminant::DiscriminantModel;
use crate::error::Error;
use crate::floquet::{
    real_bands_with, trace_arcs_with, uniform_kappa_grid, ArcFamily, SolverConfig,
};
use crate::identities;
use crate::perturbation::{approximation_error_report, Regime};
use crate::plot::{render_svg, PlotSpec};
use crate::transfer::{discriminant_via_transfer, Potential};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt::Write as _;

/// Parse a complex number in shell-safe `a+bi` form: `1.5`, `2i`, `-i`,
/// `0.5-0.3i`, `1e-3+2e-3i`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    if let Some(body) = t.strip_suffix(['i', 'I']) {
        // find the split between real and imaginary parts: the last
        // sign that is not part of an exponent and not leading
        let bytes = body.as_bytes();
        let mut split = None;
        for (idx, &b) in bytes.iter().enumerate().skip(1) {
            if (b == b'+' || b == b'-')
                && !matches!(bytes[idx - 1], b'e' | b'E')
            {
                split = Some(idx);
            }
        }
        let (re_str, im_str) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("0", body),
        };
        let im = match im_str {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other
                .parse::<f64>()
                .map_err(|_| format!("bad imaginary part in '{s}'"))?,
        };
        let re = re_str
            .parse::<f64>()
            .map_err(|_| format!("bad real part in '{s}'"))?;
        Ok(Complex64::new(re, im))
    } else {
        t.parse::<f64>()
            .map(Complex64::from)
            .map_err(|_| format!("bad complex literal '{s}'"))
    }
}

fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

#[derive(Parser)]
#[command(
    name = "hillband",
    version,
    about = "Spectra of period-L discrete Schrödinger operators with one complex impurity"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    solver: SolverFlags,
}

/// Solver overrides; flags beat the optional `HILLBAND_CONFIG` key=value
/// file, which beats the defaults.
#[derive(Args, Debug, Default)]
struct SolverFlags {
    /// Target scaled residual of the root iteration
    #[arg(long, global = true)]
    residual_tol: Option<f64>,
    /// Iteration budget per solve attempt
    #[arg(long, global = true)]
    max_iterations: Option<usize>,
    /// Newton polish steps per root
    #[arg(long, global = true)]
    newton_steps: Option<usize>,
    /// Restart attempts from fallback starting points
    #[arg(long, global = true)]
    restarts: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DiscMethod {
    Chebyshev,
    Transfer,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum NodeOverlay {
    Auto,
    Alpha,
    Beta,
    Both,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeFlag {
    Small,
    Large,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the discriminant at one energy
    Disc {
        #[arg(long = "L")]
        l: usize,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        v: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        e: Complex64,
        #[arg(long, value_enum, default_value_t = DiscMethod::Chebyshev)]
        method: DiscMethod,
    },
    /// Trace the spectral arcs over κ ∈ [0, π] and write them out
    Arcs {
        #[arg(long = "L")]
        l: usize,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        v: Complex64,
        #[arg(long, default_value_t = 257)]
        kappa_steps: usize,
        #[arg(long)]
        out: std::path::PathBuf,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        format: OutFormat,
    },
    /// Print the L real bands for real nonzero v
    Bands {
        #[arg(long = "L")]
        l: usize,
        #[arg(long, allow_hyphen_values = true)]
        v: f64,
    },
    /// Render the spectral picture as SVG
    Plot {
        #[arg(long = "L")]
        l: usize,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        v: Complex64,
        #[arg(long)]
        out: std::path::PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        x_max: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        y_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        y_max: Option<f64>,
        #[arg(long, default_value_t = 256)]
        grid: usize,
        /// Comma-separated level values of Re Δ in [-2, 2] (each is
        /// 2cos κ for some κ); ±2 are drawn dashed
        #[arg(long, default_value = "2,-2", value_delimiter = ',', allow_hyphen_values = true)]
        levels: Vec<f64>,
        #[arg(long, value_enum, default_value_t = NodeOverlay::Auto)]
        nodes: NodeOverlay,
        /// Skip the traced-arcs overlay
        #[arg(long)]
        no_arcs: bool,
    },
    /// Check the exact identities over a parameter grid
    Verify {
        #[arg(long, default_value_t = 40)]
        l_max: usize,
        /// Comma-separated complex impurities
        #[arg(long, default_value = "1,2i,0.5-0.3i,-3", value_delimiter = ',', value_parser = parse_complex, allow_hyphen_values = true)]
        v_list: Vec<Complex64>,
        /// Negative control: corrupt one closed form and expect failure
        #[arg(long, hide = true)]
        inject_error: bool,
    },
    /// Compare a first-order eigenvalue approximation with the solver
    Approx {
        #[arg(long, value_enum)]
        regime: RegimeFlag,
        #[arg(long = "L")]
        l: usize,
        #[arg(long)]
        index: usize,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        v: Complex64,
        #[arg(long)]
        kappa: f64,
    },
}

#[derive(Serialize)]
struct ArcDocument {
    version: String,
    #[serde(rename = "L")]
    l: usize,
    v: [f64; 2],
    grid: String,
    branches: Vec<BranchDoc>,
    components: usize,
}

#[derive(Serialize)]
struct BranchDoc {
    id: usize,
    samples: Vec<[f64; 3]>,
}

fn arc_document(l: usize, v: Complex64, steps: usize, fam: &ArcFamily) -> ArcDocument {
    ArcDocument {
        version: env!("CARGO_PKG_VERSION").to_string(),
        l,
        v: [v.re, v.im],
        grid: format!("uniform[0,pi]x{steps}+adaptive"),
        branches: fam
            .arcs
            .iter()
            .map(|a| BranchDoc {
                id: a.branch_id,
                samples: a
                    .samples
                    .iter()
                    .map(|&(k, e)| [k, e.re, e.im])
                    .collect(),
            })
            .collect(),
        components: fam.component_count,
    }
}

fn arcs_csv(fam: &ArcFamily) -> String {
    let mut out = String::from("branch,kappa,re,im\n");
    for arc in &fam.arcs {
        for &(k, e) in &arc.samples {
            let _ = writeln!(out, "{},{},{},{}", arc.branch_id, k, e.re, e.im);
        }
    }
    out
}

fn config_from_env(flags: &SolverFlags) -> SolverConfig {
    let mut cfg = SolverConfig::default();
    if let Ok(path) = std::env::var("HILLBAND_CONFIG") {
        match std::fs::read_to_string(&path) {
            Ok(text) => {
                for line in text.lines() {
                    let line = line.split('#').next().unwrap_or("").trim();
                    if line.is_empty() {
                        continue;
                    }
                    let Some((key, value)) = line.split_once('=') else {
                        eprintln!("config: ignoring malformed line '{line}'");
                        continue;
                    };
                    let (key, value) = (key.trim(), value.trim());
                    let ok = match key {
                        "residual_tol" => value
                            .parse()
                            .map(|x| cfg.residual_tol = x)
                            .is_ok(),
                        "max_iterations" => value
                            .parse()
                            .map(|x| cfg.max_iterations = x)
                            .is_ok(),
                        "newton_steps" => {
                            value.parse().map(|x| cfg.newton_steps = x).is_ok()
                        }
                        "restarts" => value.parse().map(|x| cfg.restarts = x).is_ok(),
                        _ => {
                            eprintln!("config: unknown key '{key}'");
                            true
                        }
                    };
                    if !ok {
                        eprintln!("config: bad value for '{key}': '{value}'");
                    }
                }
            }
            Err(err) => eprintln!("config: cannot read {path}: {err}"),
        }
    }
    if let Some(x) = flags.residual_tol {
        cfg.residual_tol = x;
    }
    if let Some(x) = flags.max_iterations {
        cfg.max_iterations = x;
    }
    if let Some(x) = flags.newton_steps {
        cfg.newton_steps = x;
    }
    if let Some(x) = flags.restarts {
        cfg.restarts = x;
    }
    cfg
}

fn error_code(err: &Error) -> i32 {
    match err {
        Error::NonConvergence { .. } => 4,
        _ => 2,
    }
}

fn write_file(path: &std::path::Path, data: &str) -> Result<(), i32> {
    std::fs::write(path, data).map_err(|err| {
        eprintln!("cannot write {}: {err}", path.display());
        3
    })
}

fn cmd_disc(l: usize, v: Complex64, e: Complex64, method: DiscMethod) -> i32 {
    if l == 0 {
        eprintln!("--L must be at least 1");
        return 2;
    }
    let model = DiscriminantModel::new(l, v);
    let cheb = model.eval(e);
    let transfer = discriminant_via_transfer(&Potential::sparse(l, v), e);
    match method {
        DiscMethod::Chebyshev => println!("delta = {}", format_complex(cheb)),
        DiscMethod::Transfer => println!("delta = {}", format_complex(transfer)),
        DiscMethod::Both => {
            println!("delta_chebyshev = {}", format_complex(cheb));
            println!("delta_transfer  = {}", format_complex(transfer));
            println!("abs_difference  = {:.3e}", (cheb - transfer).norm());
        }
    }
    0
}

fn cmd_arcs(
    l: usize,
    v: Complex64,
    steps: usize,
    out: &std::path::Path,
    format: OutFormat,
    cfg: &SolverConfig,
) -> i32 {
    if l == 0 || steps < 2 {
        eprintln!("need --L >= 1 and --kappa-steps >= 2");
        return 2;
    }
    let model = DiscriminantModel::new(l, v);
    let fam = match trace_arcs_with(&model, &uniform_kappa_grid(steps), cfg) {
        Ok(f) => f,
        Err(err) => {
            eprintln!("{err}");
            return error_code(&err);
        }
    };
    let payload = match format {
        OutFormat::Json => {
            let doc = arc_document(l, v, steps, &fam);
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        OutFormat::Csv => arcs_csv(&fam),
    };
    if let Err(code) = write_file(out, &payload) {
        return code;
    }
    println!(
        "wrote {} ({} branches, {} components)",
        out.display(),
        fam.arcs.len(),
        fam.component_count
    );
    0
}

fn cmd_bands(l: usize, v: f64, cfg: &SolverConfig) -> i32 {
    if l == 0 {
        eprintln!("--L must be at least 1");
        return 2;
    }
    if v == 0.0 {
        println!("1 -2 2");
        return 0;
    }
    let model = DiscriminantModel::new(l, Complex64::from(v));
    match real_bands_with(&model, cfg) {
        Ok(bands) => {
            for (k, (lo, hi)) in bands.intervals.iter().enumerate() {
                println!("{} {} {}", k + 1, lo, hi);
            }
            0
        }
        Err(err) => {
            eprintln!("{err}");
            error_code(&err)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_plot(
    l: usize,
    v: Complex64,
    out: &std::path::Path,
    region: (Option<f64>, Option<f64>, Option<f64>, Option<f64>),
    grid: usize,
    levels: &[f64],
    nodes: NodeOverlay,
    no_arcs: bool,
) -> i32 {
    if l == 0 {
        eprintln!("--L must be at least 1");
        return 2;
    }
    let mut spec = PlotSpec::default_for(v);
    if let Some(x) = region.0 {
        spec.x_min = x;
    }
    if let Some(x) = region.1 {
        spec.x_max = x;
    }
    if let Some(x) = region.2 {
        spec.y_min = x;
    }
    if let Some(x) = region.3 {
        spec.y_max = x;
    }
    spec.grid = grid;
    spec.kappa_levels = Vec::new();
    for &level in levels {
        if !(-2.0..=2.0).contains(&level) {
            eprintln!("level {level} outside [-2, 2]");
            return 2;
        }
        spec.kappa_levels.push((level / 2.0).acos());
    }
    spec.show_arcs = !no_arcs;
    let (alpha, beta) = match nodes {
        NodeOverlay::Auto => {
            if v.norm() <= 1.0 {
                (true, false)
            } else {
                (false, true)
            }
        }
        NodeOverlay::Alpha => (true, false),
        NodeOverlay::Beta => (false, true),
        NodeOverlay::Both => (true, true),
        NodeOverlay::None => (false, false),
    };
    spec.show_alpha_nodes = alpha;
    spec.show_beta_nodes = beta;
    let model = DiscriminantModel::new(l, v);
    match render_svg(&model, &spec) {
        Ok(svg) => match write_file(out, &svg) {
            Ok(()) => {
                println!("wrote {}", out.display());
                0
            }
            Err(code) => code,
        },
        Err(err) => {
            eprintln!("{err}");
            error_code(&err)
        }
    }
}

fn cmd_verify(l_max: usize, v_list: &[Complex64], inject_error: bool) -> i32 {
    let mut worst: (f64, String) = (0.0, String::new());
    let mut failures = 0usize;
    let mut checks = 0usize;
    let mut record = |result: identities::IdentityResult, label: String| {
        let mut closed = result.closed_form;
        if inject_error && checks == 0 {
            closed = -closed; // negative control
        }
        let err = (result.computed - closed).norm();
        let rel = err / (1.0 + closed.norm());
        checks += 1;
        if rel >= 1e-10 {
            failures += 1;
        }
        if rel > worst.0 {
            worst = (rel, label);
        }
    };
    for l in 1..=l_max.max(1) {
        for &v in v_list {
            let model = DiscriminantModel::new(l, v);
            record(
                identities::integral_of_discriminant(&model),
                format!("integral L={l} v={}", format_complex(v)),
            );
            record(
                identities::parseval_norm(&model),
                format!("parseval L={l} v={}", format_complex(v)),
            );
        }
        let e = Complex64::new(0.37 * l as f64 % 3.0 - 1.5, 0.11 * l as f64 % 2.0 - 1.0);
        record(
            identities::power_trace_identity(l, e),
            format!("power-trace n={l}"),
        );
    }
    println!(
        "{checks} checks, {failures} failures; worst relative error {:.3e} ({})",
        worst.0, worst.1
    );
    if failures == 0 {
        0
    } else {
        1
    }
}

fn cmd_approx(regime: RegimeFlag, l: usize, index: usize, v: Complex64, kappa: f64) -> i32 {
    let regime = match regime {
        RegimeFlag::Small => Regime::SmallV,
        RegimeFlag::Large => Regime::LargeV,
    };
    if !(0.0..=PI).contains(&kappa) {
        eprintln!("--kappa must lie in [0, pi]");
        return 2;
    }
    let report = match approximation_error_report(regime, l, index, v, kappa) {
        Ok(r) => r,
        Err(err) => {
            eprintln!("{err}");
            return error_code(&err);
        }
    };
    println!("approx  = {}", format_complex(report.approx));
    println!("numeric = {}", format_complex(report.numeric));
    println!("abs_error = {:.6e}", report.abs_error);
    for w in &report.warnings {
        println!("warning: {w}");
    }
    // error-order table: halve v (small regime) / double it (large)
    println!("scale v abs_error ratio");
    let mut prev: Option<f64> = None;
    for m in 0..5 {
        let factor = match regime {
            Regime::SmallV => 0.5f64.powi(m),
            Regime::LargeV => 2.0f64.powi(m),
        };
        let vm = v * factor;
        match approximation_error_report(regime, l, index, vm, kappa) {
            Ok(r) => {
                let ratio = prev
                    .map(|p| format!("{:.3}", r.abs_error / p))
                    .unwrap_or_else(|| "-".into());
                println!(
                    "x{factor} {} {:.6e} {ratio}",
                    format_complex(vm),
                    r.abs_error
                );
                prev = Some(r.abs_error);
            }
            Err(err) => {
                eprintln!("{err}");
                return error_code(&err);
            }
        }
    }
    0
}

/// Entry point used by the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    let cfg = config_from_env(&cli.solver);
    match cli.cmd {
        Cmd::Disc { l, v, e, method } => cmd_disc(l, v, e, method),
        Cmd::Arcs {
            l,
            v,
            kappa_steps,
            out,
            format,
        } => cmd_arcs(l, v, kappa_steps, &out, format, &cfg),
        Cmd::Bands { l, v } => cmd_bands(l, v, &cfg),
        Cmd::Plot {
            l,
            v,
            out,
            x_min,
            x_max,
            y_min,
            y_max,
            grid,
            levels,
            nodes,
            no_arcs,
        } => cmd_plot(
            l,
            v,
            &out,
            (x_min, x_max, y_min, y_max),
            grid,
            &levels,
            nodes,
            no_arcs,
        ),
        Cmd::Verify {
            l_max,
            v_list,
            inject_error,
        } => cmd_verify(l_max, &v_list, inject_error),
        Cmd::Approx {
            regime,
            l,
            index,
            v,
            kappa,
        } => cmd_approx(regime, l, index, v, kappa),
    }
}
