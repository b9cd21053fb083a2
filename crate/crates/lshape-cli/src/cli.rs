//! Command-line surface. Argument errors and domain violations exit 2,
//! internal failures (including a failing `check` run) exit 1.

use std::ffi::OsString;
use std::fs::File;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use lshape::casestudy::{
    analyze, parse_specs, render_report, JsonReport, ReportFormat, SpecFormat,
    DEFAULT_NEAR_OPTIMAL_THRESHOLD,
};
use lshape::closedform::{
    detect_degenerate_cuboid, optimize_asym_fixed_height, optimize_asym_fixed_ratios,
    optimize_asym_ratio_box, optimize_sym_fixed_ratio, optimize_sym_ratio_interval,
    OptimizationResult, RatioInterval,
};
use lshape::geometry::{AsymRatios, SymRatio};

use crate::check::{self, Scenario};
use crate::output::{self, emit, resolve_format, Failure, Format};
use crate::sweep::{self, Figure};

#[derive(Parser)]
#[command(
    name = "lshape",
    version,
    about = "Envelope-minimal dimensions for L-shaped buildings"
)]
struct Cli {
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute envelope-minimal dimensions for a target volume.
    #[command(subcommand)]
    Optimize(OptimizeCmd),
    /// Show the square-plan cuboid the optimum collapses into when no ratio
    /// constraint keeps the plan L-shaped.
    Degenerate(DegenerateArgs),
    /// Compare built dimensions from a spec file against their optima.
    Analyze(AnalyzeArgs),
    /// Tabulate the envelope over a parameter grid, with the closed-form
    /// minima marked.
    Sweep(SweepArgs),
    /// Verify the closed forms against the numerical oracle on seeded
    /// random instances.
    Check(CheckArgs),
}

#[derive(Subcommand)]
enum OptimizeCmd {
    /// Symmetric plan (equal wings), ratio r = L/B > 1.
    Sym(SymArgs),
    /// Asymmetric plan, ratios r1 = B1/L1 and r2 = B2/L2 in (0, 1).
    Asym(AsymArgs),
}

#[derive(Args)]
struct SymArgs {
    /// Building volume in m³.
    #[arg(long, allow_negative_numbers = true, value_name = "M3")]
    volume: f64,

    /// Fix the aspect ratio r = L/B.
    #[arg(
        long,
        allow_negative_numbers = true,
        value_name = "R",
        required_unless_present = "ratio_range",
        conflicts_with = "ratio_range"
    )]
    ratio: Option<f64>,

    /// Constrain the ratio to an interval "lo,hi" instead of fixing it.
    #[arg(long, value_name = "LO,HI")]
    ratio_range: Option<String>,

    /// Output format: text or json.
    #[arg(long, value_name = "FORMAT")]
    format: Option<String>,
}

#[derive(Args)]
struct AsymArgs {
    /// Building volume in m³.
    #[arg(long, allow_negative_numbers = true, value_name = "M3")]
    volume: f64,

    /// Fix both width ratios as "r1,r2".
    #[arg(
        long,
        value_name = "R1,R2",
        required_unless_present = "ratio_ranges",
        conflicts_with = "ratio_ranges"
    )]
    ratios: Option<String>,

    /// Constrain the ratios to a box "lo1,hi1,lo2,hi2" instead.
    #[arg(long, value_name = "LO1,HI1,LO2,HI2")]
    ratio_ranges: Option<String>,

    /// Fix the height too (requires --ratios); optimizes the wing lengths.
    #[arg(
        long,
        allow_negative_numbers = true,
        value_name = "M",
        requires = "ratios",
        conflicts_with = "ratio_ranges"
    )]
    height: Option<f64>,

    /// Output format: text or json.
    #[arg(long, value_name = "FORMAT")]
    format: Option<String>,
}

#[derive(Args)]
struct DegenerateArgs {
    /// Building volume in m³.
    #[arg(long, allow_negative_numbers = true, value_name = "M3")]
    volume: f64,

    /// Output format: text or json.
    #[arg(long, value_name = "FORMAT")]
    format: Option<String>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Building spec file (JSON array or CSV).
    #[arg(long, value_name = "PATH")]
    input: PathBuf,

    /// Input format: json or csv. Inferred from the extension when omitted.
    #[arg(long, value_name = "FORMAT")]
    format: Option<String>,

    /// ΔS below this (m²) counts as near-optimal.
    #[arg(long, allow_negative_numbers = true, value_name = "M2")]
    threshold: Option<f64>,

    /// Report rendering: text or json.
    #[arg(long, value_name = "FORMAT")]
    render: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    /// Grid preset: fig2, fig3, fig5, or fig6.
    #[arg(long, value_name = "ID")]
    figure: String,

    /// Override the preset volume in m³.
    #[arg(long, allow_negative_numbers = true, value_name = "M3")]
    volume: Option<f64>,

    /// Samples per grid axis.
    #[arg(long, value_name = "N")]
    samples: Option<usize>,

    /// Override the width axis as "lo,hi" (fig2, fig3).
    #[arg(long, value_name = "LO,HI")]
    b_range: Option<String>,

    /// Override the ratio interval as "lo,hi" (fig3).
    #[arg(long, value_name = "LO,HI")]
    r_range: Option<String>,

    /// Override the wing-length axis as "lo,hi" (fig5).
    #[arg(long, value_name = "LO,HI")]
    l_range: Option<String>,

    /// Override the fixed width ratios as "r1,r2" (fig5).
    #[arg(long, value_name = "R1,R2")]
    ratios: Option<String>,

    /// Override the ratio family as a comma-separated list (fig2).
    #[arg(long, value_name = "R,...")]
    ratio_set: Option<String>,

    /// Override the r1 interval as "lo,hi" (fig6).
    #[arg(long, value_name = "LO,HI")]
    r1_range: Option<String>,

    /// Override the r2 interval as "lo,hi" (fig6).
    #[arg(long, value_name = "LO,HI")]
    r2_range: Option<String>,

    /// Output format: csv or json.
    #[arg(long, value_name = "FORMAT")]
    format: Option<String>,
}

#[derive(Args)]
struct CheckArgs {
    /// Scenario: sym-fixed, sym-interval, asym-fixed, asym-box,
    /// asym-height, or all.
    #[arg(long, default_value = "all", value_name = "NAME")]
    scenario: String,

    /// Randomized trials per scenario.
    #[arg(long, default_value_t = 100, value_name = "N")]
    trials: u32,

    /// RNG seed. Equal seeds sample identical instances.
    #[arg(long, value_name = "SEED")]
    seed: u64,

    /// Scale the closed-form answers by (1 + F) before comparing; a
    /// nonzero value must make the run fail.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0, hide = true, value_name = "F")]
    perturb: f64,

    /// Output format: text or json.
    #[arg(long, value_name = "FORMAT")]
    format: Option<String>,
}

/// Parse the whole command line and run it. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    let output_path = cli.output;
    match dispatch(cli.command) {
        Ok((content, code)) => {
            if let Err(f) = emit(output_path.as_deref(), &content) {
                eprintln!("error: {}", f.message);
                return f.code;
            }
            code
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command) -> Result<(String, i32), Failure> {
    match command {
        Command::Optimize(OptimizeCmd::Sym(a)) => cmd_optimize_sym(a),
        Command::Optimize(OptimizeCmd::Asym(a)) => cmd_optimize_asym(a),
        Command::Degenerate(a) => cmd_degenerate(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Check(a) => cmd_check(a),
    }
}

/// Parse a comma-separated list of exactly `n` numbers.
fn parse_list(flag: &str, s: &str, n: usize) -> Result<Vec<f64>, Failure> {
    let xs = parse_list_any(flag, s)?;
    if xs.len() != n {
        return Err(Failure::usage(format!(
            "{flag} expects {n} comma-separated numbers, got {}",
            xs.len()
        )));
    }
    Ok(xs)
}

fn parse_list_any(flag: &str, s: &str) -> Result<Vec<f64>, Failure> {
    s.split(',')
        .map(|part| {
            part.trim().parse::<f64>().map_err(|_| {
                Failure::usage(format!("{flag}: `{}` is not a number", part.trim()))
            })
        })
        .collect()
}

/// A degenerate-ratio rejection gets a pointer to the subcommand that
/// reports the collapsed optimum.
fn with_degenerate_hint(e: lshape::Error, volume: f64) -> Failure {
    let is_degenerate = matches!(e, lshape::Error::Degenerate(_));
    let mut f = Failure::from(e);
    if is_degenerate {
        f.message.push_str(&format!(
            "; run `lshape degenerate --volume {volume}` for the collapsed optimum"
        ));
    }
    f
}

fn render_result(
    format: Format,
    heading: &str,
    res: &OptimizationResult,
) -> String {
    match format {
        Format::Text => output::render_result_text(heading, res),
        Format::Json => output::render_result_json(res),
        Format::Csv => unreachable!("csv is never offered for optimization results"),
    }
}

fn cmd_optimize_sym(a: SymArgs) -> Result<(String, i32), Failure> {
    let format = resolve_format(a.format.as_deref(), &[Format::Text, Format::Json], Format::Text)?;
    let v = a.volume;
    let (heading, res) = match (a.ratio, a.ratio_range.as_deref()) {
        (Some(r), None) => {
            let res = SymRatio::new(r)
                .and_then(|ratio| optimize_sym_fixed_ratio(v, ratio))
                .map_err(|e| with_degenerate_hint(e, v))?;
            (format!("symmetric fixed-ratio optimum\n  V = {v} m³, r = {r}\n"), res)
        }
        (None, Some(range)) => {
            let xs = parse_list("--ratio-range", range, 2)?;
            let res = RatioInterval::new(xs[0], xs[1])
                .and_then(|iv| optimize_sym_ratio_interval(v, iv))
                .map_err(|e| with_degenerate_hint(e, v))?;
            (
                format!(
                    "symmetric ratio-interval optimum\n  V = {v} m³, r ∈ [{}, {}]\n",
                    xs[0], xs[1]
                ),
                res,
            )
        }
        _ => unreachable!("clap enforces exactly one of --ratio and --ratio-range"),
    };
    Ok((render_result(format, &heading, &res), 0))
}

fn cmd_optimize_asym(a: AsymArgs) -> Result<(String, i32), Failure> {
    let format = resolve_format(a.format.as_deref(), &[Format::Text, Format::Json], Format::Text)?;
    let v = a.volume;
    let (heading, res) = match (a.ratios.as_deref(), a.ratio_ranges.as_deref(), a.height) {
        (Some(list), None, height) => {
            let xs = parse_list("--ratios", list, 2)?;
            let ratios = AsymRatios::new(xs[0], xs[1])?;
            match height {
                Some(h) => {
                    let res = optimize_asym_fixed_height(v, h, ratios)?;
                    (
                        format!(
                            "asymmetric fixed-height optimum\n  V = {v} m³, H = {h} m, r1 = {}, r2 = {}\n",
                            xs[0], xs[1]
                        ),
                        res,
                    )
                }
                None => {
                    let res = optimize_asym_fixed_ratios(v, ratios)?;
                    (
                        format!(
                            "asymmetric fixed-ratio optimum\n  V = {v} m³, r1 = {}, r2 = {}\n",
                            xs[0], xs[1]
                        ),
                        res,
                    )
                }
            }
        }
        (None, Some(list), None) => {
            let xs = parse_list("--ratio-ranges", list, 4)?;
            let box1 = RatioInterval::new(xs[0], xs[1])?;
            let box2 = RatioInterval::new(xs[2], xs[3])?;
            let res = optimize_asym_ratio_box(v, box1, box2)?;
            (
                format!(
                    "asymmetric ratio-box optimum\n  V = {v} m³, r1 ∈ [{}, {}], r2 ∈ [{}, {}]\n",
                    xs[0], xs[1], xs[2], xs[3]
                ),
                res,
            )
        }
        _ => unreachable!("clap enforces the flag combinations"),
    };
    Ok((render_result(format, &heading, &res), 0))
}

fn cmd_degenerate(a: DegenerateArgs) -> Result<(String, i32), Failure> {
    let format = resolve_format(a.format.as_deref(), &[Format::Text, Format::Json], Format::Text)?;
    let res = detect_degenerate_cuboid(a.volume)?;
    let content = match format {
        Format::Text => {
            let heading =
                format!("degenerate cuboid (ratio constraint dropped)\n  V = {} m³\n", a.volume);
            let mut s = output::render_result_text(&heading, &res);
            s.push_str("warning: the optimal footprint is a square; the L-form is lost\n");
            s
        }
        Format::Json => output::render_result_json(&res),
        Format::Csv => unreachable!("csv is never offered here"),
    };
    Ok((content, 0))
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<(String, i32), Failure> {
    let render_fmt =
        resolve_format(a.render.as_deref(), &[Format::Text, Format::Json], Format::Text)?;
    let spec_format = match a.format.as_deref() {
        Some("json") => SpecFormat::Json,
        Some("csv") => SpecFormat::Csv,
        Some(other) => {
            return Err(Failure::usage(format!(
                "unknown input format `{other}`; expected json or csv"
            )))
        }
        None => match a.input.extension().and_then(|e| e.to_str()) {
            Some("json") => SpecFormat::Json,
            Some("csv") => SpecFormat::Csv,
            _ => {
                return Err(Failure::usage(format!(
                    "cannot infer the input format of `{}`; pass --format json or --format csv",
                    a.input.display()
                )))
            }
        },
    };
    let file = File::open(&a.input)
        .map_err(|e| Failure::usage(format!("cannot open {}: {e}", a.input.display())))?;
    let specs = parse_specs(file, spec_format)?;
    let threshold = a.threshold.unwrap_or(DEFAULT_NEAR_OPTIMAL_THRESHOLD);
    let mut reports = Vec::with_capacity(specs.len());
    for spec in &specs {
        reports.push(analyze(spec, threshold)?);
    }
    let content = match render_fmt {
        Format::Text => {
            let mut s = String::new();
            for (i, report) in reports.iter().enumerate() {
                if i > 0 {
                    s.push('\n');
                }
                s.push_str(&render_report(report, ReportFormat::Text));
            }
            s
        }
        Format::Json => {
            let json: Vec<JsonReport> = reports.iter().map(JsonReport::from_report).collect();
            let mut s = serde_json::to_string_pretty(&json)
                .expect("report serialization cannot fail");
            s.push('\n');
            s
        }
        Format::Csv => unreachable!("csv is never offered here"),
    };
    Ok((content, 0))
}

fn cmd_sweep(a: SweepArgs) -> Result<(String, i32), Failure> {
    let figure = Figure::parse(&a.figure).ok_or_else(|| {
        Failure::usage(format!(
            "unknown figure `{}`; expected fig2, fig3, fig5 or fig6",
            a.figure
        ))
    })?;
    let format = resolve_format(a.format.as_deref(), &[Format::Csv, Format::Json], Format::Csv)?;

    let applicable = |name: &str, present: bool, figs: &[Figure]| -> Result<(), Failure> {
        if present && !figs.contains(&figure) {
            return Err(Failure::usage(format!("--{name} does not apply to {}", a.figure)));
        }
        Ok(())
    };
    applicable("b-range", a.b_range.is_some(), &[Figure::Fig2, Figure::Fig3])?;
    applicable("r-range", a.r_range.is_some(), &[Figure::Fig3])?;
    applicable("l-range", a.l_range.is_some(), &[Figure::Fig5])?;
    applicable("ratios", a.ratios.is_some(), &[Figure::Fig5])?;
    applicable("ratio-set", a.ratio_set.is_some(), &[Figure::Fig2])?;
    applicable("r1-range", a.r1_range.is_some(), &[Figure::Fig6])?;
    applicable("r2-range", a.r2_range.is_some(), &[Figure::Fig6])?;

    let mut params = sweep::SweepParams::preset(figure);
    if let Some(v) = a.volume {
        if !(v.is_finite() && v > 0.0) {
            return Err(Failure::usage(format!(
                "--volume must be positive and finite, got {v}"
            )));
        }
        params.volume = v;
    }
    if let Some(n) = a.samples {
        params.samples = n;
    }
    let pair = |flag: &str, s: &str| -> Result<(f64, f64), Failure> {
        let xs = parse_list(flag, s, 2)?;
        Ok((xs[0], xs[1]))
    };
    if let Some(s) = &a.b_range {
        params.b_range = pair("--b-range", s)?;
    }
    if let Some(s) = &a.r_range {
        params.r_range = pair("--r-range", s)?;
    }
    if let Some(s) = &a.l_range {
        params.l_range = pair("--l-range", s)?;
    }
    if let Some(s) = &a.ratios {
        params.ratios = pair("--ratios", s)?;
    }
    if let Some(s) = &a.r1_range {
        params.r1_range = pair("--r1-range", s)?;
    }
    if let Some(s) = &a.r2_range {
        params.r2_range = pair("--r2-range", s)?;
    }
    if let Some(s) = &a.ratio_set {
        params.ratio_set = parse_list_any("--ratio-set", s)?;
    }

    let grid = sweep::compute(&params)?;
    let content = match format {
        Format::Csv => sweep::render_csv(&grid),
        Format::Json => sweep::render_json(&grid),
        Format::Text => unreachable!("text is never offered for sweeps"),
    };
    Ok((content, 0))
}

fn cmd_check(a: CheckArgs) -> Result<(String, i32), Failure> {
    let format = resolve_format(a.format.as_deref(), &[Format::Text, Format::Json], Format::Text)?;
    if a.trials == 0 {
        return Err(Failure::usage("--trials must be at least 1"));
    }
    let scenarios = Scenario::parse_selection(&a.scenario).ok_or_else(|| {
        Failure::usage(format!(
            "unknown scenario `{}`; expected sym-fixed, sym-interval, asym-fixed, asym-box, \
             asym-height or all",
            a.scenario
        ))
    })?;
    let summary = check::run_trials(&scenarios, a.trials, a.seed, a.perturb)?;
    let content = match format {
        Format::Text => check::render_text(&summary),
        Format::Json => check::render_json(&summary),
        Format::Csv => unreachable!("csv is never offered here"),
    };
    let code = if summary.all_passed { 0 } else { 1 };
    Ok((content, code))
}
