//! Output-format resolution and text rendering shared by the subcommands.
//!
//! Numbers in text output are rounded half-up to two decimals; JSON and CSV
//! always carry full precision.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use lshape::closedform::{OptimizationResult, PlanDims, Side};
use lshape::round_half_up;

/// Process failure: message for stderr plus the exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

impl From<lshape::Error> for Failure {
    fn from(e: lshape::Error) -> Self {
        // A non-finite evaluation means the tool itself went wrong; every
        // other library error traces back to the caller's input.
        let code = match e {
            lshape::Error::NonFiniteEval { .. } => 1,
            _ => 2,
        };
        Self { code, message: e.to_string() }
    }
}

/// Environment variable supplying the default output format.
pub const FORMAT_ENV: &str = "LSHAPE_FORMAT";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    fn parse(s: &str) -> Option<Format> {
        match s {
            "text" => Some(Format::Text),
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

/// Pick the output format: an explicit flag must name a format this command
/// supports; otherwise [`FORMAT_ENV`] supplies the default when applicable
/// (an inapplicable but well-formed value falls back to the command default,
/// an unknown value is an error); otherwise the command default.
pub fn resolve_format(
    flag: Option<&str>,
    allowed: &[Format],
    default: Format,
) -> Result<Format, Failure> {
    let allowed_names =
        || allowed.iter().map(|f| f.name()).collect::<Vec<_>>().join(", ");
    if let Some(s) = flag {
        let f = Format::parse(s)
            .ok_or_else(|| Failure::usage(format!("unknown format `{s}`; expected one of: {}", allowed_names())))?;
        if !allowed.contains(&f) {
            return Err(Failure::usage(format!(
                "format `{s}` does not apply to this command; expected one of: {}",
                allowed_names()
            )));
        }
        return Ok(f);
    }
    match std::env::var(FORMAT_ENV) {
        Ok(s) => {
            let f = Format::parse(&s).ok_or_else(|| {
                Failure::usage(format!("{FORMAT_ENV}={s} names no known format (text, json, csv)"))
            })?;
            Ok(if allowed.contains(&f) { f } else { default })
        }
        Err(_) => Ok(default),
    }
}

/// Write to the file if a path was given, standard output otherwise.
pub fn emit(path: Option<&Path>, content: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, content)
            .map_err(|e| Failure::internal(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

pub fn fmt2(x: f64) -> String {
    format!("{:.2}", round_half_up(x, 2))
}

fn constraints_line(res: &OptimizationResult) -> String {
    if res.active_constraints.is_empty() {
        "  active constraints: none\n".into()
    } else {
        let parts: Vec<String> = res
            .active_constraints
            .iter()
            .map(|c| {
                let side = match c.side {
                    Side::Lower => "lower",
                    Side::Upper => "upper",
                };
                format!("{} at {side} bound {}", c.name, c.bound)
            })
            .collect();
        format!("  active constraints: {}\n", parts.join(", "))
    }
}

/// Human-readable optimization result: a caller-supplied heading naming the
/// scenario and its inputs, then dimensions, envelope, constraints, and the
/// degeneracy flag.
pub fn render_result_text(heading: &str, res: &OptimizationResult) -> String {
    let mut out = String::new();
    out.push_str(heading);
    match &res.dims {
        PlanDims::Sym(d) => {
            if d.is_degenerate() {
                let _ = writeln!(out, "  L = B = {} m", fmt2(d.l()));
            } else {
                let _ = writeln!(out, "  L = {} m", fmt2(d.l()));
                let _ = writeln!(out, "  B = {} m", fmt2(d.b()));
            }
            let _ = writeln!(out, "  H = {} m", fmt2(d.h()));
        }
        PlanDims::Asym(d) => {
            let _ = writeln!(out, "  L1 = {} m", fmt2(d.l1()));
            let _ = writeln!(out, "  L2 = {} m", fmt2(d.l2()));
            let _ = writeln!(out, "  B1 = {} m", fmt2(d.b1()));
            let _ = writeln!(out, "  B2 = {} m", fmt2(d.b2()));
            let _ = writeln!(out, "  H = {} m", fmt2(d.h()));
        }
    }
    let _ = writeln!(out, "  S = {} m²", fmt2(res.envelope));
    out.push_str(&constraints_line(res));
    let _ = writeln!(out, "  degenerate: {}", if res.degenerate { "yes" } else { "no" });
    out
}

pub fn render_result_json(res: &OptimizationResult) -> String {
    let mut s = serde_json::to_string_pretty(res).expect("result serialization cannot fail");
    s.push('\n');
    s
}
