//! Comparison of real building envelopes against their constrained optima.
//!
//! A [`BuildingSpec`] holds as-built outer dimensions of an L-shaped
//! building. [`analyze`] derives its ratios, volume and envelope, then asks
//! two questions: how much envelope would a redesign save if it kept the
//! ratios (free height), and if it kept the height (free footprint)? Both
//! optima preserve the as-built volume, so the deltas are directly
//! comparable savings in m².

use std::collections::HashSet;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::closedform::{
    optimize_asym_fixed_height, optimize_asym_fixed_ratios, OptimizationResult, PlanDims,
};
use crate::geometry::AsymDims;
use crate::{round_half_up, Error, Result};

/// ΔS below this many m² counts as near-optimal by default.
pub const DEFAULT_NEAR_OPTIMAL_THRESHOLD: f64 = 2.0;

/// Serialization format for building spec files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecFormat {
    Json,
    Csv,
}

/// As-built outer dimensions of one L-shaped building.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildingSpec {
    name: String,
    #[serde(rename = "L1")]
    l1: f64,
    #[serde(rename = "L2")]
    l2: f64,
    #[serde(rename = "B1")]
    b1: f64,
    #[serde(rename = "B2")]
    b2: f64,
    #[serde(rename = "H")]
    h: f64,
    #[serde(default)]
    source: Option<String>,
}

impl BuildingSpec {
    pub fn new(
        name: impl Into<String>,
        l1: f64,
        l2: f64,
        b1: f64,
        b2: f64,
        h: f64,
        source: Option<String>,
    ) -> Result<Self> {
        let spec = Self { name: name.into(), l1, l2, b1, b2, h, source };
        spec.dims()?;
        if spec.name.trim().is_empty() {
            return Err(Error::Validation {
                locus: "building spec".into(),
                detail: "name must be non-empty".into(),
            });
        }
        Ok(spec)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn l1(&self) -> f64 {
        self.l1
    }

    pub fn l2(&self) -> f64 {
        self.l2
    }

    pub fn b1(&self) -> f64 {
        self.b1
    }

    pub fn b2(&self) -> f64 {
        self.b2
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn source(&self) -> Option<&str> {
        self.source.as_deref()
    }

    /// Validated dimensions; fails if the spec does not describe a proper
    /// L-plan (wing widths must stay below their lengths).
    pub fn dims(&self) -> Result<AsymDims> {
        AsymDims::new(self.l1, self.l2, self.b1, self.b2, self.h)
    }
}

const CSV_HEADER: [&str; 7] = ["name", "L1", "L2", "B1", "B2", "H", "source"];

#[derive(Deserialize)]
struct CsvRow {
    name: String,
    #[serde(rename = "L1")]
    l1: f64,
    #[serde(rename = "L2")]
    l2: f64,
    #[serde(rename = "B1")]
    b1: f64,
    #[serde(rename = "B2")]
    b2: f64,
    #[serde(rename = "H")]
    h: f64,
    source: String,
}

fn validate_specs(specs: &mut [BuildingSpec]) -> Result<()> {
    let mut seen = HashSet::new();
    for spec in specs.iter_mut() {
        if spec.source.as_deref().is_some_and(|s| s.trim().is_empty()) {
            spec.source = None;
        }
        if spec.name.trim().is_empty() {
            return Err(Error::Validation {
                locus: "building spec".into(),
                detail: "name must be non-empty".into(),
            });
        }
        if !seen.insert(spec.name.clone()) {
            return Err(Error::Validation {
                locus: spec.name.clone(),
                detail: "duplicate building name".into(),
            });
        }
        spec.dims().map_err(|e| Error::Validation {
            locus: spec.name.clone(),
            detail: e.to_string(),
        })?;
    }
    Ok(())
}

/// Parse building specs from JSON (an array of objects) or CSV with the
/// exact header `name,L1,L2,B1,B2,H,source`. Names must be unique and every
/// row must describe a valid L-plan; an empty `source` becomes `None`.
pub fn parse_specs<R: Read>(reader: R, format: SpecFormat) -> Result<Vec<BuildingSpec>> {
    let mut specs = match format {
        SpecFormat::Json => {
            serde_json::from_reader::<R, Vec<BuildingSpec>>(reader).map_err(|e| Error::Parse {
                locus: format!("json line {} column {}", e.line(), e.column()),
                detail: e.to_string(),
            })?
        }
        SpecFormat::Csv => {
            let mut rdr = csv::Reader::from_reader(reader);
            let headers = rdr.headers().map_err(|e| Error::Parse {
                locus: "csv header".into(),
                detail: e.to_string(),
            })?;
            if headers != CSV_HEADER.as_slice() {
                return Err(Error::Parse {
                    locus: "csv header".into(),
                    detail: format!(
                        "expected `{}`, got `{}`",
                        CSV_HEADER.join(","),
                        headers.iter().collect::<Vec<_>>().join(",")
                    ),
                });
            }
            let mut specs = Vec::new();
            for (i, row) in rdr.deserialize::<CsvRow>().enumerate() {
                let row = row.map_err(|e| Error::Parse {
                    locus: format!("csv record {}", i + 1),
                    detail: e.to_string(),
                })?;
                let source = if row.source.trim().is_empty() { None } else { Some(row.source) };
                specs.push(BuildingSpec {
                    name: row.name,
                    l1: row.l1,
                    l2: row.l2,
                    b1: row.b1,
                    b2: row.b2,
                    h: row.h,
                    source,
                });
            }
            specs
        }
    };
    validate_specs(&mut specs)?;
    Ok(specs)
}

/// Quantities derived from a spec before any optimization.
#[derive(Debug, Clone, Serialize)]
pub struct DerivedParams {
    pub r1: f64,
    pub r2: f64,
    pub fill_factor: f64,
    pub volume: f64,
    pub envelope: f64,
    /// Envelope divided by the fixed-ratio minimum at the same volume.
    pub compactness_vs_fixed_ratios: f64,
}

/// Whether a redesign under the given constraint is worth it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Improvable,
    NearOptimal,
}

/// Full comparison of one building against its two constrained optima.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub spec: BuildingSpec,
    pub derived: DerivedParams,
    pub optimal_fixed_ratios: OptimizationResult,
    pub optimal_fixed_height: OptimizationResult,
    pub delta_s_fixed_ratios: f64,
    pub delta_s_fixed_height: f64,
    pub verdict_fixed_ratios: Verdict,
    pub verdict_fixed_height: Verdict,
    pub threshold: f64,
}

fn verdict(delta: f64, threshold: f64) -> Verdict {
    if delta < threshold {
        Verdict::NearOptimal
    } else {
        Verdict::Improvable
    }
}

/// Compare a building against its fixed-ratio and fixed-height optima at the
/// as-built volume. ΔS at or above `threshold` (in m²) marks the building
/// improvable under that constraint.
pub fn analyze(spec: &BuildingSpec, threshold: f64) -> Result<ComparisonReport> {
    if !threshold.is_finite() || threshold < 0.0 {
        return Err(Error::Validation {
            locus: "threshold".into(),
            detail: format!("must be finite and non-negative, got {threshold}"),
        });
    }
    let dims = spec.dims()?;
    let ratios = dims.ratios()?;
    let volume = dims.volume();
    let envelope = dims.envelope();

    let fixed_ratios = optimize_asym_fixed_ratios(volume, ratios)?;
    let fixed_height = optimize_asym_fixed_height(volume, dims.h(), ratios)?;
    let delta_ratios = envelope - fixed_ratios.envelope;
    let delta_height = envelope - fixed_height.envelope;

    Ok(ComparisonReport {
        spec: spec.clone(),
        derived: DerivedParams {
            r1: ratios.r1(),
            r2: ratios.r2(),
            fill_factor: ratios.fill_factor().get(),
            volume,
            envelope,
            compactness_vs_fixed_ratios: envelope / fixed_ratios.envelope,
        },
        delta_s_fixed_ratios: delta_ratios,
        delta_s_fixed_height: delta_height,
        verdict_fixed_ratios: verdict(delta_ratios, threshold),
        verdict_fixed_height: verdict(delta_height, threshold),
        optimal_fixed_ratios: fixed_ratios,
        optimal_fixed_height: fixed_height,
        threshold,
    })
}

/// Output format for a rendered report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

/// Flat dimension block inside the JSON report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonDims {
    pub l1: f64,
    pub l2: f64,
    pub b1: f64,
    pub b2: f64,
    pub h: f64,
    pub envelope: f64,
}

/// One set of report values; appears twice in [`JsonReport`], once exact and
/// once rounded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReportValues {
    pub r1: f64,
    pub r2: f64,
    pub fill_factor: f64,
    pub volume: f64,
    pub envelope: f64,
    pub compactness_vs_fixed_ratios: f64,
    pub optimal_fixed_ratios: JsonDims,
    pub optimal_fixed_height: JsonDims,
    pub delta_s_fixed_ratios: f64,
    pub delta_s_fixed_height: f64,
}

/// JSON shape of a rendered report: the spec as given, full-precision values
/// under `exact`, and the same values rounded half-up to two decimals under
/// `display`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub spec: BuildingSpec,
    pub threshold: f64,
    pub exact: JsonReportValues,
    pub display: JsonReportValues,
    pub verdict_fixed_ratios: Verdict,
    pub verdict_fixed_height: Verdict,
}

fn json_dims(result: &OptimizationResult) -> JsonDims {
    match &result.dims {
        PlanDims::Asym(d) => JsonDims {
            l1: d.l1(),
            l2: d.l2(),
            b1: d.b1(),
            b2: d.b2(),
            h: d.h(),
            envelope: result.envelope,
        },
        PlanDims::Sym(d) => JsonDims {
            l1: d.l(),
            l2: d.l(),
            b1: d.b(),
            b2: d.b(),
            h: d.h(),
            envelope: result.envelope,
        },
    }
}

impl JsonReportValues {
    fn rounded(&self) -> Self {
        let r2 = |x: f64| round_half_up(x, 2);
        let rd = |d: &JsonDims| JsonDims {
            l1: r2(d.l1),
            l2: r2(d.l2),
            b1: r2(d.b1),
            b2: r2(d.b2),
            h: r2(d.h),
            envelope: r2(d.envelope),
        };
        Self {
            r1: r2(self.r1),
            r2: r2(self.r2),
            fill_factor: r2(self.fill_factor),
            volume: r2(self.volume),
            envelope: r2(self.envelope),
            compactness_vs_fixed_ratios: r2(self.compactness_vs_fixed_ratios),
            optimal_fixed_ratios: rd(&self.optimal_fixed_ratios),
            optimal_fixed_height: rd(&self.optimal_fixed_height),
            delta_s_fixed_ratios: r2(self.delta_s_fixed_ratios),
            delta_s_fixed_height: r2(self.delta_s_fixed_height),
        }
    }
}

impl JsonReport {
    pub fn from_report(report: &ComparisonReport) -> Self {
        let exact = JsonReportValues {
            r1: report.derived.r1,
            r2: report.derived.r2,
            fill_factor: report.derived.fill_factor,
            volume: report.derived.volume,
            envelope: report.derived.envelope,
            compactness_vs_fixed_ratios: report.derived.compactness_vs_fixed_ratios,
            optimal_fixed_ratios: json_dims(&report.optimal_fixed_ratios),
            optimal_fixed_height: json_dims(&report.optimal_fixed_height),
            delta_s_fixed_ratios: report.delta_s_fixed_ratios,
            delta_s_fixed_height: report.delta_s_fixed_height,
        };
        let display = exact.rounded();
        Self {
            spec: report.spec.clone(),
            threshold: report.threshold,
            exact,
            display,
            verdict_fixed_ratios: report.verdict_fixed_ratios,
            verdict_fixed_height: report.verdict_fixed_height,
        }
    }
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Improvable => "improvable",
        Verdict::NearOptimal => "near-optimal",
    }
}

/// Render a report as human-readable text (dimensions to 2 decimals, areas
/// and volumes to 1) or as the [`JsonReport`] schema at full precision.
pub fn render_report(report: &ComparisonReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let json = JsonReport::from_report(report);
            let mut s = serde_json::to_string_pretty(&json)
                .expect("report serialization cannot fail");
            s.push('\n');
            s
        }
        ReportFormat::Text => {
            let d2 = |x: f64| format!("{:.2}", round_half_up(x, 2));
            let a1 = |x: f64| format!("{:.1}", round_half_up(x, 1));
            let spec = &report.spec;
            let derived = &report.derived;
            let opt_r = json_dims(&report.optimal_fixed_ratios);
            let opt_h = json_dims(&report.optimal_fixed_height);
            let mut out = String::new();
            match spec.source() {
                Some(src) => out.push_str(&format!("{} ({src})\n", spec.name())),
                None => out.push_str(&format!("{}\n", spec.name())),
            }
            out.push_str(&format!(
                "  as built: L1 = {} m, L2 = {} m, B1 = {} m, B2 = {} m, H = {} m\n",
                d2(spec.l1()),
                d2(spec.l2()),
                d2(spec.b1()),
                d2(spec.b2()),
                d2(spec.h()),
            ));
            out.push_str(&format!(
                "  ratios: r1 = {}, r2 = {} (fill factor k = {})\n",
                d2(derived.r1),
                d2(derived.r2),
                d2(derived.fill_factor),
            ));
            out.push_str(&format!(
                "  volume V = {} m³, envelope S = {} m²\n",
                a1(derived.volume),
                a1(derived.envelope),
            ));
            out.push_str(&format!(
                "  compactness vs fixed-ratio optimum: {:.4}\n",
                round_half_up(derived.compactness_vs_fixed_ratios, 4),
            ));
            out.push_str(&format!(
                "  optimum at these ratios: L1 = L2 = {} m, B1 = {} m, B2 = {} m, H = {} m, S_min = {} m²\n",
                d2(opt_r.l1),
                d2(opt_r.b1),
                d2(opt_r.b2),
                d2(opt_r.h),
                a1(opt_r.envelope),
            ));
            out.push_str(&format!(
                "  ΔS(fixed ratios) = {} m² → {} (threshold {} m²)\n",
                a1(report.delta_s_fixed_ratios),
                verdict_text(report.verdict_fixed_ratios),
                a1(report.threshold),
            ));
            out.push_str(&format!(
                "  optimum at this height: L1 = L2 = {} m, B1 = {} m, B2 = {} m, S_min = {} m²\n",
                d2(opt_h.l1),
                d2(opt_h.b1),
                d2(opt_h.b2),
                a1(opt_h.envelope),
            ));
            out.push_str(&format!(
                "  ΔS(fixed height) = {} m² → {} (threshold {} m²)\n",
                a1(report.delta_s_fixed_height),
                verdict_text(report.verdict_fixed_height),
                a1(report.threshold),
            ));
            out
        }
    }
}
