//! Figure-grid sweeps: dense envelope evaluations over two axes with the
//! closed-form minima attached as markers.
//!
//! A sweep is a pure function of its resolved parameters, so repeated runs
//! emit byte-identical output. CSV is long-form (one row per grid point,
//! header `axis1,axis2,value`), with marker rows after a `# closed-form
//! minima` comment line; JSON is the full [`SweepGrid`].

use serde::{Deserialize, Serialize};

use lshape::closedform::{
    optimize_asym_fixed_ratios, optimize_asym_ratio_box, optimize_sym_fixed_ratio,
    optimize_sym_ratio_interval, PlanDims, RatioInterval,
};
use lshape::geometry::{asym_height_for_volume, sym_envelope_parametric, AsymDims, AsymRatios, SymRatio};

use crate::output::Failure;

pub const DEFAULT_SAMPLES: usize = 101;
const MAX_SAMPLES: usize = 1001;

/// Default aspect-ratio family for the symmetric width sweep.
pub const FIG2_RATIOS: [f64; 8] = [1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepAxis {
    pub name: String,
    pub unit: String,
    pub samples: Vec<f64>,
}

/// A closed-form minimum placed on the grid: coordinates in axis order plus
/// the minimal envelope, both grid-independent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMarker {
    pub coords: Vec<f64>,
    pub value: f64,
}

/// Dense evaluation grid. `values` is row-major with the last axis fastest;
/// its length is the product of the axis lengths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub axes: Vec<SweepAxis>,
    pub quantity: String,
    pub values: Vec<f64>,
    pub minima: Vec<SweepMarker>,
}

impl SweepGrid {
    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Which figure layout to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Envelope vs width, one curve per ratio in a family.
    Fig2,
    /// Envelope over width × ratio-interval.
    Fig3,
    /// Envelope over the two wing lengths at fixed ratios.
    Fig5,
    /// Per-ratio minimal envelope over a ratio box.
    Fig6,
}

impl Figure {
    pub fn parse(s: &str) -> Option<Figure> {
        match s {
            "fig2" => Some(Figure::Fig2),
            "fig3" => Some(Figure::Fig3),
            "fig5" => Some(Figure::Fig5),
            "fig6" => Some(Figure::Fig6),
            _ => None,
        }
    }
}

/// Resolved sweep parameters: figure preset plus any overrides.
#[derive(Debug, Clone)]
pub struct SweepParams {
    pub figure: Figure,
    pub volume: f64,
    pub samples: usize,
    /// Fig2: the ratio family. Fig3: ignored.
    pub ratio_set: Vec<f64>,
    /// Fig2/Fig3: width axis range.
    pub b_range: (f64, f64),
    /// Fig3: the ratio interval.
    pub r_range: (f64, f64),
    /// Fig5: wing-length axis range (both axes).
    pub l_range: (f64, f64),
    /// Fig5: the fixed ratios.
    pub ratios: (f64, f64),
    /// Fig6: the ratio box.
    pub r1_range: (f64, f64),
    pub r2_range: (f64, f64),
}

impl SweepParams {
    /// The preset encoding a figure's published parameters.
    pub fn preset(figure: Figure) -> Self {
        let volume = match figure {
            Figure::Fig2 | Figure::Fig5 => 300.0,
            Figure::Fig3 | Figure::Fig6 => 200.0,
        };
        Self {
            figure,
            volume,
            samples: DEFAULT_SAMPLES,
            ratio_set: FIG2_RATIOS.to_vec(),
            b_range: match figure {
                Figure::Fig2 => (2.0, 12.0),
                _ => (1.0, 10.0),
            },
            r_range: (3.0, 4.0),
            l_range: (4.0, 25.0),
            ratios: (0.4, 0.6),
            r1_range: (0.3, 0.5),
            r2_range: (0.2, 0.8),
        }
    }

    pub fn validate(&self) -> Result<(), Failure> {
        if !(self.samples >= 2 && self.samples <= MAX_SAMPLES) {
            return Err(Failure::usage(format!(
                "--samples must be between 2 and {MAX_SAMPLES}, got {}",
                self.samples
            )));
        }
        let ranges = [
            ("B", self.b_range),
            ("r", self.r_range),
            ("L", self.l_range),
            ("r1", self.r1_range),
            ("r2", self.r2_range),
        ];
        for (name, (lo, hi)) in ranges {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Failure::usage(format!(
                    "{name} range [{lo}, {hi}] is not a finite ascending interval"
                )));
            }
        }
        if self.ratio_set.is_empty() {
            return Err(Failure::usage("the ratio set must not be empty"));
        }
        Ok(())
    }
}

/// Evenly spaced samples with both endpoints exact.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * (i as f64 / (n - 1) as f64)
            }
        })
        .collect()
}

fn axis(name: &str, unit: &str, samples: Vec<f64>) -> SweepAxis {
    SweepAxis { name: name.into(), unit: unit.into(), samples }
}

fn marker_of(res: &lshape::closedform::OptimizationResult, coords: Vec<f64>) -> SweepMarker {
    SweepMarker { coords, value: res.envelope }
}

/// Compute the grid for the resolved parameters. Axis order matches how the
/// figure reads: fig2 (r, B), fig3 (B, r), fig5 (L1, L2), fig6 (r1, r2).
pub fn compute(params: &SweepParams) -> Result<SweepGrid, Failure> {
    params.validate()?;
    let v = params.volume;
    let n = params.samples;
    let quantity = "envelope m²".to_string();
    match params.figure {
        Figure::Fig2 => {
            let b_samples = linspace(params.b_range.0, params.b_range.1, n);
            let mut values = Vec::with_capacity(params.ratio_set.len() * n);
            let mut minima = Vec::new();
            for &r in &params.ratio_set {
                let ratio = SymRatio::new(r)?;
                for &b in &b_samples {
                    values.push(sym_envelope_parametric(b, ratio, v)?);
                }
                let opt = optimize_sym_fixed_ratio(v, ratio)?;
                let b_opt = match &opt.dims {
                    PlanDims::Sym(d) => d.b(),
                    PlanDims::Asym(_) => unreachable!(),
                };
                minima.push(marker_of(&opt, vec![r, b_opt]));
            }
            Ok(SweepGrid {
                axes: vec![
                    axis("r", "1", params.ratio_set.clone()),
                    axis("B", "m", b_samples),
                ],
                quantity,
                values,
                minima,
            })
        }
        Figure::Fig3 => {
            let b_samples = linspace(params.b_range.0, params.b_range.1, n);
            let r_samples = linspace(params.r_range.0, params.r_range.1, n);
            let mut values = Vec::with_capacity(n * n);
            for &b in &b_samples {
                for &r in &r_samples {
                    values.push(sym_envelope_parametric(b, SymRatio::new(r)?, v)?);
                }
            }
            let bounds = RatioInterval::new(params.r_range.0, params.r_range.1)?;
            let opt = optimize_sym_ratio_interval(v, bounds)?;
            let (b_opt, r_opt) = match &opt.dims {
                PlanDims::Sym(d) => (d.b(), opt.active_constraints[0].bound),
                PlanDims::Asym(_) => unreachable!(),
            };
            Ok(SweepGrid {
                axes: vec![axis("B", "m", b_samples), axis("r", "1", r_samples)],
                quantity,
                values,
                minima: vec![marker_of(&opt, vec![b_opt, r_opt])],
            })
        }
        Figure::Fig5 => {
            let ratios = AsymRatios::new(params.ratios.0, params.ratios.1)?;
            let l_samples = linspace(params.l_range.0, params.l_range.1, n);
            let mut values = Vec::with_capacity(n * n);
            for &l1 in &l_samples {
                for &l2 in &l_samples {
                    let h = asym_height_for_volume(v, l1, l2, ratios)?;
                    let d = AsymDims::new(
                        l1,
                        l2,
                        ratios.r1() * l1,
                        ratios.r2() * l2,
                        h,
                    )?;
                    values.push(d.envelope());
                }
            }
            let opt = optimize_asym_fixed_ratios(v, ratios)?;
            let l_opt = match &opt.dims {
                PlanDims::Asym(d) => d.l1(),
                PlanDims::Sym(_) => unreachable!(),
            };
            Ok(SweepGrid {
                axes: vec![
                    axis("L1", "m", l_samples.clone()),
                    axis("L2", "m", l_samples),
                ],
                quantity,
                values,
                minima: vec![marker_of(&opt, vec![l_opt, l_opt])],
            })
        }
        Figure::Fig6 => {
            let r1_samples = linspace(params.r1_range.0, params.r1_range.1, n);
            let r2_samples = linspace(params.r2_range.0, params.r2_range.1, n);
            let mut values = Vec::with_capacity(n * n);
            for &r1 in &r1_samples {
                for &r2 in &r2_samples {
                    let opt = optimize_asym_fixed_ratios(v, AsymRatios::new(r1, r2)?)?;
                    values.push(opt.envelope);
                }
            }
            let b1 = RatioInterval::new(params.r1_range.0, params.r1_range.1)?;
            let b2 = RatioInterval::new(params.r2_range.0, params.r2_range.1)?;
            let opt = optimize_asym_ratio_box(v, b1, b2)?;
            Ok(SweepGrid {
                axes: vec![
                    axis("r1", "1", r1_samples),
                    axis("r2", "1", r2_samples),
                ],
                quantity,
                values,
                minima: vec![marker_of(&opt, vec![params.r1_range.1, params.r2_range.1])],
            })
        }
    }
}

/// Long-form CSV: `axis1,axis2,value` rows in row-major order, then the
/// markers behind a comment line. Dot decimals, LF endings, full precision.
pub fn render_csv(grid: &SweepGrid) -> String {
    let mut out = String::new();
    let header: Vec<String> =
        (1..=grid.axes.len()).map(|i| format!("axis{i}")).collect();
    out.push_str(&header.join(","));
    out.push_str(",value\n");
    let inner = grid.axes[1].samples.len();
    for (i, v) in grid.values.iter().enumerate() {
        let a = grid.axes[0].samples[i / inner];
        let b = grid.axes[1].samples[i % inner];
        out.push_str(&format!("{a},{b},{v}\n"));
    }
    out.push_str("# closed-form minima\n");
    for m in &grid.minima {
        for c in &m.coords {
            out.push_str(&format!("{c},"));
        }
        out.push_str(&format!("{}\n", m.value));
    }
    out
}

pub fn render_json(grid: &SweepGrid) -> String {
    let mut s = serde_json::to_string_pretty(grid).expect("grid serialization cannot fail");
    s.push('\n');
    s
}
