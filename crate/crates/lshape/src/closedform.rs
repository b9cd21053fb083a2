//! Closed-form envelope minimizers for the five constraint scenarios, the
//! degeneracy detector, and the compactness score.
//!
//! Every optimizer here is a transcription of an exact first-order solution;
//! none of them iterates. The [`crate::oracle`] module re-derives each
//! optimum numerically and certifies the constrained ones with KKT
//! residuals, so any transcription slip shows up as a disagreement.
//!
//! Boundary structure worth knowing: the symmetric per-ratio minimum
//! 3(4V²r²/(2r−1))^(1/3) increases strictly in r above 1, so an interval
//! constraint r ∈ [a,b] is always active at the lower bound. The asymmetric
//! per-ratio minimum 3(4V²/k)^(1/3) decreases strictly in the fill factor k,
//! which increases in each ratio, so a box constraint is always active at
//! both upper bounds.

use serde::Serialize;

use crate::geometry::{AsymDims, AsymRatios, SymDims, SymRatio, RATIO_EXCLUSION_TOL};
use crate::{Error, Result};

/// Which constraint scenario produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioTag {
    SymFixedRatio,
    SymRatioInterval,
    AsymFixedRatios,
    AsymRatioBox,
    AsymFixedHeight,
    DegenerateCuboid,
}

/// Closed ratio interval [lo, hi]. Context decides validity: the symmetric
/// interval scenario needs lo > 1, the asymmetric box needs 0 < lo < hi < 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioInterval {
    lo: f64,
    hi: f64,
}

impl RatioInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || lo <= 0.0 {
            return Err(Error::NonPositive { name: "interval lower bound", value: lo });
        }
        if !hi.is_finite() || hi <= 0.0 {
            return Err(Error::NonPositive { name: "interval upper bound", value: hi });
        }
        if lo >= hi {
            return Err(Error::Interval(format!(
                "lower bound {lo} must be strictly below upper bound {hi}"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

/// An inequality constraint that holds with equality at the optimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ActiveConstraint {
    /// Constrained quantity: "r", "r1" or "r2".
    pub name: &'static str,
    pub side: Side,
    pub bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum PlanDims {
    Sym(SymDims),
    Asym(AsymDims),
}

impl PlanDims {
    pub fn volume(&self) -> f64 {
        match self {
            PlanDims::Sym(d) => d.volume(),
            PlanDims::Asym(d) => d.volume(),
        }
    }

    pub fn envelope(&self) -> f64 {
        match self {
            PlanDims::Sym(d) => d.envelope(),
            PlanDims::Asym(d) => d.envelope(),
        }
    }
}

/// Optimal dimensions for one scenario, with the closed-form envelope and
/// the constraints that fired.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub scenario: ScenarioTag,
    pub dims: PlanDims,
    /// Minimal envelope area from the closed form.
    pub envelope: f64,
    /// Volume the caller asked for.
    pub input_volume: f64,
    pub active_constraints: Vec<ActiveConstraint>,
    pub degenerate: bool,
}

impl OptimizationResult {
    /// Relative gap between the input volume and the volume the returned
    /// dimensions actually enclose.
    pub fn volume_residual(&self) -> f64 {
        (self.dims.volume() - self.input_volume).abs() / self.input_volume
    }

    /// Relative gap between the closed-form envelope and the envelope
    /// recomputed from the returned dimensions.
    pub fn envelope_residual(&self) -> f64 {
        (self.dims.envelope() - self.envelope).abs() / self.envelope
    }
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositive { name, value })
    }
}

/// Minimal envelope for a symmetric plan of volume V at a fixed ratio
/// r = L/B: B = (2Vr/(2r−1)²)^(1/3), L = rB, H = ((2r−1)V/(4r²))^(1/3),
/// S = 3(4V²r²/(2r−1))^(1/3).
pub fn optimize_sym_fixed_ratio(v: f64, ratio: SymRatio) -> Result<OptimizationResult> {
    let v = positive("V", v)?;
    if ratio.is_degenerate() {
        return Err(Error::Degenerate(
            "r = 1 is the cuboid collapse, not an L-shape; use detect_degenerate_cuboid"
                .into(),
        ));
    }
    let r = ratio.get();
    let m = 2.0 * r - 1.0;
    let b = (2.0 * v * r / (m * m)).cbrt();
    let l = r * b;
    let h = (m * v / (4.0 * r * r)).cbrt();
    let s = 3.0 * (4.0 * v * v * r * r / m).cbrt();
    Ok(OptimizationResult {
        scenario: ScenarioTag::SymFixedRatio,
        dims: PlanDims::Sym(SymDims::new(l, b, h)?),
        envelope: s,
        input_volume: v,
        active_constraints: Vec::new(),
        degenerate: false,
    })
}

/// Minimal envelope for a symmetric plan with the ratio confined to
/// [lo, hi], lo > 1. The per-ratio minimum grows with r, so the lower bound
/// is active and the optimum equals the fixed-ratio one at r = lo.
pub fn optimize_sym_ratio_interval(v: f64, bounds: RatioInterval) -> Result<OptimizationResult> {
    if bounds.lo <= 1.0 + RATIO_EXCLUSION_TOL {
        return Err(Error::Interval(format!(
            "symmetric ratio interval must lie strictly above 1, got lower bound {}: \
             the L-form is lost at r = 1",
            bounds.lo
        )));
    }
    let inner = optimize_sym_fixed_ratio(v, SymRatio::new(bounds.lo)?)?;
    Ok(OptimizationResult {
        scenario: ScenarioTag::SymRatioInterval,
        active_constraints: vec![ActiveConstraint {
            name: "r",
            side: Side::Lower,
            bound: bounds.lo,
        }],
        ..inner
    })
}

/// Minimal envelope for an asymmetric plan of volume V at fixed ratios:
/// L1 = L2 = (2V/k²)^(1/3), B_i = r_i·L, H = (kV/4)^(1/3),
/// S = 3(4V²/k)^(1/3), where k is the fill factor.
pub fn optimize_asym_fixed_ratios(v: f64, ratios: AsymRatios) -> Result<OptimizationResult> {
    let v = positive("V", v)?;
    let k = ratios.fill_factor().get();
    let l = (2.0 * v / (k * k)).cbrt();
    let h = (k * v / 4.0).cbrt();
    let s = 3.0 * (4.0 * v * v / k).cbrt();
    Ok(OptimizationResult {
        scenario: ScenarioTag::AsymFixedRatios,
        dims: PlanDims::Asym(AsymDims::new(l, l, ratios.r1() * l, ratios.r2() * l, h)?),
        envelope: s,
        input_volume: v,
        active_constraints: Vec::new(),
        degenerate: false,
    })
}

/// Minimal envelope for an asymmetric plan with each ratio confined to its
/// own interval inside (0,1). The per-ratio minimum falls as the fill factor
/// rises and the fill factor rises with each ratio, so both upper bounds are
/// active and the optimum equals the fixed-ratio one at (hi1, hi2).
pub fn optimize_asym_ratio_box(
    v: f64,
    r1_bounds: RatioInterval,
    r2_bounds: RatioInterval,
) -> Result<OptimizationResult> {
    for (name, b) in [("r1", r1_bounds), ("r2", r2_bounds)] {
        if b.hi >= 1.0 - RATIO_EXCLUSION_TOL {
            return Err(Error::Interval(format!(
                "{name} interval must stay strictly inside (0,1), got upper bound {}: \
                 the plan degenerates into a cuboid at ratio 1",
                b.hi
            )));
        }
    }
    let inner = optimize_asym_fixed_ratios(v, AsymRatios::new(r1_bounds.hi, r2_bounds.hi)?)?;
    Ok(OptimizationResult {
        scenario: ScenarioTag::AsymRatioBox,
        active_constraints: vec![
            ActiveConstraint { name: "r1", side: Side::Upper, bound: r1_bounds.hi },
            ActiveConstraint { name: "r2", side: Side::Upper, bound: r2_bounds.hi },
        ],
        ..inner
    })
}

/// Minimal envelope for an asymmetric plan of volume V at fixed ratios and a
/// prescribed height: L1 = L2 = sqrt(V/(Hk)), B_i = r_i·L,
/// S = V/H + 4H·sqrt(V/(Hk)).
pub fn optimize_asym_fixed_height(
    v: f64,
    h: f64,
    ratios: AsymRatios,
) -> Result<OptimizationResult> {
    let v = positive("V", v)?;
    let h = positive("H", h)?;
    let k = ratios.fill_factor().get();
    let l = (v / (h * k)).sqrt();
    let s = v / h + 4.0 * h * l;
    Ok(OptimizationResult {
        scenario: ScenarioTag::AsymFixedHeight,
        dims: PlanDims::Asym(AsymDims::new(l, l, ratios.r1() * l, ratios.r2() * l, h)?),
        envelope: s,
        input_volume: v,
        active_constraints: Vec::new(),
        degenerate: false,
    })
}

/// The unconstrained optimum every ratio constraint is protecting against:
/// with the ratio free the envelope keeps falling until the footprint is a
/// square and the building is a cuboid. L = B = (2V)^(1/3), H = (V/4)^(1/3),
/// S = 3(2V)^(2/3). Returned as an explicit finding, tagged degenerate.
pub fn detect_degenerate_cuboid(v: f64) -> Result<OptimizationResult> {
    let v = positive("V", v)?;
    let side = (2.0 * v).cbrt();
    let h = (v / 4.0).cbrt();
    let s = 3.0 * side * side;
    Ok(OptimizationResult {
        scenario: ScenarioTag::DegenerateCuboid,
        dims: PlanDims::Sym(SymDims::degenerate(side, h)?),
        envelope: s,
        input_volume: v,
        active_constraints: Vec::new(),
        degenerate: true,
    })
}

/// Inputs whose envelope undercuts the attainable minimum by more than this
/// relative tolerance describe no real symmetric L-plan and are rejected;
/// anything closer counts as numerical noise of an optimal design.
pub const COMPACTNESS_CONSISTENCY_RTOL: f64 = 1e-9;

/// Envelope relative to the fixed-ratio minimum for the same volume and
/// ratio. 1 means the shape is as compact as its constraints allow.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompactnessRatio {
    value: f64,
}

impl CompactnessRatio {
    pub fn get(self) -> f64 {
        self.value
    }
}

/// Score an envelope S against the minimal envelope for volume V at ratio r.
///
/// Values within [`COMPACTNESS_CONSISTENCY_RTOL`] below the minimum clamp to
/// exactly 1; anything lower is an inconsistency (no symmetric L-plan of
/// that volume and ratio has such an envelope).
pub fn compactness(s: f64, v: f64, ratio: SymRatio) -> Result<CompactnessRatio> {
    let s = positive("S", s)?;
    let s_min = optimize_sym_fixed_ratio(v, ratio)?.envelope;
    if s < s_min * (1.0 - COMPACTNESS_CONSISTENCY_RTOL) {
        return Err(Error::Inconsistent(format!(
            "envelope S = {s} lies below the attainable minimum {s_min} for V = {v}, \
             r = {}: no symmetric L-plan has these values",
            ratio.get()
        )));
    }
    let value = s / s_min;
    Ok(CompactnessRatio { value: if value < 1.0 { 1.0 } else { value } })
}

/// Compactness of an existing plan, scored against the optimum for its own
/// volume and ratio.
pub fn compactness_of(d: &SymDims) -> Result<CompactnessRatio> {
    compactness(d.envelope(), d.volume(), d.ratio())
}
