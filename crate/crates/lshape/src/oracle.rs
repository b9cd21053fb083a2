//! Independent numerical verification of the closed-form optimizers.
//!
//! Everything here re-derives optima from the raw envelope expressions with
//! derivative-free searches (golden section in one variable, grid refinement
//! in several) and certifies constrained candidates with first-order KKT
//! residuals. No function in this module reuses a closed-form optimum; that
//! separation is the point, since these are the checks the optimizers are
//! validated against.
//!
//! All searches run fixed iteration counts with no randomness, so identical
//! inputs produce bit-identical outputs.

use serde::Serialize;

use crate::closedform::{
    optimize_asym_fixed_height, optimize_asym_fixed_ratios, optimize_asym_ratio_box,
    optimize_sym_fixed_ratio, optimize_sym_ratio_interval, OptimizationResult, PlanDims,
    RatioInterval,
};
use crate::geometry::{AsymRatios, SymRatio};
use crate::{Error, Result};

/// One-dimensional objective with an explicit validity domain.
pub struct ScalarObjective<'a> {
    f: &'a dyn Fn(f64) -> f64,
    domain: (f64, f64),
}

impl<'a> ScalarObjective<'a> {
    pub fn new(domain: (f64, f64), f: &'a dyn Fn(f64) -> f64) -> Self {
        Self { f, domain }
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    /// Evaluate, rejecting NaN/infinite results with the offending point.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let y = (self.f)(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteEval { point: vec![x] })
        }
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;
const GOLDEN_MAX_ITERS: usize = 400;

/// Golden-section search for the minimum of a unimodal objective on
/// [lo, hi]. Returns (argmin, value). The bracket shrinks by the golden
/// ratio per step until its width drops below tol·max(1, |midpoint|), so
/// the argmin is located to roughly that absolute accuracy.
pub fn golden_section_min(
    f: &ScalarObjective,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Interval(format!(
            "golden-section bracket [{lo}, {hi}] is not a finite ascending interval"
        )));
    }
    let (dlo, dhi) = f.domain();
    if lo < dlo || hi > dhi {
        return Err(Error::Interval(format!(
            "bracket [{lo}, {hi}] leaves the objective's domain [{dlo}, {dhi}]"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::NonPositive { name: "tol", value: tol });
    }
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f.eval(c)?;
    let mut fd = f.eval(d)?;
    for _ in 0..GOLDEN_MAX_ITERS {
        if (b - a) <= tol * (0.5 * (a + b).abs()).max(1.0) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f.eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f.eval(d)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f.eval(x)?))
}

/// Box-shrink factor per refinement level.
pub const GRID_SHRINK: f64 = 3.0;
/// Default samples per axis per level.
pub const GRID_POINTS_PER_AXIS: usize = 33;

fn grid_node(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
    // Endpoints sampled exactly so boundary optima land on the bound.
    if i == 0 {
        lo
    } else if i == n - 1 {
        hi
    } else {
        lo + (hi - lo) * (i as f64 / (n - 1) as f64)
    }
}

/// Brute-force minimization over an axis-aligned box: evaluate a dense grid,
/// shrink the box around the incumbent by [`GRID_SHRINK`] (clamped to the
/// original bounds), repeat for `levels` rounds. Accuracy is roughly the
/// initial axis width × 3^(−levels).
pub fn grid_refine_min(
    f: &dyn Fn(&[f64]) -> f64,
    bounds: &[(f64, f64)],
    levels: usize,
    points_per_axis: usize,
) -> Result<(Vec<f64>, f64)> {
    if bounds.is_empty() {
        return Err(Error::Interval("grid search needs at least one axis".into()));
    }
    for &(lo, hi) in bounds {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Interval(format!(
                "grid axis [{lo}, {hi}] is not a finite ascending interval"
            )));
        }
    }
    if levels == 0 || points_per_axis < 2 {
        return Err(Error::Interval(
            "grid search needs levels >= 1 and points_per_axis >= 2".into(),
        ));
    }
    let dim = bounds.len();
    let total: usize = points_per_axis
        .checked_pow(dim as u32)
        .ok_or_else(|| Error::Interval("grid too large".into()))?;

    let mut cur: Vec<(f64, f64)> = bounds.to_vec();
    let mut best_x = vec![0.0; dim];
    let mut best_f = f64::INFINITY;
    let mut x = vec![0.0; dim];
    for _ in 0..levels {
        for lin in 0..total {
            let mut t = lin;
            for (a, &(lo, hi)) in cur.iter().enumerate() {
                x[a] = grid_node(lo, hi, t % points_per_axis, points_per_axis);
                t /= points_per_axis;
            }
            let y = f(&x);
            if !y.is_finite() {
                return Err(Error::NonFiniteEval { point: x.clone() });
            }
            if y < best_f {
                best_f = y;
                best_x.copy_from_slice(&x);
            }
        }
        for (a, &(olo, ohi)) in bounds.iter().enumerate() {
            let half = (cur[a].1 - cur[a].0) / (2.0 * GRID_SHRINK);
            cur[a] = ((best_x[a] - half).max(olo), (best_x[a] + half).min(ohi));
        }
    }
    Ok((best_x, best_f))
}

/// dS/dB and dS/dr of the width-parametrized symmetric envelope
/// S(B, r) = 4Vr/(B(2r−1)) + B²(2r−1).
pub fn sym_envelope_gradient(v: f64, b: f64, r: f64) -> (f64, f64) {
    let m = 2.0 * r - 1.0;
    let ds_db = 2.0 * b * m - 4.0 * v * r / (b * b * m);
    let ds_dr = 2.0 * b * b - 4.0 * v / (b * m * m);
    (ds_db, ds_dr)
}

/// Gradient of the asymmetric envelope in (L1, L2, r1, r2) with the height
/// eliminated through the volume constraint:
/// S = L1·L2·k + 2V(L1+L2)/(L1·L2·k), k = r1 + r2 − r1·r2.
pub fn asym_envelope_gradient(v: f64, l1: f64, l2: f64, r1: f64, r2: f64) -> [f64; 4] {
    let k = r1 + r2 - r1 * r2;
    let ds_dl1 = l2 * k - 2.0 * v / (k * l1 * l1);
    let ds_dl2 = l1 * k - 2.0 * v / (k * l2 * l2);
    let bracket = l1 * l2 - 2.0 * v * (l1 + l2) / (l1 * l2 * k * k);
    [ds_dl1, ds_dl2, (1.0 - r2) * bracket, (1.0 - r1) * bracket]
}

/// Derivative of the fixed-height envelope along L1 with L2 eliminated
/// through the volume constraint (L1·L2 = V/(Hk)):
/// S(L1) = V/H + 2H(L1 + V/(HkL1)).
pub fn fixed_height_slope(v: f64, h: f64, k: f64, l1: f64) -> f64 {
    2.0 * h - 2.0 * v / (k * l1 * l1)
}

/// Candidates this close to a bound count as sitting on it when the active
/// set is recovered.
pub const ACTIVE_SET_TOL: f64 = 1e-9;

/// Residual tolerances for a KKT certificate. Chosen comfortably above
/// double-precision noise and far below any printed figure's resolution.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct KktTolerances {
    /// Max normalized Lagrangian gradient component, |∂L/∂x|·x/S.
    pub stationarity: f64,
    /// Max constraint violation.
    pub primal: f64,
    /// How far a multiplier may dip below zero.
    pub dual: f64,
    /// Max |λ·g| complementary-slackness product.
    pub slackness: f64,
}

impl Default for KktTolerances {
    fn default() -> Self {
        Self { stationarity: 1e-8, primal: 1e-12, dual: 1e-12, slackness: 1e-8 }
    }
}

/// First-order certificate for a candidate optimum: recovered multipliers
/// and the four KKT residuals (stationarity, primal feasibility, dual
/// feasibility, complementary slackness).
#[derive(Debug, Clone, Serialize)]
pub struct KktReport {
    /// (constraint id, λ). Inactive constraints carry λ = 0.
    pub multipliers: Vec<(String, f64)>,
    /// Max |∂L/∂x|·x/S over the variables.
    pub stationarity_residual: f64,
    /// Max constraint violation (0 when feasible).
    pub primal_violation: f64,
    /// Most negative multiplier (0 if none is negative).
    pub dual_violation: f64,
    /// Max |λ_i·g_i|.
    pub slackness_residual: f64,
    pub passed: bool,
    /// Diagnostic when the multiplier system is singular.
    pub note: Option<String>,
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositive { name, value })
    }
}

/// KKT check for the symmetric interval scenario: minimize S(B, r) subject
/// to lo ≤ r ≤ hi. Multipliers are recovered in closed linear form from the
/// stationarity equation in r, given the active set read off the candidate's
/// proximity (≤ [`ACTIVE_SET_TOL`]) to the bounds.
pub fn kkt_check_sym(v: f64, bounds: RatioInterval, b: f64, r: f64) -> Result<KktReport> {
    kkt_check_sym_with(v, bounds, b, r, &KktTolerances::default())
}

pub fn kkt_check_sym_with(
    v: f64,
    bounds: RatioInterval,
    b: f64,
    r: f64,
    tols: &KktTolerances,
) -> Result<KktReport> {
    let v = positive("V", v)?;
    let b = positive("B", b)?;
    if !r.is_finite() || r < 1.0 {
        return Err(Error::Interval(format!("candidate r = {r} must be >= 1")));
    }
    let m = 2.0 * r - 1.0;
    let s = 4.0 * v * r / (b * m) + b * b * m;
    let (ds_db, ds_dr) = sym_envelope_gradient(v, b, r);

    let lo_active = (r - bounds.lo()).abs() <= ACTIVE_SET_TOL;
    let hi_active = (bounds.hi() - r).abs() <= ACTIVE_SET_TOL;
    let mut note = None;
    let (lam_lo, lam_hi) = if lo_active && hi_active {
        note = Some(
            "both interval endpoints are active: the multiplier system is singular".into(),
        );
        (0.0, 0.0)
    } else if lo_active {
        // ∂L/∂r = dS/dr − λ_lo + λ_hi = 0 with λ_hi = 0.
        (ds_dr, 0.0)
    } else if hi_active {
        (0.0, -ds_dr)
    } else {
        (0.0, 0.0)
    };

    let lagr_r = ds_dr - lam_lo + lam_hi;
    let stationarity = ((ds_db * b).abs().max((lagr_r * r).abs())) / s;
    let g_lo = bounds.lo() - r;
    let g_hi = r - bounds.hi();
    let primal = g_lo.max(g_hi).max(0.0);
    let dual = lam_lo.min(lam_hi).min(0.0);
    let slackness = (lam_lo * g_lo).abs().max((lam_hi * g_hi).abs());
    let passed = note.is_none()
        && stationarity <= tols.stationarity
        && primal <= tols.primal
        && dual >= -tols.dual
        && slackness <= tols.slackness;
    Ok(KktReport {
        multipliers: vec![("r lower".into(), lam_lo), ("r upper".into(), lam_hi)],
        stationarity_residual: stationarity,
        primal_violation: primal,
        dual_violation: dual,
        slackness_residual: slackness,
        passed,
        note,
    })
}

/// KKT check for the asymmetric box scenario: minimize S(L1, L2, r1, r2)
/// subject to a_i ≤ r_i ≤ b_i. Same multiplier recovery as the symmetric
/// case, one pair per ratio; L1 and L2 are unconstrained.
pub fn kkt_check_asym(
    v: f64,
    r1_bounds: RatioInterval,
    r2_bounds: RatioInterval,
    candidate: (f64, f64, f64, f64),
) -> Result<KktReport> {
    kkt_check_asym_with(v, r1_bounds, r2_bounds, candidate, &KktTolerances::default())
}

pub fn kkt_check_asym_with(
    v: f64,
    r1_bounds: RatioInterval,
    r2_bounds: RatioInterval,
    candidate: (f64, f64, f64, f64),
    tols: &KktTolerances,
) -> Result<KktReport> {
    let v = positive("V", v)?;
    let (l1, l2, r1, r2) = candidate;
    let l1 = positive("L1", l1)?;
    let l2 = positive("L2", l2)?;
    let r1 = positive("r1", r1)?;
    let r2 = positive("r2", r2)?;

    let k = r1 + r2 - r1 * r2;
    let s = l1 * l2 * k + 2.0 * v * (l1 + l2) / (l1 * l2 * k);
    let [ds_dl1, ds_dl2, ds_dr1, ds_dr2] = asym_envelope_gradient(v, l1, l2, r1, r2);

    let mut note = None;
    let mut recover = |name: &str, bounds: RatioInterval, r: f64, ds_dr: f64| {
        let lo_active = (r - bounds.lo()).abs() <= ACTIVE_SET_TOL;
        let hi_active = (bounds.hi() - r).abs() <= ACTIVE_SET_TOL;
        if lo_active && hi_active {
            note = Some(format!(
                "both {name} endpoints are active: the multiplier system is singular"
            ));
            (0.0, 0.0)
        } else if lo_active {
            (ds_dr, 0.0)
        } else if hi_active {
            (0.0, -ds_dr)
        } else {
            (0.0, 0.0)
        }
    };
    let (lam1_lo, lam1_hi) = recover("r1", r1_bounds, r1, ds_dr1);
    let (lam2_lo, lam2_hi) = recover("r2", r2_bounds, r2, ds_dr2);

    let lagr_r1 = ds_dr1 - lam1_lo + lam1_hi;
    let lagr_r2 = ds_dr2 - lam2_lo + lam2_hi;
    let stationarity = [
        (ds_dl1 * l1).abs(),
        (ds_dl2 * l2).abs(),
        (lagr_r1 * r1).abs(),
        (lagr_r2 * r2).abs(),
    ]
    .into_iter()
    .fold(0.0f64, f64::max)
        / s;

    let gs = [
        r1_bounds.lo() - r1,
        r1 - r1_bounds.hi(),
        r2_bounds.lo() - r2,
        r2 - r2_bounds.hi(),
    ];
    let lams = [lam1_lo, lam1_hi, lam2_lo, lam2_hi];
    let primal = gs.into_iter().fold(0.0f64, f64::max);
    let dual = lams.into_iter().fold(0.0f64, f64::min);
    let slackness = gs
        .iter()
        .zip(&lams)
        .map(|(g, l)| (g * l).abs())
        .fold(0.0f64, f64::max);
    let passed = note.is_none()
        && stationarity <= tols.stationarity
        && primal <= tols.primal
        && dual >= -tols.dual
        && slackness <= tols.slackness;
    Ok(KktReport {
        multipliers: vec![
            ("r1 lower".into(), lam1_lo),
            ("r1 upper".into(), lam1_hi),
            ("r2 lower".into(), lam2_lo),
            ("r2 upper".into(), lam2_hi),
        ],
        stationarity_residual: stationarity,
        primal_violation: primal,
        dual_violation: dual,
        slackness_residual: slackness,
        passed,
        note,
    })
}

/// Relative tolerance on the objective for closed-form-vs-oracle agreement.
pub const VERIFY_OBJECTIVE_RTOL: f64 = 1e-6;
/// Relative tolerance on optimum coordinates for agreement.
pub const VERIFY_POINT_RTOL: f64 = 1e-5;

const GOLDEN_TOL: f64 = 1e-10;
const GRID_LEVELS_2D: usize = 12;
const GRID_LEVELS_4D: usize = 14;
const GRID_POINTS_4D: usize = 11;

/// Raw inputs for one scenario verification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ScenarioInput {
    SymFixedRatio { v: f64, r: f64 },
    SymRatioInterval { v: f64, lo: f64, hi: f64 },
    AsymFixedRatios { v: f64, r1: f64, r2: f64 },
    AsymRatioBox { v: f64, r1_bounds: (f64, f64), r2_bounds: (f64, f64) },
    AsymFixedHeight { v: f64, h: f64, r1: f64, r2: f64 },
}

/// Closed form vs numerical oracle for one scenario instance.
#[derive(Debug, Clone, Serialize)]
pub struct OracleComparison {
    pub closed_form: OptimizationResult,
    /// Numerical argmin in the scenario's free coordinates.
    pub numerical_point: Vec<f64>,
    pub numerical_value: f64,
    /// Max per-coordinate relative gap between the two argmins.
    pub rel_error_point: f64,
    pub rel_error_objective: f64,
    pub agrees: bool,
}

fn comparison(
    closed: OptimizationResult,
    cf_point: &[f64],
    numerical_point: Vec<f64>,
    numerical_value: f64,
) -> OracleComparison {
    let rel_error_point = cf_point
        .iter()
        .zip(&numerical_point)
        .map(|(c, n)| (c - n).abs() / c.abs())
        .fold(0.0f64, f64::max);
    let rel_error_objective = (numerical_value - closed.envelope).abs() / closed.envelope;
    let agrees =
        rel_error_objective <= VERIFY_OBJECTIVE_RTOL && rel_error_point <= VERIFY_POINT_RTOL;
    OracleComparison {
        closed_form: closed,
        numerical_point,
        numerical_value,
        rel_error_point,
        rel_error_objective,
        agrees,
    }
}

/// Doubling bracket for the symmetric width search: the lower end guards the
/// B → 0 pole, the upper end grows until the envelope clearly rises again.
fn sym_width_bracket(f: &dyn Fn(f64) -> f64, v: f64) -> (f64, f64) {
    let lo = 1e-3;
    let seed = v.cbrt();
    let reference = 2.0 * f(seed);
    let mut hi = 2.0 * seed;
    while f(hi) <= reference && hi < 1e12 {
        hi *= 2.0;
    }
    (lo, hi)
}

/// Grid refinement that may widen unconstrained axes when the incumbent
/// lands on their edge. Ratio axes are hard bounds and never grow.
fn grid_with_expansion(
    f: &dyn Fn(&[f64]) -> f64,
    bounds: &[(f64, f64)],
    expandable: &[bool],
    levels: usize,
    points_per_axis: usize,
) -> Result<(Vec<f64>, f64)> {
    let mut cur = bounds.to_vec();
    for _ in 0..5 {
        let (x, val) = grid_refine_min(f, &cur, levels, points_per_axis)?;
        let mut grew = false;
        for (a, &(lo, hi)) in cur.clone().iter().enumerate() {
            if !expandable[a] {
                continue;
            }
            let w = hi - lo;
            if x[a] <= lo + 1e-3 * w {
                cur[a].0 = (lo / 4.0).max(1e-12);
                grew = true;
            } else if x[a] >= hi - 1e-3 * w {
                cur[a].1 = hi * 4.0;
                grew = true;
            }
        }
        if !grew {
            return Ok((x, val));
        }
    }
    grid_refine_min(f, &cur, levels, points_per_axis)
}

/// Run the numerical method matching a scenario (golden section for one free
/// variable, grid refinement otherwise) and compare it against the closed
/// form at [`VERIFY_OBJECTIVE_RTOL`] / [`VERIFY_POINT_RTOL`].
pub fn verify_scenario(input: &ScenarioInput) -> Result<OracleComparison> {
    match *input {
        ScenarioInput::SymFixedRatio { v, r } => {
            let closed = optimize_sym_fixed_ratio(v, SymRatio::new(r)?)?;
            let m = 2.0 * r - 1.0;
            let f = move |b: f64| 4.0 * v * r / (b * m) + b * b * m;
            let (lo, hi) = sym_width_bracket(&f, v);
            let obj = ScalarObjective::new((0.0, f64::INFINITY), &f);
            let (b_num, s_num) = golden_section_min(&obj, lo, hi, GOLDEN_TOL)?;
            let cf_b = match closed.dims {
                PlanDims::Sym(d) => d.b(),
                PlanDims::Asym(_) => unreachable!(),
            };
            Ok(comparison(closed, &[cf_b], vec![b_num], s_num))
        }
        ScenarioInput::SymRatioInterval { v, lo, hi } => {
            let closed = optimize_sym_ratio_interval(v, RatioInterval::new(lo, hi)?)?;
            let f = move |x: &[f64]| {
                let (b, r) = (x[0], x[1]);
                let m = 2.0 * r - 1.0;
                4.0 * v * r / (b * m) + b * b * m
            };
            let scale = v.cbrt();
            let (x, val) = grid_with_expansion(
                &f,
                &[(0.05 * scale, 4.0 * scale), (lo, hi)],
                &[true, false],
                GRID_LEVELS_2D,
                GRID_POINTS_PER_AXIS,
            )?;
            let (cf_b, cf_r) = match closed.dims {
                PlanDims::Sym(d) => (d.b(), d.ratio().get()),
                PlanDims::Asym(_) => unreachable!(),
            };
            Ok(comparison(closed, &[cf_b, cf_r], x, val))
        }
        ScenarioInput::AsymFixedRatios { v, r1, r2 } => {
            let closed = optimize_asym_fixed_ratios(v, AsymRatios::new(r1, r2)?)?;
            let k = r1 + r2 - r1 * r2;
            let f = move |x: &[f64]| {
                let (l1, l2) = (x[0], x[1]);
                l1 * l2 * k + 2.0 * v * (l1 + l2) / (l1 * l2 * k)
            };
            let scale = v.cbrt();
            let axis = (scale / 8.0, 8.0 * scale);
            let (x, val) = grid_with_expansion(
                &f,
                &[axis, axis],
                &[true, true],
                GRID_LEVELS_2D,
                GRID_POINTS_PER_AXIS,
            )?;
            let cf_l = match closed.dims {
                PlanDims::Asym(d) => d.l1(),
                PlanDims::Sym(_) => unreachable!(),
            };
            Ok(comparison(closed, &[cf_l, cf_l], x, val))
        }
        ScenarioInput::AsymRatioBox { v, r1_bounds, r2_bounds } => {
            let closed = optimize_asym_ratio_box(
                v,
                RatioInterval::new(r1_bounds.0, r1_bounds.1)?,
                RatioInterval::new(r2_bounds.0, r2_bounds.1)?,
            )?;
            let f = move |x: &[f64]| {
                let (l1, l2, r1, r2) = (x[0], x[1], x[2], x[3]);
                let k = r1 + r2 - r1 * r2;
                l1 * l2 * k + 2.0 * v * (l1 + l2) / (l1 * l2 * k)
            };
            let scale = v.cbrt();
            let axis = (scale / 8.0, 8.0 * scale);
            let (x, val) = grid_with_expansion(
                &f,
                &[axis, axis, r1_bounds, r2_bounds],
                &[true, true, false, false],
                GRID_LEVELS_4D,
                GRID_POINTS_4D,
            )?;
            let cf_l = match closed.dims {
                PlanDims::Asym(d) => d.l1(),
                PlanDims::Sym(_) => unreachable!(),
            };
            Ok(comparison(closed, &[cf_l, cf_l, r1_bounds.1, r2_bounds.1], x, val))
        }
        ScenarioInput::AsymFixedHeight { v, h, r1, r2 } => {
            let closed = optimize_asym_fixed_height(v, h, AsymRatios::new(r1, r2)?)?;
            let k = r1 + r2 - r1 * r2;
            let c = v / (h * k);
            let f = move |l1: f64| v / h + 2.0 * h * (l1 + c / l1);
            let lo = 1e-3;
            let mut hi = 1.0;
            while f(2.0 * hi) < f(hi) && hi < 1e12 {
                hi *= 2.0;
            }
            hi *= 2.0;
            let obj = ScalarObjective::new((0.0, f64::INFINITY), &f);
            let (l1_num, s_num) = golden_section_min(&obj, lo, hi, GOLDEN_TOL)?;
            let cf_l = match closed.dims {
                PlanDims::Asym(d) => d.l1(),
                PlanDims::Sym(_) => unreachable!(),
            };
            Ok(comparison(closed, &[cf_l, cf_l], vec![l1_num, c / l1_num], s_num))
        }
    }
}
