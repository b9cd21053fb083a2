//! Exact geometric model of L-shaped plans.
//!
//! Two ratio conventions coexist and are deliberately kept apart as distinct
//! types. The symmetric plan measures its wings length-over-width,
//! r = L/B > 1; the asymmetric plan measures width-over-length,
//! r_i = B_i/L_i in (0,1). The conventions are reciprocal and never
//! interchangeable, so [`SymRatio`] and [`AsymRatios`] reject each other's
//! ranges outright.
//!
//! A symmetric plan is two congruent wings of plan size L × B meeting at a
//! corner; its footprint is 2LB − B². An asymmetric plan spans a bounding
//! rectangle L1 × L2 of which the L-footprint fills the fraction
//! k = r1 + r2 − r1·r2. Heights are uniform (flat roof); the envelope is
//! wall area plus roof area, with the ground slab excluded. The wall term of
//! the asymmetric envelope, 2(L1+L2)·H, already includes the inner-corner
//! walls: an L's perimeter equals its bounding rectangle's.

use serde::Serialize;

use crate::{Error, Result};

/// Exclusion zone around forbidden ratio boundaries. Ratios this close to a
/// collapse value (r = 1 symmetric; r_i = 0 or 1 asymmetric) are rejected by
/// the normal constructors: the L-form dies there, and the parametric
/// envelope has a pole at r = 1/2 just below the symmetric domain.
pub const RATIO_EXCLUSION_TOL: f64 = 1e-9;

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositive { name, value })
    }
}

/// Symmetric wing aspect ratio r = L/B, strictly above 1 unless explicitly
/// constructed degenerate (r = 1, the square-footprint collapse).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymRatio {
    r: f64,
    degenerate: bool,
}

impl SymRatio {
    pub fn new(r: f64) -> Result<Self> {
        if !r.is_finite() || r <= 0.0 {
            return Err(Error::NonPositive { name: "r", value: r });
        }
        if r <= 1.0 + RATIO_EXCLUSION_TOL {
            return Err(Error::Degenerate(format!(
                "wing aspect ratio r = L/B must exceed 1, got {r}: at r = 1 the footprint \
                 becomes a square and the plan collapses into a cuboid (see \
                 detect_degenerate_cuboid); ratios below 1 belong to the asymmetric \
                 convention r_i = B_i/L_i"
            )));
        }
        Ok(Self { r, degenerate: false })
    }

    /// The collapse value r = 1, only constructible explicitly.
    pub fn degenerate_unit() -> Self {
        Self { r: 1.0, degenerate: true }
    }

    pub fn get(self) -> f64 {
        self.r
    }

    pub fn is_degenerate(self) -> bool {
        self.degenerate
    }
}

/// Asymmetric wing aspect ratios r1 = B1/L1, r2 = B2/L2, both in (0,1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymRatios {
    r1: f64,
    r2: f64,
}

fn check_asym_ratio(name: &'static str, r: f64) -> Result<()> {
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::NonPositive { name, value: r });
    }
    if r <= RATIO_EXCLUSION_TOL {
        return Err(Error::Degenerate(format!(
            "{name} = {r} is within {RATIO_EXCLUSION_TOL:e} of 0: that wing vanishes"
        )));
    }
    if r >= 1.0 - RATIO_EXCLUSION_TOL {
        return Err(Error::Degenerate(format!(
            "{name} = {r} must stay below 1: at {name} = 1 the wing fills its bounding \
             rectangle and the plan degenerates into a cuboid (see \
             detect_degenerate_cuboid); ratios above 1 belong to the symmetric \
             convention r = L/B"
        )));
    }
    Ok(())
}

impl AsymRatios {
    pub fn new(r1: f64, r2: f64) -> Result<Self> {
        check_asym_ratio("r1", r1)?;
        check_asym_ratio("r2", r2)?;
        Ok(Self { r1, r2 })
    }

    pub fn r1(self) -> f64 {
        self.r1
    }

    pub fn r2(self) -> f64 {
        self.r2
    }

    /// Fraction of the bounding rectangle covered by the L-footprint:
    /// k = r1 + r2 − r1·r2 = 1 − (1−r1)(1−r2), strictly inside (0,1) and
    /// strictly increasing in each ratio.
    pub fn fill_factor(self) -> FillFactor {
        FillFactor { k: self.r1 + self.r2 - self.r1 * self.r2 }
    }
}

/// Footprint fraction k of an asymmetric plan. Only obtainable from
/// [`AsymRatios::fill_factor`], so 0 < k < 1 always holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FillFactor {
    k: f64,
}

impl FillFactor {
    pub fn get(self) -> f64 {
        self.k
    }
}

/// Symmetric L-plan: two congruent wings of plan size L × B and height H.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymDims {
    #[serde(rename = "L")]
    l: f64,
    #[serde(rename = "B")]
    b: f64,
    #[serde(rename = "H")]
    h: f64,
    degenerate: bool,
}

impl SymDims {
    /// A proper L-shape: positive dimensions with L/B beyond the exclusion
    /// tolerance above 1.
    pub fn new(l: f64, b: f64, h: f64) -> Result<Self> {
        let l = positive("L", l)?;
        let b = positive("B", b)?;
        let h = positive("H", h)?;
        let r = l / b;
        if r < 1.0 - RATIO_EXCLUSION_TOL {
            return Err(Error::Degenerate(format!(
                "L/B = {r} is below 1: wings must be longer than wide (swap L and B, \
                 or use the asymmetric model)"
            )));
        }
        if r <= 1.0 + RATIO_EXCLUSION_TOL {
            return Err(Error::Degenerate(format!(
                "L/B = {r} is within {RATIO_EXCLUSION_TOL:e} of 1: the footprint is a \
                 square and the L-form is lost; use SymDims::degenerate for the cuboid"
            )));
        }
        Ok(Self { l, b, h, degenerate: false })
    }

    /// The collapsed form with a square footprint (L = B), tagged degenerate.
    pub fn degenerate(side: f64, h: f64) -> Result<Self> {
        let side = positive("side", side)?;
        let h = positive("H", h)?;
        Ok(Self { l: side, b: side, h, degenerate: true })
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Wing aspect ratio L/B, carrying the degeneracy tag along.
    pub fn ratio(&self) -> SymRatio {
        if self.degenerate {
            SymRatio::degenerate_unit()
        } else {
            SymRatio { r: self.l / self.b, degenerate: false }
        }
    }

    /// Enclosed volume H·(2LB − B²).
    pub fn volume(&self) -> f64 {
        self.h * self.floor_area()
    }

    /// Envelope 4LH + 2LB − B²: wall area plus flat-roof area, ground slab
    /// excluded.
    pub fn envelope(&self) -> f64 {
        4.0 * self.l * self.h + 2.0 * self.l * self.b - self.b * self.b
    }

    /// Footprint area 2LB − B².
    pub fn floor_area(&self) -> f64 {
        2.0 * self.l * self.b - self.b * self.b
    }
}

/// Asymmetric L-plan: wing lengths L1, L2, wing widths B1, B2, height H,
/// spanning a bounding rectangle L1 × L2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymDims {
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
    degenerate: bool,
}

impl AsymDims {
    /// A proper asymmetric L-shape: positive dimensions, each width strictly
    /// inside its wing length (ratios in the open unit interval beyond the
    /// exclusion tolerance).
    pub fn new(l1: f64, l2: f64, b1: f64, b2: f64, h: f64) -> Result<Self> {
        let l1 = positive("L1", l1)?;
        let l2 = positive("L2", l2)?;
        let b1 = positive("B1", b1)?;
        let b2 = positive("B2", b2)?;
        let h = positive("H", h)?;
        Self::check_wing(1, b1 / l1)?;
        Self::check_wing(2, b2 / l2)?;
        Ok(Self { l1, l2, b1, b2, h, degenerate: false })
    }

    fn check_wing(wing: u8, r: f64) -> Result<()> {
        if r >= 1.0 - RATIO_EXCLUSION_TOL {
            return Err(Error::Degenerate(format!(
                "degenerate wing {wing}: B{wing}/L{wing} = {r} reaches 1, the wing fills \
                 its bounding rectangle (use AsymDims::degenerate for the cuboid)"
            )));
        }
        if r <= RATIO_EXCLUSION_TOL {
            return Err(Error::Degenerate(format!(
                "degenerate wing {wing}: B{wing}/L{wing} = {r} is within \
                 {RATIO_EXCLUSION_TOL:e} of 0, the wing vanishes"
            )));
        }
        Ok(())
    }

    /// The collapsed form where widths may equal lengths, tagged degenerate.
    pub fn degenerate(l1: f64, l2: f64, b1: f64, b2: f64, h: f64) -> Result<Self> {
        let l1 = positive("L1", l1)?;
        let l2 = positive("L2", l2)?;
        let b1 = positive("B1", b1)?;
        let b2 = positive("B2", b2)?;
        let h = positive("H", h)?;
        if b1 > l1 || b2 > l2 {
            return Err(Error::Degenerate(
                "widths must not exceed their wing lengths (B_i <= L_i)".into(),
            ));
        }
        Ok(Self { l1, l2, b1, b2, h, degenerate: true })
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

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Wing aspect ratios (B1/L1, B2/L2). Fails for degenerate-tagged dims,
    /// whose ratios sit on the forbidden boundary.
    pub fn ratios(&self) -> Result<AsymRatios> {
        AsymRatios::new(self.b1 / self.l1, self.b2 / self.l2)
    }

    fn fill(&self) -> f64 {
        let r1 = self.b1 / self.l1;
        let r2 = self.b2 / self.l2;
        r1 + r2 - r1 * r2
    }

    /// Enclosed volume H·L1·L2·k.
    pub fn volume(&self) -> f64 {
        self.h * self.l1 * self.l2 * self.fill()
    }

    /// Envelope L1·L2·k + 2(L1+L2)·H: flat roof plus the full wall perimeter,
    /// ground slab excluded.
    pub fn envelope(&self) -> f64 {
        self.l1 * self.l2 * self.fill() + 2.0 * (self.l1 + self.l2) * self.h
    }

    /// Footprint area L1·L2·k.
    pub fn floor_area(&self) -> f64 {
        self.l1 * self.l2 * self.fill()
    }
}

/// Envelope of a symmetric plan as a function of the wing width B alone,
/// with the ratio and volume held fixed: 4Vr/(B(2r−1)) + B²(2r−1).
///
/// Equals [`SymDims::envelope`] of the plan reconstructed with L = rB and
/// the height chosen to enclose V. Defined for r ≥ 1; at the degenerate
/// r = 1 it is the cuboid envelope.
pub fn sym_envelope_parametric(b: f64, r: SymRatio, v: f64) -> Result<f64> {
    let b = positive("B", b)?;
    let v = positive("V", v)?;
    let r = r.get();
    let m = 2.0 * r - 1.0;
    Ok(4.0 * v * r / (b * m) + b * b * m)
}

/// Height under which the L-footprint spanned by L1, L2 and the given ratios
/// encloses exactly V: H = V/(L1·L2·k).
pub fn asym_height_for_volume(v: f64, l1: f64, l2: f64, r: AsymRatios) -> Result<f64> {
    let v = positive("V", v)?;
    let l1 = positive("L1", l1)?;
    let l2 = positive("L2", l2)?;
    Ok(v / (l1 * l2 * r.fill_factor().get()))
}
