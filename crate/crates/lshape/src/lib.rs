//! Envelope-area-minimizing geometry for L-shaped building plans.
//!
//! An L-shaped plan encloses a prescribed volume; the question is which
//! dimensions minimize its envelope (walls plus flat roof, ground slab
//! excluded). The crate answers it three ways that check each other:
//!
//! * [`geometry`] — the exact model: volumes, envelope areas, floor areas,
//!   fill factor, and the validity rules every other module relies on.
//! * [`closedform`] — closed-form optimizers for five constraint scenarios,
//!   a degeneracy detector for the cuboid collapse, and a compactness score.
//! * [`oracle`] — independent numerical minimizers (golden section, grid
//!   refinement) and KKT residual certificates that validate every closed
//!   form without sharing its derivation.
//! * [`casestudy`] — ingestion of measured building specs and
//!   original-vs-optimal comparison reports.

pub mod casestudy;
pub mod closedform;
pub mod geometry;
pub mod oracle;

mod error;

pub use error::{Error, Result};

/// Round to `decimals` places with ties away from zero, for presentation.
/// Library computations never round; only render layers call this.
pub fn round_half_up(x: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    if x >= 0.0 {
        (x * scale + 0.5).floor() / scale
    } else {
        (x * scale - 0.5).ceil() / scale
    }
}
