//! The `lshape` command: optimization, degeneracy reporting, case-study
//! analysis, figure-grid sweeps, and randomized closed-form-vs-oracle checks
//! on top of the `lshape` library.
//!
//! Exit codes: 0 success, 2 argument or input validation failure, 1 internal
//! inconsistency or a failed `check` run.

pub mod check;
pub mod cli;
pub mod output;
pub mod sweep;

pub use cli::run;
