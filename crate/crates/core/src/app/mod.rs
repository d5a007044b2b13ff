//! Sweeps, figure presets, the formula audit and output formats.

pub mod audit;
pub mod emit;
pub mod frozen;
pub mod presets;
pub mod sweep;

pub use audit::{audit_formulas, audit_formulas_with_threads, AuditGrid, DiscrepancyReport, FormulaRecord, Verdict};
pub use emit::{emit_csv, emit_json};
pub use frozen::{frozen_lqfi, FrozenWindow};
pub use presets::{figure_preset, Figure};
pub use sweep::{run_sweep, run_sweep_with_threads, Series, SweepRow, SweepSpec, SweepVar, THREADS_ENV};
