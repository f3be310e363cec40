//! Wiener averages, ε-period search, logarithms of invertible sequences and the
//! step-sequence density gap. Every almost-periodicity statement is relative to an
//! explicit window.

mod gap;
mod log;
mod periods;
mod wiener;
mod window;

pub use gap::{density_gap_report, GapPipeline, GapRecord, GapReport, NearPeriod, WienerTraceRow};
pub use log::{bounded_log, max_exp_residual};
pub use periods::{
    ap_falsify_step, find_epsilon_periods, IntervalOutcome, IntervalResult, PeriodSearch,
    ShiftWitness, StepWitness,
};
pub use wiener::{atom_mass_sum, dirichlet_bound, wiener_average, wiener_report, WienerReport, WienerRow};
pub use window::{SequenceWindow, WindowSource};
