//! Idempotents, spectra of trigonometric polynomials, spectral-radius bounds, natural
//! spectrum gaps for Riesz products, the exponential obstruction for `δ_α` and limits along
//! index sets.

mod filter;
mod idempotent;
mod obstruction;
mod radius;
mod spectrum;

pub use filter::{filter_limit, index_frequencies, FilterLimit};
pub use idempotent::{
    enumerate_idempotents, idempotent_from_residues, is_idempotent, transform_is_indicator,
    MAX_IDEMPOTENT_MODULUS,
};
pub use obstruction::{
    drift, exp_obstruction, pi_rational, ObstructionWitness, RATIONALITY_MAX_DEN, RATIONALITY_TOL,
};
pub use radius::{spectral_radius_upper, spectral_radius_upper_with, RadiusBounds, MAX_RADIUS_POWER};
pub use spectrum::{
    discrete_radius_report, natural_spectrum_gap, trigpoly_spectrum, SpectrumKind, SpectrumReport,
};
