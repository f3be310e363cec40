//! Resource caps shared by the enumerating operations.

use std::env;

/// Environment variable that overrides [`Limits::max_atoms`].
pub const MAX_ATOMS_ENV: &str = "CML_MAX_ATOMS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest Riesz truncation order accepted.
    pub max_truncation: usize,
    /// Largest number of atoms a convolution may produce.
    pub max_atoms: usize,
    /// Largest half-width of an enumeration window.
    pub max_window: i64,
    /// Largest number of coefficients materialized when expanding a Riesz truncation.
    pub max_support: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_truncation: 20,
            max_atoms: 100_000,
            max_window: 1_000_000,
            max_support: 3usize.pow(14),
        }
    }
}

impl Limits {
    /// Defaults with `CML_MAX_ATOMS` applied when it parses as a positive integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(n) = env::var(MAX_ATOMS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
        {
            limits.max_atoms = n;
        }
        limits
    }
}
