use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::measures::{DiscreteMeasure, Enclosure};

/// Largest power accepted by [`spectral_radius_upper`].
pub const MAX_RADIUS_POWER: u32 = 12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusBounds {
    /// Enclosures of `‖μ^{∗m}‖^{1/m}`, `m = 1…M`; each is an upper bound on `r(μ)`.
    pub upper: Vec<Enclosure>,
    /// Running minimum of the upper ends.
    pub running_min: Vec<f64>,
}

fn root_down(x: f64, m: u32) -> f64 {
    if m == 1 || x == 0.0 || x == 1.0 {
        x
    } else {
        x.powf(1.0 / m as f64).next_down()
    }
}

fn root_up(x: f64, m: u32) -> f64 {
    if m == 1 || x == 0.0 || x == 1.0 {
        x
    } else {
        x.powf(1.0 / m as f64).next_up()
    }
}

/// `‖μ^{∗m}‖^{1/m}` for `m = 1…M`, with atom caps from the environment.
pub fn spectral_radius_upper(m: &DiscreteMeasure, powers: u32) -> Result<RadiusBounds> {
    spectral_radius_upper_with(m, powers, &Limits::from_env())
}

pub fn spectral_radius_upper_with(
    m: &DiscreteMeasure,
    powers: u32,
    limits: &Limits,
) -> Result<RadiusBounds> {
    if !m.is_exact() {
        return Err(Error::NotDecidable(
            "power norms of a measure with approximate atoms".into(),
        ));
    }
    if powers == 0 || powers > MAX_RADIUS_POWER {
        return Err(Error::ResourceLimit {
            what: "radius power",
            requested: powers as u128,
            limit: MAX_RADIUS_POWER as u128,
        });
    }
    let mut upper = Vec::with_capacity(powers as usize);
    let mut running_min = Vec::with_capacity(powers as usize);
    let mut power = m.clone();
    for k in 1..=powers {
        if k > 1 {
            power = power.convolve_capped(m, limits.max_atoms)?;
        }
        let tv = power.total_variation();
        let e = Enclosure {
            lo: root_down(tv.lo, k),
            hi: root_up(tv.hi, k),
        };
        let best = running_min.last().map_or(e.hi, |&b: &f64| b.min(e.hi));
        upper.push(e);
        running_min.push(best);
    }
    Ok(RadiusBounds { upper, running_min })
}
