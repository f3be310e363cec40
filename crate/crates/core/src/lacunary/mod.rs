//! Lacunary sequences with ratio at least 3, their unique signed-digit representations,
//! tilde sets, Riesz products and almost-disjoint index families.

mod json;
mod riesz;
mod sequence;
mod sierpinski;

pub use json::{BaseJson, CoeffJson, RatJson, RieszSpecJson};
pub use riesz::{
    brown_moran_check, convolve_riesz, riesz_coefficient, riesz_truncation_to_trigpoly,
    BrownMoran, CoeffRule, RieszConvolution, RieszProductSpec,
};
pub use sequence::{represent, tilde_set, IndexSet, LacunarySequence, SignedDigitRep};
pub use sierpinski::{common_prefix_len, prefix_code, sierpinski_member};
