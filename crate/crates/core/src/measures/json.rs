//! The measure description format shared with the command line:
//!
//! ```json
//! {"atoms": [{"p": 1, "q": 2, "re_num": 1, "re_den": 2, "im_num": 0, "im_den": 1}],
//!  "trigpoly": [{"n": 3, "re_num": 1, "re_den": 20}],
//!  "riesz": [ ...Riesz product specs... ]}
//! ```
//!
//! Missing denominators default to 1 and missing imaginary parts to 0. An atom may give
//! `"turns": <float>` instead of `p`/`q`; such measures are approximate.

use serde::{Deserialize, Serialize};

use super::{Atom, ContinuousPart, DiscreteMeasure, MeasureSum, Position, TrigPolynomial};
use crate::arith::{rat, reduce_angle, ComplexRational, FloatAngle, Scalar};
use crate::error::{invalid, Result};
use crate::lacunary::RieszSpecJson;

fn one() -> i64 {
    1
}

fn is_zero(x: &i64) -> bool {
    *x == 0
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AtomJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub turns: Option<f64>,
    pub re_num: i64,
    #[serde(default = "one")]
    pub re_den: i64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub im_num: i64,
    #[serde(default = "one")]
    pub im_den: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub n: i64,
    pub re_num: i64,
    #[serde(default = "one")]
    pub re_den: i64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub im_num: i64,
    #[serde(default = "one")]
    pub im_den: i64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
pub struct MeasureJson {
    #[serde(default)]
    pub atoms: Vec<AtomJson>,
    #[serde(default)]
    pub trigpoly: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub riesz: Vec<RieszSpecJson>,
}

fn complex(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Result<ComplexRational> {
    if re_den == 0 || im_den == 0 {
        return invalid("zero denominator in a mass or coefficient");
    }
    Ok(ComplexRational::new(rat(re_num, re_den), rat(im_num, im_den)))
}

impl AtomJson {
    pub fn exact(p: i64, q: i64, mass: (i64, i64)) -> Self {
        AtomJson {
            p: Some(p),
            q: Some(q),
            turns: None,
            re_num: mass.0,
            re_den: mass.1,
            im_num: 0,
            im_den: 1,
        }
    }

    pub fn to_atom(&self) -> Result<Atom> {
        let position = match (self.p, self.q, self.turns) {
            (Some(p), Some(q), None) => Position::Exact(reduce_angle(p, q)?),
            (None, None, Some(t)) => Position::Float(FloatAngle::from_turns(t)?),
            _ => return invalid("an atom needs either p and q, or turns"),
        };
        Ok(Atom {
            position,
            mass: Scalar::Exact(complex(self.re_num, self.re_den, self.im_num, self.im_den)?),
        })
    }
}

impl TermJson {
    pub fn real(n: i64, num: i64, den: i64) -> Self {
        TermJson {
            n,
            re_num: num,
            re_den: den,
            im_num: 0,
            im_den: 1,
        }
    }
}

impl MeasureJson {
    pub fn to_measure(&self) -> Result<MeasureSum> {
        let discrete = DiscreteMeasure::from_atoms(
            self.atoms.iter().map(AtomJson::to_atom).collect::<Result<Vec<_>>>()?,
        );
        let mut continuous = Vec::new();
        if !self.trigpoly.is_empty() {
            let terms = self
                .trigpoly
                .iter()
                .map(|t| {
                    Ok((t.n, Scalar::Exact(complex(t.re_num, t.re_den, t.im_num, t.im_den)?)))
                })
                .collect::<Result<Vec<_>>>()?;
            continuous.push(ContinuousPart::Trig(TrigPolynomial::from_coeffs(terms)));
        }
        for r in &self.riesz {
            continuous.push(ContinuousPart::Riesz(r.to_spec()?));
        }
        Ok(MeasureSum::new(discrete, continuous))
    }

    pub fn parse(text: &str) -> Result<MeasureSum> {
        let json: MeasureJson = serde_json::from_str(text)
            .map_err(|e| crate::Error::InvalidInput(format!("measure JSON: {e}")))?;
        json.to_measure()
    }
}
