//! Riesz product description format:
//!
//! ```json
//! {"base": {"kind": "power", "b": 4, "K": 12},
//!  "coeffs": {"kind": "constant", "num": 1, "den": 1},
//!  "K": 6}
//! ```
//!
//! `base` may also be `{"kind": "list", "terms": [...]}`. Coefficient rules are `constant`,
//! `geometric` (`a_k = (num/den)^k`), `list` (`values: [{"num", "den"}]`) and `indicator`
//! (`indices`, optional value `num`/`den`, optional `infinite` flag).

use serde::{Deserialize, Serialize};

use super::riesz::{CoeffRule, RieszProductSpec};
use super::sequence::{IndexSet, LacunarySequence};
use crate::arith::{rat, Rational};
use crate::error::{invalid, Result};

fn one() -> i64 {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BaseJson {
    Power {
        b: i64,
        #[serde(rename = "K")]
        k: usize,
    },
    List {
        terms: Vec<i64>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RatJson {
    pub num: i64,
    #[serde(default = "one")]
    pub den: i64,
}

impl RatJson {
    fn to_rational(&self) -> Result<Rational> {
        if self.den == 0 {
            return invalid("zero denominator in a coefficient");
        }
        Ok(rat(self.num, self.den))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CoeffJson {
    Constant {
        num: i64,
        #[serde(default = "one")]
        den: i64,
    },
    Geometric {
        num: i64,
        #[serde(default = "one")]
        den: i64,
    },
    List {
        values: Vec<RatJson>,
    },
    Indicator {
        indices: Vec<usize>,
        #[serde(default = "one")]
        num: i64,
        #[serde(default = "one")]
        den: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        infinite: Option<bool>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RieszSpecJson {
    pub base: BaseJson,
    pub coeffs: CoeffJson,
    #[serde(rename = "K")]
    pub k: usize,
}

impl BaseJson {
    pub fn to_sequence(&self) -> Result<LacunarySequence> {
        match self {
            BaseJson::Power { b, k } => LacunarySequence::power(*b, *k),
            BaseJson::List { terms } => LacunarySequence::from_terms(terms.clone()),
        }
    }
}

impl CoeffJson {
    pub fn to_rule(&self) -> Result<CoeffRule> {
        Ok(match self {
            CoeffJson::Constant { num, den } => {
                CoeffRule::Constant(RatJson { num: *num, den: *den }.to_rational()?)
            }
            CoeffJson::Geometric { num, den } => {
                CoeffRule::Geometric(RatJson { num: *num, den: *den }.to_rational()?)
            }
            CoeffJson::List { values } => CoeffRule::Listed(
                values.iter().map(RatJson::to_rational).collect::<Result<_>>()?,
            ),
            CoeffJson::Indicator {
                indices,
                num,
                den,
                infinite,
            } => CoeffRule::Indicator {
                indices: IndexSet::from_unsorted(indices.clone())?,
                value: RatJson { num: *num, den: *den }.to_rational()?,
                declared_infinite: *infinite,
            },
        })
    }
}

impl RieszSpecJson {
    pub fn to_spec(&self) -> Result<RieszProductSpec> {
        RieszProductSpec::new(self.base.to_sequence()?, self.coeffs.to_rule()?, self.k)
    }

    pub fn parse(text: &str) -> Result<RieszProductSpec> {
        let json: RieszSpecJson = serde_json::from_str(text)
            .map_err(|e| crate::Error::InvalidInput(format!("Riesz spec JSON: {e}")))?;
        json.to_spec()
    }
}
