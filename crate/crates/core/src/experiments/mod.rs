//! Batch runners behind the `cml` binary. Each experiment reads a JSON config, computes a
//! report of derived quantities and named checks, and never claims more than its window.

mod analysis_runs;
mod gelfand_runs;
mod lacunary_runs;
mod output;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{invalid, Error, Result};
use crate::limits::Limits;
use crate::verdict::Verdict;

pub use analysis_runs::{run_ap, run_gap, run_wiener, ApConfig, GapCandidate, GapConfig, WienerConfig};
pub use gelfand_runs::{
    run_filterlimit, run_idem, run_obstruct, run_spectrum, FilterConfig, IdemConfig,
    ObstructConfig, SpectrumConfig,
};
pub use lacunary_runs::{run_nonsep, run_riesz, NonsepConfig, RieszConfig};
pub use output::{to_csv, to_json};

/// The candidate corpus shipped with the crate for the `gap` experiment.
pub const BUNDLED_GAP_CORPUS: &str = include_str!("../../data/gap_corpus.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    Riesz,
    Nonsep,
    Gap,
    Wiener,
    Ap,
    Idem,
    Spectrum,
    Obstruct,
    Filterlimit,
}

impl Experiment {
    pub const ALL: [Experiment; 9] = [
        Experiment::Riesz,
        Experiment::Nonsep,
        Experiment::Gap,
        Experiment::Wiener,
        Experiment::Ap,
        Experiment::Idem,
        Experiment::Spectrum,
        Experiment::Obstruct,
        Experiment::Filterlimit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Riesz => "riesz",
            Experiment::Nonsep => "nonsep",
            Experiment::Gap => "gap",
            Experiment::Wiener => "wiener",
            Experiment::Ap => "ap",
            Experiment::Idem => "idem",
            Experiment::Spectrum => "spectrum",
            Experiment::Obstruct => "obstruct",
            Experiment::Filterlimit => "filterlimit",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown experiment {s:?}")))
    }
}

/// Command-line overrides applied on top of a config file.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RunOptions {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trunc: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub parallel: bool,
}

impl RunOptions {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("eps", self.eps), ("delta", self.delta)] {
            if let Some(x) = v {
                if !(x > 0.0) || !x.is_finite() {
                    return invalid(format!("{name} must be a positive number"));
                }
            }
        }
        if let Some(w) = self.window {
            check_window(w)?;
        }
        if let Some(k) = self.trunc {
            check_truncation(k)?;
        }
        Ok(())
    }
}

pub(crate) fn check_window(w: i64) -> Result<i64> {
    let max = Limits::default().max_window;
    if w < 1 {
        return invalid(format!("window {w} must be at least 1"));
    }
    if w > max {
        return Err(Error::ResourceLimit {
            what: "window",
            requested: w as u128,
            limit: max as u128,
        });
    }
    Ok(w)
}

pub(crate) fn check_truncation(k: usize) -> Result<usize> {
    let max = Limits::default().max_truncation;
    if k > max {
        return Err(Error::ResourceLimit {
            what: "truncation",
            requested: k as u128,
            limit: max as u128,
        });
    }
    Ok(k)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, verdict: Verdict, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            verdict,
            detail: detail.into(),
        }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Self::new(name, Verdict::from_bool(ok), detail)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub experiment: Experiment,
    pub inputs: Value,
    pub derived: Value,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    /// Only filled on request, so that reports stay byte-identical across runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl ExperimentReport {
    pub(crate) fn new<C: Serialize>(
        experiment: Experiment,
        config: &C,
        opts: &RunOptions,
        derived: Value,
        checks: Vec<Check>,
    ) -> Self {
        let verdict = if checks.iter().any(|c| c.verdict.is_fail()) {
            Verdict::Fail
        } else if checks.iter().all(|c| c.verdict == Verdict::Pass) {
            Verdict::Pass
        } else {
            Verdict::Inconclusive
        };
        let inputs = serde_json::json!({
            "config": serde_json::to_value(config).expect("configs serialize"),
            "options": serde_json::to_value(opts).expect("options serialize"),
        });
        ExperimentReport {
            experiment,
            inputs,
            derived,
            checks,
            verdict,
            wall_time_ms: None,
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// 0 unless some check failed, then 1.
    pub fn exit_code(&self) -> i32 {
        if self.verdict.is_fail() {
            1
        } else {
            0
        }
    }
}

fn parse<T: for<'de> Deserialize<'de>>(experiment: Experiment, text: &str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("{experiment} config: {e}")))
}

/// Parses `config` for `experiment` and runs it.
pub fn run(experiment: Experiment, config: &str, opts: &RunOptions) -> Result<ExperimentReport> {
    opts.validate()?;
    match experiment {
        Experiment::Riesz => run_riesz(&parse(experiment, config)?, opts),
        Experiment::Nonsep => run_nonsep(&parse(experiment, config)?, opts),
        Experiment::Gap => run_gap(&parse(experiment, config)?, opts),
        Experiment::Wiener => run_wiener(&parse(experiment, config)?, opts),
        Experiment::Ap => run_ap(&parse(experiment, config)?, opts),
        Experiment::Idem => run_idem(&parse(experiment, config)?, opts),
        Experiment::Spectrum => run_spectrum(&parse(experiment, config)?, opts),
        Experiment::Obstruct => run_obstruct(&parse(experiment, config)?, opts),
        Experiment::Filterlimit => run_filterlimit(&parse(experiment, config)?, opts),
    }
}

/// `{"columns": [...], "rows": [[...], ...]}`, the layout used for CSV output.
pub(crate) fn table(columns: &[&str], rows: Vec<Value>) -> Value {
    serde_json::json!({ "columns": columns, "rows": rows })
}
