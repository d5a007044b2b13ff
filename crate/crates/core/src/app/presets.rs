//! Parameter sets for the six figure data sets. Where the curve family is
//! not pinned down, the default series below are used.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::sweep::{Series, SweepSpec, SweepVar};
use crate::error::{QcorrError, Result};
use crate::model::ModelParams;
use crate::quantifiers::NegativityConvention;

pub const DEFAULT_STEPS: usize = 301;
pub const DEFAULT_T_SERIES: [f64; 4] = [0.5, 1.0, 1.5, 2.0];
pub const DEFAULT_B_SERIES: [f64; 4] = [0.5, 1.0, 1.5, 2.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Figure {
    Fig1Top,
    Fig1Bottom,
    Fig2,
    Fig3,
    Fig4Top,
    Fig4Bottom,
}

impl Figure {
    pub const ALL: [Figure; 6] =
        [Figure::Fig1Top, Figure::Fig1Bottom, Figure::Fig2, Figure::Fig3, Figure::Fig4Top, Figure::Fig4Bottom];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1Top => "fig1_top",
            Figure::Fig1Bottom => "fig1_bottom",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4Top => "fig4_top",
            Figure::Fig4Bottom => "fig4_bottom",
        }
    }
}

impl FromStr for Figure {
    type Err = QcorrError;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| QcorrError::InvalidParams(format!("unknown figure '{s}'")))
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Couplings shared by every figure: `jx = -1`, `jy = -1.5`, `gz = 0.3`.
fn base(jz: f64) -> ModelParams {
    ModelParams { jx: -1.0, jy: -1.5, jz, dz: 0.0, gz: 0.3, b: 0.0, t: 1.0 }
}

fn series(var: SweepVar, values: &[f64]) -> Vec<Series> {
    values.iter().map(|&v| Series::new(var, v)).collect()
}

pub fn figure_preset(which: Figure) -> SweepSpec {
    let t_series = series(SweepVar::T, &DEFAULT_T_SERIES);
    let b_series = series(SweepVar::B, &DEFAULT_B_SERIES);
    let spec = |variable, from, to, fixed, series_var, series| SweepSpec {
        variable,
        from,
        to,
        steps: DEFAULT_STEPS,
        fixed,
        gamma: None,
        series_var,
        series,
        convention: NegativityConvention::Halved,
    };
    match which {
        Figure::Fig1Top => spec(SweepVar::Dz, -6.0, 6.0, ModelParams { b: 1.5, ..base(2.0) }, SweepVar::T, t_series),
        Figure::Fig1Bottom => {
            spec(SweepVar::Dz, -6.0, 6.0, ModelParams { b: 1.5, ..base(-2.0) }, SweepVar::T, t_series)
        }
        Figure::Fig2 => spec(SweepVar::B, 0.0, 4.0, ModelParams { dz: 1.8, ..base(2.0) }, SweepVar::T, t_series),
        Figure::Fig3 => spec(SweepVar::Dz, 0.0, 10.0, ModelParams { t: 1.5, ..base(-2.0) }, SweepVar::B, b_series),
        Figure::Fig4Top => {
            spec(SweepVar::Gamma, 0.0, 1.0, ModelParams { dz: 1.8, b: 1.5, ..base(2.0) }, SweepVar::T, t_series)
        }
        Figure::Fig4Bottom => {
            spec(SweepVar::Gamma, 0.0, 1.0, ModelParams { dz: 1.8, t: 0.5, ..base(2.0) }, SweepVar::B, b_series)
        }
    }
}
