use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{QcorrError, Result};
use crate::model::ModelParams;
use crate::quantifiers::{correlations_with, NegativityConvention};

/// Environment variable capping worker threads for sweeps and audits.
pub const THREADS_ENV: &str = "QCORR_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepVar {
    Dz,
    B,
    T,
    Gamma,
}

impl SweepVar {
    /// Label prefix used in the `series` CSV column.
    pub fn symbol(self) -> &'static str {
        match self {
            SweepVar::Dz => "Dz",
            SweepVar::B => "B",
            SweepVar::T => "T",
            SweepVar::Gamma => "gamma",
        }
    }
}

impl FromStr for SweepVar {
    type Err = QcorrError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dz" => Ok(SweepVar::Dz),
            "b" => Ok(SweepVar::B),
            "t" => Ok(SweepVar::T),
            "gamma" => Ok(SweepVar::Gamma),
            other => Err(QcorrError::InvalidSweep(format!("unknown sweep variable '{other}'"))),
        }
    }
}

impl fmt::Display for SweepVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepVar::Dz => "dz",
            SweepVar::B => "b",
            SweepVar::T => "t",
            SweepVar::Gamma => "gamma",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub label: String,
    pub value: f64,
}

impl Series {
    pub fn new(var: SweepVar, value: f64) -> Self {
        Self { label: format!("{}={}", var.symbol(), value), value }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub variable: SweepVar,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub fixed: ModelParams,
    /// Dephasing applied at every point unless gamma is swept or a series.
    pub gamma: Option<f64>,
    pub series_var: SweepVar,
    pub series: Vec<Series>,
    pub convention: NegativityConvention,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub variable: f64,
    pub series: String,
    pub negativity: f64,
    pub lqu: f64,
    pub lqfi: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(QcorrError::InvalidSweep(msg));
        if self.steps < 2 {
            return bad(format!("steps must be >= 2, got {}", self.steps));
        }
        if !(self.from.is_finite() && self.to.is_finite() && self.from < self.to) {
            return bad(format!("need finite from < to, got [{}, {}]", self.from, self.to));
        }
        if self.series.is_empty() {
            return bad("series must be nonempty".into());
        }
        if self.series_var == self.variable {
            return bad(format!("series variable and sweep variable are both '{}'", self.variable));
        }
        let in_domain = |var: SweepVar, lo: f64, hi: f64| match var {
            SweepVar::T => lo > 0.0,
            SweepVar::Gamma => lo >= 0.0 && hi <= 1.0,
            _ => true,
        };
        if !in_domain(self.variable, self.from, self.to) {
            return bad(format!("range [{}, {}] outside the domain of '{}'", self.from, self.to, self.variable));
        }
        for s in &self.series {
            if !s.value.is_finite() || !in_domain(self.series_var, s.value, s.value) {
                return bad(format!("series value {} outside the domain of '{}'", s.value, self.series_var));
            }
        }
        Ok(())
    }

    /// Grid point `k` of `steps`; exact endpoints, and `-x` mirrors `x` on
    /// grids symmetric about 0.
    pub fn grid_value(&self, k: usize) -> f64 {
        let n = (self.steps - 1) as f64;
        let k = k as f64;
        (self.from * (n - k) + self.to * k) / n
    }

    pub fn grid(&self) -> Vec<f64> {
        (0..self.steps).map(|k| self.grid_value(k)).collect()
    }

    /// Model parameters and dephasing for one point.
    pub fn point(&self, series: &Series, x: f64) -> (ModelParams, Option<f64>) {
        let mut p = self.fixed;
        let mut gamma = self.gamma;
        for (var, value) in [(self.series_var, series.value), (self.variable, x)] {
            match var {
                SweepVar::Dz => p.dz = value,
                SweepVar::B => p.b = value,
                SweepVar::T => p.t = value,
                SweepVar::Gamma => gamma = Some(value),
            }
        }
        (p, gamma)
    }
}

/// Worker-count cap from `QCORR_THREADS`; `None` when unset.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(QcorrError::InvalidParams(format!("{THREADS_ENV} must be a positive integer, got '{s}'"))),
        },
    }
}

/// Run `f` on a pool with `threads` workers, or on the global pool.
pub(crate) fn in_pool<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| QcorrError::InvalidParams(format!("cannot build thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Evaluate the sweep using the `QCORR_THREADS` setting.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    run_sweep_with_threads(spec, threads_from_env()?)
}

/// Rows come back series-major with the variable ascending, whatever the
/// thread count.
pub fn run_sweep_with_threads(spec: &SweepSpec, threads: Option<usize>) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let grid = spec.grid();
    let jobs: Vec<(&Series, f64)> = spec.series.iter().flat_map(|s| grid.iter().map(move |&x| (s, x))).collect();
    in_pool(threads, || {
        jobs.par_iter()
            .map(|&(series, x)| {
                let (p, gamma) = spec.point(series, x);
                let triple = correlations_with(&p, gamma, spec.convention)
                    .map_err(|e| QcorrError::AtPoint { point: format!("{p} gamma={gamma:?}"), source: Box::new(e) })?;
                Ok(SweepRow {
                    variable: x,
                    series: series.label.clone(),
                    negativity: triple.negativity,
                    lqu: triple.lqu,
                    lqfi: triple.lqfi,
                })
            })
            .collect::<Result<Vec<_>>>()
    })?
}
