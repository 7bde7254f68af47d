//! Sweep evaluation and CSV output.

use std::io::{self, Write};

use cascade_fading_core::mc::{mc_cdf, mc_op_parallel, mc_op_thz, McEstimate};
use cascade_fading_core::performance::{
    op_fso_cascade, op_fso_parallel_bound, op_thz, OutageResult,
};
use rayon::prelude::*;

use crate::config::{ConfigError, ScenarioConfig};
use crate::model::Model;

pub const HEADER: &str = "sweep_value,op_analytic,op_mc,mc_stderr,method,accuracy_flag";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Analytic,
    Mc,
    Both,
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub mode: Mode,
    pub seed: u64,
    pub samples: u64,
}

/// One resolved grid point.
#[derive(Debug, Clone)]
pub struct Point {
    pub outer: Option<f64>,
    pub sweep: Option<f64>,
    pub model: Model,
}

#[derive(Debug, Clone)]
pub struct Row {
    pub outer: Option<f64>,
    pub sweep: Option<f64>,
    pub analytic: Option<OutageResult>,
    pub mc: Option<McEstimate>,
    /// set when either evaluation failed
    pub error: Option<String>,
}

/// Resolves every grid point before any evaluation starts.
pub fn prepare(cfg: &ScenarioConfig) -> Result<Vec<Point>, ConfigError> {
    cfg.points()
        .into_iter()
        .map(|(outer, sweep)| {
            Ok(Point {
                outer,
                sweep,
                model: Model::build(&cfg.at(outer, sweep))?,
            })
        })
        .collect()
}

fn analytic(model: &Model) -> cascade_fading_core::Result<OutageResult> {
    match model {
        Model::FsoCascade { channel, ratio } => op_fso_cascade(channel, *ratio),
        Model::FsoParallel {
            branch,
            branches,
            ratio,
        } => op_fso_parallel_bound(&vec![branch.clone(); *branches], *ratio),
        Model::ThzCascade {
            channel,
            ratio,
            gamma_th,
            kappa_t,
            kappa_r,
        } => op_thz(channel, *ratio, *gamma_th, *kappa_t, *kappa_r),
    }
}

fn monte_carlo(model: &Model, n: u64, seed: u64) -> cascade_fading_core::Result<McEstimate> {
    match model {
        Model::FsoCascade { channel, ratio } => mc_cdf(channel, (1.0 / ratio).sqrt(), n, seed),
        Model::FsoParallel {
            branch,
            branches,
            ratio,
        } => mc_op_parallel(*branches, branch, *ratio, n, seed),
        Model::ThzCascade {
            channel,
            ratio,
            gamma_th,
            kappa_t,
            kappa_r,
        } => mc_op_thz(channel, *ratio, *gamma_th, *kappa_t, *kappa_r, n, seed),
    }
}

/// Evaluates all points concurrently; point k uses seed + k. Rows come back
/// in grid order.
pub fn evaluate(points: &[Point], opts: &RunOptions) -> Vec<Row> {
    points
        .par_iter()
        .enumerate()
        .map(|(k, p)| {
            let mut row = Row {
                outer: p.outer,
                sweep: p.sweep,
                analytic: None,
                mc: None,
                error: None,
            };
            if opts.mode != Mode::Mc {
                match analytic(&p.model) {
                    Ok(r) => row.analytic = Some(r),
                    Err(e) => row.error = Some(e.to_string()),
                }
            }
            if opts.mode != Mode::Analytic {
                match monte_carlo(&p.model, opts.samples, opts.seed.wrapping_add(k as u64)) {
                    Ok(m) => row.mc = Some(m),
                    Err(e) => {
                        row.error.get_or_insert(e.to_string());
                    }
                }
            }
            row
        })
        .collect()
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

/// Writes the rows; surfaces get a leading `outer_value` column.
pub fn write_csv(rows: &[Row], surface: bool, mut w: impl Write) -> io::Result<()> {
    if surface {
        w.write_all(b"outer_value,")?;
    }
    w.write_all(HEADER.as_bytes())?;
    w.write_all(b"\n")?;
    for r in rows {
        let (method, flag) = match (&r.error, &r.analytic) {
            (Some(_), _) => ("", "failed"),
            (None, Some(a)) => (a.method.as_str(), a.accuracy.as_str()),
            (None, None) => ("monte_carlo", "clean"),
        };
        let mut line = String::new();
        if surface {
            line.push_str(&cell(r.outer));
            line.push(',');
        }
        line.push_str(&format!(
            "{},{},{},{},{},{}\n",
            cell(r.sweep),
            cell(r.analytic.map(|a| a.probability)),
            cell(r.mc.map(|m| m.value)),
            cell(r.mc.map(|m| m.std_error)),
            method,
            flag
        ));
        w.write_all(line.as_bytes())?;
    }
    Ok(())
}
