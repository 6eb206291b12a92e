//! Thin adapters from parsed arguments to library calls and output tables.

use serde::Serialize;
use serde_json::Value;
use simplex_limits::asymptotics::convergence_table;
use simplex_limits::sampling::{distance_samples, log_volume_samples};
use simplex_limits::stats::Reference;
use simplex_limits::{
    log_moment_parallelotope, log_moment_simplex, rate_function, verify_gaussian_limit, verify_volume_limit,
    CumulantReport, EmpiricalSummary, ModelSpec, MomentOrder, RngSeed, SimplexDims, Target,
};

use crate::args::Command;
use crate::error::CliError;

/// What a command produces.
pub enum Output {
    Csv { header: Vec<&'static str>, rows: Vec<Vec<String>> },
    Json(Value),
}

/// Round-trip exact rendering of a float (17 significant digits).
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Serialize)]
struct HarnessSummary {
    model: ModelSpec,
    n: usize,
    r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    regime: Option<simplex_limits::RegimeTag>,
    sample_count: usize,
    seed: u64,
    reference: Reference,
    ks_distance: f64,
    mean: f64,
}

fn summary(
    model: ModelSpec,
    dims: SimplexDims,
    regime: Option<simplex_limits::RegimeTag>,
    seed: u64,
    s: &EmpiricalSummary,
) -> Result<Output, CliError> {
    let out = HarnessSummary {
        model,
        n: dims.n(),
        r: dims.r(),
        regime,
        sample_count: s.len(),
        seed,
        reference: s.reference,
        ks_distance: s.ks_distance,
        mean: s.mean(),
    };
    Ok(Output::Json(serde_json::to_value(out)?))
}

fn indexed(values: Vec<f64>, column: &'static str) -> Output {
    let rows = values.into_iter().enumerate().map(|(i, v)| vec![i.to_string(), real(v)]).collect();
    Output::Csv { header: vec!["index", column], rows }
}

fn grid(x_min: f64, x_max: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if !(x_min.is_finite() && x_max.is_finite() && x_min <= x_max) {
        return Err(CliError::Validation(format!("need finite x-min <= x-max, got [{x_min}, {x_max}]")));
    }
    match steps {
        0 => Err(CliError::Validation("--steps must be at least 1".into())),
        1 if x_min != x_max => Err(CliError::Validation("--steps 1 needs x-min == x-max".into())),
        1 => Ok(vec![x_min]),
        _ => Ok((0..steps).map(|i| x_min + (x_max - x_min) * i as f64 / (steps - 1) as f64).collect()),
    }
}

pub fn run(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Moments { model, dims, k, target } => {
            let (spec, dims) = (model.spec()?, dims.dims()?);
            let target = Target::from(*target);
            let orders = k.iter().map(|&k| MomentOrder::new(k)).collect::<Result<Vec<_>, _>>()?;
            let mut rows = Vec::with_capacity(orders.len());
            for order in orders {
                let m = match target {
                    Target::Simplex => log_moment_simplex(spec, dims, order)?,
                    Target::Parallelotope => log_moment_parallelotope(spec, dims, order)?,
                };
                rows.push(vec![
                    spec.to_string(),
                    dims.n().to_string(),
                    dims.r().to_string(),
                    real(order.k()),
                    real(m.value),
                    real(m.linear()),
                ]);
            }
            Ok(Output::Csv { header: vec!["model", "n", "r", "k", "log_value", "value"], rows })
        }
        Command::Sample { model, dims, run, target, path } => {
            let logs = log_volume_samples(
                model.spec()?,
                dims.dims()?,
                (*target).into(),
                (*path).into(),
                run.samples,
                RngSeed::new(run.seed, 0),
            )?;
            Ok(indexed(logs, "log_volume"))
        }
        Command::Cumulants { model, dims, max_order } => {
            let report = CumulantReport::new(model.spec()?, dims.dims()?, *max_order)?;
            let rows = report
                .cumulants
                .iter()
                .map(|c| {
                    vec![
                        report.model.to_string(),
                        report.n.to_string(),
                        report.r.to_string(),
                        c.order.to_string(),
                        real(c.value),
                    ]
                })
                .collect();
            Ok(Output::Csv { header: vec!["model", "n", "r", "order", "value"], rows })
        }
        Command::VerifyClt { model, dims, run } => {
            let (spec, dims) = (model.spec()?, dims.dims()?);
            let s = verify_gaussian_limit(spec, dims, run.samples, RngSeed::new(run.seed, 0))?;
            summary(spec, dims, None, run.seed, &s)
        }
        Command::VerifyVolume { model, regime, n, run } => {
            let (spec, tag) = (model.spec()?, regime.tag()?);
            let dims = tag.dims_at(*n)?;
            let s = verify_volume_limit(spec, tag, dims, run.samples, RngSeed::new(run.seed, 0))?;
            summary(spec, dims, Some(tag), run.seed, &s)
        }
        Command::ModPhi { case, n, t } => {
            let rows = convergence_table(case.case()?, n, t)?
                .into_iter()
                .map(|row| {
                    vec![row.case_id, row.n.to_string(), real(row.t), real(row.ratio), real(row.limit), real(row.abs_error)]
                })
                .collect();
            Ok(Output::Csv { header: vec!["case_id", "n", "t", "ratio", "limit", "abs_error"], rows })
        }
        Command::RateFunction { model, regime, x_min, x_max, steps } => {
            let xs = grid(*x_min, *x_max, *steps)?;
            let table = rate_function(model.spec()?, regime.tag()?, &xs)?;
            let source = serde_json::to_value(table.source)?.as_str().unwrap_or_default().to_string();
            let rows = table.xs.iter().zip(&table.values).map(|(&x, &i)| vec![real(x), real(i), source.clone()]).collect();
            Ok(Output::Csv { header: vec!["x", "I", "source"], rows })
        }
        Command::Distance { model, dims, run, path } => {
            let d = distance_samples(model.spec()?, dims.dims()?, (*path).into(), run.samples, RngSeed::new(run.seed, 0))?;
            Ok(indexed(d, "distance"))
        }
    }
}
