use hyperfix_core::schemes::run_scheme;
use hyperfix_core::{
    Coordinatewise, Euclidean, FixedPoints, IterationTrace, SchemeParams, SelfMap,
};
use serde::Serialize;

use super::{coefficients, file, resolve_map, yn_variant, CommandOutput, Summary};
use crate::config::Config;
use crate::error::CliError;
use crate::format::{num, opt_num, to_json, trace_csv, Csv};
use crate::Result;

pub const DEFAULT_MAX_ITER: usize = 100;

/// Decade thresholds `1e-1, …, 1e-12`.
pub fn thresholds() -> Vec<f64> {
    (1..=12).map(|k| 10f64.powi(-k)).collect()
}

#[derive(Debug, Serialize)]
struct Crossing {
    threshold: f64,
    mann: Option<usize>,
    thakur: Option<usize>,
}

#[derive(Debug, Serialize)]
struct SchemeSummary {
    iterations: usize,
    termination: &'static str,
    final_x: f64,
    final_residual: f64,
}

#[derive(Debug, Serialize)]
struct RaceSummary {
    map: String,
    x1: f64,
    p: f64,
    a: f64,
    b: f64,
    c: f64,
    yn_variant: String,
    already_at_tolerance: bool,
    mann: SchemeSummary,
    thakur: SchemeSummary,
    crossings: Vec<Crossing>,
}

/// First step whose distance to `p` is below `threshold`.
fn first_below(trace: &IterationTrace<Vec<f64>>, threshold: f64) -> Option<usize> {
    trace
        .records
        .iter()
        .find(|r| r.dist_to_p.is_some_and(|d| d < threshold))
        .map(|r| r.n)
}

fn scheme_summary(t: &IterationTrace<Vec<f64>>) -> SchemeSummary {
    SchemeSummary {
        iterations: t.len(),
        termination: t.termination.as_str(),
        final_x: t.final_point[0],
        final_residual: t.last_residual(),
    }
}

pub fn run(config: &Config) -> Result<CommandOutput> {
    let map = resolve_map(config)?;
    let space = Euclidean::new(1)?;
    let default_x1 = if map.name == "step" { 0.9 } else { map.domain.0 };
    let x1: f64 = config.parsed_or("x1", default_x1)?;
    let p = match (config.parsed::<f64>("p")?, map.fixed_points()) {
        (Some(p), _) => p,
        (None, FixedPoints::Finite(ps)) if !ps.is_empty() => ps[0][0],
        (None, FixedPoints::Whole) => x1,
        _ => {
            return Err(CliError::config(format!(
                "map {} declares no fixed point; set p",
                map.name
            )))
        }
    };
    let (a, b, c) = coefficients(config)?;
    let variant = yn_variant(config)?;
    let max_iter = config.parsed_or("max_iter", DEFAULT_MAX_ITER)?;
    let tol = config.parsed::<f64>("tol")?;

    let mann = SchemeParams::mann(vec![x1], a);
    let thakur = SchemeParams::thakur(vec![x1], a, b, c).with_yn_variant(variant);
    let [mann, thakur] = [mann, thakur].map(|params| {
        params
            .with_fixed_point(vec![p])
            .with_stop_tol(tol)
            .with_max_iter(max_iter)
    });
    let mann = run_scheme(&space, &map, &mann, Some(&Coordinatewise))?;
    let thakur = run_scheme(&space, &map, &thakur, Some(&Coordinatewise))?;

    let mut csv = Csv::new(&[
        "n",
        "residual_mann",
        "residual_thakur",
        "dist_to_p_mann",
        "dist_to_p_thakur",
        "x_mann",
        "x_thakur",
    ]);
    for i in 0..mann.len().max(thakur.len()) {
        let (rm, rt) = (mann.records.get(i), thakur.records.get(i));
        let x = |r: Option<&hyperfix_core::StepRecord<Vec<f64>>>| {
            opt_num(r.and_then(|r| r.x.as_ref()).map(|x| x[0]))
        };
        csv.row(&[
            (i + 1).to_string(),
            opt_num(rm.map(|r| r.residual)),
            opt_num(rt.map(|r| r.residual)),
            opt_num(rm.and_then(|r| r.dist_to_p)),
            opt_num(rt.and_then(|r| r.dist_to_p)),
            x(rm),
            x(rt),
        ]);
    }

    let already = (x1 - p).abs() == 0.0;
    let crossings: Vec<Crossing> = thresholds()
        .into_iter()
        .map(|threshold| Crossing {
            threshold,
            mann: first_below(&mann, threshold),
            thakur: first_below(&thakur, threshold),
        })
        .collect();

    let mut summary = Summary::new();
    summary.line(format!(
        "race on {} from x1 = {} to p = {} (a, b, c) = ({}, {}, {})",
        map.name,
        num(x1),
        num(p),
        num(a),
        num(b),
        num(c)
    ));
    if already {
        summary.line("already at tolerance: x1 is the fixed point");
    }
    let at = |n: Option<usize>| n.map_or("not reached".to_string(), |n| format!("n={n}"));
    for cr in &crossings {
        summary.line(format!(
            "dist_to_p < {}: mann {}, thakur {}",
            num(cr.threshold),
            at(cr.mann),
            at(cr.thakur)
        ));
    }

    let report = RaceSummary {
        map: map.name.clone(),
        x1,
        p,
        a,
        b,
        c,
        yn_variant: config.get("yn_variant").unwrap_or("tz").to_string(),
        already_at_tolerance: already,
        mann: scheme_summary(&mann),
        thakur: scheme_summary(&thakur),
        crossings,
    };
    Ok(summary.finish(vec![
        file("race.csv", csv.finish()),
        file("race_summary.json", to_json(&report)),
        file("mann_trace.csv", trace_csv(&mann, 8)),
        file("thakur_trace.csv", trace_csv(&thakur, 8)),
    ]))
}
