use hyperfix_core::integral::{check_kernel_hypotheses, refine_check, solve_picard, solve_thakur, Solver};
use hyperfix_core::schemes::check_fejer;
use hyperfix_core::{KernelSpec, Polynomial, ProblemSpec, QuadratureRule, SchemeParams};
use serde::Serialize;

use super::{coefficients, file, seed, yn_variant, CommandOutput, Summary};
use crate::config::Config;
use crate::error::CliError;
use crate::format::{num, reports_json, to_json, Csv, ReportJson};
use crate::Result;

pub const DEFAULT_N: usize = 64;
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 500;
pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_GAP_TOL: f64 = 1e-6;

/// The problem described by `kernel` (`saturating`, `linear` or `zero`),
/// `m`, `f_scale`, `slope`, `y0`, `quadrature` and `ball_radius`.
pub fn problem_spec(config: &Config) -> Result<ProblemSpec> {
    let kernel = match config.get("kernel").unwrap_or("saturating") {
        "saturating" => KernelSpec::Saturating {
            m: config.parsed_or("m", 0.4)?,
            f_scale: config.parsed_or("f_scale", 1.0)?,
        },
        "linear" => KernelSpec::Linear {
            slope: config.parsed_or("slope", 0.25)?,
        },
        "zero" => KernelSpec::Zero,
        other => return Err(CliError::config(format!("unknown kernel {other:?}"))),
    };
    let rule = match config.get("quadrature").unwrap_or("trapezoid") {
        "trapezoid" => QuadratureRule::Trapezoid,
        "gauss-legendre" => QuadratureRule::GaussLegendre,
        other => return Err(CliError::config(format!("unknown quadrature {other:?}"))),
    };
    let y0 = config.list("y0")?.unwrap_or_else(|| vec![0.0, 1.0]);
    if y0.is_empty() {
        return Err(CliError::config("y0 needs at least one coefficient"));
    }
    Ok(ProblemSpec {
        kernel,
        y0: Polynomial::new(y0),
        rule,
        radius: config.parsed("ball_radius")?,
    })
}

#[derive(Debug, Serialize)]
struct SolverSummary {
    iterations: usize,
    residual: f64,
    norm: f64,
}

#[derive(Debug, Serialize)]
struct IntegralSummary {
    kernel: &'static str,
    n: usize,
    quadrature: &'static str,
    ball_radius: f64,
    tol: f64,
    picard: SolverSummary,
    thakur: SolverSummary,
    gap: f64,
    refine_n: usize,
    refine_difference: f64,
    thakur_fejer_to_picard: &'static str,
    hypotheses: Vec<ReportJson>,
}

/// Checks the kernel hypotheses, then solves by Picard iteration and by the
/// three-step scheme from `y₀`. Hypothesis failures stop before solving.
pub fn run(config: &Config) -> Result<CommandOutput> {
    let spec = problem_spec(config)?;
    let n: usize = config.parsed_or("n", DEFAULT_N)?;
    let tol: f64 = config.parsed_or("tol", DEFAULT_TOL)?;
    let max_iter: usize = config.parsed_or("max_iter", DEFAULT_MAX_ITER)?;
    let samples: usize = config.parsed_or("samples", DEFAULT_SAMPLES)?;
    let gap_tol: f64 = config.parsed_or("gap_tol", DEFAULT_GAP_TOL)?;
    let (a, b, c) = coefficients(config)?;
    let problem = spec.build(n)?;

    let mut summary = Summary::new();
    summary.line(format!(
        "kernel {}, N = {n} ({}), ball radius {}",
        spec.kernel.name(),
        spec.rule.as_str(),
        num(problem.radius())
    ));
    let hypotheses = check_kernel_hypotheses(&problem, samples, seed(config)?)?;
    for r in &hypotheses {
        summary.check(&r.property, r.holds(), r.verdict.as_str());
    }
    if hypotheses.iter().any(|r| !r.holds()) {
        summary.line("kernel hypotheses violated; not solving");
        return Ok(summary.finish(vec![file("hypotheses.json", to_json(&reports_json(&hypotheses)))]));
    }

    let (xp, tp) = solve_picard(&problem, tol, max_iter)?;
    let params = SchemeParams::thakur(problem.y0().clone(), a, b, c)
        .with_yn_variant(yn_variant(config)?)
        .with_fixed_point(xp.clone())
        .with_stop_tol(Some(tol))
        .with_max_iter(max_iter);
    let (xt, tt) = solve_thakur(&problem, &params)?;
    let gap = xp.l2_dist(&xt)?;
    let refine = refine_check(&spec, n, Solver::Picard, tol, max_iter)?;
    let fejer = check_fejer(&tt)?;

    summary.check(
        "picard_residual",
        tp.last_residual() <= tol,
        format!("{} in {} iterations, iterates nondecreasing", num(tp.last_residual()), tp.len()),
    );
    summary.check(
        "thakur_residual",
        tt.last_residual() <= tol,
        format!("{} in {} iterations", num(tt.last_residual()), tt.len()),
    );
    summary.check(
        "picard_thakur_gap",
        gap <= gap_tol,
        format!("{} <= {}", num(gap), num(gap_tol)),
    );
    summary.line(format!("refine {n} -> {}: {}", 2 * n, num(refine)));
    summary.line(format!("thakur Fejér toward picard: {}", fejer.verdict.as_str()));

    let mut csv = Csv::new(&["t", "x_picard", "x_thakur"]);
    for ((t, p), q) in problem.grid().nodes().iter().zip(xp.values()).zip(xt.values()) {
        csv.row(&[num(*t), num(*p), num(*q)]);
    }
    let report = IntegralSummary {
        kernel: spec.kernel.name(),
        n,
        quadrature: spec.rule.as_str(),
        ball_radius: problem.radius(),
        tol,
        picard: SolverSummary {
            iterations: tp.len(),
            residual: tp.last_residual(),
            norm: xp.l2_norm(),
        },
        thakur: SolverSummary {
            iterations: tt.len(),
            residual: tt.last_residual(),
            norm: xt.l2_norm(),
        },
        gap,
        refine_n: n,
        refine_difference: refine,
        thakur_fejer_to_picard: fejer.verdict.as_str(),
        hypotheses: reports_json(&hypotheses),
    };
    Ok(summary.finish(vec![
        file("integral.csv", csv.finish()),
        file("integral.json", to_json(&report)),
    ]))
}
