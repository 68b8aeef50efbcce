use hyperfix_core::order::check_interval_convexity;
use hyperfix_core::{
    build_grid, check_axioms, hilbert_modulus, modulus_sampled, BallSampler, Coordinatewise,
    DiskPoint, Euclidean, GridFunction, L2Grid, ModulusQuery, PoincareDisk, PropertyReport,
    QuadratureRule, Verdict, Witness,
};

use super::{file, seed, CommandOutput, Summary};
use crate::config::Config;
use crate::error::CliError;
use crate::format::{num, reports_json, to_json};
use crate::Result;

pub const DEFAULT_SAMPLES: usize = 10_000;
pub const DEFAULT_TOL: f64 = 1e-9;
/// Accepted band `[reference - BELOW, reference + ABOVE]` for a sampled
/// modulus. Sampling can only overestimate, hence the asymmetry.
pub const BAND_BELOW: f64 = 1e-6;
pub const BAND_ABOVE: f64 = 1e-2;
pub const RADII: [f64; 3] = [0.5, 1.0, 2.0];
pub const RADIUS_SPREAD: f64 = 2e-2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceToken {
    Euclidean(usize),
    Poincare,
    L2Grid(usize),
}

impl SpaceToken {
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || CliError::config(format!("unknown space {s:?}"));
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (s, None),
        };
        let size = |a: Option<&str>| -> Result<usize> {
            a.and_then(|a| a.parse().ok())
                .filter(|&n: &usize| n > 0)
                .ok_or_else(bad)
        };
        match kind {
            "euclidean" => Ok(SpaceToken::Euclidean(size(arg)?)),
            "poincare" if arg.is_none() => Ok(SpaceToken::Poincare),
            "l2grid" => Ok(SpaceToken::L2Grid(size(arg)?)),
            _ => Err(bad()),
        }
    }
}

/// How the sampled modulus is judged.
#[derive(Debug, Clone, Copy)]
enum Reference {
    /// Within the band around an exact value that does not depend on `r`.
    Exact(f64),
    /// At least this value.
    LowerBound(f64),
}

fn modulus_report(estimate: f64, reference: Reference, q: &ModulusQuery) -> PropertyReport {
    let (name, margin, value) = match reference {
        Reference::Exact(v) => (
            "modulus_matches_reference",
            (estimate - (v - BAND_BELOW)).min(v + BAND_ABOVE - estimate),
            v,
        ),
        Reference::LowerBound(v) => ("modulus_above_hilbert", estimate - (v - BAND_BELOW), v),
    };
    PropertyReport {
        property: name.into(),
        verdict: if margin >= 0.0 {
            Verdict::HoldsOnSamples
        } else {
            Verdict::Refuted
        },
        samples_checked: q.sample_count + 1,
        worst_margin: Some(margin),
        witnesses: vec![Witness::new()
            .scalar("estimate", estimate)
            .scalar("reference", value)
            .scalar("radius", q.radius)
            .scalar("epsilon", q.epsilon)],
    }
}

fn spread_report(estimates: &[f64]) -> PropertyReport {
    let hi = estimates.iter().copied().fold(f64::MIN, f64::max);
    let lo = estimates.iter().copied().fold(f64::MAX, f64::min);
    let margin = RADIUS_SPREAD - (hi - lo);
    PropertyReport {
        property: "modulus_radius_independence".into(),
        verdict: if margin >= 0.0 {
            Verdict::HoldsOnSamples
        } else {
            Verdict::Refuted
        },
        samples_checked: estimates.len(),
        worst_margin: Some(margin),
        witnesses: vec![Witness::new()
            .with("radius", RADII.to_vec())
            .with("estimate", estimates.to_vec())],
    }
}

struct Settings {
    samples: usize,
    seed: u64,
    tol: f64,
    epsilon: f64,
    radius: f64,
}

fn probe<S: BallSampler>(
    space: &S,
    center: &S::Point,
    reference: Reference,
    s: &Settings,
) -> Result<Vec<PropertyReport>> {
    let mut reports = check_axioms(space, s.samples, s.seed, s.tol)?;
    let query = |radius| ModulusQuery {
        radius,
        epsilon: s.epsilon,
        sample_count: s.samples,
        seed: s.seed,
    };
    let q = query(s.radius);
    reports.push(modulus_report(modulus_sampled(space, &q, center)?, reference, &q));
    if matches!(reference, Reference::Exact(_)) {
        let estimates = RADII
            .iter()
            .map(|&r| modulus_sampled(space, &query(r), center))
            .collect::<Result<Vec<_>, _>>()?;
        reports.push(spread_report(&estimates));
    }
    Ok(reports)
}

/// Axioms at `tol`, the sampled modulus of convexity against its reference,
/// and convexity of order intervals where the space carries an order.
pub fn run(config: &Config) -> Result<CommandOutput> {
    let token = SpaceToken::parse(config.get("space").unwrap_or("euclidean:2"))?;
    let s = Settings {
        samples: config.parsed_or("samples", DEFAULT_SAMPLES)?,
        seed: seed(config)?,
        tol: config.parsed_or("tol", DEFAULT_TOL)?,
        epsilon: config.parsed_or("epsilon", 1.0)?,
        radius: config.parsed_or("radius", 1.0)?,
    };
    let hilbert = hilbert_modulus(s.radius, s.epsilon)?;

    let (name, reports) = match token {
        SpaceToken::Euclidean(d) => {
            let space = Euclidean::new(d)?;
            // On the line the midpoint of two far points is only pulled in
            // linearly.
            let reference = if d == 1 { s.epsilon / 2.0 } else { hilbert };
            let mut reports = probe(&space, &vec![0.0; d], Reference::Exact(reference), &s)?;
            reports.push(check_interval_convexity(&Coordinatewise, &space, s.samples, s.seed)?);
            (format!("euclidean:{d}"), reports)
        }
        SpaceToken::Poincare => {
            let space = PoincareDisk::new();
            let reports = probe(&space, &DiskPoint::origin(), Reference::LowerBound(hilbert), &s)?;
            ("poincare".to_string(), reports)
        }
        SpaceToken::L2Grid(n) => {
            let rule = match config.get("quadrature").unwrap_or("trapezoid") {
                "trapezoid" => QuadratureRule::Trapezoid,
                "gauss-legendre" => QuadratureRule::GaussLegendre,
                other => return Err(CliError::config(format!("unknown quadrature {other:?}"))),
            };
            let grid = build_grid(n, rule)?;
            let space = L2Grid::new(grid.clone());
            let mut reports =
                probe(&space, &GridFunction::zeros(grid), Reference::Exact(hilbert), &s)?;
            reports.push(check_interval_convexity(
                &hyperfix_core::Pointwise,
                &space,
                s.samples,
                s.seed,
            )?);
            (format!("l2grid:{n}"), reports)
        }
    };

    let mut summary = Summary::new();
    summary.line(format!(
        "{name}: {} samples, seed {}, tol {}",
        s.samples,
        s.seed,
        num(s.tol)
    ));
    for r in &reports {
        summary.check(
            &r.property,
            r.holds(),
            format!(
                "{}, worst margin {}",
                r.verdict.as_str(),
                r.worst_margin.map_or("none".into(), num)
            ),
        );
    }
    Ok(summary.finish(vec![file("space_check.json", to_json(&reports_json(&reports)))]))
}
