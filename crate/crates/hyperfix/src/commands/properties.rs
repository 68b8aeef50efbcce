use hyperfix_core::mappings::run_property_suite;
use hyperfix_core::{Coordinatewise, Euclidean};

use super::{file, resolve_map, CommandOutput, Summary};
use crate::config::Config;
use crate::error::CliError;
use crate::format::{num, reports_json, to_json};
use crate::Result;

pub const DEFAULT_STEP: f64 = 0.01;

/// Every applicable check on the map's sample grid; passes iff the
/// structural checks hold and every declared class and non-class is
/// confirmed.
pub fn run(config: &Config) -> Result<CommandOutput> {
    let map = resolve_map(config)?;
    let step: f64 = config.parsed_or("step", DEFAULT_STEP)?;
    if !(step > 0.0) {
        return Err(CliError::config("step must be positive"));
    }
    let points = map.sample_grid(step);
    let suite = run_property_suite(
        &Euclidean::new(1)?,
        &map,
        &Coordinatewise,
        &points,
        &map.claims,
    )?;

    let mut summary = Summary::new();
    summary.line(format!(
        "{} on [{}, {}], {} sample points",
        map.name,
        num(map.domain.0),
        num(map.domain.1),
        points.len()
    ));
    for r in &suite.reports {
        summary.line(format!(
            "{}: {} over {} samples",
            r.property,
            r.verdict.as_str(),
            r.samples_checked
        ));
    }
    for name in ["self_map", "declared_fixed_points"] {
        if let Some(r) = suite.report(name) {
            summary.check(name, r.holds(), r.verdict.as_str());
        }
    }
    for o in &suite.outcomes {
        let expected = if o.claim.holds { "holds" } else { "fails" };
        summary.check(
            &o.property,
            o.matches(),
            format!(
                "declared {expected}, observed {}",
                if o.observed { "holds" } else { "fails" }
            ),
        );
    }
    Ok(summary.finish(vec![file(
        "properties.json",
        to_json(&reports_json(&suite.reports)),
    )]))
}
