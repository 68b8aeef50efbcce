use hyperfix_core::mappings::step_map;
use hyperfix_core::schemes::run_scheme;
use hyperfix_core::{Euclidean, SchemeParams};

use super::{file, yn_variant, CommandOutput, Summary};
use crate::config::Config;
use crate::format::{num, Csv};
use crate::Result;

pub const ROWS: usize = 20;
pub const X1: f64 = 0.9;
pub const COEFFICIENTS: (f64, f64, f64) = (0.85, 0.65, 0.45);

/// Mann iterates of the step map from 0.9 with `a = 0.85`, as printed to
/// six significant digits.
pub const REFERENCE_MANN: [f64; ROWS] = [
    0.9,
    0.135,
    0.02025,
    0.0030375,
    0.000455625,
    0.0000683438,
    0.0000102516,
    1.53773e-6,
    2.3066e-7,
    3.4599e-8,
    5.18985e-9,
    7.78478e-10,
    1.16772e-10,
    1.75158e-11,
    2.62736e-12,
    3.94105e-13,
    5.91157e-14,
    8.86735e-15,
    1.3301e-15,
    1.99515e-16,
];

pub const REFERENCE_TOL: f64 = 1e-4;
pub const CLOSED_FORM_TOL: f64 = 1e-12;

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

/// Runs both schemes for twenty steps and compares the Mann column with the
/// reference values and with `0.9·0.15ⁿ⁻¹`.
pub fn run(config: &Config) -> Result<CommandOutput> {
    let space = Euclidean::new(1)?;
    let map = step_map();
    let (a, b, c) = COEFFICIENTS;
    let mann = SchemeParams::mann(vec![X1], a)
        .with_stop_tol(None)
        .with_max_iter(ROWS);
    let sahu = SchemeParams::thakur(vec![X1], a, b, c)
        .with_stop_tol(None)
        .with_max_iter(ROWS)
        .with_yn_variant(yn_variant(config)?);
    let mann = run_scheme(&space, &map, &mann, None)?;
    let sahu = run_scheme(&space, &map, &sahu, None)?;

    let column = |t: &hyperfix_core::IterationTrace<Vec<f64>>| -> Vec<f64> {
        t.records
            .iter()
            .map(|r| r.x.as_ref().map_or(f64::NAN, |x| x[0]))
            .collect()
    };
    let (xm, xs) = (column(&mann), column(&sahu));

    let mut csv = Csv::new(&["n", "mann", "sahu"]);
    for (i, (m, s)) in xm.iter().zip(&xs).enumerate() {
        csv.row(&[(i + 1).to_string(), num(*m), num(*s)]);
    }

    let mut summary = Summary::new();
    summary.check("rows", xm.len() == ROWS && xs.len() == ROWS, format!("{} rows", xm.len()));
    let worst_ref = xm
        .iter()
        .zip(&REFERENCE_MANN)
        .map(|(g, w)| rel_err(*g, *w))
        .fold(0.0, f64::max);
    summary.check(
        "mann_vs_reference",
        worst_ref <= REFERENCE_TOL,
        format!("max relative error {} <= {}", num(worst_ref), num(REFERENCE_TOL)),
    );
    let worst_closed = xm
        .iter()
        .enumerate()
        .map(|(i, g)| rel_err(*g, X1 * (1.0 - a).powi(i as i32)))
        .fold(0.0, f64::max);
    summary.check(
        "mann_vs_closed_form",
        worst_closed <= CLOSED_FORM_TOL,
        format!("max relative error {} <= {}", num(worst_closed), num(CLOSED_FORM_TOL)),
    );
    let sahu_ok = xs.first() == Some(&X1) && xs[1..].iter().all(|&x| x == 0.0);
    summary.check("sahu_zero_from_n2", sahu_ok, "x_1 = 0.9 and x_n = 0 for n >= 2");

    Ok(summary.finish(vec![file("table1.csv", csv.finish())]))
}
