//! CSV and JSON encodings shared by the commands.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use hyperfix_core::{IterationTrace, PropertyReport, ToCoords};
use serde::Serialize;

/// Shortest round-trip decimal for a double. Plain notation is used for
/// `1e-5 ≤ |x| < 1e16` and zero, scientific notation otherwise. Negative
/// zero prints as `0`.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let a = x.abs();
    if !x.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// A CSV document with a fixed header, `\n` line endings.
#[derive(Debug, Clone)]
pub struct Csv {
    text: String,
    width: usize,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut text = header.join(",");
        text.push('\n');
        Self {
            text,
            width: header.len(),
        }
    }

    pub fn row(&mut self, cells: &[String]) {
        debug_assert_eq!(cells.len(), self.width);
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}

#[derive(Debug, Serialize)]
pub struct ReportJson {
    pub property: String,
    pub verdict: &'static str,
    pub samples: usize,
    pub worst_margin: Option<f64>,
    pub witnesses: Vec<BTreeMap<String, Vec<f64>>>,
}

impl From<&PropertyReport> for ReportJson {
    fn from(r: &PropertyReport) -> Self {
        Self {
            property: r.property.clone(),
            verdict: r.verdict.as_str(),
            samples: r.samples_checked,
            worst_margin: r.worst_margin,
            witnesses: r
                .witnesses
                .iter()
                .map(|w| w.entries.iter().cloned().collect())
                .collect(),
        }
    }
}

pub fn reports_json(reports: &[PropertyReport]) -> Vec<ReportJson> {
    reports.iter().map(ReportJson::from).collect()
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// `n,residual,dist_to_p,order_chain_ok` plus `x0, x1, ...` coordinates when
/// the points have at most `max_coords` of them.
pub fn trace_csv<P: ToCoords>(trace: &IterationTrace<P>, max_coords: usize) -> String {
    let dim = trace.final_point.coords().len();
    let coords = dim <= max_coords;
    let mut header = String::from("n,residual,dist_to_p,order_chain_ok");
    if coords {
        for i in 0..dim {
            let _ = write!(header, ",x{i}");
        }
    }
    let mut out = header;
    out.push('\n');
    for r in &trace.records {
        let chain = match r.order_chain_ok {
            Some(true) => "true",
            Some(false) => "false",
            None => "",
        };
        let _ = write!(
            out,
            "{},{},{},{}",
            r.n,
            num(r.residual),
            opt_num(r.dist_to_p),
            chain
        );
        if coords {
            match &r.x {
                Some(x) => x.coords().iter().for_each(|v| {
                    let _ = write!(out, ",{}", num(*v));
                }),
                None => (0..dim).for_each(|_| out.push(',')),
            }
        }
        out.push('\n');
    }
    out
}
