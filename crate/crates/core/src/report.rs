//! Verdicts of sampling-based property checks.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// No violation among the checked samples. Not a proof.
    HoldsOnSamples,
    Refuted,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::HoldsOnSamples
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::HoldsOnSamples => "holds-on-samples",
            Verdict::Refuted => "refuted",
        }
    }
}

/// A labelled tuple of inputs and evaluated quantities. Points are stored by
/// their coordinates, scalars as one-element vectors.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Witness {
    pub entries: Vec<(String, Vec<f64>)>,
}

impl Witness {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, label: &str, values: Vec<f64>) -> Self {
        self.entries.push((label.to_string(), values));
        self
    }

    pub fn scalar(self, label: &str, value: f64) -> Self {
        self.with(label, alloc::vec![value])
    }

    pub fn get(&self, label: &str) -> Option<&[f64]> {
        self.entries
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, v)| v.as_slice())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub property: String,
    pub verdict: Verdict,
    pub samples_checked: usize,
    /// Smallest `rhs - lhs` seen over the samples; `None` when nothing was
    /// checked.
    pub worst_margin: Option<f64>,
    /// For a refuted property the first witness attains `worst_margin`.
    /// For a property that holds it is the tightest sample.
    pub witnesses: Vec<Witness>,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }
}

/// Accumulates margins in sample order; ties keep the first occurrence.
#[derive(Debug)]
pub(crate) struct MarginTracker {
    property: String,
    slack: f64,
    samples: usize,
    worst: Option<f64>,
    witness: Option<Witness>,
    refuted: bool,
}

impl MarginTracker {
    pub fn new(property: impl Into<String>, slack: f64) -> Self {
        Self {
            property: property.into(),
            slack,
            samples: 0,
            worst: None,
            witness: None,
            refuted: false,
        }
    }

    pub fn observe(&mut self, margin: f64, witness: impl FnOnce() -> Witness) {
        self.samples += 1;
        // NaN margins count as violations.
        let margin = if margin.is_nan() { f64::NEG_INFINITY } else { margin };
        if margin < -self.slack {
            self.refuted = true;
        }
        if self.worst.is_none_or(|w| margin < w) {
            self.worst = Some(margin);
            self.witness = Some(witness());
        }
    }

    /// Records a boolean outcome with margin 0 on success and -1 on failure.
    pub fn observe_bool(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.observe(if ok { 0.0 } else { -1.0 }, witness);
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn finish(self) -> PropertyReport {
        PropertyReport {
            property: self.property,
            verdict: if self.refuted {
                Verdict::Refuted
            } else {
                Verdict::HoldsOnSamples
            },
            samples_checked: self.samples,
            worst_margin: self.worst,
            witnesses: self.witness.into_iter().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tracker_keeps_first_worst() {
        let mut t = MarginTracker::new("p", 1e-12);
        t.observe(0.5, || Witness::new().scalar("i", 0.0));
        t.observe(-0.25, || Witness::new().scalar("i", 1.0));
        t.observe(-0.25, || Witness::new().scalar("i", 2.0));
        t.observe(0.1, || Witness::new().scalar("i", 3.0));
        let r = t.finish();
        assert_eq!(r.verdict, Verdict::Refuted);
        assert_eq!(r.samples_checked, 4);
        assert_eq!(r.worst_margin, Some(-0.25));
        assert_eq!(r.witnesses[0].get("i"), Some(&[1.0][..]));
    }

    #[test]
    fn slack_absorbs_roundoff() {
        let mut t = MarginTracker::new("p", 1e-12);
        t.observe(-1e-13, Witness::new);
        assert!(t.finish().holds());
    }

    #[test]
    fn empty_tracker_holds_without_margin() {
        let r = MarginTracker::new("p", 0.0).finish();
        assert!(r.holds());
        assert_eq!(r.worst_margin, None);
        assert!(r.witnesses.is_empty());
    }
}
