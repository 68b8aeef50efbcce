use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{Claim, FixedPoints, Gauge, MappingClass, SelfMap};
use crate::error::{Error, Result};
use crate::geodesic::Euclidean;
use crate::integral::Polynomial;

#[derive(Debug, Clone, PartialEq)]
pub enum ScalarRule {
    /// `0` everywhere except `T(4) = 2`.
    Step,
    /// `slope·x + intercept`.
    Affine { slope: f64, intercept: f64 },
    /// `min(slope·x, cap)`.
    Capped { slope: f64, cap: f64 },
    /// First piece whose closed interval contains `x` wins.
    Piecewise(Vec<(f64, f64, Polynomial)>),
}

impl ScalarRule {
    fn eval(&self, x: f64) -> Option<f64> {
        match self {
            ScalarRule::Step => Some(if x == 4.0 { 2.0 } else { 0.0 }),
            ScalarRule::Affine { slope, intercept } => Some(slope * x + intercept),
            ScalarRule::Capped { slope, cap } => Some((slope * x).min(*cap)),
            ScalarRule::Piecewise(pieces) => pieces
                .iter()
                .find(|(lo, hi, _)| *lo <= x && x <= *hi)
                .map(|(_, _, p)| p.eval(x)),
        }
    }
}

/// A self-map of an interval `[lo, hi] ⊂ ℝ`, acting on one-dimensional
/// points of [`Euclidean`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarMap {
    pub name: String,
    pub domain: (f64, f64),
    pub rule: ScalarRule,
    pub fixed: FixedPoints<Vec<f64>>,
    pub claims: Vec<Claim>,
    /// Points always added to sample sets.
    pub forced: Vec<f64>,
}

impl ScalarMap {
    pub fn new(name: &str, domain: (f64, f64), rule: ScalarRule) -> Self {
        Self {
            name: name.to_string(),
            domain,
            rule,
            fixed: FixedPoints::Unknown,
            claims: Vec::new(),
            forced: Vec::new(),
        }
    }

    pub fn with_fixed(mut self, points: &[f64]) -> Self {
        self.fixed = FixedPoints::Finite(points.iter().map(|&p| vec![p]).collect());
        self
    }

    pub fn with_claims(mut self, claims: &[Claim]) -> Self {
        self.claims = claims.to_vec();
        self
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let (lo, hi) = self.domain;
        if !(lo <= x && x <= hi) {
            return Err(Error::Domain(alloc::format!(
                "{x} outside the domain [{lo}, {hi}] of {}",
                self.name
            )));
        }
        self.rule.eval(x).ok_or_else(|| {
            Error::Domain(alloc::format!("no piece of {} covers {x}", self.name))
        })
    }

    /// Uniform grid on the domain (endpoints exact) plus the forced points
    /// and finite fixed points, in that order and without duplicates.
    pub fn sample_grid(&self, step: f64) -> Vec<Vec<f64>> {
        let (lo, hi) = self.domain;
        let n = libm::round((hi - lo) / step).max(1.0) as usize;
        let mut xs: Vec<f64> = (0..=n)
            .map(|i| if i == n { hi } else { lo + (hi - lo) * i as f64 / n as f64 })
            .collect();
        let mut extra = self.forced.clone();
        if let FixedPoints::Finite(ps) = &self.fixed {
            extra.extend(ps.iter().map(|p| p[0]));
        }
        for x in extra {
            if !xs.contains(&x) {
                xs.push(x);
            }
        }
        xs.into_iter().map(|x| vec![x]).collect()
    }
}

impl SelfMap<Euclidean> for ScalarMap {
    fn name(&self) -> &str {
        &self.name
    }

    fn in_domain(&self, x: &Vec<f64>) -> bool {
        x.len() == 1 && self.domain.0 <= x[0] && x[0] <= self.domain.1
    }

    fn apply(&self, x: &Vec<f64>) -> Result<Vec<f64>> {
        if x.len() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: x.len(),
            });
        }
        Ok(vec![self.eval(x[0])?])
    }

    fn fixed_points(&self) -> FixedPoints<Vec<f64>> {
        self.fixed.clone()
    }
}

/// `T(x) = 0` for `x ≠ 4`, `T(4) = 2` on `[0, 4]`; unique fixed point 0.
/// Not a condition (C) map, but generalized α-nonexpansive for `α ≥ 1/3`.
pub fn step_map() -> ScalarMap {
    let mut m = ScalarMap::new("step", (0.0, 4.0), ScalarRule::Step)
        .with_fixed(&[0.0])
        .with_claims(&[
            Claim::holds(MappingClass::Monotone),
            Claim::fails(MappingClass::ConditionC),
            Claim::holds(MappingClass::GenAlpha(1.0 / 3.0)),
            Claim::holds(MappingClass::QuasiNonexpansive),
            Claim::holds(MappingClass::ConditionI(Gauge::Linear(0.5))),
        ]);
    m.forced = vec![4.0];
    m
}

/// Every shipped scalar map.
pub fn catalog() -> Vec<ScalarMap> {
    use MappingClass::*;
    let mut identity = ScalarMap::new(
        "identity",
        (0.0, 1.0),
        ScalarRule::Affine {
            slope: 1.0,
            intercept: 0.0,
        },
    )
    .with_claims(&[
        Claim::holds(Monotone),
        Claim::holds(ConditionC),
        Claim::holds(GenAlpha(0.0)),
        Claim::holds(GenAlpha(0.5)),
        Claim::holds(QuasiNonexpansive),
        Claim::holds(ConditionI(Gauge::Linear(1.0))),
    ]);
    identity.fixed = FixedPoints::Whole;

    vec![
        step_map(),
        identity,
        ScalarMap::new(
            "half",
            (0.0, 1.0),
            ScalarRule::Affine {
                slope: 0.5,
                intercept: 0.0,
            },
        )
        .with_fixed(&[0.0])
        .with_claims(&[
            Claim::holds(Monotone),
            Claim::holds(ConditionC),
            Claim::holds(GenAlpha(0.0)),
            Claim::holds(QuasiNonexpansive),
            Claim::holds(ConditionI(Gauge::Linear(0.5))),
        ]),
        ScalarMap::new(
            "toward_one",
            (0.0, 1.0),
            ScalarRule::Affine {
                slope: 0.5,
                intercept: 0.5,
            },
        )
        .with_fixed(&[1.0])
        .with_claims(&[
            Claim::holds(Monotone),
            Claim::holds(ConditionC),
            Claim::holds(GenAlpha(0.0)),
            Claim::holds(QuasiNonexpansive),
            Claim::holds(ConditionI(Gauge::Linear(0.5))),
        ]),
        ScalarMap::new(
            "reflection",
            (0.0, 1.0),
            ScalarRule::Affine {
                slope: -1.0,
                intercept: 1.0,
            },
        )
        .with_fixed(&[0.5])
        .with_claims(&[
            Claim::fails(Monotone),
            Claim::holds(ConditionC),
            Claim::holds(QuasiNonexpansive),
        ]),
        ScalarMap::new(
            "doubling",
            (0.0, 1.0),
            ScalarRule::Capped {
                slope: 2.0,
                cap: 1.0,
            },
        )
        .with_fixed(&[0.0, 1.0])
        .with_claims(&[
            Claim::holds(Monotone),
            Claim::fails(ConditionC),
            Claim::fails(QuasiNonexpansive),
        ]),
    ]
}

pub fn by_name(name: &str) -> Option<ScalarMap> {
    catalog().into_iter().find(|m| m.name == name)
}
