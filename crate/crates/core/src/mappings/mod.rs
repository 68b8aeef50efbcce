//! Self-maps with known fixed-point structure and sampling checks for the
//! mapping classes used by the convergence theory.

mod catalog;
mod checks;

pub use catalog::{by_name, catalog, step_map, ScalarMap, ScalarRule};
pub use checks::{
    check_condition_c, check_condition_i, check_declared_fixed_points, check_gen_alpha,
    check_residual_bound, check_monotone, check_quasi_nonexpansive, check_self_map,
    run_property_suite, ClaimOutcome, PropertySuite,
};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geodesic::{GeodesicSpace, ToCoords};

/// A map `T: C → C` on a subset `C` of a space.
pub trait SelfMap<S: GeodesicSpace + ?Sized> {
    fn name(&self) -> &str;

    /// Membership in the domain `C`.
    fn in_domain(&self, x: &S::Point) -> bool;

    fn apply(&self, x: &S::Point) -> Result<S::Point>;

    fn fixed_points(&self) -> FixedPoints<S::Point> {
        FixedPoints::Unknown
    }
}

/// Applies `m` and reports a domain escape if `T(x)` leaves `C`.
pub fn apply_in_domain<S, M>(m: &M, x: &S::Point, step: Option<usize>) -> Result<S::Point>
where
    S: GeodesicSpace + ?Sized,
    M: SelfMap<S> + ?Sized,
{
    let tx = m.apply(x)?;
    if m.in_domain(&tx) {
        Ok(tx)
    } else {
        Err(Error::DomainEscape {
            step,
            point: tx.coords(),
        })
    }
}

/// Declared fixed-point set `F(T)`.
#[derive(Debug, Clone, PartialEq)]
pub enum FixedPoints<P> {
    Finite(Vec<P>),
    /// Every point of the domain is fixed.
    Whole,
    Unknown,
}

impl<P> FixedPoints<P> {
    pub fn first(&self) -> Option<&P> {
        match self {
            FixedPoints::Finite(v) => v.first(),
            _ => None,
        }
    }
}

/// Gauge `h` for condition (I): nondecreasing, `h(0) = 0`, positive elsewhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gauge {
    /// `h(r) = slope · r` with `slope > 0`.
    Linear(f64),
}

impl Gauge {
    pub fn eval(&self, r: f64) -> f64 {
        match *self {
            Gauge::Linear(slope) => slope * r,
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            Gauge::Linear(slope) => format!("h(r)={slope}*r"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MappingClass {
    Monotone,
    ConditionC,
    /// Generalized α-nonexpansive on comparable pairs.
    GenAlpha(f64),
    QuasiNonexpansive,
    ConditionI(Gauge),
}

impl MappingClass {
    pub fn describe(&self) -> String {
        match self {
            MappingClass::Monotone => "monotone".into(),
            MappingClass::ConditionC => "condition_c".into(),
            MappingClass::GenAlpha(a) => format!("gen_alpha(alpha={a})"),
            MappingClass::QuasiNonexpansive => "quasi_nonexpansive".into(),
            MappingClass::ConditionI(h) => format!("condition_i({})", h.describe()),
        }
    }
}

/// A declared class membership (`holds = true`) or non-membership.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Claim {
    pub class: MappingClass,
    pub holds: bool,
}

impl Claim {
    pub fn holds(class: MappingClass) -> Self {
        Self { class, holds: true }
    }

    pub fn fails(class: MappingClass) -> Self {
        Self {
            class,
            holds: false,
        }
    }
}
