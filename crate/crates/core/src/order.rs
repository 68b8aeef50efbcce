//! Partial orders on points and the convexity of order intervals
//! `[a, →) = {u : a ≤ u}` and `(←, b] = {u : u ≤ b}`.
//!
//! Comparisons are exact on the stored doubles; a tolerant comparison would
//! not be antisymmetric.

use alloc::vec::Vec;
use core::marker::PhantomData;

use rand::Rng;

use crate::error::{Error, Result};
use crate::geodesic::{BallSampler, ToCoords};
use crate::integral::GridFunction;
use crate::report::{MarginTracker, PropertyReport, Witness};
use crate::sampling::{normal, rng_from_seed};

pub trait PartialOrderRel<P> {
    fn name(&self) -> &'static str;

    fn leq(&self, u: &P, v: &P) -> Result<bool>;

    fn comparable(&self, u: &P, v: &P) -> Result<bool> {
        Ok(self.leq(u, v)? || self.leq(v, u)?)
    }

    /// How far `u ≤ v` is from failing, where the order has a quantitative
    /// form: the smallest coordinate of `v - u`.
    fn margin(&self, _u: &P, _v: &P) -> Option<f64> {
        None
    }
}

/// Produces members of order intervals for sampling checks.
pub trait OrderSampler<P>: PartialOrderRel<P> {
    fn sample_above<R: Rng + ?Sized>(&self, a: &P, rng: &mut R) -> P;
    fn sample_below<R: Rng + ?Sized>(&self, b: &P, rng: &mut R) -> P;
}

fn min_gap(u: &[f64], v: &[f64]) -> f64 {
    u.iter()
        .zip(v)
        .map(|(a, b)| b - a)
        .fold(f64::INFINITY, f64::min)
}

/// Coordinatewise order on ℝⁿ.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Coordinatewise;

impl PartialOrderRel<Vec<f64>> for Coordinatewise {
    fn name(&self) -> &'static str {
        "coordinatewise"
    }

    fn leq(&self, u: &Vec<f64>, v: &Vec<f64>) -> Result<bool> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch {
                expected: u.len(),
                got: v.len(),
            });
        }
        Ok(u.iter().zip(v).all(|(a, b)| a <= b))
    }

    fn margin(&self, u: &Vec<f64>, v: &Vec<f64>) -> Option<f64> {
        (u.len() == v.len()).then(|| min_gap(u, v))
    }
}

impl OrderSampler<Vec<f64>> for Coordinatewise {
    fn sample_above<R: Rng + ?Sized>(&self, a: &Vec<f64>, rng: &mut R) -> Vec<f64> {
        a.iter().map(|x| x + libm::fabs(normal(rng))).collect()
    }

    fn sample_below<R: Rng + ?Sized>(&self, b: &Vec<f64>, rng: &mut R) -> Vec<f64> {
        b.iter().map(|x| x - libm::fabs(normal(rng))).collect()
    }
}

/// Pointwise order on grid functions: `u ≤ v` at every quadrature node.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Pointwise;

impl PartialOrderRel<GridFunction> for Pointwise {
    fn name(&self) -> &'static str {
        "pointwise"
    }

    fn leq(&self, u: &GridFunction, v: &GridFunction) -> Result<bool> {
        u.same_grid(v)?;
        Ok(u.values().iter().zip(v.values()).all(|(a, b)| a <= b))
    }

    fn margin(&self, u: &GridFunction, v: &GridFunction) -> Option<f64> {
        u.same_grid(v).ok().map(|_| min_gap(u.values(), v.values()))
    }
}

impl OrderSampler<GridFunction> for Pointwise {
    fn sample_above<R: Rng + ?Sized>(&self, a: &GridFunction, rng: &mut R) -> GridFunction {
        let bump = GridFunction::from_fn(a.grid().clone(), |_| libm::fabs(normal(rng)));
        a.axpy(1.0, &bump).expect("same grid")
    }

    fn sample_below<R: Rng + ?Sized>(&self, b: &GridFunction, rng: &mut R) -> GridFunction {
        let bump = GridFunction::from_fn(b.grid().clone(), |_| libm::fabs(normal(rng)));
        b.axpy(-1.0, &bump).expect("same grid")
    }
}

/// The absent order; every query is an error. The Poincaré disk ships
/// with it.
#[derive(Debug, Clone, Copy)]
pub struct NoOrder<P>(PhantomData<fn(&P)>);

impl<P> Default for NoOrder<P> {
    fn default() -> Self {
        NoOrder(PhantomData)
    }
}

impl<P> PartialOrderRel<P> for NoOrder<P> {
    fn name(&self) -> &'static str {
        "none"
    }

    fn leq(&self, _u: &P, _v: &P) -> Result<bool> {
        Err(Error::Unsupported("this space carries no partial order".into()))
    }
}

/// Samples anchors `a`, members `u, v` of `[a, →)` and `β ∈ [0, 1]` and checks
/// `H(u, v, β) ∈ [a, →)`; the same for `(←, a]`. The witness entry
/// `direction` is `+1` for up-sets and `-1` for down-sets.
pub fn check_interval_convexity<S, O>(
    rel: &O,
    space: &S,
    sample_count: usize,
    seed: u64,
) -> Result<PropertyReport>
where
    S: BallSampler,
    O: OrderSampler<S::Point>,
{
    let mut rng = rng_from_seed(seed);
    let mut tracker = MarginTracker::new("order_interval_convexity", 0.0);
    for _ in 0..sample_count {
        let a = space.sample_point(&mut rng);
        let beta: f64 = rng.random();
        for direction in [1.0, -1.0] {
            let (u, v) = if direction > 0.0 {
                (rel.sample_above(&a, &mut rng), rel.sample_above(&a, &mut rng))
            } else {
                (rel.sample_below(&a, &mut rng), rel.sample_below(&a, &mut rng))
            };
            let w = space.combine(&u, &v, beta)?;
            let (lo, hi) = if direction > 0.0 { (&a, &w) } else { (&w, &a) };
            let inside = rel.leq(lo, hi)?;
            let margin = match rel.margin(lo, hi) {
                Some(m) => m,
                None if inside => 0.0,
                None => -1.0,
            };
            let witness = || {
                Witness::new()
                    .scalar("direction", direction)
                    .with("anchor", a.coords())
                    .with("u", u.coords())
                    .with("v", v.coords())
                    .scalar("beta", beta)
                    .with("combination", w.coords())
            };
            // The order is exact: any failed comparison is a violation.
            let margin = if inside {
                margin.max(0.0)
            } else {
                margin.min(-f64::MIN_POSITIVE)
            };
            tracker.observe(margin, witness);
        }
    }
    Ok(tracker.finish())
}
