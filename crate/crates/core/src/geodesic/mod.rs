//! W-hyperbolic spaces: a metric together with a convex-combination map
//! `H(u, v, β) = (1 - β)u ⊕ βv`.
//!
//! Three concrete spaces are provided: [`Euclidean`] ℝⁿ, the [`PoincareDisk`]
//! and [`L2Grid`], the quadrature carrier of L²([0, 1]). Any space can be
//! probed with [`check_axioms`] and [`modulus_sampled`].

mod disk;
mod euclidean;
mod l2grid;

pub use disk::{DiskPoint, PoincareDisk};
pub use euclidean::Euclidean;
pub use l2grid::L2Grid;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use rand::Rng;

use crate::error::{Error, Result};
use crate::report::{MarginTracker, PropertyReport, Witness};
use crate::sampling::rng_from_seed;

/// Flat coordinate view of a point, used for witnesses and exports.
pub trait ToCoords {
    fn coords(&self) -> Vec<f64>;
}

impl ToCoords for Vec<f64> {
    fn coords(&self) -> Vec<f64> {
        self.clone()
    }
}

impl ToCoords for f64 {
    fn coords(&self) -> Vec<f64> {
        vec![*self]
    }
}

pub trait GeodesicSpace {
    type Point: Clone + Debug + PartialEq + ToCoords;

    /// Short identifier such as `euclidean:2`.
    fn name(&self) -> String;

    /// Checks that `p` is a well-formed element of this space.
    fn validate(&self, p: &Self::Point) -> Result<()>;

    fn dist(&self, u: &Self::Point, v: &Self::Point) -> Result<f64>;

    /// The point a fraction `beta` of the way along the geodesic from `u` to `v`.
    fn combine(&self, u: &Self::Point, v: &Self::Point, beta: f64) -> Result<Self::Point>;

    fn is_finite(&self, p: &Self::Point) -> bool {
        p.coords().iter().all(|c| c.is_finite())
    }
}

/// Random sampling support needed by the axiom and modulus probes.
pub trait BallSampler: GeodesicSpace {
    /// A point from the space's default sampling region.
    fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Point;

    /// A point at distance at most `radius` from `center`.
    fn sample_in_ball<R: Rng + ?Sized>(
        &self,
        center: &Self::Point,
        radius: f64,
        rng: &mut R,
    ) -> Result<Self::Point>;

    /// The extremal pair for the modulus of convexity: both points at distance
    /// `radius` from `center`, `radius * epsilon` apart, placed symmetrically.
    /// `None` when the space has no such construction.
    fn symmetric_pair(
        &self,
        center: &Self::Point,
        radius: f64,
        epsilon: f64,
    ) -> Result<Option<(Self::Point, Self::Point)>>;
}

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&beta) {
        Ok(())
    } else {
        Err(Error::domain(alloc::format!(
            "combination parameter {beta} outside [0, 1]"
        )))
    }
}

/// Samples tuples `(u, v, w, z, β, γ)` and checks the four hyperbolic-space
/// axioms. Returns one report per axiom, in order.
pub fn check_axioms<S: BallSampler>(
    space: &S,
    sample_count: usize,
    seed: u64,
    tol: f64,
) -> Result<Vec<PropertyReport>> {
    if sample_count == 0 {
        return Err(Error::Precondition("sample_count must be at least 1".into()));
    }
    let mut rng = rng_from_seed(seed);
    let mut convexity = MarginTracker::new("axiom_i_convexity", tol);
    let mut geodesic = MarginTracker::new("axiom_ii_geodesic_split", tol);
    let mut symmetry = MarginTracker::new("axiom_iii_symmetry", tol);
    let mut busemann = MarginTracker::new("axiom_iv_busemann", tol);

    for _ in 0..sample_count {
        let u = space.sample_point(&mut rng);
        let v = space.sample_point(&mut rng);
        let w = space.sample_point(&mut rng);
        let z = space.sample_point(&mut rng);
        let beta: f64 = rng.random();
        let gamma: f64 = rng.random();
        let tuple = || {
            Witness::new()
                .with("u", u.coords())
                .with("v", v.coords())
                .with("w", w.coords())
                .with("z", z.coords())
                .scalar("beta", beta)
                .scalar("gamma", gamma)
        };

        let h_beta = space.combine(&u, &v, beta)?;
        let h_gamma = space.combine(&u, &v, gamma)?;
        let d_uv = space.dist(&u, &v)?;

        let lhs = space.dist(&z, &h_beta)?;
        let rhs = (1.0 - beta) * space.dist(&z, &u)? + beta * space.dist(&z, &v)?;
        convexity.observe(rhs - lhs, || tuple().scalar("lhs", lhs).scalar("rhs", rhs));

        let lhs = space.dist(&h_beta, &h_gamma)?;
        let rhs = libm::fabs(beta - gamma) * d_uv;
        geodesic.observe(-libm::fabs(lhs - rhs), || {
            tuple().scalar("lhs", lhs).scalar("rhs", rhs)
        });

        let flipped = space.combine(&v, &u, 1.0 - beta)?;
        let gap = space.dist(&h_beta, &flipped)?;
        symmetry.observe(-gap, || tuple().scalar("lhs", gap).scalar("rhs", 0.0));

        let left = space.combine(&u, &z, beta)?;
        let right = space.combine(&v, &w, beta)?;
        let lhs = space.dist(&left, &right)?;
        let rhs = (1.0 - beta) * d_uv + beta * space.dist(&z, &w)?;
        busemann.observe(rhs - lhs, || tuple().scalar("lhs", lhs).scalar("rhs", rhs));
    }

    Ok(vec![
        convexity.finish(),
        geodesic.finish(),
        symmetry.finish(),
        busemann.finish(),
    ])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusQuery {
    pub radius: f64,
    pub epsilon: f64,
    pub sample_count: usize,
    pub seed: u64,
}

impl ModulusQuery {
    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0) {
            return Err(Error::domain("modulus radius must be positive"));
        }
        check_epsilon(self.epsilon)
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon <= 2.0 {
        Ok(())
    } else {
        Err(Error::domain(alloc::format!("epsilon {epsilon} outside (0, 2]")))
    }
}

// Relative slack when testing admissibility, so the extremal pair is not
// rejected over a rounding error in its own construction.
const ADMISSIBLE_SLACK: f64 = 1e-12;

/// Sampled estimate of the modulus of uniform convexity at `center`.
///
/// The minimum of `1 - ρ(midpoint, a) / r` over admissible pairs, which is an
/// upper bound on the true infimum. The extremal symmetric pair, when the
/// space provides one, is always evaluated first. The raw minimum is
/// returned without clamping.
pub fn modulus_sampled<S: BallSampler>(
    space: &S,
    query: &ModulusQuery,
    center: &S::Point,
) -> Result<f64> {
    query.validate()?;
    space.validate(center)?;
    let r = query.radius;
    let far = r * query.epsilon * (1.0 - ADMISSIBLE_SLACK);
    let near = r * (1.0 + ADMISSIBLE_SLACK);

    let evaluate = |u: &S::Point, v: &S::Point| -> Result<Option<f64>> {
        if space.dist(u, center)? > near || space.dist(v, center)? > near {
            return Ok(None);
        }
        if space.dist(u, v)? < far {
            return Ok(None);
        }
        let mid = space.combine(u, v, 0.5)?;
        Ok(Some(1.0 - space.dist(&mid, center)? / r))
    };

    let mut best: Option<f64> = None;
    let mut consider = |value: Option<f64>| {
        if let Some(value) = value {
            if best.is_none_or(|b| value < b) {
                best = Some(value);
            }
        }
    };

    if let Some((u, v)) = space.symmetric_pair(center, r, query.epsilon)? {
        consider(evaluate(&u, &v)?);
    }
    let mut rng = rng_from_seed(query.seed);
    for _ in 0..query.sample_count {
        let u = space.sample_in_ball(center, r, &mut rng)?;
        let v = space.sample_in_ball(center, r, &mut rng)?;
        consider(evaluate(&u, &v)?);
    }

    best.ok_or_else(|| {
        Error::Estimation(alloc::format!(
            "no admissible pair among {} samples (r = {r}, epsilon = {})",
            query.sample_count,
            query.epsilon
        ))
    })
}

/// Modulus of uniform convexity of a Hilbert space, `1 - sqrt(1 - ε²/4)`.
/// The radius only takes part in argument validation.
pub fn hilbert_modulus(radius: f64, epsilon: f64) -> Result<f64> {
    if !(radius > 0.0) {
        return Err(Error::domain("modulus radius must be positive"));
    }
    check_epsilon(epsilon)?;
    Ok(1.0 - libm::sqrt(1.0 - epsilon * epsilon / 4.0))
}
