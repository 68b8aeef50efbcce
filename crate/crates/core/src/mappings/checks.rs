//! Sampling checks for mapping classes.
//!
//! Every check evaluates all ordered pairs `(x, y)` drawn from a shared point
//! set (pairs restricted to comparable ones where the class is defined on
//! comparable pairs) and reports the worst `rhs - lhs` margin. Inequalities
//! get a slack of `1e-12`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Claim, FixedPoints, MappingClass, SelfMap};
use crate::error::{Error, Result};
use crate::geodesic::{GeodesicSpace, ToCoords};
use crate::order::PartialOrderRel;
use crate::report::{MarginTracker, PropertyReport, Witness};

pub const SLACK: f64 = 1e-12;

fn images<S, M>(m: &M, points: &[S::Point]) -> Result<Vec<S::Point>>
where
    S: GeodesicSpace + ?Sized,
    M: SelfMap<S> + ?Sized,
{
    points.iter().map(|x| m.apply(x)).collect()
}

fn pair_witness<P: ToCoords>(x: &P, y: &P, tx: &P, ty: &P) -> Witness {
    Witness::new()
        .with("x", x.coords())
        .with("y", y.coords())
        .with("tx", tx.coords())
        .with("ty", ty.coords())
}

/// `T(x) ∈ C` for every sampled `x ∈ C`.
pub fn check_self_map<S, M>(m: &M, points: &[S::Point]) -> Result<PropertyReport>
where
    S: GeodesicSpace + ?Sized,
    M: SelfMap<S> + ?Sized,
{
    let mut t = MarginTracker::new("self_map", 0.0);
    for x in points.iter().filter(|x| m.in_domain(x)) {
        let tx = m.apply(x)?;
        t.observe_bool(m.in_domain(&tx), || {
            Witness::new().with("x", x.coords()).with("tx", tx.coords())
        });
    }
    Ok(t.finish())
}

/// `ρ(p, Tp) ≤ 1e-12` for each declared fixed point.
pub fn check_declared_fixed_points<S, M>(space: &S, m: &M) -> Result<PropertyReport>
where
    S: GeodesicSpace,
    M: SelfMap<S> + ?Sized,
{
    let mut t = MarginTracker::new("declared_fixed_points", 0.0);
    if let FixedPoints::Finite(ps) = m.fixed_points() {
        for p in &ps {
            let tp = m.apply(p)?;
            let d = space.dist(p, &tp)?;
            t.observe(1e-12 - d, || {
                Witness::new().with("p", p.coords()).scalar("dist", d)
            });
        }
    }
    Ok(t.finish())
}

/// `x ≤ y ⇒ Tx ≤ Ty` on every ordered pair of the point set.
pub fn check_monotone<S, M>(
    m: &M,
    rel: &dyn PartialOrderRel<S::Point>,
    points: &[S::Point],
) -> Result<PropertyReport>
where
    S: GeodesicSpace + ?Sized,
    M: SelfMap<S> + ?Sized,
{
    let tps = images::<S, M>(m, points)?;
    let mut t = MarginTracker::new("monotone", 0.0);
    for (x, tx) in points.iter().zip(&tps) {
        for (y, ty) in points.iter().zip(&tps) {
            if !rel.leq(x, y)? {
                continue;
            }
            let ok = rel.leq(tx, ty)?;
            let margin = match rel.margin(tx, ty) {
                Some(g) if ok => g.max(0.0),
                Some(g) => g.min(-f64::MIN_POSITIVE),
                None if ok => 0.0,
                None => -1.0,
            };
            t.observe(margin, || pair_witness(x, y, tx, ty));
        }
    }
    Ok(t.finish())
}

/// Suzuki's condition (C): `½ρ(x, Tx) ≤ ρ(x, y) ⇒ ρ(Tx, Ty) ≤ ρ(x, y)`,
/// over all ordered pairs.
pub fn check_condition_c<S, M>(space: &S, m: &M, points: &[S::Point]) -> Result<PropertyReport>
where
    S: GeodesicSpace,
    M: SelfMap<S> + ?Sized,
{
    let tps = images::<S, M>(m, points)?;
    let mut t = MarginTracker::new("condition_c", SLACK);
    for (x, tx) in points.iter().zip(&tps) {
        let half_residual = 0.5 * space.dist(x, tx)?;
        for (y, ty) in points.iter().zip(&tps) {
            let dxy = space.dist(x, y)?;
            if half_residual > dxy {
                continue;
            }
            let lhs = space.dist(tx, ty)?;
            t.observe(dxy - lhs, || {
                pair_witness(x, y, tx, ty).scalar("lhs", lhs).scalar("rhs", dxy)
            });
        }
    }
    Ok(t.finish())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::Domain(format!("alpha {alpha} outside [0, 1)")))
    }
}

/// The generalized α-nonexpansive inequality on comparable pairs:
/// `½ρ(x, Tx) ≤ ρ(x, y) ⇒
///  ρ(Tx, Ty) ≤ αρ(Tx, y) + αρ(x, Ty) + (1 - 2α)ρ(x, y)`.
pub fn check_gen_alpha<S, M>(
    space: &S,
    m: &M,
    alpha: f64,
    rel: &dyn PartialOrderRel<S::Point>,
    points: &[S::Point],
) -> Result<PropertyReport>
where
    S: GeodesicSpace,
    M: SelfMap<S> + ?Sized,
{
    check_alpha(alpha)?;
    let tps = images::<S, M>(m, points)?;
    let mut t = MarginTracker::new(format!("gen_alpha(alpha={alpha})"), SLACK);
    for (x, tx) in points.iter().zip(&tps) {
        let half_residual = 0.5 * space.dist(x, tx)?;
        for (y, ty) in points.iter().zip(&tps) {
            if !rel.comparable(x, y)? {
                continue;
            }
            let dxy = space.dist(x, y)?;
            if half_residual > dxy {
                continue;
            }
            let lhs = space.dist(tx, ty)?;
            let rhs = alpha * space.dist(tx, y)?
                + alpha * space.dist(x, ty)?
                + (1.0 - 2.0 * alpha) * dxy;
            t.observe(rhs - lhs, || {
                pair_witness(x, y, tx, ty).scalar("lhs", lhs).scalar("rhs", rhs)
            });
        }
    }
    Ok(t.finish())
}

/// The fixed points a check compares against: the declared finite set, or
/// the in-domain sample points when every point is fixed.
fn reference_fixed_points<S, M>(m: &M, points: &[S::Point]) -> Result<Vec<S::Point>>
where
    S: GeodesicSpace + ?Sized,
    M: SelfMap<S> + ?Sized,
{
    match m.fixed_points() {
        FixedPoints::Finite(ps) if !ps.is_empty() => Ok(ps),
        FixedPoints::Finite(_) => Err(Error::Precondition("empty fixed-point set".into())),
        FixedPoints::Whole => Ok(points.iter().filter(|x| m.in_domain(x)).cloned().collect()),
        FixedPoints::Unknown => Err(Error::Precondition(format!(
            "{} declares no fixed points",
            m.name()
        ))),
    }
}

/// `ρ(Tx, p) ≤ ρ(x, p)` for each sampled `x` comparable with a fixed point `p`.
pub fn check_quasi_nonexpansive<S, M>(
    space: &S,
    m: &M,
    rel: &dyn PartialOrderRel<S::Point>,
    points: &[S::Point],
) -> Result<PropertyReport>
where
    S: GeodesicSpace,
    M: SelfMap<S> + ?Sized,
{
    let fixed = reference_fixed_points::<S, M>(m, points)?;
    let mut t = MarginTracker::new("quasi_nonexpansive", SLACK);
    for x in points {
        let tx = m.apply(x)?;
        for p in &fixed {
            if !rel.comparable(x, p)? {
                continue;
            }
            let lhs = space.dist(&tx, p)?;
            let rhs = space.dist(x, p)?;
            t.observe(rhs - lhs, || {
                Witness::new()
                    .with("x", x.coords())
                    .with("p", p.coords())
                    .with("tx", tx.coords())
                    .scalar("lhs", lhs)
                    .scalar("rhs", rhs)
            });
        }
    }
    Ok(t.finish())
}

/// `ρ(x, Ty) ≤ ((3 + α)/(1 - α)) ρ(x, Tx) + ρ(x, y)` on comparable pairs.
pub fn check_residual_bound<S, M>(
    space: &S,
    m: &M,
    alpha: f64,
    rel: &dyn PartialOrderRel<S::Point>,
    points: &[S::Point],
) -> Result<PropertyReport>
where
    S: GeodesicSpace,
    M: SelfMap<S> + ?Sized,
{
    check_alpha(alpha)?;
    let coefficient = (3.0 + alpha) / (1.0 - alpha);
    let tps = images::<S, M>(m, points)?;
    let mut t = MarginTracker::new(format!("residual_bound(alpha={alpha})"), SLACK);
    for (x, tx) in points.iter().zip(&tps) {
        let residual = space.dist(x, tx)?;
        for (y, ty) in points.iter().zip(&tps) {
            if !rel.comparable(x, y)? {
                continue;
            }
            let lhs = space.dist(x, ty)?;
            let rhs = coefficient * residual + space.dist(x, y)?;
            t.observe(rhs - lhs, || {
                pair_witness(x, y, tx, ty).scalar("lhs", lhs).scalar("rhs", rhs)
            });
        }
    }
    Ok(t.finish())
}

/// Condition (I): `ρ(x, Tx) ≥ h(d(x, F(T)))` for each sampled `x`.
pub fn check_condition_i<S, M>(
    space: &S,
    m: &M,
    gauge_name: &str,
    h: &dyn Fn(f64) -> f64,
    points: &[S::Point],
) -> Result<PropertyReport>
where
    S: GeodesicSpace,
    M: SelfMap<S> + ?Sized,
{
    let fixed = match m.fixed_points() {
        FixedPoints::Finite(ps) if ps.is_empty() => {
            return Err(Error::Precondition("empty fixed-point set".into()))
        }
        FixedPoints::Finite(ps) => Some(ps),
        FixedPoints::Whole => None,
        FixedPoints::Unknown => {
            return Err(Error::Unsupported(
                "condition (I) needs a finite declared fixed-point set".into(),
            ))
        }
    };
    let mut t = MarginTracker::new(format!("condition_i({gauge_name})"), SLACK);
    for x in points {
        let tx = m.apply(x)?;
        let to_fixed = match &fixed {
            Some(ps) => {
                let mut best = f64::INFINITY;
                for p in ps {
                    best = best.min(space.dist(x, p)?);
                }
                best
            }
            None if m.in_domain(x) => 0.0,
            None => continue,
        };
        let lhs = space.dist(x, &tx)?;
        let rhs = h(to_fixed);
        t.observe(lhs - rhs, || {
            Witness::new()
                .with("x", x.coords())
                .scalar("dist_to_fixed", to_fixed)
                .scalar("residual", lhs)
                .scalar("h", rhs)
        });
    }
    Ok(t.finish())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClaimOutcome {
    pub claim: Claim,
    pub property: String,
    pub observed: bool,
}

impl ClaimOutcome {
    pub fn matches(&self) -> bool {
        self.observed == self.claim.holds
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertySuite {
    pub reports: Vec<PropertyReport>,
    pub outcomes: Vec<ClaimOutcome>,
}

impl PropertySuite {
    /// Structural checks hold and every claim agrees with its verdict.
    pub fn consistent(&self) -> bool {
        let structural = self
            .reports
            .iter()
            .filter(|r| r.property == "self_map" || r.property == "declared_fixed_points")
            .all(|r| r.holds());
        structural && self.outcomes.iter().all(ClaimOutcome::matches)
    }

    pub fn report(&self, property: &str) -> Option<&PropertyReport> {
        self.reports.iter().find(|r| r.property == property)
    }
}

/// Runs every applicable check on one shared point set and matches the
/// verdicts against `claims`.
///
/// Always run: self-map, declared fixed points, monotonicity, condition (C),
/// gen-α at α = 0, and quasi-nonexpansiveness when fixed points are known.
/// Claimed α values add gen-α and residual-bound checks; claimed gauges add
/// condition (I) checks.
pub fn run_property_suite<S, M>(
    space: &S,
    m: &M,
    rel: &dyn PartialOrderRel<S::Point>,
    points: &[S::Point],
    claims: &[Claim],
) -> Result<PropertySuite>
where
    S: GeodesicSpace,
    M: SelfMap<S> + ?Sized,
{
    let mut reports = Vec::new();
    let push = |r: PropertyReport, reports: &mut Vec<PropertyReport>| {
        if !reports.iter().any(|o: &PropertyReport| o.property == r.property) {
            reports.push(r);
        }
    };
    push(check_self_map::<S, M>(m, points)?, &mut reports);
    push(check_declared_fixed_points(space, m)?, &mut reports);
    push(check_monotone::<S, M>(m, rel, points)?, &mut reports);
    push(check_condition_c(space, m, points)?, &mut reports);
    push(check_gen_alpha(space, m, 0.0, rel, points)?, &mut reports);
    if !matches!(m.fixed_points(), FixedPoints::Unknown) {
        push(check_quasi_nonexpansive(space, m, rel, points)?, &mut reports);
    }

    let mut outcomes = Vec::new();
    for claim in claims {
        let property = match claim.class {
            MappingClass::Monotone => String::from("monotone"),
            MappingClass::ConditionC => String::from("condition_c"),
            MappingClass::QuasiNonexpansive => {
                let r = check_quasi_nonexpansive(space, m, rel, points)?;
                let name = r.property.clone();
                push(r, &mut reports);
                name
            }
            MappingClass::GenAlpha(alpha) => {
                let r = check_gen_alpha(space, m, alpha, rel, points)?;
                let name = r.property.clone();
                push(r, &mut reports);
                if claim.holds {
                    push(check_residual_bound(space, m, alpha, rel, points)?, &mut reports);
                }
                name
            }
            MappingClass::ConditionI(gauge) => {
                let h = move |r: f64| gauge.eval(r);
                let r = check_condition_i(space, m, &gauge.describe(), &h, points)?;
                let name = r.property.clone();
                push(r, &mut reports);
                name
            }
        };
        let observed = reports
            .iter()
            .find(|r| r.property == property)
            .map(|r| r.holds())
            .unwrap_or(false);
        outcomes.push(ClaimOutcome {
            claim: *claim,
            property,
            observed,
        });
    }
    Ok(PropertySuite { reports, outcomes })
}
