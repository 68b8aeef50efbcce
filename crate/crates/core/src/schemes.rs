//! The Mann iteration and the three-step scheme
//!
//! ```text
//! z_n     = (1 - c_n) x_n ⊕ c_n T x_n
//! y_n     = (1 - b_n) z_n ⊕ b_n T z_n
//! x_{n+1} = (1 - a_n) T z_n ⊕ a_n T y_n
//! ```
//!
//! run generically over any [`GeodesicSpace`], with trace diagnostics for
//! order chains, Fejér monotonicity and residual decay.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geodesic::{GeodesicSpace, ToCoords};
use crate::mappings::{apply_in_domain, SelfMap};
use crate::order::PartialOrderRel;
use crate::report::{MarginTracker, PropertyReport, Witness};

/// Default number of steps whose full points are kept in a trace.
pub const DEFAULT_POINT_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    Mann,
    Thakur,
    /// Plain successive approximation `x_{n+1} = T x_n`.
    Picard,
}

impl SchemeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SchemeKind::Mann => "mann",
            SchemeKind::Thakur => "thakur",
            SchemeKind::Picard => "picard",
        }
    }
}

/// Which image enters the middle step of the three-step scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum YnVariant {
    /// `y_n = (1 - b_n) z_n ⊕ b_n T z_n`.
    #[default]
    Tz,
    /// `y_n = (1 - b_n) z_n ⊕ b_n T x_n`.
    Tx,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Coefficients {
    Constant(f64),
    /// `table[n - 1]` is the coefficient of step `n`.
    Table(Vec<f64>),
}

impl Coefficients {
    pub fn at(&self, n: usize) -> Result<f64> {
        let value = match self {
            Coefficients::Constant(v) => *v,
            Coefficients::Table(t) => *t.get(n.wrapping_sub(1)).ok_or_else(|| {
                Error::Precondition(format!(
                    "coefficient table of length {} exhausted at step {n}",
                    t.len()
                ))
            })?,
        };
        if value > 0.0 && value < 1.0 {
            Ok(value)
        } else {
            Err(Error::Domain(format!(
                "coefficient {value} at step {n} outside (0, 1)"
            )))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeParams<P> {
    pub kind: SchemeKind,
    pub a: Coefficients,
    pub b: Coefficients,
    pub c: Coefficients,
    pub x1: P,
    pub max_iter: usize,
    /// Stop once `ρ(x_n, T x_n) ≤ stop_tol`; `None` always runs `max_iter` steps.
    pub stop_tol: Option<f64>,
    /// Known fixed point for `dist_to_p` diagnostics.
    pub fixed_point: Option<P>,
    pub yn_variant: YnVariant,
    pub point_cap: usize,
}

impl<P> SchemeParams<P> {
    pub fn mann(x1: P, a: f64) -> Self {
        Self {
            kind: SchemeKind::Mann,
            a: Coefficients::Constant(a),
            b: Coefficients::Constant(0.5),
            c: Coefficients::Constant(0.5),
            x1,
            max_iter: 1000,
            stop_tol: Some(0.0),
            fixed_point: None,
            yn_variant: YnVariant::Tz,
            point_cap: DEFAULT_POINT_CAP,
        }
    }

    pub fn thakur(x1: P, a: f64, b: f64, c: f64) -> Self {
        Self {
            kind: SchemeKind::Thakur,
            b: Coefficients::Constant(b),
            c: Coefficients::Constant(c),
            ..Self::mann(x1, a)
        }
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_stop_tol(mut self, tol: Option<f64>) -> Self {
        self.stop_tol = tol;
        self
    }

    pub fn with_fixed_point(mut self, p: P) -> Self {
        self.fixed_point = Some(p);
        self
    }

    pub fn with_yn_variant(mut self, variant: YnVariant) -> Self {
        self.yn_variant = variant;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iter == 0 {
            return Err(Error::Precondition("max_iter must be at least 1".into()));
        }
        if self.stop_tol.is_some_and(|t| !(t >= 0.0)) {
            return Err(Error::Precondition("stop tolerance must be nonnegative".into()));
        }
        match self.kind {
            SchemeKind::Picard => Err(Error::Unsupported(
                "Picard iteration runs through the integral solver".into(),
            )),
            SchemeKind::Mann => self.a.at(1).map(|_| ()),
            SchemeKind::Thakur => {
                self.a.at(1)?;
                self.b.at(1)?;
                self.c.at(1).map(|_| ())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord<P> {
    pub n: usize,
    /// `x_n`; `None` past the trace's point cap.
    pub x: Option<P>,
    pub z: Option<P>,
    pub y: Option<P>,
    /// `ρ(x_n, T x_n)`.
    pub residual: f64,
    pub dist_to_p: Option<f64>,
    /// Order chain through `x_n`, `T x_n` and `x_{n+1}`; `None` when no order
    /// was supplied or `x_1` and `T x_1` are incomparable.
    pub order_chain_ok: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    TolReached,
    MaxIter,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::TolReached => "tol-reached",
            Termination::MaxIter => "max-iter",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace<P> {
    pub kind: SchemeKind,
    pub stop_tol: Option<f64>,
    pub max_iter: usize,
    pub records: Vec<StepRecord<P>>,
    pub termination: Termination,
    pub final_point: P,
}

impl<P> IterationTrace<P> {
    pub fn residuals(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.residual).collect()
    }

    pub fn last_residual(&self) -> f64 {
        self.records.last().map_or(f64::NAN, |r| r.residual)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// `x_{n+1} = (1 - a_n) x_n ⊕ a_n T x_n`.
pub fn step_mann<S, M>(space: &S, m: &M, x: &S::Point, a: f64) -> Result<S::Point>
where
    S: GeodesicSpace,
    M: SelfMap<S> + ?Sized,
{
    check_open_unit(a)?;
    let tx = apply_in_domain::<S, M>(m, x, None)?;
    space.combine(x, &tx, a)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThakurStep<P> {
    pub next: P,
    pub z: P,
    pub y: P,
}

/// One step of the three-step scheme from `x_n`.
pub fn step_thakur<S, M>(
    space: &S,
    m: &M,
    x: &S::Point,
    (a, b, c): (f64, f64, f64),
    variant: YnVariant,
) -> Result<ThakurStep<S::Point>>
where
    S: GeodesicSpace,
    M: SelfMap<S> + ?Sized,
{
    for v in [a, b, c] {
        check_open_unit(v)?;
    }
    let tx = apply_in_domain::<S, M>(m, x, None)?;
    thakur_from(space, m, x, &tx, (a, b, c), variant, None)
}

fn check_open_unit(v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("coefficient {v} outside (0, 1)")))
    }
}

fn thakur_from<S, M>(
    space: &S,
    m: &M,
    x: &S::Point,
    tx: &S::Point,
    (a, b, c): (f64, f64, f64),
    variant: YnVariant,
    step: Option<usize>,
) -> Result<ThakurStep<S::Point>>
where
    S: GeodesicSpace,
    M: SelfMap<S> + ?Sized,
{
    let z = space.combine(x, tx, c)?;
    let tz = apply_in_domain::<S, M>(m, &z, step)?;
    let y = match variant {
        YnVariant::Tz => space.combine(&z, &tz, b)?,
        YnVariant::Tx => space.combine(&z, tx, b)?,
    };
    let ty = apply_in_domain::<S, M>(m, &y, step)?;
    let next = space.combine(&tz, &ty, a)?;
    Ok(ThakurStep { next, z, y })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ChainDirection {
    Up,
    Down,
}

/// Iterates the chosen scheme from `x1` until the residual drops to
/// `stop_tol` or `max_iter` records exist.
///
/// With an order, each record carries the chain check: for the three-step
/// scheme `x_n ≤ T x_n ≤ x_{n+1}` (dually `x_{n+1} ≤ T x_n ≤ x_n`); for Mann,
/// where `x_{n+1}` lies between `x_n` and `T x_n`, `x_n ≤ x_{n+1} ≤ T x_n`.
/// The direction is fixed by comparing `x_1` with `T x_1`.
pub fn run_scheme<S, M>(
    space: &S,
    m: &M,
    params: &SchemeParams<S::Point>,
    rel: Option<&dyn PartialOrderRel<S::Point>>,
) -> Result<IterationTrace<S::Point>>
where
    S: GeodesicSpace,
    M: SelfMap<S> + ?Sized,
{
    params.validate()?;
    space.validate(&params.x1)?;
    if !m.in_domain(&params.x1) {
        return Err(Error::Precondition(format!(
            "starting point {:?} outside the domain of {}",
            params.x1.coords(),
            m.name()
        )));
    }

    let mut records = Vec::new();
    let mut x = params.x1.clone();
    let mut direction = None;
    let termination = 'run: {
        for n in 1..=params.max_iter {
            let tx = apply_in_domain::<S, M>(m, &x, Some(n))?;
            if !space.is_finite(&tx) {
                return Err(Error::Numeric {
                    step: n,
                    what: "T(x_n) is not finite".into(),
                });
            }
            let residual = space.dist(&x, &tx)?;
            let dist_to_p = match &params.fixed_point {
                Some(p) => Some(space.dist(&x, p)?),
                None => None,
            };
            if n == 1 {
                if let Some(rel) = rel {
                    direction = if rel.leq(&x, &tx)? {
                        Some(ChainDirection::Up)
                    } else if rel.leq(&tx, &x)? {
                        Some(ChainDirection::Down)
                    } else {
                        None
                    };
                }
            }
            let keep = n <= params.point_cap;
            let mut record = StepRecord {
                n,
                x: keep.then(|| x.clone()),
                z: None,
                y: None,
                residual,
                dist_to_p,
                order_chain_ok: None,
            };

            let done = if params.stop_tol.is_some_and(|t| residual <= t) {
                Some(Termination::TolReached)
            } else if n == params.max_iter {
                Some(Termination::MaxIter)
            } else {
                None
            };
            if let Some(reason) = done {
                if let (Some(rel), Some(dir)) = (rel, direction) {
                    record.order_chain_ok = Some(match dir {
                        ChainDirection::Up => rel.leq(&x, &tx)?,
                        ChainDirection::Down => rel.leq(&tx, &x)?,
                    });
                }
                records.push(record);
                break 'run reason;
            }

            let next = match params.kind {
                SchemeKind::Mann => space.combine(&x, &tx, params.a.at(n)?)?,
                SchemeKind::Thakur => {
                    let coeffs = (params.a.at(n)?, params.b.at(n)?, params.c.at(n)?);
                    let step =
                        thakur_from(space, m, &x, &tx, coeffs, params.yn_variant, Some(n))?;
                    if keep {
                        record.z = Some(step.z);
                        record.y = Some(step.y);
                    }
                    step.next
                }
                SchemeKind::Picard => unreachable!("rejected by validate"),
            };
            if !space.is_finite(&next) {
                return Err(Error::Numeric {
                    step: n,
                    what: "x_{n+1} is not finite".into(),
                });
            }
            if let (Some(rel), Some(dir)) = (rel, direction) {
                let (lo, mid, hi) = match (params.kind, dir) {
                    (SchemeKind::Mann, ChainDirection::Up) => (&x, &next, &tx),
                    (SchemeKind::Mann, ChainDirection::Down) => (&tx, &next, &x),
                    (_, ChainDirection::Up) => (&x, &tx, &next),
                    (_, ChainDirection::Down) => (&next, &tx, &x),
                };
                record.order_chain_ok = Some(rel.leq(lo, mid)? && rel.leq(mid, hi)?);
            }
            records.push(record);
            x = next;
        }
        unreachable!("the loop breaks at max_iter")
    };

    Ok(IterationTrace {
        kind: params.kind,
        stop_tol: params.stop_tol,
        max_iter: params.max_iter,
        records,
        termination,
        final_point: x,
    })
}

/// `order_chain_ok` is true at every step where it was evaluated.
pub fn check_order_chain<P>(trace: &IterationTrace<P>) -> Result<PropertyReport> {
    let mut t = MarginTracker::new("order_chain", 0.0);
    for r in &trace.records {
        if let Some(ok) = r.order_chain_ok {
            t.observe_bool(ok, || Witness::new().scalar("n", r.n as f64));
        }
    }
    if t.samples() == 0 {
        return Err(Error::Precondition("trace carries no order-chain data".into()));
    }
    Ok(t.finish())
}

/// Fejér monotonicity: `ρ(x_{n+1}, p) ≤ ρ(x_n, p) + 1e-12`.
pub fn check_fejer<P>(trace: &IterationTrace<P>) -> Result<PropertyReport> {
    let dists = trace
        .records
        .iter()
        .map(|r| r.dist_to_p)
        .collect::<Option<Vec<f64>>>()
        .ok_or_else(|| Error::Precondition("trace has no dist_to_p records".into()))?;
    let mut t = MarginTracker::new("fejer_monotone", 1e-12);
    for (i, pair) in dists.windows(2).enumerate() {
        t.observe(pair[0] - pair[1], || {
            Witness::new()
                .scalar("n", (i + 2) as f64)
                .scalar("previous", pair[0])
                .scalar("current", pair[1])
        });
    }
    Ok(t.finish())
}

/// Residual decay: the stop tolerance is met when the run claims it, and
/// the smallest residual in the last quarter of the trace does not exceed
/// the smallest in the first quarter.
pub fn check_residual_decay<P>(trace: &IterationTrace<P>) -> PropertyReport {
    let mut t = MarginTracker::new("residual_decay", 0.0);
    let residuals = trace.residuals();
    let min_of = |s: &[f64]| s.iter().copied().fold(f64::INFINITY, f64::min);
    if trace.termination == Termination::TolReached {
        if let Some(tol) = trace.stop_tol {
            let best = min_of(&residuals);
            t.observe(tol - best, || {
                Witness::new().scalar("stop_tol", tol).scalar("min_residual", best)
            });
        }
    }
    if !residuals.is_empty() {
        let q = (residuals.len() / 4).max(1);
        let head = min_of(&residuals[..q]);
        let tail = min_of(&residuals[residuals.len() - q..]);
        t.observe(head - tail, || {
            Witness::new()
                .scalar("window", q as f64)
                .scalar("first_quarter_min", head)
                .scalar("last_quarter_min", tail)
        });
    }
    t.finish()
}

/// `d(x_n, F) = min_p ρ(x_n, p)` for every recorded step.
pub fn dist_to_fixed_set<S: GeodesicSpace>(
    space: &S,
    trace: &IterationTrace<S::Point>,
    fixed: &[S::Point],
) -> Result<Vec<f64>> {
    if fixed.is_empty() {
        return Err(Error::Precondition("empty fixed-point set".into()));
    }
    trace
        .records
        .iter()
        .map(|r| {
            let x = r.x.as_ref().ok_or_else(|| {
                Error::Precondition(format!("point of step {} was not stored", r.n))
            })?;
            let mut best = f64::INFINITY;
            for p in fixed {
                best = best.min(space.dist(x, p)?);
            }
            Ok(best)
        })
        .collect()
}

/// Tail-window proxy for `limsup ρ(x_n, x)`: the maximum over `tail`.
pub fn asymptotic_radius<S: GeodesicSpace>(
    space: &S,
    tail: &[S::Point],
    x: &S::Point,
) -> Result<f64> {
    if tail.is_empty() {
        return Err(Error::Precondition("empty tail window".into()));
    }
    let mut worst = 0.0f64;
    for xn in tail {
        worst = worst.max(space.dist(xn, x)?);
    }
    Ok(worst)
}

/// The candidate with the smallest tail radius; ties go to the earliest
/// candidate.
pub fn asymptotic_center_estimate<S: GeodesicSpace>(
    space: &S,
    tail: &[S::Point],
    candidates: &[S::Point],
) -> Result<(S::Point, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, c) in candidates.iter().enumerate() {
        let r = asymptotic_radius(space, tail, c)?;
        if best.is_none_or(|(_, b)| r < b) {
            best = Some((i, r));
        }
    }
    let (i, r) = best.ok_or_else(|| Error::Precondition("no candidates".into()))?;
    Ok((candidates[i].clone(), r))
}
