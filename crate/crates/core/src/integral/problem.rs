use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::{build_grid, GridFunction, KernelSpec, Polynomial, QuadratureGrid, QuadratureRule};
use crate::error::{Error, Result};
use crate::geodesic::L2Grid;
use crate::mappings::{FixedPoints, SelfMap};
use crate::report::{MarginTracker, PropertyReport, Witness};
use crate::sampling::{normal, rng_from_seed};

/// Relative slack for ball membership of computed iterates.
const BALL_SLACK: f64 = 1e-12;

/// The discretized equation `x = y₀ + ∫ b(·, z, x(z)) dz` on the ball
/// `C = {‖x‖ ≤ radius}`.
#[derive(Debug, Clone)]
pub struct IntegralProblem {
    grid: Arc<QuadratureGrid>,
    kernel: KernelSpec,
    y0: GridFunction,
    radius: f64,
}

impl IntegralProblem {
    /// With `radius = None` the ball radius defaults to
    /// `2(‖y₀‖ + ‖∫f dz‖) + 1`. An explicit radius below `2(‖y₀‖ + ‖∫f dz‖)`
    /// is rejected.
    pub fn new(kernel: KernelSpec, y0: GridFunction, radius: Option<f64>) -> Result<Self> {
        let grid = y0.grid().clone();
        let mut problem = Self {
            grid,
            kernel,
            y0,
            radius: 0.0,
        };
        let minimal = problem.minimal_radius();
        problem.radius = match radius {
            None => minimal + 1.0,
            Some(r) if r >= minimal => r,
            Some(r) => {
                return Err(Error::domain(format!(
                    "radius {r} below the self-map bound {minimal}"
                )))
            }
        };
        Ok(problem)
    }

    pub fn grid(&self) -> &Arc<QuadratureGrid> {
        &self.grid
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn y0(&self) -> &GridFunction {
        &self.y0
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn space(&self) -> L2Grid {
        L2Grid::new(self.grid.clone())
    }

    /// `2(‖y₀‖ + ‖∫f(·, z) dz‖)`.
    pub fn minimal_radius(&self) -> f64 {
        let nodes = self.grid.nodes();
        let weights = self.grid.weights();
        let integrated: Vec<f64> = nodes
            .iter()
            .map(|&t| {
                nodes
                    .iter()
                    .zip(weights)
                    .map(|(&z, &w)| w * self.kernel.growth(t, z))
                    .sum()
            })
            .collect();
        let f_norm = GridFunction::new(self.grid.clone(), integrated)
            .expect("length matches grid")
            .l2_norm();
        2.0 * (self.y0.l2_norm() + f_norm)
    }

    pub fn in_ball(&self, x: &GridFunction) -> bool {
        x.l2_norm() <= self.radius * (1.0 + BALL_SLACK)
    }

    /// `(Tx)ᵢ = y₀ᵢ + Σⱼ wⱼ b(tᵢ, tⱼ, xⱼ)`.
    pub fn apply_operator(&self, x: &GridFunction) -> Result<GridFunction> {
        x.same_grid(&self.y0)?;
        let nodes = self.grid.nodes();
        let weights = self.grid.weights();
        let mut out = self.y0.clone();
        for (i, (&t, slot)) in nodes.iter().zip(out.values_mut()).enumerate() {
            let mut acc = 0.0;
            for ((&z, &w), &s) in nodes.iter().zip(weights).zip(x.values()) {
                acc += w * self.kernel.eval(t, z, s);
            }
            if !acc.is_finite() {
                return Err(Error::domain(format!(
                    "non-finite kernel integral at node {i} (t = {t})"
                )));
            }
            *slot += acc;
        }
        Ok(out)
    }
}

impl SelfMap<L2Grid> for IntegralProblem {
    fn name(&self) -> &str {
        self.kernel.name()
    }

    fn in_domain(&self, x: &GridFunction) -> bool {
        x.grid().same_as(&self.grid) && self.in_ball(x)
    }

    fn apply(&self, x: &GridFunction) -> Result<GridFunction> {
        self.apply_operator(x)
    }

    fn fixed_points(&self) -> FixedPoints<GridFunction> {
        FixedPoints::Unknown
    }
}

/// Resolution-independent problem description; [`ProblemSpec::build`]
/// discretizes it on a grid of any size.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub kernel: KernelSpec,
    pub y0: Polynomial,
    pub rule: QuadratureRule,
    pub radius: Option<f64>,
}

impl Default for ProblemSpec {
    /// Saturating kernel with `M = 0.4`, `y₀(t) = t`, trapezoid rule.
    fn default() -> Self {
        Self {
            kernel: KernelSpec::default(),
            y0: Polynomial::new(vec![0.0, 1.0]),
            rule: QuadratureRule::Trapezoid,
            radius: None,
        }
    }
}

impl ProblemSpec {
    /// `b = 0.25·s`, `y₀ ≡ 1`; the exact solution is the constant 4/3.
    pub fn linear_quarter() -> Self {
        Self {
            kernel: KernelSpec::Linear { slope: 0.25 },
            y0: Polynomial::new(vec![1.0]),
            ..Self::default()
        }
    }

    pub fn build(&self, n: usize) -> Result<IntegralProblem> {
        let grid = build_grid(n, self.rule)?;
        let y0 = GridFunction::from_fn(grid, |t| self.y0.eval(t));
        IntegralProblem::new(self.kernel, y0, self.radius)
    }
}

fn sample_in_ball<R: Rng + ?Sized>(p: &IntegralProblem, rng: &mut R) -> GridFunction {
    let raw = GridFunction::from_fn(p.grid.clone(), |_| normal(rng));
    let norm = raw.l2_norm();
    if norm == 0.0 {
        return raw;
    }
    raw.scaled(p.radius * rng.random::<f64>() / norm)
}

/// An ordered pair `u ≤ v` inside the ball.
fn sample_ordered_pair<R: Rng + ?Sized>(
    p: &IntegralProblem,
    rng: &mut R,
) -> (GridFunction, GridFunction) {
    let u = sample_in_ball(p, rng);
    let bump = GridFunction::from_fn(p.grid.clone(), |_| libm::fabs(normal(rng)));
    let v = u
        .axpy(rng.random::<f64>() * p.radius / 4.0, &bump)
        .expect("same grid");
    let largest = u.l2_norm().max(v.l2_norm());
    if largest > p.radius {
        // A positive rescaling keeps the order.
        let s = p.radius / largest;
        (u.scaled(s), v.scaled(s))
    } else {
        (u, v)
    }
}

fn min_difference(lower: &GridFunction, upper: &GridFunction) -> f64 {
    lower
        .values()
        .iter()
        .zip(upper.values())
        .map(|(a, b)| b - a)
        .fold(f64::INFINITY, f64::min)
}

/// Samples the kernel hypotheses (nonnegativity, monotonicity, the pointwise
/// 1-Lipschitz bound, the growth bound and `M < 1/2`) and the induced operator
/// facts (`T(C) ⊂ C`, `y₀ ≤ Tx`, monotonicity and nonexpansiveness on ordered
/// pairs).
pub fn check_kernel_hypotheses(
    p: &IntegralProblem,
    sample_count: usize,
    seed: u64,
) -> Result<Vec<PropertyReport>> {
    let mut rng = rng_from_seed(seed);
    let k = p.kernel;
    let scale = p.radius.max(1.0);

    let mut nonneg = MarginTracker::new("kernel_nonnegative", 0.0);
    let mut monotone = MarginTracker::new("kernel_monotone", 0.0);
    let mut lipschitz = MarginTracker::new("kernel_lipschitz", 1e-12);
    let mut growth = MarginTracker::new("kernel_growth_bound", 1e-12);
    for _ in 0..sample_count {
        let t: f64 = rng.random();
        let z: f64 = rng.random();
        let s = libm::fabs(normal(&mut rng)) * scale;
        let b = k.eval(t, z, s);
        let at = |w: Witness| w.scalar("t", t).scalar("z", z);
        nonneg.observe(b, || at(Witness::new()).scalar("s", s).scalar("b", b));

        let a = normal(&mut rng) * scale;
        let c = normal(&mut rng) * scale;
        let (lo, hi) = if a <= c { (a, c) } else { (c, a) };
        let rise = k.eval(t, z, hi) - k.eval(t, z, lo);
        let pair = || at(Witness::new()).scalar("u", lo).scalar("v", hi).scalar("rise", rise);
        monotone.observe(rise, pair);
        lipschitz.observe((hi - lo) - rise, pair);

        let bound = k.growth(t, z) + k.growth_constant() * libm::fabs(a);
        let value = libm::fabs(k.eval(t, z, a));
        growth.observe(bound - value, || {
            at(Witness::new()).scalar("s", a).scalar("lhs", value).scalar("rhs", bound)
        });
    }

    let mut constant = MarginTracker::new("growth_constant_below_half", 0.0);
    let m = k.growth_constant();
    constant.observe_bool(m < 0.5, || Witness::new().scalar("M", m));

    let mut self_map = MarginTracker::new("operator_self_map", BALL_SLACK * p.radius);
    let mut lower = MarginTracker::new("operator_above_y0", 0.0);
    let mut op_monotone = MarginTracker::new("operator_monotone", 0.0);
    let mut nonexpansive = MarginTracker::new("operator_nonexpansive", 1e-10);
    for _ in 0..sample_count {
        let x = sample_in_ball(p, &mut rng);
        let tx = p.apply_operator(&x)?;
        let norm = tx.l2_norm();
        self_map.observe(p.radius - norm, || {
            Witness::new().with("x", x.values().to_vec()).scalar("norm_tx", norm)
        });
        let gap = min_difference(&p.y0, &tx);
        lower.observe(gap, || Witness::new().with("x", x.values().to_vec()));

        let (u, v) = sample_ordered_pair(p, &mut rng);
        let tu = p.apply_operator(&u)?;
        let tv = p.apply_operator(&v)?;
        let pair = || {
            Witness::new()
                .with("u", u.values().to_vec())
                .with("v", v.values().to_vec())
        };
        op_monotone.observe(min_difference(&tu, &tv), pair);
        let lhs = tv.l2_dist(&tu)?;
        let rhs = v.l2_dist(&u)?;
        nonexpansive.observe(rhs - lhs, || pair().scalar("lhs", lhs).scalar("rhs", rhs));
    }

    Ok(vec![
        nonneg.finish(),
        monotone.finish(),
        lipschitz.finish(),
        growth.finish(),
        constant.finish(),
        self_map.finish(),
        lower.finish(),
        op_monotone.finish(),
        nonexpansive.finish(),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_kernel_maps_to_y0() {
        let p = ProblemSpec {
            kernel: KernelSpec::Zero,
            ..ProblemSpec::default()
        }
        .build(16)
        .unwrap();
        let x = GridFunction::from_fn(p.grid().clone(), |t| t * t - 3.0);
        assert_eq!(p.apply_operator(&x).unwrap(), *p.y0());
    }

    #[test]
    fn default_kernel_at_zero_adds_half_t() {
        // ∫₀¹ t z dz = t/2 and σ(0) = 0.
        let p = ProblemSpec::default().build(64).unwrap();
        let tx = p.apply_operator(&GridFunction::zeros(p.grid().clone())).unwrap();
        for (&t, &v) in p.grid().nodes().iter().zip(tx.values()) {
            assert!((v - (t + t / 2.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn radius_bounds() {
        let spec = ProblemSpec::default();
        let p = spec.build(32).unwrap();
        assert!((p.radius() - (p.minimal_radius() + 1.0)).abs() < 1e-15);
        let too_small = ProblemSpec {
            radius: Some(0.1),
            ..spec
        };
        assert!(too_small.build(32).is_err());
    }

    #[test]
    fn default_problem_satisfies_hypotheses() {
        let p = ProblemSpec::default().build(64).unwrap();
        for r in check_kernel_hypotheses(&p, 500, 7).unwrap() {
            assert!(r.holds(), "{}: {:?}", r.property, r.worst_margin);
        }
    }

    #[test]
    fn large_growth_constant_is_reported() {
        let p = ProblemSpec {
            kernel: KernelSpec::Saturating {
                m: 0.6,
                f_scale: 1.0,
            },
            ..ProblemSpec::default()
        }
        .build(32)
        .unwrap();
        let reports = check_kernel_hypotheses(&p, 200, 1).unwrap();
        let constant = reports
            .iter()
            .find(|r| r.property == "growth_constant_below_half")
            .unwrap();
        assert!(!constant.holds());
        assert_eq!(constant.witnesses[0].get("M"), Some(&[0.6][..]));
    }

    #[test]
    fn steep_kernel_breaks_lipschitz_bound() {
        let p = ProblemSpec {
            kernel: KernelSpec::Linear { slope: 2.0 },
            ..ProblemSpec::default()
        }
        .build(16)
        .unwrap();
        let reports = check_kernel_hypotheses(&p, 200, 3).unwrap();
        let lip = reports
            .iter()
            .find(|r| r.property == "kernel_lipschitz")
            .unwrap();
        assert!(!lip.holds());
        let w = &lip.witnesses[0];
        let (u, v) = (w.get("u").unwrap()[0], w.get("v").unwrap()[0]);
        let k = p.kernel();
        // Replaying the witness shows a rise steeper than the state gap.
        assert!(k.eval(0.5, 0.5, v) - k.eval(0.5, 0.5, u) > v - u);
    }
}
