use alloc::format;
use alloc::vec::Vec;

use super::{GridFunction, IntegralProblem, ProblemSpec};
use crate::error::{Error, Result};
use crate::order::Pointwise;
use crate::schemes::{
    run_scheme, IterationTrace, SchemeKind, SchemeParams, StepRecord, Termination,
    DEFAULT_POINT_CAP,
};

/// Successive approximation `x_{n+1} = T x_n` from `x_1 = y₀`, stopping at
/// the first `n` with `‖x_n - T x_n‖ ≤ tol` and returning that `x_n`.
///
/// The iterates must increase pointwise and stay in the ball; a violation is
/// reported as [`Error::Invariant`] instead of being clamped.
pub fn solve_picard(
    p: &IntegralProblem,
    tol: f64,
    max_iter: usize,
) -> Result<(GridFunction, IterationTrace<GridFunction>)> {
    if !(tol >= 0.0) || max_iter == 0 {
        return Err(Error::Precondition(
            "need tol >= 0 and max_iter >= 1".into(),
        ));
    }
    let mut records = Vec::new();
    let mut x = p.y0().clone();
    for n in 1..=max_iter {
        let tx = p.apply_operator(&x)?;
        if let Some(i) = x.values().iter().zip(tx.values()).position(|(a, b)| !(a <= b)) {
            return Err(Error::Invariant {
                step: n,
                detail: format!(
                    "iterate decreased at node {i}: {} -> {}",
                    x.values()[i],
                    tx.values()[i]
                ),
            });
        }
        if !p.in_ball(&tx) {
            return Err(Error::Invariant {
                step: n,
                detail: format!("norm {} exceeds radius {}", tx.l2_norm(), p.radius()),
            });
        }
        let residual = x.l2_dist(&tx)?;
        records.push(StepRecord {
            n,
            x: (n <= DEFAULT_POINT_CAP).then(|| x.clone()),
            z: None,
            y: None,
            residual,
            dist_to_p: None,
            order_chain_ok: Some(true),
        });
        if residual <= tol {
            let trace = IterationTrace {
                kind: SchemeKind::Picard,
                stop_tol: Some(tol),
                max_iter,
                records,
                termination: Termination::TolReached,
                final_point: x.clone(),
            };
            return Ok((x, trace));
        }
        x = tx;
    }
    Err(Error::NonConvergence {
        iterations: max_iter,
        residual: records.last().map_or(f64::NAN, |r| r.residual),
    })
}

/// Runs `params` on the problem's ball with the pointwise order attached.
/// Exhausting `max_iter` with a stop tolerance set is a non-convergence.
pub fn solve_thakur(
    p: &IntegralProblem,
    params: &SchemeParams<GridFunction>,
) -> Result<(GridFunction, IterationTrace<GridFunction>)> {
    let trace = run_scheme(&p.space(), p, params, Some(&Pointwise))?;
    if trace.termination == Termination::MaxIter && params.stop_tol.is_some() {
        return Err(Error::NonConvergence {
            iterations: trace.len(),
            residual: trace.last_residual(),
        });
    }
    Ok((trace.final_point.clone(), trace))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Solver {
    Picard,
    Thakur { a: f64, b: f64, c: f64 },
}

impl Solver {
    /// Solves from `x_1 = y₀` to residual `tol`.
    pub fn solve(
        self,
        p: &IntegralProblem,
        tol: f64,
        max_iter: usize,
    ) -> Result<(GridFunction, IterationTrace<GridFunction>)> {
        match self {
            Solver::Picard => solve_picard(p, tol, max_iter),
            Solver::Thakur { a, b, c } => {
                let params = SchemeParams::thakur(p.y0().clone(), a, b, c)
                    .with_stop_tol(Some(tol))
                    .with_max_iter(max_iter);
                solve_thakur(p, &params)
            }
        }
    }
}

/// L² distance on the `2n` grid between the `n`-point solution, linearly
/// interpolated, and the `2n`-point solution.
pub fn refine_check(
    spec: &ProblemSpec,
    n: usize,
    solver: Solver,
    tol: f64,
    max_iter: usize,
) -> Result<f64> {
    let coarse = spec.build(n)?;
    let fine = spec.build(2 * n)?;
    let (xc, _) = solver.solve(&coarse, tol, max_iter)?;
    let (xf, _) = solver.solve(&fine, tol, max_iter)?;
    xc.interpolate_to(fine.grid()).l2_dist(&xf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integral::KernelSpec;

    #[test]
    fn linear_kernel_reaches_four_thirds() {
        let p = ProblemSpec::linear_quarter().build(33).unwrap();
        for solver in [Solver::Picard, Solver::Thakur { a: 0.5, b: 0.5, c: 0.5 }] {
            let (x, trace) = solver.solve(&p, 1e-13, 500).unwrap();
            assert!(x.values().iter().all(|v| (v - 4.0 / 3.0).abs() <= 1e-9));
            assert_eq!(trace.termination, Termination::TolReached);
        }
    }

    #[test]
    fn zero_kernel_returns_y0_at_once() {
        let spec = ProblemSpec {
            kernel: KernelSpec::Zero,
            ..ProblemSpec::default()
        };
        let p = spec.build(17).unwrap();
        let (x, trace) = solve_picard(&p, 0.0, 10).unwrap();
        assert_eq!(&x, p.y0());
        assert_eq!(trace.len(), 1);
    }

    #[test]
    fn iterates_increase_and_agree() {
        let p = ProblemSpec::default().build(65).unwrap();
        let (xp, tp) = solve_picard(&p, 1e-12, 500).unwrap();
        for w in tp.records.windows(2) {
            let (a, b) = (w[0].x.as_ref().unwrap(), w[1].x.as_ref().unwrap());
            assert!(a.values().iter().zip(b.values()).all(|(u, v)| u <= v));
        }
        let (xt, tt) = Solver::Thakur { a: 0.5, b: 0.5, c: 0.5 }
            .solve(&p, 1e-12, 500)
            .unwrap();
        assert!(xp.l2_dist(&xt).unwrap() <= 1e-6);
        assert!(tt.records.iter().all(|r| r.order_chain_ok == Some(true)));
        assert!(tt.len() <= tp.len());
    }

    #[test]
    fn coarse_solution_tracks_dense_oracle() {
        let spec = ProblemSpec::default();
        let (dense, _) = solve_picard(&spec.build(1024).unwrap(), 1e-12, 500).unwrap();
        let (coarse, _) = solve_picard(&spec.build(64).unwrap(), 1e-12, 500).unwrap();
        assert!(coarse.interpolate_to(dense.grid()).l2_dist(&dense).unwrap() <= 1e-3);
    }

    #[test]
    fn refinement_error_shrinks() {
        let spec = ProblemSpec::default();
        let e32 = refine_check(&spec, 32, Solver::Picard, 1e-12, 500).unwrap();
        let e64 = refine_check(&spec, 64, Solver::Picard, 1e-12, 500).unwrap();
        assert!(e64 <= 1e-3);
        assert!(e64 < e32);
    }

    #[test]
    fn max_iter_is_reported() {
        let p = ProblemSpec::default().build(17).unwrap();
        assert!(matches!(
            solve_picard(&p, 0.0, 2),
            Err(Error::NonConvergence { iterations: 2, .. })
        ));
    }
}
