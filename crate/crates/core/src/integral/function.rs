use alloc::sync::Arc;
use alloc::vec::Vec;

use super::QuadratureGrid;
use crate::error::{Error, Result};
use crate::geodesic::ToCoords;

/// Values at the nodes of one quadrature grid.
#[derive(Debug, Clone)]
pub struct GridFunction {
    grid: Arc<QuadratureGrid>,
    values: Vec<f64>,
}

impl PartialEq for GridFunction {
    fn eq(&self, other: &Self) -> bool {
        self.grid.same_as(&other.grid) && self.values == other.values
    }
}

impl ToCoords for GridFunction {
    fn coords(&self) -> Vec<f64> {
        self.values.clone()
    }
}

impl GridFunction {
    pub fn new(grid: Arc<QuadratureGrid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Arc<QuadratureGrid>, mut f: impl FnMut(f64) -> f64) -> Self {
        let values = grid.nodes().iter().map(|&t| f(t)).collect();
        Self { grid, values }
    }

    pub fn constant(grid: Arc<QuadratureGrid>, c: f64) -> Self {
        Self::from_fn(grid, |_| c)
    }

    pub fn zeros(grid: Arc<QuadratureGrid>) -> Self {
        Self::constant(grid, 0.0)
    }

    pub fn grid(&self) -> &Arc<QuadratureGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub(crate) fn same_grid(&self, other: &Self) -> Result<()> {
        if self.grid.same_as(&other.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// `sqrt(Σ wᵢ xᵢ²)`.
    pub fn l2_norm(&self) -> f64 {
        let sq: f64 = self
            .values
            .iter()
            .zip(self.grid.weights())
            .map(|(x, w)| w * x * x)
            .sum();
        libm::sqrt(sq)
    }

    pub fn l2_dist(&self, other: &Self) -> Result<f64> {
        self.same_grid(other)?;
        let sq: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .zip(self.grid.weights())
            .map(|((a, b), w)| w * (a - b) * (a - b))
            .sum();
        Ok(libm::sqrt(sq))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    /// `self + alpha * other`.
    pub fn axpy(&self, alpha: f64, other: &Self) -> Result<Self> {
        self.same_grid(other)?;
        Ok(Self {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + alpha * b)
                .collect(),
        })
    }

    /// Piecewise-linear interpolation onto another grid. Outside the node
    /// range the end segments are extended linearly.
    pub fn interpolate_to(&self, target: &Arc<QuadratureGrid>) -> GridFunction {
        let nodes = self.grid.nodes();
        let values = target
            .nodes()
            .iter()
            .map(|&t| {
                let k = nodes.partition_point(|&s| s <= t).clamp(1, nodes.len() - 1);
                let (t0, t1) = (nodes[k - 1], nodes[k]);
                let (v0, v1) = (self.values[k - 1], self.values[k]);
                if t == t0 {
                    v0
                } else {
                    v0 + (v1 - v0) * (t - t0) / (t1 - t0)
                }
            })
            .collect();
        GridFunction {
            grid: target.clone(),
            values,
        }
    }
}

/// Polynomial with coefficients in ascending order of degree.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    pub coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integral::{build_grid, QuadratureRule};

    #[test]
    fn norms() {
        let g = build_grid(101, QuadratureRule::Trapezoid).unwrap();
        assert!((GridFunction::constant(g.clone(), 1.0).l2_norm() - 1.0).abs() < 1e-14);
        assert_eq!(GridFunction::zeros(g.clone()).l2_norm(), 0.0);
        let t = GridFunction::from_fn(g, |t| t);
        assert!((t.l2_norm() - 1.0 / libm::sqrt(3.0)).abs() < 5e-4);
    }

    #[test]
    fn cross_grid_is_an_error() {
        let a = build_grid(4, QuadratureRule::Trapezoid).unwrap();
        let b = build_grid(5, QuadratureRule::Trapezoid).unwrap();
        let fa = GridFunction::zeros(a.clone());
        let fb = GridFunction::zeros(b);
        assert_eq!(fa.l2_dist(&fb), Err(Error::GridMismatch));
        // A separately built but identical grid is the same grid.
        let a2 = build_grid(4, QuadratureRule::Trapezoid).unwrap();
        assert!(fa.l2_dist(&GridFunction::zeros(a2)).is_ok());
    }

    #[test]
    fn linear_interpolation_is_exact_on_lines() {
        let coarse = build_grid(9, QuadratureRule::Trapezoid).unwrap();
        let fine = build_grid(17, QuadratureRule::GaussLegendre).unwrap();
        let f = GridFunction::from_fn(coarse, |t| 2.0 * t - 0.5);
        let g = f.interpolate_to(&fine);
        for (t, v) in fine.nodes().iter().zip(g.values()) {
            assert!((v - (2.0 * t - 0.5)).abs() < 1e-14);
        }
    }

    #[test]
    fn horner() {
        let p = Polynomial::new(alloc::vec![1.0, -2.0, 3.0]);
        assert_eq!(p.eval(2.0), 1.0 - 4.0 + 12.0);
        assert_eq!(Polynomial::default().eval(3.0), 0.0);
    }
}
