use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::Rng;

use super::{check_beta, BallSampler, GeodesicSpace};
use crate::error::{Error, Result};
use crate::integral::{GridFunction, QuadratureGrid};
use crate::sampling::normal;

/// Grid functions on a fixed quadrature grid with the weighted L² metric and
/// affine combination.
#[derive(Debug, Clone, PartialEq)]
pub struct L2Grid {
    grid: Arc<QuadratureGrid>,
}

impl L2Grid {
    pub fn new(grid: Arc<QuadratureGrid>) -> Self {
        Self { grid }
    }

    pub fn grid(&self) -> &Arc<QuadratureGrid> {
        &self.grid
    }

    fn own(&self, p: &GridFunction) -> Result<()> {
        if p.grid().same_as(&self.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> GridFunction {
        loop {
            let values: Vec<f64> = (0..self.grid.len()).map(|_| normal(rng)).collect();
            let f = GridFunction::new(self.grid.clone(), values).expect("length matches grid");
            let norm = f.l2_norm();
            if norm > 1e-12 {
                return f.scaled(1.0 / norm);
            }
        }
    }
}

impl GeodesicSpace for L2Grid {
    type Point = GridFunction;

    fn name(&self) -> String {
        format!("l2grid:{}", self.grid.len())
    }

    fn validate(&self, p: &GridFunction) -> Result<()> {
        self.own(p)?;
        if p.values().iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("non-finite grid value"));
        }
        Ok(())
    }

    fn dist(&self, u: &GridFunction, v: &GridFunction) -> Result<f64> {
        self.own(u)?;
        self.own(v)?;
        u.l2_dist(v)
    }

    fn combine(&self, u: &GridFunction, v: &GridFunction, beta: f64) -> Result<GridFunction> {
        self.own(u)?;
        self.own(v)?;
        check_beta(beta)?;
        if beta == 1.0 {
            return Ok(v.clone());
        }
        let values = u
            .values()
            .iter()
            .zip(v.values())
            .map(|(a, b)| a + beta * (b - a))
            .collect();
        GridFunction::new(self.grid.clone(), values)
    }
}

impl BallSampler for L2Grid {
    fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> GridFunction {
        let values = (0..self.grid.len()).map(|_| normal(rng)).collect();
        GridFunction::new(self.grid.clone(), values).expect("length matches grid")
    }

    fn sample_in_ball<R: Rng + ?Sized>(
        &self,
        center: &GridFunction,
        radius: f64,
        rng: &mut R,
    ) -> Result<GridFunction> {
        self.own(center)?;
        let dir = self.random_unit(rng);
        let scale = radius * libm::sqrt(rng.random::<f64>());
        center.axpy(scale, &dir)
    }

    fn symmetric_pair(
        &self,
        center: &GridFunction,
        radius: f64,
        epsilon: f64,
    ) -> Result<Option<(GridFunction, GridFunction)>> {
        self.own(center)?;
        // Two orthonormal directions: the constant function and the centred
        // identity t - mean(t).
        let one = GridFunction::constant(self.grid.clone(), 1.0);
        let mean_t: f64 = self
            .grid
            .nodes()
            .iter()
            .zip(self.grid.weights())
            .map(|(t, w)| t * w)
            .sum();
        let centred = GridFunction::from_fn(self.grid.clone(), |t| t - mean_t);
        let norm = centred.l2_norm();
        if norm <= 1e-12 {
            return Ok(None);
        }
        let across_dir = centred.scaled(1.0 / norm);
        let along = radius * libm::sqrt((1.0 - epsilon * epsilon / 4.0).max(0.0));
        let across = radius * epsilon / 2.0;
        let base = center.axpy(along, &one)?;
        Ok(Some((
            base.axpy(across, &across_dir)?,
            base.axpy(-across, &across_dir)?,
        )))
    }
}
