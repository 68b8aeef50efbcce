use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use super::{check_beta, BallSampler, GeodesicSpace};
use crate::error::{Error, Result};
use crate::sampling::normal;

/// ℝⁿ with the Euclidean norm and affine combination. Points are `Vec<f64>`
/// of length `dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Euclidean {
    dim: usize,
}

impl Euclidean {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("euclidean dimension must be at least 1"));
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check(&self, p: &[f64]) -> Result<()> {
        if p.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: p.len(),
            });
        }
        Ok(())
    }
}

impl GeodesicSpace for Euclidean {
    type Point = Vec<f64>;

    fn name(&self) -> String {
        format!("euclidean:{}", self.dim)
    }

    fn validate(&self, p: &Vec<f64>) -> Result<()> {
        self.check(p)?;
        if p.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain("non-finite coordinate"));
        }
        Ok(())
    }

    fn dist(&self, u: &Vec<f64>, v: &Vec<f64>) -> Result<f64> {
        self.check(u)?;
        self.check(v)?;
        if self.dim == 1 {
            return Ok(libm::fabs(u[0] - v[0]));
        }
        let sq: f64 = u.iter().zip(v).map(|(a, b)| (a - b) * (a - b)).sum();
        Ok(libm::sqrt(sq))
    }

    fn combine(&self, u: &Vec<f64>, v: &Vec<f64>, beta: f64) -> Result<Vec<f64>> {
        self.check(u)?;
        self.check(v)?;
        check_beta(beta)?;
        if beta == 1.0 {
            return Ok(v.clone());
        }
        // u + β(v - u) keeps the β = 0 endpoint exact.
        Ok(u.iter().zip(v).map(|(a, b)| a + beta * (b - a)).collect())
    }
}

impl BallSampler for Euclidean {
    fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        (0..self.dim).map(|_| rng.random_range(-2.0..2.0)).collect()
    }

    fn sample_in_ball<R: Rng + ?Sized>(
        &self,
        center: &Vec<f64>,
        radius: f64,
        rng: &mut R,
    ) -> Result<Vec<f64>> {
        self.check(center)?;
        let dir = unit_direction(self.dim, rng);
        let u: f64 = rng.random();
        let scale = radius * libm::pow(u, 1.0 / self.dim as f64);
        Ok(center.iter().zip(dir).map(|(c, d)| c + scale * d).collect())
    }

    fn symmetric_pair(
        &self,
        center: &Vec<f64>,
        radius: f64,
        epsilon: f64,
    ) -> Result<Option<(Vec<f64>, Vec<f64>)>> {
        self.check(center)?;
        let mut u = center.clone();
        let mut v = center.clone();
        if self.dim == 1 {
            // On the line the worst pair sits at one end of the ball.
            u[0] += radius;
            v[0] += radius - radius * epsilon;
        } else {
            let along = libm::sqrt((1.0 - epsilon * epsilon / 4.0).max(0.0));
            let across = epsilon / 2.0;
            u[0] += radius * along;
            v[0] += radius * along;
            u[1] += radius * across;
            v[1] -= radius * across;
        }
        Ok(Some((u, v)))
    }
}

fn unit_direction<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let g: Vec<f64> = (0..dim).map(|_| normal(rng)).collect();
        let norm = libm::sqrt(g.iter().map(|x| x * x).sum());
        if norm > 1e-12 {
            return g.into_iter().map(|x| x / norm).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn scalar_distance_and_combination() {
        let e = Euclidean::new(1).unwrap();
        assert_eq!(e.dist(&vec![0.9], &vec![0.0]).unwrap(), 0.9);
        assert_eq!(e.dist(&vec![0.3], &vec![0.3]).unwrap(), 0.0);
        assert_eq!(e.combine(&vec![0.9], &vec![0.0], 0.85).unwrap(), vec![0.135]);
        assert_eq!(e.combine(&vec![0.2], &vec![0.7], 0.0).unwrap(), vec![0.2]);
        assert_eq!(e.combine(&vec![0.2], &vec![0.7], 1.0).unwrap(), vec![0.7]);
    }

    #[test]
    fn errors() {
        let e = Euclidean::new(2).unwrap();
        assert!(matches!(
            e.dist(&vec![0.0], &vec![0.0, 1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(e.combine(&vec![0.0, 0.0], &vec![1.0, 1.0], 1.5).is_err());
        assert!(Euclidean::new(0).is_err());
    }
}
