use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;

use super::{check_beta, BallSampler, GeodesicSpace, ToCoords};
use crate::error::{Error, Result};

/// Points must stay this far inside the unit circle.
pub const BOUNDARY_MARGIN: f64 = 1e-12;

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        Self::from_complex(Complex64::new(x, y))
    }

    pub fn origin() -> Self {
        DiskPoint(Complex64::new(0.0, 0.0))
    }

    fn from_complex(z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::domain("non-finite disk coordinate"));
        }
        if z.norm() > 1.0 - BOUNDARY_MARGIN {
            return Err(Error::domain(alloc::format!(
                "point ({}, {}) is not inside the disk",
                z.re,
                z.im
            )));
        }
        Ok(DiskPoint(z))
    }

    pub fn x(&self) -> f64 {
        self.0.re
    }

    pub fn y(&self) -> f64 {
        self.0.im
    }

    pub fn abs(&self) -> f64 {
        self.0.norm()
    }
}

impl ToCoords for DiskPoint {
    fn coords(&self) -> Vec<f64> {
        alloc::vec![self.0.re, self.0.im]
    }
}

// Disk automorphism sending `c` to the origin.
fn to_origin(c: Complex64, w: Complex64) -> Complex64 {
    (w - c) / (Complex64::new(1.0, 0.0) - c.conj() * w)
}

// Inverse of `to_origin`.
fn from_origin(c: Complex64, w: Complex64) -> Complex64 {
    (w + c) / (Complex64::new(1.0, 0.0) + c.conj() * w)
}

/// The Poincaré disk with its hyperbolic metric (curvature -1). The
/// combination map moves along hyperbolic geodesics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoincareDisk {
    /// Euclidean radius of the region used by [`BallSampler::sample_point`].
    pub sample_radius: f64,
}

impl Default for PoincareDisk {
    fn default() -> Self {
        Self { sample_radius: 0.95 }
    }
}

impl PoincareDisk {
    pub fn new() -> Self {
        Self::default()
    }

    /// `exp_center` of a tangent vector: the point at hyperbolic distance
    /// `distance` from `center` in direction `angle`.
    fn polar(&self, center: &DiskPoint, distance: f64, angle: f64) -> Result<DiskPoint> {
        let rho = libm::tanh(distance / 2.0);
        let w = Complex64::from_polar(rho, angle);
        DiskPoint::from_complex(from_origin(center.0, w))
    }
}

impl GeodesicSpace for PoincareDisk {
    type Point = DiskPoint;

    fn name(&self) -> String {
        "poincare".to_string()
    }

    fn validate(&self, p: &DiskPoint) -> Result<()> {
        DiskPoint::from_complex(p.0).map(|_| ())
    }

    fn dist(&self, u: &DiskPoint, v: &DiskPoint) -> Result<f64> {
        self.validate(u)?;
        self.validate(v)?;
        if u == v {
            return Ok(0.0);
        }
        // 2 artanh |(v - u) / (1 - ū v)| is the arcosh form rewritten to stay
        // accurate for nearby points.
        let ratio = to_origin(u.0, v.0).norm().min(1.0 - f64::EPSILON);
        Ok(2.0 * libm::atanh(ratio))
    }

    fn combine(&self, u: &DiskPoint, v: &DiskPoint, beta: f64) -> Result<DiskPoint> {
        check_beta(beta)?;
        self.validate(u)?;
        self.validate(v)?;
        if beta == 0.0 || u == v {
            return Ok(*u);
        }
        if beta == 1.0 {
            return Ok(*v);
        }
        let w = to_origin(u.0, v.0);
        let rho = w.norm();
        // Radial geodesic from the origin: hyperbolic length 2 artanh(rho).
        let target = libm::tanh(beta * libm::atanh(rho.min(1.0 - f64::EPSILON)));
        DiskPoint::from_complex(from_origin(u.0, w * (target / rho)))
    }
}

impl BallSampler for PoincareDisk {
    fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> DiskPoint {
        let r = self.sample_radius * libm::sqrt(rng.random::<f64>());
        let angle = TAU * rng.random::<f64>();
        DiskPoint(Complex64::from_polar(r, angle))
    }

    fn sample_in_ball<R: Rng + ?Sized>(
        &self,
        center: &DiskPoint,
        radius: f64,
        rng: &mut R,
    ) -> Result<DiskPoint> {
        let distance = radius * libm::sqrt(rng.random::<f64>());
        let angle = TAU * rng.random::<f64>();
        self.polar(center, distance, angle)
    }

    fn symmetric_pair(
        &self,
        center: &DiskPoint,
        radius: f64,
        epsilon: f64,
    ) -> Result<Option<(DiskPoint, DiskPoint)>> {
        // Hyperbolic law of cosines for two sides of length r enclosing 2θ:
        // cosh(rε) = cosh²r - sinh²r cos 2θ.
        let ch = libm::cosh(radius);
        let sh = libm::sinh(radius);
        let cos_2theta = ((ch * ch - libm::cosh(radius * epsilon)) / (sh * sh)).clamp(-1.0, 1.0);
        let theta = libm::acos(cos_2theta) / 2.0;
        let u = self.polar(center, radius, theta)?;
        let v = self.polar(center, radius, -theta)?;
        Ok(Some((u, v)))
    }
}
