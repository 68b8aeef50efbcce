//! Fixed-point iteration over W-hyperbolic metric spaces.
//!
//! The crate is `no_std` (with `alloc`) and contains only the numerical
//! machinery:
//!
//! * [`geodesic`]: the space abstraction (metric plus convex combination),
//!   three concrete spaces, axiom checks and the modulus of uniform convexity.
//! * [`order`]: partial orders on those spaces and order-interval checks.
//! * [`mappings`]: a catalog of self-maps and sampling checks for the mapping
//!   classes (condition (C), generalized α-nonexpansive, quasi-nonexpansive,
//!   condition (I)).
//! * [`schemes`]: the Mann and three-step (Thakur) iterations with trace
//!   diagnostics.
//! * [`integral`]: a quadrature discretization of a Hammerstein-type integral
//!   equation, solved by Picard iteration and by the three-step scheme.
//!
//! File formats and the command-line front end live in the `hyperfix` crate.
#![no_std]
// `!(x > 0.0)` style tests deliberately reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod error;
pub mod geodesic;
pub mod integral;
pub mod mappings;
pub mod order;
pub mod report;
pub mod schemes;

mod sampling;

pub use error::{Error, Result};
pub use geodesic::{
    check_axioms, hilbert_modulus, modulus_sampled, BallSampler, DiskPoint, Euclidean,
    GeodesicSpace, L2Grid, ModulusQuery, PoincareDisk, ToCoords,
};
pub use integral::{
    build_grid, GridFunction, IntegralProblem, KernelSpec, Polynomial, ProblemSpec,
    QuadratureGrid, QuadratureRule,
};
pub use mappings::{Claim, FixedPoints, Gauge, MappingClass, ScalarMap, SelfMap};
pub use order::{Coordinatewise, NoOrder, OrderSampler, PartialOrderRel, Pointwise};
pub use report::{PropertyReport, Verdict, Witness};
pub use sampling::SampleRng;
pub use schemes::{
    Coefficients, IterationTrace, SchemeKind, SchemeParams, StepRecord, Termination, YnVariant,
};
