use hyperfix_core::order::check_interval_convexity;
use hyperfix_core::{Coordinatewise, Euclidean, OrderSampler, PartialOrderRel, Result};
use proptest::prelude::*;
use rand::Rng;

/// `u ≼ v` iff `|u| < |v|`, or `|u| = |v|` and `u ≤ v`: a total order on ℝ
/// whose up-sets are not convex.
struct Magnitude;

impl PartialOrderRel<Vec<f64>> for Magnitude {
    fn name(&self) -> &'static str {
        "magnitude"
    }

    fn leq(&self, u: &Vec<f64>, v: &Vec<f64>) -> Result<bool> {
        let (a, b) = (u[0].abs(), v[0].abs());
        Ok(a < b || (a == b && u[0] <= v[0]))
    }
}

impl OrderSampler<Vec<f64>> for Magnitude {
    fn sample_above<R: Rng + ?Sized>(&self, a: &Vec<f64>, rng: &mut R) -> Vec<f64> {
        let m = a[0].abs() + rng.random_range(0.0..1.0);
        vec![if rng.random::<bool>() { m } else { -m }]
    }

    fn sample_below<R: Rng + ?Sized>(&self, b: &Vec<f64>, rng: &mut R) -> Vec<f64> {
        let m = b[0].abs() * rng.random_range(0.0..1.0);
        vec![if rng.random::<bool>() { m } else { -m }]
    }
}

#[test]
fn magnitude_order_has_nonconvex_intervals() {
    let r = check_interval_convexity(&Magnitude, &Euclidean::new(1).unwrap(), 500, 42).unwrap();
    assert!(!r.holds());
    let w = &r.witnesses[0];
    assert_eq!(w.get("direction"), Some(&[1.0][..]));
    let (a, c) = (w.get("anchor").unwrap()[0], w.get("combination").unwrap()[0]);
    assert!(!Magnitude.leq(&vec![a], &vec![c]).unwrap());
}

#[test]
fn coordinatewise_intervals_are_convex() {
    for d in [1, 3] {
        let r = check_interval_convexity(&Coordinatewise, &Euclidean::new(d).unwrap(), 2_000, 1)
            .unwrap();
        assert!(r.holds());
    }
}

fn triple() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, Vec<f64>)> {
    let p = || prop::collection::vec(prop::sample::select(vec![-1.0, 0.0, 0.5, 1.0]), 2);
    (p(), p(), p())
}

proptest! {
    #[test]
    fn coordinatewise_is_a_partial_order((u, v, w) in triple()) {
        let o = Coordinatewise;
        prop_assert!(o.leq(&u, &u).unwrap());
        if o.leq(&u, &v).unwrap() && o.leq(&v, &u).unwrap() {
            prop_assert_eq!(&u, &v);
        }
        if o.leq(&u, &v).unwrap() && o.leq(&v, &w).unwrap() {
            prop_assert!(o.leq(&u, &w).unwrap());
        }
    }
}
