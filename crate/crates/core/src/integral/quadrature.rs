use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureRule {
    Trapezoid,
    GaussLegendre,
}

impl QuadratureRule {
    pub fn as_str(self) -> &'static str {
        match self {
            QuadratureRule::Trapezoid => "trapezoid",
            QuadratureRule::GaussLegendre => "gauss-legendre",
        }
    }
}

/// Nodes in `[0, 1]` with positive weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    rule: QuadratureRule,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureGrid {
    pub fn rule(&self) -> QuadratureRule {
        self.rule
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Grid identity: the same allocation, or an identical rule and node set.
    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

pub fn build_grid(n: usize, rule: QuadratureRule) -> Result<Arc<QuadratureGrid>> {
    if n < 2 {
        return Err(Error::domain("a quadrature grid needs at least 2 nodes"));
    }
    let (nodes, mut weights) = match rule {
        QuadratureRule::Trapezoid => trapezoid(n),
        QuadratureRule::GaussLegendre => gauss_legendre(n),
    };
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    Ok(Arc::new(QuadratureGrid {
        rule,
        nodes,
        weights,
    }))
}

fn trapezoid(n: usize) -> (Vec<f64>, Vec<f64>) {
    let panels = (n - 1) as f64;
    let nodes = (0..n).map(|i| i as f64 / panels).collect();
    let mut weights = vec![1.0; n];
    weights[0] = 0.5;
    weights[n - 1] = 0.5;
    (nodes, weights)
}

// Newton iteration on P_n from the Tricomi initial guesses, mapped to [0, 1].
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = libm::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // x runs from near +1 downwards; store ascending on [0, 1].
        nodes[n - 1 - i] = (1.0 + x) / 2.0;
        nodes[i] = (1.0 - x) / 2.0;
        weights[n - 1 - i] = w / 2.0;
        weights[i] = w / 2.0;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_three_nodes() {
        let g = build_grid(3, QuadratureRule::Trapezoid).unwrap();
        assert_eq!(g.nodes(), &[0.0, 0.5, 1.0]);
        assert_eq!(g.weights(), &[0.25, 0.5, 0.25]);
    }

    #[test]
    fn gauss_two_nodes() {
        let g = build_grid(2, QuadratureRule::GaussLegendre).unwrap();
        let s = 1.0 / libm::sqrt(3.0);
        assert!((g.nodes()[0] - (1.0 - s) / 2.0).abs() < 1e-15);
        assert!((g.nodes()[1] - (1.0 + s) / 2.0).abs() < 1e-15);
        assert!((g.weights()[0] - 0.5).abs() < 1e-15);
        assert!((g.weights()[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn weights_normalized_and_nodes_increasing() {
        for rule in [QuadratureRule::Trapezoid, QuadratureRule::GaussLegendre] {
            for n in [2, 3, 7, 16, 64, 101, 128] {
                let g = build_grid(n, rule).unwrap();
                let total: f64 = g.weights().iter().sum();
                assert!((total - 1.0).abs() < 1e-12, "{rule:?} {n}");
                assert!(g.weights().iter().all(|&w| w > 0.0));
                assert!(g.nodes().windows(2).all(|w| w[0] < w[1]));
                assert!(g.nodes().iter().all(|&t| (0.0..=1.0).contains(&t)));
            }
        }
    }

    #[test]
    fn gauss_integrates_polynomials_exactly() {
        // An n-point rule is exact through degree 2n - 1.
        let g = build_grid(5, QuadratureRule::GaussLegendre).unwrap();
        let integral: f64 = g
            .nodes()
            .iter()
            .zip(g.weights())
            .map(|(t, w)| w * libm::pow(*t, 9.0))
            .sum();
        assert!((integral - 0.1).abs() < 1e-14);
    }

    #[test]
    fn too_few_nodes() {
        assert!(build_grid(1, QuadratureRule::Trapezoid).is_err());
        assert!(build_grid(0, QuadratureRule::GaussLegendre).is_err());
    }
}
