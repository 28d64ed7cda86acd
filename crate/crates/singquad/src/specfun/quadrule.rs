//! Fixed-order Clenshaw-Curtis rule used to stitch the piecewise bridges of
//! the slowly-convergent special functions. The integrands are smooth and
//! oscillate less than one cycle per segment, so a single 64-node panel is
//! converged to machine precision.

use once_cell::sync::Lazy;
use std::f64::consts::PI;

pub struct ClenshawCurtis {
    /// Nodes on [-1, 1], descending.
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl ClenshawCurtis {
    /// Closed rule with `n + 1` points (`n` even).
    pub fn new(n: usize) -> Self {
        assert!(n >= 2 && n % 2 == 0);
        let mut nodes = Vec::with_capacity(n + 1);
        let mut weights = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let theta = PI * j as f64 / n as f64;
            nodes.push(theta.cos());
            let mut s = 0.0;
            for k in 1..=n / 2 {
                let b = if 2 * k == n { 1.0 } else { 2.0 };
                s += b * (2.0 * k as f64 * theta).cos() / ((4 * k * k - 1) as f64);
            }
            let c = if j == 0 || j == n { 1.0 } else { 2.0 };
            weights.push(c / n as f64 * (1.0 - s));
        }
        ClenshawCurtis { nodes, weights }
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(c + h * x);
        }
        acc * h
    }
}

pub static CC64: Lazy<ClenshawCurtis> = Lazy::new(|| ClenshawCurtis::new(64));
