//! Gauss–Legendre rules.

use std::f64::consts::PI;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "a quadrature rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // three-term recurrence for P_n and its derivative
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = nf * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// `∫_a^b f`.
    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }

    /// `∫` over the box `Π [lo_i, hi_i]` by the tensor-product rule.
    pub fn integrate_box(&self, lo: &[f64], hi: &[f64], f: impl Fn(&[f64]) -> f64) -> f64 {
        let dim = lo.len();
        assert_eq!(dim, hi.len());
        let n = self.nodes.len();
        let mut index = vec![0usize; dim];
        let mut x = vec![0.0; dim];
        let scale: f64 = (0..dim).map(|d| 0.5 * (hi[d] - lo[d])).product();
        let mut total = 0.0;
        loop {
            let mut w = 1.0;
            for d in 0..dim {
                x[d] = 0.5 * (lo[d] + hi[d]) + 0.5 * (hi[d] - lo[d]) * self.nodes[index[d]];
                w *= self.weights[index[d]];
            }
            total += w * f(&x);
            let mut d = 0;
            while d < dim {
                index[d] += 1;
                if index[d] < n {
                    break;
                }
                index[d] = 0;
                d += 1;
            }
            if d == dim {
                break;
            }
        }
        total * scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(5);
        // degree 9 is exact for 5 points
        let v = rule.integrate(-1.0, 2.0, |x| x.powi(9) + 3.0 * x * x);
        let exact = (2.0_f64.powi(10) - 1.0) / 10.0 + (8.0 + 1.0);
        assert!((v - exact).abs() < 1e-12 * exact);
    }

    #[test]
    fn weights_sum_to_two() {
        for n in [1, 2, 7, 64] {
            let rule = GaussLegendre::new(n);
            let s: f64 = rule.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn box_rule() {
        let rule = GaussLegendre::new(8);
        let v = rule.integrate_box(&[-1.0, -1.0], &[1.0, 1.0], |x| x[0] * x[0] + x[1] * x[1]);
        assert!((v - 8.0 / 3.0).abs() < 1e-13);
    }
}
