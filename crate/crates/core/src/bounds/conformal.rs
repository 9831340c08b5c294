//! Polynomial maps of the unit disk, `f(z) = x₀ + Σ_{k≥1} a_k z^k`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{segments_intersect, Point};

/// Boundary samples used for the simplicity test.
const SIMPLICITY_SAMPLES: usize = 1024;
/// Boundary samples used for trapezoidal boundary integrals.
pub const BOUNDARY_SAMPLES: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConformalMap {
    /// `a_1, …, a_K`.
    coefficients: Vec<Complex64>,
    offset: Point,
}

impl<'de> Deserialize<'de> for ConformalMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            coefficients: Vec<Complex64>,
            #[serde(default)]
            offset: Point,
        }
        let raw = Raw::deserialize(d)?;
        ConformalMap::new(raw.coefficients, raw.offset).map_err(serde::de::Error::custom)
    }
}

impl ConformalMap {
    /// Validates `a_1 ≠ 0`, a positive Jacobian on a polar grid of the
    /// closed disk and a simple sampled boundary curve.
    pub fn new(coefficients: Vec<Complex64>, offset: Point) -> Result<Self> {
        if coefficients.is_empty() || coefficients[0].norm() == 0.0 {
            return Err(Error::InvalidMap(
                "leading coefficient a_1 must be nonzero".into(),
            ));
        }
        if coefficients
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
            || !offset.is_finite()
        {
            return Err(Error::InvalidMap("non-finite coefficient".into()));
        }
        let map = Self {
            coefficients,
            offset,
        };
        map.check_jacobian()?;
        map.check_simple_boundary()?;
        Ok(map)
    }

    /// `f(z) = R z + c`.
    pub fn disk(radius: f64, center: Point) -> Result<Self> {
        Self::new(vec![Complex64::new(radius, 0.0)], center)
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn offset(&self) -> Point {
        self.offset
    }

    pub fn eval(&self, z: Complex64) -> Point {
        // Horner on Σ a_k z^k = z (a_1 + z (a_2 + …))
        let mut acc = Complex64::new(0.0, 0.0);
        for &a in self.coefficients.iter().rev() {
            acc = acc * z + a;
        }
        let w = acc * z;
        Point::new(self.offset.x + w.re, self.offset.y + w.im)
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &a) in self.coefficients.iter().enumerate().rev() {
            acc = acc * z + a * (k as f64 + 1.0);
        }
        acc
    }

    pub fn eval_point(&self, w: Point) -> Point {
        self.eval(Complex64::new(w.x, w.y))
    }

    fn unit(theta: f64) -> Complex64 {
        Complex64::from_polar(1.0, theta)
    }

    /// `(Σ k² |a_k|²)^{1/2}`.
    pub fn hardy_norm(&self) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(k, a)| ((k + 1) as f64).powi(2) * a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `((1/2π) ∫ |f'(e^{iθ})|² dθ)^{1/2}` by the trapezoidal rule.
    pub fn hardy_norm_quadrature(&self, samples: usize) -> f64 {
        let n = samples.max(1);
        let mean = (0..n)
            .map(|j| {
                self.derivative(Self::unit(2.0 * PI * j as f64 / n as f64))
                    .norm_sqr()
            })
            .sum::<f64>()
            / n as f64;
        mean.sqrt()
    }

    /// `|f(𝔻)| = π Σ k |a_k|²` for an injective map.
    pub fn image_area(&self) -> f64 {
        PI * self
            .coefficients
            .iter()
            .enumerate()
            .map(|(k, a)| (k + 1) as f64 * a.norm_sqr())
            .sum::<f64>()
    }

    /// Length of `f(∂𝔻)`, `∫ |f'(e^{iθ})| dθ` by the trapezoidal rule.
    pub fn image_perimeter(&self) -> f64 {
        let n = BOUNDARY_SAMPLES;
        (0..n)
            .map(|j| {
                self.derivative(Self::unit(2.0 * PI * j as f64 / n as f64))
                    .norm()
            })
            .sum::<f64>()
            * 2.0
            * PI
            / n as f64
    }

    /// `f(e^{2πij/n})`, `j = 0..n`.
    pub fn boundary_curve(&self, n: usize) -> Vec<Point> {
        (0..n)
            .map(|j| self.eval(Self::unit(2.0 * PI * j as f64 / n as f64)))
            .collect()
    }

    /// Whether the sampled image boundary turns consistently left.
    pub fn has_convex_image(&self, samples: usize) -> bool {
        let pts = self.boundary_curve(samples);
        let n = pts.len();
        (0..n).all(|i| {
            let a = pts[i];
            let b = pts[(i + 1) % n];
            let c = pts[(i + 2) % n];
            (b - a).cross(c - b) > 0.0
        })
    }

    fn check_jacobian(&self) -> Result<()> {
        let scale = self.coefficients[0].norm();
        for i in 0..=32 {
            let r = i as f64 / 32.0;
            for j in 0..256 {
                let z = Complex64::from_polar(r, 2.0 * PI * j as f64 / 256.0);
                if self.derivative(z).norm_sqr() <= 1e-12 * scale * scale {
                    return Err(Error::InvalidMap(format!(
                        "Jacobian vanishes near z = {:.4}{:+.4}i",
                        z.re, z.im
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_simple_boundary(&self) -> Result<()> {
        let pts = self.boundary_curve(SIMPLICITY_SAMPLES);
        let n = pts.len();
        for i in 0..n {
            let (p1, p2) = (pts[i], pts[(i + 1) % n]);
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                if segments_intersect(p1, p2, pts[j], pts[(j + 1) % n]) {
                    return Err(Error::InvalidMap(format!(
                        "boundary curve self-intersects between samples {i} and {j}"
                    )));
                }
            }
        }
        Ok(())
    }
}
